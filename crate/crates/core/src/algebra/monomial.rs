use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{RoleSplit, SetPartition};

/// A monomial with an exact integer coefficient and a hashable support.
///
/// The `Ord` on [`Term::Support`] is the canonical display order, so
/// normalizing through a `BTreeMap` both merges and sorts.
pub trait Term: Clone {
    type Support: Ord + Clone;

    fn support(&self) -> Self::Support;
    fn coeff(&self) -> &BigInt;
    fn from_support(coeff: BigInt, support: Self::Support) -> Self;
}

/// Merges equal supports, drops zero coefficients and sorts canonically.
pub fn normalize<T: Term>(terms: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut merged: BTreeMap<T::Support, BigInt> = BTreeMap::new();
    for t in terms {
        *merged.entry(t.support()).or_default() += t.coeff();
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| T::from_support(c, s))
        .collect()
}

/// `coeff · g^(g_order) · ∏ f^(j)` for `j` in `f_orders`.
///
/// `f_orders` is kept sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParametricMonomial {
    pub coeff: BigInt,
    pub g_order: u32,
    pub f_orders: Vec<u32>,
}

impl ParametricMonomial {
    pub fn new(coeff: impl Into<BigInt>, g_order: u32, mut f_orders: Vec<u32>) -> Self {
        f_orders.sort_unstable_by(|a, b| b.cmp(a));
        ParametricMonomial {
            coeff: coeff.into(),
            g_order,
            f_orders,
        }
    }

    pub fn unit(g_order: u32, f_orders: Vec<u32>) -> Self {
        Self::new(BigInt::one(), g_order, f_orders)
    }

    /// Maps a partition to `g^(|B1|) ∏ f^(|B|)`, where `B1` is the block
    /// holding element 1.
    pub fn from_partition(p: &SetPartition) -> Result<Self> {
        let k = p.num_blocks() as u32 - 1;
        let n = p.ground_size() as u32 - k;
        if n == 0 || !p.respects(RoleSplit::parametric(n, k)) {
            return Err(Error::PartitionClass {
                class: "parametric",
                reason: format!("{p} has a singleton other than {{1}}"),
            });
        }
        let g_order = p.blocks()[0].len() as u32;
        let f_orders = p.blocks()[1..].iter().map(|b| b.len() as u32).collect();
        Ok(Self::unit(g_order, f_orders))
    }

    /// Total derivative order carried by the factors.
    pub fn weight(&self) -> u32 {
        self.g_order + self.f_orders.iter().sum::<u32>()
    }
}

/// Parametric supports sort by descending `g_order`, then by descending
/// `f_orders` compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParametricSupport {
    pub g_order: u32,
    pub f_orders: Vec<u32>,
}

impl Ord for ParametricSupport {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .g_order
            .cmp(&self.g_order)
            .then_with(|| other.f_orders.cmp(&self.f_orders))
    }
}

impl PartialOrd for ParametricSupport {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Term for ParametricMonomial {
    type Support = ParametricSupport;

    fn support(&self) -> ParametricSupport {
        ParametricSupport {
            g_order: self.g_order,
            f_orders: self.f_orders.clone(),
        }
    }

    fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    fn from_support(coeff: BigInt, s: ParametricSupport) -> Self {
        ParametricMonomial {
            coeff,
            g_order: s.g_order,
            f_orders: s.f_orders,
        }
    }
}

/// The partial derivative `∂^(x+y) F / ∂x^x ∂y^y`.
///
/// Ordered canonically: higher total order first, then higher `x` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Partial {
    pub x: u32,
    pub y: u32,
}

impl Partial {
    pub const fn new(x: u32, y: u32) -> Self {
        Partial { x, y }
    }

    pub fn order(&self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Partial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.order().cmp(&self.order()).then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Partial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `coeff · ∏ F_{x^a y^b}` with factors kept in canonical [`Partial`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImplicitMonomial {
    pub coeff: BigInt,
    pub factors: Vec<Partial>,
}

impl ImplicitMonomial {
    pub fn new(coeff: impl Into<BigInt>, mut factors: Vec<Partial>) -> Self {
        factors.sort_unstable();
        ImplicitMonomial {
            coeff: coeff.into(),
            factors,
        }
    }

    pub fn unit(factors: Vec<Partial>) -> Self {
        Self::new(BigInt::one(), factors)
    }

    /// Each block with `a` small and `b` large elements becomes `F_{x^a y^b}`.
    pub fn from_partition(p: &SetPartition, roles: RoleSplit) -> Result<Self> {
        if !p.respects(roles) {
            return Err(Error::PartitionClass {
                class: "implicit",
                reason: format!("{p} has a large singleton (small elements 1..={})", roles.small_count()),
            });
        }
        let factors = p
            .blocks()
            .iter()
            .map(|b| {
                let small = b.iter().filter(|&&e| roles.is_small(e)).count() as u32;
                Partial::new(small, b.len() as u32 - small)
            })
            .collect();
        Ok(Self::unit(factors))
    }

    pub fn x_order(&self) -> u32 {
        self.factors.iter().map(|f| f.x).sum()
    }

    pub fn y_order(&self) -> u32 {
        self.factors.iter().map(|f| f.y).sum()
    }
}

impl Term for ImplicitMonomial {
    type Support = Vec<Partial>;

    fn support(&self) -> Vec<Partial> {
        self.factors.clone()
    }

    fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    fn from_support(coeff: BigInt, factors: Vec<Partial>) -> Self {
        ImplicitMonomial { coeff, factors }
    }
}

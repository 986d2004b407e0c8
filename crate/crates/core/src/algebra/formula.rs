use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;

use super::monomial::{normalize, ImplicitMonomial, ParametricMonomial, Term};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaKind {
    /// `x = f(t)`, `y = g(t)`.
    Parametric,
    /// `F(x, y) = 0`.
    Implicit,
    /// `y = f⁻¹(x)`, the parametric case with `g(t) = t`.
    Inverse,
}

impl FormulaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FormulaKind::Parametric => "parametric",
            FormulaKind::Implicit => "implicit",
            FormulaKind::Inverse => "inverse",
        }
    }
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parametric" => Ok(FormulaKind::Parametric),
            "implicit" => Ok(FormulaKind::Implicit),
            "inverse" => Ok(FormulaKind::Inverse),
            other => Err(Error::Json(format!("unknown formula kind {other:?}"))),
        }
    }
}

/// All monomials of a formula sharing the index `k`, normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaLayer<M> {
    k: i64,
    monomials: Vec<M>,
}

impl<M: Term> FormulaLayer<M> {
    pub fn new(k: i64, terms: impl IntoIterator<Item = M>) -> Self {
        FormulaLayer {
            k,
            monomials: normalize(terms),
        }
    }

    pub fn zero(k: i64) -> Self {
        FormulaLayer {
            k,
            monomials: Vec::new(),
        }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn monomials(&self) -> &[M] {
        &self.monomials
    }

    pub fn into_monomials(self) -> Vec<M> {
        self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.monomials.iter().map(|m| m.coeff()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layers {
    Parametric(Vec<FormulaLayer<ParametricMonomial>>),
    Implicit(Vec<FormulaLayer<ImplicitMonomial>>),
}

/// `dⁿy/dxⁿ` as a sum over layers `k` of `(-1)^k · prefactor^e(k) · layer`.
///
/// The prefactor is `f'(t)` with `e = -n-k` for the parametric and inverse
/// kinds, and `F_y` with `e = -k` for the implicit kind. Every layer in
/// [`DerivativeFormula::layer_range`] is present, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeFormula {
    n: u32,
    kind: FormulaKind,
    layers: Layers,
}

impl DerivativeFormula {
    pub fn parametric(n: u32, layers: Vec<FormulaLayer<ParametricMonomial>>) -> Result<Self> {
        Self::build(n, FormulaKind::Parametric, Layers::Parametric(layers))
    }

    pub fn inverse(n: u32, layers: Vec<FormulaLayer<ParametricMonomial>>) -> Result<Self> {
        Self::build(n, FormulaKind::Inverse, Layers::Parametric(layers))
    }

    pub fn implicit(n: u32, layers: Vec<FormulaLayer<ImplicitMonomial>>) -> Result<Self> {
        Self::build(n, FormulaKind::Implicit, Layers::Implicit(layers))
    }

    fn build(n: u32, kind: FormulaKind, layers: Layers) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let formula = DerivativeFormula { n, kind, layers };
        formula.check()?;
        Ok(formula)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> FormulaKind {
        self.kind
    }

    pub fn layers(&self) -> &Layers {
        &self.layers
    }

    pub fn parametric_layers(&self) -> Option<&[FormulaLayer<ParametricMonomial>]> {
        match &self.layers {
            Layers::Parametric(ls) => Some(ls),
            Layers::Implicit(_) => None,
        }
    }

    pub fn implicit_layers(&self) -> Option<&[FormulaLayer<ImplicitMonomial>]> {
        match &self.layers {
            Layers::Implicit(ls) => Some(ls),
            Layers::Parametric(_) => None,
        }
    }

    pub fn layer_range(&self) -> RangeInclusive<i64> {
        layer_range(self.kind, self.n)
    }

    pub fn sign(&self, k: i64) -> i32 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn prefactor_exponent(&self, k: i64) -> i64 {
        match self.kind {
            FormulaKind::Parametric | FormulaKind::Inverse => -i64::from(self.n) - k,
            FormulaKind::Implicit => -k,
        }
    }

    pub fn term_count(&self) -> usize {
        match &self.layers {
            Layers::Parametric(ls) => ls.iter().map(|l| l.monomials().len()).sum(),
            Layers::Implicit(ls) => ls.iter().map(|l| l.monomials().len()).sum(),
        }
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        let range = self.layer_range();
        let ks: Vec<i64> = match &self.layers {
            Layers::Parametric(ls) => ls.iter().map(|l| l.k).collect(),
            Layers::Implicit(ls) => ls.iter().map(|l| l.k).collect(),
        };
        if !ks.iter().copied().eq(range.clone()) {
            return Err(Error::LayerInvariant {
                n,
                k: ks.first().copied().unwrap_or(0),
                reason: format!("layers {ks:?} do not cover {range:?}"),
            });
        }
        match (&self.layers, self.kind) {
            (Layers::Parametric(ls), FormulaKind::Parametric | FormulaKind::Inverse) => {
                let inverse = self.kind == FormulaKind::Inverse;
                ls.iter()
                    .try_for_each(|l| check_parametric_layer(n, l.k, &l.monomials, inverse))
            }
            (Layers::Implicit(ls), FormulaKind::Implicit) => {
                ls.iter().try_for_each(|l| check_implicit_layer(n, l.k, &l.monomials))
            }
            (_, kind) => Err(Error::KindMismatch {
                expected: "layers matching the formula kind",
                found: kind.to_string(),
            }),
        }
    }
}

pub(crate) fn layer_range(kind: FormulaKind, n: u32) -> RangeInclusive<i64> {
    let n = i64::from(n);
    match kind {
        FormulaKind::Parametric | FormulaKind::Inverse => 0..=n - 1,
        FormulaKind::Implicit => 1..=2 * n - 1,
    }
}

fn is_normalized<M: Term + PartialEq>(ms: &[M]) -> bool {
    normalize(ms.to_vec()) == ms
}

/// Checks the block-size constraints of a `P_{n,k}` layer.
pub fn check_parametric_layer(n: u32, k: i64, ms: &[ParametricMonomial], inverse: bool) -> Result<()> {
    let fail = |reason: String| Error::LayerInvariant { n, k, reason };
    if !is_normalized(ms) {
        return Err(fail("monomials are not normalized".into()));
    }
    for m in ms {
        if m.g_order == 0 {
            return Err(fail("g order must be at least 1".into()));
        }
        if inverse && m.g_order != 1 {
            return Err(fail(format!("inverse formula carries g^({})", m.g_order)));
        }
        if m.f_orders.len() as i64 != k {
            return Err(fail(format!("{} f factors, expected {k}", m.f_orders.len())));
        }
        if m.f_orders.iter().any(|&j| j < 2) {
            return Err(fail("f' cannot appear as a numerator factor".into()));
        }
        if i64::from(m.weight()) != i64::from(n) + k {
            return Err(fail(format!(
                "orders sum to {}, expected {}",
                m.weight(),
                i64::from(n) + k
            )));
        }
    }
    Ok(())
}

/// Checks the block-size constraints of an `I_{n,k}` layer.
pub fn check_implicit_layer(n: u32, k: i64, ms: &[ImplicitMonomial]) -> Result<()> {
    let fail = |reason: String| Error::LayerInvariant { n, k, reason };
    if !is_normalized(ms) {
        return Err(fail("monomials are not normalized".into()));
    }
    for m in ms {
        if m.factors.len() as i64 != k {
            return Err(fail(format!("{} factors, expected {k}", m.factors.len())));
        }
        if m.x_order() != n || i64::from(m.y_order()) != k - 1 {
            return Err(fail(format!(
                "orders ({}, {}) expected ({n}, {})",
                m.x_order(),
                m.y_order(),
                k - 1
            )));
        }
        if m.factors.iter().any(|p| p.x == 0 && p.y < 2) {
            return Err(fail("F or F_y cannot appear as a numerator factor".into()));
        }
    }
    Ok(())
}

//! Brute-force repeated differentiation.
//!
//! Expressions are sums of products of symbols raised to integer powers,
//! so `f'` and `F_y` can appear with negative exponents and the quotient
//! rule is just the power rule. Nothing here uses the partition
//! machinery or the layer recurrences.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{DerivativeFormula, FormulaLayer, ImplicitMonomial, ParametricMonomial, Partial};
use crate::error::{Error, Result};

type Product<S> = BTreeMap<S, i64>;

/// A polynomial in symbols with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr<S: Ord> {
    terms: BTreeMap<Product<S>, BigInt>,
}

impl<S: Ord + Clone> Expr<S> {
    pub fn monomial(coeff: i64, factors: &[(S, i64)]) -> Self {
        let mut product = Product::new();
        for (sym, exp) in factors {
            *product.entry(sym.clone()).or_insert(0) += exp;
        }
        let mut e = Expr { terms: BTreeMap::new() };
        e.add_term(product, BigInt::from(coeff));
        e
    }

    fn add_term(&mut self, mut product: Product<S>, coeff: BigInt) {
        product.retain(|_, e| *e != 0);
        match self.terms.entry(product) {
            Entry::Vacant(slot) => {
                if !coeff.is_zero() {
                    slot.insert(coeff);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Product<S>, &BigInt)> {
        self.terms.iter()
    }

    /// Applies a derivation that maps each symbol to the next one.
    pub fn derivative(&self, d: impl Fn(&S) -> S) -> Self {
        let mut out = Expr { terms: BTreeMap::new() };
        for (product, coeff) in &self.terms {
            for (sym, &exp) in product {
                let mut p = product.clone();
                *p.get_mut(sym).expect("symbol present") -= 1;
                *p.entry(d(sym)).or_insert(0) += 1;
                out.add_term(p, coeff * BigInt::from(exp));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Expr { terms: BTreeMap::new() };
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let mut p = pa.clone();
                for (s, e) in pb {
                    *p.entry(s.clone()).or_insert(0) += e;
                }
                out.add_term(p, ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

/// Symbols of the parametric problem: `g^(j)(t)` and `f^(j)(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    G(u32),
    F(u32),
}

fn d_dt(s: &Sym) -> Sym {
    match *s {
        Sym::G(j) => Sym::G(j + 1),
        Sym::F(j) => Sym::F(j + 1),
    }
}

/// `dⁿy/dxⁿ` as a raw expression, by applying `(1/f') d/dt` to `g'/f'`
/// `n - 1` times.
pub fn parametric_expr(n: u32) -> Result<Expr<Sym>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let over_f1 = Expr::monomial(1, &[(Sym::F(1), -1)]);
    let mut e = Expr::monomial(1, &[(Sym::G(1), 1), (Sym::F(1), -1)]);
    for _ in 1..n {
        e = e.derivative(d_dt).mul(&over_f1);
    }
    Ok(e)
}

/// The parametric formula recovered by brute-force differentiation,
/// grouped into layers by the power of `f'`.
pub fn symbolic_parametric_oracle(n: u32) -> Result<DerivativeFormula> {
    let e = parametric_expr(n)?;
    let n_ = i64::from(n);
    let mut layers: Vec<Vec<ParametricMonomial>> = vec![Vec::new(); n as usize];
    for (product, coeff) in e.terms() {
        let bad = |reason: &str| Error::LayerInvariant {
            n,
            k: -1,
            reason: format!("oracle term {product:?}: {reason}"),
        };
        let f1 = product.get(&Sym::F(1)).copied().unwrap_or(0);
        let k = -f1 - n_;
        if !(0..n_).contains(&k) {
            return Err(bad("f' power outside the layer range"));
        }
        let mut g_order = None;
        let mut f_orders = Vec::new();
        for (&sym, &exp) in product {
            match sym {
                Sym::F(1) => {}
                Sym::G(j) if exp == 1 && g_order.is_none() => g_order = Some(j),
                Sym::F(j) if exp > 0 => f_orders.extend(std::iter::repeat_n(j, exp as usize)),
                _ => return Err(bad("unexpected factor")),
            }
        }
        let g_order = g_order.ok_or_else(|| bad("no g factor"))?;
        let signed = if k % 2 == 0 { coeff.clone() } else { -coeff };
        layers[k as usize].push(ParametricMonomial::new(signed, g_order, f_orders));
    }
    let layers = layers
        .into_iter()
        .enumerate()
        .map(|(k, ms)| FormulaLayer::new(k as i64, ms))
        .collect();
    DerivativeFormula::parametric(n, layers)
}

/// `(a, b)` stands for `∂^{a+b}F / ∂x^a ∂y^b`.
pub type PartialSym = (u32, u32);

/// `dⁿy/dxⁿ` for `F(x, y) = 0` as a raw expression, by applying
/// `∂/∂x - (F_x / F_y) ∂/∂y` to `-F_x / F_y` `n - 1` times.
pub fn implicit_expr(n: u32) -> Result<Expr<PartialSym>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let slope = Expr::monomial(-1, &[((1, 0), 1), ((0, 1), -1)]);
    let mut e = slope.clone();
    for _ in 1..n {
        let dx = e.derivative(|&(a, b)| (a + 1, b));
        let dy = e.derivative(|&(a, b)| (a, b + 1));
        e = dx.add(&slope.mul(&dy));
    }
    Ok(e)
}

/// The implicit formula recovered by brute-force differentiation,
/// grouped into layers by the power of `F_y`.
pub fn symbolic_implicit_oracle(n: u32) -> Result<DerivativeFormula> {
    let e = implicit_expr(n)?;
    let top = 2 * i64::from(n) - 1;
    let mut layers: Vec<Vec<ImplicitMonomial>> = vec![Vec::new(); top as usize];
    for (product, coeff) in e.terms() {
        let bad = |reason: &str| Error::LayerInvariant {
            n,
            k: -1,
            reason: format!("oracle term {product:?}: {reason}"),
        };
        let k = -product.get(&(0, 1)).copied().unwrap_or(0);
        if !(1..=top).contains(&k) {
            return Err(bad("F_y power outside the layer range"));
        }
        let mut factors = Vec::new();
        for (&(a, b), &exp) in product {
            if (a, b) == (0, 1) {
                continue;
            }
            if exp <= 0 {
                return Err(bad("negative power of a numerator factor"));
            }
            factors.extend(std::iter::repeat_n(Partial::new(a, b), exp as usize));
        }
        let signed = if k % 2 == 0 { coeff.clone() } else { -coeff };
        layers[k as usize - 1].push(ImplicitMonomial::new(signed, factors));
    }
    let layers = layers
        .into_iter()
        .enumerate()
        .map(|(i, ms)| FormulaLayer::new(i as i64 + 1, ms))
        .collect();
    DerivativeFormula::implicit(n, layers)
}

//! Derivatives of an implicitly defined function `F(x, y) = 0`.
//!
//! `dⁿy/dxⁿ = Σ_{k=1}^{2n-1} (-1)^k F_y^{-k} I_{n,k}`, where `I_{n,k}` sums
//! over partitions of `{1, …, n+k-1}` into `k` blocks in which the large
//! elements `n+1, …, n+k-1` are never alone. A block with `a` small and
//! `b` large elements contributes `∂^{a+b}F / ∂x^a ∂y^b`.

use num_bigint::BigInt;

use crate::algebra::{normalize, DerivativeFormula, FormulaLayer, ImplicitMonomial, ParametricMonomial, Partial};
use crate::error::{Error, Result};
use crate::parametric::{odd_double_factorial, Method};
use crate::partitions::{for_each_implicit_partition, RoleSplit};

pub const F_X: Partial = Partial::new(1, 0);
pub const F_XY: Partial = Partial::new(1, 1);
pub const F_YY: Partial = Partial::new(0, 2);

/// `I_{n,k}` by enumerating its partitions.
pub fn i_enum(n: u32, k: i64) -> FormulaLayer<ImplicitMonomial> {
    let mut terms = Vec::new();
    if k >= 1 {
        let roles = RoleSplit::implicit(n, k as u32);
        for_each_implicit_partition(n, k, |p| {
            terms.push(
                ImplicitMonomial::from_partition(&p, roles)
                    .expect("enumerated partitions belong to the implicit class"),
            );
        });
    }
    FormulaLayer::new(k, terms)
}

fn leibniz(ms: &[ImplicitMonomial], raise: impl Fn(Partial) -> Partial) -> Vec<ImplicitMonomial> {
    let mut out = Vec::new();
    for m in ms {
        let mut i = 0;
        while i < m.factors.len() {
            let factor = m.factors[i];
            let mult = m.factors[i..].iter().take_while(|&&p| p == factor).count();
            let mut factors = m.factors.clone();
            factors[i] = raise(factor);
            out.push(ImplicitMonomial::new(&m.coeff * BigInt::from(mult), factors));
            i += mult;
        }
    }
    out
}

/// `∂/∂x` by the Leibniz rule; not normalized.
pub fn partial_x(ms: &[ImplicitMonomial]) -> Vec<ImplicitMonomial> {
    leibniz(ms, |p| Partial::new(p.x + 1, p.y))
}

/// `∂/∂y` by the Leibniz rule; not normalized.
pub fn partial_y(ms: &[ImplicitMonomial]) -> Vec<ImplicitMonomial> {
    leibniz(ms, |p| Partial::new(p.x, p.y + 1))
}

fn times<'a>(ms: &'a [ImplicitMonomial], c: i64, extra: &[Partial]) -> impl Iterator<Item = ImplicitMonomial> + 'a {
    let c = BigInt::from(c);
    let extra = extra.to_vec();
    ms.iter().map(move |m| {
        let mut factors = m.factors.clone();
        factors.extend_from_slice(&extra);
        ImplicitMonomial::new(&m.coeff * &c, factors)
    })
}

/// Memoized bottom-up evaluation of
/// `I_{n+1,k} = ∂x I_{n,k} + F_x ∂y I_{n,k-1} + (k-1) F_xy I_{n,k-1} + (k-2) F_x F_yy I_{n,k-2}`
/// starting from `I_{1,1} = F_x`.
#[derive(Clone)]
pub struct ImplicitRecurrence {
    // rows[n - 1][k - 1] = I_{n,k} for 1 <= k <= 2n-1
    rows: Vec<Vec<Vec<ImplicitMonomial>>>,
}

impl Default for ImplicitRecurrence {
    fn default() -> Self {
        Self::new()
    }
}

impl ImplicitRecurrence {
    pub fn new() -> Self {
        ImplicitRecurrence {
            rows: vec![vec![vec![ImplicitMonomial::unit(vec![F_X])]]],
        }
    }

    fn extend_to(&mut self, n: u32) {
        while (self.rows.len() as u32) < n {
            let prev = self.rows.last().expect("base row present");
            let get = |k: i64| -> &[ImplicitMonomial] {
                if k >= 1 && (k as usize) <= prev.len() {
                    &prev[k as usize - 1]
                } else {
                    &[]
                }
            };
            let width = prev.len() + 2;
            let mut next = Vec::with_capacity(width);
            for k in 1..=width as i64 {
                let mut terms = partial_x(get(k));
                terms.extend(times(&partial_y(get(k - 1)), 1, &[F_X]));
                terms.extend(times(get(k - 1), k - 1, &[F_XY]));
                terms.extend(times(get(k - 2), k - 2, &[F_X, F_YY]));
                next.push(normalize(terms));
            }
            self.rows.push(next);
        }
    }

    pub fn layer(&mut self, n: u32, k: i64) -> FormulaLayer<ImplicitMonomial> {
        if n == 0 || k < 1 || k > 2 * i64::from(n) - 1 {
            return FormulaLayer::zero(k);
        }
        self.extend_to(n);
        FormulaLayer::new(k, self.rows[n as usize - 1][k as usize - 1].clone())
    }

    pub fn layers(&mut self, n: u32) -> Vec<FormulaLayer<ImplicitMonomial>> {
        (1..=2 * i64::from(n) - 1).map(|k| self.layer(n, k)).collect()
    }
}

/// `I_{n,k}` by the recurrence.
pub fn i_recur(n: u32, k: i64) -> FormulaLayer<ImplicitMonomial> {
    ImplicitRecurrence::new().layer(n, k)
}

/// `dⁿy/dxⁿ` for `F(x, y) = 0`.
pub fn implicit_formula(n: u32, method: Method) -> Result<DerivativeFormula> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let layers = match method {
        Method::Enumeration => (1..=2 * i64::from(n) - 1).map(|k| i_enum(n, k)).collect(),
        Method::Recurrence => ImplicitRecurrence::new().layers(n),
    };
    DerivativeFormula::implicit(n, layers)
}

pub fn implicit_formula_from(recurrence: &mut ImplicitRecurrence, n: u32) -> Result<DerivativeFormula> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    DerivativeFormula::implicit(n, recurrence.layers(n))
}

/// `I_{n,1} = F_{x^n}`: a single block holding every small element.
pub fn closed_form_first(n: u32) -> FormulaLayer<ImplicitMonomial> {
    FormulaLayer::new(1, [ImplicitMonomial::unit(vec![Partial::new(n, 0)])])
}

/// `I_{n,2n-1} = (2n-3)!! F_x^n F_yy^{n-1}`.
pub fn closed_form_last(n: u32) -> FormulaLayer<ImplicitMonomial> {
    let n_ = i64::from(n);
    let mut factors = vec![F_X; n as usize];
    factors.extend(vec![F_YY; (n as usize).saturating_sub(1)]);
    FormulaLayer::new(
        2 * n_ - 1,
        [ImplicitMonomial::new(odd_double_factorial(2 * n_ - 3), factors)],
    )
}

/// Specializes the implicit formula to `F(x, y) = f(y) - x`, giving the
/// derivative of the inverse function `y = f⁻¹(x)`.
///
/// `F_x = -1`, every other partial involving `x` vanishes, `F_{y^b} = f^(b)`
/// and `F_y = f'`. Layer `k` of the implicit formula lands in layer `k - n`
/// of the inverse formula.
pub fn inverse_via_implicit(n: u32) -> Result<DerivativeFormula> {
    specialize_to_inverse(&implicit_formula(n, Method::Recurrence)?)
}

pub fn specialize_to_inverse(formula: &DerivativeFormula) -> Result<DerivativeFormula> {
    let layers = formula.implicit_layers().ok_or_else(|| Error::KindMismatch {
        expected: "implicit",
        found: formula.kind().to_string(),
    })?;
    let n = i64::from(formula.n());
    let mut out: Vec<Vec<ParametricMonomial>> = vec![Vec::new(); n as usize];
    for layer in layers {
        let k = layer.k();
        for m in layer.monomials() {
            if m.factors.iter().any(|&p| p.x >= 1 && p != F_X) {
                continue;
            }
            let fx_count = m.factors.iter().filter(|&&p| p == F_X).count() as i64;
            let f_orders: Vec<u32> = m.factors.iter().filter(|p| p.x == 0).map(|p| p.y).collect();
            let target = k - n;
            if !(0..n).contains(&target) {
                return Err(Error::LayerInvariant {
                    n: formula.n(),
                    k,
                    reason: "surviving term outside the inverse layer range".into(),
                });
            }
            // (-1)^{fx_count} from F_x = -1, then move the layer sign
            // (-1)^k of the implicit layer onto layer k - n
            let flips = fx_count + k + target;
            let coeff = if flips % 2 == 0 { m.coeff.clone() } else { -&m.coeff };
            out[target as usize].push(ParametricMonomial::new(coeff, 1, f_orders));
        }
    }
    let layers = out
        .into_iter()
        .enumerate()
        .map(|(k, ms)| FormulaLayer::new(k as i64, ms))
        .collect();
    DerivativeFormula::inverse(formula.n(), layers)
}

//! Derivatives of a parametrically given function `x = f(t)`, `y = g(t)`.
//!
//! `dⁿy/dxⁿ = Σ_{k=0}^{n-1} (-1)^k [f'(t)]^{-n-k} P_{n,k}(t)`, where
//! `P_{n,k}` sums one product of derivatives per partition of
//! `{1, …, n+k}` into `k+1` blocks with no singleton other than `{1}`.
//! The coefficient layers are computed either by enumerating those
//! partitions or by the recurrence
//! `P_{n+1,k} = P'_{n,k} + (n+k-1) f'' P_{n,k-1}`.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{normalize, DerivativeFormula, FormulaLayer, ParametricMonomial};
use crate::error::{Error, Result};
use crate::partitions::for_each_parametric_partition;

/// How coefficient layers are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Sum over the enumerated partitions.
    Enumeration,
    /// Bottom-up recurrence in `n`.
    #[default]
    Recurrence,
}

/// `P_{n,k}` by enumerating its partitions.
pub fn p_enum(n: u32, k: i64) -> FormulaLayer<ParametricMonomial> {
    let mut terms = Vec::new();
    for_each_parametric_partition(n, k, |p| {
        terms.push(
            ParametricMonomial::from_partition(&p).expect("enumerated partitions belong to the parametric class"),
        );
    });
    FormulaLayer::new(k, terms)
}

/// `d/dt` of a sum of monomials by the Leibniz rule. The result is not
/// normalized.
pub fn d_dt(ms: &[ParametricMonomial]) -> Vec<ParametricMonomial> {
    let mut out = Vec::new();
    for m in ms {
        out.push(ParametricMonomial {
            coeff: m.coeff.clone(),
            g_order: m.g_order + 1,
            f_orders: m.f_orders.clone(),
        });
        // f_orders is sorted, so equal orders are adjacent
        let mut i = 0;
        while i < m.f_orders.len() {
            let order = m.f_orders[i];
            let mult = m.f_orders[i..].iter().take_while(|&&o| o == order).count();
            let mut raised = m.f_orders.clone();
            raised[i] += 1;
            out.push(ParametricMonomial {
                coeff: &m.coeff * BigInt::from(mult),
                g_order: m.g_order,
                f_orders: raised,
            });
            i += mult;
        }
    }
    out
}

/// Memoized bottom-up evaluation of the `P_{n,k}` recurrence.
///
/// Rows are filled in increasing `n` from `P_{1,0} = g'`; a row is
/// normalized once per `(n, k)` cell.
#[derive(Clone)]
pub struct ParametricRecurrence {
    // rows[n - 1][k] = P_{n,k} for 0 <= k <= n-1
    rows: Vec<Vec<Vec<ParametricMonomial>>>,
    step_coefficient: fn(u32, i64) -> i64,
}

impl Default for ParametricRecurrence {
    fn default() -> Self {
        Self::new()
    }
}

impl ParametricRecurrence {
    pub fn new() -> Self {
        Self::with_step_coefficient(|n, k| i64::from(n) + k - 1)
    }

    /// Replaces the `(n+k-1)` multiplier of the `f'' P_{n,k-1}` term.
    /// Only useful for checking that verification catches a broken
    /// recurrence.
    pub fn with_step_coefficient(step_coefficient: fn(u32, i64) -> i64) -> Self {
        ParametricRecurrence {
            rows: vec![vec![vec![ParametricMonomial::unit(1, vec![])]]],
            step_coefficient,
        }
    }

    fn extend_to(&mut self, n: u32) {
        while (self.rows.len() as u32) < n {
            let src = self.rows.len() as u32;
            let prev = self.rows.last().expect("base row present");
            let mut next = Vec::with_capacity(prev.len() + 1);
            for k in 0..=prev.len() {
                let mut terms = prev.get(k).map(|l| d_dt(l)).unwrap_or_default();
                if k >= 1 {
                    let c = BigInt::from((self.step_coefficient)(src, k as i64));
                    terms.extend(prev[k - 1].iter().map(|m| {
                        let mut f_orders = m.f_orders.clone();
                        f_orders.push(2);
                        ParametricMonomial::new(&m.coeff * &c, m.g_order, f_orders)
                    }));
                }
                next.push(normalize(terms));
            }
            self.rows.push(next);
        }
    }

    pub fn layer(&mut self, n: u32, k: i64) -> FormulaLayer<ParametricMonomial> {
        if n == 0 || k < 0 || k >= i64::from(n) {
            return FormulaLayer::zero(k);
        }
        self.extend_to(n);
        FormulaLayer::new(k, self.rows[n as usize - 1][k as usize].clone())
    }

    pub fn layers(&mut self, n: u32) -> Vec<FormulaLayer<ParametricMonomial>> {
        (0..i64::from(n)).map(|k| self.layer(n, k)).collect()
    }
}

/// `P_{n,k}` by the recurrence.
pub fn p_recur(n: u32, k: i64) -> FormulaLayer<ParametricMonomial> {
    ParametricRecurrence::new().layer(n, k)
}

/// `dⁿy/dxⁿ` for `x = f(t)`, `y = g(t)`.
pub fn parametric_formula(n: u32, method: Method) -> Result<DerivativeFormula> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let layers = match method {
        Method::Enumeration => (0..i64::from(n)).map(|k| p_enum(n, k)).collect(),
        Method::Recurrence => ParametricRecurrence::new().layers(n),
    };
    DerivativeFormula::parametric(n, layers)
}

pub fn parametric_formula_from(recurrence: &mut ParametricRecurrence, n: u32) -> Result<DerivativeFormula> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    DerivativeFormula::parametric(n, recurrence.layers(n))
}

/// `dⁿy/dxⁿ` for `y = f⁻¹(x)`: the parametric formula with `g(t) = t`, so
/// only terms with a bare `g'` survive and `g' = 1`.
pub fn inverse_formula(n: u32) -> Result<DerivativeFormula> {
    inverse_from_parametric(&parametric_formula(n, Method::Recurrence)?)
}

pub fn inverse_from_parametric(formula: &DerivativeFormula) -> Result<DerivativeFormula> {
    let layers = formula
        .parametric_layers()
        .ok_or_else(|| Error::KindMismatch {
            expected: "parametric",
            found: formula.kind().to_string(),
        })?
        .iter()
        .map(|l| FormulaLayer::new(l.k(), l.monomials().iter().filter(|m| m.g_order == 1).cloned()))
        .collect();
    DerivativeFormula::inverse(formula.n(), layers)
}

/// `1·3·5⋯m` for odd `m`; the empty product for `m < 1`.
pub fn odd_double_factorial(m: i64) -> BigInt {
    (1..=m).step_by(2).map(BigInt::from).product()
}

pub(crate) fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 || n < 0 || r > n {
        return BigInt::from(0);
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The two extreme layers in closed form:
/// `P_{n,n-1} = (2n-3)!! g' (f'')^{n-1}` and
/// `P_{n,n-2} = (2n-3)!! g'' (f'')^{n-2} + C(2n-3, 3) (2n-7)!! g' (f'')^{n-3} f'''`.
pub fn closed_form_top(n: u32) -> FormulaLayer<ParametricMonomial> {
    let n_ = i64::from(n);
    FormulaLayer::new(
        n_ - 1,
        [ParametricMonomial::new(
            odd_double_factorial(2 * n_ - 3),
            1,
            vec![2; n as usize - 1],
        )],
    )
}

pub fn closed_form_second(n: u32) -> FormulaLayer<ParametricMonomial> {
    let n_ = i64::from(n);
    let mut terms = vec![ParametricMonomial::new(
        odd_double_factorial(2 * n_ - 3),
        2,
        vec![2; n as usize - 2],
    )];
    if n >= 3 {
        let mut f_orders = vec![2; n as usize - 3];
        f_orders.push(3);
        terms.push(ParametricMonomial::new(
            binomial(2 * n_ - 3, 3) * odd_double_factorial(2 * n_ - 7),
            1,
            f_orders,
        ));
    }
    FormulaLayer::new(n_ - 2, terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub n: u32,
    /// `P_{n,n-1}` matches.
    pub top: bool,
    /// `P_{n,n-2}` matches.
    pub second: bool,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.top && self.second
    }
}

/// Compares the recurrence against both closed forms. Needs `n >= 2`.
pub fn closed_form_check(n: u32) -> Result<ClosedFormReport> {
    closed_form_check_with(&mut ParametricRecurrence::new(), n)
}

pub fn closed_form_check_with(recurrence: &mut ParametricRecurrence, n: u32) -> Result<ClosedFormReport> {
    if n < 2 {
        return Err(Error::ZeroOrder);
    }
    let n_ = i64::from(n);
    Ok(ClosedFormReport {
        n,
        top: recurrence.layer(n, n_ - 1) == closed_form_top(n),
        second: recurrence.layer(n, n_ - 2) == closed_form_second(n),
    })
}

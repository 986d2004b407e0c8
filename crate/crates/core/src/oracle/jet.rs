//! Truncated Taylor series in one and two variables.

use crate::error::{Error, Result};

/// `Σ cᵢ (t - base_point)^i` for `i <= order`, with `cᵢ = f^(i)(t0) / i!`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    base_point: f64,
    coeffs: Vec<f64>,
}

pub(crate) fn factorial(i: usize) -> f64 {
    (1..=i).map(|j| j as f64).product()
}

impl Jet {
    pub fn new(base_point: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::JetMismatch("a jet needs at least one coefficient".into()));
        }
        Ok(Jet { base_point, coeffs })
    }

    /// Builds a jet from the value and successive derivatives at `base_point`.
    pub fn from_derivatives(base_point: f64, value: f64, derivatives: &[f64]) -> Self {
        let mut coeffs = Vec::with_capacity(derivatives.len() + 1);
        coeffs.push(value);
        coeffs.extend(derivatives.iter().enumerate().map(|(i, d)| d / factorial(i + 1)));
        Jet { base_point, coeffs }
    }

    /// The identity `t ↦ t` around `base_point`.
    pub fn variable(base_point: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = base_point;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Jet { base_point, coeffs }
    }

    pub fn base_point(&self) -> f64 {
        self.base_point
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// The `i`-th derivative at the base point.
    pub fn derivative(&self, i: usize) -> f64 {
        self.coeffs[i] * factorial(i)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Jet {
            base_point: self.base_point,
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    fn check_compatible(&self, other: &Jet) -> Result<()> {
        if self.order() != other.order() || self.base_point != other.base_point {
            return Err(Error::JetMismatch(format!(
                "order {} at {} vs order {} at {}",
                self.order(),
                self.base_point,
                other.order(),
                other.base_point
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Jet {
            base_point: self.base_point,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_compatible(other)?;
        Ok(Jet {
            base_point: self.base_point,
            coeffs: mul_truncated(&self.coeffs, &other.coeffs, self.order()),
        })
    }

    /// `self ∘ inner`, where `inner` takes values near `self.base_point`:
    /// `inner.value()` must equal the base point of `self`.
    pub fn compose(&self, inner: &Jet) -> Result<Jet> {
        if inner.value() != self.base_point {
            return Err(Error::JetMismatch(format!(
                "inner value {} is not the outer base point {}",
                inner.value(),
                self.base_point
            )));
        }
        let order = self.order().min(inner.order());
        let mut shift = inner.coeffs[..=order].to_vec();
        shift[0] = 0.0;
        Ok(Jet {
            base_point: inner.base_point,
            coeffs: compose_truncated(&self.coeffs[..=order], &shift, order),
        })
    }

    /// The compositional inverse: a jet around `self.value()` whose value
    /// is `self.base_point()`.
    ///
    /// Coefficients are found order by order: with `r₁ … r_{m-1}` fixed,
    /// `r_m` only enters the `u^m` coefficient of `f(t0 + r(u)) - f(t0)`
    /// through `c₁ r_m`, which must make that coefficient vanish.
    pub fn revert(&self) -> Result<Jet> {
        let order = self.order();
        let lead = self.coeffs.get(1).copied().unwrap_or(0.0);
        if lead == 0.0 {
            return Err(Error::DivisionByZero("the linear coefficient"));
        }
        let mut outer = self.coeffs.clone();
        outer[0] = 0.0;
        let mut r = vec![0.0; order + 1];
        if order >= 1 {
            r[1] = 1.0 / lead;
        }
        for m in 2..=order {
            let residual = compose_truncated(&outer, &r, m)[m];
            r[m] = -residual / lead;
        }
        r[0] = self.base_point;
        Ok(Jet {
            base_point: self.coeffs[0],
            coeffs: r,
        })
    }
}

pub(crate) fn mul_truncated(a: &[f64], b: &[f64], order: usize) -> Vec<f64> {
    let mut out = vec![0.0; order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if *x == 0.0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Σ outer[i] · inner^i` truncated at `order`, by Horner's rule. `inner`
/// must have a zero constant term.
pub(crate) fn compose_truncated(outer: &[f64], inner: &[f64], order: usize) -> Vec<f64> {
    let mut acc = vec![0.0; order + 1];
    for c in outer.iter().take(order + 1).rev() {
        acc = mul_truncated(&acc, inner, order);
        acc[0] += c;
    }
    acc
}

/// `Σ c_{a,b} (x - x0)^a (y - y0)^b` for `a + b <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateJet {
    base_point: (f64, f64),
    order: usize,
    // coeffs[a][b] for a + b <= order
    coeffs: Vec<Vec<f64>>,
}

impl BivariateJet {
    /// `coeffs[a]` must hold `order - a + 1` entries.
    pub fn new(base_point: (f64, f64), coeffs: Vec<Vec<f64>>) -> Result<Self> {
        let order = coeffs
            .len()
            .checked_sub(1)
            .filter(|&o| o >= 1)
            .ok_or_else(|| Error::JetMismatch("a bivariate jet needs order at least 1".into()))?;
        for (a, row) in coeffs.iter().enumerate() {
            if row.len() != order - a + 1 {
                return Err(Error::JetMismatch(format!(
                    "row {a} has {} coefficients, expected {}",
                    row.len(),
                    order - a + 1
                )));
            }
        }
        Ok(BivariateJet {
            base_point,
            order,
            coeffs,
        })
    }

    /// Builds the jet from partial derivatives: `c_{a,b} = ∂^{a+b}F / (a! b!)`.
    pub fn from_partials(base_point: (f64, f64), order: usize, partial: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let coeffs = (0..=order)
            .map(|a| {
                (0..=order - a)
                    .map(|b| partial(a, b) / (factorial(a) * factorial(b)))
                    .collect()
            })
            .collect();
        Self::new(base_point, coeffs)
    }

    pub fn base_point(&self) -> (f64, f64) {
        self.base_point
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, a: usize, b: usize) -> f64 {
        self.coeffs.get(a).and_then(|row| row.get(b)).copied().unwrap_or(0.0)
    }

    /// `∂^{a+b}F / ∂x^a ∂y^b` at the base point.
    pub fn partial(&self, a: usize, b: usize) -> f64 {
        self.coeff(a, b) * factorial(a) * factorial(b)
    }
}

//! Numeric derivatives of `y(x)` from truncated power series, without any
//! of the closed-form coefficient machinery.

use super::jet::{factorial, mul_truncated, BivariateJet, Jet};
use crate::error::{Error, Result};

/// Largest `|F(x0, y0)|` accepted as "on the curve".
pub const ON_CURVE_TOLERANCE: f64 = 1e-9;

/// Derivatives `d¹y/dx¹ … dⁿy/dxⁿ` at `x0 = f(t0)` for `x = f(t)`,
/// `y = g(t)`: revert the series of `f`, then compose `g` with it.
pub fn series_reversion_oracle(f: &Jet, g: &Jet, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if f.base_point() != g.base_point() {
        return Err(Error::JetMismatch(format!(
            "f is expanded at {} but g at {}",
            f.base_point(),
            g.base_point()
        )));
    }
    if f.order() < n || g.order() < n {
        return Err(Error::MissingOrder(format!(
            "jets of order {} and {} cannot give derivative {n}",
            f.order(),
            g.order()
        )));
    }
    let t_of_x = f.truncate(n).revert()?;
    let y_of_x = g.truncate(n).compose(&t_of_x)?;
    Ok((1..=n).map(|i| y_of_x.derivative(i)).collect())
}

/// Derivatives `d¹y/dx¹ … dⁿy/dxⁿ` of the curve `F(x, y) = 0` through the
/// base point of `jet`.
///
/// Writes `y = y0 + Σ dᵢ hⁱ` with `h = x - x0`. The unknown `d_m` enters the
/// `h^m` coefficient of `F(x0 + h, y0 + …)` only through `c_{0,1} d_m`, so
/// each order is solved from the previous ones.
pub fn implicit_series_oracle(jet: &BivariateJet, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if jet.order() < n {
        return Err(Error::MissingOrder(format!(
            "jet of order {} cannot give derivative {n}",
            jet.order()
        )));
    }
    if jet.coeff(0, 0).abs() > ON_CURVE_TOLERANCE {
        return Err(Error::NotOnCurve(jet.coeff(0, 0)));
    }
    let fy = jet.coeff(0, 1);
    if fy == 0.0 {
        return Err(Error::DivisionByZero("F_y"));
    }
    let mut d = vec![0.0; n + 1];
    for m in 1..=n {
        let residual = substituted_coefficient(jet, &d, m);
        d[m] = -residual / fy;
    }
    Ok((1..=n).map(|i| d[i] * factorial(i)).collect())
}

/// The `h^m` coefficient of `Σ c_{a,b} h^a Y(h)^b` where `Y = Σ d_i h^i`.
fn substituted_coefficient(jet: &BivariateJet, d: &[f64], m: usize) -> f64 {
    let y = &d[..=m];
    let mut power = vec![0.0; m + 1];
    power[0] = 1.0;
    let mut total = 0.0;
    for b in 0..=m {
        if b > 0 {
            power = mul_truncated(&power, y, m);
        }
        // h^a * Y^b contributes power[m - a] to h^m
        for a in 0..=(m.min(jet.order().saturating_sub(b))) {
            if a + b > jet.order() {
                break;
            }
            total += jet.coeff(a, b) * power[m - a];
        }
    }
    total
}

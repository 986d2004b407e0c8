//! Numeric evaluation of layered formulas at a point.

use num_traits::ToPrimitive;

use super::table::{DerivativeTable, ImplicitTable, ParametricTable};
use crate::algebra::{DerivativeFormula, FormulaKind};
use crate::error::{Error, Result};

fn to_f64(c: &num_bigint::BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// `dⁿy/dxⁿ` at `t0` for a parametric or inverse formula. For the inverse
/// kind `g` is ignored (`y = t`, so `g' = 1`).
pub fn eval_parametric(formula: &DerivativeFormula, table: &ParametricTable) -> Result<f64> {
    let layers = formula.parametric_layers().ok_or_else(|| Error::KindMismatch {
        expected: "parametric or inverse",
        found: formula.kind().to_string(),
    })?;
    let inverse = formula.kind() == FormulaKind::Inverse;
    let f1 = table.f_deriv(1)?;
    if f1 == 0.0 {
        return Err(Error::DivisionByZero("f'(t0)"));
    }
    let mut total = 0.0;
    for layer in layers {
        let mut sum = 0.0;
        for m in layer.monomials() {
            let mut term = to_f64(&m.coeff);
            if !inverse {
                term *= table.g_deriv(m.g_order)?;
            }
            for &j in &m.f_orders {
                term *= table.f_deriv(j)?;
            }
            sum += term;
        }
        let k = layer.k();
        let exponent = formula.prefactor_exponent(k) as i32;
        total += f64::from(formula.sign(k)) * f1.powi(exponent) * sum;
    }
    Ok(total)
}

/// `dⁿy/dxⁿ` at `(x0, y0)` for an implicit formula.
pub fn eval_implicit(formula: &DerivativeFormula, table: &ImplicitTable) -> Result<f64> {
    let layers = formula.implicit_layers().ok_or_else(|| Error::KindMismatch {
        expected: "implicit",
        found: formula.kind().to_string(),
    })?;
    table.check_on_curve()?;
    let fy = table.partial(0, 1)?;
    if fy == 0.0 {
        return Err(Error::DivisionByZero("F_y(x0, y0)"));
    }
    let mut total = 0.0;
    for layer in layers {
        let mut sum = 0.0;
        for m in layer.monomials() {
            let mut term = to_f64(&m.coeff);
            for p in &m.factors {
                term *= table.partial(p.x, p.y)?;
            }
            sum += term;
        }
        let k = layer.k();
        let exponent = formula.prefactor_exponent(k) as i32;
        total += f64::from(formula.sign(k)) * fy.powi(exponent) * sum;
    }
    Ok(total)
}

/// Dispatches on the table variant.
pub fn evaluate(formula: &DerivativeFormula, table: &DerivativeTable) -> Result<f64> {
    match table {
        DerivativeTable::Parametric(t) => eval_parametric(formula, t),
        DerivativeTable::Implicit(t) => eval_implicit(formula, t),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::implicit::implicit_formula;
    use crate::parametric::{inverse_formula, parametric_formula};
    use crate::Method;

    fn curve() -> ParametricTable {
        ParametricTable {
            t0: 1.0,
            f: vec![2.0, 2.0, 0.0],
            g: vec![3.0, 6.0, 6.0],
        }
    }

    fn circle() -> ImplicitTable {
        let partials = BTreeMap::from([
            ((1, 0), 1.2),
            ((0, 1), 1.6),
            ((2, 0), 2.0),
            ((1, 1), 0.0),
            ((0, 2), 2.0),
        ]);
        ImplicitTable {
            x0: 0.6,
            y0: 0.8,
            value: 0.0,
            partials,
        }
    }

    #[test]
    fn three_halves_power() {
        let t = curve();
        let p = |n| parametric_formula(n, Method::Recurrence).unwrap();
        assert_eq!(eval_parametric(&p(1), &t).unwrap(), 1.5);
        assert_eq!(eval_parametric(&p(2), &t).unwrap(), 0.75);
        assert_eq!(eval_parametric(&p(3), &t).unwrap(), -0.375);
    }

    #[test]
    fn log_derivatives_from_exp() {
        let t = ParametricTable {
            t0: 0.0,
            f: vec![1.0; 8],
            g: vec![],
        };
        let mut factorial = 1.0;
        for n in 1..=8u32 {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(
                eval_parametric(&inverse_formula(n).unwrap(), &t).unwrap(),
                sign * factorial
            );
            factorial *= f64::from(n);
        }
    }

    #[test]
    fn circle_derivatives() {
        let t = circle();
        let i = |n| implicit_formula(n, Method::Recurrence).unwrap();
        assert_eq!(eval_implicit(&i(1), &t).unwrap(), -0.75);
        assert!((eval_implicit(&i(2), &t).unwrap() + 1.953125).abs() < 1e-15);
    }

    #[test]
    fn straight_line_has_no_curvature() {
        let t = ImplicitTable {
            x0: 0.3,
            y0: 0.3,
            value: 0.0,
            partials: BTreeMap::from([((1, 0), -1.0), ((0, 1), 1.0)]),
        };
        let full = ImplicitTable::from_jet(&t.jet(5).unwrap());
        for n in 2..=5 {
            let f = implicit_formula(n, Method::Recurrence).unwrap();
            assert_eq!(eval_implicit(&f, &full).unwrap(), 0.0);
        }
    }

    #[test]
    fn preconditions() {
        let p2 = parametric_formula(2, Method::Recurrence).unwrap();
        let mut flat = curve();
        flat.f[0] = 0.0;
        assert_eq!(eval_parametric(&p2, &flat), Err(Error::DivisionByZero("f'(t0)")));
        let short = ParametricTable {
            t0: 0.0,
            f: vec![1.0],
            g: vec![1.0, 1.0],
        };
        assert!(matches!(eval_parametric(&p2, &short), Err(Error::MissingOrder(_))));

        let i2 = implicit_formula(2, Method::Recurrence).unwrap();
        let mut vertical = circle();
        vertical.partials.insert((0, 1), 0.0);
        assert!(matches!(eval_implicit(&i2, &vertical), Err(Error::DivisionByZero(_))));
        let mut off = circle();
        off.value = 0.1;
        assert!(matches!(eval_implicit(&i2, &off), Err(Error::NotOnCurve(_))));
        assert!(matches!(eval_implicit(&p2, &circle()), Err(Error::KindMismatch { .. })));
        assert!(matches!(
            evaluate(&i2, &DerivativeTable::Parametric(curve())),
            Err(Error::KindMismatch { .. })
        ));
    }
}

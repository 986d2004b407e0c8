//! Evaluating formulas at a point from a derivative table, checked
//! against truncated power series.

use nthderiv::implicit::implicit_formula;
use nthderiv::oracle::{
    eval_implicit, eval_parametric, evaluate, implicit_series_oracle, series_reversion_oracle, DerivativeTable,
};
use nthderiv::parametric::parametric_formula;
use nthderiv::Method;

const CURVE: &str = "# x = t^2, y = t^3 at t = 1, so y = x^(3/2)
t0=1
f=2,2,0
g=3,6,6
";

const CIRCLE: &str = "# x^2 + y^2 - 1 = 0 at (0.6, 0.8)
x0=0.6
y0=0.8
F_0_0=0
F_1_0=1.2
F_0_1=1.6
F_2_0=2
F_1_1=0
F_0_2=2
F_3_0=0
F_2_1=0
F_1_2=0
F_0_3=0
";

fn main() -> nthderiv::Result<()> {
    let DerivativeTable::Parametric(curve) = CURVE.parse()? else {
        unreachable!()
    };
    let (f, g) = curve.jets();
    let series = series_reversion_oracle(&f, &g, 3)?;
    for n in 1..=3 {
        let value = eval_parametric(&parametric_formula(n, Method::Recurrence)?, &curve)?;
        println!(
            "y = x^(3/2): order {n}: formula {value}, series {}",
            series[n as usize - 1]
        );
    }

    let circle: DerivativeTable = CIRCLE.parse()?;
    let DerivativeTable::Implicit(table) = &circle else {
        unreachable!()
    };
    let series = implicit_series_oracle(&table.jet(3)?, 3)?;
    for n in 1..=3 {
        let formula = implicit_formula(n, Method::Recurrence)?;
        assert_eq!(evaluate(&formula, &circle)?, eval_implicit(&formula, table)?);
        println!(
            "unit circle: order {n}: formula {}, series {}",
            evaluate(&formula, &circle)?,
            series[n as usize - 1]
        );
    }

    let mut vertical = table.clone();
    vertical.partials.insert((0, 1), 0.0);
    match eval_implicit(&implicit_formula(1, Method::Recurrence)?, &vertical) {
        Err(e) => println!("vertical tangent: {e}"),
        Ok(v) => println!("unexpected value {v}"),
    }
    Ok(())
}

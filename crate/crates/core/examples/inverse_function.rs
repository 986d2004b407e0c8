//! Derivatives of an inverse function, reached two ways: from the
//! parametric formula with g(t) = t, and from the implicit formula with
//! F(x, y) = f(y) - x. Then evaluates them for f = exp, i.e. y = ln x.

use nthderiv::algebra::render;
use nthderiv::implicit::inverse_via_implicit;
use nthderiv::oracle::{eval_parametric, ParametricTable};
use nthderiv::parametric::inverse_formula;
use nthderiv::Format;

fn main() -> nthderiv::Result<()> {
    let exp_at_zero = ParametricTable {
        t0: 0.0,
        f: vec![1.0; 8],
        g: vec![],
    };
    for n in 1..=8 {
        let formula = inverse_formula(n)?;
        assert_eq!(formula, inverse_via_implicit(n)?);
        if n <= 4 {
            println!("n={n}: {}", render(&formula, Format::Text));
        }
        println!(
            "  d^{n}/dx^{n} ln x at x = 1: {}",
            eval_parametric(&formula, &exp_at_zero)?
        );
    }
    Ok(())
}

//! Brute-force repeated differentiation compared with the partition
//! formulas.

use std::time::Instant;

use nthderiv::implicit::implicit_formula;
use nthderiv::oracle::symbolic::{implicit_expr, parametric_expr};
use nthderiv::oracle::{symbolic_implicit_oracle, symbolic_parametric_oracle};
use nthderiv::parametric::parametric_formula;
use nthderiv::Method;

fn main() -> nthderiv::Result<()> {
    println!("raw d^3y/dx^3 terms:");
    for (product, coeff) in parametric_expr(3)?.terms() {
        println!("  {coeff:>3} {product:?}");
    }
    for n in 1..=7 {
        let start = Instant::now();
        let same = symbolic_parametric_oracle(n)? == parametric_formula(n, Method::Recurrence)?;
        println!("parametric n={n}: equal = {same} ({:?})", start.elapsed());
    }
    for n in 1..=6 {
        let start = Instant::now();
        let raw = implicit_expr(n)?.len();
        let same = symbolic_implicit_oracle(n)? == implicit_formula(n, Method::Recurrence)?;
        println!(
            "implicit n={n}: {raw} raw terms, equal = {same} ({:?})",
            start.elapsed()
        );
    }
    Ok(())
}

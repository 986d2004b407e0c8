//! Coefficient layers I(n,k) of dⁿy/dxⁿ for a curve F(x, y) = 0.
//!
//! cargo run --example implicit_derivatives -- 3

use nthderiv::algebra::{render, render_implicit_layer};
use nthderiv::implicit::implicit_formula;
use nthderiv::partitions::count_implicit_partitions;
use nthderiv::{Format, Method};

fn main() -> nthderiv::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let formula = implicit_formula(n, Method::Recurrence)?;
    for layer in formula.implicit_layers().unwrap_or_default() {
        let k = layer.k();
        println!(
            "I({n},{k}) = {}    [{} partitions, F_y^{}]",
            render_implicit_layer(layer),
            count_implicit_partitions(n, k),
            formula.prefactor_exponent(k)
        );
    }
    println!("\n{}", render(&formula, Format::Text));
    Ok(())
}

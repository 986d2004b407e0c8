//! Print dⁿy/dxⁿ for x = f(t), y = g(t) in every output format.
//!
//! cargo run --example parametric_derivatives -- 4

use nthderiv::algebra::render;
use nthderiv::parametric::parametric_formula;
use nthderiv::{Format, Method};

fn main() -> nthderiv::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let formula = parametric_formula(n, Method::Recurrence)?;
    println!("d^{n}y/dx^{n} has {} terms\n", formula.term_count());
    println!("text:\n{}\n", render(&formula, Format::Text));
    println!("latex:\n{}\n", render(&formula, Format::Latex));
    println!("json:\n{}", render(&formula, Format::Json));
    Ok(())
}

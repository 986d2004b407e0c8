//! Serializing formulas to JSON and reading them back.

use nthderiv::algebra::{from_json, to_json};
use nthderiv::implicit::implicit_formula;
use nthderiv::oracle::{eval_implicit, ImplicitTable};
use nthderiv::Method;

fn main() -> nthderiv::Result<()> {
    let formula = implicit_formula(2, Method::Recurrence)?;
    let json = to_json(&formula);
    println!("{json}");
    let back = from_json(&json)?;
    assert_eq!(back, formula);

    let table = ImplicitTable::from_jet(&nthderiv::oracle::BivariateJet::from_partials(
        (0.6, 0.8),
        2,
        |a, b| match (a, b) {
            (1, 0) => 1.2,
            (0, 1) => 1.6,
            (2, 0) | (0, 2) => 2.0,
            _ => 0.0,
        },
    )?);
    let direct = eval_implicit(&formula, &table)?;
    let reparsed = eval_implicit(&back, &table)?;
    println!(
        "direct {direct}, reparsed {reparsed}, identical bits: {}",
        direct.to_bits() == reparsed.to_bits()
    );

    // an F_xxy factor cannot appear in the first layer
    let tampered = json.replacen("[[2,0]]", "[[2,1]]", 1);
    match from_json(&tampered) {
        Ok(_) => println!("tampered json accepted"),
        Err(e) => println!("tampered json rejected: {e}"),
    }
    Ok(())
}

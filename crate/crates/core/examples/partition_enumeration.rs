//! The restricted set partitions behind each coefficient, and how the
//! monomials collect them.
//!
//! cargo run --example partition_enumeration -- 4 2

use nthderiv::algebra::{render_parametric_layer, ParametricMonomial};
use nthderiv::parametric::p_enum;
use nthderiv::partitions::{count_parametric_partitions, enumerate_parametric_partitions};

fn main() -> nthderiv::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<i64>().ok());
    let n = args.next().flatten().unwrap_or(4) as u32;
    let k = args.next().flatten().unwrap_or(2);
    let parts = enumerate_parametric_partitions(n, k);
    println!(
        "partitions of {{1..{}}} into {} blocks, only {{1}} may be a singleton:",
        i64::from(n) + k,
        k + 1
    );
    for p in &parts {
        let m = ParametricMonomial::from_partition(p)?;
        println!(
            "  {p:<28} rgs {:?}  -> g order {}, f orders {:?}",
            p.restricted_growth_string(),
            m.g_order,
            m.f_orders
        );
    }
    println!("count (enumerated) = {}", parts.len());
    println!("count (counted)    = {}", count_parametric_partitions(n, k));
    println!("P({n},{k}) = {}", render_parametric_layer(&p_enum(n, k)));
    Ok(())
}

//! Tables of partition counts, coefficient sums and closed forms.

use nthderiv::implicit::ImplicitRecurrence;
use nthderiv::parametric::{closed_form_check, ParametricRecurrence};
use nthderiv::partitions::{count_implicit_partitions, count_parametric_partitions};

fn main() -> nthderiv::Result<()> {
    let mut rec = ParametricRecurrence::new();
    println!("parametric partition counts (row n, column k):");
    for n in 1..=10u32 {
        let row: Vec<String> = (0..i64::from(n))
            .map(|k| {
                let count = count_parametric_partitions(n, k);
                assert_eq!(rec.layer(n, k).coefficient_sum(), count.clone().into());
                count.to_string()
            })
            .collect();
        println!("  n={n:>2}: {}", row.join(" "));
    }
    let mut rec = ImplicitRecurrence::new();
    println!("implicit partition counts:");
    for n in 1..=6u32 {
        let row: Vec<String> = (1..=2 * i64::from(n) - 1)
            .map(|k| {
                let count = count_implicit_partitions(n, k);
                assert_eq!(rec.layer(n, k).coefficient_sum(), count.clone().into());
                count.to_string()
            })
            .collect();
        println!("  n={n}: {}", row.join(" "));
    }
    for n in [2, 5, 10, 20] {
        println!("closed forms at n={n}: {:?}", closed_form_check(n)?);
    }
    Ok(())
}

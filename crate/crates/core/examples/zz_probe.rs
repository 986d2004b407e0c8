use nthderiv::oracle::*;
use nthderiv::verify::*;
use nthderiv::{implicit, parametric, Method};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
fn main() {
    let t = Instant::now();
    let r = run(&VerifyConfig::default()).unwrap();
    for s in &r.suites {
        println!("{s}");
    }
    println!("{:?}", t.elapsed());
    for seed in [DEFAULT_SEED, 1, 2, 3, 4, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for case in 0..1000u32 {
            let n = case % 8 + 1;
            let tb = random_parametric_table(&mut rng, n);
            let a = eval_parametric(&parametric::parametric_formula(n, Method::Recurrence).unwrap(), &tb).unwrap();
            let (f, g) = tb.jets();
            let b = series_reversion_oracle(&f, &g, n as usize).unwrap()[n as usize - 1];
            worst = worst.max((a - b).abs() / a.abs().max(b.abs()));
        }
        let mut worst_i: f64 = 0.0;
        for case in 0..1000u32 {
            let n = case % 6 + 1;
            let tb = random_implicit_table(&mut rng, n);
            let a = eval_implicit(&implicit::implicit_formula(n, Method::Recurrence).unwrap(), &tb).unwrap();
            let b = implicit_series_oracle(&tb.jet(n as usize).unwrap(), n as usize).unwrap()[n as usize - 1];
            worst_i = worst_i.max((a - b).abs() / a.abs().max(b.abs()));
        }
        println!("seed {seed}: worst parametric {worst:e} implicit {worst_i:e}");
    }
}

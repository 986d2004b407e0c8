//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness; exits nonzero when any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nthderiv::algebra::{ImplicitMonomial, ParametricMonomial, Partial};
use nthderiv::implicit::{self, i_enum, implicit_formula, inverse_via_implicit, ImplicitRecurrence};
use nthderiv::oracle::{
    eval_implicit, eval_parametric, implicit_series_oracle, series_reversion_oracle, symbolic_implicit_oracle,
    symbolic_parametric_oracle, ImplicitTable, ParametricTable,
};
use nthderiv::parametric::{self, inverse_formula, p_enum, parametric_formula, ParametricRecurrence};
use nthderiv::partitions::{count_implicit_partitions, count_parametric_partitions};
use nthderiv::verify::{random_implicit_table, random_parametric_table, relatively_close, DEFAULT_SEED};
use nthderiv::{DerivativeFormula, FormulaLayer, Method};

const NUMERIC_TOLERANCE: f64 = 1e-9;
const NUMERIC_CASES: usize = 100;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(signed coefficient, g order, f orders, power of f')` for every term.
type Term = (i64, u32, Vec<u32>, i64);

fn expanded(formula: &DerivativeFormula) -> BTreeMap<(u32, Vec<u32>, i64), BigInt> {
    let mut out = BTreeMap::new();
    for layer in formula.parametric_layers().unwrap() {
        let k = layer.k();
        for m in layer.monomials() {
            let mut f = m.f_orders.clone();
            f.sort_unstable();
            let c = &m.coeff * BigInt::from(formula.sign(k));
            out.insert((m.g_order, f, formula.prefactor_exponent(k)), c);
        }
    }
    out
}

fn displayed(terms: &[Term]) -> BTreeMap<(u32, Vec<u32>, i64), BigInt> {
    terms
        .iter()
        .map(|(c, g, f, e)| {
            let mut f = f.clone();
            f.sort_unstable();
            ((*g, f, *e), BigInt::from(*c))
        })
        .collect()
}

fn golden_formulas() -> Outcome {
    let displays: [(u32, Vec<Term>); 3] = [
        (2, vec![(1, 2, vec![], -2), (-1, 1, vec![2], -3)]),
        (
            3,
            vec![
                (1, 3, vec![], -3),
                (-3, 2, vec![2], -4),
                (-1, 1, vec![3], -4),
                (3, 1, vec![2, 2], -5),
            ],
        ),
        (
            4,
            vec![
                (1, 4, vec![], -4),
                (-6, 3, vec![2], -5),
                (15, 2, vec![2, 2], -6),
                (-4, 2, vec![3], -5),
                (10, 1, vec![2, 3], -6),
                (-1, 1, vec![4], -5),
                (-15, 1, vec![2, 2, 2], -7),
            ],
        ),
    ];
    for (n, terms) in &displays {
        let formula = parametric_formula(*n, Method::Recurrence).map_err(|e| e.to_string())?;
        ensure(expanded(&formula) == displayed(terms), || {
            format!("n={n}: terms differ")
        })?;
        ensure(formula.term_count() == terms.len(), || format!("n={n}: term count"))?;
    }
    let coeffs: Vec<i64> = expanded(&parametric_formula(3, Method::Recurrence).unwrap())
        .values()
        .map(|c| i64::try_from(c).unwrap())
        .collect();
    let mut sorted = coeffs.clone();
    sorted.sort_unstable();
    ensure(sorted == [-3, -1, 1, 3], || format!("n=3 coefficients {coeffs:?}"))?;
    Ok("d2 (2 terms), d3 (4 terms), d4 (7 terms)".into())
}

fn pl(k: i64, terms: &[(i64, u32, &[u32])]) -> FormulaLayer<ParametricMonomial> {
    FormulaLayer::new(
        k,
        terms.iter().map(|&(c, g, f)| ParametricMonomial::new(c, g, f.to_vec())),
    )
}

fn il(k: i64, terms: &[(i64, &[(u32, u32)])]) -> FormulaLayer<ImplicitMonomial> {
    FormulaLayer::new(
        k,
        terms
            .iter()
            .map(|&(c, f)| ImplicitMonomial::new(c, f.iter().map(|&(a, b)| Partial::new(a, b)).collect())),
    )
}

fn coefficient_tables() -> Outcome {
    let p4 = [
        pl(0, &[(1, 4, &[])]),
        pl(1, &[(1, 1, &[4]), (4, 2, &[3]), (6, 3, &[2])]),
        pl(2, &[(10, 1, &[2, 3]), (15, 2, &[2, 2])]),
        pl(3, &[(15, 1, &[2, 2, 2])]),
    ];
    let mut rec = ParametricRecurrence::new();
    for expected in &p4 {
        let k = expected.k();
        ensure(rec.layer(4, k) == *expected, || format!("P(4,{k})"))?;
    }
    let (x, xx, xxx, xy, xxy, yy, xyy, yyy) = ((1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (0, 2), (1, 2), (0, 3));
    let i2 = [
        il(1, &[(1, &[xx])]),
        il(2, &[(2, &[x, xy])]),
        il(3, &[(1, &[x, x, yy])]),
    ];
    let i3 = [
        il(1, &[(1, &[xxx])]),
        il(2, &[(3, &[xx, xy]), (3, &[x, xxy])]),
        il(3, &[(3, &[x, x, xyy]), (3, &[x, xx, yy]), (6, &[x, xy, xy])]),
        il(4, &[(1, &[x, x, x, yyy]), (9, &[x, x, xy, yy])]),
        il(5, &[(3, &[x, x, x, yy, yy])]),
    ];
    let mut rec = ImplicitRecurrence::new();
    for (n, layers) in [(2, &i2[..]), (3, &i3[..])] {
        for expected in layers {
            let k = expected.k();
            ensure(rec.layer(n, k) == *expected, || format!("I({n},{k})"))?;
        }
        ensure(rec.layers(n).len() == layers.len(), || format!("I({n},*) layer count"))?;
    }
    Ok("P(4,0..3), I(2,1..3), I(3,1..5)".into())
}

fn enumeration_agreement() -> Outcome {
    let mut rec = ParametricRecurrence::new();
    let mut cells = 0;
    for n in 1..=6u32 {
        for k in 0..i64::from(n) {
            ensure(p_enum(n, k) == rec.layer(n, k), || format!("P({n},{k})"))?;
            cells += 1;
        }
    }
    let mut rec = ImplicitRecurrence::new();
    for n in 1..=5u32 {
        for k in 1..=2 * i64::from(n) - 1 {
            ensure(i_enum(n, k) == rec.layer(n, k), || format!("I({n},{k})"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} layers equal"))
}

fn counting_cross_check() -> Outcome {
    let mut rec = ParametricRecurrence::new();
    let mut cells = 0;
    for n in 1..=10u32 {
        for k in 0..i64::from(n) {
            let count = BigInt::from(count_parametric_partitions(n, k));
            ensure(rec.layer(n, k).coefficient_sum() == count, || format!("P({n},{k})"))?;
            cells += 1;
        }
    }
    let mut rec = ImplicitRecurrence::new();
    for n in 1..=8u32 {
        for k in 1..=2 * i64::from(n) - 1 {
            let count = BigInt::from(count_implicit_partitions(n, k));
            ensure(rec.layer(n, k).coefficient_sum() == count, || format!("I({n},{k})"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} layers summed"))
}

fn closed_form_extremes() -> Outcome {
    let mut rec = ParametricRecurrence::new();
    for n in 2..=10u32 {
        let n_ = i64::from(n);
        ensure(rec.layer(n, n_ - 1) == parametric::closed_form_top(n), || {
            format!("P({n},{})", n_ - 1)
        })?;
        ensure(rec.layer(n, n_ - 2) == parametric::closed_form_second(n), || {
            format!("P({n},{})", n_ - 2)
        })?;
    }
    let mut rec = ImplicitRecurrence::new();
    for n in 1..=8u32 {
        let top = 2 * i64::from(n) - 1;
        let first = rec.layer(n, 1);
        ensure(
            first.monomials().len() == 1 && first.monomials()[0].factors == [Partial::new(n, 0)],
            || format!("I({n},1)"),
        )?;
        let last = implicit::closed_form_last(n);
        let against = if n <= 5 { i_enum(n, top) } else { rec.layer(n, top) };
        ensure(against == last, || format!("I({n},{top})"))?;
    }
    Ok("P(n,n-1), P(n,n-2) for n<=10; I(n,1), I(n,2n-1) for n<=8".into())
}

fn oracle_equivalence() -> Outcome {
    for n in 1..=6u32 {
        let oracle = symbolic_parametric_oracle(n).map_err(|e| e.to_string())?;
        ensure(oracle == parametric_formula(n, Method::Recurrence).unwrap(), || {
            format!("parametric n={n}")
        })?;
    }
    for n in 1..=5u32 {
        let oracle = symbolic_implicit_oracle(n).map_err(|e| e.to_string())?;
        ensure(oracle == implicit_formula(n, Method::Recurrence).unwrap(), || {
            format!("implicit n={n}")
        })?;
    }
    Ok("parametric n<=6, implicit n<=5".into())
}

fn close(what: &str, found: f64, expected: f64) -> Result<(), String> {
    ensure(relatively_close(found, expected, NUMERIC_TOLERANCE), || {
        format!("{what}: {found:e} vs {expected:e}")
    })
}

fn numeric_agreement() -> Outcome {
    let err = |e: nthderiv::Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let parametric: Vec<_> = (1..=8)
        .map(|n| parametric_formula(n, Method::Recurrence).unwrap())
        .collect();
    let mut worst: f64 = 0.0;
    for case in 0..NUMERIC_CASES {
        let n = case % 8 + 1;
        let table = random_parametric_table(&mut rng, n as u32);
        let formula = eval_parametric(&parametric[n - 1], &table).map_err(err)?;
        let (f, g) = table.jets();
        let series = series_reversion_oracle(&f, &g, n).map_err(err)?[n - 1];
        close(&format!("parametric table {case}, n={n}"), formula, series)?;
        worst = worst.max((formula - series).abs() / formula.abs().max(series.abs()).max(f64::MIN_POSITIVE));
    }
    let implicit: Vec<_> = (1..=6)
        .map(|n| implicit_formula(n, Method::Recurrence).unwrap())
        .collect();
    for case in 0..NUMERIC_CASES {
        let n = case % 6 + 1;
        let table = random_implicit_table(&mut rng, n as u32);
        let formula = eval_implicit(&implicit[n - 1], &table).map_err(err)?;
        let series = implicit_series_oracle(&table.jet(n).map_err(err)?, n).map_err(err)?[n - 1];
        close(&format!("implicit table {case}, n={n}"), formula, series)?;
        worst = worst.max((formula - series).abs() / formula.abs().max(series.abs()).max(f64::MIN_POSITIVE));
    }

    let curve = ParametricTable {
        t0: 1.0,
        f: vec![2.0, 2.0, 0.0],
        g: vec![3.0, 6.0, 6.0],
    };
    close(
        "x^(3/2) second",
        eval_parametric(&parametric[1], &curve).map_err(err)?,
        0.75,
    )?;
    close(
        "x^(3/2) third",
        eval_parametric(&parametric[2], &curve).map_err(err)?,
        -0.375,
    )?;

    let exp = ParametricTable {
        t0: 0.0,
        f: vec![1.0; 8],
        g: vec![],
    };
    let mut factorial = 1.0;
    for n in 1..=8u32 {
        let expected = if n % 2 == 1 { factorial } else { -factorial };
        close(
            &format!("ln x, n={n}"),
            eval_parametric(&inverse_formula(n).unwrap(), &exp).map_err(err)?,
            expected,
        )?;
        factorial *= f64::from(n);
    }

    let circle = ImplicitTable {
        x0: 0.6,
        y0: 0.8,
        value: 0.0,
        partials: BTreeMap::from([
            ((1, 0), 1.2),
            ((0, 1), 1.6),
            ((2, 0), 2.0),
            ((1, 1), 0.0),
            ((0, 2), 2.0),
        ]),
    };
    close(
        "circle first",
        eval_implicit(&implicit[0], &circle).map_err(err)?,
        -0.75,
    )?;
    close(
        "circle second",
        eval_implicit(&implicit[1], &circle).map_err(err)?,
        -1.953125,
    )?;
    Ok(format!(
        "{} random tables, seed {DEFAULT_SEED}, worst relative error {worst:.1e}; fixtures ok",
        2 * NUMERIC_CASES
    ))
}

fn cross_problem_consistency() -> Outcome {
    for n in 1..=6u32 {
        let via_implicit = inverse_via_implicit(n).map_err(|e| e.to_string())?;
        ensure(via_implicit == inverse_formula(n).unwrap(), || format!("n={n}"))?;
    }
    Ok("inverse via implicit = inverse via parametric for n<=6".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "golden formulas",
            limit: Duration::from_secs(1),
            check: golden_formulas,
        },
        Criterion {
            id: 2,
            name: "coefficient tables",
            limit: Duration::from_secs(1),
            check: coefficient_tables,
        },
        Criterion {
            id: 3,
            name: "enumeration/recurrence agreement",
            limit: Duration::from_secs(120),
            check: enumeration_agreement,
        },
        Criterion {
            id: 4,
            name: "counting cross-check",
            limit: Duration::from_secs(30),
            check: counting_cross_check,
        },
        Criterion {
            id: 5,
            name: "closed-form extremes",
            limit: Duration::from_secs(60),
            check: closed_form_extremes,
        },
        Criterion {
            id: 6,
            name: "oracle equivalence",
            limit: Duration::from_secs(60),
            check: oracle_equivalence,
        },
        Criterion {
            id: 7,
            name: "numeric agreement",
            limit: Duration::from_secs(60),
            check: numeric_agreement,
        },
        Criterion {
            id: 8,
            name: "cross-problem consistency",
            limit: Duration::from_secs(60),
            check: cross_problem_consistency,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}, but took longer than {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {} ({:.3}s): {detail}", c.id, c.name, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {} ({:.3}s): {why}", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

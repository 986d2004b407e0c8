//! Cross-checks between every route to the same formulas.
//!
//! Each suite walks its cases in increasing `(n, k)` and stops at the first
//! counterexample, so a report names the smallest failing cell.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    render_implicit_layer, render_parametric_layer, FormulaLayer, ImplicitMonomial, ParametricMonomial, Term,
};
use crate::error::Result;
use crate::implicit::{self, i_enum, ImplicitRecurrence};
use crate::oracle::{
    eval_implicit, eval_parametric, implicit_series_oracle, series_reversion_oracle, symbolic_implicit_oracle,
    symbolic_parametric_oracle, ImplicitTable, ParametricTable,
};
use crate::parametric::{self, p_enum, ParametricRecurrence};
use crate::partitions::{count_implicit_partitions, count_parametric_partitions};

/// Seed of the pseudo-random tables when none is given.
pub const DEFAULT_SEED: u64 = 20240917;

/// Relative tolerance of the numeric suite.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

#[derive(Clone)]
pub struct VerifyConfig {
    pub max_n_parametric: u32,
    pub max_n_implicit: u32,
    /// Largest `n` for which partitions are enumerated.
    pub enum_cap: u32,
    pub seed: u64,
    /// Random tables per problem in the numeric suite.
    pub numeric_cases: usize,
    /// Recurrence under test; replaceable to check that corruption is caught.
    pub parametric_recurrence: ParametricRecurrence,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n_parametric: 8,
            max_n_implicit: 6,
            enum_cap: 7,
            seed: DEFAULT_SEED,
            numeric_cases: 100,
            parametric_recurrence: ParametricRecurrence::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub n: u32,
    pub k: Option<i64>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "n={}, k={}: {}", self.n, k, self.detail),
            None => write!(f, "n={}: {}", self.n, self.detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: ok ({} cases)", self.name, self.cases),
            Some(c) => write!(f, "{}: FAILED after {} cases at {}", self.name, self.cases, c),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Counterexample)> {
        self.suites.iter().find_map(|s| s.failure.as_ref().map(|c| (s.name, c)))
    }
}

/// Runs every suite.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut config = config.clone();
    Ok(VerifyReport {
        suites: vec![
            enum_vs_recur(&mut config),
            oracle_vs_theorem(&mut config)?,
            count_vs_coefficient_sum(&mut config),
            closed_form(&mut config),
            numeric_tolerance(&mut config)?,
        ],
    })
}

struct Suite {
    name: &'static str,
    cases: usize,
    failure: Option<Counterexample>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            failure: None,
        }
    }

    /// Records a case; returns false once a failure has been seen.
    fn check(&mut self, outcome: Option<Counterexample>) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.cases += 1;
        self.failure = outcome;
        self.failure.is_none()
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

/// The first monomial whose coefficient differs, rendered with `render`.
fn first_difference<M: Term + PartialEq>(
    expected: &FormulaLayer<M>,
    found: &FormulaLayer<M>,
    render: impl Fn(&FormulaLayer<M>) -> String,
) -> Option<String> {
    if expected == found {
        return None;
    }
    let coeff_of = |layer: &FormulaLayer<M>, s: &M::Support| {
        layer
            .monomials()
            .iter()
            .find(|m| m.support() == *s)
            .map(|m| m.coeff().clone())
            .unwrap_or_default()
    };
    let mut supports: Vec<M::Support> = expected
        .monomials()
        .iter()
        .chain(found.monomials())
        .map(Term::support)
        .collect();
    supports.sort();
    supports.dedup();
    for s in supports {
        let (a, b) = (coeff_of(expected, &s), coeff_of(found, &s));
        if a != b {
            let unit = FormulaLayer::new(expected.k(), [M::from_support(BigInt::from(1), s)]);
            return Some(format!(
                "monomial {}: expected coefficient {a}, found {b}",
                render(&unit)
            ));
        }
    }
    Some(format!(
        "layers differ: expected {}, found {}",
        render(expected),
        render(found)
    ))
}

fn parametric_mismatch(
    n: u32,
    expected: &FormulaLayer<ParametricMonomial>,
    found: &FormulaLayer<ParametricMonomial>,
) -> Option<Counterexample> {
    first_difference(expected, found, render_parametric_layer).map(|detail| Counterexample {
        n,
        k: Some(expected.k()),
        detail,
    })
}

fn implicit_mismatch(
    n: u32,
    expected: &FormulaLayer<ImplicitMonomial>,
    found: &FormulaLayer<ImplicitMonomial>,
) -> Option<Counterexample> {
    first_difference(expected, found, render_implicit_layer).map(|detail| Counterexample {
        n,
        k: Some(expected.k()),
        detail,
    })
}

fn enum_vs_recur(config: &mut VerifyConfig) -> SuiteReport {
    let mut suite = Suite::new("enum-vs-recur");
    'p: for n in 1..=config.max_n_parametric.min(config.enum_cap) {
        for k in 0..i64::from(n) {
            let found = config.parametric_recurrence.layer(n, k);
            if !suite.check(parametric_mismatch(n, &p_enum(n, k), &found)) {
                break 'p;
            }
        }
    }
    let mut rec = ImplicitRecurrence::new();
    'i: for n in 1..=config.max_n_implicit.min(config.enum_cap) {
        for k in 1..=2 * i64::from(n) - 1 {
            if !suite.check(implicit_mismatch(n, &i_enum(n, k), &rec.layer(n, k))) {
                break 'i;
            }
        }
    }
    suite.finish()
}

fn oracle_vs_theorem(config: &mut VerifyConfig) -> Result<SuiteReport> {
    let mut suite = Suite::new("oracle-vs-theorem");
    'p: for n in 1..=config.max_n_parametric {
        let oracle = symbolic_parametric_oracle(n)?;
        for expected in oracle.parametric_layers().unwrap_or_default() {
            let found = config.parametric_recurrence.layer(n, expected.k());
            if !suite.check(parametric_mismatch(n, expected, &found)) {
                break 'p;
            }
        }
    }
    let mut rec = ImplicitRecurrence::new();
    'i: for n in 1..=config.max_n_implicit {
        let oracle = symbolic_implicit_oracle(n)?;
        for expected in oracle.implicit_layers().unwrap_or_default() {
            if !suite.check(implicit_mismatch(n, expected, &rec.layer(n, expected.k()))) {
                break 'i;
            }
        }
    }
    Ok(suite.finish())
}

fn count_case(n: u32, k: i64, count: BigUint, sum: BigInt) -> Option<Counterexample> {
    (BigInt::from(count.clone()) != sum).then(|| Counterexample {
        n,
        k: Some(k),
        detail: format!("{count} partitions but coefficient sum {sum}"),
    })
}

fn count_vs_coefficient_sum(config: &mut VerifyConfig) -> SuiteReport {
    let mut suite = Suite::new("count-vs-coefficient-sum");
    'p: for n in 1..=config.max_n_parametric {
        for k in 0..i64::from(n) {
            let sum = config.parametric_recurrence.layer(n, k).coefficient_sum();
            if !suite.check(count_case(n, k, count_parametric_partitions(n, k), sum)) {
                break 'p;
            }
        }
    }
    let mut rec = ImplicitRecurrence::new();
    'i: for n in 1..=config.max_n_implicit {
        for k in 1..=2 * i64::from(n) - 1 {
            let sum = rec.layer(n, k).coefficient_sum();
            if !suite.check(count_case(n, k, count_implicit_partitions(n, k), sum)) {
                break 'i;
            }
        }
    }
    suite.finish()
}

fn closed_form(config: &mut VerifyConfig) -> SuiteReport {
    let mut suite = Suite::new("closed-form");
    'p: for n in 2..=config.max_n_parametric {
        let n_ = i64::from(n);
        for (expected, k) in [
            (parametric::closed_form_top(n), n_ - 1),
            (parametric::closed_form_second(n), n_ - 2),
        ] {
            let found = config.parametric_recurrence.layer(n, k);
            if !suite.check(parametric_mismatch(n, &expected, &found)) {
                break 'p;
            }
        }
    }
    let mut rec = ImplicitRecurrence::new();
    'i: for n in 1..=config.max_n_implicit {
        for expected in [implicit::closed_form_first(n), implicit::closed_form_last(n)] {
            if !suite.check(implicit_mismatch(n, &expected, &rec.layer(n, expected.k()))) {
                break 'i;
            }
        }
    }
    suite.finish()
}

/// `|a - b| <= tol · max(|a|, |b|)`.
pub fn relatively_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn uniform(rng: &mut ChaCha8Rng, bound: f64) -> f64 {
    rng.random_range(-bound..=bound)
}

fn away_from_zero(rng: &mut ChaCha8Rng) -> f64 {
    let magnitude = rng.random_range(0.5..=2.0);
    if rng.random_bool(0.5) {
        magnitude
    } else {
        -magnitude
    }
}

/// A table with `|f'| >= 0.5` and every derivative in `[-2, 2]`.
pub fn random_parametric_table(rng: &mut ChaCha8Rng, n: u32) -> ParametricTable {
    let mut f = vec![away_from_zero(rng)];
    f.extend((1..n).map(|_| uniform(rng, 2.0)));
    let g = (0..n).map(|_| uniform(rng, 2.0)).collect();
    ParametricTable {
        t0: uniform(rng, 1.0),
        f,
        g,
    }
}

/// A table on the curve (`F = 0`) with `|F_y| >= 0.5` and every partial of
/// order `1..=n` in `[-2, 2]`.
pub fn random_implicit_table(rng: &mut ChaCha8Rng, n: u32) -> ImplicitTable {
    let mut partials = std::collections::BTreeMap::new();
    for order in 1..=n {
        for a in 0..=order {
            let b = order - a;
            let v = if (a, b) == (0, 1) {
                away_from_zero(rng)
            } else {
                uniform(rng, 2.0)
            };
            partials.insert((a, b), v);
        }
    }
    ImplicitTable {
        x0: uniform(rng, 1.0),
        y0: uniform(rng, 1.0),
        value: 0.0,
        partials,
    }
}

fn numeric_case(n: u32, what: &str, formula: f64, series: f64) -> Option<Counterexample> {
    (!relatively_close(formula, series, NUMERIC_TOLERANCE)).then(|| Counterexample {
        n,
        k: None,
        detail: format!("{what}: formula gives {formula:e}, series gives {series:e}"),
    })
}

fn numeric_tolerance(config: &mut VerifyConfig) -> Result<SuiteReport> {
    let mut suite = Suite::new("numeric-tolerance");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let max_p = config.max_n_parametric.max(1);
    let mut formulas = Vec::new();
    for n in 1..=max_p {
        formulas.push(parametric::parametric_formula_from(
            &mut config.parametric_recurrence,
            n,
        )?);
    }
    for case in 0..config.numeric_cases {
        let n = case as u32 % max_p + 1;
        let table = random_parametric_table(&mut rng, n);
        let formula = eval_parametric(&formulas[n as usize - 1], &table)?;
        let (f, g) = table.jets();
        let series = series_reversion_oracle(&f, &g, n as usize)?[n as usize - 1];
        if !suite.check(numeric_case(n, &format!("parametric table {case}"), formula, series)) {
            return Ok(suite.finish());
        }
    }
    let max_i = config.max_n_implicit.max(1);
    let mut rec = ImplicitRecurrence::new();
    let mut formulas = Vec::new();
    for n in 1..=max_i {
        formulas.push(implicit::implicit_formula_from(&mut rec, n)?);
    }
    for case in 0..config.numeric_cases {
        let n = case as u32 % max_i + 1;
        let table = random_implicit_table(&mut rng, n);
        let formula = eval_implicit(&formulas[n as usize - 1], &table)?;
        let series = implicit_series_oracle(&table.jet(n as usize)?, n as usize)?[n as usize - 1];
        if !suite.check(numeric_case(n, &format!("implicit table {case}"), formula, series)) {
            break;
        }
    }
    Ok(suite.finish())
}

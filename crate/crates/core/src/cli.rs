//! The `nthderiv` command line: `formula`, `coeff`, `eval` and `verify`.
//!
//! Exit status: 0 on success, 1 when verification fails, 2 on usage or
//! parse errors, 3 when a numeric precondition fails at the evaluation
//! point (`f' = 0`, `F_y = 0`, or a point off the curve).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{from_json, render, render_implicit_layer, render_parametric_layer, Format};
use crate::error::Error;
use crate::implicit::{i_enum, implicit_formula, ImplicitRecurrence};
use crate::oracle::{evaluate, DerivativeTable};
use crate::parametric::{inverse_from_parametric, p_enum, parametric_formula, ParametricRecurrence};
use crate::partitions::{count_implicit_partitions, count_parametric_partitions};
use crate::verify::{self, VerifyConfig, DEFAULT_SEED};
use crate::{DerivativeFormula, FormulaKind, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nthderiv",
    version,
    about = "Closed-form nth derivatives of parametric, implicit and inverse functions"
)]
pub struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Largest n computed by enumerating partitions.
    #[arg(long, global = true, env = "NTHDERIV_ENUM_CAP", default_value_t = 7)]
    enum_cap: u32,
    /// Largest n computed by the parametric and inverse recurrence.
    #[arg(long, global = true, env = "NTHDERIV_RECUR_CAP", default_value_t = 30)]
    recur_cap: u32,
    /// Largest n computed by the implicit recurrence.
    #[arg(long, global = true, env = "NTHDERIV_IMPLICIT_RECUR_CAP", default_value_t = 16)]
    implicit_recur_cap: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the full formula for dⁿy/dxⁿ.
    Formula {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, short)]
        n: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = MethodArg::Recur)]
        method: MethodArg,
    },
    /// Print one coefficient layer and the number of partitions behind it.
    #[command(allow_negative_numbers = true)]
    Coeff {
        #[arg(value_enum)]
        kind: LayerKindArg,
        n: u32,
        k: i64,
        #[arg(long, value_enum, default_value_t = MethodArg::Recur)]
        method: MethodArg,
    },
    /// Evaluate dⁿy/dxⁿ at a point given by a derivative table.
    Eval(EvalArgs),
    /// Cross-check enumeration, recurrence, oracles and closed forms.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n_parametric: u32,
        #[arg(long, default_value_t = 6)]
        max_n_implicit: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random tables per problem in the numeric suite.
        #[arg(long, default_value_t = 100)]
        numeric_cases: usize,
    },
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum, required_unless_present = "formula")]
    kind: Option<KindArg>,
    #[arg(long, short, required_unless_present = "formula")]
    n: Option<u32>,
    /// Formula as printed by `formula --format json`.
    #[arg(long, conflicts_with_all = ["kind", "n"])]
    formula: Option<PathBuf>,
    /// Table file in key=value form.
    #[arg(long, conflicts_with_all = ["t0", "f", "g", "x0", "y0", "partial"])]
    table: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<String>,
    /// f', f'', … separated by commas.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// g', g'', … separated by commas.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<String>,
    /// A partial derivative such as `F_1_0=1.2`; repeatable.
    #[arg(long = "partial", allow_hyphen_values = true)]
    partial: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum KindArg {
    Parametric,
    Implicit,
    Inverse,
}

impl From<KindArg> for FormulaKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Parametric => FormulaKind::Parametric,
            KindArg::Implicit => FormulaKind::Implicit,
            KindArg::Inverse => FormulaKind::Inverse,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LayerKindArg {
    Parametric,
    Implicit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Enum,
    Recur,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Enum => Method::Enumeration,
            MethodArg::Recur => Method::Recurrence,
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, out, err, ParametricRecurrence::new())
}

/// Like [`run`], with the parametric recurrence used by `verify` supplied
/// by the caller.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, recurrence: ParametricRecurrence) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, out, recurrence) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numeric_precondition() {
                EXIT_NUMERIC
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, recurrence: ParametricRecurrence) -> Outcome {
    let caps = cli.caps;
    match cli.command {
        Command::Formula {
            kind,
            n,
            format,
            method,
        } => {
            let formula = build_formula(caps, kind.into(), n, method.into())?;
            writeln!(out, "{}", render(&formula, format.into()))?;
            Ok(EXIT_OK)
        }
        Command::Coeff { kind, n, k, method } => {
            let method = Method::from(method);
            let formula_kind = match kind {
                LayerKindArg::Parametric => FormulaKind::Parametric,
                LayerKindArg::Implicit => FormulaKind::Implicit,
            };
            check_cap(caps, formula_kind, n, method)?;
            let (layer, count) = match (kind, method) {
                (LayerKindArg::Parametric, Method::Enumeration) => (
                    render_parametric_layer(&p_enum(n, k)),
                    count_parametric_partitions(n, k),
                ),
                (LayerKindArg::Parametric, Method::Recurrence) => (
                    render_parametric_layer(&ParametricRecurrence::new().layer(n, k)),
                    count_parametric_partitions(n, k),
                ),
                (LayerKindArg::Implicit, Method::Enumeration) => {
                    (render_implicit_layer(&i_enum(n, k)), count_implicit_partitions(n, k))
                }
                (LayerKindArg::Implicit, Method::Recurrence) => (
                    render_implicit_layer(&ImplicitRecurrence::new().layer(n, k)),
                    count_implicit_partitions(n, k),
                ),
            };
            writeln!(out, "{layer}")?;
            writeln!(out, "count: {count}")?;
            Ok(EXIT_OK)
        }
        Command::Eval(args) => eval(caps, args, out),
        Command::Verify {
            max_n_parametric,
            max_n_implicit,
            seed,
            numeric_cases,
        } => {
            if max_n_parametric > caps.recur_cap || max_n_implicit > caps.implicit_recur_cap {
                return Err(Failure::Usage(format!(
                    "verification bounds exceed the recurrence caps ({} parametric, {} implicit)",
                    caps.recur_cap, caps.implicit_recur_cap
                )));
            }
            let config = VerifyConfig {
                max_n_parametric,
                max_n_implicit,
                enum_cap: caps.enum_cap,
                seed,
                numeric_cases,
                parametric_recurrence: recurrence,
            };
            let report = verify::run(&config)?;
            for suite in &report.suites {
                writeln!(out, "{suite}")?;
            }
            match report.first_failure() {
                None => {
                    writeln!(out, "all suites passed (seed {seed})")?;
                    Ok(EXIT_OK)
                }
                Some((name, c)) => {
                    writeln!(out, "first counterexample ({name}): {c}")?;
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
    }
}

fn check_cap(caps: Caps, kind: FormulaKind, n: u32, method: Method) -> std::result::Result<(), Failure> {
    if n == 0 {
        return Err(Error::ZeroOrder.into());
    }
    let (cap, name) = match (method, kind) {
        (Method::Enumeration, _) => (caps.enum_cap, "enum-cap"),
        (Method::Recurrence, FormulaKind::Implicit) => (caps.implicit_recur_cap, "implicit-recur-cap"),
        (Method::Recurrence, _) => (caps.recur_cap, "recur-cap"),
    };
    if n > cap {
        return Err(Failure::Usage(format!("n = {n} exceeds --{name} = {cap}")));
    }
    Ok(())
}

fn build_formula(
    caps: Caps,
    kind: FormulaKind,
    n: u32,
    method: Method,
) -> std::result::Result<DerivativeFormula, Failure> {
    check_cap(caps, kind, n, method)?;
    Ok(match kind {
        FormulaKind::Parametric => parametric_formula(n, method)?,
        FormulaKind::Inverse => inverse_from_parametric(&parametric_formula(n, method)?)?,
        FormulaKind::Implicit => implicit_formula(n, method)?,
    })
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn eval(caps: Caps, args: EvalArgs, out: &mut dyn Write) -> Outcome {
    let formula = match (&args.formula, args.kind, args.n) {
        (Some(path), _, _) => from_json(&read(path)?)?,
        (None, Some(kind), Some(n)) => build_formula(caps, kind.into(), n, Method::Recurrence)?,
        _ => return Err(Failure::Usage("eval needs --kind and --n, or --formula".into())),
    };
    let text = match &args.table {
        Some(path) => read(path)?,
        None => inline_table(&args),
    };
    let table: DerivativeTable = text.parse()?;
    let value = evaluate(&formula, &table)?;
    writeln!(out, "{}", format_significant(value, 15))?;
    Ok(EXIT_OK)
}

fn inline_table(args: &EvalArgs) -> String {
    let mut lines = Vec::new();
    for (key, value) in [
        ("t0", &args.t0),
        ("f", &args.f),
        ("g", &args.g),
        ("x0", &args.x0),
        ("y0", &args.y0),
    ] {
        if let Some(v) = value {
            lines.push(format!("{key}={v}"));
        }
    }
    lines.extend(args.partial.iter().cloned());
    lines.join("\n")
}

/// `%.{digits}g`: `digits` significant digits, trailing zeros removed,
/// scientific notation outside `1e-5 <= |v| < 10^digits`.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["nthderiv"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.75, 15), "0.75");
        assert_eq!(format_significant(-0.75, 15), "-0.75");
        assert_eq!(format_significant(5.0, 15), "5");
        assert_eq!(format_significant(-1.953125, 15), "-1.953125");
        assert_eq!(format_significant(1.0 / 3.0, 15), "0.333333333333333");
        assert_eq!(format_significant(1e20, 15), "1e+20");
        assert_eq!(format_significant(-2.5e-7, 15), "-2.5e-07");
        assert_eq!(format_significant(123456.0, 3), "1.23e+05");
        assert_eq!(format_significant(0.0001, 15), "0.0001");
        assert_eq!(format_significant(0.0, 15), "0");
    }

    #[test]
    fn formula_text() {
        let (code, out, _) = call(&["formula", "--kind", "implicit", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "- F_x * F_y^-1\n");
    }

    #[test]
    fn coeff_layers() {
        let (code, out, _) = call(&["coeff", "implicit", "3", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "F_x^3 F_yyy + 9 F_x^2 F_xy F_yy\ncount: 10\n");
        let (_, out, _) = call(&["coeff", "parametric", "5", "7"]);
        assert_eq!(out, "0\ncount: 0\n");
        let (_, out, _) = call(&["coeff", "parametric", "4", "-1"]);
        assert_eq!(out, "0\ncount: 0\n");
        let (_, enumerated, _) = call(&["coeff", "parametric", "4", "2", "--method", "enum"]);
        let (_, recurred, _) = call(&["coeff", "parametric", "4", "2"]);
        assert_eq!(enumerated, recurred);
    }

    #[test]
    fn eval_inline() {
        let (code, out, _) = call(&["eval", "--kind", "parametric", "--n", "2", "--f", "2,2", "--g", "3,6"]);
        assert_eq!((code, out.as_str()), (0, "0.75\n"));
        let (_, out, _) = call(&["eval", "--kind", "parametric", "--n", "1", "--f", "1", "--g", "5"]);
        assert_eq!(out, "5\n");
        let (_, out, _) = call(&[
            "eval",
            "--kind",
            "implicit",
            "--n",
            "1",
            "--x0",
            "0.6",
            "--y0",
            "0.8",
            "--partial",
            "F_1_0=1.2",
            "--partial",
            "F_0_1=1.6",
        ]);
        assert_eq!(out, "-0.75\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["formula", "--kind", "cubic", "--n", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["formula", "--kind", "parametric", "--n", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["formula", "--kind", "parametric", "--n", "31"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["formula", "--kind", "parametric", "--n", "8", "--method", "enum"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&[
                "--enum-cap",
                "8",
                "formula",
                "--kind",
                "parametric",
                "--n",
                "3",
                "--method",
                "enum"
            ])
            .0,
            0
        );
        assert_eq!(
            call(&["eval", "--kind", "parametric", "--n", "2", "--f", "oops"]).0,
            EXIT_USAGE
        );
        let (code, _, err) = call(&["eval", "--kind", "parametric", "--n", "2", "--f", "0,1", "--g", "1,1"]);
        assert_eq!(code, EXIT_NUMERIC);
        assert!(err.contains("f'(t0)"), "{err}");
        let (code, _, err) = call(&[
            "eval",
            "--kind",
            "implicit",
            "--n",
            "1",
            "--x0",
            "0",
            "--y0",
            "0",
            "--partial",
            "F_1_0=1",
            "--partial",
            "F_0_1=0",
        ]);
        assert_eq!(code, EXIT_NUMERIC);
        assert!(err.contains("F_y"), "{err}");
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        assert_eq!(call(&[]).0, EXIT_USAGE);
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = call(&["verify", "--max-n-parametric", "1", "--max-n-implicit", "1"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("all suites passed"));
        assert_eq!(call(&["verify", "--max-n-parametric", "40"]).0, EXIT_USAGE);
    }
}

//! Text, LaTeX and JSON renderings of derivative formulas.
//!
//! Derivative orders up to four are written with primes (`g''''`), higher
//! ones as `g^(5)`. Implicit partials are written `F_xxy` up to total order
//! four and `F_(a,b)` beyond.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::One;

use super::formula::{DerivativeFormula, FormulaKind, FormulaLayer, Layers};
use super::monomial::{ImplicitMonomial, ParametricMonomial, Partial};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(Error::Json(format!("unknown format {other:?}"))),
        }
    }
}

pub fn render(formula: &DerivativeFormula, format: Format) -> String {
    match format {
        Format::Text => render_terms(formula, Style::Text),
        Format::Latex => render_terms(formula, Style::Latex),
        Format::Json => super::json::to_json(formula),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Style {
    Text,
    Latex,
}

/// One signed product of factors, before sign placement.
struct Piece {
    negative: bool,
    body: String,
}

fn render_terms(formula: &DerivativeFormula, style: Style) -> String {
    let mut pieces = Vec::new();
    match formula.layers() {
        Layers::Parametric(layers) => {
            let with_g = formula.kind() != FormulaKind::Inverse;
            for layer in layers {
                let exp = formula.prefactor_exponent(layer.k());
                let layer_negative = formula.sign(layer.k()) < 0;
                for m in layer.monomials() {
                    pieces.push(Piece {
                        negative: layer_negative != (m.coeff.sign() == Sign::Minus),
                        body: parametric_body(m, with_g, exp, style),
                    });
                }
            }
        }
        Layers::Implicit(layers) => {
            for layer in layers {
                let exp = formula.prefactor_exponent(layer.k());
                let layer_negative = formula.sign(layer.k()) < 0;
                for m in layer.monomials() {
                    pieces.push(Piece {
                        negative: layer_negative != (m.coeff.sign() == Sign::Minus),
                        body: implicit_body(m, exp, style),
                    });
                }
            }
        }
    }
    join_signed(&pieces, style)
}

fn join_signed(pieces: &[Piece], style: Style) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, p) in pieces.iter().enumerate() {
        match (i, p.negative, style) {
            (0, false, _) => {}
            (0, true, Style::Text) => out.push_str("- "),
            (0, true, Style::Latex) => out.push('-'),
            (_, false, _) => out.push_str(" + "),
            (_, true, _) => out.push_str(" - "),
        }
        out.push_str(&p.body);
    }
    out
}

fn primed(symbol: char, order: u32, style: Style) -> String {
    match (order, style) {
        (0..=4, _) => format!("{symbol}{}", "'".repeat(order as usize)),
        (_, Style::Text) => format!("{symbol}^({order})"),
        (_, Style::Latex) => format!("{symbol}^{{({order})}}"),
    }
}

/// Groups equal consecutive items into `(item, multiplicity)` runs.
fn runs<T: PartialEq + Copy>(items: impl IntoIterator<Item = T>) -> Vec<(T, u32)> {
    let mut out: Vec<(T, u32)> = Vec::new();
    for item in items {
        match out.last_mut() {
            Some((last, count)) if *last == item => *count += 1,
            _ => out.push((item, 1)),
        }
    }
    out
}

fn coefficient_prefix(c: &BigInt, separator: &str) -> Option<String> {
    let magnitude = c.magnitude();
    if magnitude.is_one() {
        None
    } else {
        Some(format!("{magnitude}{separator}"))
    }
}

fn parametric_body(m: &ParametricMonomial, with_g: bool, exp: i64, style: Style) -> String {
    let mut factors = Vec::new();
    if with_g {
        factors.push(format!("{}(t)", primed('g', m.g_order, style)));
    }
    for (order, power) in runs(m.f_orders.iter().rev().copied()) {
        let f = format!("{}(t)", primed('f', order, style));
        factors.push(match (power, style) {
            (1, _) => f,
            (_, Style::Text) => format!("[{f}]^{power}"),
            (_, Style::Latex) => format!("\\left[{f}\\right]^{{{power}}}"),
        });
    }
    factors.push(match style {
        Style::Text => format!("[f'(t)]^{exp}"),
        Style::Latex => format!("\\left[f'(t)\\right]^{{{exp}}}"),
    });
    let mut body = String::new();
    match style {
        Style::Text => {
            if let Some(c) = coefficient_prefix(&m.coeff, "*") {
                body.push_str(&c);
            }
            body.push_str(&factors.join("*"));
        }
        Style::Latex => {
            if let Some(c) = coefficient_prefix(&m.coeff, "") {
                body.push_str(&c);
            }
            body.push_str(&factors.concat());
        }
    }
    body
}

/// Factors in reading order: lower total order first, then higher x order.
fn display_order(factors: &[Partial]) -> Vec<Partial> {
    let mut out = factors.to_vec();
    out.sort_by_key(|p| (p.order(), std::cmp::Reverse(p.x)));
    out
}

fn partial_name(p: Partial, style: Style) -> String {
    if p.order() <= 4 {
        let letters = format!("{}{}", "x".repeat(p.x as usize), "y".repeat(p.y as usize));
        return match style {
            Style::Text => format!("F_{letters}"),
            Style::Latex => format!("F_{{{letters}}}"),
        };
    }
    match style {
        Style::Text => format!("F_({},{})", p.x, p.y),
        Style::Latex => {
            let var = |v: &str, e: u32| match e {
                0 => String::new(),
                1 => format!("\\partial {v}"),
                _ => format!("\\partial {v}^{{{e}}}"),
            };
            format!(
                "\\frac{{\\partial^{{{}}}F}}{{{}{}}}",
                p.order(),
                var("x", p.x),
                var("y", p.y)
            )
        }
    }
}

fn implicit_body(m: &ImplicitMonomial, exp: i64, style: Style) -> String {
    let mut factors = Vec::new();
    for (p, power) in runs(display_order(&m.factors)) {
        let name = partial_name(p, style);
        factors.push(match (power, style) {
            (1, _) => name,
            (_, Style::Text) => format!("{name}^{power}"),
            (_, Style::Latex) if p.order() > 4 => format!("\\left({name}\\right)^{{{power}}}"),
            (_, Style::Latex) => format!("{name}^{{{power}}}"),
        });
    }
    match style {
        Style::Text => {
            factors.push(format!("F_y^{exp}"));
            let mut body = coefficient_prefix(&m.coeff, " * ").unwrap_or_default();
            body.push_str(&factors.join(" * "));
            body
        }
        Style::Latex => {
            factors.push(format!("F_{{y}}^{{{exp}}}"));
            let mut body = coefficient_prefix(&m.coeff, "").unwrap_or_default();
            body.push_str(&factors.concat());
            body
        }
    }
}

/// Compact rendering of a parametric coefficient layer, e.g.
/// `15 g''(f'')^2 + 10 g'f''f'''`. The empty layer renders as `0`.
pub fn render_parametric_layer(layer: &FormulaLayer<ParametricMonomial>) -> String {
    let terms: Vec<String> = layer
        .monomials()
        .iter()
        .map(|m| {
            let mut s = String::new();
            let _ = write!(s, "{}", coefficient_prefix(&m.coeff, " ").unwrap_or_default());
            s.push_str(&primed('g', m.g_order, Style::Text));
            for (order, power) in runs(m.f_orders.iter().rev().copied()) {
                let f = primed('f', order, Style::Text);
                if power == 1 {
                    s.push_str(&f);
                } else {
                    let _ = write!(s, "({f})^{power}");
                }
            }
            s
        })
        .collect();
    join_layer_terms(layer.monomials().iter().map(|m| &m.coeff), terms)
}

/// Compact rendering of an implicit coefficient layer, e.g.
/// `F_x^3 F_yyy + 9 F_x^2 F_xy F_yy`. The empty layer renders as `0`.
pub fn render_implicit_layer(layer: &FormulaLayer<ImplicitMonomial>) -> String {
    let terms: Vec<String> = layer
        .monomials()
        .iter()
        .map(|m| {
            let mut parts = Vec::new();
            if let Some(c) = coefficient_prefix(&m.coeff, "") {
                parts.push(c);
            }
            for (p, power) in runs(display_order(&m.factors)) {
                let name = partial_name(p, Style::Text);
                parts.push(if power == 1 { name } else { format!("{name}^{power}") });
            }
            parts.join(" ")
        })
        .collect();
    join_layer_terms(layer.monomials().iter().map(|m| &m.coeff), terms)
}

fn join_layer_terms<'a>(coeffs: impl Iterator<Item = &'a BigInt>, terms: Vec<String>) -> String {
    let pieces: Vec<Piece> = coeffs
        .zip(terms)
        .map(|(c, body)| Piece {
            negative: c.sign() == Sign::Minus,
            body,
        })
        .collect();
    join_signed(&pieces, Style::Text)
}

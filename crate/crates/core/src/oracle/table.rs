//! Point values of derivatives, and their key-value text format.
//!
//! ```text
//! # x = t^2, y = t^3 at t = 1
//! t0=1
//! f=2,2,0
//! g=3,6,6
//! ```
//!
//! ```text
//! # unit circle
//! x0=0.6
//! y0=0.8
//! F_0_0=0
//! F_1_0=1.2
//! F_0_1=1.6
//! ```
//!
//! `f` and `g` list `f', f'', …`. `F_a_b` is `∂^{a+b}F / ∂x^a ∂y^b`;
//! `F_0_0` may be omitted and then defaults to 0.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::jet::{BivariateJet, Jet};
use super::series::ON_CURVE_TOLERANCE;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ParametricTable {
    pub t0: f64,
    /// `f'(t0), f''(t0), …`
    pub f: Vec<f64>,
    /// `g'(t0), g''(t0), …`
    pub g: Vec<f64>,
}

impl ParametricTable {
    pub fn f_deriv(&self, order: u32) -> Result<f64> {
        nth(&self.f, order, 'f')
    }

    pub fn g_deriv(&self, order: u32) -> Result<f64> {
        nth(&self.g, order, 'g')
    }

    /// Jets of `f` and `g` around `t0`. Function values are not part of the
    /// table and are set to 0; they do not affect derivatives of `y(x)`.
    pub fn jets(&self) -> (Jet, Jet) {
        (
            Jet::from_derivatives(self.t0, 0.0, &self.f),
            Jet::from_derivatives(self.t0, 0.0, &self.g),
        )
    }
}

fn nth(values: &[f64], order: u32, name: char) -> Result<f64> {
    order
        .checked_sub(1)
        .and_then(|i| values.get(i as usize))
        .copied()
        .ok_or_else(|| Error::MissingOrder(format!("derivative {order} of {name}")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImplicitTable {
    pub x0: f64,
    pub y0: f64,
    /// `F(x0, y0)`.
    pub value: f64,
    /// `(a, b) ↦ ∂^{a+b}F / ∂x^a ∂y^b` for `a + b >= 1`.
    pub partials: BTreeMap<(u32, u32), f64>,
}

impl ImplicitTable {
    pub fn partial(&self, x: u32, y: u32) -> Result<f64> {
        if (x, y) == (0, 0) {
            return Ok(self.value);
        }
        self.partials
            .get(&(x, y))
            .copied()
            .ok_or_else(|| Error::MissingOrder(format!("partial F_{x}_{y}")))
    }

    pub fn check_on_curve(&self) -> Result<()> {
        if self.value.abs() > ON_CURVE_TOLERANCE {
            return Err(Error::NotOnCurve(self.value));
        }
        Ok(())
    }

    /// The bivariate jet of order `order`; missing partials count as 0.
    pub fn jet(&self, order: usize) -> Result<BivariateJet> {
        BivariateJet::from_partials((self.x0, self.y0), order, |a, b| {
            self.partial(a as u32, b as u32).unwrap_or(0.0)
        })
    }

    pub fn from_jet(jet: &BivariateJet) -> Self {
        let order = jet.order();
        let mut partials = BTreeMap::new();
        for a in 0..=order {
            for b in 0..=order - a {
                if a + b > 0 {
                    partials.insert((a as u32, b as u32), jet.partial(a, b));
                }
            }
        }
        let (x0, y0) = jet.base_point();
        ImplicitTable {
            x0,
            y0,
            value: jet.coeff(0, 0),
            partials,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivativeTable {
    Parametric(ParametricTable),
    Implicit(ImplicitTable),
}

fn parse_number(key: &str, text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Table(format!("{key}: {text:?} is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Table(format!("{key}: value must be finite")));
    }
    Ok(v)
}

fn parse_list(key: &str, text: &str) -> Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|v| parse_number(key, v)).collect()
}

impl FromStr for DerivativeTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Table(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim().to_string();
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::Table(format!("line {}: duplicate key {key}", lineno + 1)));
            }
        }
        let parametric = ["t0", "f", "g"].iter().any(|k| entries.contains_key(*k));
        let implicit = entries.keys().any(|k| k == "x0" || k == "y0" || k.starts_with("F_"));
        match (parametric, implicit) {
            (true, false) => {
                let mut t0 = 0.0;
                let mut f = None;
                let mut g = Vec::new();
                for (key, value) in &entries {
                    match key.as_str() {
                        "t0" => t0 = parse_number(key, value)?,
                        "f" => f = Some(parse_list(key, value)?),
                        "g" => g = parse_list(key, value)?,
                        other => return Err(Error::Table(format!("unknown key {other}"))),
                    }
                }
                let f = f.ok_or_else(|| Error::Table("parametric table needs f".into()))?;
                Ok(DerivativeTable::Parametric(ParametricTable { t0, f, g }))
            }
            (false, true) => {
                let mut x0 = None;
                let mut y0 = None;
                let mut value = 0.0;
                let mut partials = BTreeMap::new();
                for (key, text) in &entries {
                    match key.as_str() {
                        "x0" => x0 = Some(parse_number(key, text)?),
                        "y0" => y0 = Some(parse_number(key, text)?),
                        other => {
                            let (a, b) = parse_partial_key(other)?;
                            let v = parse_number(key, text)?;
                            if (a, b) == (0, 0) {
                                value = v;
                            } else {
                                partials.insert((a, b), v);
                            }
                        }
                    }
                }
                Ok(DerivativeTable::Implicit(ImplicitTable {
                    x0: x0.ok_or_else(|| Error::Table("implicit table needs x0".into()))?,
                    y0: y0.ok_or_else(|| Error::Table("implicit table needs y0".into()))?,
                    value,
                    partials,
                }))
            }
            (true, true) => Err(Error::Table("mixes parametric and implicit keys".into())),
            (false, false) => Err(Error::Table("empty table".into())),
        }
    }
}

fn parse_partial_key(key: &str) -> Result<(u32, u32)> {
    let bad = || Error::Table(format!("unknown key {key}"));
    let rest = key.strip_prefix("F_").ok_or_else(bad)?;
    let (a, b) = rest.split_once('_').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

impl fmt::Display for DerivativeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",");
        match self {
            DerivativeTable::Parametric(t) => {
                writeln!(f, "t0={:?}", t.t0)?;
                writeln!(f, "f={}", list(&t.f))?;
                writeln!(f, "g={}", list(&t.g))
            }
            DerivativeTable::Implicit(t) => {
                writeln!(f, "x0={:?}", t.x0)?;
                writeln!(f, "y0={:?}", t.y0)?;
                writeln!(f, "F_0_0={:?}", t.value)?;
                for ((a, b), v) in &t.partials {
                    writeln!(f, "F_{a}_{b}={v:?}")?;
                }
                Ok(())
            }
        }
    }
}

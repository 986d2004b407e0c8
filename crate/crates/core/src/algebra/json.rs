//! The JSON wire format.
//!
//! ```text
//! {"n": 3, "kind": "parametric", "layers": [
//!   {"k": 0, "sign": 1, "prefactor_exponent": -3,
//!    "monomials": [{"coeff": "1", "g_order": 3, "f_orders": []}]}, ...]}
//! ```
//!
//! Implicit monomials carry `"factors": [[a, b], ...]` instead of
//! `g_order`/`f_orders`. Coefficients are decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::formula::{DerivativeFormula, FormulaKind, FormulaLayer, Layers};
use super::monomial::{ImplicitMonomial, ParametricMonomial, Partial};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaDoc {
    n: u32,
    kind: String,
    layers: Vec<LayerDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerDoc {
    k: i64,
    sign: i32,
    prefactor_exponent: i64,
    monomials: Vec<MonomialDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialDoc {
    coeff: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_orders: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<[u32; 2]>>,
}

pub fn to_json(formula: &DerivativeFormula) -> String {
    let layer = |k: i64, monomials: Vec<MonomialDoc>| LayerDoc {
        k,
        sign: formula.sign(k),
        prefactor_exponent: formula.prefactor_exponent(k),
        monomials,
    };
    let layers = match formula.layers() {
        Layers::Parametric(ls) => ls
            .iter()
            .map(|l| {
                let ms = l
                    .monomials()
                    .iter()
                    .map(|m| MonomialDoc {
                        coeff: m.coeff.to_string(),
                        g_order: Some(m.g_order),
                        f_orders: Some(m.f_orders.clone()),
                        factors: None,
                    })
                    .collect();
                layer(l.k(), ms)
            })
            .collect(),
        Layers::Implicit(ls) => ls
            .iter()
            .map(|l| {
                let ms = l
                    .monomials()
                    .iter()
                    .map(|m| MonomialDoc {
                        coeff: m.coeff.to_string(),
                        g_order: None,
                        f_orders: None,
                        factors: Some(m.factors.iter().map(|p| [p.x, p.y]).collect()),
                    })
                    .collect();
                layer(l.k(), ms)
            })
            .collect(),
    };
    let doc = FormulaDoc {
        n: formula.n(),
        kind: formula.kind().to_string(),
        layers,
    };
    serde_json::to_string(&doc).expect("formula documents always serialize")
}

/// Parses and validates a formula document. The document must be in
/// canonical form: normalized layers, consistent signs and exponents.
pub fn from_json(text: &str) -> Result<DerivativeFormula> {
    let doc: FormulaDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let kind: FormulaKind = doc.kind.parse()?;
    let coeff = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| Error::Json(format!("coefficient {s:?} is not a decimal integer")))
    };
    let formula = match kind {
        FormulaKind::Parametric | FormulaKind::Inverse => {
            let mut layers = Vec::with_capacity(doc.layers.len());
            for l in &doc.layers {
                let mut ms = Vec::with_capacity(l.monomials.len());
                for m in &l.monomials {
                    let (Some(g), Some(f), None) = (m.g_order, &m.f_orders, &m.factors) else {
                        return Err(Error::Json("parametric monomial needs g_order and f_orders".into()));
                    };
                    let parsed = ParametricMonomial::new(coeff(&m.coeff)?, g, f.clone());
                    if &parsed.f_orders != f {
                        return Err(Error::Json("f_orders must be descending".into()));
                    }
                    ms.push(parsed);
                }
                layers.push(canonical_layer(l.k, ms)?);
            }
            if kind == FormulaKind::Inverse {
                DerivativeFormula::inverse(doc.n, layers)?
            } else {
                DerivativeFormula::parametric(doc.n, layers)?
            }
        }
        FormulaKind::Implicit => {
            let mut layers = Vec::with_capacity(doc.layers.len());
            for l in &doc.layers {
                let mut ms = Vec::with_capacity(l.monomials.len());
                for m in &l.monomials {
                    let (None, None, Some(fs)) = (m.g_order, &m.f_orders, &m.factors) else {
                        return Err(Error::Json("implicit monomial needs factors only".into()));
                    };
                    let raw: Vec<Partial> = fs.iter().map(|&[a, b]| Partial::new(a, b)).collect();
                    let parsed = ImplicitMonomial::new(coeff(&m.coeff)?, raw.clone());
                    if parsed.factors != raw {
                        return Err(Error::Json("factors are not in canonical order".into()));
                    }
                    ms.push(parsed);
                }
                layers.push(canonical_layer(l.k, ms)?);
            }
            DerivativeFormula::implicit(doc.n, layers)?
        }
    };
    for l in &doc.layers {
        if l.sign != formula.sign(l.k) || l.prefactor_exponent != formula.prefactor_exponent(l.k) {
            return Err(Error::Json(format!(
                "layer k={} has sign {} and exponent {}, expected {} and {}",
                l.k,
                l.sign,
                l.prefactor_exponent,
                formula.sign(l.k),
                formula.prefactor_exponent(l.k)
            )));
        }
    }
    Ok(formula)
}

fn canonical_layer<M>(k: i64, ms: Vec<M>) -> Result<FormulaLayer<M>>
where
    M: super::monomial::Term + PartialEq,
{
    let layer = FormulaLayer::new(k, ms.clone());
    if layer.monomials() != ms.as_slice() {
        return Err(Error::Json(format!("layer k={k} is not in canonical form")));
    }
    Ok(layer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DerivativeFormula {
        DerivativeFormula::implicit(
            2,
            vec![
                FormulaLayer::new(1, [ImplicitMonomial::unit(vec![Partial::new(2, 0)])]),
                FormulaLayer::new(
                    2,
                    [ImplicitMonomial::new(2, vec![Partial::new(1, 0), Partial::new(1, 1)])],
                ),
                FormulaLayer::new(
                    3,
                    [ImplicitMonomial::unit(vec![
                        Partial::new(1, 0),
                        Partial::new(1, 0),
                        Partial::new(0, 2),
                    ])],
                ),
            ],
        )
        .unwrap()
    }

    #[test]
    fn implicit_document() {
        assert_eq!(
            to_json(&sample()),
            concat!(
                r#"{"n":2,"kind":"implicit","layers":["#,
                r#"{"k":1,"sign":-1,"prefactor_exponent":-1,"monomials":[{"coeff":"1","factors":[[2,0]]}]},"#,
                r#"{"k":2,"sign":1,"prefactor_exponent":-2,"monomials":[{"coeff":"2","factors":[[1,1],[1,0]]}]},"#,
                r#"{"k":3,"sign":-1,"prefactor_exponent":-3,"monomials":[{"coeff":"1","factors":[[0,2],[1,0],[1,0]]}]}]}"#
            )
        );
        assert_eq!(from_json(&to_json(&sample())).unwrap(), sample());
    }

    #[test]
    fn rejects_inconsistent_documents() {
        let text = to_json(&sample());
        assert!(from_json(&text.replace(r#""sign":1"#, r#""sign":-1"#)).is_err());
        assert!(from_json(&text.replace(r#""coeff":"2""#, r#""coeff":"two""#)).is_err());
        assert!(from_json(&text.replace("implicit", "parametric")).is_err());
        assert!(from_json(&text.replace("[[1,1],[1,0]]", "[[1,0],[1,1]]")).is_err());
        assert!(from_json("{").is_err());
    }
}

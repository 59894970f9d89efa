//! JSON wire format for series.
//!
//! Shape: `{ "q_unit": "1/4", "order": N, "terms": [ { "q": k, "u": [a1,…,an],
//! "coeff": "p/q" } ] }`. Exponents and coefficients are exact decimal-free
//! strings or integers; term order is deterministic (ascending q, then u).

use serde_json::{json, Value};

use super::{LaurentPoly, QSeries};
use crate::rat::{rat_to_string, Rat};

/// Unit of the stored q-exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QUnit {
    Quarter,
    Integer,
}

impl QUnit {
    fn label(self) -> &'static str {
        match self {
            QUnit::Quarter => "1/4",
            QUnit::Integer => "1",
        }
    }
}

/// Serializes a rational-coefficient series (no u variables).
pub fn scalar_series_to_json(s: &QSeries<Rat>, unit: QUnit) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(k, c)| {
            json!({
                "q": k,
                "u": Vec::<i64>::new(),
                "coeff": rat_to_string(c),
            })
        })
        .collect();
    json!({
        "q_unit": unit.label(),
        "order": s.order(),
        "terms": terms,
    })
}

/// Serializes a Laurent-coefficient series; exponent vectors are padded to
/// `nvars` entries.
pub fn laurent_series_to_json(s: &QSeries<LaurentPoly>, nvars: usize, unit: QUnit) -> Value {
    let mut terms = Vec::new();
    for (k, poly) in s.terms() {
        for (exps, c) in poly.terms() {
            let mut u = exps.clone();
            u.resize(nvars, 0);
            terms.push(json!({
                "q": k,
                "u": u,
                "coeff": rat_to_string(c),
            }));
        }
    }
    json!({
        "q_unit": unit.label(),
        "order": s.order(),
        "terms": terms,
    })
}

/// Parses the scalar wire format back (used by round-trip tests and tooling).
pub fn scalar_series_from_json(v: &Value) -> Option<(QSeries<Rat>, QUnit)> {
    let unit = match v.get("q_unit")?.as_str()? {
        "1/4" => QUnit::Quarter,
        "1" => QUnit::Integer,
        _ => return None,
    };
    let order = v.get("order")?.as_i64()?;
    let mut s = QSeries::zero(order);
    for term in v.get("terms")?.as_array()? {
        let k = term.get("q")?.as_i64()?;
        let c = crate::rat::rat_from_str(term.get("coeff")?.as_str()?)?;
        if !num_traits::Zero::is_zero(&c) {
            s.add_term(k, c);
        }
    }
    Some((s, unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn scalar_round_trip() {
        let s = QSeries::from_terms([(0, rat_int(1)), (4, rat(-1, 24))], 40);
        let v = scalar_series_to_json(&s, QUnit::Quarter);
        let (back, unit) = scalar_series_from_json(&v).unwrap();
        assert_eq!(back, s);
        assert_eq!(unit, QUnit::Quarter);
        assert_eq!(v["q_unit"], "1/4");
        assert_eq!(v["terms"][1]["coeff"], "-1/24");
    }

    #[test]
    fn laurent_terms_are_padded() {
        let p = LaurentPoly::monomial(&[1], rat_int(2));
        let s = QSeries::monomial(4, p, 8);
        let v = laurent_series_to_json(&s, 2, QUnit::Quarter);
        assert_eq!(v["terms"][0]["u"], serde_json::json!([1, 0]));
    }
}

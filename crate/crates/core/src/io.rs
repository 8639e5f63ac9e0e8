//! JSON encoding: rationals as strings, extension elements as nested
//! coefficient arrays (lowest power first), every document tagged `"schema": 1`.

use serde_json::{json, Map, Value};

use crate::blowup::{LabeledLines, SixPoints};
use crate::config::LineLabel;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement as Fe};
use crate::poly::MultiPoly;
use crate::projgeom::{ProjLine, ProjPlane, ProjPoint};

pub const SCHEMA: u64 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn fe_to_json(x: &Fe, field: &FieldDescriptor) -> Value {
    match field.base() {
        None => Value::String(x.to_string()),
        Some(base) => Value::Array(x.coeffs_in(field).iter().map(|c| fe_to_json(c, base)).collect()),
    }
}

pub fn fe_from_json(v: &Value, field: &FieldDescriptor) -> Result<Fe> {
    match (v, field.base()) {
        (Value::String(s), _) => Fe::parse_rational(s),
        (Value::Array(cs), Some(base)) => {
            if cs.len() > field.level_degree() {
                return Err(bad(format!("too many coefficients for level {}", field.name())));
            }
            let coeffs = cs.iter().map(|c| fe_from_json(c, base)).collect::<Result<Vec<_>>>()?;
            Ok(Fe::from_coeffs(field, coeffs))
        }
        _ => Err(bad(format!("expected a rational string or coefficient array, got {v}"))),
    }
}

/// `"Q"`, or `{"tower": [{"name": "i", "modulus": ["1", "0", "1"]}, …]}` with
/// monic moduli listed lowest power first in the previous level.
pub fn field_to_json(field: &FieldDescriptor) -> Value {
    if field.is_rationals() {
        return json!("Q");
    }
    let mut levels = Vec::new();
    let mut cur = FieldDescriptor::rationals();
    for (name, modulus) in field.tower() {
        levels.push(json!({
            "name": name,
            "modulus": modulus.iter().map(|c| fe_to_json(c, &cur)).collect::<Vec<_>>(),
        }));
        cur = cur.extend(modulus, &name).expect("tower levels are valid");
    }
    json!({ "tower": levels })
}

pub fn field_from_json(v: &Value) -> Result<FieldDescriptor> {
    if v.as_str() == Some("Q") {
        return Ok(FieldDescriptor::rationals());
    }
    let levels = v
        .get("tower")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("field must be \"Q\" or {\"tower\": [...]}"))?;
    let mut field = FieldDescriptor::rationals();
    for level in levels {
        let name = level.get("name").and_then(Value::as_str).ok_or_else(|| bad("tower level needs a name"))?;
        let modulus = level
            .get("modulus")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("tower level needs a modulus array"))?
            .iter()
            .map(|c| fe_from_json(c, &field))
            .collect::<Result<Vec<_>>>()?;
        field = field.extend(modulus, name).map_err(|e| bad(format!("bad modulus for {name}: {e}")))?;
    }
    Ok(field)
}

pub fn vec_to_json(v: &[Fe], field: &FieldDescriptor) -> Value {
    Value::Array(v.iter().map(|x| fe_to_json(x, field)).collect())
}

pub fn point_to_json(p: &ProjPoint, field: &FieldDescriptor) -> Value {
    vec_to_json(p.coords(), field)
}

pub fn plane_to_json(h: &ProjPlane, field: &FieldDescriptor) -> Value {
    vec_to_json(h.coeffs(), field)
}

pub fn line_to_json(l: &ProjLine, field: &FieldDescriptor) -> Value {
    let (p, q) = l.points();
    json!({
        "points": [point_to_json(p, field), point_to_json(q, field)],
        "plucker": vec_to_json(l.plucker(), field),
    })
}

/// `{"nvars": n, "terms": [[exponents, coefficient], …]}` in increasing monomial order.
pub fn poly_to_json(f: &MultiPoly, field: &FieldDescriptor) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(m, c)| json!([m.0[..f.nvars()].to_vec(), fe_to_json(c, field)]))
        .collect();
    json!({ "nvars": f.nvars(), "terms": terms })
}

pub fn lines_to_json(lines: &LabeledLines, field: &FieldDescriptor) -> Value {
    let mut out = Map::new();
    for (k, l) in lines.lines.iter().enumerate() {
        out.insert(LineLabel::from_index(k).to_string(), line_to_json(l, field));
    }
    Value::Object(out)
}

pub fn points_to_json(pts: &SixPoints) -> Value {
    let field = pts.field();
    json!({
        "schema": SCHEMA,
        "field": field_to_json(&field),
        "points": pts.points.iter().map(|p| point_to_json(p, &field)).collect::<Vec<_>>(),
    })
}

/// Parse a points document. Every failure is a schema error.
pub fn points_from_json(text: &str) -> Result<SixPoints> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    match v.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA) => {}
        other => return Err(bad(format!("unsupported schema {other:?}, expected {SCHEMA}"))),
    }
    let field = field_from_json(v.get("field").unwrap_or(&json!("Q")))?;
    let pts = v.get("points").and_then(Value::as_array).ok_or_else(|| bad("missing \"points\" array"))?;
    if pts.len() != 6 {
        return Err(bad(format!("expected 6 points, got {}", pts.len())));
    }
    let points = pts
        .iter()
        .map(|p| {
            let cs = p.as_array().filter(|c| c.len() == 3).ok_or_else(|| bad("each point needs 3 coordinates"))?;
            let coords = cs.iter().map(|c| fe_from_json(c, &field)).collect::<Result<Vec<_>>>()?;
            ProjPoint::new(coords).map_err(|_| bad("point with all coordinates zero"))
        })
        .collect::<Result<Vec<_>>>()?;
    SixPoints::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::{construct_species_fixture, gaussian, gaussian_field};

    #[test]
    fn rationals_are_strings() {
        let q = FieldDescriptor::rationals();
        assert_eq!(fe_to_json(&Fe::from_ratio(-3, 6), &q), json!("-1/2"));
        assert_eq!(fe_from_json(&json!("4/6"), &q).unwrap(), Fe::from_ratio(2, 3));
        assert!(fe_from_json(&json!(3), &q).is_err());
        assert!(fe_from_json(&json!("1/0"), &q).is_err());
    }

    #[test]
    fn extension_round_trip() {
        let k = gaussian_field();
        let x = gaussian(&k, 2, -5);
        let v = fe_to_json(&x, &k);
        assert_eq!(v, json!(["2", "-5"]));
        assert_eq!(fe_from_json(&v, &k).unwrap(), x);
        assert_eq!(field_from_json(&field_to_json(&k)).unwrap(), k);
    }

    #[test]
    fn points_round_trip() {
        for k in [1, 3] {
            let pts = construct_species_fixture(k).unwrap();
            let text = points_to_json(&pts).to_string();
            assert_eq!(points_from_json(&text).unwrap().points, pts.points);
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(points_from_json("{"), Err(Error::InvalidInput(_))));
        assert!(matches!(points_from_json(r#"{"schema": 2, "points": []}"#), Err(Error::InvalidInput(_))));
        assert!(matches!(points_from_json(r#"{"schema": 1, "points": [["1","0","0"]]}"#), Err(Error::InvalidInput(_))));
    }
}

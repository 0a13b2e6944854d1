//! JSON encodings of supports, polynomials, witnesses and results.
//!
//! Inputs are checked field by field so errors carry a JSONPath-like location
//! such as `$.terms[3].exp[1]`. Every document carries `schema_version`; on
//! input it may be omitted but must be 1 when present.

use serde_json::{json, Map, Value};

use crate::classifier::{Certificate, Classification, Verdict};
use crate::error::{Error, Result};
use crate::factorizer::Factorization;
use crate::field::{parse_field, Field, FieldElement};
use crate::oracle::ZStatus;
use crate::poly::Polynomial;
use crate::polytope::{Decomposition, LatticePolytope};
use crate::support::{Exponent, Support};
use crate::witness::{Case, CharacteristicWitness, FieldVerdict, Observation, WitnessReport};

pub const SCHEMA_VERSION: u64 = 1;

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::input(path, "expected an object"))
}

fn field_of<'a>(o: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    o.get(key)
        .ok_or_else(|| Error::input(path, format!("missing key \"{key}\"")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::input(path, "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::input(path, "expected a nonnegative integer"))
}

fn check_keys(o: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
    for k in o.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::input(format!("{path}.{k}"), "unknown key"));
        }
    }
    if let Some(v) = o.get("schema_version") {
        if v.as_u64() != Some(SCHEMA_VERSION) {
            return Err(Error::input(
                format!("{path}.schema_version"),
                format!("expected {SCHEMA_VERSION}"),
            ));
        }
    }
    Ok(())
}

fn exponent(v: &Value, path: &str, n: usize) -> Result<Exponent> {
    let a = array(v, path)?;
    if a.len() != n {
        return Err(Error::input(
            path,
            format!("expected {n} coordinates, found {}", a.len()),
        ));
    }
    let coords = a
        .iter()
        .enumerate()
        .map(|(t, x)| {
            let p = format!("{path}[{t}]");
            let c = uint(x, &p)?;
            u32::try_from(c).map_err(|_| Error::input(p, "exponent too large"))
        })
        .collect::<Result<Vec<_>>>()?;
    Exponent::new(coords)
}

fn dimension(o: &Map<String, Value>, path: &str) -> Result<usize> {
    let n = uint(field_of(o, path, "dim")?, &format!("{path}.dim"))?;
    if n == 0 || n > 64 {
        return Err(Error::input(
            format!("{path}.dim"),
            "dimension must be between 1 and 64",
        ));
    }
    Ok(n as usize)
}

fn points(v: &Value, path: &str, n: usize) -> Result<Vec<Exponent>> {
    let a = array(v, path)?;
    if a.is_empty() {
        return Err(Error::input(path, "support must be nonempty"));
    }
    a.iter()
        .enumerate()
        .map(|(k, p)| exponent(p, &format!("{path}[{k}]"), n))
        .collect()
}

/// `{"dim": n, "points": [[...], ...]}`; duplicate points are merged.
pub fn parse_support(v: &Value) -> Result<Support> {
    let o = object(v, "$")?;
    check_keys(o, "$", &["schema_version", "dim", "points"])?;
    let n = dimension(o, "$")?;
    Support::new(n, points(field_of(o, "$", "points")?, "$.points", n)?)
}

fn coefficient(v: &Value, path: &str, field: &Field) -> Result<FieldElement> {
    if let Some(i) = v.as_i64() {
        return Ok(field.from_int(i));
    }
    if v.is_array() {
        let a = array(v, path)?;
        let coords = a
            .iter()
            .enumerate()
            .map(|(t, x)| {
                let p = format!("{path}[{t}]");
                let c = uint(x, &p)?;
                if c >= field.characteristic() {
                    return Err(Error::input(
                        p,
                        format!("coordinate must be below {}", field.characteristic()),
                    ));
                }
                Ok(c as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        return field
            .from_coords(&coords)
            .map_err(|e| Error::input(path, e.to_string()));
    }
    Err(Error::input(
        path,
        "expected an integer or a coordinate array",
    ))
}

/// `{"field": "p^k", "dim": n, "terms": [{"exp": [...], "coeff": c}, ...]}`.
/// A coefficient is an integer (reduced mod p) or the coordinate vector of
/// the element in the field's power basis, lowest degree first.
pub fn parse_polynomial(v: &Value) -> Result<Polynomial> {
    let o = object(v, "$")?;
    check_keys(o, "$", &["schema_version", "field", "dim", "terms", "text"])?;
    let fv = field_of(o, "$", "field")?;
    let fs = fv
        .as_str()
        .ok_or_else(|| Error::input("$.field", "expected a string like \"3^2\""))?;
    let field = parse_field(fs).map_err(|e| Error::input("$.field", e.to_string()))?;
    let n = dimension(o, "$")?;
    let terms = array(field_of(o, "$", "terms")?, "$.terms")?;
    let mut out = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let p = format!("$.terms[{k}]");
        let to = object(t, &p)?;
        check_keys(to, &p, &["exp", "coeff"])?;
        let e = exponent(field_of(to, &p, "exp")?, &format!("{p}.exp"), n)?;
        let c = coefficient(field_of(to, &p, "coeff")?, &format!("{p}.coeff"), &field)?;
        out.push((e, c));
    }
    let poly = Polynomial::from_terms(&field, n, out)?;
    if poly.is_zero() {
        return Err(Error::input("$.terms", "polynomial is zero"));
    }
    Ok(poly)
}

pub fn parse_case(s: &str) -> Result<Case> {
    match s.to_ascii_lowercase().as_str() {
        "a" => Ok(Case::A),
        "b" => Ok(Case::B),
        _ => Err(Error::input("case", "expected \"a\" or \"b\"")),
    }
}

/// Witness document as written by [`witness_to_json`].
pub struct WitnessDoc {
    pub primes: Vec<u64>,
    pub case: Case,
    pub j: Support,
}

pub fn parse_witness(v: &Value) -> Result<WitnessDoc> {
    let o = object(v, "$")?;
    check_keys(
        o,
        "$",
        &["schema_version", "case", "primes", "dim", "points", "d"],
    )?;
    let cs = field_of(o, "$", "case")?
        .as_str()
        .ok_or_else(|| Error::input("$.case", "expected a string"))?;
    let case = parse_case(cs).map_err(|_| Error::input("$.case", "expected \"a\" or \"b\""))?;
    let primes = array(field_of(o, "$", "primes")?, "$.primes")?
        .iter()
        .enumerate()
        .map(|(k, p)| uint(p, &format!("$.primes[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let n = dimension(o, "$")?;
    let j = Support::new(n, points(field_of(o, "$", "points")?, "$.points", n)?)?;
    Ok(WitnessDoc { primes, case, j })
}

fn versioned(mut v: Value) -> Value {
    if let Some(o) = v.as_object_mut() {
        o.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn exps(it: impl IntoIterator<Item = Exponent>) -> Value {
    Value::Array(it.into_iter().map(|e| json!(e.coords())).collect())
}

pub fn support_json(s: &Support) -> Value {
    json!({"dim": s.dim(), "points": exps(s.iter().cloned())})
}

pub fn support_to_json(s: &Support) -> Value {
    versioned(support_json(s))
}

fn field_name(f: &Field) -> String {
    format!("{}^{}", f.characteristic(), f.degree())
}

fn coeff_json(f: &Field, c: FieldElement) -> Value {
    if f.degree() == 1 {
        json!(c.index())
    } else {
        json!(f.coords(c))
    }
}

pub fn polynomial_json(p: &Polynomial) -> Value {
    let f = p.field();
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({"exp": e.coords(), "coeff": coeff_json(f, c)}))
        .collect();
    json!({"field": field_name(f), "dim": p.dim(), "terms": terms, "text": p.to_string()})
}

pub fn polynomial_to_json(p: &Polynomial) -> Value {
    versioned(polynomial_json(p))
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::CondI { var } => json!({"condition": "i", "t": var + 1}),
        Certificate::CondII { i, j, d } => {
            json!({"condition": "ii", "i": i.coords(), "j": j.coords(), "d": d})
        }
        Certificate::CondIII { primes } => json!({"condition": "iii", "primes": primes}),
        Certificate::None => Value::Null,
    }
}

pub fn classification_to_json(c: &Classification) -> Value {
    let (verdict, primes) = match &c.verdict {
        Verdict::GoodAllFields => ("good_all_fields", None),
        Verdict::GoodExactlyInChars(p) => ("good_exactly_in_chars", Some(p.clone())),
        Verdict::NeverGood => ("never_good", None),
    };
    let mut v = json!({"verdict": verdict, "certificate": certificate_json(&c.certificate)});
    if let Some(p) = primes {
        v["primes"] = json!(p);
    }
    versioned(v)
}

pub fn factorization_json(f: &Factorization) -> Value {
    json!({
        "left": polynomial_json(&f.left),
        "right": polynomial_json(&f.right),
        "extension_degree": f.extension_degree,
    })
}

fn polytope_json(c: &LatticePolytope) -> Value {
    json!({"dim": c.dim(), "vertices": exps(c.vertices().iter().cloned())})
}

pub fn decomposition_json(c: &LatticePolytope, d: &Decomposition) -> Value {
    let lambda: Vec<Value> = d
        .lambda
        .iter()
        .map(
            |(v, w, l)| json!({"v": v.coords(), "w": w.coords(), "lambda": [l.numer(), l.denom()]}),
        )
        .collect();
    let phi: Vec<Value> = c
        .vertices()
        .iter()
        .map(|v| json!([v.coords(), d.phi[v].coords()]))
        .collect();
    json!({"left": polytope_json(&d.left), "right": polytope_json(&d.right), "lambda": lambda, "phi": phi})
}

pub fn decompositions_to_json(c: &LatticePolytope, ds: &[Decomposition]) -> Value {
    let items: Vec<Value> = ds.iter().map(|d| decomposition_json(c, d)).collect();
    versioned(json!({"polytope": polytope_json(c), "count": ds.len(), "decompositions": items}))
}

pub fn zstatus_json(z: &ZStatus) -> Value {
    match z {
        ZStatus::Empty => json!({"status": "empty"}),
        ZStatus::All => json!({"status": "all"}),
        ZStatus::Proper { reducible, total } => {
            json!({"status": "proper", "reducible": reducible, "total": total})
        }
    }
}

pub fn case_name(c: Case) -> &'static str {
    match c {
        Case::A => "a",
        Case::B => "b",
    }
}

pub fn witness_to_json(w: &CharacteristicWitness) -> Value {
    let mut v = json!({
        "case": case_name(w.case),
        "primes": w.primes,
        "dim": w.j.dim(),
        "points": exps(w.j.iter().cloned()),
    });
    if let Some(t) = &w.triple {
        v["d"] = json!(t.d);
    }
    versioned(v)
}

fn observation_json(o: &Observation) -> Value {
    match o {
        Observation::ZStatus(z) => json!({"kind": "z_status", "z_status": zstatus_json(z)}),
        Observation::BHolds => json!({"kind": "check_b", "b_holds": true}),
        Observation::BFails => json!({"kind": "check_b", "b_holds": false}),
        Observation::ReducibleMember { extension_degree } => {
            json!({"kind": "reducible_member", "extension_degree": extension_degree})
        }
        Observation::Inconclusive(msg) => json!({"kind": "inconclusive", "reason": msg}),
    }
}

fn verdict_json(e: &FieldVerdict) -> Value {
    json!({
        "field": field_name(&e.field),
        "expected": if e.expected_empty { "empty" } else { "nonempty" },
        "observed": observation_json(&e.observation),
        "result": match e.consistent { Some(true) => "ok", Some(false) => "mismatch", None => "inconclusive" },
    })
}

pub fn report_json(r: &WitnessReport) -> Value {
    json!({"consistent": r.all_consistent(), "fields": r.entries.iter().map(verdict_json).collect::<Vec<_>>()})
}

pub fn read_json_file(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(path, e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| Error::input(path, format!("malformed JSON: {e}")))
}

/// Input schemas (JSON Schema draft 2020-12).
pub mod schema {
    use serde_json::{json, Value};

    fn exponent() -> Value {
        json!({"type": "array", "items": {"type": "integer", "minimum": 0, "maximum": 4294967295u64}})
    }

    pub fn support() -> Value {
        json!({
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "title": "support",
            "type": "object",
            "required": ["dim", "points"],
            "additionalProperties": false,
            "properties": {
                "schema_version": {"const": 1},
                "dim": {"type": "integer", "minimum": 1, "maximum": 64},
                "points": {"type": "array", "minItems": 1, "items": exponent()}
            }
        })
    }

    pub fn polynomial() -> Value {
        json!({
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "title": "polynomial",
            "type": "object",
            "required": ["field", "dim", "terms"],
            "additionalProperties": false,
            "properties": {
                "schema_version": {"const": 1},
                "text": {"type": "string", "description": "informational, ignored"},
                "field": {"type": "string", "pattern": "^[0-9]+(\\^[0-9]+)?$"},
                "dim": {"type": "integer", "minimum": 1, "maximum": 64},
                "terms": {"type": "array", "items": {
                    "type": "object",
                    "required": ["exp", "coeff"],
                    "additionalProperties": false,
                    "properties": {
                        "exp": exponent(),
                        "coeff": {"oneOf": [
                            {"type": "integer"},
                            {"type": "array", "items": {"type": "integer", "minimum": 0}}
                        ]}
                    }
                }}
            }
        })
    }

    pub fn witness() -> Value {
        json!({
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "title": "characteristic witness",
            "type": "object",
            "required": ["case", "primes", "dim", "points"],
            "additionalProperties": false,
            "properties": {
                "schema_version": {"const": 1},
                "case": {"enum": ["a", "b"]},
                "primes": {"type": "array", "items": {"type": "integer", "minimum": 2}},
                "d": {"type": "integer", "minimum": 2},
                "dim": {"type": "integer", "minimum": 1},
                "points": {"type": "array", "minItems": 1, "items": exponent()}
            }
        })
    }

    pub fn none() -> Value {
        json!({"$schema": "https://json-schema.org/draft/2020-12/schema", "title": "no input file", "type": "null"})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn support_round_trip() {
        let s = Support::from_coords(2, vec![vec![6, 0], vec![0, 0], vec![0, 6]]).unwrap();
        assert_eq!(parse_support(&support_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn support_errors_have_paths() {
        let bad = json!({"dim": 2, "points": [[0, 0], [1, -1]]});
        assert_eq!(
            parse_support(&bad).unwrap_err(),
            Error::input("$.points[1][1]", "expected a nonnegative integer")
        );
        let short = json!({"dim": 2, "points": [[0]]});
        assert!(
            matches!(parse_support(&short), Err(Error::Input { path, .. }) if path == "$.points[0]")
        );
        let extra = json!({"dim": 1, "points": [[0]], "foo": 1});
        assert!(matches!(parse_support(&extra), Err(Error::Input { path, .. }) if path == "$.foo"));
        let version = json!({"dim": 1, "points": [[0]], "schema_version": 2});
        assert!(parse_support(&version).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let f = make_field(3, 2).unwrap();
        let x = f.generator();
        let p = Polynomial::from_terms(
            &f,
            2,
            vec![
                (Exponent::new(vec![0, 0]).unwrap(), f.one()),
                (Exponent::new(vec![2, 1]).unwrap(), x),
            ],
        )
        .unwrap();
        let v = polynomial_to_json(&p);
        assert_eq!(parse_polynomial(&v).unwrap(), p);
    }

    #[test]
    fn polynomial_errors() {
        let v = json!({"field": "6", "dim": 1, "terms": []});
        assert!(
            matches!(parse_polynomial(&v), Err(Error::Input { path, .. }) if path == "$.field")
        );
        let v = json!({"field": "3", "dim": 1, "terms": [{"exp": [1], "coeff": 3}]});
        assert!(parse_polynomial(&v).is_err());
        let v = json!({"field": "3^2", "dim": 1, "terms": [{"exp": [1], "coeff": [1, 5]}]});
        assert!(
            matches!(parse_polynomial(&v), Err(Error::Input { path, .. }) if path == "$.terms[0].coeff[1]")
        );
    }
}

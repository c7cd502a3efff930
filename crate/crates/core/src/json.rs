//! JSON forms of rings, matrices, complexes and DG data.
//!
//! Integers travel as decimal strings, rationals as `"a/b"`, polynomials as
//! coefficient arrays (lowest degree first).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value as Json};

use crate::complex::{CohomologyTable, FreeComplex};
use crate::dg::{BasisElement, DGRingPresentation, KoszulElement, SemiFreeDGModule};
use crate::error::{Error, Result};
use crate::ring::matrix::Matrix;
use crate::ring::module::{ModuleInvariants, ModulePresentation};
use crate::ring::{Poly, RingSpec, Value};

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Serialization(msg.into()))
}

fn field<'a>(j: &'a Json, key: &str) -> Result<&'a Json> {
    j.get(key).ok_or_else(|| Error::Serialization(format!("missing field {key:?}")))
}

fn as_u64(j: &Json, what: &str) -> Result<u64> {
    match j {
        Json::Number(n) => n.as_u64().ok_or_else(|| Error::Serialization(format!("{what}: not a u64"))),
        Json::String(s) => s.parse().map_err(|_| Error::Serialization(format!("{what}: not a u64"))),
        _ => bad(format!("{what}: expected a number")),
    }
}

fn as_i64(j: &Json, what: &str) -> Result<i64> {
    match j {
        Json::Number(n) => n.as_i64().ok_or_else(|| Error::Serialization(format!("{what}: not an i64"))),
        Json::String(s) => s.parse().map_err(|_| Error::Serialization(format!("{what}: not an i64"))),
        _ => bad(format!("{what}: expected a number")),
    }
}

pub fn ring_to_json(r: &RingSpec) -> Json {
    match r {
        RingSpec::Integers => json!({"kind": "integers"}),
        RingSpec::IntegersMod(n) => json!({"kind": "integers_mod", "n": n.to_string()}),
        RingSpec::PrimeField(p) => json!({"kind": "prime_field", "p": p}),
        RingSpec::Rationals => json!({"kind": "rationals"}),
        RingSpec::UnivariateQuotient(p, f) => json!({"kind": "univariate_quotient", "p": p, "f": f.0}),
    }
}

pub fn ring_from_json(j: &Json) -> Result<RingSpec> {
    let kind = field(j, "kind")?.as_str().unwrap_or_default();
    match kind {
        "integers" => Ok(RingSpec::Integers),
        "rationals" => Ok(RingSpec::Rationals),
        "integers_mod" => {
            let n: BigInt = match field(j, "n")? {
                Json::String(s) => s.parse().map_err(|_| Error::Serialization(format!("bad modulus {s:?}")))?,
                Json::Number(n) => BigInt::from(n.as_u64().unwrap_or(0)),
                _ => return bad("modulus must be a string or number"),
            };
            RingSpec::integers_mod(n)
        }
        "prime_field" => RingSpec::prime_field(as_u64(field(j, "p")?, "p")?),
        "univariate_quotient" => {
            let p = as_u64(field(j, "p")?, "p")?;
            let f = field(j, "f")?
                .as_array()
                .ok_or_else(|| Error::Serialization("f must be an array".into()))?
                .iter()
                .map(|c| as_u64(c, "coefficient"))
                .collect::<Result<Vec<_>>>()?;
            RingSpec::univariate_quotient(p, f)
        }
        other => bad(format!("unknown ring kind {other:?}")),
    }
}

pub fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Int(n) => Json::String(n.to_string()),
        Value::Rat(q) => Json::String(q.to_string()),
        Value::Poly(p) => json!(p.0),
    }
}

pub fn value_from_json(ring: &RingSpec, j: &Json) -> Result<Value> {
    match (j, ring) {
        (Json::Array(cs), RingSpec::UnivariateQuotient(p, _)) => {
            let cs = cs.iter().map(|c| as_u64(c, "coefficient")).collect::<Result<Vec<_>>>()?;
            Ok(ring.reduce(&Value::Poly(Poly::from_coeffs(cs, *p))))
        }
        (Json::String(s), _) => ring.parse_scalar(s),
        (Json::Number(n), _) => ring.parse_scalar(&n.to_string()),
        _ => bad(format!("cannot read {j} as an element of {ring}")),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Json {
    json!({
        "ring": ring_to_json(&m.ring),
        "rows": m.rows,
        "cols": m.cols,
        "entries": m.entries.iter().map(value_to_json).collect::<Vec<_>>(),
    })
}

/// Reads a matrix; `ring` is used when the object carries none.
pub fn matrix_from_json(j: &Json, ring: Option<&RingSpec>) -> Result<Matrix> {
    let ring = match (j.get("ring"), ring) {
        (Some(r), _) => ring_from_json(r)?,
        (None, Some(r)) => r.clone(),
        (None, None) => return bad("matrix without ring"),
    };
    let rows = as_u64(field(j, "rows")?, "rows")? as usize;
    let cols = as_u64(field(j, "cols")?, "cols")? as usize;
    let entries = field(j, "entries")?
        .as_array()
        .ok_or_else(|| Error::Serialization("entries must be an array".into()))?
        .iter()
        .map(|e| value_from_json(&ring, e))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_entries(ring, rows, cols, entries)
}

/// A presentation is its relation matrix; `rows` is the number of generators.
pub fn presentation_to_json(p: &ModulePresentation) -> Json {
    matrix_to_json(&p.relations)
}

pub fn presentation_from_json(j: &Json) -> Result<ModulePresentation> {
    let m = matrix_from_json(j, None)?;
    ModulePresentation::new(m.rows, m)
}

pub fn invariants_to_json(m: &ModuleInvariants) -> Json {
    json!({
        "label": m.label(),
        "factors": m.factors.iter().map(value_to_json).collect::<Vec<_>>(),
    })
}

pub fn table_to_json(t: &CohomologyTable) -> Json {
    let groups: Map<String, Json> = t.groups.iter().map(|(i, g)| (i.to_string(), invariants_to_json(g))).collect();
    json!({"ring": ring_to_json(&t.ring), "groups": groups})
}

pub fn complex_to_json(c: &FreeComplex) -> Json {
    let ranks: Map<String, Json> = c.ranks().iter().map(|(i, r)| (i.to_string(), json!(r))).collect();
    let diffs: Map<String, Json> =
        c.differentials().iter().map(|(i, d)| (i.to_string(), matrix_to_json(d))).collect();
    json!({"ring": ring_to_json(c.ring()), "ranks": ranks, "differentials": diffs})
}

fn degree_key(k: &str) -> Result<i64> {
    k.parse().map_err(|_| Error::Serialization(format!("bad degree key {k:?}")))
}

pub fn complex_from_json(j: &Json) -> Result<FreeComplex> {
    let ring = ring_from_json(field(j, "ring")?)?;
    let mut ranks = BTreeMap::new();
    for (k, v) in field(j, "ranks")?.as_object().ok_or_else(|| Error::Serialization("ranks must be an object".into()))? {
        ranks.insert(degree_key(k)?, as_u64(v, "rank")? as usize);
    }
    let mut diffs = BTreeMap::new();
    if let Some(ds) = j.get("differentials") {
        for (k, v) in ds.as_object().ok_or_else(|| Error::Serialization("differentials must be an object".into()))? {
            diffs.insert(degree_key(k)?, matrix_from_json(v, Some(&ring))?);
        }
    }
    FreeComplex::new(ring, ranks, diffs)
}

pub fn dg_ring_to_json(a: &DGRingPresentation) -> Json {
    json!({
        "base": ring_to_json(a.base()),
        "koszul": a.generators().iter().map(value_to_json).collect::<Vec<_>>(),
    })
}

pub fn dg_ring_from_json(j: &Json) -> Result<DGRingPresentation> {
    let base = ring_from_json(field(j, "base")?)?;
    let gens = match j.get("koszul") {
        None => Vec::new(),
        Some(g) => g
            .as_array()
            .ok_or_else(|| Error::Serialization("koszul must be an array".into()))?
            .iter()
            .map(|x| value_from_json(&base, x))
            .collect::<Result<Vec<_>>>()?,
    };
    DGRingPresentation::koszul(base, gens)
}

/// Monomial names: `"1"`, `"xi0"`, `"xi0*xi2"`.
fn monomial_name(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..32).filter(|j| mask >> j & 1 == 1).map(|j| format!("xi{j}")).collect::<Vec<_>>().join("*")
}

fn monomial_mask(s: &str) -> Result<u32> {
    if s == "1" {
        return Ok(0);
    }
    let mut mask = 0u32;
    for part in s.split('*') {
        let j: u32 = part
            .trim()
            .strip_prefix("xi")
            .and_then(|n| n.parse().ok())
            .filter(|&j| j < 32)
            .ok_or_else(|| Error::Serialization(format!("bad monomial {s:?}")))?;
        mask |= 1 << j;
    }
    Ok(mask)
}

fn koszul_to_json(r: &KoszulElement) -> Json {
    let m: Map<String, Json> = r.0.iter().map(|(&s, v)| (monomial_name(s), value_to_json(v))).collect();
    Json::Object(m)
}

/// `"differential"` maps each source basis name to `{target name: element}`,
/// an element being `{monomial: coefficient}` (or a bare scalar).
pub fn dg_module_to_json(m: &SemiFreeDGModule) -> Json {
    let basis: Vec<Json> = m.basis().iter().map(|e| json!({"name": e.name, "deg": e.deg})).collect();
    let mut diff: Map<String, Json> = Map::new();
    for (&(c, b), r) in m.differential() {
        let src = diff.entry(m.basis()[b].name.clone()).or_insert_with(|| json!({}));
        src.as_object_mut().unwrap().insert(m.basis()[c].name.clone(), koszul_to_json(r));
    }
    json!({"ring": dg_ring_to_json(m.ring()), "basis": basis, "differential": diff})
}

pub fn dg_module_from_json(j: &Json, ring: Option<&DGRingPresentation>) -> Result<SemiFreeDGModule> {
    let a = match (j.get("ring"), ring) {
        (Some(r), _) => dg_ring_from_json(r)?,
        (None, Some(r)) => r.clone(),
        (None, None) => return bad("DG-module without ring"),
    };
    let mut basis = Vec::new();
    for e in field(j, "basis")?.as_array().ok_or_else(|| Error::Serialization("basis must be an array".into()))? {
        let name = field(e, "name")?.as_str().ok_or_else(|| Error::Serialization("name must be a string".into()))?;
        basis.push(BasisElement { name: name.to_string(), deg: as_i64(field(e, "deg")?, "deg")? });
    }
    let index = |n: &str| -> Result<usize> {
        basis.iter().position(|e| e.name == n).ok_or_else(|| Error::Serialization(format!("unknown basis element {n:?}")))
    };
    let base = a.base().clone();
    let mut diff = BTreeMap::new();
    if let Some(d) = j.get("differential") {
        for (src, targets) in d.as_object().ok_or_else(|| Error::Serialization("differential must be an object".into()))? {
            let b = index(src)?;
            for (tgt, el) in targets.as_object().ok_or_else(|| Error::Serialization("targets must be an object".into()))? {
                let c = index(tgt)?;
                let mut r = KoszulElement::zero();
                match el {
                    Json::Object(terms) => {
                        for (mono, v) in terms {
                            r.add_term(&base, monomial_mask(mono)?, &value_from_json(&base, v)?);
                        }
                    }
                    scalar => r.add_term(&base, 0, &value_from_json(&base, scalar)?),
                }
                diff.insert((c, b), r);
            }
        }
    }
    SemiFreeDGModule::new(a, basis, diff)
}

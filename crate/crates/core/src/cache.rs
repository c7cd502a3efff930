//! Content-addressed cache for resolutions and Smith forms.
//!
//! Enabled by `DGWB_CACHE_DIR`; each entry is one JSON file named by the
//! digest of its input. Lookups are skipped while a mutant is active.

use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde_json::{json, Value as Json};

use crate::dg::{resolve_cyclic, Budget, DGRingPresentation, Resolution};
use crate::error::{Error, Result};
use crate::harness::digest_json;
use crate::json::{dg_module_from_json, dg_module_to_json, dg_ring_to_json, matrix_to_json, ring_from_json, ring_to_json, value_to_json};
use crate::ring::matrix::Matrix;
use crate::ring::smith::smith_normal_form;

pub const CACHE_ENV: &str = "DGWB_CACHE_DIR";

static LOCK: Mutex<()> = Mutex::new(());

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn from_env() -> Option<Self> {
        let dir = std::env::var_os(CACHE_ENV)?;
        Cache::new(dir).ok()
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(kind: &str, input: &Json) -> String {
        digest_json(&json!({ "kind": kind, "input": input }))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, kind: &str, input: &Json) -> Result<Option<Json>> {
        let path = self.path(&Cache::key(kind, input));
        let _guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: Json = serde_json::from_str(&text)?;
        // a digest collision or a stale format is a miss
        if entry.get("kind") != Some(&json!(kind)) || entry.get("input") != Some(input) {
            return Ok(None);
        }
        Ok(entry.get("value").cloned())
    }

    pub fn put(&self, kind: &str, input: &Json, value: &Json) -> Result<()> {
        let key = Cache::key(kind, input);
        let entry = json!({ "kind": kind, "input": input, "value": value });
        let _guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let tmp = self.dir.join(format!(".{key}.tmp"));
        std::fs::write(&tmp, serde_json::to_string(&entry)?)?;
        std::fs::rename(&tmp, self.path(&key))?;
        Ok(())
    }
}

fn active_cache() -> Option<Cache> {
    if crate::mutation::any_active() {
        return None;
    }
    Cache::from_env()
}

fn resolution_to_json(r: &Resolution) -> Json {
    json!({
        "module": dg_module_to_json(&r.module),
        "target": ring_to_json(&r.target),
        "floor": r.floor,
        "adjoined": r.adjoined,
    })
}

fn resolution_from_json(a: &DGRingPresentation, j: &Json) -> Result<Resolution> {
    let bad = || Error::Serialization("malformed cached resolution".into());
    Ok(Resolution {
        module: dg_module_from_json(j.get("module").ok_or_else(bad)?, Some(a))?,
        target: ring_from_json(j.get("target").ok_or_else(bad)?)?,
        floor: j.get("floor").and_then(Json::as_i64).ok_or_else(bad)?,
        adjoined: serde_json::from_value(j.get("adjoined").cloned().ok_or_else(bad)?)?,
    })
}

/// [`resolve_cyclic`] through the cache when one is configured.
pub fn cached_resolve_cyclic(
    a: &DGRingPresentation,
    c: &crate::ring::Value,
    floor: i64,
    budget: Budget,
) -> Result<Resolution> {
    let Some(cache) = active_cache() else { return resolve_cyclic(a, c, floor, budget) };
    let input = json!({
        "dg_ring": dg_ring_to_json(a),
        "c": value_to_json(c),
        "floor": floor,
        "max_basis": budget.max_basis,
    });
    if let Some(v) = cache.get("resolution", &input)? {
        return resolution_from_json(a, &v);
    }
    let r = resolve_cyclic(a, c, floor, budget)?;
    cache.put("resolution", &input, &resolution_to_json(&r))?;
    Ok(r)
}

/// Smith form of a matrix over a Euclidean domain as JSON, through the cache.
pub fn cached_smith(a: &Matrix) -> Result<Json> {
    let compute = || -> Result<Json> {
        let s = smith_normal_form(a)?;
        let ring = a.ring.clone();
        let back = |m: &crate::ring::matrix::DomainMatrix| matrix_to_json(&m.into_ring(&ring));
        Ok(json!({
            "u": back(&s.u),
            "d": back(&s.d),
            "v": back(&s.v),
            "invariant_factors": s.invariant_factors.iter().map(value_to_json).collect::<Vec<_>>(),
        }))
    };
    let Some(cache) = active_cache() else { return compute() };
    let input = matrix_to_json(a);
    if let Some(v) = cache.get("smith", &input)? {
        return Ok(v);
    }
    let v = compute()?;
    cache.put("smith", &input, &v)?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingSpec, Value};

    #[test]
    fn round_trip_through_files() {
        let dir = std::env::temp_dir().join(format!("dgwb-cache-test-{}", std::process::id()));
        let cache = Cache::new(&dir).unwrap();
        let input = json!({"x": 1});
        assert_eq!(cache.get("k", &input).unwrap(), None);
        cache.put("k", &input, &json!([1, 2])).unwrap();
        assert_eq!(cache.get("k", &input).unwrap(), Some(json!([1, 2])));
        assert_eq!(cache.get("other", &input).unwrap(), None);

        let a = DGRingPresentation::koszul(RingSpec::integers_mod(4).unwrap(), vec![Value::int(2)]).unwrap();
        let r = resolve_cyclic(&a, &Value::int(0), -3, Budget::default()).unwrap();
        let back = resolution_from_json(&a, &resolution_to_json(&r)).unwrap();
        assert_eq!(back.module, r.module);
        assert_eq!(back.adjoined, r.adjoined);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

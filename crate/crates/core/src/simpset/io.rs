//! On-disk formats for simplicial sets and maps.
//!
//! A `.sset` file is JSON with three fields: `dim`, `simplices` (dimension to
//! id list), and `faces` (id to face reference list). A reference is either a
//! bare id or `id^s[j1,j2,..]` with a strictly decreasing degeneracy word.

use super::map::SimplicialMap;
use super::set::SimplicialSet;
use super::simplex::SimplexRef;
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("bad json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("identifier {0:?} would parse as a degenerate reference")]
    AmbiguousId(String),
    #[error("unknown simplex {0:?} referenced")]
    UnknownSimplex(String),
    #[error("{0}")]
    Structure(String),
}

/// Parses `base` or `base^s[j1,..]`. A trailing suffix only counts as a
/// degeneracy word when it is well formed; otherwise the whole string is the
/// base id.
pub fn parse_ref(s: &str) -> SimplexRef {
    if let Some((base, word)) = split_degenerate(s) {
        SimplexRef::new(base, word)
    } else {
        SimplexRef::nondeg(s)
    }
}

fn split_degenerate(s: &str) -> Option<(String, Vec<usize>)> {
    if !s.ends_with(']') {
        return None;
    }
    let pos = s.rfind("^s[")?;
    let inner = &s[pos + 3..s.len() - 1];
    let mut word = Vec::new();
    for part in inner.split(',') {
        word.push(part.parse::<usize>().ok()?);
    }
    if !word.windows(2).all(|w| w[0] > w[1]) {
        return None;
    }
    Some((s[..pos].to_string(), word))
}

#[derive(Deserialize)]
struct SsetFile {
    dim: usize,
    simplices: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: BTreeMap<String, Vec<String>>,
}

/// Reads a simplicial set from `.sset` JSON and checks the simplicial
/// identities.
pub fn parse_sset(text: &str) -> Result<SimplicialSet, IoError> {
    let file: SsetFile = serde_json::from_str(text)?;
    let mut x = SimplicialSet::new();
    for d in 0..=file.dim {
        let ids = file.simplices.get(&d.to_string()).cloned().unwrap_or_default();
        for id in ids {
            if split_degenerate(&id).is_some() {
                return Err(IoError::AmbiguousId(id));
            }
            let faces = if d == 0 {
                Vec::new()
            } else {
                let raw = file
                    .faces
                    .get(&id)
                    .ok_or_else(|| IoError::Structure(format!("no face list for {id}")))?;
                if raw.len() != d + 1 {
                    return Err(IoError::Structure(format!(
                        "{id} needs {} faces, got {}",
                        d + 1,
                        raw.len()
                    )));
                }
                raw.iter().map(|r| parse_ref(r)).collect()
            };
            if x.contains(&id) {
                return Err(IoError::Structure(format!("duplicate id {id}")));
            }
            x.add_simplex(id, d, faces);
        }
    }
    for (key, _) in &file.simplices {
        if key.parse::<usize>().map(|d| d > file.dim).unwrap_or(true) {
            return Err(IoError::Structure(format!("bad dimension key {key:?}")));
        }
    }
    for d in 1..=x.dim() {
        for id in x.nondeg(d) {
            for f in x.faces_of(id) {
                if !x.contains(&f.base) {
                    return Err(IoError::UnknownSimplex(f.base.clone()));
                }
            }
        }
    }
    x.validate().map_err(IoError::Structure)?;
    Ok(x)
}

/// Canonical `.sset` JSON for a simplicial set.
pub fn render_sset(x: &SimplicialSet) -> String {
    let mut simplices = serde_json::Map::new();
    let mut faces = serde_json::Map::new();
    for d in 0..=x.dim() {
        let ids: Vec<serde_json::Value> =
            x.nondeg(d).iter().map(|s| serde_json::Value::String(s.clone())).collect();
        simplices.insert(d.to_string(), serde_json::Value::Array(ids));
        if d > 0 {
            for id in x.nondeg(d) {
                let fs: Vec<serde_json::Value> = x
                    .faces_of(id)
                    .iter()
                    .map(|r| serde_json::Value::String(r.to_string()))
                    .collect();
                faces.insert(id.clone(), serde_json::Value::Array(fs));
            }
        }
    }
    let doc = serde_json::json!({
        "dim": x.dim(),
        "simplices": simplices,
        "faces": faces,
    });
    serde_json::to_string_pretty(&doc).expect("json rendering cannot fail")
}

#[derive(Deserialize)]
struct SmapFile {
    source: serde_json::Value,
    target: serde_json::Value,
    assign: BTreeMap<String, String>,
}

/// Reads a simplicial map from `.smap` JSON. The `source` and `target`
/// fields hold either inline `.sset` documents or path strings, resolved by
/// the supplied loader.
pub fn parse_smap(
    text: &str,
    loader: &dyn Fn(&str) -> Result<String, String>,
) -> Result<SimplicialMap, IoError> {
    let file: SmapFile = serde_json::from_str(text)?;
    let load = |v: &serde_json::Value| -> Result<SimplicialSet, IoError> {
        match v {
            serde_json::Value::String(path) => {
                let body = loader(path).map_err(IoError::Structure)?;
                parse_sset(&body)
            }
            other => parse_sset(&other.to_string()),
        }
    };
    let source = load(&file.source)?;
    let target = load(&file.target)?;
    let assign: BTreeMap<String, SimplexRef> =
        file.assign.iter().map(|(k, v)| (k.clone(), parse_ref(v))).collect();
    SimplicialMap::new(source, target, assign).map_err(IoError::Structure)
}

//! On-disk formats for decorated simplicial sets and enriched categories.
//!
//! A `.scs` file is a `.sset` document with an extra `thin` list, a `.mks`
//! file one with a `marked` list; degenerate members are implied and omitted
//! when rendering.  A `.enr` file lists objects, identity vertices, mapping
//! objects (inline `.mks` documents or paths), and composition assignments.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::simpset::{parse_ref, parse_sset, render_sset, IoError, SimplexRef};

use super::enriched::MarkedEnrichedCategory;
use super::{MarkedSS, ScaledSS};

#[derive(Deserialize)]
struct Distinguished {
    #[serde(default)]
    thin: Vec<String>,
    #[serde(default)]
    marked: Vec<String>,
}

/// Reads a scaled simplicial set from `.scs` JSON.
pub fn parse_scs(text: &str) -> Result<ScaledSS, IoError> {
    let set = parse_sset(text)?;
    let extra: Distinguished = serde_json::from_str(text)?;
    let cells: Vec<SimplexRef> = extra.thin.iter().map(|s| parse_ref(s)).collect();
    ScaledSS::explicit(set, &cells).map_err(IoError::Structure)
}

/// Reads a marked simplicial set from `.mks` JSON.
pub fn parse_mks(text: &str) -> Result<MarkedSS, IoError> {
    let set = parse_sset(text)?;
    let extra: Distinguished = serde_json::from_str(text)?;
    let edges: Vec<SimplexRef> = extra.marked.iter().map(|s| parse_ref(s)).collect();
    MarkedSS::explicit(set, &edges).map_err(IoError::Structure)
}

fn with_list(set_doc: String, field: &str, refs: Vec<String>) -> String {
    let mut doc: serde_json::Value =
        serde_json::from_str(&set_doc).expect("rendered sets are valid json");
    let list = refs.into_iter().map(serde_json::Value::String).collect();
    doc.as_object_mut()
        .expect("rendered sets are objects")
        .insert(field.to_string(), serde_json::Value::Array(list));
    serde_json::to_string_pretty(&doc).expect("json rendering cannot fail")
}

/// Canonical `.scs` JSON: the underlying `.sset` plus the nondegenerate thin
/// cells.
pub fn render_scs(x: &ScaledSS) -> String {
    let thin = x.thin.iter().filter(|r| r.word.is_empty()).map(|r| r.to_string()).collect();
    with_list(render_sset(&x.set), "thin", thin)
}

/// Canonical `.mks` JSON: the underlying `.sset` plus the nondegenerate
/// marked edges.
pub fn render_mks(x: &MarkedSS) -> String {
    let marked = x.marked.iter().filter(|r| r.word.is_empty()).map(|r| r.to_string()).collect();
    with_list(render_sset(&x.set), "marked", marked)
}

#[derive(Deserialize)]
struct EnrFile {
    objects: Vec<String>,
    identities: BTreeMap<String, String>,
    mapping: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    composition: BTreeMap<String, BTreeMap<String, String>>,
}

/// Reads an enriched category from `.enr` JSON.  Mapping objects are inline
/// `.mks` documents or path strings resolved through `loader`; the enrichment
/// axioms are validated after assembly.
pub fn parse_enr(
    text: &str,
    loader: &dyn Fn(&str) -> Result<String, String>,
) -> Result<MarkedEnrichedCategory, IoError> {
    let file: EnrFile = serde_json::from_str(text)?;
    let mut mapping = BTreeMap::new();
    for (key, v) in &file.mapping {
        let parts: Vec<&str> = key.split('>').collect();
        let [x, y] = parts[..] else {
            return Err(IoError::Structure(format!("mapping key {key:?} is not x>y")));
        };
        let body = match v {
            serde_json::Value::String(path) => loader(path).map_err(IoError::Structure)?,
            other => other.to_string(),
        };
        mapping.insert((x.to_string(), y.to_string()), parse_mks(&body)?);
    }
    let mut comp = BTreeMap::new();
    for (key, table) in &file.composition {
        let parts: Vec<&str> = key.split('>').collect();
        let [x, y, z] = parts[..] else {
            return Err(IoError::Structure(format!("composition key {key:?} is not x>y>z")));
        };
        let assign: BTreeMap<String, SimplexRef> =
            table.iter().map(|(k, v)| (k.clone(), parse_ref(v))).collect();
        comp.insert((x.to_string(), y.to_string(), z.to_string()), assign);
    }
    MarkedEnrichedCategory::new(file.objects, mapping, file.identities, &comp)
        .map_err(|e| IoError::Structure(e.to_string()))
}

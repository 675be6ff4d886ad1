//! Reading and writing operator categories as JSON documents.
//!
//! A document lists objects, morphisms with endpoints, the identity of each
//! object, composites of non-identity pairs as `[g, f, g∘f]` triples, the
//! terminal object, and the fiber table keyed by map id then point id.
//! Identity composites are implied and filled in on read. Parsing assembles
//! the structure without judging it; run `check` on the result.

use super::{Fiber, OperatorCategory};
use crate::simpset::{FinCategory, IoError, MorInfo};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
struct OpcatFile {
    objects: Vec<String>,
    morphisms: Vec<MorEntry>,
    identities: BTreeMap<String, String>,
    #[serde(default)]
    composition: Vec<[String; 3]>,
    terminal: String,
    #[serde(default)]
    fibers: BTreeMap<String, BTreeMap<String, FiberEntry>>,
}

#[derive(Serialize, Deserialize)]
struct MorEntry {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct FiberEntry {
    object: String,
    projection: String,
}

pub fn parse_opcat(text: &str) -> Result<OperatorCategory, IoError> {
    let doc: OpcatFile = serde_json::from_str(text)?;
    let object = |name: &str| -> Result<usize, IoError> {
        doc.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| IoError::Structure(format!("unknown object {name:?}")))
    };
    let mut mors = Vec::new();
    for m in &doc.morphisms {
        if mors.iter().any(|x: &MorInfo| x.id == m.id) {
            return Err(IoError::AmbiguousId(m.id.clone()));
        }
        mors.push(MorInfo { id: m.id.clone(), src: object(&m.src)?, tgt: object(&m.tgt)? });
    }
    let mor = |id: &str| -> Result<usize, IoError> {
        mors.iter()
            .position(|m| m.id == id)
            .ok_or_else(|| IoError::Structure(format!("unknown morphism {id:?}")))
    };
    let mut identity = Vec::new();
    for name in &doc.objects {
        let id = doc
            .identities
            .get(name)
            .ok_or_else(|| IoError::Structure(format!("no identity for {name:?}")))?;
        identity.push(mor(id)?);
    }
    let mut comp = BTreeMap::new();
    for [g, f, gf] in &doc.composition {
        comp.insert((mor(g)?, mor(f)?), mor(gf)?);
    }
    for (i, &id) in identity.iter().enumerate() {
        for (other, info) in mors.iter().enumerate() {
            let mut keys = Vec::new();
            if info.tgt == i {
                keys.push((id, other));
            }
            if info.src == i {
                keys.push((other, id));
            }
            for key in keys {
                if comp.get(&key).is_some_and(|&prev| prev != other) {
                    return Err(IoError::Structure(format!(
                        "identity composite of {} conflicts with the table",
                        info.id
                    )));
                }
                comp.insert(key, other);
            }
        }
    }
    let terminal = object(&doc.terminal)?;
    let mut fibers = BTreeMap::new();
    for (map, per_point) in &doc.fibers {
        for (point, entry) in per_point {
            fibers.insert(
                (mor(map)?, mor(point)?),
                Fiber { object: object(&entry.object)?, projection: mor(&entry.projection)? },
            );
        }
    }
    let carrier = FinCategory { objects: doc.objects.clone(), mors, identity, comp };
    Ok(OperatorCategory::from_table(carrier, terminal, fibers))
}

pub fn render_opcat(c: &OperatorCategory) -> String {
    let cat = c.carrier();
    let name = |m: usize| cat.mors[m].id.clone();
    let morphisms = cat
        .mors
        .iter()
        .map(|m| MorEntry {
            id: m.id.clone(),
            src: cat.objects[m.src].clone(),
            tgt: cat.objects[m.tgt].clone(),
        })
        .collect();
    let identities = cat
        .identity
        .iter()
        .enumerate()
        .map(|(o, &e)| (cat.objects[o].clone(), name(e)))
        .collect();
    let composition = cat
        .comp
        .iter()
        .filter(|&(&(g, f), _)| !cat.is_identity(g) && !cat.is_identity(f))
        .map(|(&(g, f), &gf)| [name(g), name(f), name(gf)])
        .collect();
    let mut fibers: BTreeMap<String, BTreeMap<String, FiberEntry>> = BTreeMap::new();
    for (&(f, i), fib) in &c.fibers {
        fibers.entry(name(f)).or_default().insert(
            name(i),
            FiberEntry {
                object: cat.objects[fib.object].clone(),
                projection: name(fib.projection),
            },
        );
    }
    let doc = OpcatFile {
        objects: cat.objects.clone(),
        morphisms,
        identities,
        composition,
        terminal: cat.objects[c.terminal()].clone(),
        fibers,
    };
    serde_json::to_string_pretty(&doc).expect("operator categories serialize")
}

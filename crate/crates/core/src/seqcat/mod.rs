//! Truncated categories of composable chains in an operator category.
//!
//! A sequence over Φ is a chain of composable carrier morphisms; a doubled
//! sequence decorates every stage of such a chain with a further chain, one
//! arrow per point of the stage.  Maps of sequences are monotone reindexings
//! whose components are interval inclusions and whose comparison squares are
//! pullbacks, so both kinds of sequence form categories.  Everything here is
//! enumerated inside explicit bounds and delivered as a finite composition
//! table carrying the bounds it was built under.

mod build;
mod functors;

pub use build::{delta_phi, delta_phi_box, delta_phi_box_data, delta_phi_data, BoxData, SeqData};
pub(crate) use build::{box_name, seq_name};
pub use functors::{
    base_change, decorate_constant, decorate_constant_map, e2_scaffold, forget_decorations,
    forget_decorations_map, nerve_op, nerve_op_map, opposite_category, ordinal_category,
    ordinal_collapse, to_finite_sets, wreath_inclusion, BaseChange, Scaffold, Scaling,
    WreathInclusion,
};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::opcat::OperatorCategory;
use crate::simpset::FinCategory;

/// Failures of sequence construction or validation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    /// A chain is structurally broken (lengths or endpoints).
    #[error("malformed sequence: {0}")]
    Sequence(String),
    /// A chain map violates one of its defining conditions.
    #[error("invalid sequence map: {0}")]
    Map(String),
    /// An enumeration left the configured ceiling.
    #[error("{what} count {count} exceeds the enumeration cap {cap}")]
    Bound { what: &'static str, count: usize, cap: usize },
    /// A functor handed to base change is not an operator map.
    #[error("not an operator map: {0}")]
    InvalidMap(String),
    /// The carrier operator category could not be built.
    #[error("carrier construction failed: {0}")]
    Carrier(String),
}

/// A composable chain `I_0 -> I_1 -> .. -> I_n` in the carrier of Φ,
/// stored as object indices joined by `arrows[k]: I_k -> I_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PhiSequence {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl PhiSequence {
    /// The chain consisting of a single object.
    pub fn point(object: usize) -> Self {
        PhiSequence { objects: vec![object], arrows: Vec::new() }
    }

    /// The number of arrows in the chain.
    pub fn degree(&self) -> usize {
        self.arrows.len()
    }
}

/// A map of chains: a monotone reindexing `p` of stages together with one
/// component `q[k]: I_k -> J_{p(k)}` per source stage.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PhiSeqMap {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

impl PhiSeqMap {
    /// The identity map of a chain.
    pub fn identity(cat: &FinCategory, seq: &PhiSequence) -> Self {
        PhiSeqMap {
            p: (0..=seq.degree()).collect(),
            q: seq.objects.iter().map(|&o| cat.identity[o]).collect(),
        }
    }
}

/// The composite `g ∘ f` of chain maps, `f` applied first.
pub fn compose_maps(cat: &FinCategory, g: &PhiSeqMap, f: &PhiSeqMap) -> PhiSeqMap {
    PhiSeqMap {
        p: f.p.iter().map(|&k| g.p[k]).collect(),
        q: f.p.iter().zip(&f.q).map(|(&k, &qk)| cat.compose(g.q[k], qk)).collect(),
    }
}

/// A chain whose stage `k` carries a decorating chain with exactly one
/// arrow per point of `outer.objects[k]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Phi2Sequence {
    pub outer: PhiSequence,
    pub decorations: Vec<PhiSequence>,
}

/// A map of decorated chains: a map of the underlying chains plus a chain
/// map `decorations[k]` from the stage-`k` decoration to the decoration at
/// its image stage.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Phi2SeqMap {
    pub outer: PhiSeqMap,
    pub decorations: Vec<PhiSeqMap>,
}

/// The componentwise composite `g ∘ f` of decorated chain maps.
pub fn compose_box_maps(cat: &FinCategory, g: &Phi2SeqMap, f: &Phi2SeqMap) -> Phi2SeqMap {
    Phi2SeqMap {
        outer: compose_maps(cat, &g.outer, &f.outer),
        decorations: f
            .decorations
            .iter()
            .zip(&f.outer.p)
            .map(|(d, &k)| compose_maps(cat, &g.decorations[k], d))
            .collect(),
    }
}

/// The bounds a truncated category was enumerated under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCertificate {
    /// Largest chain degree.
    pub n_max: usize,
    /// Largest point count of a chain object.
    pub size_max: usize,
    /// Largest point count of a decoration object, absent for plain chains.
    pub m_max: Option<usize>,
}

/// A finite category together with the bounds that produced it.  The
/// composition table is total on its morphisms, so the listed morphisms are
/// closed under composites.
#[derive(Clone, Debug)]
pub struct TruncatedCategory {
    pub category: FinCategory,
    pub certificate: SizeCertificate,
}

/// Checks that a chain is well-formed over the carrier of `phi`.
pub fn check_sequence(phi: &OperatorCategory, seq: &PhiSequence) -> Result<(), SeqError> {
    let cat = phi.carrier();
    if seq.objects.len() != seq.arrows.len() + 1 {
        return Err(SeqError::Sequence(format!(
            "{} objects do not fit {} arrows",
            seq.objects.len(),
            seq.arrows.len()
        )));
    }
    if let Some(&o) = seq.objects.iter().find(|&&o| o >= cat.objects.len()) {
        return Err(SeqError::Sequence(format!("unknown object {o}")));
    }
    for (k, &a) in seq.arrows.iter().enumerate() {
        if a >= cat.mors.len() {
            return Err(SeqError::Sequence(format!("unknown arrow {a}")));
        }
        if cat.mors[a].src != seq.objects[k] || cat.mors[a].tgt != seq.objects[k + 1] {
            return Err(SeqError::Sequence(format!(
                "arrow {} does not join stages {} and {}",
                cat.mors[a].id,
                k,
                k + 1
            )));
        }
    }
    Ok(())
}

/// Checks that a decorated chain is well-formed: the outer chain and all
/// decorations are valid and stage `k` carries one arrow per point.
pub fn check_double_sequence(phi: &OperatorCategory, x: &Phi2Sequence) -> Result<(), SeqError> {
    check_sequence(phi, &x.outer)?;
    if x.decorations.len() != x.outer.objects.len() {
        return Err(SeqError::Sequence(format!(
            "{} decorations for {} stages",
            x.decorations.len(),
            x.outer.objects.len()
        )));
    }
    for (k, dec) in x.decorations.iter().enumerate() {
        check_sequence(phi, dec)?;
        let want = phi.points(x.outer.objects[k]).len();
        if dec.degree() != want {
            return Err(SeqError::Sequence(format!(
                "decoration at stage {k} has degree {} instead of {want}",
                dec.degree()
            )));
        }
    }
    Ok(())
}

/// The composite of `seq.arrows[a..b]` as a single morphism `I_a -> I_b`.
pub fn chain_composite(cat: &FinCategory, seq: &PhiSequence, a: usize, b: usize) -> usize {
    let mut acc = cat.identity[seq.objects[a]];
    for j in a..b {
        acc = cat.compose(seq.arrows[j], acc);
    }
    acc
}

/// Decides whether a commuting square `top: A -> B`, `left: A -> C`,
/// `right: B -> D`, `bottom: C -> D` is a pullback: every pair of maps to
/// `C` and `B` that agree in `D` factors through `A` exactly once.
pub fn is_pullback(cat: &FinCategory, top: usize, left: usize, right: usize, bottom: usize) -> bool {
    let a = cat.mors[top].src;
    let b = cat.mors[top].tgt;
    let c = cat.mors[left].tgt;
    for t in 0..cat.objects.len() {
        let lifts = cat.hom(t, a);
        let into_b = cat.hom(t, b);
        for t1 in cat.hom(t, c) {
            for &t2 in &into_b {
                if cat.compose(bottom, t1) != cat.compose(right, t2) {
                    continue;
                }
                let found = lifts
                    .iter()
                    .filter(|&&h| cat.compose(left, h) == t1 && cat.compose(top, h) == t2)
                    .count();
                if found != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks that `map` is a valid chain map from `src` to `dst`: monotone
/// reindexing, interval-inclusion components, and for every stage pair
/// `sigma <= tau` a commuting comparison square that is a pullback.
pub fn check_seq_map(
    phi: &OperatorCategory,
    src: &PhiSequence,
    dst: &PhiSequence,
    map: &PhiSeqMap,
) -> Result<(), SeqError> {
    let interval = phi.interval_inclusion_closure();
    seq_map_errors(phi.carrier(), &interval, src, dst, map)
}

/// Checks a map of decorated chains componentwise.
pub fn check_box_map(
    phi: &OperatorCategory,
    src: &Phi2Sequence,
    dst: &Phi2Sequence,
    map: &Phi2SeqMap,
) -> Result<(), SeqError> {
    let interval = phi.interval_inclusion_closure();
    let cat = phi.carrier();
    seq_map_errors(cat, &interval, &src.outer, &dst.outer, &map.outer)?;
    if map.decorations.len() != src.decorations.len() {
        return Err(SeqError::Map(format!(
            "{} decoration maps for {} stages",
            map.decorations.len(),
            src.decorations.len()
        )));
    }
    for (k, d) in map.decorations.iter().enumerate() {
        seq_map_errors(cat, &interval, &src.decorations[k], &dst.decorations[map.outer.p[k]], d)
            .map_err(|e| SeqError::Map(format!("decoration {k}: {e}")))?;
    }
    Ok(())
}

/// The shared validity check behind [`check_seq_map`], parameterised by a
/// precomputed interval-inclusion set so enumeration loops pay for it once.
pub(crate) fn seq_map_errors(
    cat: &FinCategory,
    interval: &BTreeSet<usize>,
    src: &PhiSequence,
    dst: &PhiSequence,
    map: &PhiSeqMap,
) -> Result<(), SeqError> {
    let n = src.degree();
    if map.p.len() != n + 1 || map.q.len() != n + 1 {
        return Err(SeqError::Map(format!("component counts do not match degree {n}")));
    }
    for w in map.p.windows(2) {
        if w[0] > w[1] {
            return Err(SeqError::Map("reindexing is not monotone".into()));
        }
    }
    if *map.p.last().unwrap() > dst.degree() {
        return Err(SeqError::Map("reindexing leaves the target chain".into()));
    }
    for k in 0..=n {
        let qk = map.q[k];
        if cat.mors[qk].src != src.objects[k] || cat.mors[qk].tgt != dst.objects[map.p[k]] {
            return Err(SeqError::Map(format!("component {k} joins the wrong objects")));
        }
        if !interval.contains(&qk) {
            return Err(SeqError::Map(format!(
                "component {k} ({}) is not an interval inclusion",
                cat.mors[qk].id
            )));
        }
    }
    for sigma in 0..=n {
        for tau in sigma..=n {
            let top = chain_composite(cat, src, sigma, tau);
            let bottom = chain_composite(cat, dst, map.p[sigma], map.p[tau]);
            if cat.compose(map.q[tau], top) != cat.compose(bottom, map.q[sigma]) {
                return Err(SeqError::Map(format!(
                    "comparison square ({sigma},{tau}) does not commute"
                )));
            }
            if !is_pullback(cat, top, map.q[sigma], map.q[tau], bottom) {
                return Err(SeqError::Map(format!(
                    "comparison square ({sigma},{tau}) is not a pullback"
                )));
            }
        }
    }
    Ok(())
}

//! Segal and completeness comparisons for diagrams over chain categories.
//!
//! A diagram assigns a finite simplicial set to every object of a truncated
//! chain category and a structure map to every morphism, contravariantly.
//! Three comparisons probe it: the product comparison splits the value at a
//! chain into the values at its pointwise fiber chains, the chain comparison
//! rebuilds it from adjacent pairs glued over shared stages, and the
//! completeness comparison tests the restriction along constant chains
//! against the walking composite collapse.  Everything is decided levelwise
//! on explicit finite data, and any property a finite check cannot certify
//! is reported as inconclusive rather than passed.

mod diagrams;
mod extract;
mod maps;

pub use diagrams::{monoid_operad, pullback_diagram, tensor_object, terminal_diagram, Monoid};
pub use extract::{
    check_algebra_object, check_tensor_universal_property, fiber_extract, polycomposition,
    AlgebraReport, Extraction, PolyFiber, TensorVerdict,
};
pub use maps::{
    check_operad, completeness2_map, completeness_map, segal2_maps, segal_maps, Completeness,
    EquivVerdict, InstanceVerdict, MapKind, SegalReport,
};

use thiserror::Error;

use crate::opcat::OperatorCategory;
use crate::seqcat::{BoxData, Phi2Sequence, PhiSequence, SeqData, SeqError, TruncatedCategory};
use crate::simpset::{standard_simplex, FinCategory, SimplexRef, SimplicialMap, SimplicialSet};

/// Failures of diagram construction or comparison.
#[derive(Debug, Error)]
pub enum SegalError {
    /// Building a base category failed.
    #[error(transparent)]
    Sequence(#[from] SeqError),
    /// A chain or chain map is not among the enumerated base data.
    #[error("not in the base: {0}")]
    Missing(String),
    /// The comparison needs chains outside the base truncation.
    #[error("truncation too small: {0}")]
    Truncation(String),
    /// The diagram data is inconsistent.
    #[error("malformed diagram: {0}")]
    Malformed(String),
    /// Two inputs do not share the base they must share.
    #[error("base mismatch: {0}")]
    Base(String),
    /// The operator category refused a point or fiber computation.
    #[error("operator category failure: {0}")]
    Operator(String),
}

/// The indexing shape of a diagram: plain chains or decorated chains.
#[derive(Clone, Debug)]
pub enum DiagramBase {
    Chains(SeqData),
    Doubled(BoxData),
}

impl DiagramBase {
    /// The finite composition table together with the bounds it was built
    /// under.
    pub fn truncated(&self) -> &TruncatedCategory {
        match self {
            DiagramBase::Chains(d) => &d.truncated,
            DiagramBase::Doubled(d) => &d.truncated,
        }
    }

    /// The finite composition table of the base.
    pub fn category(&self) -> &FinCategory {
        &self.truncated().category
    }

    /// The plain chain underlying an object, the outer chain when decorated.
    pub fn outer(&self, o: usize) -> &PhiSequence {
        match self {
            DiagramBase::Chains(d) => &d.objects[o],
            DiagramBase::Doubled(d) => &d.objects[o].outer,
        }
    }

    /// Whether the base is a decorated chain category.
    pub fn is_doubled(&self) -> bool {
        matches!(self, DiagramBase::Doubled(_))
    }
}

/// A contravariant diagram of simplicial sets on a chain category.
///
/// `values` runs parallel to the base objects and `arrows` to the base
/// morphisms; `arrows[m]` points from the value at the target of morphism
/// `m` to the value at its source, which is how the opposite orientation of
/// the indexing is recorded.
#[derive(Clone, Debug)]
pub struct OperadDiagram {
    pub phi: OperatorCategory,
    pub base: DiagramBase,
    pub values: Vec<SimplicialSet>,
    pub arrows: Vec<SimplicialMap>,
}

impl OperadDiagram {
    /// Index of a plain chain among the base objects.
    pub fn sequence_index(&self, seq: &PhiSequence) -> Option<usize> {
        match &self.base {
            DiagramBase::Chains(d) => d.object_index(seq),
            DiagramBase::Doubled(_) => None,
        }
    }

    /// Index of a decorated chain among the base objects.
    pub fn doubled_index(&self, seq: &Phi2Sequence) -> Option<usize> {
        match &self.base {
            DiagramBase::Chains(_) => None,
            DiagramBase::Doubled(d) => d.object_index(seq),
        }
    }

    /// Checks shapes, identity actions, and every composite of the base
    /// composition table against the arrow assignment.
    pub fn validate(&self) -> Result<(), SegalError> {
        let cat = self.base.category();
        if self.values.len() != cat.objects.len() {
            return Err(SegalError::Malformed(format!(
                "{} values for {} base objects",
                self.values.len(),
                cat.objects.len()
            )));
        }
        if self.arrows.len() != cat.mors.len() {
            return Err(SegalError::Malformed(format!(
                "{} arrows for {} base morphisms",
                self.arrows.len(),
                cat.mors.len()
            )));
        }
        for (m, info) in cat.mors.iter().enumerate() {
            let a = &self.arrows[m];
            if a.source != self.values[info.tgt] || a.target != self.values[info.src] {
                return Err(SegalError::Malformed(format!(
                    "arrow for {} does not run from the value at {} to the value at {}",
                    info.id, cat.objects[info.tgt], cat.objects[info.src]
                )));
            }
            a.check()
                .map_err(|e| SegalError::Malformed(format!("arrow for {}: {e}", info.id)))?;
        }
        for (o, name) in cat.objects.iter().enumerate() {
            let e = &self.arrows[cat.identity[o]];
            for r in all_refs(&self.values[o]) {
                if e.apply(&r) != r {
                    return Err(SegalError::Malformed(format!(
                        "identity arrow at {name} moves {r}"
                    )));
                }
            }
        }
        for (&(g, f), &gf) in &cat.comp {
            let direct = &self.arrows[gf];
            let outer = &self.arrows[g];
            let inner = &self.arrows[f];
            for (id, r) in &outer.assign {
                let via = inner.apply(r);
                let want = direct.apply(&SimplexRef::nondeg(id.clone()));
                if via != want {
                    return Err(SegalError::Malformed(format!(
                        "composite {} of {} after {} disagrees at {id}",
                        cat.mors[gf].id, cat.mors[g].id, cat.mors[f].id
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All nondegenerate simplices of a set, as refs, dimension by dimension.
pub(crate) fn all_refs(x: &SimplicialSet) -> Vec<SimplexRef> {
    let mut out = Vec::new();
    for d in 0..=x.dim() {
        for id in x.nondeg(d) {
            out.push(SimplexRef::nondeg(id.clone()));
        }
    }
    out
}

/// The one-point simplicial set used as an empty product.
pub(crate) fn point_space() -> SimplicialSet {
    standard_simplex(0)
}

/// The unique map from a set to the one-point set.
pub(crate) fn collapse_to_point(src: &SimplicialSet) -> SimplicialMap {
    let mut assign = std::collections::BTreeMap::new();
    for d in 0..=src.dim() {
        for id in src.nondeg(d) {
            assign
                .insert(id.clone(), SimplexRef::new("0".to_string(), (0..d).rev().collect()));
        }
    }
    SimplicialMap::new_unchecked(src.clone(), point_space(), assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcat::trivial;
    use crate::seqcat::delta_phi_data;

    #[test]
    fn validate_accepts_the_terminal_diagram() {
        let phi = trivial();
        let base = delta_phi_data(&phi, 2, 1).unwrap();
        let x = terminal_diagram(&phi, DiagramBase::Chains(base));
        assert!(x.validate().is_ok());
    }

    #[test]
    fn validate_rejects_a_swapped_arrow() {
        let phi = trivial();
        let base = delta_phi_data(&phi, 1, 1).unwrap();
        let mut x = terminal_diagram(&phi, DiagramBase::Chains(base));
        // Grow one value so a borrowed identity arrow no longer fits it.
        x.values[0] = standard_simplex(1);
        let err = x.validate().unwrap_err();
        assert!(matches!(err, SegalError::Malformed(_)));
    }

    #[test]
    fn collapse_lands_every_dimension_on_the_point() {
        let m = collapse_to_point(&standard_simplex(2));
        assert!(m.check().is_ok());
        assert_eq!(m.apply(&SimplexRef::nondeg("012".to_string())).base, "0");
    }
}

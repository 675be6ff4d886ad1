//! Maps of simplicial sets.

use super::set::SimplicialSet;
use super::simplex::SimplexRef;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A simplicial map, recorded by where each nondegenerate source simplex
/// goes. Images of degenerate simplices follow by rewriting words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub source: SimplicialSet,
    pub target: SimplicialSet,
    pub assign: BTreeMap<String, SimplexRef>,
}

impl SimplicialMap {
    /// Builds and validates a map: every nondegenerate source simplex must be
    /// assigned an image of the same dimension, compatibly with faces.
    pub fn new(
        source: SimplicialSet,
        target: SimplicialSet,
        assign: BTreeMap<String, SimplexRef>,
    ) -> Result<Self, String> {
        let m = SimplicialMap { source, target, assign };
        m.check()?;
        Ok(m)
    }

    /// Same as [`SimplicialMap::new`] but panics; for internally generated
    /// assignments that are correct by construction.
    pub fn new_unchecked(
        source: SimplicialSet,
        target: SimplicialSet,
        assign: BTreeMap<String, SimplexRef>,
    ) -> Self {
        SimplicialMap { source, target, assign }
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        let mut assign = BTreeMap::new();
        for d in 0..=x.dim() {
            for id in x.nondeg(d) {
                assign.insert(id.clone(), SimplexRef::nondeg(id.clone()));
            }
        }
        SimplicialMap { source: x.clone(), target: x.clone(), assign }
    }

    /// Image of an arbitrary simplex reference.
    pub fn apply(&self, r: &SimplexRef) -> SimplexRef {
        let mut out = self.assign[&r.base].clone();
        for &j in r.word.iter().rev() {
            out = out.degenerate(j);
        }
        out
    }

    pub fn check(&self) -> Result<(), String> {
        for d in 0..=self.source.dim() {
            for id in self.source.nondeg(d) {
                let img = self
                    .assign
                    .get(id)
                    .ok_or_else(|| format!("no image assigned to {id}"))?;
                if !self.target.ref_valid(img) {
                    return Err(format!("image of {id} is not a simplex of the target: {img}"));
                }
                if self.target.ref_dim(img) != d {
                    return Err(format!("image of {id} has wrong dimension"));
                }
                if d > 0 {
                    let x = SimplexRef::nondeg(id.clone());
                    for i in 0..=d {
                        let lhs = self.apply(&self.source.face_of_ref(&x, i));
                        let rhs = self.target.face_of_ref(img, i);
                        if lhs != rhs {
                            return Err(format!(
                                "map does not commute with d_{i} on {id}: {lhs} vs {rhs}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Composite `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        let mut assign = BTreeMap::new();
        for (id, img) in &self.assign {
            assign.insert(id.clone(), other.apply(img));
        }
        SimplicialMap { source: self.source.clone(), target: other.target.clone(), assign }
    }

    /// True when the map is a levelwise bijection on simplices up to the
    /// larger of the two dimensions, which pins down an isomorphism of the
    /// whole simplicial sets.
    pub fn is_iso(&self) -> bool {
        let top = self.source.dim().max(self.target.dim());
        for n in 0..=top {
            let src = self.source.refs_at(n);
            let tgt = self.target.refs_at(n);
            if src.len() != tgt.len() {
                return false;
            }
            let images: std::collections::BTreeSet<SimplexRef> =
                src.iter().map(|r| self.apply(r)).collect();
            if images.len() != src.len() {
                return false;
            }
        }
        true
    }

    /// Is every nondegenerate target simplex hit by a nondegenerate source
    /// simplex. Together with injectivity on nondegenerates this recognizes
    /// isomorphisms defined levelwise.
    pub fn is_injective_on_nondeg(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for d in 0..=self.source.dim() {
            for id in self.source.nondeg(d) {
                if !seen.insert(self.assign[id].clone()) {
                    return false;
                }
            }
        }
        true
    }

    /// True when every nondegenerate source simplex has a nondegenerate
    /// image, i.e. the map is a monomorphism candidate. A simplicial map is
    /// injective exactly when it is injective on nondegenerate simplices and
    /// preserves nondegeneracy.
    pub fn is_mono(&self) -> bool {
        for d in 0..=self.source.dim() {
            for id in self.source.nondeg(d) {
                if !self.assign[id].is_nondegenerate() {
                    return false;
                }
            }
        }
        self.is_injective_on_nondeg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::cells::standard_simplex;

    #[test]
    fn identity_is_iso() {
        let d2 = standard_simplex(2);
        let id = SimplicialMap::identity(&d2);
        assert!(id.check().is_ok());
        assert!(id.is_iso());
        assert!(id.is_mono());
    }

    #[test]
    fn collapse_to_point_is_not_mono() {
        let d1 = standard_simplex(1);
        let d0 = standard_simplex(0);
        let mut assign = BTreeMap::new();
        assign.insert("0".to_string(), SimplexRef::nondeg("0"));
        assign.insert("1".to_string(), SimplexRef::nondeg("0"));
        assign.insert("01".to_string(), SimplexRef::new("0", vec![0]));
        let f = SimplicialMap::new(d1, d0, assign).unwrap();
        assert!(!f.is_mono());
        assert!(!f.is_iso());
    }

    #[test]
    fn face_inclusion_checks_out() {
        // Include Delta^1 as the 02 edge of Delta^2.
        let d1 = standard_simplex(1);
        let d2 = standard_simplex(2);
        let mut assign = BTreeMap::new();
        assign.insert("0".to_string(), SimplexRef::nondeg("0"));
        assign.insert("1".to_string(), SimplexRef::nondeg("2"));
        assign.insert("01".to_string(), SimplexRef::nondeg("02"));
        let f = SimplicialMap::new(d1, d2, assign).unwrap();
        assert!(f.is_mono());
        // Degenerate edge images rewrite correctly.
        let v = SimplexRef::new("0", vec![0]);
        assert_eq!(f.apply(&v), SimplexRef::new("0", vec![0]));
    }

    #[test]
    fn bad_face_assignment_is_rejected() {
        let d1 = standard_simplex(1);
        let d2 = standard_simplex(2);
        let mut assign = BTreeMap::new();
        assign.insert("0".to_string(), SimplexRef::nondeg("0"));
        assign.insert("1".to_string(), SimplexRef::nondeg("1"));
        // 02 runs from 0 to 2, inconsistent with the vertex images.
        assign.insert("01".to_string(), SimplexRef::nondeg("02"));
        assert!(SimplicialMap::new(d1, d2, assign).is_err());
    }
}

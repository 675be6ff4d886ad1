//! Simplicial sets with distinguished cells: a *scaled* set carries a set of
//! thin 2-simplices, a *marked* set a set of marked edges.  Distinguished
//! sets are stored in full, i.e. every degenerate cell in the relevant
//! dimension is a member, so membership tests need no normalization.

use std::collections::BTreeSet;

use crate::simpset::{product, Limit, SimplexRef, SimplicialMap, SimplicialSet};

mod enriched;
mod io;
mod natural;

pub use enriched::{scaled_nerve, EnrichError, MarkedEnrichedCategory};
pub use io::{parse_enr, parse_mks, parse_scs, render_mks, render_scs};
pub use natural::{
    arrow_object_of_nerve, cartesian_edges_of_evaluation, cartesian_squares_oracle,
    natural_scaling,
};

/// A simplicial set with a distinguished set of thin 2-simplices containing
/// all degenerate ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSS {
    pub set: SimplicialSet,
    pub thin: BTreeSet<SimplexRef>,
}

/// A simplicial set with a distinguished set of marked edges containing all
/// degenerate ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSS {
    pub set: SimplicialSet,
    pub marked: BTreeSet<SimplexRef>,
}

fn degenerate_refs(set: &SimplicialSet, n: usize) -> BTreeSet<SimplexRef> {
    set.refs_at(n).into_iter().filter(|r| !r.word.is_empty()).collect()
}

impl ScaledSS {
    /// Minimal scaling: only degenerate 2-simplices are thin.
    pub fn flat(set: SimplicialSet) -> Self {
        let thin = degenerate_refs(&set, 2);
        ScaledSS { set, thin }
    }

    /// Maximal scaling: every 2-simplex is thin.
    pub fn sharp(set: SimplicialSet) -> Self {
        let thin = set.refs_at(2).into_iter().collect();
        ScaledSS { set, thin }
    }

    /// Scaling generated by an explicit list of 2-simplices; degenerate ones
    /// are added automatically.  Fails if a listed cell is not a valid
    /// 2-simplex of the set.
    pub fn explicit(set: SimplicialSet, cells: &[SimplexRef]) -> Result<Self, String> {
        let mut thin = degenerate_refs(&set, 2);
        for r in cells {
            if !set.ref_valid(r) || set.ref_dim(r) != 2 {
                return Err(format!("not a 2-simplex of the underlying set: {r}"));
            }
            thin.insert(r.clone());
        }
        Ok(ScaledSS { set, thin })
    }

    pub fn is_thin(&self, r: &SimplexRef) -> bool {
        self.thin.contains(r)
    }

    /// Checks that every thin cell is a valid 2-simplex and that all
    /// degenerate 2-simplices are thin.
    pub fn validate(&self) -> Result<(), String> {
        for r in &self.thin {
            if !self.set.ref_valid(r) || self.set.ref_dim(r) != 2 {
                return Err(format!("thin cell is not a 2-simplex: {r}"));
            }
        }
        for r in degenerate_refs(&self.set, 2) {
            if !self.thin.contains(&r) {
                return Err(format!("degenerate 2-simplex not thin: {r}"));
            }
        }
        Ok(())
    }
}

impl MarkedSS {
    /// Minimal marking: only degenerate edges are marked.
    pub fn flat(set: SimplicialSet) -> Self {
        let marked = degenerate_refs(&set, 1);
        MarkedSS { set, marked }
    }

    /// Maximal marking: every edge is marked.
    pub fn sharp(set: SimplicialSet) -> Self {
        let marked = set.refs_at(1).into_iter().collect();
        MarkedSS { set, marked }
    }

    /// Marking generated by an explicit list of edges.
    pub fn explicit(set: SimplicialSet, edges: &[SimplexRef]) -> Result<Self, String> {
        let mut marked = degenerate_refs(&set, 1);
        for r in edges {
            if !set.ref_valid(r) || set.ref_dim(r) != 1 {
                return Err(format!("not an edge of the underlying set: {r}"));
            }
            marked.insert(r.clone());
        }
        Ok(MarkedSS { set, marked })
    }

    pub fn is_marked(&self, r: &SimplexRef) -> bool {
        self.marked.contains(r)
    }

    pub fn validate(&self) -> Result<(), String> {
        for r in &self.marked {
            if !self.set.ref_valid(r) || self.set.ref_dim(r) != 1 {
                return Err(format!("marked cell is not an edge: {r}"));
            }
        }
        for r in degenerate_refs(&self.set, 1) {
            if !self.marked.contains(&r) {
                return Err(format!("degenerate edge not marked: {r}"));
            }
        }
        Ok(())
    }
}

/// Checks that a map of underlying sets sends thin cells to thin cells,
/// reporting the first violating cell otherwise.
pub fn check_scaled_map(
    f: &SimplicialMap,
    src: &ScaledSS,
    dst: &ScaledSS,
) -> Result<(), SimplexRef> {
    for r in &src.thin {
        if !dst.is_thin(&f.apply(r)) {
            return Err(r.clone());
        }
    }
    Ok(())
}

/// Checks that a map of underlying sets sends marked edges to marked edges.
pub fn check_marked_map(
    f: &SimplicialMap,
    src: &MarkedSS,
    dst: &MarkedSS,
) -> Result<(), SimplexRef> {
    for r in &src.marked {
        if !dst.is_marked(&f.apply(r)) {
            return Err(r.clone());
        }
    }
    Ok(())
}

/// Product of scaled sets: a 2-simplex is thin exactly when both of its
/// projections are thin.  Returns the product presentation alongside the
/// scaled set so callers can keep using its projections.
pub fn scaled_product(a: &ScaledSS, b: &ScaledSS) -> (ScaledSS, Limit) {
    let lim = product(&[&a.set, &b.set]);
    let mut thin = BTreeSet::new();
    for r in lim.set.refs_at(2) {
        let comps = lim.comps_of(&r);
        if a.is_thin(&comps[0]) && b.is_thin(&comps[1]) {
            thin.insert(r);
        }
    }
    (ScaledSS { set: lim.set.clone(), thin }, lim)
}

/// Scaled set on the opposite of the underlying set, with thin cells
/// transported through the reversal.
pub fn scaled_opposite(a: &ScaledSS) -> ScaledSS {
    let set = crate::simpset::opposite(&a.set);
    let thin = a.thin.iter().map(|r| crate::simpset::op_ref(&a.set, r)).collect();
    ScaledSS { set, thin }
}

fn prefixed(prefix: &str, r: &SimplexRef) -> SimplexRef {
    SimplexRef { base: format!("{prefix}{}", r.base), word: r.word.clone() }
}

/// Whether a simplex of the interval is constant at the given vertex.
fn interval_constant(r: &SimplexRef) -> Option<&str> {
    match r.base.as_str() {
        "0" => Some("0"),
        "1" => Some("1"),
        _ => None,
    }
}

/// Glues `y` and `k` along the two ends of the cylinder `y × k × Δ¹`: the
/// 0-end is collapsed onto `y`, the 1-end onto `k`.  A cylinder 2-simplex is
/// thin exactly when its projections to both ends are thin; the copies of
/// `y` and `k` keep their own scalings.
pub fn diamond_join(y: &ScaledSS, k: &ScaledSS) -> ScaledSS {
    let interval = crate::simpset::standard_simplex(1);
    let cyl = product(&[&y.set, &k.set, &interval]);

    // A pushout face lands on an end when its interval component is
    // constant; the identification replaces it by its y- or k-projection.
    let resolve = |r: &SimplexRef, lim: &Limit| -> SimplexRef {
        let comps = lim.comps_of(r);
        match interval_constant(&comps[2]) {
            Some("0") => prefixed("l:", &comps[0]),
            Some(_) => prefixed("r:", &comps[1]),
            None => lim.ref_of(&comps),
        }
    };

    let mut set = SimplicialSet::new();
    let top = y.set.dim().max(k.set.dim()).max(cyl.set.dim());
    for n in 0..=top {
        for id in y.set.nondeg(n) {
            let faces = if n == 0 {
                Vec::new()
            } else {
                y.set.faces_of(id).iter().map(|f| prefixed("l:", f)).collect()
            };
            set.add_simplex(format!("l:{id}"), n, faces);
        }
        for id in k.set.nondeg(n) {
            let faces = if n == 0 {
                Vec::new()
            } else {
                k.set.faces_of(id).iter().map(|f| prefixed("r:", f)).collect()
            };
            set.add_simplex(format!("r:{id}"), n, faces);
        }
        for id in cyl.set.nondeg(n) {
            let t = &cyl.comps_of(&SimplexRef::nondeg(id))[2];
            if interval_constant(t).is_some() {
                continue;
            }
            let faces = cyl
                .set
                .faces_of(id)
                .iter()
                .map(|f| resolve(f, &cyl))
                .collect();
            set.add_simplex(id.clone(), n, faces);
        }
    }

    let mut thin = degenerate_refs(&set, 2);
    for r in set.refs_at(2) {
        if let Some(base) = r.base.strip_prefix("l:") {
            if y.is_thin(&SimplexRef::new(base, r.word.clone())) {
                thin.insert(r);
            }
        } else if let Some(base) = r.base.strip_prefix("r:") {
            if k.is_thin(&SimplexRef::new(base, r.word.clone())) {
                thin.insert(r);
            }
        } else {
            let comps = cyl.comps_of(&r);
            if y.is_thin(&comps[0]) && k.is_thin(&comps[1]) {
                thin.insert(r);
            }
        }
    }
    ScaledSS { set, thin }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{boundary, standard_simplex};

    #[test]
    fn sharp_and_flat_scalings() {
        let flat = ScaledSS::flat(standard_simplex(2));
        let sharp = ScaledSS::sharp(standard_simplex(2));
        assert!(!flat.is_thin(&SimplexRef::nondeg("012")));
        assert!(sharp.is_thin(&SimplexRef::nondeg("012")));
        assert!(flat.is_thin(&SimplexRef::new("01", vec![0])));
        flat.validate().unwrap();
        sharp.validate().unwrap();
        assert_eq!(sharp.thin.len() - flat.thin.len(), 1);
    }

    #[test]
    fn explicit_scaling_rejects_non_cells() {
        let bad = SimplexRef::nondeg("013");
        assert!(ScaledSS::explicit(standard_simplex(2), &[bad]).is_err());
        let edge = SimplexRef::nondeg("01");
        assert!(ScaledSS::explicit(standard_simplex(2), &[edge]).is_err());
    }

    #[test]
    fn product_scaling_needs_both_projections_thin() {
        let a = ScaledSS::sharp(standard_simplex(1));
        let b = ScaledSS::flat(standard_simplex(1));
        let (ab, lim) = scaled_product(&a, &b);
        // Δ¹ is 1-dimensional, so its flat and sharp scalings coincide and
        // every square 2-simplex projects to degenerate cells on both sides.
        for r in ab.set.refs_at(2) {
            let comps = lim.comps_of(&r);
            assert_eq!(ab.is_thin(&r), comps[1].word.len() + 1 >= 2);
        }
        let (sharp2, _) = scaled_product(
            &ScaledSS::sharp(standard_simplex(1)),
            &ScaledSS::sharp(standard_simplex(1)),
        );
        for n in sharp2.set.nondeg(2) {
            assert!(sharp2.is_thin(&SimplexRef::nondeg(n)));
        }
        sharp2.validate().unwrap();
    }

    #[test]
    fn marked_maps_check_image_of_marking() {
        let src = MarkedSS::sharp(standard_simplex(1));
        let dst = MarkedSS::flat(standard_simplex(1));
        let id = SimplicialMap::identity(&standard_simplex(1));
        assert_eq!(check_marked_map(&id, &src, &dst), Err(SimplexRef::nondeg("01")));
        assert!(check_marked_map(&id, &dst, &src).is_ok());
    }

    #[test]
    fn diamond_of_two_points_is_an_interval() {
        let pt = ScaledSS::flat(standard_simplex(0));
        let d = diamond_join(&pt, &pt);
        d.set.validate().unwrap();
        d.validate().unwrap();
        assert_eq!(d.set.nondeg(0).len(), 2);
        assert_eq!(d.set.nondeg(1).len(), 1);
        assert_eq!(d.set.dim(), 1);
    }

    #[test]
    fn diamond_with_empty_side_is_the_other_side() {
        let empty = ScaledSS::flat(SimplicialSet::new());
        let k = ScaledSS::sharp(standard_simplex(2));
        let d = diamond_join(&empty, &k);
        assert_eq!(d.set.size(), k.set.size());
        assert!(d.is_thin(&SimplexRef::nondeg("r:012")));
    }

    #[test]
    fn diamond_interval_boundaries() {
        // (∂Δ¹)◇(∂Δ¹): 4 vertices and a 2×2 grid of squares glued in.
        let s0 = ScaledSS::flat(boundary(1));
        let d = diamond_join(&s0, &s0);
        d.set.validate().unwrap();
        assert_eq!(d.set.nondeg(0).len(), 4);
        // Each of the 4 point pairs contributes one cylinder edge, and the
        // cylinder over a point pair is just an interval.
        assert_eq!(d.set.nondeg(1).len(), 4);
        assert_eq!(d.set.dim(), 1);
    }

    #[test]
    fn diamond_point_with_interval() {
        // pt ◇ Δ¹ is a cone-like triangle: cylinder pt×Δ¹×Δ¹ with one end
        // collapsed to the point and the other glued along Δ¹.
        let pt = ScaledSS::flat(standard_simplex(0));
        let i = ScaledSS::flat(standard_simplex(1));
        let d = diamond_join(&pt, &i);
        d.set.validate().unwrap();
        assert_eq!(d.set.nondeg(0).len(), 3);
        assert_eq!(d.set.euler(), 1);
        // The square 2-cells project to a degenerate cell on the point side
        // and to cells of Δ¹ on the other, so they are all thin.
        for t in d.set.nondeg(2) {
            assert!(d.is_thin(&SimplexRef::nondeg(t)));
        }
    }
}

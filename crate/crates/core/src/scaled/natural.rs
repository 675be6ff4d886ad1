//! The scaling a map earns from its Cartesian 2-simplices, plus the
//! classical square-criterion oracle it is tested against.

use std::collections::BTreeSet;

use crate::lifting::{is_cartesian_edge, two_simplex_as_arrow_edge};
use crate::simpset::{
    apply_assign, exponential, nerve, product, standard_simplex, Exponential, FinCategory,
    SimplexRef, SimplicialMap, SimplicialSet,
};

use super::ScaledSS;

/// Scales the source of `p` by its Cartesian 2-simplices, detected at bound
/// `d`; degenerate 2-simplices are thin by definition.
pub fn natural_scaling(p: &SimplicialMap, d: usize) -> ScaledSS {
    let x = &p.source;
    let exp = exponential(&standard_simplex(1), x, d);
    let down = exp.eval_at_vertex("0").then(p);
    let d_edge = d.saturating_sub(2);
    let mut thin: BTreeSet<SimplexRef> =
        x.refs_at(2).into_iter().filter(|r| !r.word.is_empty()).collect();
    for id in x.nondeg(2) {
        let phi = SimplexRef::nondeg(id.clone());
        let edge = two_simplex_as_arrow_edge(&exp, x, &phi);
        if is_cartesian_edge(&down, &edge, d_edge).unwrap_or(false) {
            thin.insert(phi);
        }
    }
    ScaledSS { set: x.clone(), thin }
}

/// The edges of `Fun(Δ¹, N(c))` that are Cartesian for evaluation at 0,
/// computed by the classical criterion: an edge of the arrow object is a
/// square of morphisms, and it is Cartesian over the source evaluation
/// exactly when its target-side component is an isomorphism.  Independent
/// of the lifting machinery.
pub fn cartesian_squares_oracle(exp: &Exponential, c: &FinCategory) -> BTreeSet<SimplexRef> {
    let interval = standard_simplex(1);
    let square = product(&[&interval, &interval]);
    // The bottom of the square: the time edge at source-coordinate 1.
    let bottom_cell = square.ref_of(&[SimplexRef::new("1", vec![0]), SimplexRef::nondeg("01")]);
    let mut out = BTreeSet::new();
    for (idx, g) in exp.levels[1].iter().enumerate() {
        let bottom = apply_assign(g, &bottom_cell);
        let is_iso = bottom.word.is_empty()
            && c.mor_index(&bottom.base).map(|f| c.is_iso(f)).unwrap_or(false);
        if !bottom.word.is_empty() || is_iso {
            out.insert(exp.ref_of_assignment(1, &exp.levels[1][idx].clone()));
        }
    }
    out
}

/// Detector-side Cartesian edges of the evaluation map, for comparison with
/// the oracle.
pub fn cartesian_edges_of_evaluation(
    exp: &Exponential,
    target: &SimplicialSet,
    d_edge: usize,
) -> BTreeSet<SimplexRef> {
    let _ = target;
    let ev0 = exp.eval_at_vertex("0");
    let mut out = BTreeSet::new();
    for r in exp.set.refs_at(1) {
        if is_cartesian_edge(&ev0, &r, d_edge).unwrap_or(false) {
            out.insert(r);
        }
    }
    out
}

/// Shared setup for the evaluation-map corpus: the arrow object of a nerve,
/// truncated at `depth`.
pub fn arrow_object_of_nerve(c: &FinCategory, depth: usize) -> Exponential {
    let n = nerve(c, depth + 1);
    exponential(&standard_simplex(1), &n, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_marks_degenerate_edges_cartesian() {
        let exp = arrow_object_of_nerve(&FinCategory::poset(1), 2);
        let oracle = cartesian_squares_oracle(&exp, &FinCategory::poset(1));
        for r in &oracle {
            assert!(exp.set.ref_valid(r));
        }
        // Identity components are isomorphisms, so every degenerate edge of
        // the arrow object shows up in the oracle.
        for r in exp.set.refs_at(1) {
            if !r.word.is_empty() {
                assert!(oracle.contains(&r), "degenerate edge {r} missing");
            }
        }
    }

    #[test]
    fn detector_matches_oracle_on_the_interval() {
        let c = FinCategory::poset(1);
        let exp = arrow_object_of_nerve(&c, 3);
        let oracle = cartesian_squares_oracle(&exp, &c);
        let detected = cartesian_edges_of_evaluation(&exp, &exp.target, 1);
        assert_eq!(detected, oracle);
    }

    #[test]
    fn natural_scaling_of_identity_is_sharp() {
        let x = nerve(&FinCategory::poset(2), 4);
        let scaled = natural_scaling(&SimplicialMap::identity(&x), 3);
        assert_eq!(scaled.thin, ScaledSS::sharp(x).thin);
    }
}

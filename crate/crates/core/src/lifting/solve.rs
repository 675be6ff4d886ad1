//! The diagonal-filler solver for decorated lifting problems.

use std::collections::{BTreeMap, BTreeSet};

use crate::scaled::{MarkedSS, ScaledSS};
use crate::simpset::{SimplexRef, SimplicialMap, SimplicialSet};
use thiserror::Error;

/// Extra structure carried by the objects of a lifting problem: nothing, a
/// set of marked edges, or a set of thin 2-simplices.  Distinguished sets
/// always contain the degenerate cells of their dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoration {
    Plain,
    Marked(BTreeSet<SimplexRef>),
    Scaled(BTreeSet<SimplexRef>),
}

impl Decoration {
    /// Dimension of the decorated cells, if any.
    pub fn cell_dim(&self) -> Option<usize> {
        match self {
            Decoration::Plain => None,
            Decoration::Marked(_) => Some(1),
            Decoration::Scaled(_) => Some(2),
        }
    }

    pub fn members(&self) -> Option<&BTreeSet<SimplexRef>> {
        match self {
            Decoration::Plain => None,
            Decoration::Marked(m) | Decoration::Scaled(m) => Some(m),
        }
    }

    pub fn same_flavor(&self, other: &Decoration) -> bool {
        self.cell_dim() == other.cell_dim()
    }
}

/// A map of simplicial sets together with the decorations of its endpoints.
#[derive(Clone, Debug)]
pub struct DecoratedMap {
    pub map: SimplicialMap,
    pub src_dec: Decoration,
    pub dst_dec: Decoration,
}

impl DecoratedMap {
    pub fn plain(map: SimplicialMap) -> Self {
        DecoratedMap { map, src_dec: Decoration::Plain, dst_dec: Decoration::Plain }
    }

    pub fn marked(map: SimplicialMap, src: &MarkedSS, dst: &MarkedSS) -> Self {
        DecoratedMap {
            map,
            src_dec: Decoration::Marked(src.marked.clone()),
            dst_dec: Decoration::Marked(dst.marked.clone()),
        }
    }

    pub fn scaled(map: SimplicialMap, src: &ScaledSS, dst: &ScaledSS) -> Self {
        DecoratedMap {
            map,
            src_dec: Decoration::Scaled(src.thin.clone()),
            dst_dec: Decoration::Scaled(dst.thin.clone()),
        }
    }

    /// Forgets decorations but keeps the underlying map.
    pub fn underlying(&self) -> DecoratedMap {
        DecoratedMap::plain(self.map.clone())
    }

    /// Checks the underlying map and that decorated cells land on decorated
    /// cells.
    pub fn check(&self) -> Result<(), String> {
        self.map.check()?;
        if !self.src_dec.same_flavor(&self.dst_dec) {
            return Err("endpoint decorations have different flavors".into());
        }
        if let (Some(src), Some(dst)) = (self.src_dec.members(), self.dst_dec.members()) {
            for r in src {
                if !dst.contains(&self.map.apply(r)) {
                    return Err(format!("decorated cell {r} maps to an undecorated cell"));
                }
            }
        }
        Ok(())
    }
}

/// A commuting square asking for a diagonal `B -> X`: `i: A -> B` on the
/// left, `p: X -> S` on the right, `top: A -> X`, `bottom: B -> S`.
pub struct LiftingProblem<'a> {
    pub i: &'a DecoratedMap,
    pub p: &'a DecoratedMap,
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("lifting square does not commute at {0}")]
    NonCommuting(String),
    #[error("lifting square mixes decoration flavors")]
    FlavorMismatch,
}

fn word_apply(r: &SimplexRef, word: &[usize]) -> SimplexRef {
    let mut out = r.clone();
    for &j in word.iter().rev() {
        out = out.degenerate(j);
    }
    out
}

/// Returns every diagonal filler of the square, in a canonical order.  A
/// filler must make both triangles commute and, when the problem is marked
/// or scaled, send decorated cells of `B` to decorated cells of `X`.
pub fn solve_lifting(q: &LiftingProblem) -> Result<Vec<SimplicialMap>, LiftError> {
    if !q.i.src_dec.same_flavor(&q.p.src_dec) {
        return Err(LiftError::FlavorMismatch);
    }
    let a = &q.i.map.source;
    let b = &q.i.map.target;
    let x = &q.p.map.source;
    for n in 0..=a.dim() {
        for id in a.nondeg(n) {
            let r = SimplexRef::nondeg(id.clone());
            if q.p.map.apply(&q.top.apply(&r)) != q.bottom.apply(&q.i.map.apply(&r)) {
                return Err(LiftError::NonCommuting(id.clone()));
            }
        }
    }

    // Iterate the simplices of B in dimension order so faces are assigned
    // before the cells they bound.
    let mut order: Vec<String> = Vec::new();
    for n in 0..=b.dim() {
        order.extend(b.nondeg(n).iter().cloned());
    }

    // Constraints transported along i: if i(a) = (c, w) then the filler must
    // satisfy word_apply(h(c), w) = top(a).
    let mut pinned: BTreeMap<String, Vec<(Vec<usize>, SimplexRef)>> = BTreeMap::new();
    for n in 0..=a.dim() {
        for id in a.nondeg(n) {
            let image = q.i.map.apply(&SimplexRef::nondeg(id.clone()));
            let want = q.top.apply(&SimplexRef::nondeg(id.clone()));
            pinned.entry(image.base.clone()).or_default().push((image.word, want));
        }
    }

    // Decorated cells of B whose images are constrained, by base simplex.
    let mut decorated: BTreeMap<String, Vec<Vec<usize>>> = BTreeMap::new();
    if let Some(members) = q.i.dst_dec.members() {
        for r in members {
            decorated.entry(r.base.clone()).or_default().push(r.word.clone());
        }
    }
    let target_members = q.p.src_dec.members();

    let mut assign: BTreeMap<String, SimplexRef> = BTreeMap::new();
    let mut found = Vec::new();
    search(q, b, x, &order, &pinned, &decorated, target_members, 0, &mut assign, &mut found);
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    q: &LiftingProblem,
    b: &SimplicialSet,
    x: &SimplicialSet,
    order: &[String],
    pinned: &BTreeMap<String, Vec<(Vec<usize>, SimplexRef)>>,
    decorated: &BTreeMap<String, Vec<Vec<usize>>>,
    target_members: Option<&BTreeSet<SimplexRef>>,
    pos: usize,
    assign: &mut BTreeMap<String, SimplexRef>,
    found: &mut Vec<SimplicialMap>,
) {
    if pos == order.len() {
        found.push(SimplicialMap::new_unchecked(b.clone(), x.clone(), assign.clone()));
        return;
    }
    let id = &order[pos];
    let n = b.dim_of(id);
    let below = q.bottom.apply(&SimplexRef::nondeg(id.clone()));
    'cand: for cand in x.refs_at(n) {
        if q.p.map.apply(&cand) != below {
            continue;
        }
        if let Some(conds) = pinned.get(id) {
            for (w, want) in conds {
                if word_apply(&cand, w) != *want {
                    continue 'cand;
                }
            }
        }
        if let (Some(words), Some(members)) = (decorated.get(id), target_members) {
            for w in words {
                if !members.contains(&word_apply(&cand, w)) {
                    continue 'cand;
                }
            }
        }
        if n > 0 {
            for (i, face) in b.faces_of(id).iter().enumerate() {
                let mut img = assign[&face.base].clone();
                for &j in face.word.iter().rev() {
                    img = img.degenerate(j);
                }
                if x.face_of_ref(&cand, i) != img {
                    continue 'cand;
                }
            }
        }
        assign.insert(id.clone(), cand);
        search(q, b, x, order, pinned, decorated, target_members, pos + 1, assign, found);
        assign.remove(id);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::{enumerate_maps, horn, nerve, standard_simplex, FinCategory};

    fn poset_nerve(n: usize) -> SimplicialSet {
        nerve(&FinCategory::poset(n), n.max(2) + 1)
    }

    fn inner_horn_problem(target: &SimplicialSet, top: SimplicialMap) -> Vec<SimplicialMap> {
        let h = horn(2, 1).unwrap();
        let i = DecoratedMap::plain(SimplicialMap::new_unchecked(
            h.clone(),
            standard_simplex(2),
            h.nondeg(0)
                .iter()
                .chain(h.nondeg(1))
                .map(|id| (id.clone(), SimplexRef::nondeg(id.clone())))
                .collect(),
        ));
        let point = standard_simplex(0);
        let p = DecoratedMap::plain(SimplicialMap::new_unchecked(
            target.clone(),
            point.clone(),
            constant_assign(target),
        ));
        let bottom = SimplicialMap::new_unchecked(
            standard_simplex(2),
            point,
            constant_assign(&standard_simplex(2)),
        );
        let q = LiftingProblem { i: &i, p: &p, top, bottom };
        solve_lifting(&q).unwrap()
    }

    fn constant_assign(s: &SimplicialSet) -> BTreeMap<String, SimplexRef> {
        let mut assign = BTreeMap::new();
        for n in 0..=s.dim() {
            for id in s.nondeg(n) {
                assign.insert(
                    id.clone(),
                    SimplexRef::new("0", (0..n).rev().collect::<Vec<_>>()),
                );
            }
        }
        assign
    }

    #[test]
    fn poset_inner_horn_has_unique_composite() {
        let target = poset_nerve(2);
        let top = SimplicialMap::new_unchecked(
            horn(2, 1).unwrap(),
            target.clone(),
            [
                ("0", SimplexRef::nondeg("0")),
                ("1", SimplexRef::nondeg("1")),
                ("2", SimplexRef::nondeg("2")),
                ("01", SimplexRef::nondeg("0->1")),
                ("12", SimplexRef::nondeg("1->2")),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        );
        let fillers = inner_horn_problem(&target, top);
        assert_eq!(fillers.len(), 1);
        assert_eq!(
            fillers[0].assign["02"],
            SimplexRef::nondeg("0->2"),
            "the diagonal must pick out the composite edge"
        );
    }

    #[test]
    fn group_nerve_horns_compose_uniquely() {
        let target = nerve(&FinCategory::cyclic(2), 3);
        let g = SimplexRef::nondeg("g1");
        let top = SimplicialMap::new_unchecked(
            horn(2, 1).unwrap(),
            target.clone(),
            [
                ("0", SimplexRef::nondeg("*")),
                ("1", SimplexRef::nondeg("*")),
                ("2", SimplexRef::nondeg("*")),
                ("01", g.clone()),
                ("12", g.clone()),
            ]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        );
        let fillers = inner_horn_problem(&target, top);
        assert_eq!(fillers.len(), 1);
        // g * g = e, so the long edge is the degenerate identity loop.
        assert_eq!(fillers[0].assign["02"], SimplexRef::new("*", vec![0]));
    }

    #[test]
    fn missing_edge_means_no_filler() {
        // Two discrete points admit no edge, so ∂Δ¹ ↪ Δ¹ cannot fill.
        let mut x = SimplicialSet::new();
        x.add_simplex("a", 0, vec![]);
        x.add_simplex("b", 0, vec![]);
        let bd = crate::simpset::boundary(1);
        let i = DecoratedMap::plain(SimplicialMap::new_unchecked(
            bd.clone(),
            standard_simplex(1),
            [("0", "0"), ("1", "1")]
                .into_iter()
                .map(|(k, v)| (k.to_string(), SimplexRef::nondeg(v)))
                .collect(),
        ));
        let point = standard_simplex(0);
        let p = DecoratedMap::plain(SimplicialMap::new_unchecked(
            x.clone(),
            point.clone(),
            constant_assign(&x),
        ));
        let top = SimplicialMap::new_unchecked(
            bd,
            x,
            [("0", "a"), ("1", "b")]
                .into_iter()
                .map(|(k, v)| (k.to_string(), SimplexRef::nondeg(v)))
                .collect(),
        );
        let bottom = SimplicialMap::new_unchecked(
            standard_simplex(1),
            point,
            constant_assign(&standard_simplex(1)),
        );
        let q = LiftingProblem { i: &i, p: &p, top, bottom };
        assert!(solve_lifting(&q).unwrap().is_empty());
    }

    #[test]
    fn fillers_agree_with_unconstrained_enumeration() {
        // Against the terminal base, every filler is just a map extending
        // the horn, so the solver must agree with the generic enumerator.
        let target = poset_nerve(2);
        let enumerated = enumerate_maps(&horn(2, 1).unwrap(), &target, &BTreeMap::new());
        let mut total = 0;
        for u in &enumerated {
            let fillers = inner_horn_problem(
                &target,
                SimplicialMap::new_unchecked(horn(2, 1).unwrap(), target.clone(), u.clone()),
            );
            for h in &fillers {
                h.check().unwrap();
            }
            total += fillers.len();
        }
        // Nerves of posets have unique inner-horn fillers.
        assert_eq!(total, enumerated.len());
    }

    #[test]
    fn marked_problems_reject_unmarked_images() {
        // Lift the marked interval against a target whose only marked edges
        // are degenerate: the unique candidate diagonal is rejected.
        let interval = standard_simplex(1);
        let vertex = standard_simplex(0);
        let incl = SimplicialMap::new_unchecked(
            vertex.clone(),
            interval.clone(),
            [("0".to_string(), SimplexRef::nondeg("1"))].into_iter().collect(),
        );
        let i = DecoratedMap {
            map: incl,
            src_dec: Decoration::Marked(vertex.refs_at(1).into_iter().collect()),
            dst_dec: Decoration::Marked(interval.refs_at(1).into_iter().collect()),
        };
        let sharp_target = MarkedSS::flat(interval.clone());
        let p = DecoratedMap {
            map: SimplicialMap::identity(&interval),
            src_dec: Decoration::Marked(sharp_target.marked.clone()),
            dst_dec: Decoration::Marked(MarkedSS::sharp(interval.clone()).marked),
        };
        let top = SimplicialMap::new_unchecked(
            vertex,
            interval.clone(),
            [("0".to_string(), SimplexRef::nondeg("1"))].into_iter().collect(),
        );
        let bottom = SimplicialMap::identity(&interval);
        let q = LiftingProblem { i: &i, p: &p, top, bottom };
        assert!(solve_lifting(&q).unwrap().is_empty());
        // The plain shadow of the same square does have its filler.
        let q = LiftingProblem { i: &i.underlying(), p: &p.underlying(), top: q.top, bottom: q.bottom };
        assert_eq!(solve_lifting(&q).unwrap().len(), 1);
    }
}

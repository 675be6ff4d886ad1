//! Stock diagrams: the terminal diagram, diagrams of monoid tuples, the
//! pullback along the constant-decoration projection, and the canonical
//! contraction shape used by the tensor comparison.

use std::collections::BTreeMap;

use crate::opcat::OperatorCategory;
use crate::seqcat::{
    chain_composite, delta_phi_data, Phi2Sequence, PhiSeqMap, PhiSequence, WreathInclusion,
};
use crate::simpset::{SimplexRef, SimplicialMap, SimplicialSet};

use super::{point_space, DiagramBase, OperadDiagram, SegalError};

/// A finite monoid on named elements, presented by its multiplication
/// table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    pub elems: Vec<String>,
    pub unit: usize,
    table: Vec<Vec<usize>>,
}

impl Monoid {
    /// The cyclic group of order `n` under addition, elements named by
    /// residue.
    pub fn cyclic(n: usize) -> Monoid {
        assert!(n > 0, "a monoid needs at least a unit");
        let elems = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Monoid { elems, unit: 0, table }
    }

    /// Builds a monoid from an explicit table, checking the unit and
    /// associativity laws.  Commutativity is deliberately not required; the
    /// diagram builders detect its absence on their own.
    pub fn from_table(
        elems: Vec<String>,
        unit: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<Monoid, SegalError> {
        let n = elems.len();
        if unit >= n || table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(SegalError::Malformed("the table is not square on the elements".into()));
        }
        if table.iter().flatten().any(|&e| e >= n) {
            return Err(SegalError::Malformed("a product leaves the element list".into()));
        }
        for a in 0..n {
            if table[unit][a] != a || table[a][unit] != a {
                return Err(SegalError::Malformed(format!(
                    "{} does not act as a unit on {}",
                    elems[unit], elems[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(SegalError::Malformed(format!(
                            "associativity fails on {}, {}, {}",
                            elems[a], elems[b], elems[c]
                        )));
                    }
                }
            }
        }
        Ok(Monoid { elems, unit, table })
    }

    /// The product of two elements.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// All tuples of the given length over `card` symbols, first coordinate
/// slowest.
fn tuples(card: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..card).map(move |e| {
                    let mut s = t.clone();
                    s.push(e);
                    s
                })
            })
            .collect();
    }
    out
}

fn tuple_name(m: &Monoid, t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().map(|&e| m.elems[e].as_str()).collect();
    format!("({})", parts.join(","))
}

/// The discrete set with one vertex per tuple of `k` monoid elements.
fn tuple_space(m: &Monoid, k: usize) -> SimplicialSet {
    let mut out = SimplicialSet::new();
    for t in tuples(m.elems.len(), k) {
        out.add_simplex(tuple_name(m, &t), 0, vec![]);
    }
    out
}

/// The structure map induced by a chain map: a tuple indexed by the points
/// of the target's first stage is pushed to a tuple indexed by the points
/// of the source's first stage by summing, in point order, over the points
/// that land on each image point through the target chain.
fn tuple_sum_map(
    m: &Monoid,
    phi: &OperatorCategory,
    src_seq: &PhiSequence,
    tgt_seq: &PhiSequence,
    map: &PhiSeqMap,
    from: &SimplicialSet,
    to: &SimplicialSet,
) -> SimplicialMap {
    let cat = phi.carrier();
    let i_points = phi.points(src_seq.objects[0]);
    let j_points = phi.points(tgt_seq.objects[0]);
    let through = chain_composite(cat, tgt_seq, 0, map.p[0]);
    let buckets: Vec<Vec<usize>> = i_points
        .iter()
        .map(|&ipt| {
            let want = cat.compose(map.q[0], ipt);
            (0..j_points.len()).filter(|&j| cat.compose(through, j_points[j]) == want).collect()
        })
        .collect();
    let mut assign = BTreeMap::new();
    for t in tuples(m.elems.len(), j_points.len()) {
        let image: Vec<usize> =
            buckets.iter().map(|b| b.iter().fold(m.unit, |acc, &j| m.mul(acc, t[j]))).collect();
        assign.insert(tuple_name(m, &t), SimplexRef::nondeg(tuple_name(m, &image)));
    }
    SimplicialMap::new_unchecked(from.clone(), to.clone(), assign)
}

/// A diagram valued in powers of a finite monoid: the value at a chain is
/// one vertex per tuple of elements indexed by the points of its first
/// stage, and chain maps act by the pointwise fiber sums.  Every functor
/// law is verified on the way out, so a monoid whose sums depend on the
/// order of the points, which only a commutative monoid avoids over bases
/// with permutations, is rejected with a witness.
pub fn monoid_operad(
    m: &Monoid,
    phi: &OperatorCategory,
    n_max: usize,
    size_max: usize,
) -> Result<OperadDiagram, SegalError> {
    let data = delta_phi_data(phi, n_max, size_max)?;
    let values: Vec<SimplicialSet> = data
        .objects
        .iter()
        .map(|seq| tuple_space(m, phi.points(seq.objects[0]).len()))
        .collect();
    let mut arrows = Vec::new();
    for (mi, map) in data.maps.iter().enumerate() {
        let info = &data.truncated.category.mors[mi];
        arrows.push(tuple_sum_map(
            m,
            phi,
            &data.objects[info.src],
            &data.objects[info.tgt],
            map,
            &values[info.tgt],
            &values[info.src],
        ));
    }
    let x = OperadDiagram { phi: phi.clone(), base: DiagramBase::Chains(data), values, arrows };
    x.validate()?;
    Ok(x)
}

/// The diagram with a single point at every object and identity arrows.
pub fn terminal_diagram(phi: &OperatorCategory, base: DiagramBase) -> OperadDiagram {
    let objects = base.category().objects.len();
    let mors = base.category().mors.len();
    let values = vec![point_space(); objects];
    let arrows = (0..mors).map(|_| SimplicialMap::identity(&values[0])).collect();
    OperadDiagram { phi: phi.clone(), base, values, arrows }
}

/// Reindexes a plain-chain diagram along the projection that forgets
/// decorations, giving the decorated diagram whose value at a decorated
/// chain is the value at its outer chain.
pub fn pullback_diagram(
    x: &OperadDiagram,
    w: &WreathInclusion,
) -> Result<OperadDiagram, SegalError> {
    let DiagramBase::Chains(data) = &x.base else {
        return Err(SegalError::Base("only plain-chain diagrams pull back".into()));
    };
    if data.truncated.category != w.sequences.truncated.category {
        return Err(SegalError::Base(
            "the diagram base differs from the plain side of the projection".into(),
        ));
    }
    let values = w.project.obj_map.iter().map(|&o| x.values[o].clone()).collect();
    let arrows = w.project.mor_map.iter().map(|&m| x.arrows[m].clone()).collect();
    Ok(OperadDiagram {
        phi: x.phi.clone(),
        base: DiagramBase::Doubled(w.doubled.clone()),
        values,
        arrows,
    })
}

/// The index of the decorated chain that contracts the given object to the
/// terminal in one step, decorated at every stage by the constant terminal
/// chain of the forced degree; `None` when the base is plain or does not
/// enumerate that chain.
pub fn tensor_object(x: &OperadDiagram, i0: usize) -> Option<usize> {
    let DiagramBase::Doubled(d) = &x.base else { return None };
    let phi = &x.phi;
    let cat = phi.carrier();
    let term = phi.terminal();
    let outer = PhiSequence { objects: vec![i0, term], arrows: vec![phi.terminal_map(i0)] };
    let decorations = outer
        .objects
        .iter()
        .map(|&o| {
            let deg = phi.points(o).len();
            PhiSequence { objects: vec![term; deg + 1], arrows: vec![cat.identity[term]; deg] }
        })
        .collect();
    d.object_index(&Phi2Sequence { outer, decorations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcat::{finite_sets, trivial};
    use crate::seqcat::{delta_phi_box_data, wreath_inclusion};

    fn left_zero_with_unit() -> Monoid {
        Monoid::from_table(
            vec!["e".into(), "a".into(), "b".into()],
            0,
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_tables_pass_the_law_checks() {
        let z3 = Monoid::cyclic(3);
        assert_eq!(z3.mul(2, 2), 1);
        assert!(Monoid::from_table(z3.elems.clone(), z3.unit, z3.table.clone()).is_ok());
    }

    #[test]
    fn broken_tables_are_rejected() {
        let not_unital =
            Monoid::from_table(vec!["e".into(), "a".into()], 0, vec![vec![0, 0], vec![1, 1]]);
        assert!(matches!(not_unital, Err(SegalError::Malformed(_))));
        let not_associative = Monoid::from_table(
            vec!["e".into(), "a".into(), "b".into()],
            0,
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 1]],
        );
        assert!(matches!(not_associative, Err(SegalError::Malformed(_))));
    }

    #[test]
    fn monoid_values_are_powers_indexed_by_first_stage_points() {
        let phi = finite_sets(2);
        let x = monoid_operad(&Monoid::cyclic(2), &phi, 1, 2).unwrap();
        let DiagramBase::Chains(data) = &x.base else { unreachable!() };
        for (o, seq) in data.objects.iter().enumerate() {
            let k = phi.points(seq.objects[0]).len();
            assert_eq!(x.values[o].dim(), 0);
            assert_eq!(x.values[o].nondeg(0).len(), 2usize.pow(k as u32));
        }
    }

    #[test]
    fn noncommutative_monoids_fail_functoriality() {
        let phi = finite_sets(2);
        let err = monoid_operad(&left_zero_with_unit(), &phi, 2, 2).unwrap_err();
        assert!(matches!(err, SegalError::Malformed(_)));
    }

    #[test]
    fn noncommutative_monoids_survive_bases_without_permutations() {
        let phi = trivial();
        assert!(monoid_operad(&left_zero_with_unit(), &phi, 2, 1).is_ok());
    }

    #[test]
    fn pullback_requires_the_matching_plain_base() {
        let phi = trivial();
        let w = wreath_inclusion(&phi, 1, 1).unwrap();
        let doubled = terminal_diagram(&phi, DiagramBase::Doubled(w.doubled.clone()));
        assert!(matches!(pullback_diagram(&doubled, &w), Err(SegalError::Base(_))));
        let other_bounds = monoid_operad(&Monoid::cyclic(2), &phi, 2, 1).unwrap();
        assert!(matches!(pullback_diagram(&other_bounds, &w), Err(SegalError::Base(_))));
    }

    #[test]
    fn pullback_values_are_outer_shadows() {
        let phi = trivial();
        let x = monoid_operad(&Monoid::cyclic(2), &phi, 1, 1).unwrap();
        let w = wreath_inclusion(&phi, 1, 1).unwrap();
        let y = pullback_diagram(&x, &w).unwrap();
        y.validate().unwrap();
        assert!(y.base.is_doubled());
        for (b, value) in y.values.iter().enumerate() {
            assert_eq!(*value, x.values[w.project.obj_map[b]]);
        }
    }

    #[test]
    fn tensor_object_is_the_contraction_with_terminal_decorations() {
        let phi = finite_sets(1);
        let base = delta_phi_box_data(&phi, 1, 1, 1).unwrap();
        let x = terminal_diagram(&phi, DiagramBase::Doubled(base));
        let empty = phi.carrier().object_index("0").unwrap();
        let o = tensor_object(&x, empty).unwrap();
        let DiagramBase::Doubled(d) = &x.base else { unreachable!() };
        let seq = &d.objects[o];
        assert_eq!(seq.outer.objects, vec![empty, phi.terminal()]);
        assert_eq!(seq.decorations[0].degree(), 0);
        assert_eq!(seq.decorations[1].degree(), 1);
        assert!(seq
            .decorations
            .iter()
            .all(|dec| dec.objects.iter().all(|&ob| ob == phi.terminal())));
        let plain = monoid_operad(&Monoid::cyclic(2), &phi, 1, 1).unwrap();
        assert_eq!(tensor_object(&plain, empty), None);
    }
}

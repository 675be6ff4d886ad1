//! Wreath products of operator categories.
//!
//! An object pairs an outer object `X` with one inner object per point of
//! `X`; a morphism pairs an outer map with one inner map per source point,
//! landing in the component over the image point. Designated fibers are
//! assembled componentwise from the factors' tables and then re-verified
//! against the pullback property.

use super::{Fiber, OperatorCategory, OperatorError};
use crate::simpset::{FinCategory, MorInfo};
use std::collections::BTreeMap;

/// Default cap on the object count of a wreath product.
pub const SIZE_BOUND: usize = 200;

/// All tuples of the given length over the lists of choices, lexicographic.
fn cartesian(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut acc = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::new();
        for base in &acc {
            for &x in c {
                let mut b = base.clone();
                b.push(x);
                next.push(b);
            }
        }
        acc = next;
    }
    acc
}

/// The wreath product of two operator categories, which both must already
/// satisfy `check`. Fails when the object count would exceed `bound`.
pub fn wreath(
    outer: &OperatorCategory,
    inner: &OperatorCategory,
    bound: usize,
) -> Result<OperatorCategory, OperatorError> {
    let oc = outer.carrier();
    let ic = inner.carrier();
    let opts: Vec<Vec<usize>> = (0..oc.objects.len()).map(|x| outer.points(x)).collect();
    let obj_choices: Vec<usize> = (0..ic.objects.len()).collect();

    let mut objs: Vec<(usize, Vec<usize>)> = Vec::new();
    for x in 0..oc.objects.len() {
        for ys in cartesian(&vec![obj_choices.clone(); opts[x].len()]) {
            objs.push((x, ys));
        }
    }
    if objs.len() > bound {
        return Err(OperatorError::SizeBound { count: objs.len(), bound });
    }
    let obj_idx: BTreeMap<(usize, Vec<usize>), usize> =
        objs.iter().cloned().zip(0..).collect();
    let obj_name = |o: &(usize, Vec<usize>)| -> String {
        let ys: Vec<String> = o.1.iter().map(|&y| ic.objects[y].clone()).collect();
        format!("({}|{})", oc.objects[o.0], ys.join(","))
    };

    // Position of each source point's image among the target's points.
    let image_pos = |x: usize, x2: usize, f: usize| -> Vec<usize> {
        opts[x]
            .iter()
            .map(|&tau| {
                let ft = oc.compose(f, tau);
                opts[x2].iter().position(|&p| p == ft).expect("points are closed")
            })
            .collect()
    };

    struct WMor {
        src: usize,
        tgt: usize,
        f: usize,
        ks: Vec<usize>,
    }
    let mut wmors: Vec<WMor> = Vec::new();
    for (si, (x, ys)) in objs.iter().enumerate() {
        for (ti, (x2, ys2)) in objs.iter().enumerate() {
            for f in oc.hom(*x, *x2) {
                let pos = image_pos(*x, *x2, f);
                let choices: Vec<Vec<usize>> =
                    (0..opts[*x].len()).map(|t| ic.hom(ys[t], ys2[pos[t]])).collect();
                for ks in cartesian(&choices) {
                    wmors.push(WMor { src: si, tgt: ti, f, ks });
                }
            }
        }
    }
    let mor_idx: BTreeMap<(usize, usize, usize, Vec<usize>), usize> = wmors
        .iter()
        .enumerate()
        .map(|(i, m)| ((m.src, m.tgt, m.f, m.ks.clone()), i))
        .collect();

    let mut identity = vec![usize::MAX; objs.len()];
    let mors: Vec<MorInfo> = wmors
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let is_id = m.src == m.tgt
                && oc.is_identity(m.f)
                && m.ks.iter().all(|&k| ic.is_identity(k));
            let id = if is_id {
                identity[m.src] = i;
                format!("id_{}", obj_name(&objs[m.src]))
            } else {
                let ks: Vec<String> = m.ks.iter().map(|&k| ic.mors[k].id.clone()).collect();
                format!(
                    "{}>{}:({}|{})",
                    obj_name(&objs[m.src]),
                    obj_name(&objs[m.tgt]),
                    oc.mors[m.f].id,
                    ks.join(",")
                )
            };
            MorInfo { id, src: m.src, tgt: m.tgt }
        })
        .collect();

    let mut comp = BTreeMap::new();
    for (gi, g) in wmors.iter().enumerate() {
        for (fi, f) in wmors.iter().enumerate() {
            if f.tgt != g.src {
                continue;
            }
            let (x, _) = &objs[f.src];
            let pos = image_pos(*x, objs[f.tgt].0, f.f);
            let ks: Vec<usize> =
                (0..opts[*x].len()).map(|t| ic.compose(g.ks[pos[t]], f.ks[t])).collect();
            let idx = mor_idx[&(f.src, g.tgt, oc.compose(g.f, f.f), ks)];
            comp.insert((gi, fi), idx);
        }
    }
    let carrier = FinCategory { objects: objs.iter().map(obj_name).collect(), mors, identity, comp };
    let terminal = obj_idx[&(outer.terminal(), vec![inner.terminal()])];

    // Componentwise fibers: the outer fiber indexes which inner fibers occur.
    let mut fibers = BTreeMap::new();
    for (mi, m) in wmors.iter().enumerate() {
        let (x, _ys) = &objs[m.src];
        let (x2, ys2) = &objs[m.tgt];
        for (p2, &tau2) in opts[*x2].iter().enumerate() {
            let of = outer.fiber(m.f, tau2)?.clone();
            let a_pts = &opts[of.object];
            for &pi2 in &inner.points(ys2[p2]) {
                let point = mor_idx[&(terminal, m.tgt, tau2, vec![pi2])];
                let mut fiber_ys = Vec::new();
                let mut proj_ks = Vec::new();
                for &sigma in a_pts.iter() {
                    let tau = oc.compose(of.projection, sigma);
                    let ps = opts[*x].iter().position(|&q| q == tau).unwrap();
                    let inf = inner.fiber(m.ks[ps], pi2)?;
                    fiber_ys.push(inf.object);
                    proj_ks.push(inf.projection);
                }
                let object = obj_idx[&(of.object, fiber_ys)];
                let projection = mor_idx[&(object, m.src, of.projection, proj_ks)];
                fibers.insert((mi, point), Fiber { object, projection });
            }
        }
    }

    let out = OperatorCategory::from_table(carrier, terminal, fibers);
    out.check_terminal()?;
    out.check_fibers()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{finite_sets, ordered_sets, trivial};
    use super::*;

    #[test]
    fn wreath_of_ordered_sets_passes_every_axiom() {
        let o = ordered_sets(2);
        let w = wreath(&o, &o, SIZE_BOUND).unwrap();
        assert_eq!(w.carrier().objects.len(), 13);
        assert_eq!(w.carrier().objects[w.terminal()], "(1|1)");
        assert_eq!(w.check(), Ok(()));
    }

    #[test]
    fn wreath_points_sum_over_components() {
        let o = ordered_sets(2);
        let w = wreath(&o, &o, SIZE_BOUND).unwrap();
        for (i, name) in w.carrier().objects.iter().enumerate() {
            let (_, ys) = name[1..name.len() - 1].split_once('|').unwrap();
            let expected: usize = if ys.is_empty() {
                0
            } else {
                ys.split(',').map(|y| y.parse::<usize>().unwrap()).sum()
            };
            assert_eq!(w.points(i).len(), expected, "at {name}");
        }
        let mixed = w.carrier().object_index("(2|1,2)").unwrap();
        assert_eq!(w.points(mixed).len(), 3);
    }

    #[test]
    fn object_bound_is_enforced() {
        let o = ordered_sets(2);
        assert!(matches!(
            wreath(&o, &o, 10),
            Err(OperatorError::SizeBound { count: 13, bound: 10 })
        ));
    }

    #[test]
    fn trivial_factors_reproduce_object_counts() {
        let t = trivial();
        let f = finite_sets(2);
        assert_eq!(wreath(&t, &f, 50).unwrap().carrier().objects.len(), 3);
        assert_eq!(wreath(&f, &t, 50).unwrap().carrier().objects.len(), 3);
    }
}

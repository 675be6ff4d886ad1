//! Functors between sequence categories and the nerves they induce.
//!
//! The chain category embeds into its doubled counterpart by decorating
//! every stage with the constant identity chain, and projects back by
//! forgetting decorations; the round trip is the identity.  A change of
//! carriers along an operator map acts componentwise on chains.  Both kinds
//! of functor induce maps of opposite nerves, the simplicial shadow every
//! downstream fibration check runs against.

use std::collections::BTreeMap;

use crate::opcat::{
    check_operator_map, finite_sets, iterated_ordered_wreath, word_id, OperatorCategory,
};
use crate::scaled::ScaledSS;
use crate::simpset::{
    monotone_maps, nerve, nerve_map, FinCategory, FinFunctor, MorInfo, SimplicialMap,
};

use super::build::{box_name, delta_phi_box_data, delta_phi_data, BoxData, SeqData};
use super::{
    Phi2SeqMap, Phi2Sequence, PhiSeqMap, PhiSequence, SeqError, TruncatedCategory,
};

/// Which 2-simplices of a nerve count as thin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// Only the degenerate ones.
    Flat,
    /// Every 2-simplex.
    Sharp,
}

/// The opposite category: same objects and morphism ids, endpoints swapped
/// and composition transposed.
pub fn opposite_category(c: &FinCategory) -> FinCategory {
    FinCategory {
        objects: c.objects.clone(),
        mors: c
            .mors
            .iter()
            .map(|m| MorInfo { id: m.id.clone(), src: m.tgt, tgt: m.src })
            .collect(),
        identity: c.identity.clone(),
        comp: c.comp.iter().map(|(&(g, f), &h)| ((f, g), h)).collect(),
    }
}

/// The nerve of the opposite of a truncated category, scaled as requested.
pub fn nerve_op(c: &TruncatedCategory, depth: usize, scaling: Scaling) -> ScaledSS {
    assert!(depth <= 4, "nerve depth is capped at 4");
    let n = nerve(&opposite_category(&c.category), depth);
    match scaling {
        Scaling::Flat => ScaledSS::flat(n),
        Scaling::Sharp => ScaledSS::sharp(n),
    }
}

/// The map of opposite nerves induced by a functor; the same index data
/// defines a functor of opposites.
pub fn nerve_op_map(
    f: &FinFunctor,
    src: &TruncatedCategory,
    dst: &TruncatedCategory,
    depth: usize,
) -> SimplicialMap {
    nerve_map(f, &opposite_category(&src.category), &opposite_category(&dst.category), depth)
}

/// The category of ordinals `[0] .. [n]` and monotone maps, morphisms
/// named by their value words.
pub fn ordinal_category(n: usize) -> FinCategory {
    let objects: Vec<String> = (0..=n).map(|k| format!("[{k}]")).collect();
    let mut mors = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            for alpha in monotone_maps(a, b) {
                if a == b && alpha.iter().enumerate().all(|(i, &v)| i == v) {
                    continue;
                }
                mors.push((word_name(a, b, &alpha), a, b));
            }
        }
    }
    FinCategory::from_parts(objects, mors, |g, f| {
        let (fa, _, fw) = parse_word(f);
        let (_, gb, gw) = parse_word(g);
        let w: Vec<usize> = fw.iter().map(|&v| gw[v]).collect();
        Some(word_name(fa, gb, &w))
    })
}

fn word_name(a: usize, b: usize, w: &[usize]) -> String {
    if a == b && w.iter().enumerate().all(|(i, &v)| i == v) {
        return format!("id_[{a}]");
    }
    let digits: String = w.iter().map(ToString::to_string).collect();
    format!("{a}>{b}:{digits}")
}

fn parse_word(s: &str) -> (usize, usize, Vec<usize>) {
    if let Some(k) = s.strip_prefix("id_[") {
        let k: usize = k.trim_end_matches(']').parse().unwrap();
        return (k, k, (0..=k).collect());
    }
    let (ab, w) = s.split_once(':').unwrap();
    let (a, b) = ab.split_once('>').unwrap();
    (
        a.parse().unwrap(),
        b.parse().unwrap(),
        w.chars().map(|c| c.to_digit(10).unwrap() as usize).collect(),
    )
}

/// Over a one-object carrier every component is forced, so chains collapse
/// to their degrees: returns the chain category at `(n_max, 1)`, the
/// ordinal category, and the isomorphism between them.
pub fn ordinal_collapse(
    n_max: usize,
) -> Result<(TruncatedCategory, FinCategory, FinFunctor), SeqError> {
    let phi = crate::opcat::trivial();
    let data = delta_phi_data(&phi, n_max, 1)?;
    let delta = ordinal_category(n_max);
    let obj_map: Vec<usize> = data.objects.iter().map(PhiSequence::degree).collect();
    let mor_map: Vec<usize> = data
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let info = &data.truncated.category.mors[i];
            let a = data.objects[info.src].degree();
            let b = data.objects[info.tgt].degree();
            delta.mor_index(&word_name(a, b, &m.p)).expect("every reindexing is a word")
        })
        .collect();
    let f = FinFunctor { obj_map, mor_map };
    f.check(&data.truncated.category, &delta).map_err(SeqError::Map)?;
    let mut objs = f.obj_map.clone();
    objs.sort_unstable();
    let mut maps = f.mor_map.clone();
    maps.sort_unstable();
    if objs != (0..delta.objects.len()).collect::<Vec<_>>()
        || maps != (0..delta.mors.len()).collect::<Vec<_>>()
    {
        return Err(SeqError::Map("collapse is not bijective".into()));
    }
    Ok((data.truncated, delta, f))
}

/// Decorates a chain constantly: stage `k` carries the identity chain on
/// its object, one arrow per point.
pub fn decorate_constant(phi: &OperatorCategory, seq: &PhiSequence) -> Phi2Sequence {
    let cat = phi.carrier();
    let decorations = seq
        .objects
        .iter()
        .map(|&x| {
            let m = phi.points(x).len();
            PhiSequence { objects: vec![x; m + 1], arrows: vec![cat.identity[x]; m] }
        })
        .collect();
    Phi2Sequence { outer: seq.clone(), decorations }
}

/// The action of constant decoration on a chain map: every stage reindexes
/// by the initial segment and repeats its component.
pub fn decorate_constant_map(
    phi: &OperatorCategory,
    src: &PhiSequence,
    map: &PhiSeqMap,
) -> Phi2SeqMap {
    let decorations = (0..=src.degree())
        .map(|k| {
            let m = phi.points(src.objects[k]).len();
            PhiSeqMap { p: (0..=m).collect(), q: vec![map.q[k]; m + 1] }
        })
        .collect();
    Phi2SeqMap { outer: map.clone(), decorations }
}

/// Strips the decorations from a chain.
pub fn forget_decorations(x: &Phi2Sequence) -> PhiSequence {
    x.outer.clone()
}

/// Strips the decoration maps from a map of decorated chains.
pub fn forget_decorations_map(m: &Phi2SeqMap) -> PhiSeqMap {
    m.outer.clone()
}

/// The constant-decoration inclusion and the forgetful projection between
/// a chain category and its doubled counterpart, built at shared bounds.
#[derive(Clone, Debug)]
pub struct WreathInclusion {
    pub sequences: SeqData,
    pub doubled: BoxData,
    pub include: FinFunctor,
    pub project: FinFunctor,
}

/// Builds both categories, decorating with constants on the way in and
/// forgetting on the way out, and checks the round trip is the identity.
pub fn wreath_inclusion(
    phi: &OperatorCategory,
    n_max: usize,
    size_max: usize,
) -> Result<WreathInclusion, SeqError> {
    let seqs = delta_phi_data(phi, n_max, size_max)?;
    let boxd = delta_phi_box_data(phi, n_max, size_max, size_max)?;

    let obj_at: BTreeMap<Phi2Sequence, usize> =
        boxd.objects.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let mor_at: BTreeMap<(usize, usize, Phi2SeqMap), usize> = boxd
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let info = &boxd.truncated.category.mors[i];
            ((info.src, info.tgt, m.clone()), i)
        })
        .collect();
    let seq_obj_at: BTreeMap<PhiSequence, usize> =
        seqs.objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let seq_mor_at: BTreeMap<(usize, usize, PhiSeqMap), usize> = seqs
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let info = &seqs.truncated.category.mors[i];
            ((info.src, info.tgt, m.clone()), i)
        })
        .collect();

    let include_obj: Vec<usize> = seqs
        .objects
        .iter()
        .map(|s| obj_at[&decorate_constant(phi, s)])
        .collect();
    let include_mor: Vec<usize> = seqs
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let info = &seqs.truncated.category.mors[i];
            let img = decorate_constant_map(phi, &seqs.objects[info.src], m);
            mor_at[&(include_obj[info.src], include_obj[info.tgt], img)]
        })
        .collect();
    let include = FinFunctor { obj_map: include_obj, mor_map: include_mor };

    let project_obj: Vec<usize> =
        boxd.objects.iter().map(|x| seq_obj_at[&x.outer]).collect();
    let project_mor: Vec<usize> = boxd
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let info = &boxd.truncated.category.mors[i];
            seq_mor_at[&(project_obj[info.src], project_obj[info.tgt], m.outer.clone())]
        })
        .collect();
    let project = FinFunctor { obj_map: project_obj, mor_map: project_mor };

    include.check(&seqs.truncated.category, &boxd.truncated.category).map_err(SeqError::Map)?;
    project.check(&boxd.truncated.category, &seqs.truncated.category).map_err(SeqError::Map)?;
    for (i, &bi) in include.obj_map.iter().enumerate() {
        assert_eq!(project.obj_map[bi], i, "projection must undo inclusion on objects");
    }
    for (i, &bm) in include.mor_map.iter().enumerate() {
        assert_eq!(project.mor_map[bm], i, "projection must undo inclusion on morphisms");
    }

    Ok(WreathInclusion { sequences: seqs, doubled: boxd, include, project })
}

/// The comparison with finite sets: every object goes to its point count
/// and every morphism to its action on points.
pub fn to_finite_sets(phi: &OperatorCategory) -> (OperatorCategory, FinFunctor) {
    let cat = phi.carrier();
    let sizes: Vec<usize> = (0..cat.objects.len()).map(|o| phi.points(o).len()).collect();
    let top = sizes.iter().copied().max().unwrap_or(0).max(1);
    assert!(top <= 9, "point counts above 9 have no word names");
    let sets = finite_sets(top);
    let scat = sets.carrier();
    let obj_map: Vec<usize> =
        sizes.iter().map(|s| scat.object_index(&s.to_string()).unwrap()).collect();
    let mor_map: Vec<usize> = (0..cat.mors.len())
        .map(|f| {
            let (x, y) = (cat.mors[f].src, cat.mors[f].tgt);
            let pts = phi.points(y);
            let w: Vec<usize> = phi
                .points(x)
                .iter()
                .map(|&t| {
                    let image = cat.compose(f, t);
                    pts.iter().position(|&p| p == image).expect("points map to points")
                })
                .collect();
            scat.mor_index(&word_id(sizes[x], sizes[y], &w)).unwrap()
        })
        .collect();
    (sets, FinFunctor { obj_map, mor_map })
}

/// A change of carriers applied to every chain and decoration, with the
/// induced map of opposite nerves.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub source: TruncatedCategory,
    pub target: TruncatedCategory,
    pub functor: FinFunctor,
    pub nerve: SimplicialMap,
}

/// Applies an operator map componentwise to the doubled chain categories
/// of its source and target, at shared bounds.
pub fn base_change(
    f: &FinFunctor,
    phi: &OperatorCategory,
    psi: &OperatorCategory,
    n_max: usize,
    size_max: usize,
    m_max: usize,
    depth: usize,
) -> Result<BaseChange, SeqError> {
    check_operator_map(f, phi, psi).map_err(|e| SeqError::InvalidMap(e.to_string()))?;
    let src = delta_phi_box_data(phi, n_max, size_max, m_max)?;
    let dst = delta_phi_box_data(psi, n_max, size_max, m_max)?;

    let obj_at: BTreeMap<Phi2Sequence, usize> =
        dst.objects.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let mor_at: BTreeMap<(usize, usize, Phi2SeqMap), usize> = dst
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let info = &dst.truncated.category.mors[i];
            ((info.src, info.tgt, m.clone()), i)
        })
        .collect();

    let push_seq = |s: &PhiSequence| PhiSequence {
        objects: s.objects.iter().map(|&o| f.obj_map[o]).collect(),
        arrows: s.arrows.iter().map(|&a| f.mor_map[a]).collect(),
    };
    let push_box = |x: &Phi2Sequence| Phi2Sequence {
        outer: push_seq(&x.outer),
        decorations: x.decorations.iter().map(|d| push_seq(d)).collect(),
    };
    let push_map = |m: &PhiSeqMap| PhiSeqMap {
        p: m.p.clone(),
        q: m.q.iter().map(|&qk| f.mor_map[qk]).collect(),
    };
    let push_box_map = |m: &Phi2SeqMap| Phi2SeqMap {
        outer: push_map(&m.outer),
        decorations: m.decorations.iter().map(|d| push_map(d)).collect(),
    };

    let scat = src.truncated.category.clone();
    let obj_map: Vec<usize> = src
        .objects
        .iter()
        .map(|x| {
            obj_at.get(&push_box(x)).copied().ok_or_else(|| {
                SeqError::InvalidMap(format!(
                    "image of {} leaves the target truncation",
                    box_name(phi.carrier(), x)
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let mor_map: Vec<usize> = src
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let info = &scat.mors[i];
            let key = (obj_map[info.src], obj_map[info.tgt], push_box_map(m));
            mor_at.get(&key).copied().ok_or_else(|| {
                SeqError::InvalidMap(format!("image of {} leaves the target truncation", info.id))
            })
        })
        .collect::<Result<_, _>>()?;

    let functor = FinFunctor { obj_map, mor_map };
    functor
        .check(&src.truncated.category, &dst.truncated.category)
        .map_err(SeqError::InvalidMap)?;
    let nerve = nerve_op_map(&functor, &src.truncated, &dst.truncated, depth);
    Ok(BaseChange { source: src.truncated, target: dst.truncated, functor, nerve })
}

/// A doubled-chain nerve with its comparison into the finite-sets one.
#[derive(Clone, Debug)]
pub struct Scaffold {
    pub base: ScaledSS,
    pub target: ScaledSS,
    pub map: SimplicialMap,
}

/// The level-`k` scaffold: the sharp opposite nerve of the doubled chains
/// over the k-fold wreath of ordered sets, compared with finite sets by the
/// point-count map.
pub fn e2_scaffold(
    k: usize,
    n_max: usize,
    size_max: usize,
    m_max: usize,
    depth: usize,
) -> Result<Scaffold, SeqError> {
    assert!(k <= 2, "scaffolds are computed for k <= 2");
    let carrier = iterated_ordered_wreath(k, size_max.max(2))
        .map_err(|e| SeqError::Carrier(e.to_string()))?;
    let (sets, u) = to_finite_sets(&carrier);
    let bc = base_change(&u, &carrier, &sets, n_max, size_max, m_max, depth)?;
    Ok(Scaffold {
        base: nerve_op(&bc.source, depth, Scaling::Sharp),
        target: nerve_op(&bc.target, depth, Scaling::Sharp),
        map: bc.nerve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcat::{builtin, ordered_sets, trivial};
    use crate::scaled::check_scaled_map;
    use crate::seqcat::{check_box_map, check_double_sequence, delta_phi};
    use crate::simpset::SimplexRef;

    #[test]
    fn opposites_flip_endpoints_and_stay_valid() {
        let c = FinCategory::poset(2);
        let op = opposite_category(&c);
        assert_eq!(op.validate(), Ok(()));
        assert_eq!(op.hom(2, 0).len(), 1);
        assert_eq!(op.hom(0, 2).len(), 0);
        assert_eq!(opposite_category(&op), c);
    }

    #[test]
    fn single_object_chains_collapse_to_ordinals() {
        let (chains, delta, f) = ordinal_collapse(2).unwrap();
        assert_eq!(f.check(&chains.category, &delta), Ok(()));
        assert_eq!(chains.category.objects.len(), delta.objects.len());
        assert_eq!(chains.category.mors.len(), delta.mors.len());
        let expected: usize = (0..=2)
            .flat_map(|a| (0..=2).map(move |b| monotone_maps(a, b).len()))
            .sum();
        assert_eq!(delta.mors.len(), expected);
        assert_eq!(delta.validate(), Ok(()));
    }

    #[test]
    fn nerve_counts_match_the_table() {
        let t = delta_phi(&finite_sets(1), 1, 1).unwrap();
        let sharp = nerve_op(&t, 2, Scaling::Sharp);
        assert_eq!(sharp.set.refs_at(0).len(), t.category.objects.len());
        assert_eq!(sharp.set.refs_at(1).len(), t.category.mors.len());
        assert!(sharp.set.refs_at(2).iter().all(|r| sharp.is_thin(r)));
        let flat = nerve_op(&t, 2, Scaling::Flat);
        for id in flat.set.nondeg(2) {
            assert!(!flat.is_thin(&SimplexRef::nondeg(id)));
        }
    }

    #[test]
    fn constant_decorations_split_off() {
        let w = wreath_inclusion(&ordered_sets(2), 1, 1).unwrap();
        for (i, &bi) in w.include.obj_map.iter().enumerate() {
            assert_eq!(w.project.obj_map[bi], i);
        }
        for (i, &bm) in w.include.mor_map.iter().enumerate() {
            assert_eq!(w.project.mor_map[bm], i);
        }
        let m = nerve_op_map(&w.include, &w.sequences.truncated, &w.doubled.truncated, 2);
        assert!(m.is_mono());
        let src = nerve_op(&w.sequences.truncated, 2, Scaling::Sharp);
        let dst = nerve_op(&w.doubled.truncated, 2, Scaling::Sharp);
        assert_eq!(check_scaled_map(&m, &src, &dst), Ok(()));
    }

    #[test]
    fn oversized_doubles_still_split() {
        // At these bounds the doubled category is far beyond the table cap,
        // so the round trip is checked on the structured data instead.
        let phi = finite_sets(2);
        let data = delta_phi_data(&phi, 1, 2).unwrap();
        for s in &data.objects {
            let img = decorate_constant(&phi, s);
            assert_eq!(check_double_sequence(&phi, &img), Ok(()));
            assert_eq!(forget_decorations(&img), *s);
        }
        let cat = &data.truncated.category;
        for (i, m) in data.maps.iter().enumerate() {
            let info = &cat.mors[i];
            let img = decorate_constant_map(&phi, &data.objects[info.src], m);
            let src = decorate_constant(&phi, &data.objects[info.src]);
            let dst = decorate_constant(&phi, &data.objects[info.tgt]);
            assert_eq!(check_box_map(&phi, &src, &dst, &img), Ok(()));
            assert_eq!(forget_decorations_map(&img), *m);
        }
    }

    #[test]
    fn point_count_comparison_is_an_operator_map() {
        for name in ["triv", "O(2)", "O(3)", "Owr(2,2)"] {
            let phi = builtin(name).unwrap();
            let (sets, u) = to_finite_sets(&phi);
            check_operator_map(&u, &phi, &sets).unwrap();
        }
    }

    #[test]
    fn base_change_along_the_identity_is_the_identity() {
        let phi = ordered_sets(2);
        let id = FinFunctor {
            obj_map: (0..phi.carrier().objects.len()).collect(),
            mor_map: (0..phi.carrier().mors.len()).collect(),
        };
        let bc = base_change(&id, &phi, &phi, 1, 1, 1, 2).unwrap();
        let n = bc.source.category.objects.len();
        assert_eq!(bc.functor.obj_map, (0..n).collect::<Vec<_>>());
        let m = bc.source.category.mors.len();
        assert_eq!(bc.functor.mor_map, (0..m).collect::<Vec<_>>());
    }

    #[test]
    fn base_change_forgets_order() {
        let o = ordered_sets(2);
        let (sets, u) = to_finite_sets(&o);
        let bc = base_change(&u, &o, &sets, 1, 1, 1, 2).unwrap();
        let src_n = nerve_op(&bc.source, 2, Scaling::Sharp);
        let dst_n = nerve_op(&bc.target, 2, Scaling::Sharp);
        assert_eq!(check_scaled_map(&bc.nerve, &src_n, &dst_n), Ok(()));
        // Monotone words keep their names under the comparison, so the
        // decorated chains land on their finite-set namesakes.
        let from = bc.source.category.object_index("[0;0>1:-]{[0]/[1;id_1]}").unwrap();
        let to = bc.target.category.object_index("[0;0>1:-]{[0]/[1;id_1]}").unwrap();
        assert_eq!(bc.functor.obj_map[from], to);
    }

    #[test]
    fn base_change_respects_composites() {
        let t = trivial();
        let o = ordered_sets(2);
        let one = o.carrier().object_index("1").unwrap();
        let f = FinFunctor { obj_map: vec![one], mor_map: vec![o.carrier().identity[one]] };
        let (sets, g) = to_finite_sets(&o);
        let gf = FinFunctor {
            obj_map: f.obj_map.iter().map(|&x| g.obj_map[x]).collect(),
            mor_map: f.mor_map.iter().map(|&m| g.mor_map[m]).collect(),
        };
        let bf = base_change(&f, &t, &o, 1, 1, 1, 2).unwrap();
        let bg = base_change(&g, &o, &sets, 1, 1, 1, 2).unwrap();
        let bgf = base_change(&gf, &t, &sets, 1, 1, 1, 2).unwrap();
        for (i, &x) in bf.functor.obj_map.iter().enumerate() {
            assert_eq!(bgf.functor.obj_map[i], bg.functor.obj_map[x]);
        }
        for (i, &m) in bf.functor.mor_map.iter().enumerate() {
            assert_eq!(bgf.functor.mor_map[i], bg.functor.mor_map[m]);
        }
    }

    #[test]
    fn scaffolds_map_to_finite_sets() {
        for k in 0..=1 {
            let s = e2_scaffold(k, 1, 1, 1, 2).unwrap();
            assert_eq!(check_scaled_map(&s.map, &s.base, &s.target), Ok(()));
            assert!(!s.base.set.refs_at(0).is_empty());
        }
    }
}

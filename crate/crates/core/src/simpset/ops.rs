//! Constructions on simplicial sets: monotone reindexing, finite limits,
//! joins, quotients, slices, exponentials, and opposites.

use super::cells::standard_simplex;
use super::map::SimplicialMap;
use super::set::SimplicialSet;
use super::simplex::SimplexRef;
use std::collections::{BTreeMap, BTreeSet};

/// Applies a monotone reindexing `alpha: [m] -> [n]` contravariantly to an
/// `n`-simplex, peeling `alpha` into faces and degeneracies.
pub fn act(x: &SimplicialSet, r: &SimplexRef, alpha: &[usize]) -> SimplexRef {
    let n = x.ref_dim(r);
    debug_assert!(!alpha.is_empty() && alpha.windows(2).all(|w| w[0] <= w[1]));
    debug_assert!(*alpha.last().unwrap() <= n);
    if let Some(k) = alpha.windows(2).position(|w| w[0] == w[1]) {
        let mut a = alpha.to_vec();
        a.remove(k + 1);
        return act(x, r, &a).degenerate(k);
    }
    let hit: BTreeSet<usize> = alpha.iter().copied().collect();
    if let Some(i) = (0..=n).find(|v| !hit.contains(v)) {
        let a: Vec<usize> = alpha.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
        return act(x, &x.face_of_ref(r, i), &a);
    }
    r.clone()
}

/// The vertices of a simplex in traversal order, read off by acting with
/// the vertex inclusions.
pub fn vertex_seq(x: &SimplicialSet, r: &SimplexRef) -> Vec<String> {
    (0..=x.ref_dim(r)).map(|j| act(x, r, &[j]).base).collect()
}

/// All monotone maps `[m] -> [n]`, each as its value sequence.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, lo: usize, hi: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for v in lo..=hi {
            acc.push(v);
            go(left - 1, v, hi, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(m + 1, 0, n, &mut Vec::new(), &mut out);
    out
}

/// The map of standard simplices induced by a monotone vertex map.
pub fn standard_map(m: usize, n: usize, alpha: &[usize]) -> SimplicialMap {
    let src = standard_simplex(m);
    let tgt = standard_simplex(n);
    let top: String = (0..=n).map(|v| v.to_string()).collect();
    let top = SimplexRef::nondeg(top);
    let mut assign = BTreeMap::new();
    for d in 0..=m {
        for id in src.nondeg(d) {
            let verts: Vec<usize> =
                id.chars().map(|ch| alpha[ch.to_digit(10).unwrap() as usize]).collect();
            assign.insert(id.clone(), act(&tgt, &top, &verts));
        }
    }
    SimplicialMap::new_unchecked(src, tgt, assign)
}

/// Applies a raw assignment table to an arbitrary simplex reference.
pub fn apply_assign(assign: &BTreeMap<String, SimplexRef>, r: &SimplexRef) -> SimplexRef {
    let mut out = assign[&r.base].clone();
    for &j in r.word.iter().rev() {
        out = out.degenerate(j);
    }
    out
}

/// All simplicial maps from `src` to `tgt` extending `partial`, found by
/// assigning nondegenerate simplices in dimension order with face checks.
pub fn enumerate_maps(
    src: &SimplicialSet,
    tgt: &SimplicialSet,
    partial: &BTreeMap<String, SimplexRef>,
) -> Vec<BTreeMap<String, SimplexRef>> {
    let mut order: Vec<(usize, String)> = Vec::new();
    for d in 0..=src.dim() {
        for id in src.nondeg(d) {
            order.push((d, id.clone()));
        }
    }
    let mut out = Vec::new();
    let mut assign: BTreeMap<String, SimplexRef> = BTreeMap::new();
    fn go(
        src: &SimplicialSet,
        tgt: &SimplicialSet,
        partial: &BTreeMap<String, SimplexRef>,
        order: &[(usize, String)],
        pos: usize,
        assign: &mut BTreeMap<String, SimplexRef>,
        out: &mut Vec<BTreeMap<String, SimplexRef>>,
    ) {
        if pos == order.len() {
            out.push(assign.clone());
            return;
        }
        let (d, id) = &order[pos];
        let candidates: Vec<SimplexRef> = match partial.get(id) {
            Some(r) => vec![r.clone()],
            None => tgt.refs_at(*d),
        };
        let here = SimplexRef::nondeg(id.clone());
        for cand in candidates {
            let ok = *d == 0
                || (0..=*d).all(|i| {
                    apply_assign(assign, &src.face_of_ref(&here, i))
                        == tgt.face_of_ref(&cand, i)
                });
            if ok {
                assign.insert(id.clone(), cand);
                go(src, tgt, partial, order, pos + 1, assign, out);
                assign.remove(id);
            }
        }
    }
    go(src, tgt, partial, &order, 0, &mut assign, &mut out);
    out
}

/// Rewrites a simplex reference for the opposite simplicial set, where
/// `s_j` becomes `s_{d-j}` with `d` the dimension below the degeneracy.
pub fn op_ref(x: &SimplicialSet, r: &SimplexRef) -> SimplexRef {
    if r.word.is_empty() {
        return r.clone();
    }
    let inner = SimplexRef::new(r.base.clone(), r.word[1..].to_vec());
    let d = x.ref_dim(&inner);
    op_ref(x, &inner).degenerate(d - r.word[0])
}

/// The opposite simplicial set: same simplices, face lists reversed.
pub fn opposite(x: &SimplicialSet) -> SimplicialSet {
    let mut out = SimplicialSet::new();
    for d in 0..=x.dim() {
        for id in x.nondeg(d) {
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d).map(|i| op_ref(x, &x.faces_of(id)[d - i])).collect()
            };
            out.add_simplex(id.clone(), d, faces);
        }
    }
    out
}

/// Transport of a simplicial map to the opposite sets.
pub fn opposite_map(f: &SimplicialMap) -> SimplicialMap {
    let assign = f
        .assign
        .iter()
        .map(|(id, r)| (id.clone(), op_ref(&f.target, r)))
        .collect();
    SimplicialMap::new_unchecked(opposite(&f.source), opposite(&f.target), assign)
}

/// One compatibility constraint in a limit: the component at factor `dst`
/// must equal the image under `map` of the component at factor `src`.
pub struct MapConstraint {
    pub src: usize,
    pub dst: usize,
    pub map: SimplicialMap,
}

/// A limit of simplicial sets presented as a set of component tuples.
#[derive(Clone, Debug)]
pub struct Limit {
    pub set: SimplicialSet,
    factors: Vec<SimplicialSet>,
    tuples: BTreeMap<String, Vec<SimplexRef>>,
    lookup: BTreeMap<Vec<SimplexRef>, String>,
}

fn tuple_id(comps: &[SimplexRef]) -> String {
    let parts: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join("|"))
}

fn common_letter(comps: &[SimplexRef]) -> Option<usize> {
    let mut common: Option<BTreeSet<usize>> = None;
    for c in comps {
        let s: BTreeSet<usize> = c.word.iter().copied().collect();
        common = Some(match common {
            None => s,
            Some(t) => &t & &s,
        });
    }
    common.and_then(|s| s.iter().next_back().copied())
}

impl Limit {
    pub fn factor(&self, c: usize) -> &SimplicialSet {
        &self.factors[c]
    }

    /// Component tuple of an arbitrary simplex of the limit.
    pub fn comps_of(&self, r: &SimplexRef) -> Vec<SimplexRef> {
        let mut comps = self.tuples[&r.base].clone();
        for &j in r.word.iter().rev() {
            for c in comps.iter_mut() {
                *c = c.degenerate(j);
            }
        }
        comps
    }

    /// Normal form of a component tuple as a simplex of the limit: strips
    /// degeneracy letters shared by every component, then looks up the
    /// residual nondegenerate tuple.
    pub fn ref_of(&self, comps: &[SimplexRef]) -> SimplexRef {
        let mut comps = comps.to_vec();
        let mut stripped = Vec::new();
        while let Some(i) = common_letter(&comps) {
            for (c, f) in comps.iter_mut().zip(&self.factors) {
                *c = f.face_of_ref(c, i);
            }
            stripped.push(i);
        }
        let mut r = SimplexRef::nondeg(self.lookup[&comps].clone());
        for &i in stripped.iter().rev() {
            r = r.degenerate(i);
        }
        r
    }

    pub fn projection(&self, c: usize) -> SimplicialMap {
        let assign = self
            .tuples
            .iter()
            .map(|(id, comps)| (id.clone(), comps[c].clone()))
            .collect();
        SimplicialMap::new_unchecked(self.set.clone(), self.factors[c].clone(), assign)
    }
}

/// Limit of the diagram described by `factors` and `constraints`: the
/// subobject of the product on tuples satisfying every constraint. Factors
/// reachable through constraints are derived rather than enumerated, so a
/// diagram with one generating factor costs no more than that factor.
pub fn multi_limit(factors: &[&SimplicialSet], constraints: &[MapConstraint]) -> Limit {
    let k = factors.len();
    assert!(k > 0, "limit needs at least one factor");
    let mut settled = vec![false; k];
    let mut free = Vec::new();
    for i in 0..k {
        if !constraints.iter().any(|c| c.dst == i) {
            settled[i] = true;
            free.push(i);
        }
    }
    // Discovery order for derived components.
    let mut derive: Vec<(usize, usize)> = Vec::new();
    loop {
        let mut changed = false;
        for (ci, c) in constraints.iter().enumerate() {
            if settled[c.src] && !settled[c.dst] {
                settled[c.dst] = true;
                derive.push((c.dst, ci));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for (i, s) in settled.iter().enumerate() {
        if !s {
            free.push(i);
        }
    }
    free.sort_unstable();

    let mut lim = Limit {
        set: SimplicialSet::new(),
        factors: factors.iter().map(|f| (*f).clone()).collect(),
        tuples: BTreeMap::new(),
        lookup: BTreeMap::new(),
    };
    let dim_bound: usize = factors.iter().map(|f| f.dim()).sum();
    for n in 0..=dim_bound {
        let choices: Vec<Vec<SimplexRef>> = free.iter().map(|&i| factors[i].refs_at(n)).collect();
        let mut odometer = vec![0usize; free.len()];
        'combos: loop {
            if choices.iter().any(|c| c.is_empty()) {
                break;
            }
            let mut comps: Vec<Option<SimplexRef>> = vec![None; k];
            for (j, &i) in free.iter().enumerate() {
                comps[i] = Some(choices[j][odometer[j]].clone());
            }
            for &(dst, ci) in &derive {
                let c = &constraints[ci];
                let img = c.map.apply(comps[c.src].as_ref().unwrap());
                comps[dst] = Some(img);
            }
            let comps: Vec<SimplexRef> = comps.into_iter().map(Option::unwrap).collect();
            let good = constraints.iter().all(|c| comps[c.dst] == c.map.apply(&comps[c.src]))
                && comps.iter().zip(factors).all(|(r, f)| f.ref_valid(r) && f.ref_dim(r) == n);
            if good && common_letter(&comps).is_none() {
                let id = tuple_id(&comps);
                let faces = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| {
                            let fc: Vec<SimplexRef> = comps
                                .iter()
                                .zip(factors)
                                .map(|(r, f)| f.face_of_ref(r, i))
                                .collect();
                            lim.ref_of(&fc)
                        })
                        .collect()
                };
                lim.set.add_simplex(id.clone(), n, faces);
                lim.tuples.insert(id.clone(), comps.clone());
                lim.lookup.insert(comps, id);
            }
            // advance odometer
            for j in (0..free.len()).rev() {
                odometer[j] += 1;
                if odometer[j] < choices[j].len() {
                    continue 'combos;
                }
                odometer[j] = 0;
            }
            break;
        }
    }
    lim
}

/// Product of finitely many simplicial sets.
pub fn product(factors: &[&SimplicialSet]) -> Limit {
    multi_limit(factors, &[])
}

/// The map between two limits induced by componentwise maps.
pub fn product_map(maps: &[&SimplicialMap], src: &Limit, dst: &Limit) -> SimplicialMap {
    let mut assign = BTreeMap::new();
    for (id, comps) in &src.tuples {
        let img: Vec<SimplexRef> = comps.iter().zip(maps).map(|(r, m)| m.apply(r)).collect();
        assign.insert(id.clone(), dst.ref_of(&img));
    }
    SimplicialMap::new_unchecked(src.set.clone(), dst.set.clone(), assign)
}

fn join_left_id(a: &str) -> String {
    format!("({a}*)")
}

fn join_right_id(b: &str) -> String {
    format!("(*{b})")
}

fn join_pair_id(a: &str, b: &str) -> String {
    format!("({a}*{b})")
}

/// Reference into a join from component references, either of which may be
/// absent. Degeneracies on the second component shift past the first.
pub fn join_ref(
    x: &SimplicialSet,
    rx: Option<&SimplexRef>,
    ry: Option<&SimplexRef>,
) -> SimplexRef {
    match (rx, ry) {
        (Some(a), None) => SimplexRef::new(join_left_id(&a.base), a.word.clone()),
        (None, Some(b)) => SimplexRef::new(join_right_id(&b.base), b.word.clone()),
        (Some(a), Some(b)) => {
            let p0 = x.dim_of(&a.base);
            let mut r = SimplexRef::nondeg(join_pair_id(&a.base, &b.base));
            for &w in b.word.iter().rev() {
                r = r.degenerate(w + p0 + 1);
            }
            for &u in a.word.iter().rev() {
                r = r.degenerate(u);
            }
            r
        }
        (None, None) => panic!("join reference needs at least one component"),
    }
}

/// Join of two simplicial sets: simplices are pairs of simplices, one from
/// each side, with at most one side empty.
pub fn join(x: &SimplicialSet, y: &SimplicialSet) -> SimplicialSet {
    let mut out = SimplicialSet::new();
    let top = x.dim() + y.dim() + 1;
    for n in 0..=top {
        for id in x.nondeg(n) {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| join_ref(x, Some(&x.face_of_ref(&SimplexRef::nondeg(id.clone()), i)), None))
                    .collect()
            };
            out.add_simplex(join_left_id(id), n, faces);
        }
        for id in y.nondeg(n) {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| join_ref(x, None, Some(&y.face_of_ref(&SimplexRef::nondeg(id.clone()), i))))
                    .collect()
            };
            out.add_simplex(join_right_id(id), n, faces);
        }
        if n == 0 {
            continue;
        }
        for p in 0..n {
            let q = n - 1 - p;
            for a in x.nondeg(p) {
                for b in y.nondeg(q) {
                    let ra = SimplexRef::nondeg(a.clone());
                    let rb = SimplexRef::nondeg(b.clone());
                    let faces = (0..=n)
                        .map(|i| {
                            if i <= p {
                                if p == 0 {
                                    SimplexRef::nondeg(join_right_id(b))
                                } else {
                                    join_ref(x, Some(&x.face_of_ref(&ra, i)), Some(&rb))
                                }
                            } else if q == 0 {
                                SimplexRef::nondeg(join_left_id(a))
                            } else {
                                join_ref(x, Some(&ra), Some(&y.face_of_ref(&rb, i - p - 1)))
                            }
                        })
                        .collect();
                    out.add_simplex(join_pair_id(a, b), n, faces);
                }
            }
        }
    }
    out
}

/// Collapses each part (a face-closed set of nondegenerate simplices) to a
/// fresh vertex `q{j}`. Returns the quotient and the projection map.
pub fn quotient(
    x: &SimplicialSet,
    parts: &[Vec<String>],
) -> Result<(SimplicialSet, SimplicialMap), String> {
    let mut owner: BTreeMap<&str, usize> = BTreeMap::new();
    for (j, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(format!("part {j} is empty"));
        }
        for id in part {
            if !x.contains(id) {
                return Err(format!("part {j} names unknown simplex {id}"));
            }
            if owner.insert(id, j).is_some() {
                return Err(format!("simplex {id} appears in two parts"));
            }
        }
    }
    for part in parts {
        for id in part {
            if x.dim_of(id) == 0 {
                continue;
            }
            for f in x.faces_of(id) {
                if owner.get(f.base.as_str()) != owner.get(id.as_str()) {
                    return Err(format!("part containing {id} is not closed under faces"));
                }
            }
        }
    }
    let mut assign: BTreeMap<String, SimplexRef> = BTreeMap::new();
    for d in 0..=x.dim() {
        for id in x.nondeg(d) {
            let r = match owner.get(id.as_str()) {
                Some(&j) => SimplexRef::new(format!("q{j}"), (0..d).rev().collect()),
                None => {
                    if parts.iter().enumerate().any(|(j, _)| format!("q{j}") == *id) {
                        return Err(format!("surviving simplex {id} collides with a class vertex"));
                    }
                    SimplexRef::nondeg(id.clone())
                }
            };
            assign.insert(id.clone(), r);
        }
    }
    let mut out = SimplicialSet::new();
    for j in 0..parts.len() {
        out.add_simplex(format!("q{j}"), 0, vec![]);
    }
    for d in 0..=x.dim() {
        for id in x.nondeg(d) {
            if owner.contains_key(id.as_str()) {
                continue;
            }
            let faces = if d == 0 {
                Vec::new()
            } else {
                x.faces_of(id).iter().map(|r| apply_assign(&assign, r)).collect()
            };
            out.add_simplex(id.clone(), d, faces);
        }
    }
    let q = SimplicialMap::new_unchecked(x.clone(), out.clone(), assign);
    Ok((out, q))
}

/// The slice of a simplicial set over one of its simplices. A slice
/// `n`-simplex is an ambient `(n+m+1)`-simplex whose final `m+1` vertices
/// restrict to the given `m`-simplex.
pub struct Slice {
    pub set: SimplicialSet,
    /// Ambient simplex underlying each nondegenerate slice simplex.
    pub under: BTreeMap<String, SimplexRef>,
    lookup: BTreeMap<SimplexRef, String>,
    ambient: SimplicialSet,
    pub target: SimplexRef,
}

impl Slice {
    /// Normal form of an ambient simplex as a slice simplex of slice
    /// dimension `k`: ambient degeneracy letters below `k` are slice
    /// degeneracies and get stripped.
    pub fn ref_of(&self, z: &SimplexRef, k: usize) -> SimplexRef {
        let mut z = z.clone();
        let mut k = k;
        let mut stripped = Vec::new();
        while let Some(w) = z.word.iter().copied().filter(|&w| w < k).max() {
            z = self.ambient.face_of_ref(&z, w);
            k -= 1;
            stripped.push(w);
        }
        let mut r = SimplexRef::nondeg(self.lookup[&z].clone());
        for &i in stripped.iter().rev() {
            r = r.degenerate(i);
        }
        r
    }

    /// Ambient simplex of an arbitrary slice reference.
    pub fn ambient_ref(&self, r: &SimplexRef) -> SimplexRef {
        let mut z = self.under[&r.base].clone();
        for &j in r.word.iter().rev() {
            z = z.degenerate(j);
        }
        z
    }

    /// Slice dimension of the base simplex named by `id`.
    fn slice_dim(&self, id: &str) -> usize {
        self.set.dim_of(id)
    }

    /// Forgets the slice target: restricts each simplex to its leading
    /// vertices.
    pub fn forgetful(&self) -> SimplicialMap {
        let mut assign = BTreeMap::new();
        for (id, z) in &self.under {
            let n = self.slice_dim(id);
            let alpha: Vec<usize> = (0..=n).collect();
            assign.insert(id.clone(), act(&self.ambient, z, &alpha));
        }
        SimplicialMap::new_unchecked(self.set.clone(), self.ambient.clone(), assign)
    }

    /// The map to the slice over the `i`-th face of the target, given by
    /// deleting the corresponding tail vertex.
    pub fn tail_face(&self, i: usize, dst: &Slice) -> SimplicialMap {
        let m = self.ambient.ref_dim(&self.target);
        let mut assign = BTreeMap::new();
        for (id, z) in &self.under {
            let n = self.slice_dim(id);
            let alpha: Vec<usize> =
                (0..=n + m).map(|v| if v < n + 1 + i { v } else { v + 1 }).collect();
            assign.insert(id.clone(), dst.ref_of(&act(&self.ambient, z, &alpha), n));
        }
        SimplicialMap::new_unchecked(self.set.clone(), dst.set.clone(), assign)
    }

    /// The map of slices induced by an ambient map, landing in the slice
    /// over the image of the target simplex.
    pub fn induced(&self, p: &SimplicialMap, dst: &Slice) -> SimplicialMap {
        let mut assign = BTreeMap::new();
        for (id, z) in &self.under {
            let n = self.slice_dim(id);
            assign.insert(id.clone(), dst.ref_of(&p.apply(z), n));
        }
        SimplicialMap::new_unchecked(self.set.clone(), dst.set.clone(), assign)
    }
}

/// Builds the slice over `f`. Slice ids are synthetic (`s{n}_{k}`) since
/// ambient references are not valid identifiers.
pub fn slice_over(x: &SimplicialSet, f: &SimplexRef) -> Slice {
    let m = x.ref_dim(f);
    let mut s = Slice {
        set: SimplicialSet::new(),
        under: BTreeMap::new(),
        lookup: BTreeMap::new(),
        ambient: x.clone(),
        target: f.clone(),
    };
    for n in 0..=x.dim() {
        let alpha: Vec<usize> = (n + 1..=n + m + 1).collect();
        let mut count = 0;
        for z in x.refs_at(n + m + 1) {
            if act(x, &z, &alpha) != *f || z.word.iter().any(|&w| w < n) {
                continue;
            }
            let id = format!("s{n}_{count}");
            count += 1;
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| s.ref_of(&x.face_of_ref(&z, i), n - 1)).collect()
            };
            s.set.add_simplex(id.clone(), n, faces);
            s.under.insert(id.clone(), z.clone());
            s.lookup.insert(z, id);
        }
    }
    s
}

/// A truncated exponential: level `n` holds every simplicial map from
/// `source × Δⁿ` to `target`, for `n` up to `depth`.
pub struct Exponential {
    pub set: SimplicialSet,
    pub source: SimplicialSet,
    pub target: SimplicialSet,
    pub depth: usize,
    pub products: Vec<Limit>,
    pub levels: Vec<Vec<BTreeMap<String, SimplexRef>>>,
    index: Vec<BTreeMap<BTreeMap<String, SimplexRef>, usize>>,
    ids: BTreeMap<(usize, usize), String>,
    face_incl: Vec<Vec<SimplicialMap>>,
    deg_surj: Vec<Vec<SimplicialMap>>,
}

impl Exponential {
    fn compose_after(&self, inner: &SimplicialMap, f: &BTreeMap<String, SimplexRef>) -> BTreeMap<String, SimplexRef> {
        inner
            .assign
            .iter()
            .map(|(id, r)| (id.clone(), apply_assign(f, r)))
            .collect()
    }

    fn face_idx(&self, n: usize, idx: usize, i: usize) -> usize {
        let g = self.compose_after(&self.face_incl[n][i], &self.levels[n][idx]);
        self.index[n - 1][&g]
    }

    fn deg_idx(&self, n: usize, idx: usize, i: usize) -> usize {
        let g = self.compose_after(&self.deg_surj[n][i], &self.levels[n][idx]);
        self.index[n + 1][&g]
    }

    fn is_level_degenerate(&self, n: usize, idx: usize) -> bool {
        (0..n).any(|i| self.deg_idx(n - 1, self.face_idx(n, idx, i), i) == idx)
    }

    fn normalize_level(&self, mut n: usize, mut idx: usize) -> SimplexRef {
        let mut stripped = Vec::new();
        loop {
            let hit = (0..n)
                .rev()
                .find(|&i| self.deg_idx(n - 1, self.face_idx(n, idx, i), i) == idx);
            match hit {
                None => break,
                Some(i) => {
                    idx = self.face_idx(n, idx, i);
                    n -= 1;
                    stripped.push(i);
                }
            }
        }
        let mut r = SimplexRef::nondeg(self.ids[&(n, idx)].clone());
        for &i in stripped.iter().rev() {
            r = r.degenerate(i);
        }
        r
    }

    /// Locates a level-`n` assignment as a simplex reference.
    pub fn ref_of_assignment(&self, n: usize, g: &BTreeMap<String, SimplexRef>) -> SimplexRef {
        self.normalize_level(n, self.index[n][g])
    }

    /// Evaluation at a vertex of the source, as a map to the target.
    pub fn eval_at_vertex(&self, v: &str) -> SimplicialMap {
        let mut assign = BTreeMap::new();
        for (&(n, idx), id) in &self.ids {
            let top: String = (0..=n).map(|d| d.to_string()).collect();
            let comps = vec![
                SimplexRef::new(v.to_string(), (0..n).rev().collect()),
                SimplexRef::nondeg(top),
            ];
            let at = self.products[n].ref_of(&comps);
            assign.insert(id.clone(), apply_assign(&self.levels[n][idx], &at));
        }
        SimplicialMap::new_unchecked(self.set.clone(), self.target.clone(), assign)
    }

    /// Pushes forward along a map of targets, landing in the corresponding
    /// exponential out of the same source.
    pub fn postcompose(&self, p: &SimplicialMap, dst: &Exponential) -> SimplicialMap {
        let mut assign = BTreeMap::new();
        for (&(n, idx), id) in &self.ids {
            let g: BTreeMap<String, SimplexRef> = self.levels[n][idx]
                .iter()
                .map(|(t, r)| (t.clone(), p.apply(r)))
                .collect();
            assign.insert(id.clone(), dst.ref_of_assignment(n, &g));
        }
        SimplicialMap::new_unchecked(self.set.clone(), dst.set.clone(), assign)
    }
}

/// Builds the exponential of `target` by `source`, truncated at `depth`.
/// The target must have correct simplex data up to `depth + dim(source)`.
pub fn exponential(source: &SimplicialSet, target: &SimplicialSet, depth: usize) -> Exponential {
    let mut products = Vec::new();
    let mut levels = Vec::new();
    let mut index = Vec::new();
    for n in 0..=depth {
        let simplex = standard_simplex(n);
        let p = product(&[source, &simplex]);
        let maps = enumerate_maps(&p.set, target, &BTreeMap::new());
        let mut idx = BTreeMap::new();
        for (i, m) in maps.iter().enumerate() {
            idx.insert(m.clone(), i);
        }
        products.push(p);
        levels.push(maps);
        index.push(idx);
    }
    let identity_on_source = SimplicialMap::identity(source);
    let mut face_incl = Vec::new();
    let mut deg_surj = Vec::new();
    for n in 0..=depth {
        let mut faces = Vec::new();
        let mut degs = Vec::new();
        if n >= 1 {
            for i in 0..=n {
                let alpha: Vec<usize> =
                    (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
                let delta = standard_map(n - 1, n, &alpha);
                faces.push(product_map(
                    &[&identity_on_source, &delta],
                    &products[n - 1],
                    &products[n],
                ));
            }
        }
        if n + 1 <= depth {
            for i in 0..=n {
                let alpha: Vec<usize> =
                    (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
                let sigma = standard_map(n + 1, n, &alpha);
                degs.push(product_map(
                    &[&identity_on_source, &sigma],
                    &products[n + 1],
                    &products[n],
                ));
            }
        }
        face_incl.push(faces);
        deg_surj.push(degs);
    }
    let mut e = Exponential {
        set: SimplicialSet::new(),
        source: source.clone(),
        target: target.clone(),
        depth,
        products,
        levels,
        index,
        ids: BTreeMap::new(),
        face_incl,
        deg_surj,
    };
    for n in 0..=depth {
        let mut count = 0;
        for idx in 0..e.levels[n].len() {
            if n > 0 && e.is_level_degenerate(n, idx) {
                continue;
            }
            let id = format!("F{n}_{count}");
            count += 1;
            e.ids.insert((n, idx), id);
        }
        // faces need ids of this level settled before reference normalization
        let this_level: Vec<(usize, String)> = e
            .ids
            .range((n, 0)..(n + 1, 0))
            .map(|(&(_, i), id)| (i, id.clone()))
            .collect();
        for (idx, id) in this_level {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| e.normalize_level(n - 1, e.face_idx(n, idx, i))).collect()
            };
            e.set.add_simplex(id, n, faces);
        }
    }
    e
}

/// The category of simplices of `x`, truncated at the given dimension.
/// Morphisms `(src, dst, alpha)` witness that reindexing the simplex of
/// object `dst` along `alpha` gives the simplex of object `src`.
pub struct SimplexCategory {
    pub objects: Vec<(usize, SimplexRef)>,
    pub morphisms: Vec<(usize, usize, Vec<usize>)>,
}

pub fn simplex_category(x: &SimplicialSet, depth: usize) -> SimplexCategory {
    let mut objects = Vec::new();
    let mut where_is = BTreeMap::new();
    for m in 0..=depth {
        for r in x.refs_at(m) {
            where_is.insert((m, r.clone()), objects.len());
            objects.push((m, r));
        }
    }
    let mut morphisms = Vec::new();
    for (dst, (n, tau)) in objects.iter().enumerate() {
        for m in 0..=depth {
            for alpha in monotone_maps(m, *n) {
                let sigma = act(x, tau, &alpha);
                morphisms.push((where_is[&(m, sigma)], dst, alpha));
            }
        }
    }
    SimplexCategory { objects, morphisms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::cells::{horn, standard_simplex};

    #[test]
    fn act_restricts_and_degenerates() {
        let d2 = standard_simplex(2);
        let top = SimplexRef::nondeg("012");
        assert_eq!(act(&d2, &top, &[0, 2]), SimplexRef::nondeg("02"));
        assert_eq!(act(&d2, &top, &[1]), SimplexRef::nondeg("1"));
        assert_eq!(act(&d2, &top, &[0, 0]), SimplexRef::new("0", vec![0]));
        assert_eq!(act(&d2, &top, &[0, 1, 2]), top);
        // repeat the middle vertex of the top cell
        assert_eq!(act(&d2, &top, &[0, 1, 1, 2]), SimplexRef::new("012", vec![1]));
    }

    #[test]
    fn product_of_intervals_is_a_square() {
        let d1 = standard_simplex(1);
        let p = product(&[&d1, &d1]);
        assert_eq!(p.set.nondeg(0).len(), 4);
        assert_eq!(p.set.nondeg(1).len(), 5);
        assert_eq!(p.set.nondeg(2).len(), 2);
        assert_eq!(p.set.dim(), 2);
        assert!(p.set.validate().is_ok());
        assert_eq!(p.set.euler(), 1);
        assert!(p.projection(0).check().is_ok());
        assert!(p.projection(1).check().is_ok());
    }

    #[test]
    fn prism_has_three_tetrahedra() {
        let p = product(&[&standard_simplex(2), &standard_simplex(1)]);
        assert_eq!(p.set.nondeg(3).len(), 3);
        assert!(p.set.validate().is_ok());
        assert_eq!(p.set.euler(), 1);
    }

    #[test]
    fn pullback_of_distinct_vertices_is_empty() {
        let pt = standard_simplex(0);
        let d1 = standard_simplex(1);
        let at = |v: &str| {
            let mut assign = BTreeMap::new();
            assign.insert("0".to_string(), SimplexRef::nondeg(v));
            SimplicialMap::new_unchecked(pt.clone(), d1.clone(), assign)
        };
        let lim = multi_limit(
            &[&pt, &pt, &d1],
            &[
                MapConstraint { src: 0, dst: 2, map: at("0") },
                MapConstraint { src: 1, dst: 2, map: at("1") },
            ],
        );
        assert!(lim.set.is_empty());
        let lim = multi_limit(
            &[&pt, &pt, &d1],
            &[
                MapConstraint { src: 0, dst: 2, map: at("0") },
                MapConstraint { src: 1, dst: 2, map: at("0") },
            ],
        );
        assert_eq!(lim.set.size(), 1);
    }

    #[test]
    fn join_of_points_is_an_interval() {
        let pt = standard_simplex(0);
        let j = join(&pt, &pt);
        assert_eq!(j.nondeg(0).len(), 2);
        assert_eq!(j.nondeg(1).len(), 1);
        assert!(j.validate().is_ok());
    }

    #[test]
    fn join_with_point_is_a_cone() {
        let j = join(&standard_simplex(1), &standard_simplex(0));
        assert_eq!(j.nondeg(0).len(), 3);
        assert_eq!(j.nondeg(1).len(), 3);
        assert_eq!(j.nondeg(2).len(), 1);
        assert!(j.validate().is_ok());
        assert_eq!(j.euler(), 1);
        // orientation: the cone point comes last
        assert_eq!(j.faces_of("(01*0)")[2], SimplexRef::nondeg("(01*)"));
    }

    #[test]
    fn join_of_boundaries_validates() {
        let j = join(&crate::simpset::cells::boundary(1), &crate::simpset::cells::boundary(1));
        // two points joined with two points: a circle made of four edges
        assert_eq!(j.nondeg(0).len(), 4);
        assert_eq!(j.nondeg(1).len(), 4);
        assert_eq!(j.dim(), 1);
        assert!(j.validate().is_ok());
        assert_eq!(j.euler(), 0);
    }

    #[test]
    fn quotient_collapses_two_edges() {
        let d3 = standard_simplex(3);
        let parts = vec![
            vec!["0".to_string(), "2".to_string(), "02".to_string()],
            vec!["1".to_string(), "3".to_string(), "13".to_string()],
        ];
        let (q, map) = quotient(&d3, &parts).unwrap();
        assert_eq!(q.nondeg(0).len(), 2);
        assert_eq!(q.nondeg(1).len(), 4);
        assert_eq!(q.nondeg(2).len(), 4);
        assert_eq!(q.nondeg(3).len(), 1);
        assert!(q.validate().is_ok());
        assert!(map.check().is_ok());
        assert_eq!(q.euler(), d3.euler() - 1 - 1 + 2);
    }

    #[test]
    fn quotient_rejects_open_parts() {
        let d2 = standard_simplex(2);
        // an edge without its endpoints is not face-closed
        assert!(quotient(&d2, &[vec!["01".to_string()]]).is_err());
    }

    #[test]
    fn slice_over_edge_of_triangle() {
        let d2 = standard_simplex(2);
        let s = slice_over(&d2, &SimplexRef::nondeg("12"));
        assert_eq!(s.set.nondeg(0).len(), 2);
        assert_eq!(s.set.nondeg(1).len(), 1);
        assert_eq!(s.set.dim(), 1);
        assert!(s.set.validate().is_ok());
        assert!(s.forgetful().check().is_ok());
    }

    #[test]
    fn slice_over_final_vertex_of_triangle() {
        let d2 = standard_simplex(2);
        let s = slice_over(&d2, &SimplexRef::nondeg("2"));
        assert_eq!(s.set.nondeg(0).len(), 3);
        assert_eq!(s.set.nondeg(1).len(), 3);
        assert_eq!(s.set.nondeg(2).len(), 1);
        assert!(s.set.validate().is_ok());
    }

    #[test]
    fn opposite_is_an_involution() {
        let h = horn(3, 1).unwrap();
        let o = opposite(&h);
        assert!(o.validate().is_ok());
        assert_eq!(opposite(&o), h);
        // the horn gets reflected: missing face 123 becomes missing face 012
        assert!(o.contains("012"));
    }

    #[test]
    fn exponential_of_interval_by_interval() {
        let d1 = standard_simplex(1);
        let e = exponential(&d1, &d1, 2);
        // monotone self-maps of the interval form a 3-chain
        assert_eq!(e.set.nondeg(0).len(), 3);
        assert_eq!(e.set.nondeg(1).len(), 3);
        assert_eq!(e.set.nondeg(2).len(), 1);
        assert!(e.set.validate().is_ok());
        assert!(e.eval_at_vertex("0").check().is_ok());
        assert!(e.eval_at_vertex("1").check().is_ok());
    }

    #[test]
    fn simplex_category_object_and_arrow_counts() {
        let d1 = standard_simplex(1);
        let sc = simplex_category(&d1, 1);
        assert_eq!(sc.objects.len(), 5);
        // sum over (m, n) of |monotone [m]->[n]| x |simplices at n|
        assert_eq!(sc.morphisms.len(), 1 * 2 + 2 * 3 + 1 * 2 + 3 * 3);
    }

    #[test]
    fn standard_maps_validate() {
        assert!(standard_map(1, 2, &[0, 2]).check().is_ok());
        assert!(standard_map(2, 1, &[0, 0, 1]).check().is_ok());
        assert!(standard_map(2, 2, &[0, 1, 1]).check().is_ok());
    }
}

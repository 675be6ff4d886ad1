//! Categories strictly enriched in marked simplicial sets, and their nerve
//! through dimension 3.
//!
//! An n-simplex of the nerve assigns, to each pair `i < j` of its vertices, a
//! map from the nerve of the poset of subsets of `{i, .., j}` containing both
//! endpoints into the mapping object: a point for `j = i + 1`, an interval
//! for `j = i + 2`, a square for `j = i + 3`.  Cells are enumerated from that
//! description, with the cubes hard-coded, which is why the construction
//! stops at dimension 3.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::simpset::{
    enumerate_maps, product, standard_simplex, vertex_seq, FinCategory, Limit, SimplexRef,
    SimplicialMap, SimplicialSet,
};

use super::{MarkedSS, ScaledSS};

/// Why an enrichment or its nerve could not be built.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EnrichError {
    #[error("missing mapping object for ({0}, {1})")]
    MissingMapping(String, String),
    #[error("identity of {0} is not a vertex of its endomorphism object")]
    BadIdentity(String),
    #[error("composition over ({0}, {1}, {2}): {3}")]
    BadComposition(String, String, String, String),
    #[error("unit laws fail on the mapping object ({0}, {1})")]
    UnitLaw(String, String),
    #[error("associativity fails over ({0}, {1}, {2}, {3})")]
    Associativity(String, String, String, String),
    #[error("nerve cells are hard-coded up to dimension 3, got {0}")]
    DepthTooLarge(usize),
}

/// A category strictly enriched in marked simplicial sets: one mapping object
/// per ordered pair of objects, identity vertices, and composition maps given
/// on binary products of mapping objects.
#[derive(Clone, Debug)]
pub struct MarkedEnrichedCategory {
    objects: Vec<String>,
    mapping: BTreeMap<(String, String), MarkedSS>,
    identities: BTreeMap<String, String>,
    compositions: BTreeMap<(String, String, String), (Limit, SimplicialMap)>,
}

/// The vertex `v` degenerated up to dimension `n`.
fn vertex_at(v: &str, n: usize) -> SimplexRef {
    SimplexRef::new(v, (0..n).rev().collect())
}

/// Image of a simplex of the interval under the map that sends its
/// nondegenerate edge to `e`.
fn edge_image(x: &SimplicialSet, e: &SimplexRef, r: &SimplexRef) -> SimplexRef {
    let mut out = match r.base.as_str() {
        "0" => x.face_of_ref(e, 1),
        "1" => x.face_of_ref(e, 0),
        _ => e.clone(),
    };
    for &j in r.word.iter().rev() {
        out = out.degenerate(j);
    }
    out
}

/// The simplex of the interval whose vertex sequence is the pointwise
/// maximum of the sequences of `a` and `b`.
fn max_ref(interval: &SimplicialSet, a: &SimplexRef, b: &SimplexRef) -> SimplexRef {
    let sa = vertex_seq(interval, a);
    let sb = vertex_seq(interval, b);
    let seq: Vec<bool> = sa.iter().zip(&sb).map(|(p, q)| p == "1" || q == "1").collect();
    let ones = seq.iter().filter(|&&v| v).count();
    let zeros = seq.len() - ones;
    if ones == 0 || zeros == 0 {
        let mut r = SimplexRef::nondeg(if ones == 0 { "0" } else { "1" });
        for _ in 1..seq.len() {
            r = r.degenerate(0);
        }
        return r;
    }
    let mut r = SimplexRef::nondeg("01");
    for _ in 1..zeros {
        r = r.degenerate(0);
    }
    for k in 0..ones - 1 {
        r = r.degenerate(zeros + k);
    }
    r
}

/// Which composite with the interval a square assignment is compared to.
enum Collapse {
    First,
    Second,
    Max,
}

/// Whether `beta` equals `alpha` composed with the given collapse of the
/// square onto the interval.
fn beta_collapses(
    sq: &Limit,
    target: &SimplicialSet,
    beta: &BTreeMap<String, SimplexRef>,
    alpha: &SimplexRef,
    how: Collapse,
) -> bool {
    let interval = standard_simplex(1);
    beta.iter().all(|(id, val)| {
        let comps = sq.comps_of(&SimplexRef::nondeg(id.clone()));
        let through = match how {
            Collapse::First => comps[0].clone(),
            Collapse::Second => comps[1].clone(),
            Collapse::Max => max_ref(&interval, &comps[0], &comps[1]),
        };
        edge_image(target, alpha, &through) == *val
    })
}

impl MarkedEnrichedCategory {
    /// Builds an enrichment from mapping objects, identity vertices, and
    /// composition assignments on the nondegenerate product cells, then
    /// validates units, associativity, and preservation of markings.
    pub fn new(
        objects: Vec<String>,
        mapping: BTreeMap<(String, String), MarkedSS>,
        identities: BTreeMap<String, String>,
        comp_assign: &BTreeMap<(String, String, String), BTreeMap<String, SimplexRef>>,
    ) -> Result<Self, EnrichError> {
        for x in &objects {
            for y in &objects {
                if !mapping.contains_key(&(x.clone(), y.clone())) {
                    return Err(EnrichError::MissingMapping(x.clone(), y.clone()));
                }
            }
        }
        for x in &objects {
            let id = identities.get(x).ok_or_else(|| EnrichError::BadIdentity(x.clone()))?;
            if !mapping[&(x.clone(), x.clone())].set.nondeg(0).contains(id) {
                return Err(EnrichError::BadIdentity(x.clone()));
            }
        }
        let mut compositions = BTreeMap::new();
        for x in &objects {
            for y in &objects {
                for z in &objects {
                    let key = (x.clone(), y.clone(), z.clone());
                    let second = &mapping[&(y.clone(), z.clone())].set;
                    let first = &mapping[&(x.clone(), y.clone())].set;
                    let lim = product(&[second, first]);
                    let assign = comp_assign.get(&key).cloned().unwrap_or_default();
                    let m = SimplicialMap::new(
                        lim.set.clone(),
                        mapping[&(x.clone(), z.clone())].set.clone(),
                        assign,
                    )
                    .map_err(|e| {
                        EnrichError::BadComposition(x.clone(), y.clone(), z.clone(), e)
                    })?;
                    compositions.insert(key, (lim, m));
                }
            }
        }
        let c = MarkedEnrichedCategory { objects, mapping, identities, compositions };
        c.validate()?;
        Ok(c)
    }

    /// An ordinary category viewed as an enrichment: mapping objects are the
    /// discrete hom sets with only degenerate markings.
    pub fn from_category(c: &FinCategory) -> Self {
        let mut mapping = BTreeMap::new();
        let mut identities = BTreeMap::new();
        let mut comp_assign = BTreeMap::new();
        for (a, x) in c.objects.iter().enumerate() {
            identities.insert(x.clone(), c.mors[c.identity[a]].id.clone());
            for (b, y) in c.objects.iter().enumerate() {
                let mut set = SimplicialSet::new();
                for f in c.hom(a, b) {
                    set.add_simplex(c.mors[f].id.clone(), 0, vec![]);
                }
                mapping.insert((x.clone(), y.clone()), MarkedSS::flat(set));
            }
        }
        for (a, x) in c.objects.iter().enumerate() {
            for (b, y) in c.objects.iter().enumerate() {
                for (d, z) in c.objects.iter().enumerate() {
                    let mut assign = BTreeMap::new();
                    for g in c.hom(b, d) {
                        for f in c.hom(a, b) {
                            assign.insert(
                                format!("({}|{})", c.mors[g].id, c.mors[f].id),
                                SimplexRef::nondeg(c.mors[c.compose(g, f)].id.clone()),
                            );
                        }
                    }
                    comp_assign.insert((x.clone(), y.clone(), z.clone()), assign);
                }
            }
        }
        Self::new(c.objects.clone(), mapping, identities, &comp_assign)
            .expect("a valid category is a valid enrichment")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn mapping(&self, x: &str, y: &str) -> &MarkedSS {
        &self.mapping[&(x.to_string(), y.to_string())]
    }

    pub fn identity(&self, x: &str) -> &str {
        &self.identities[x]
    }

    /// Composite of two same-dimension simplices, the second applied first.
    pub fn compose(&self, x: &str, y: &str, z: &str, g: &SimplexRef, f: &SimplexRef) -> SimplexRef {
        let (lim, m) = &self.compositions[&(x.to_string(), y.to_string(), z.to_string())];
        m.apply(&lim.ref_of(&[g.clone(), f.clone()]))
    }

    /// Unit laws and associativity, level by level; beyond the sum of the
    /// dimensions involved every cell has a common degeneracy, so the checks
    /// up to that level decide the general statement.  Also checks that
    /// composites of marked edges are marked.
    fn validate(&self) -> Result<(), EnrichError> {
        for x in &self.objects {
            for y in &self.objects {
                let m = &self.mapping[&(x.clone(), y.clone())];
                let idx = &self.identities[x];
                let idy = &self.identities[y];
                for n in 0..=m.set.dim() {
                    for r in m.set.refs_at(n) {
                        if self.compose(x, y, y, &vertex_at(idy, n), &r) != r
                            || self.compose(x, x, y, &r, &vertex_at(idx, n)) != r
                        {
                            return Err(EnrichError::UnitLaw(x.clone(), y.clone()));
                        }
                    }
                }
            }
        }
        for w in &self.objects {
            for x in &self.objects {
                for y in &self.objects {
                    for z in &self.objects {
                        let ma = &self.mapping[&(y.clone(), z.clone())].set;
                        let mb = &self.mapping[&(x.clone(), y.clone())].set;
                        let mc = &self.mapping[&(w.clone(), x.clone())].set;
                        for n in 0..=ma.dim() + mb.dim() + mc.dim() {
                            for a in ma.refs_at(n) {
                                for b in mb.refs_at(n) {
                                    for c in mc.refs_at(n) {
                                        let ab = self.compose(x, y, z, &a, &b);
                                        let bc = self.compose(w, x, y, &b, &c);
                                        if self.compose(w, x, z, &ab, &c)
                                            != self.compose(w, y, z, &a, &bc)
                                        {
                                            return Err(EnrichError::Associativity(
                                                w.clone(),
                                                x.clone(),
                                                y.clone(),
                                                z.clone(),
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for x in &self.objects {
            for y in &self.objects {
                for z in &self.objects {
                    let ma = &self.mapping[&(y.clone(), z.clone())];
                    let mb = &self.mapping[&(x.clone(), y.clone())];
                    let mc = &self.mapping[&(x.clone(), z.clone())];
                    for a in &ma.marked {
                        for b in &mb.marked {
                            if !mc.is_marked(&self.compose(x, y, z, a, b)) {
                                return Err(EnrichError::BadComposition(
                                    x.clone(),
                                    y.clone(),
                                    z.clone(),
                                    "markings are not preserved".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The nerve of an enrichment, truncated at `depth <= 3`, with a 2-simplex
/// thin exactly when its witnessing edge is marked.
///
/// A 2-cell is a triple of composable morphism vertices `(f01, f12)` plus an
/// edge `alpha` of the outer mapping object ending at the composite; its long
/// edge is the start of `alpha`.  A 3-cell additionally carries `alpha` edges
/// for both inner triangles and a square `beta` into the outer mapping
/// object whose restrictions along the two composition embeddings are the
/// composites of those edges with the remaining morphism vertices.
pub fn scaled_nerve(c: &MarkedEnrichedCategory, depth: usize) -> Result<ScaledSS, EnrichError> {
    if depth > 3 {
        return Err(EnrichError::DepthTooLarge(depth));
    }
    let mut set = SimplicialSet::new();
    let mut thin = Vec::new();
    for x in c.objects() {
        set.add_simplex(x.clone(), 0, vec![]);
    }

    // Edges, keyed by source, target, and morphism vertex.
    let mut edge_ref: BTreeMap<(String, String, String), SimplexRef> = BTreeMap::new();
    if depth >= 1 {
        for x0 in c.objects() {
            for x1 in c.objects() {
                for f in c.mapping(x0, x1).set.nondeg(0) {
                    let key = (x0.clone(), x1.clone(), f.clone());
                    if x0 == x1 && f == c.identity(x0) {
                        edge_ref.insert(key, SimplexRef::new(x0.clone(), vec![0]));
                        continue;
                    }
                    let id = format!("{x0}>{x1}:{f}");
                    set.add_simplex(
                        id.clone(),
                        1,
                        vec![SimplexRef::nondeg(x1.clone()), SimplexRef::nondeg(x0.clone())],
                    );
                    edge_ref.insert(key, SimplexRef::nondeg(id));
                }
            }
        }
    }

    // 2-cells, keyed by objects, morphism vertices, and witnessing edge.
    type Key2 = (String, String, String, String, String, String);
    let mut two_ref: BTreeMap<Key2, SimplexRef> = BTreeMap::new();
    if depth >= 2 {
        for x0 in c.objects() {
            for x1 in c.objects() {
                for x2 in c.objects() {
                    let outer = &c.mapping(x0, x2).set;
                    for f01 in c.mapping(x0, x1).set.nondeg(0) {
                        for f12 in c.mapping(x1, x2).set.nondeg(0) {
                            let composite = c
                                .compose(
                                    x0,
                                    x1,
                                    x2,
                                    &SimplexRef::nondeg(f12.clone()),
                                    &SimplexRef::nondeg(f01.clone()),
                                )
                                .base;
                            for alpha in outer.refs_at(1) {
                                if outer.face_of_ref(&alpha, 0).base != composite {
                                    continue;
                                }
                                let h = outer.face_of_ref(&alpha, 1).base;
                                let key = (
                                    x0.clone(),
                                    x1.clone(),
                                    x2.clone(),
                                    f01.clone(),
                                    f12.clone(),
                                    alpha.to_string(),
                                );
                                if x0 == x1
                                    && f01 == c.identity(x0)
                                    && alpha == SimplexRef::new(f12.clone(), vec![0])
                                {
                                    let e = &edge_ref[&(x1.clone(), x2.clone(), f12.clone())];
                                    two_ref.insert(key, e.clone().degenerate(0));
                                    continue;
                                }
                                if x1 == x2
                                    && f12 == c.identity(x1)
                                    && alpha == SimplexRef::new(f01.clone(), vec![0])
                                {
                                    let e = &edge_ref[&(x0.clone(), x1.clone(), f01.clone())];
                                    two_ref.insert(key, e.clone().degenerate(1));
                                    continue;
                                }
                                let id = format!("{x0}>{x1}>{x2}:{f01},{f12};{alpha}");
                                set.add_simplex(
                                    id.clone(),
                                    2,
                                    vec![
                                        edge_ref[&(x1.clone(), x2.clone(), f12.clone())].clone(),
                                        edge_ref[&(x0.clone(), x2.clone(), h)].clone(),
                                        edge_ref[&(x0.clone(), x1.clone(), f01.clone())].clone(),
                                    ],
                                );
                                let r = SimplexRef::nondeg(id);
                                if c.mapping(x0, x2).is_marked(&alpha) {
                                    thin.push(r.clone());
                                }
                                two_ref.insert(key, r);
                            }
                        }
                    }
                }
            }
        }
    }

    if depth >= 3 {
        let square = SquareCells::new();
        for x0 in c.objects() {
            for x1 in c.objects() {
                for x2 in c.objects() {
                    for x3 in c.objects() {
                        for f01 in c.mapping(x0, x1).set.nondeg(0) {
                            for f12 in c.mapping(x1, x2).set.nondeg(0) {
                                for f23 in c.mapping(x2, x3).set.nondeg(0) {
                                    add_three_cells(
                                        c,
                                        &mut set,
                                        &two_ref,
                                        &square,
                                        [x0, x1, x2, x3],
                                        [f01, f12, f23],
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let scaled = ScaledSS::explicit(set, &thin).expect("nerve thin cells are 2-simplices");
    Ok(scaled)
}

/// The square and the nondegenerate cells of it the 3-cell construction
/// addresses: corner vertices, boundary edges by constant coordinate, and
/// the diagonal.
struct SquareCells {
    lim: Limit,
    corner: BTreeMap<(u8, u8), String>,
    first_const: BTreeMap<u8, String>,
    second_const: BTreeMap<u8, String>,
    diagonal: String,
    triangles: Vec<String>,
}

impl SquareCells {
    fn new() -> Self {
        let interval = standard_simplex(1);
        let lim = product(&[&interval, &interval]);
        let name = |a: &SimplexRef, b: &SimplexRef| lim.ref_of(&[a.clone(), b.clone()]).base;
        let v = |k: u8| SimplexRef::nondeg(k.to_string());
        let vs = |k: u8| SimplexRef::new(k.to_string(), vec![0]);
        let edge = SimplexRef::nondeg("01");
        let mut corner = BTreeMap::new();
        let mut first_const = BTreeMap::new();
        let mut second_const = BTreeMap::new();
        for k in 0..2u8 {
            for l in 0..2u8 {
                corner.insert((k, l), name(&v(k), &v(l)));
            }
            first_const.insert(k, name(&vs(k), &edge));
            second_const.insert(k, name(&edge, &vs(k)));
        }
        let diagonal = name(&edge, &edge);
        let triangles = lim.set.nondeg(2).to_vec();
        SquareCells { lim, corner, first_const, second_const, diagonal, triangles }
    }
}

/// Enumerates and adds the nondegenerate 3-cells over one choice of objects
/// and morphism vertices.
fn add_three_cells(
    c: &MarkedEnrichedCategory,
    set: &mut SimplicialSet,
    two_ref: &BTreeMap<(String, String, String, String, String, String), SimplexRef>,
    square: &SquareCells,
    [x0, x1, x2, x3]: [&String; 4],
    [f01, f12, f23]: [&String; 3],
) {
    let outer = &c.mapping(x0, x3).set;
    let m02 = &c.mapping(x0, x2).set;
    let m13 = &c.mapping(x1, x3).set;
    let vref = |v: &str| SimplexRef::nondeg(v);
    let comp12 = c.compose(x0, x1, x2, &vref(f12), &vref(f01)).base;
    let comp23 = c.compose(x1, x2, x3, &vref(f23), &vref(f12)).base;
    let total = c.compose(x0, x2, x3, &vref(f23), &vref(&comp12)).base;
    let key2 = |a: &String, b: &String, cc: &String, p: &String, q: &String, al: &SimplexRef| {
        (a.clone(), b.clone(), cc.clone(), p.clone(), q.clone(), al.to_string())
    };
    for alpha02 in m02.refs_at(1) {
        if m02.face_of_ref(&alpha02, 0).base != comp12 {
            continue;
        }
        let h02 = m02.face_of_ref(&alpha02, 1).base;
        let comp_f23_h02 = c.compose(x0, x2, x3, &vref(f23), &vref(&h02)).base;
        for alpha13 in m13.refs_at(1) {
            if m13.face_of_ref(&alpha13, 0).base != comp23 {
                continue;
            }
            let h13 = m13.face_of_ref(&alpha13, 1).base;
            let comp_h13_f01 = c.compose(x0, x1, x3, &vref(&h13), &vref(f01)).base;
            let mut partial = BTreeMap::new();
            partial.insert(square.corner[&(1, 0)].clone(), vref(&comp_h13_f01));
            partial.insert(square.corner[&(0, 1)].clone(), vref(&comp_f23_h02));
            partial.insert(square.corner[&(1, 1)].clone(), vref(&total));
            partial.insert(
                square.first_const[&1].clone(),
                c.compose(x0, x1, x3, &alpha13, &SimplexRef::new(f01.clone(), vec![0])),
            );
            partial.insert(
                square.second_const[&1].clone(),
                c.compose(x0, x2, x3, &SimplexRef::new(f23.clone(), vec![0]), &alpha02),
            );
            for beta in enumerate_maps(&square.lim.set, outer, &partial) {
                // Degenerate cells are those whose square collapses onto an
                // interval through one of the three monotone surjections.
                if *x0 == *x1
                    && f01 == c.identity(x0)
                    && alpha02 == SimplexRef::new(f12.clone(), vec![0])
                    && beta_collapses(&square.lim, outer, &beta, &alpha13, Collapse::Second)
                {
                    continue;
                }
                if *x2 == *x3
                    && f23 == c.identity(x2)
                    && alpha13 == SimplexRef::new(f12.clone(), vec![0])
                    && beta_collapses(&square.lim, outer, &beta, &alpha02, Collapse::First)
                {
                    continue;
                }
                if *x1 == *x2
                    && f12 == c.identity(x1)
                    && alpha02 == SimplexRef::new(f01.clone(), vec![0])
                    && alpha13 == SimplexRef::new(f23.clone(), vec![0])
                    && beta_collapses(
                        &square.lim,
                        outer,
                        &beta,
                        &beta[&square.diagonal],
                        Collapse::Max,
                    )
                {
                    continue;
                }
                let free_tag: Vec<String> = [
                    &square.corner[&(0, 0)],
                    &square.first_const[&0],
                    &square.second_const[&0],
                    &square.diagonal,
                ]
                .iter()
                .copied()
                .chain(square.triangles.iter())
                .map(|k| beta[k].to_string())
                .collect();
                let id = format!(
                    "{x0}>{x1}>{x2}>{x3}:{f01},{f12},{f23};{alpha02};{alpha13};{}",
                    free_tag.join(";")
                );
                let faces = vec![
                    two_ref[&key2(x1, x2, x3, f12, f23, &alpha13)].clone(),
                    two_ref[&key2(x0, x2, x3, &h02, f23, &beta[&square.first_const[&0]])].clone(),
                    two_ref[&key2(x0, x1, x3, f01, &h13, &beta[&square.second_const[&0]])]
                        .clone(),
                    two_ref[&key2(x0, x1, x2, f01, f12, &alpha02)].clone(),
                ];
                set.add_simplex(id, 3, faces);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 2-element min-monoid as a one-object enrichment whose mapping
    /// object is an interval; the nondegenerate edge runs m -> 1.
    fn min_monoid(mark_edge: bool) -> MarkedEnrichedCategory {
        let mut m = SimplicialSet::new();
        m.add_simplex("1", 0, vec![]);
        m.add_simplex("m", 0, vec![]);
        m.add_simplex("u", 1, vec![SimplexRef::nondeg("1"), SimplexRef::nondeg("m")]);
        let marked = if mark_edge {
            MarkedSS::sharp(m)
        } else {
            MarkedSS::flat(m)
        };
        let mut mapping = BTreeMap::new();
        mapping.insert(("*".to_string(), "*".to_string()), marked);
        let mut identities = BTreeMap::new();
        identities.insert("*".to_string(), "1".to_string());
        let mut assign = BTreeMap::new();
        let table = [
            ("(1|1)", SimplexRef::nondeg("1")),
            ("(1|m)", SimplexRef::nondeg("m")),
            ("(m|1)", SimplexRef::nondeg("m")),
            ("(m|m)", SimplexRef::nondeg("m")),
            ("(u|1^s[0])", SimplexRef::nondeg("u")),
            ("(1^s[0]|u)", SimplexRef::nondeg("u")),
            ("(u|m^s[0])", SimplexRef::new("m", vec![0])),
            ("(m^s[0]|u)", SimplexRef::new("m", vec![0])),
            ("(u|u)", SimplexRef::nondeg("u")),
            ("(u^s[0]|u^s[1])", SimplexRef::new("u", vec![0])),
            ("(u^s[1]|u^s[0])", SimplexRef::new("u", vec![0])),
        ];
        for (k, v) in table {
            assign.insert(k.to_string(), v);
        }
        let mut comp = BTreeMap::new();
        comp.insert(("*".to_string(), "*".to_string(), "*".to_string()), assign);
        MarkedEnrichedCategory::new(vec!["*".to_string()], mapping, identities, &comp).unwrap()
    }

    #[test]
    fn ordinary_category_gives_the_sharp_nerve() {
        let c = FinCategory::poset(3);
        let e = MarkedEnrichedCategory::from_category(&c);
        let n = scaled_nerve(&e, 3).unwrap();
        n.set.validate().unwrap();
        n.validate().unwrap();
        let plain = crate::simpset::nerve(&c, 3);
        for d in 0..=3 {
            assert_eq!(n.set.nondeg(d).len(), plain.nondeg(d).len(), "dimension {d}");
        }
        // Discrete mapping objects have only degenerate, hence marked,
        // witnessing edges: every 2-simplex is thin.
        for r in n.set.refs_at(2) {
            assert!(n.is_thin(&r));
        }
    }

    #[test]
    fn groupoid_nerve_counts_survive_enrichment() {
        let c = FinCategory::walking_iso();
        let e = MarkedEnrichedCategory::from_category(&c);
        let n = scaled_nerve(&e, 3).unwrap();
        let plain = crate::simpset::nerve(&c, 3);
        for d in 0..=3 {
            assert_eq!(n.set.nondeg(d).len(), plain.nondeg(d).len(), "dimension {d}");
        }
    }

    #[test]
    fn unmarked_witness_edge_is_not_thin() {
        let e = min_monoid(false);
        let n = scaled_nerve(&e, 2).unwrap();
        n.set.validate().unwrap();
        // The edge u: m -> 1 = 1∘1 witnesses a non-thin triangle over the
        // identity pair, while the degenerate witness gives a thin one.
        let witness = SimplexRef::nondeg("*>*>*:1,1;u");
        assert!(n.set.ref_valid(&witness));
        assert!(!n.is_thin(&witness));
        let marked = scaled_nerve(&min_monoid(true), 2).unwrap();
        assert!(marked.is_thin(&SimplexRef::nondeg("*>*>*:1,1;u")));
    }

    #[test]
    fn point_mapping_object_gives_a_point() {
        let c = FinCategory::poset(0);
        let e = MarkedEnrichedCategory::from_category(&c);
        let n = scaled_nerve(&e, 3).unwrap();
        assert_eq!(n.set.nondeg(0).len(), 1);
        assert_eq!(n.set.dim(), 0);
    }

    #[test]
    fn nerve_depth_is_capped() {
        let e = MarkedEnrichedCategory::from_category(&FinCategory::poset(1));
        assert_eq!(scaled_nerve(&e, 4), Err(EnrichError::DepthTooLarge(4)));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // Three elements with a*a = b, a*b = e, b*a = a: (a*a)*a = a but
        // a*(a*a) = e.
        let mut m = SimplicialSet::new();
        for v in ["e", "a", "b"] {
            m.add_simplex(v, 0, vec![]);
        }
        let mut mapping = BTreeMap::new();
        mapping.insert(("*".to_string(), "*".to_string()), MarkedSS::flat(m));
        let mut identities = BTreeMap::new();
        identities.insert("*".to_string(), "e".to_string());
        let mut assign = BTreeMap::new();
        let table = [
            ("e", "e", "e"),
            ("e", "a", "a"),
            ("e", "b", "b"),
            ("a", "e", "a"),
            ("b", "e", "b"),
            ("a", "a", "b"),
            ("a", "b", "e"),
            ("b", "a", "a"),
            ("b", "b", "e"),
        ];
        for (g, f, gf) in table {
            assign.insert(format!("({g}|{f})"), SimplexRef::nondeg(gf));
        }
        let mut comp = BTreeMap::new();
        comp.insert(("*".to_string(), "*".to_string(), "*".to_string()), assign);
        let err = MarkedEnrichedCategory::new(
            vec!["*".to_string()],
            mapping,
            identities,
            &comp,
        )
        .unwrap_err();
        assert!(matches!(err, EnrichError::Associativity(..)));
    }

    #[test]
    fn interval_monoid_nerve_has_higher_cells() {
        // The min-monoid nerve carries 3-cells; every face of every cell
        // must resolve, which is what set.validate checks.
        let n = scaled_nerve(&min_monoid(false), 3).unwrap();
        n.set.validate().unwrap();
        assert!(n.set.dim() >= 3);
    }
}

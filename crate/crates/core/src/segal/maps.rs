//! The product, chain, and completeness comparisons and their verdicts.
//!
//! Each comparison is an honest simplicial map built from the diagram's own
//! arrow assignments: the product comparison lands in a product of values at
//! pointwise fiber chains, the chain comparison in an iterated fiber product
//! of values at adjacent pairs, and the completeness comparison in a finite
//! limit indexed by the simplices of the composite collapse.  A verdict is
//! `Iso` only when the computed sides are genuinely complete at this scale;
//! a bijection onto a truncated side is reported as such, and anything the
//! finite check cannot decide comes back `Inconclusive` with the reason.

use std::collections::BTreeMap;

use crate::seqcat::{
    box_name, chain_composite, seq_name, Phi2SeqMap, Phi2Sequence, PhiSeqMap, PhiSequence,
};
use crate::simpset::{
    multi_limit, product, quotient, standard_simplex, MapConstraint, SimplexRef, SimplicialMap,
    SimplicialSet,
};

use super::{all_refs, collapse_to_point, DiagramBase, OperadDiagram, SegalError};

/// What one comparison instance established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivVerdict {
    /// An isomorphism of two fully computed sides.
    Iso,
    /// Levelwise bijective on the computed truncation; deeper levels are
    /// not decided by this check.
    BijectiveOnTruncation,
    /// Neither certified nor refuted at this scale.
    Inconclusive(String),
    /// Refuted, with a concrete witness.
    Fail(String),
}

/// Which comparison a verdict belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Product,
    Chain,
    Completeness,
}

/// One comparison instance at one base object.
#[derive(Clone, Debug)]
pub struct InstanceVerdict {
    pub kind: MapKind,
    pub at: String,
    pub verdict: EquivVerdict,
}

/// Verdicts for every instance, in base object order with the completeness
/// instance last.
#[derive(Clone, Debug)]
pub struct SegalReport {
    /// Whether the base is a decorated chain category.
    pub twofold: bool,
    /// A functoriality witness when the diagram fails validation.
    pub functorial: Option<String>,
    /// The conventions the verdicts depend on.
    pub note: String,
    pub instances: Vec<InstanceVerdict>,
}

impl SegalReport {
    /// True when the diagram validated and every instance is at least a
    /// bijection on its truncation.
    pub fn passed(&self) -> bool {
        self.functorial.is_none()
            && self.instances.iter().all(|i| {
                matches!(i.verdict, EquivVerdict::Iso | EquivVerdict::BijectiveOnTruncation)
            })
    }
}

/// The completeness comparison together with the data its verdict needs.
#[derive(Clone, Debug)]
pub struct Completeness {
    pub map: SimplicialMap,
    /// Largest simplex dimension of the collapse that was indexed over.
    pub depth: usize,
    /// Whether every constant-chain value is a single point.
    pub point_valued: bool,
}

/// The product and chain comparisons of a plain-chain diagram at one chain.
pub fn segal_maps(
    x: &OperadDiagram,
    seq: &PhiSequence,
) -> Result<(SimplicialMap, SimplicialMap), SegalError> {
    if x.base.is_doubled() {
        return Err(SegalError::Base("plain chain base required".to_string()));
    }
    let oi = x
        .sequence_index(seq)
        .ok_or_else(|| SegalError::Missing(seq_name(x.phi.carrier(), seq)))?;
    Ok((product_comparison(x, oi)?, chain_comparison(x, oi)?))
}

/// The product and chain comparisons of a decorated-chain diagram at one
/// decorated chain.
pub fn segal2_maps(
    x: &OperadDiagram,
    seq: &Phi2Sequence,
) -> Result<(SimplicialMap, SimplicialMap), SegalError> {
    if !x.base.is_doubled() {
        return Err(SegalError::Base("decorated chain base required".to_string()));
    }
    let oi = x
        .doubled_index(seq)
        .ok_or_else(|| SegalError::Missing(box_name(x.phi.carrier(), seq)))?;
    Ok((product_comparison(x, oi)?, chain_comparison(x, oi)?))
}

/// The completeness comparison of a plain-chain diagram.
pub fn completeness_map(x: &OperadDiagram, depth: usize) -> Result<Completeness, SegalError> {
    if x.base.is_doubled() {
        return Err(SegalError::Base("plain chain base required".to_string()));
    }
    completeness_core(x, depth)
}

/// The completeness comparison of a decorated-chain diagram, indexed over
/// constant chains with constant decorations.
pub fn completeness2_map(x: &OperadDiagram, depth: usize) -> Result<Completeness, SegalError> {
    if !x.base.is_doubled() {
        return Err(SegalError::Base("decorated chain base required".to_string()));
    }
    completeness_core(x, depth)
}

/// Runs every comparison instance over the base, in object order, and
/// aggregates the verdicts.  Instance failures never abort the sweep.
pub fn check_operad(x: &OperadDiagram, depth: usize) -> SegalReport {
    let twofold = x.base.is_doubled();
    let functorial = x.validate().err().map(|e| e.to_string());
    let mut instances = Vec::new();
    for o in 0..x.base.category().objects.len() {
        let at = x.base.category().objects[o].clone();
        instances.push(InstanceVerdict {
            kind: MapKind::Product,
            at: at.clone(),
            verdict: judge_closed(product_comparison(x, o)),
        });
        instances.push(InstanceVerdict {
            kind: MapKind::Chain,
            at,
            verdict: judge_closed(chain_comparison(x, o)),
        });
    }
    instances.push(InstanceVerdict {
        kind: MapKind::Completeness,
        at: format!("constant chains to depth {depth}"),
        verdict: judge_completeness(completeness_core(x, depth)),
    });
    let mut note = String::from(
        "completeness is a finite limit over the simplices of the composite collapse, \
         to the stated depth",
    );
    if twofold {
        note.push_str(
            "; fiber stages reindex decorations along the ordered inclusion of fiber \
             points, composing skipped decoration arrows",
        );
    }
    SegalReport { twofold, functorial, note, instances }
}

/// Levelwise bijectivity certificate: `None` when bijective at every
/// dimension, otherwise the first injectivity or surjectivity defect.
pub(crate) fn bijectivity_witness(m: &SimplicialMap) -> Option<String> {
    let top = m.source.dim().max(m.target.dim());
    for n in 0..=top {
        let mut seen: BTreeMap<SimplexRef, SimplexRef> = BTreeMap::new();
        for r in m.source.refs_at(n) {
            let img = m.apply(&r);
            if let Some(prev) = seen.get(&img) {
                return Some(format!(
                    "not injective in dimension {n}: {prev} and {r} both land on {img}"
                ));
            }
            seen.insert(img, r);
        }
        for t in m.target.refs_at(n) {
            if !seen.contains_key(&t) {
                return Some(format!("not surjective in dimension {n}: {t} is not reached"));
            }
        }
    }
    None
}

/// Verdict for a comparison whose two sides are fully computed, so
/// bijectivity means isomorphism.
fn judge_closed(out: Result<SimplicialMap, SegalError>) -> EquivVerdict {
    match out {
        Err(SegalError::Malformed(w)) => EquivVerdict::Fail(w),
        Err(e) => EquivVerdict::Inconclusive(e.to_string()),
        Ok(map) => match bijectivity_witness(&map) {
            None => EquivVerdict::Iso,
            Some(w) => {
                if map.source.dim() == 0 && map.target.dim() == 0 {
                    EquivVerdict::Fail(w)
                } else {
                    EquivVerdict::Inconclusive(format!(
                        "{w}; the sides have cells above dimension 0, where bijectivity \
                         is the only certificate this check can issue"
                    ))
                }
            }
        },
    }
}

/// Verdict for the completeness comparison, which indexes over a truncated
/// shape: bijectivity is an isomorphism only for point-valued diagrams or
/// for discrete values once every nondegenerate simplex of the collapse is
/// covered.
fn judge_completeness(out: Result<Completeness, SegalError>) -> EquivVerdict {
    match out {
        Err(SegalError::Malformed(w)) => EquivVerdict::Fail(w),
        Err(e) => EquivVerdict::Inconclusive(e.to_string()),
        Ok(data) => {
            let discrete = data.map.source.dim() == 0 && data.map.target.dim() == 0;
            match bijectivity_witness(&data.map) {
                None => {
                    if data.point_valued || (data.depth >= 3 && discrete) {
                        EquivVerdict::Iso
                    } else {
                        EquivVerdict::BijectiveOnTruncation
                    }
                }
                Some(w) => {
                    if discrete {
                        EquivVerdict::Fail(w)
                    } else {
                        EquivVerdict::Inconclusive(format!(
                            "{w}; the sides have cells above dimension 0, where \
                             bijectivity is the only certificate this check can issue"
                        ))
                    }
                }
            }
        }
    }
}

/// Index of a base object with the given outer chain and, on a decorated
/// base, the given decorations.
pub(crate) fn locate_object(
    x: &OperadDiagram,
    outer: &PhiSequence,
    decs: &[PhiSequence],
) -> Result<usize, SegalError> {
    let cat = x.phi.carrier();
    match &x.base {
        DiagramBase::Chains(d) => d
            .object_index(outer)
            .ok_or_else(|| SegalError::Truncation(format!("{} is not enumerated", seq_name(cat, outer)))),
        DiagramBase::Doubled(d) => {
            let seq = Phi2Sequence { outer: outer.clone(), decorations: decs.to_vec() };
            d.object_index(&seq)
                .ok_or_else(|| SegalError::Truncation(format!("{} is not enumerated", box_name(cat, &seq))))
        }
    }
}

/// Index of a base morphism with the given endpoints and components.
pub(crate) fn locate_map(
    x: &OperadDiagram,
    src: usize,
    tgt: usize,
    outer: &PhiSeqMap,
    decs: &[PhiSeqMap],
) -> Result<usize, SegalError> {
    let names = &x.base.category().objects;
    match &x.base {
        DiagramBase::Chains(d) => d.map_index(src, tgt, outer),
        DiagramBase::Doubled(d) => {
            let m = Phi2SeqMap { outer: outer.clone(), decorations: decs.to_vec() };
            d.map_index(src, tgt, &m)
        }
    }
    .ok_or_else(|| {
        SegalError::Truncation(format!(
            "no enumerated map from {} to {} with the required components",
            names[src], names[tgt]
        ))
    })
}

/// The chain of designated fibers of the tails of `outer` over one point of
/// its last object, with the projections back onto the stages.
struct FiberChain {
    seq: PhiSequence,
    projections: Vec<usize>,
}

fn fiber_chain(x: &OperadDiagram, outer: &PhiSequence, t: usize) -> Result<FiberChain, SegalError> {
    let cat = x.phi.carrier();
    let n = outer.degree();
    let mut objects = Vec::new();
    let mut projections = Vec::new();
    for k in 0..=n {
        let c = chain_composite(cat, outer, k, n);
        let fib = x.phi.fiber(c, t).map_err(|e| SegalError::Operator(e.to_string()))?;
        objects.push(fib.object);
        projections.push(fib.projection);
    }
    let mut arrows = Vec::new();
    for k in 0..n {
        let want = cat.compose(outer.arrows[k], projections[k]);
        let hits: Vec<usize> = cat
            .hom(objects[k], objects[k + 1])
            .into_iter()
            .filter(|&u| cat.compose(projections[k + 1], u) == want)
            .collect();
        if hits.len() != 1 {
            return Err(SegalError::Operator(format!(
                "{} carrier maps lift stage {k} between the designated fibers",
                hits.len()
            )));
        }
        arrows.push(hits[0]);
    }
    Ok(FiberChain { seq: PhiSequence { objects, arrows }, projections })
}

/// Restricts a stage decoration to the points of a fiber of the stage:
/// keeps one decoration arrow per fiber point, in stage order, composing
/// across skipped points.  Returns the restricted chain and its inclusion.
fn restrict_decoration(
    x: &OperadDiagram,
    stage_object: usize,
    fiber_object: usize,
    projection: usize,
    dec: &PhiSequence,
) -> Result<(PhiSequence, PhiSeqMap), SegalError> {
    let cat = x.phi.carrier();
    let stage_points = x.phi.points(stage_object);
    let mut positions = Vec::new();
    for pt in x.phi.points(fiber_object) {
        let img = cat.compose(projection, pt);
        let pos = stage_points.iter().position(|&sp| sp == img).ok_or_else(|| {
            SegalError::Operator("a fiber point does not project to a stage point".to_string())
        })?;
        positions.push(pos);
    }
    positions.sort_unstable();
    if positions.windows(2).any(|w| w[0] == w[1]) {
        return Err(SegalError::Operator(
            "fiber points do not embed into the stage points".to_string(),
        ));
    }
    let mut stops = Vec::with_capacity(positions.len() + 1);
    stops.push(positions.first().copied().unwrap_or(0));
    for &p in &positions {
        stops.push(p + 1);
    }
    let objects: Vec<usize> = stops.iter().map(|&i| dec.objects[i]).collect();
    let arrows: Vec<usize> =
        (1..stops.len()).map(|j| chain_composite(cat, dec, stops[j - 1], stops[j])).collect();
    let q = objects.iter().map(|&o| cat.identity[o]).collect();
    Ok((PhiSequence { objects, arrows }, PhiSeqMap { p: stops, q }))
}

/// The comparison from the value at a chain into the product of the values
/// at its fiber chains, one per point of the last stage.
pub(crate) fn product_comparison(
    x: &OperadDiagram,
    oi: usize,
) -> Result<SimplicialMap, SegalError> {
    let outer = x.base.outer(oi).clone();
    let n = outer.degree();
    let ts = x.phi.points(outer.objects[n]);
    if ts.is_empty() {
        return Ok(collapse_to_point(&x.values[oi]));
    }
    let mut arrow_ids = Vec::new();
    for &t in &ts {
        let fc = fiber_chain(x, &outer, t)?;
        let rho = PhiSeqMap { p: (0..=n).collect(), q: fc.projections.clone() };
        let (decs, dec_maps) = match &x.base {
            DiagramBase::Chains(_) => (Vec::new(), Vec::new()),
            DiagramBase::Doubled(d) => {
                let mut decs = Vec::new();
                let mut dec_maps = Vec::new();
                for k in 0..=n {
                    let (dseq, dmap) = restrict_decoration(
                        x,
                        outer.objects[k],
                        fc.seq.objects[k],
                        fc.projections[k],
                        &d.objects[oi].decorations[k],
                    )?;
                    decs.push(dseq);
                    dec_maps.push(dmap);
                }
                (decs, dec_maps)
            }
        };
        let fi = locate_object(x, &fc.seq, &decs)?;
        arrow_ids.push(locate_map(x, fi, oi, &rho, &dec_maps)?);
    }
    let factors: Vec<&SimplicialSet> =
        arrow_ids.iter().map(|&m| &x.arrows[m].target).collect();
    let lim = product(&factors);
    let mut assign = BTreeMap::new();
    for r in all_refs(&x.values[oi]) {
        let comps: Vec<SimplexRef> =
            arrow_ids.iter().map(|&m| x.arrows[m].apply(&r)).collect();
        assign.insert(r.base.clone(), lim.ref_of(&comps));
    }
    Ok(SimplicialMap::new_unchecked(x.values[oi].clone(), lim.set.clone(), assign))
}

/// The comparison from the value at a chain into the fiber product of the
/// values at its adjacent pairs, glued over the shared stages.
pub(crate) fn chain_comparison(x: &OperadDiagram, oi: usize) -> Result<SimplicialMap, SegalError> {
    let cat = x.phi.carrier();
    let outer = x.base.outer(oi).clone();
    let n = outer.degree();
    if n == 0 {
        return Ok(SimplicialMap::identity(&x.values[oi]));
    }
    let decs: Vec<PhiSequence> = match &x.base {
        DiagramBase::Chains(_) => Vec::new(),
        DiagramBase::Doubled(d) => d.objects[oi].decorations.clone(),
    };
    let doubled = x.base.is_doubled();

    let mut pair_obj = Vec::new();
    let mut pair_arrow = Vec::new();
    for k in 1..=n {
        let pair = PhiSequence {
            objects: vec![outer.objects[k - 1], outer.objects[k]],
            arrows: vec![outer.arrows[k - 1]],
        };
        let pdecs: Vec<PhiSequence> =
            if doubled { vec![decs[k - 1].clone(), decs[k].clone()] } else { Vec::new() };
        let pi = locate_object(x, &pair, &pdecs)?;
        let incl = PhiSeqMap {
            p: vec![k - 1, k],
            q: vec![cat.identity[outer.objects[k - 1]], cat.identity[outer.objects[k]]],
        };
        let incl_decs: Vec<PhiSeqMap> = if doubled {
            vec![PhiSeqMap::identity(cat, &decs[k - 1]), PhiSeqMap::identity(cat, &decs[k])]
        } else {
            Vec::new()
        };
        pair_obj.push(pi);
        pair_arrow.push(locate_map(x, pi, oi, &incl, &incl_decs)?);
    }

    let mut end_arrow = Vec::new();
    let mut start_arrow = Vec::new();
    for k in 1..n {
        let v = PhiSequence::point(outer.objects[k]);
        let vdecs: Vec<PhiSequence> = if doubled { vec![decs[k].clone()] } else { Vec::new() };
        let vi = locate_object(x, &v, &vdecs)?;
        let vdec_maps: Vec<PhiSeqMap> =
            if doubled { vec![PhiSeqMap::identity(cat, &decs[k])] } else { Vec::new() };
        let into_prev = PhiSeqMap { p: vec![1], q: vec![cat.identity[outer.objects[k]]] };
        let into_next = PhiSeqMap { p: vec![0], q: vec![cat.identity[outer.objects[k]]] };
        end_arrow.push(locate_map(x, vi, pair_obj[k - 1], &into_prev, &vdec_maps)?);
        start_arrow.push(locate_map(x, vi, pair_obj[k], &into_next, &vdec_maps)?);
    }

    let mut factors: Vec<&SimplicialSet> =
        pair_arrow.iter().map(|&m| &x.arrows[m].target).collect();
    for k in 1..n {
        factors.push(&x.arrows[end_arrow[k - 1]].target);
    }
    let mut constraints = Vec::new();
    for k in 1..n {
        constraints.push(MapConstraint {
            src: k - 1,
            dst: n - 1 + (k - 1),
            map: x.arrows[end_arrow[k - 1]].clone(),
        });
        constraints.push(MapConstraint {
            src: k,
            dst: n - 1 + (k - 1),
            map: x.arrows[start_arrow[k - 1]].clone(),
        });
    }
    let lim = multi_limit(&factors, &constraints);

    let mut assign = BTreeMap::new();
    for r in all_refs(&x.values[oi]) {
        let mut comps: Vec<SimplexRef> =
            pair_arrow.iter().map(|&m| x.arrows[m].apply(&r)).collect();
        for k in 1..n {
            let end = x.arrows[end_arrow[k - 1]].apply(&comps[k - 1]);
            let start = x.arrows[start_arrow[k - 1]].apply(&comps[k]);
            if end != start {
                return Err(SegalError::Malformed(format!(
                    "restrictions of {} disagree on the shared stage {k}: {end} against {start}",
                    r.base
                )));
            }
            comps.push(end);
        }
        assign.insert(r.base.clone(), lim.ref_of(&comps));
    }
    Ok(SimplicialMap::new_unchecked(x.values[oi].clone(), lim.set.clone(), assign))
}

/// The walking composite collapse: a tetrahedron with two opposite edges
/// collapsed to its two surviving vertices.
fn composite_collapse() -> SimplicialSet {
    let d3 = standard_simplex(3);
    let parts = vec![
        vec!["0".to_string(), "2".to_string(), "02".to_string()],
        vec!["1".to_string(), "3".to_string(), "13".to_string()],
    ];
    quotient(&d3, &parts).expect("the collapse parts are face-closed").0
}

/// The constant chain of degree `m` at the terminal carrier object.
fn constant_chain(x: &OperadDiagram, m: usize) -> PhiSequence {
    let term = x.phi.terminal();
    PhiSequence {
        objects: vec![term; m + 1],
        arrows: vec![x.phi.carrier().identity[term]; m],
    }
}

/// A monotone stage reindexing between constant chains, with identity
/// components.
fn constant_map(x: &OperadDiagram, p: Vec<usize>) -> PhiSeqMap {
    let id = x.phi.carrier().identity[x.phi.terminal()];
    PhiSeqMap { q: vec![id; p.len()], p }
}

/// Locates the arrow of a structure map between constant chains, adding
/// constant decorations on a decorated base.
fn constant_arrow(
    x: &OperadDiagram,
    obj: &[usize],
    src_deg: usize,
    tgt_deg: usize,
    p: Vec<usize>,
) -> Result<usize, SegalError> {
    let map = constant_map(x, p);
    let decs: Vec<PhiSeqMap> = if x.base.is_doubled() {
        let src = constant_chain(x, src_deg);
        crate::seqcat::decorate_constant_map(&x.phi, &src, &map).decorations
    } else {
        Vec::new()
    };
    locate_map(x, obj[src_deg], obj[tgt_deg], &map, &decs)
}

/// The completeness comparison: the value at the constant point chain maps
/// into the limit of constant-chain values over the simplices of the
/// collapse up to dimension `depth`.
fn completeness_core(x: &OperadDiagram, depth: usize) -> Result<Completeness, SegalError> {
    let n_max = x.base.truncated().certificate.n_max;
    if depth == 0 {
        return Err(SegalError::Truncation(
            "the completeness comparison needs depth at least 1".to_string(),
        ));
    }
    if depth > n_max {
        return Err(SegalError::Truncation(format!(
            "constant chains of degree {depth} exceed the base degree bound {n_max}"
        )));
    }

    let mut obj = Vec::new();
    for m in 0..=depth {
        let c = constant_chain(x, m);
        let decs: Vec<PhiSequence> = if x.base.is_doubled() {
            crate::seqcat::decorate_constant(&x.phi, &c).decorations
        } else {
            Vec::new()
        };
        obj.push(locate_object(x, &c, &decs)?);
    }

    // Structure arrows between constant-chain values: one per face and
    // degeneracy operator at each degree, plus the collapse to degree zero.
    let mut face = vec![Vec::new()];
    for m in 1..=depth {
        let mut row = Vec::new();
        for i in 0..=m {
            let p: Vec<usize> = (0..=m).filter(|&t| t != i).collect();
            row.push(constant_arrow(x, &obj, m - 1, m, p)?);
        }
        face.push(row);
    }
    let mut degeneracy = Vec::new();
    for m in 0..depth {
        let mut row = Vec::new();
        for j in 0..=m {
            let p: Vec<usize> = (0..=m + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
            row.push(constant_arrow(x, &obj, m + 1, m, p)?);
        }
        degeneracy.push(row);
    }
    let mut to_zero = Vec::new();
    for m in 0..=depth {
        to_zero.push(constant_arrow(x, &obj, m, 0, vec![0; m + 1])?);
    }

    let shape = composite_collapse();
    let mut entries: Vec<(SimplexRef, usize)> = Vec::new();
    let mut index: BTreeMap<SimplexRef, usize> = BTreeMap::new();
    for m in 0..=depth.min(shape.dim()) {
        for r in shape.refs_at(m) {
            index.insert(r.clone(), entries.len());
            entries.push((r, m));
        }
    }
    let factors: Vec<&SimplicialSet> =
        entries.iter().map(|&(_, m)| &x.values[obj[m]]).collect();
    let mut constraints = Vec::new();
    for (e, (r, m)) in entries.iter().enumerate() {
        if *m >= 1 {
            for i in 0..=*m {
                let f = shape.face_of_ref(r, i);
                constraints.push(MapConstraint {
                    src: e,
                    dst: index[&f],
                    map: x.arrows[face[*m][i]].clone(),
                });
            }
        }
        if *m < depth {
            for j in 0..=*m {
                constraints.push(MapConstraint {
                    src: e,
                    dst: index[&r.degenerate(j)],
                    map: x.arrows[degeneracy[*m][j]].clone(),
                });
            }
        }
    }
    let lim = multi_limit(&factors, &constraints);

    let mut assign = BTreeMap::new();
    for r0 in all_refs(&x.values[obj[0]]) {
        let comps: Vec<SimplexRef> =
            entries.iter().map(|&(_, m)| x.arrows[to_zero[m]].apply(&r0)).collect();
        for c in &constraints {
            if comps[c.dst] != c.map.apply(&comps[c.src]) {
                return Err(SegalError::Malformed(format!(
                    "the constant-chain restrictions of {} do not form a cone over the collapse",
                    r0.base
                )));
            }
        }
        assign.insert(r0.base.clone(), lim.ref_of(&comps));
    }
    let map =
        SimplicialMap::new_unchecked(x.values[obj[0]].clone(), lim.set.clone(), assign);
    let point_valued = (0..=depth)
        .all(|m| x.values[obj[m]].dim() == 0 && x.values[obj[m]].nondeg(0).len() == 1);
    Ok(Completeness { map, depth, point_valued })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcat::{finite_sets, trivial};
    use crate::segal::{monoid_operad, pullback_diagram, terminal_diagram, Monoid};
    use crate::seqcat::{delta_phi_data, wreath_inclusion};
    use crate::simpset::FinCategory;

    fn z2() -> Monoid {
        Monoid::cyclic(2)
    }

    fn chain_of(cat: &FinCategory, objects: &[&str], arrows: &[&str]) -> PhiSequence {
        PhiSequence {
            objects: objects.iter().map(|o| cat.object_index(o).unwrap()).collect(),
            arrows: arrows.iter().map(|a| cat.mor_index(a).unwrap()).collect(),
        }
    }

    #[test]
    fn terminal_instances_are_isomorphisms() {
        let phi = trivial();
        let base = delta_phi_data(&phi, 2, 1).unwrap();
        let x = terminal_diagram(&phi, super::super::DiagramBase::Chains(base));
        let report = check_operad(&x, 2);
        assert!(report.functorial.is_none());
        assert!(report.instances.iter().all(|i| i.verdict == EquivVerdict::Iso));
        assert!(report.passed());
    }

    #[test]
    fn product_comparison_splits_tuples_along_fibers() {
        let phi = finite_sets(2);
        let x = monoid_operad(&z2(), &phi, 1, 2).unwrap();
        let cat = phi.carrier();
        let seq = chain_of(cat, &["2"], &[]);
        let (p, _) = segal_maps(&x, &seq).unwrap();

        // Independent count: the source has one vertex per pair, and the
        // two pointwise fibers each carry one coordinate.
        let mut images = std::collections::BTreeSet::new();
        for r in p.source.refs_at(0) {
            images.insert(p.apply(&r));
        }
        assert_eq!(p.source.nondeg(0).len(), 4);
        assert_eq!(p.target.nondeg(0).len(), 4);
        assert_eq!(images.len(), 4);
        assert_eq!(
            p.apply(&SimplexRef::nondeg("(0,1)".to_string())),
            SimplexRef::nondeg("((0)|(1))".to_string())
        );
        assert_eq!(bijectivity_witness(&p), None);
    }

    #[test]
    fn chain_comparison_glues_pairs_over_shared_stages() {
        let phi = finite_sets(2);
        let x = monoid_operad(&z2(), &phi, 2, 2).unwrap();
        let cat = phi.carrier();
        let swap = "2>2:10";
        let merge = "2>1:00";
        let seq = chain_of(cat, &["2", "2", "1"], &[swap, merge]);
        let (_, s) = segal_maps(&x, &seq).unwrap();
        assert_eq!(bijectivity_witness(&s), None);
        assert_eq!(
            s.apply(&SimplexRef::nondeg("(0,1)".to_string())),
            SimplexRef::nondeg("((0,1)|(1,0)|(1,0))".to_string())
        );
    }

    #[test]
    fn degree_zero_chain_comparison_is_the_identity() {
        let phi = finite_sets(2);
        let x = monoid_operad(&z2(), &phi, 1, 2).unwrap();
        let seq = chain_of(phi.carrier(), &["1"], &[]);
        let (_, s) = segal_maps(&x, &seq).unwrap();
        assert!(s.is_iso());
        assert_eq!(s.source, s.target);
    }

    #[test]
    fn completeness_of_the_two_element_group_is_bijective_on_truncation() {
        let phi = finite_sets(2);
        let x = monoid_operad(&z2(), &phi, 2, 2).unwrap();
        let r = completeness_map(&x, 2).unwrap();
        assert_eq!(bijectivity_witness(&r.map), None);
        assert!(!r.point_valued);
        let report = check_operad(&x, 2);
        let last = report.instances.last().unwrap();
        assert_eq!(last.kind, MapKind::Completeness);
        assert_eq!(last.verdict, EquivVerdict::BijectiveOnTruncation);
    }

    #[test]
    fn completeness_needs_the_constant_chains() {
        let phi = finite_sets(2);
        let x = monoid_operad(&z2(), &phi, 1, 2).unwrap();
        assert!(matches!(completeness_map(&x, 2), Err(SegalError::Truncation(_))));
    }

    #[test]
    fn corrupted_arrow_breaks_the_chain_cone() {
        let phi = finite_sets(2);
        let mut x = monoid_operad(&z2(), &phi, 2, 2).unwrap();
        let cat = phi.carrier();
        let seq = chain_of(cat, &["2", "2", "1"], &["2>2:10", "2>1:00"]);
        let oi = x.sequence_index(&seq).unwrap();

        // Replace the arrow restricting to the shared stage with a constant
        // map of the right shape but the wrong values.
        let vi = x.sequence_index(&PhiSequence::point(cat.object_index("2").unwrap())).unwrap();
        let pair = chain_of(cat, &["2", "2"], &["2>2:10"]);
        let pi = x.sequence_index(&pair).unwrap();
        let incl = PhiSeqMap {
            p: vec![1],
            q: vec![cat.identity[cat.object_index("2").unwrap()]],
        };
        let mi = locate_map(&x, vi, pi, &incl, &[]).unwrap();
        let constant = SimplexRef::nondeg("(0,0)".to_string());
        for (_, img) in x.arrows[mi].assign.iter_mut() {
            *img = constant.clone();
        }

        let err = chain_comparison(&x, oi).unwrap_err();
        assert!(matches!(err, SegalError::Malformed(_)));
        let report = check_operad(&x, 2);
        assert!(!report.passed());
        assert!(report.functorial.is_some());
        assert!(report
            .instances
            .iter()
            .any(|i| matches!(&i.verdict, EquivVerdict::Fail(_)) && i.kind == MapKind::Chain));
    }

    #[test]
    fn corrupted_arrow_breaks_the_completeness_cone() {
        let phi = trivial();
        let x = monoid_operad(&z2(), &phi, 2, 1).unwrap();
        let mut bad = x.clone();
        let face = constant_arrow(&x, &[0, 1, 2], 0, 1, vec![0]).unwrap();
        let other = SimplexRef::nondeg("(1)".to_string());
        for (_, img) in bad.arrows[face].assign.iter_mut() {
            *img = other.clone();
        }
        assert!(completeness_map(&x, 2).is_ok());
        assert!(matches!(completeness_map(&bad, 2), Err(SegalError::Malformed(_))));
    }

    #[test]
    fn doubled_terminal_instances_are_isomorphisms() {
        let phi = trivial();
        let base = crate::seqcat::delta_phi_box_data(&phi, 3, 1, 1).unwrap();
        let x = terminal_diagram(&phi, super::super::DiagramBase::Doubled(base));
        let report = check_operad(&x, 3);
        assert!(report.twofold);
        assert!(report.instances.iter().all(|i| i.verdict == EquivVerdict::Iso));
        assert!(report.note.contains("reindex decorations"));
    }

    #[test]
    fn pullback_instances_reduce_to_their_plain_shadows() {
        for phi in [trivial(), finite_sets(2)] {
            let bounds = if phi.carrier().objects.len() == 1 { (2, 1) } else { (1, 1) };
            let x = monoid_operad(&z2(), &phi, bounds.0, bounds.1).unwrap();
            let w = wreath_inclusion(&phi, bounds.0, bounds.1).unwrap();
            let y = pullback_diagram(&x, &w).unwrap();
            for b in 0..y.values.len() {
                let o = w.project.obj_map[b];
                assert_eq!(product_comparison(&y, b).unwrap(), product_comparison(&x, o).unwrap());
                assert_eq!(chain_comparison(&y, b).unwrap(), chain_comparison(&x, o).unwrap());
            }
            let depth = bounds.0.min(1);
            assert_eq!(
                completeness2_map(&y, depth).unwrap().map,
                completeness_map(&x, depth).unwrap().map
            );
        }
    }

    #[test]
    fn corrupted_doubled_diagram_is_detected() {
        let phi = finite_sets(2);
        let x = monoid_operad(&z2(), &phi, 1, 1).unwrap();
        let w = wreath_inclusion(&phi, 1, 1).unwrap();
        let mut y = pullback_diagram(&x, &w).unwrap();
        let m = (0..y.arrows.len())
            .find(|&m| {
                !y.base.category().is_identity(m) && y.arrows[m].source.nondeg(0).len() == 2
            })
            .unwrap();
        let constant = y.arrows[m].apply(&SimplexRef::nondeg(
            y.arrows[m].source.nondeg(0)[0].clone(),
        ));
        for (_, img) in y.arrows[m].assign.iter_mut() {
            *img = constant.clone();
        }
        let report = check_operad(&y, 1);
        assert!(!report.passed());
        assert!(report.functorial.is_some());
    }
}

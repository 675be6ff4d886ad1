//! Reading structure back out: fibers of a fibration with chosen
//! transports, polycomposition fibers, the tensor universal property, and
//! maps of algebra objects over a shared base.

use std::collections::{BTreeMap, BTreeSet};

use crate::lifting::{classify, DecoratedMap, Decoration};
use crate::opcat::OperatorCategory;
use crate::scaled::{check_marked_map, check_scaled_map, MarkedSS, ScaledSS};
use crate::seqcat::{nerve_op, Phi2SeqMap, PhiSeqMap, PhiSequence, Scaling};
use crate::simpset::{vertex_seq, SimplexRef, SimplicialMap, SimplicialSet};

use super::maps::{locate_map, locate_object};
use super::{all_refs, DiagramBase, OperadDiagram, SegalError};

/// A diagram read off a fibration.  The transports are chosen, so they
/// either compose exactly or the first broken composite is recorded.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub diagram: OperadDiagram,
    pub functorial: Option<String>,
}

/// Reads the fiberwise diagram of a fibration over the sharp nerve of the
/// base truncation.  The fiber over an object collects the simplices whose
/// image degenerates onto its vertex.  Each base morphism transports fiber
/// vertices along the lexicographically least edge lift and matches higher
/// simplices by their transported vertex strings, so extraction demands
/// vertex-determined fibers and fails when a lift is missing or ambiguous
/// at this scale.
pub fn fiber_extract(
    q: &DecoratedMap,
    phi: &OperatorCategory,
    base: DiagramBase,
    depth: usize,
    dim: usize,
) -> Result<Extraction, SegalError> {
    let flags = classify(q, dim).map_err(SegalError::Malformed)?;
    if !flags.left_2fibration {
        return Err(SegalError::Malformed(
            "the projection is not a left fibration at this scale".into(),
        ));
    }
    let nerve = nerve_op(base.truncated(), depth, Scaling::Sharp);
    if q.map.target != nerve.set {
        return Err(SegalError::Base(
            "the projection does not land in the sharp nerve of the base".into(),
        ));
    }
    let cat = base.category();
    let total = &q.map.source;
    let mut values = Vec::new();
    for name in &cat.objects {
        let mut fib = SimplicialSet::new();
        for d in 0..=total.dim() {
            for id in total.nondeg(d) {
                if q.map.apply(&SimplexRef::nondeg(id.clone())).base == *name {
                    let faces = if d == 0 { vec![] } else { total.faces_of(id).to_vec() };
                    fib.add_simplex(id.clone(), d, faces);
                }
            }
        }
        values.push(fib);
    }
    let mut arrows = Vec::new();
    for (mi, info) in cat.mors.iter().enumerate() {
        if cat.is_identity(mi) {
            arrows.push(SimplicialMap::identity(&values[info.src]));
            continue;
        }
        // In the nerve of the opposite, the edge named by the morphism runs
        // from the vertex of its target to the vertex of its source, so the
        // transport lands where the contravariant arrow must.
        let edge = SimplexRef::nondeg(info.id.clone());
        let from = &values[info.tgt];
        let to = &values[info.src];
        let mut vertex_image: BTreeMap<String, String> = BTreeMap::new();
        for vid in from.nondeg(0) {
            let start = SimplexRef::nondeg(vid.clone());
            let mut lifts: Vec<&String> = total
                .nondeg(1)
                .iter()
                .filter(|eid| {
                    q.map.apply(&SimplexRef::nondeg((*eid).clone())) == edge
                        && total.faces_of(eid)[1] == start
                })
                .collect();
            lifts.sort();
            let Some(chosen) = lifts.first() else {
                return Err(SegalError::Malformed(format!(
                    "no edge of the total space lifts {} at {vid}",
                    info.id
                )));
            };
            vertex_image.insert(vid.clone(), total.faces_of(chosen)[0].base.clone());
        }
        let mut assign = BTreeMap::new();
        for d in 0..=from.dim() {
            for id in from.nondeg(d) {
                if d == 0 {
                    assign.insert(id.clone(), SimplexRef::nondeg(vertex_image[id].clone()));
                    continue;
                }
                let want: Vec<String> = vertex_seq(from, &SimplexRef::nondeg(id.clone()))
                    .into_iter()
                    .map(|v| vertex_image[&v].clone())
                    .collect();
                let mut found: Vec<SimplexRef> = to
                    .refs_at(d)
                    .into_iter()
                    .filter(|r| vertex_seq(to, r) == want)
                    .collect();
                match found.len() {
                    1 => {
                        assign.insert(id.clone(), found.pop().unwrap());
                    }
                    0 => {
                        return Err(SegalError::Malformed(format!(
                            "no simplex over {} matches the transported vertices of {id}",
                            cat.objects[info.src]
                        )))
                    }
                    _ => {
                        return Err(SegalError::Malformed(format!(
                            "the transport of {id} along {} is ambiguous at this scale",
                            info.id
                        )))
                    }
                }
            }
        }
        let map =
            SimplicialMap::new(from.clone(), to.clone(), assign).map_err(SegalError::Malformed)?;
        arrows.push(map);
    }
    let diagram = OperadDiagram { phi: phi.clone(), base, values, arrows };
    let functorial = diagram.validate().err().map(|e| e.to_string());
    Ok(Extraction { diagram, functorial })
}

/// The arrow restricting a chain value to its stage `k`, located in the
/// base; on decorated bases the stage keeps its decoration unchanged.
fn stage_arrow(
    x: &OperadDiagram,
    obj: usize,
    outer: &PhiSequence,
    k: usize,
) -> Result<usize, SegalError> {
    let cat = x.phi.carrier();
    let vertex_outer = PhiSequence::point(outer.objects[k]);
    let incl = PhiSeqMap { p: vec![k], q: vec![cat.identity[outer.objects[k]]] };
    match &x.base {
        DiagramBase::Chains(_) => {
            let vi = locate_object(x, &vertex_outer, &[])?;
            locate_map(x, vi, obj, &incl, &[])
        }
        DiagramBase::Doubled(d) => {
            let dec = d.objects[obj].decorations[k].clone();
            let dec_map = PhiSeqMap::identity(cat, &dec);
            let vi = locate_object(x, &vertex_outer, &[dec])?;
            locate_map(x, vi, obj, &incl, &[dec_map])
        }
    }
}

/// The simplices of a chain value that restrict to a chosen vertex at every
/// stage.  The fiber is a subcomplex of the value; a note flags fibers with
/// cells above dimension one, where this check only reads raw simplices.
#[derive(Clone, Debug)]
pub struct PolyFiber {
    pub set: SimplicialSet,
    pub note: Option<String>,
}

/// Cuts out the fiber of a diagram value over one chosen vertex per stage
/// of its chain.
pub fn polycomposition(
    x: &OperadDiagram,
    obj: usize,
    vertex: &[String],
) -> Result<PolyFiber, SegalError> {
    let outer = x.base.outer(obj).clone();
    let n = outer.degree();
    if vertex.len() != n + 1 {
        return Err(SegalError::Malformed(format!(
            "{} chosen vertices for {} stages",
            vertex.len(),
            n + 1
        )));
    }
    let mut stage = Vec::new();
    for k in 0..=n {
        stage.push(stage_arrow(x, obj, &outer, k)?);
        let val = &x.arrows[stage[k]].target;
        if !val.nondeg(0).contains(&vertex[k]) {
            return Err(SegalError::Missing(format!(
                "{} is not a vertex of the stage {k} value",
                vertex[k]
            )));
        }
    }
    let mut fib = SimplicialSet::new();
    let space = &x.values[obj];
    for d in 0..=space.dim() {
        for id in space.nondeg(d) {
            let r = SimplexRef::nondeg(id.clone());
            if (0..=n).all(|k| x.arrows[stage[k]].apply(&r).base == vertex[k]) {
                let faces = if d == 0 { vec![] } else { space.faces_of(id).to_vec() };
                fib.add_simplex(id.clone(), d, faces);
            }
        }
    }
    let note = (fib.dim() >= 2).then(|| {
        "the fiber has cells above dimension one, so reading it as a space of composites needs the full scaled structure".to_string()
    });
    Ok(PolyFiber { set: fib, note })
}

/// The outcome of the tensor comparison: every route and fiber matched,
/// with the number of vertex triples checked, or the first witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorVerdict {
    Pass { vertices: usize },
    Fail { witness: String },
}

/// Finds the arrow restricting the full chain onto its tail: the enumerated
/// base map with the given outer reindexing and identity components,
/// preferring identity decoration maps when the base is decorated.
fn restriction_arrow(
    x: &OperadDiagram,
    tail: usize,
    full: usize,
    incl: &PhiSeqMap,
) -> Option<usize> {
    match &x.base {
        DiagramBase::Chains(d) => d.map_index(tail, full, incl),
        DiagramBase::Doubled(d) => {
            let cat = x.phi.carrier();
            let exact = Phi2SeqMap {
                outer: incl.clone(),
                decorations: d.objects[tail]
                    .decorations
                    .iter()
                    .map(|c| PhiSeqMap::identity(cat, c))
                    .collect(),
            };
            d.map_index(tail, full, &exact).or_else(|| {
                let mors = &d.truncated.category.mors;
                (0..d.maps.len()).find(|&m| {
                    mors[m].src == tail && mors[m].tgt == full && d.maps[m].outer == *incl
                })
            })
        }
    }
}

/// Checks the universal property of a two-step contraction against its
/// tail, exhaustively: restricting to a tail stage through the tail must
/// agree with restricting directly, and the fiber of the full value over
/// every triple of stage vertices must match its iterated form through the
/// tail fiber.
pub fn check_tensor_universal_property(
    x: &OperadDiagram,
    full: usize,
    tail: usize,
) -> Result<TensorVerdict, SegalError> {
    let cat = x.phi.carrier();
    let outer = x.base.outer(full).clone();
    if outer.degree() != 2 {
        return Err(SegalError::Malformed("the full chain must have three stages".into()));
    }
    let touter = x.base.outer(tail).clone();
    if touter.objects[..] != outer.objects[1..] || touter.arrows[..] != outer.arrows[1..] {
        return Err(SegalError::Malformed(
            "the tail chain must be the last two stages of the full chain".into(),
        ));
    }
    let full_stage: Vec<usize> =
        (0..=2).map(|k| stage_arrow(x, full, &outer, k)).collect::<Result<_, _>>()?;
    let tail_stage: Vec<usize> =
        (0..=1).map(|k| stage_arrow(x, tail, &touter, k)).collect::<Result<_, _>>()?;
    let incl = PhiSeqMap {
        p: vec![1, 2],
        q: touter.objects.iter().map(|&o| cat.identity[o]).collect(),
    };
    let Some(restr) = restriction_arrow(x, tail, full, &incl) else {
        return Ok(TensorVerdict::Fail {
            witness: "no restriction onto the tail stages is enumerated because the decorations differ".into(),
        });
    };
    for j in 0..=1 {
        let through = &x.arrows[tail_stage[j]];
        let direct = &x.arrows[full_stage[j + 1]];
        if through.target != direct.target {
            return Ok(TensorVerdict::Fail {
                witness: format!(
                    "the routes to stage {} land in different values because the decorations differ",
                    j + 1
                ),
            });
        }
        for r in all_refs(&x.values[full]) {
            let via_tail = through.apply(&x.arrows[restr].apply(&r));
            let straight = direct.apply(&r);
            if via_tail != straight {
                return Ok(TensorVerdict::Fail {
                    witness: format!(
                        "the two routes from {} to stage {} disagree: {straight} against {via_tail}",
                        r.base,
                        j + 1
                    ),
                });
            }
        }
    }
    let stage_vals: Vec<&SimplicialSet> =
        full_stage.iter().map(|&m| &x.arrows[m].target).collect();
    let head = &x.values[full];
    let mut vertices = 0;
    for w0 in stage_vals[0].nondeg(0) {
        for w1 in stage_vals[1].nondeg(0) {
            for w2 in stage_vals[2].nondeg(0) {
                let sel = [w0, w1, w2];
                let over = |id: &String, arrows: &[usize], want: &[&String]| {
                    let r = SimplexRef::nondeg(id.clone());
                    arrows
                        .iter()
                        .zip(want)
                        .all(|(&m, w)| x.arrows[m].apply(&r).base == **w)
                };
                let direct: BTreeSet<&String> = head
                    .nondeg(0)
                    .iter()
                    .filter(|id| over(id, &full_stage, &sel))
                    .collect();
                let tail_fiber: BTreeSet<String> = x.values[tail]
                    .nondeg(0)
                    .iter()
                    .filter(|id| over(id, &tail_stage, &sel[1..]))
                    .cloned()
                    .collect();
                let iterated: BTreeSet<&String> = head
                    .nondeg(0)
                    .iter()
                    .filter(|id| {
                        let r = SimplexRef::nondeg((*id).clone());
                        x.arrows[full_stage[0]].apply(&r).base == *sel[0]
                            && tail_fiber.contains(&x.arrows[restr].apply(&r).base)
                    })
                    .collect();
                if direct != iterated {
                    return Ok(TensorVerdict::Fail {
                        witness: format!(
                            "the fiber over ({w0}, {w1}, {w2}) differs from its iterated form"
                        ),
                    });
                }
                vertices += 1;
            }
        }
    }
    Ok(TensorVerdict::Pass { vertices })
}

/// A per-level report on a map of total spaces over one base: each level
/// records the first simplex that fails to commute with the projections,
/// and the decoration field the first thin or marked cell lost.
#[derive(Clone, Debug)]
pub struct AlgebraReport {
    pub levels: Vec<(usize, Option<String>)>,
    pub decorations: Option<String>,
}

impl AlgebraReport {
    /// True when every level commutes and decorations are preserved.
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|(_, w)| w.is_none()) && self.decorations.is_none()
    }
}

/// Checks a map between the total spaces of two projections to one base:
/// it must commute with the projections levelwise and preserve whatever
/// decorations the two sides carry.
pub fn check_algebra_object(
    f: &SimplicialMap,
    p: &DecoratedMap,
    q: &DecoratedMap,
) -> Result<AlgebraReport, SegalError> {
    if p.map.target != q.map.target {
        return Err(SegalError::Base("the two projections have different bases".into()));
    }
    if f.source != p.map.source || f.target != q.map.source {
        return Err(SegalError::Malformed("the map does not join the two total spaces".into()));
    }
    f.check().map_err(SegalError::Malformed)?;
    let mut levels = Vec::new();
    for d in 0..=f.source.dim() {
        let mut flaw = None;
        for id in f.source.nondeg(d) {
            let r = SimplexRef::nondeg(id.clone());
            if q.map.apply(&f.apply(&r)) != p.map.apply(&r) {
                flaw = Some(format!("{id} projects differently through the two sides"));
                break;
            }
        }
        levels.push((d, flaw));
    }
    let decorations = match (&p.src_dec, &q.src_dec) {
        (Decoration::Plain, Decoration::Plain) => None,
        (Decoration::Scaled(a), Decoration::Scaled(b)) => {
            let src = ScaledSS { set: f.source.clone(), thin: a.clone() };
            let dst = ScaledSS { set: f.target.clone(), thin: b.clone() };
            check_scaled_map(f, &src, &dst)
                .err()
                .map(|r| format!("the thin cell {r} is not sent to a thin cell"))
        }
        (Decoration::Marked(a), Decoration::Marked(b)) => {
            let src = MarkedSS { set: f.source.clone(), marked: a.clone() };
            let dst = MarkedSS { set: f.target.clone(), marked: b.clone() };
            check_marked_map(f, &src, &dst)
                .err()
                .map(|r| format!("the marked edge {r} is not sent to a marked edge"))
        }
        _ => Some("the two sides carry different kinds of decoration".into()),
    };
    Ok(AlgebraReport { levels, decorations })
}

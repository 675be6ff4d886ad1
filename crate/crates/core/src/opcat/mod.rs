//! Operator categories: finite categories with a terminal object and a
//! designated fiber for every map and every point of its target.
//!
//! Everything is decided by exhaustive search over the carrier. The terminal
//! axiom quantifies over all objects, and each designated fiber is tested
//! against every cone for the pullback's universal property. Points of an
//! object are the maps out of the terminal object, so reindexing along a
//! point is a table lookup and downstream constructions never solve for
//! limits at runtime.

mod builtin;
mod io;
mod wreath;

pub use builtin::{builtin, finite_sets, iterated_ordered_wreath, ordered_sets, trivial};
pub(crate) use builtin::word_id;
pub use io::{parse_opcat, render_opcat};
pub use wreath::{wreath, SIZE_BOUND};

use crate::simpset::{FinCategory, FinFunctor};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

/// Violations of the operator-category axioms, reported with the first
/// offending witness.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("carrier category is malformed: {0}")]
    Carrier(String),
    #[error("{object} has {count} maps to the terminal object instead of one")]
    Terminal { object: String, count: usize },
    #[error("{point} is not a point of {object}")]
    NotPoint { point: String, object: String },
    #[error("no designated fiber for {map} over {point}")]
    MissingFiber { map: String, point: String },
    #[error("designated fiber for {map} over {point} is malformed: {reason}")]
    BadFiber { map: String, point: String, reason: String },
    #[error("designated fiber for {map} over {point} is not a pullback: {reason}")]
    NotPullback { map: String, point: String, reason: String },
    #[error("{count} objects exceed the size bound {bound}")]
    SizeBound { count: usize, bound: usize },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
}

/// A designated fiber: the chosen pullback of a map along a point of its
/// target, given as an object with a projection to the map's source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub object: usize,
    pub projection: usize,
}

/// One step of an interval-inclusion factorization: a morphism that equals a
/// designated fiber projection composed with an isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberStep {
    /// The fiber inclusion itself.
    pub inclusion: usize,
    /// The map whose designated fiber witnesses it.
    pub via: usize,
    /// The point of the witnessing map's target.
    pub point: usize,
    /// Isomorphism from the inclusion's source onto the designated fiber.
    pub iso: usize,
}

/// A finite category with a terminal object and a complete table of
/// designated fibers, one per map and point of its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorCategory {
    carrier: FinCategory,
    terminal: usize,
    fibers: BTreeMap<(usize, usize), Fiber>,
}

impl OperatorCategory {
    /// Assembles an instance without checking any axiom; `check` decides
    /// validity separately so malformed input can still be inspected.
    pub fn from_table(
        carrier: FinCategory,
        terminal: usize,
        fibers: BTreeMap<(usize, usize), Fiber>,
    ) -> Self {
        OperatorCategory { carrier, terminal, fibers }
    }

    pub fn carrier(&self) -> &FinCategory {
        &self.carrier
    }

    pub fn terminal(&self) -> usize {
        self.terminal
    }

    /// Maps out of the terminal object, in morphism order.
    pub fn points(&self, object: usize) -> Vec<usize> {
        self.carrier.hom(self.terminal, object)
    }

    /// The unique map to the terminal object; panics when the terminal axiom
    /// fails, so run `check` first on untrusted data.
    pub fn terminal_map(&self, object: usize) -> usize {
        self.carrier.hom(object, self.terminal)[0]
    }

    /// Designated fiber of a map over a point of its target.
    pub fn fiber(&self, map: usize, point: usize) -> Result<&Fiber, OperatorError> {
        let m = &self.carrier.mors[map];
        let p = &self.carrier.mors[point];
        if p.src != self.terminal || p.tgt != m.tgt {
            return Err(OperatorError::NotPoint {
                point: p.id.clone(),
                object: self.carrier.objects[m.tgt].clone(),
            });
        }
        self.fibers.get(&(map, point)).ok_or_else(|| OperatorError::MissingFiber {
            map: m.id.clone(),
            point: p.id.clone(),
        })
    }

    /// Runs every axiom: carrier laws, terminal uniqueness, completeness of
    /// the fiber table, and the pullback property of each designated fiber.
    pub fn check(&self) -> Result<(), OperatorError> {
        self.carrier.validate().map_err(OperatorError::Carrier)?;
        self.check_terminal()?;
        self.check_fibers()
    }

    fn check_terminal(&self) -> Result<(), OperatorError> {
        for o in 0..self.carrier.objects.len() {
            let count = self.carrier.hom(o, self.terminal).len();
            if count != 1 {
                return Err(OperatorError::Terminal {
                    object: self.carrier.objects[o].clone(),
                    count,
                });
            }
        }
        Ok(())
    }

    fn check_fibers(&self) -> Result<(), OperatorError> {
        let c = &self.carrier;
        for f in 0..c.mors.len() {
            for i in self.points(c.mors[f].tgt) {
                if !self.fibers.contains_key(&(f, i)) {
                    return Err(OperatorError::MissingFiber {
                        map: c.mors[f].id.clone(),
                        point: c.mors[i].id.clone(),
                    });
                }
            }
        }
        for (&(f, i), fib) in &self.fibers {
            let names = || (c.mors[f].id.clone(), c.mors[i].id.clone());
            if c.mors[i].src != self.terminal || c.mors[i].tgt != c.mors[f].tgt {
                let (map, point) = names();
                return Err(OperatorError::BadFiber {
                    map,
                    point,
                    reason: "key is not a point of the map's target".into(),
                });
            }
            let proj = &c.mors[fib.projection];
            if proj.src != fib.object || proj.tgt != c.mors[f].src {
                let (map, point) = names();
                return Err(OperatorError::BadFiber {
                    map,
                    point,
                    reason: "projection endpoints do not match".into(),
                });
            }
            if c.compose(f, fib.projection) != c.compose(i, self.terminal_map(fib.object)) {
                let (map, point) = names();
                return Err(OperatorError::NotPullback {
                    map,
                    point,
                    reason: "the square does not commute".into(),
                });
            }
            for t_obj in 0..c.objects.len() {
                let bang = self.terminal_map(t_obj);
                for t in c.hom(t_obj, c.mors[f].src) {
                    if c.compose(f, t) != c.compose(i, bang) {
                        continue;
                    }
                    let n = c
                        .hom(t_obj, fib.object)
                        .into_iter()
                        .filter(|&h| c.compose(fib.projection, h) == t)
                        .count();
                    if n != 1 {
                        let (map, point) = names();
                        return Err(OperatorError::NotPullback {
                            map,
                            point,
                            reason: format!(
                                "cone {} from {} has {n} factorizations",
                                c.mors[t].id, c.objects[t_obj]
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// All fiber inclusions, each with one witness: every composite of a
    /// designated projection with an isomorphism into its fiber object.
    pub fn fiber_inclusions(&self) -> BTreeMap<usize, FiberStep> {
        let c = &self.carrier;
        let mut out = BTreeMap::new();
        for (&(via, point), fib) in &self.fibers {
            for a in 0..c.objects.len() {
                for iso in c.hom(a, fib.object) {
                    if !c.is_iso(iso) {
                        continue;
                    }
                    let p = c.compose(fib.projection, iso);
                    out.entry(p).or_insert(FiberStep { inclusion: p, via, point, iso });
                }
            }
        }
        out
    }

    /// All interval inclusions: the closure of the fiber inclusions under
    /// composition, with identities as the empty composite.
    pub fn interval_inclusion_closure(&self) -> BTreeSet<usize> {
        let c = &self.carrier;
        let mut by_src: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for p in self.fiber_inclusions().into_keys() {
            by_src.entry(c.mors[p].src).or_default().push(p);
        }
        let mut set: BTreeSet<usize> = c.identity.iter().copied().collect();
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        while let Some(g) = queue.pop_front() {
            for &p in by_src.get(&c.mors[g].tgt).map(Vec::as_slice).unwrap_or(&[]) {
                let next = c.compose(p, g);
                if set.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        set
    }

    /// Searches for a factorization of `f` into fiber inclusions and returns
    /// the steps in application order; the identity gets the empty chain.
    pub fn interval_witness(&self, f: usize) -> Option<Vec<FiberStep>> {
        let c = &self.carrier;
        let steps = self.fiber_inclusions();
        let mut by_src: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &p in steps.keys() {
            by_src.entry(c.mors[p].src).or_default().push(p);
        }
        let start = c.identity[c.mors[f].src];
        let mut prev: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut seen: BTreeSet<usize> = [start].into();
        let mut queue: VecDeque<usize> = [start].into();
        while let Some(g) = queue.pop_front() {
            if g == f {
                let mut chain = Vec::new();
                let mut at = f;
                while at != start {
                    let (before, step) = prev[&at];
                    chain.push(steps[&step].clone());
                    at = before;
                }
                chain.reverse();
                return Some(chain);
            }
            for &p in by_src.get(&c.mors[g].tgt).map(Vec::as_slice).unwrap_or(&[]) {
                let next = c.compose(p, g);
                if seen.insert(next) {
                    prev.insert(next, (g, p));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    pub fn is_interval_inclusion(&self, f: usize) -> bool {
        self.interval_witness(f).is_some()
    }
}

/// Failure modes of maps of operator categories, in the order checked.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OperatorMapError {
    #[error("not a functor: {0}")]
    Functor(String),
    #[error("the image {object} of the terminal object is not terminal")]
    Terminal { object: String },
    #[error("the fiber of {map} over {point} is not preserved")]
    Fiber { map: String, point: String },
    #[error("the point map at {object} misses {point}")]
    PointsSurjective { object: String, point: String },
    #[error("the point map at {object} identifies two points")]
    PointsInjective { object: String },
}

/// Checks that a functor between carriers is a map of operator categories:
/// it preserves the terminal object and designated fibers up to isomorphism
/// over the projections, and its point maps are onto. Bijectivity of the
/// point maps follows from those clauses, but is verified independently.
pub fn check_operator_map(
    f: &FinFunctor,
    src: &OperatorCategory,
    dst: &OperatorCategory,
) -> Result<(), OperatorMapError> {
    f.check(&src.carrier, &dst.carrier).map_err(OperatorMapError::Functor)?;
    let dc = &dst.carrier;
    let f1 = f.obj_map[src.terminal];
    for o in 0..dc.objects.len() {
        if dc.hom(o, f1).len() != 1 {
            return Err(OperatorMapError::Terminal { object: dc.objects[f1].clone() });
        }
    }
    let u = dc.hom(dst.terminal, f1)[0];
    for (&(q, i), fib) in &src.fibers {
        let image_point = dc.compose(f.mor_map[i], u);
        let preserved = dst.fibers.get(&(f.mor_map[q], image_point)).is_some_and(|dfib| {
            dc.hom(f.obj_map[fib.object], dfib.object).into_iter().any(|phi| {
                dc.is_iso(phi)
                    && dc.compose(dfib.projection, phi) == f.mor_map[fib.projection]
            })
        });
        if !preserved {
            return Err(OperatorMapError::Fiber {
                map: src.carrier.mors[q].id.clone(),
                point: src.carrier.mors[i].id.clone(),
            });
        }
    }
    for x in 0..src.carrier.objects.len() {
        let image: Vec<usize> =
            src.points(x).iter().map(|&t| dc.compose(f.mor_map[t], u)).collect();
        for p in dst.points(f.obj_map[x]) {
            if !image.contains(&p) {
                return Err(OperatorMapError::PointsSurjective {
                    object: src.carrier.objects[x].clone(),
                    point: dc.mors[p].id.clone(),
                });
            }
        }
        if image.iter().collect::<BTreeSet<_>>().len() != image.len() {
            return Err(OperatorMapError::PointsInjective {
                object: src.carrier.objects[x].clone(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_pair_has_no_terminal() {
        let carrier =
            FinCategory::from_parts(vec!["a".into(), "b".into()], vec![], |_, _| None);
        let c = OperatorCategory::from_table(carrier, 0, BTreeMap::new());
        assert_eq!(
            c.check(),
            Err(OperatorError::Terminal { object: "b".into(), count: 0 })
        );
    }

    #[test]
    fn fiber_of_identity_is_the_point_inclusion() {
        let c = finite_sets(3);
        let id3 = c.carrier().identity[3];
        for (j, i) in c.points(3).into_iter().enumerate() {
            let fib = c.fiber(id3, i).unwrap();
            assert_eq!(c.carrier().objects[fib.object], "1");
            assert_eq!(c.carrier().mors[fib.projection].id, format!("1>3:{j}"));
        }
    }

    #[test]
    fn fibers_partition_every_map() {
        // Object names are sizes, so the fiber sizes over all points of the
        // target must sum to the size of the source.
        let c = finite_sets(3);
        for f in 0..c.carrier().mors.len() {
            let src = c.carrier().mors[f].src;
            let total: usize = c
                .points(c.carrier().mors[f].tgt)
                .into_iter()
                .map(|i| c.fiber(f, i).unwrap().object)
                .sum();
            assert_eq!(total, src, "partition fails at {}", c.carrier().mors[f].id);
        }
    }

    #[test]
    fn non_points_are_rejected() {
        let c = finite_sets(2);
        let f = c.carrier().mor_index("2>2:00").unwrap();
        let not_point = c.carrier().mor_index("2>2:11").unwrap();
        assert!(matches!(c.fiber(f, not_point), Err(OperatorError::NotPoint { .. })));
    }

    /// Whether a morphism of the sized-set categories is injective, read off
    /// its id independently of any fiber search.
    fn is_mono_word(id: &str) -> bool {
        let digits: Vec<char> = match id.split_once(':') {
            None => return true,
            Some((_, "-")) => return true,
            Some((_, w)) => w.chars().collect(),
        };
        let set: BTreeSet<char> = digits.iter().copied().collect();
        set.len() == digits.len()
    }

    #[test]
    fn interval_inclusions_are_the_monomorphisms_of_sets() {
        let c = finite_sets(3);
        for f in 0..c.carrier().mors.len() {
            assert_eq!(
                c.is_interval_inclusion(f),
                is_mono_word(&c.carrier().mors[f].id),
                "disagreement at {}",
                c.carrier().mors[f].id
            );
        }
    }

    #[test]
    fn ordered_interval_inclusions_have_contiguous_images() {
        // In the ordered category only inclusions of consecutive runs arise
        // as composites of fiber inclusions; the gap map 02 is a mono but
        // not an interval inclusion.
        let c = ordered_sets(3);
        for f in 0..c.carrier().mors.len() {
            let id = &c.carrier().mors[f].id;
            let contiguous = is_mono_word(id) && {
                let digits: Vec<u32> = match id.split_once(':') {
                    None => vec![],
                    Some((_, "-")) => vec![],
                    Some((_, w)) => w.chars().map(|ch| ch.to_digit(10).unwrap()).collect(),
                };
                digits.windows(2).all(|p| p[1] == p[0] + 1)
            };
            assert_eq!(c.is_interval_inclusion(f), contiguous, "disagreement at {id}");
        }
        let gap = c.carrier().mor_index("2>3:02").unwrap();
        assert!(!c.is_interval_inclusion(gap));
    }

    #[test]
    fn witness_chains_compose_back_to_the_map() {
        let c = finite_sets(2);
        for f in 0..c.carrier().mors.len() {
            let Some(chain) = c.interval_witness(f) else { continue };
            let mut acc = c.carrier().identity[c.carrier().mors[f].src];
            for step in &chain {
                acc = c.carrier().compose(step.inclusion, acc);
                let fib = &c.fibers[&(step.via, step.point)];
                assert_eq!(
                    c.carrier().compose(fib.projection, step.iso),
                    step.inclusion
                );
            }
            assert_eq!(acc, f);
        }
        let id2 = c.carrier().identity[2];
        assert_eq!(c.interval_witness(id2), Some(vec![]));
    }

    #[test]
    fn closure_agrees_with_the_witness_search() {
        for c in [finite_sets(2), ordered_sets(3)] {
            let closure = c.interval_inclusion_closure();
            for f in 0..c.carrier().mors.len() {
                assert_eq!(closure.contains(&f), c.is_interval_inclusion(f));
            }
        }
    }

    #[test]
    fn identity_functors_and_composites_pass() {
        let o = ordered_sets(2);
        let f = finite_sets(2);
        let id = FinFunctor {
            obj_map: (0..o.carrier().objects.len()).collect(),
            mor_map: (0..o.carrier().mors.len()).collect(),
        };
        assert_eq!(check_operator_map(&id, &o, &o), Ok(()));
        // Ordered sets include into sets with the same object and map names.
        let incl = FinFunctor {
            obj_map: o
                .carrier()
                .objects
                .iter()
                .map(|n| f.carrier().object_index(n).unwrap())
                .collect(),
            mor_map: o
                .carrier()
                .mors
                .iter()
                .map(|m| f.carrier().mor_index(&m.id).unwrap())
                .collect(),
        };
        assert_eq!(check_operator_map(&incl, &o, &f), Ok(()));
        let t = trivial();
        let into_o = FinFunctor {
            obj_map: vec![o.carrier().object_index("1").unwrap()],
            mor_map: vec![o.carrier().identity[1]],
        };
        assert_eq!(check_operator_map(&into_o, &t, &o), Ok(()));
        // Composite of the two passing maps.
        let composite = FinFunctor {
            obj_map: into_o.obj_map.iter().map(|&x| incl.obj_map[x]).collect(),
            mor_map: into_o.mor_map.iter().map(|&m| incl.mor_map[m]).collect(),
        };
        assert_eq!(check_operator_map(&composite, &t, &f), Ok(()));
    }

    #[test]
    fn terminal_preservation_fails_first() {
        let t = trivial();
        let o = ordered_sets(2);
        let bad = FinFunctor { obj_map: vec![2], mor_map: vec![o.carrier().identity[2]] };
        assert!(matches!(
            check_operator_map(&bad, &t, &o),
            Err(OperatorMapError::Terminal { .. })
        ));
    }

    #[test]
    fn collapsing_a_size_breaks_fiber_preservation() {
        // Sending the two-element set to the one-element set merges the two
        // points, so the empty fiber of one point over the other maps to a
        // non-empty designated fiber.
        let o = ordered_sets(2);
        let c = o.carrier();
        let collapse_mor = |m: usize| {
            let (s, t) = (c.mors[m].src.min(1), c.mors[m].tgt.min(1));
            if s == 0 && t == 1 {
                c.mor_index("0>1:-").unwrap()
            } else {
                c.identity[s.max(t).min(1)]
            }
        };
        let f = FinFunctor {
            obj_map: vec![0, 1, 1],
            mor_map: (0..c.mors.len()).map(collapse_mor).collect(),
        };
        assert!(f.check(c, c).is_ok());
        assert!(matches!(
            check_operator_map(&f, &o, &o),
            Err(OperatorMapError::Fiber { .. })
        ));
    }

    #[test]
    fn missing_points_break_surjectivity() {
        // Sending the empty ordered set to the two-element one preserves the
        // terminal object and all (empty) fibers but misses both points.
        let a = ordered_sets(1);
        let b = ordered_sets(2);
        let f = FinFunctor {
            obj_map: vec![2, 1],
            mor_map: vec![
                b.carrier().identity[2],
                b.carrier().identity[1],
                b.carrier().mor_index("2>1:00").unwrap(),
            ],
        };
        assert!(f.check(a.carrier(), b.carrier()).is_ok());
        assert!(matches!(
            check_operator_map(&f, &a, &b),
            Err(OperatorMapError::PointsSurjective { .. })
        ));
    }

    #[test]
    fn point_maps_are_bijective_on_passing_maps() {
        // Bijectivity is implied by the axioms; spot-check it directly for
        // the inclusion of ordered sets into sets.
        let o = ordered_sets(2);
        let f = finite_sets(2);
        let incl = FinFunctor {
            obj_map: o
                .carrier()
                .objects
                .iter()
                .map(|n| f.carrier().object_index(n).unwrap())
                .collect(),
            mor_map: o
                .carrier()
                .mors
                .iter()
                .map(|m| f.carrier().mor_index(&m.id).unwrap())
                .collect(),
        };
        assert_eq!(check_operator_map(&incl, &o, &f), Ok(()));
        for x in 0..o.carrier().objects.len() {
            assert_eq!(o.points(x).len(), f.points(incl.obj_map[x]).len());
        }
    }
}

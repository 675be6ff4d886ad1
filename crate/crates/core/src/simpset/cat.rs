//! Finite categories, functors, and nerves.

use super::set::SimplicialSet;
use super::simplex::SimplexRef;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A morphism in a finite category, with interned source and target objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorInfo {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by an explicit composition table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub mors: Vec<MorInfo>,
    /// Index of the identity of each object.
    pub identity: Vec<usize>,
    /// Composition: `comp[(g, f)] = g ∘ f`, with `f` applied first.
    pub comp: BTreeMap<(usize, usize), usize>,
}

impl FinCategory {
    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn mor_index(&self, id: &str) -> Option<usize> {
        self.mors.iter().position(|m| m.id == id)
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.mors[f].src] == f
    }

    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp[&(g, f)]
    }

    /// Morphisms from `a` to `b`, in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.mors.len())
            .filter(|&f| self.mors[f].src == a && self.mors[f].tgt == b)
            .collect()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let m = &self.mors[f];
        self.hom(m.tgt, m.src).into_iter().any(|g| {
            self.compose(g, f) == self.identity[m.src] && self.compose(f, g) == self.identity[m.tgt]
        })
    }

    /// Checks identities, totality of composition on composable pairs, and
    /// associativity on all composable triples.
    pub fn validate(&self) -> Result<(), String> {
        if self.identity.len() != self.objects.len() {
            return Err("one identity per object required".into());
        }
        for (o, &e) in self.identity.iter().enumerate() {
            if self.mors[e].src != o || self.mors[e].tgt != o {
                return Err(format!("identity of {} has wrong endpoints", self.objects[o]));
            }
        }
        for g in 0..self.mors.len() {
            for f in 0..self.mors.len() {
                if self.mors[f].tgt != self.mors[g].src {
                    if self.comp.contains_key(&(g, f)) {
                        return Err(format!("composite of non-composable pair ({g},{f})"));
                    }
                    continue;
                }
                let gf = *self
                    .comp
                    .get(&(g, f))
                    .ok_or_else(|| format!("missing composite ({g},{f})"))?;
                if self.mors[gf].src != self.mors[f].src || self.mors[gf].tgt != self.mors[g].tgt {
                    return Err(format!("composite ({g},{f}) has wrong endpoints"));
                }
            }
        }
        for f in 0..self.mors.len() {
            if self.compose(f, self.identity[self.mors[f].src]) != f
                || self.compose(self.identity[self.mors[f].tgt], f) != f
            {
                return Err(format!("identity laws fail at {}", self.mors[f].id));
            }
        }
        for h in 0..self.mors.len() {
            for g in 0..self.mors.len() {
                if self.mors[g].tgt != self.mors[h].src {
                    continue;
                }
                for f in 0..self.mors.len() {
                    if self.mors[f].tgt != self.mors[g].src {
                        continue;
                    }
                    if self.compose(self.compose(h, g), f) != self.compose(h, self.compose(g, f)) {
                        return Err(format!("associativity fails on ({h},{g},{f})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a category from object names and non-identity morphisms with a
    /// composition rule; identities and identity composites are filled in.
    pub fn from_parts(
        objects: Vec<String>,
        mors: Vec<(String, usize, usize)>,
        compose: impl Fn(&str, &str) -> Option<String>,
    ) -> Self {
        let mut all = Vec::new();
        let mut identity = Vec::new();
        for (o, name) in objects.iter().enumerate() {
            identity.push(all.len());
            all.push(MorInfo { id: format!("id_{name}"), src: o, tgt: o });
        }
        for (id, s, t) in mors {
            all.push(MorInfo { id, src: s, tgt: t });
        }
        let mut comp = BTreeMap::new();
        for g in 0..all.len() {
            for f in 0..all.len() {
                if all[f].tgt != all[g].src {
                    continue;
                }
                let gf = if g < objects.len() {
                    f
                } else if f < objects.len() {
                    g
                } else {
                    let id = compose(&all[g].id, &all[f].id)
                        .unwrap_or_else(|| panic!("no composite {} ∘ {}", all[g].id, all[f].id));
                    all.iter()
                        .position(|m| m.id == id)
                        .unwrap_or_else(|| panic!("unknown composite id {id}"))
                };
                comp.insert((g, f), gf);
            }
        }
        FinCategory { objects, mors: all, identity, comp }
    }

    /// The poset `0 < 1 < .. < n` as a category, morphisms named `i->j`.
    pub fn poset(n: usize) -> Self {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut mors = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                mors.push((format!("{i}->{j}"), i, j));
            }
        }
        FinCategory::from_parts(objects, mors, |g, f| {
            let (a, _) = f.split_once("->").unwrap();
            let (_, c) = g.split_once("->").unwrap();
            Some(format!("{a}->{c}"))
        })
    }

    /// The cyclic group of order `k` as a one-object groupoid, morphisms
    /// named `g0` (identity alias is `id_*`), `g1`, .. `g{k-1}`.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let mors: Vec<(String, usize, usize)> =
            (1..k).map(|i| (format!("g{i}"), 0, 0)).collect();
        FinCategory::from_parts(vec!["*".into()], mors, move |g, f| {
            let a: usize = g.trim_start_matches('g').parse().unwrap();
            let b: usize = f.trim_start_matches('g').parse().unwrap();
            let c = (a + b) % k;
            Some(if c == 0 { "id_*".into() } else { format!("g{c}") })
        })
    }

    /// Two objects and an isomorphism between them.
    pub fn walking_iso() -> Self {
        FinCategory::from_parts(
            vec!["a".into(), "b".into()],
            vec![("f".into(), 0, 1), ("g".into(), 1, 0)],
            |g, f| {
                Some(match (g, f) {
                    ("g", "f") => "id_a".into(),
                    ("f", "g") => "id_b".into(),
                    _ => unreachable!(),
                })
            },
        )
    }

    /// The arrow category: objects are morphisms of `self`, morphisms are
    /// commuting squares `(bottom, top): f -> g` with `bottom ∘ f = g ∘ top`.
    pub fn arrow_category(&self) -> FinCategory {
        let objects: Vec<String> = self.mors.iter().map(|m| m.id.clone()).collect();
        let mut mors = Vec::new();
        let mut identity = vec![0; objects.len()];
        // Squares (top, bottom): top: src f -> src g, bottom: tgt f -> tgt g.
        for (fi, f) in self.mors.iter().enumerate() {
            for (gi, g) in self.mors.iter().enumerate() {
                for top in self.hom(f.src, g.src) {
                    for bottom in self.hom(f.tgt, g.tgt) {
                        if self.compose(bottom, fi) == self.compose(gi, top) {
                            if fi == gi
                                && top == self.identity[f.src]
                                && bottom == self.identity[f.tgt]
                            {
                                identity[fi] = mors.len();
                            }
                            mors.push(MorInfo {
                                id: format!("{}:{},{}", f.id, self.mors[top].id, self.mors[bottom].id),
                                src: fi,
                                tgt: gi,
                            });
                        }
                    }
                }
            }
        }
        let find = |src: usize, tgt: usize, top: usize, bottom: usize| {
            mors.iter()
                .position(|m| {
                    m.src == src
                        && m.tgt == tgt
                        && m.id
                            == format!(
                                "{}:{},{}",
                                self.mors[src].id, self.mors[top].id, self.mors[bottom].id
                            )
                })
                .unwrap()
        };
        let mut comp = BTreeMap::new();
        let parse = |m: &MorInfo| -> (usize, usize) {
            let (_, pair) = m.id.rsplit_once(':').unwrap();
            let (t, b) = pair.split_once(',').unwrap();
            (self.mor_index(t).unwrap(), self.mor_index(b).unwrap())
        };
        for (gi, g) in mors.iter().enumerate() {
            for (fi, f) in mors.iter().enumerate() {
                if f.tgt != g.src {
                    continue;
                }
                let (t1, b1) = parse(f);
                let (t2, b2) = parse(g);
                let idx = find(f.src, g.tgt, self.compose(t2, t1), self.compose(b2, b1));
                comp.insert((gi, fi), idx);
            }
        }
        FinCategory { objects, mors, identity, comp }
    }
}

/// A functor between finite categories, as object and morphism index maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FinFunctor {
    pub fn check(&self, src: &FinCategory, dst: &FinCategory) -> Result<(), String> {
        for (f, m) in src.mors.iter().enumerate() {
            let fm = &dst.mors[self.mor_map[f]];
            if fm.src != self.obj_map[m.src] || fm.tgt != self.obj_map[m.tgt] {
                return Err(format!("functor breaks endpoints at {}", m.id));
            }
        }
        for (o, &e) in src.identity.iter().enumerate() {
            if self.mor_map[e] != dst.identity[self.obj_map[o]] {
                return Err(format!("functor breaks identity at {}", src.objects[o]));
            }
        }
        for g in 0..src.mors.len() {
            for f in 0..src.mors.len() {
                if src.mors[f].tgt != src.mors[g].src {
                    continue;
                }
                if self.mor_map[src.compose(g, f)]
                    != dst.compose(self.mor_map[g], self.mor_map[f])
                {
                    return Err(format!("functor breaks composition on ({g},{f})"));
                }
            }
        }
        Ok(())
    }
}

/// Id of the nerve simplex for an identity-free composable chain.
fn chain_id(c: &FinCategory, chain: &[usize]) -> String {
    chain.iter().map(|&f| c.mors[f].id.clone()).collect::<Vec<_>>().join("|")
}

/// Normal form of an arbitrary composable chain as a nerve simplex: strips
/// identities (which mark degeneracies), rightmost first.
pub fn chain_ref(c: &FinCategory, start_object: usize, chain: &[usize]) -> SimplexRef {
    let mut work: Vec<usize> = chain.to_vec();
    let mut stripped = Vec::new();
    loop {
        let pos = work.iter().rposition(|&f| c.is_identity(f));
        match pos {
            None => break,
            Some(i) => {
                work.remove(i);
                stripped.push(i);
            }
        }
    }
    let base = if work.is_empty() {
        c.objects[start_object].clone()
    } else {
        chain_id(c, &work)
    };
    let mut r = SimplexRef::nondeg(base);
    for &i in stripped.iter().rev() {
        r = r.degenerate(i);
    }
    r
}

/// Identity-free composable chains grouped by length `1..=depth`, in the
/// order the nerve lists them.
fn identity_free_chains(c: &FinCategory, depth: usize) -> Vec<Vec<Vec<usize>>> {
    let mut levels = Vec::new();
    let mut chains: Vec<Vec<usize>> =
        (0..c.mors.len()).filter(|&f| !c.is_identity(f)).map(|f| vec![f]).collect();
    for n in 1..=depth {
        if n > 1 {
            let mut next = Vec::new();
            for ch in &chains {
                let end = c.mors[*ch.last().unwrap()].tgt;
                for f in 0..c.mors.len() {
                    if !c.is_identity(f) && c.mors[f].src == end {
                        let mut e = ch.clone();
                        e.push(f);
                        next.push(e);
                    }
                }
            }
            chains = next;
        }
        levels.push(chains.clone());
    }
    levels
}

/// Nerve of a finite category, truncated above dimension `depth`: simplices
/// are composable chains, nondegenerate ones the identity-free chains.
pub fn nerve(c: &FinCategory, depth: usize) -> SimplicialSet {
    let mut x = SimplicialSet::new();
    for name in &c.objects {
        x.add_simplex(name.clone(), 0, vec![]);
    }
    for (level, chains) in identity_free_chains(c, depth).iter().enumerate() {
        let n = level + 1;
        for ch in chains {
            let faces: Vec<SimplexRef> = (0..=n)
                .map(|i| {
                    if i == 0 {
                        chain_ref(c, c.mors[ch[0]].tgt, &ch[1..])
                    } else if i == n {
                        chain_ref(c, c.mors[ch[0]].src, &ch[..n - 1])
                    } else {
                        let mut e: Vec<usize> = ch[..i - 1].to_vec();
                        e.push(c.compose(ch[i], ch[i - 1]));
                        e.extend_from_slice(&ch[i + 1..]);
                        chain_ref(c, c.mors[ch[0]].src, &e)
                    }
                })
                .collect();
            x.add_simplex(chain_id(c, ch), n, faces);
        }
    }
    x
}

/// Nerve of a functor: sends a chain to its image chain, normalized.
pub fn nerve_map(
    f: &FinFunctor,
    src: &FinCategory,
    dst: &FinCategory,
    depth: usize,
) -> super::map::SimplicialMap {
    let ns = nerve(src, depth);
    let nd = nerve(dst, depth);
    let mut assign = BTreeMap::new();
    for (o, name) in src.objects.iter().enumerate() {
        assign.insert(name.clone(), SimplexRef::nondeg(dst.objects[f.obj_map[o]].clone()));
    }
    for chains in identity_free_chains(src, depth) {
        for ch in chains {
            let image: Vec<usize> = ch.iter().map(|&m| f.mor_map[m]).collect();
            let start = f.obj_map[src.mors[ch[0]].src];
            assign.insert(chain_id(src, &ch), chain_ref(dst, start, &image));
        }
    }
    super::map::SimplicialMap::new_unchecked(ns, nd, assign)
}

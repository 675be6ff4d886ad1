//! Simplicial sets presented by nondegenerate simplices and face tables.

use super::simplex::{face_word, SimplexRef};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite simplicial set. Only nondegenerate simplices are stored; the
/// `faces` table lists, for each nondegenerate simplex of positive dimension,
/// its faces `d_0, .., d_n` as simplex references in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSet {
    /// Nondegenerate simplex ids, graded by dimension.
    grades: Vec<Vec<String>>,
    /// Face lists of nondegenerate simplices, `faces[x][i] = d_i(x)`.
    faces: BTreeMap<String, Vec<SimplexRef>>,
    dim_of: BTreeMap<String, usize>,
}

impl SimplicialSet {
    pub fn new() -> Self {
        SimplicialSet { grades: Vec::new(), faces: BTreeMap::new(), dim_of: BTreeMap::new() }
    }

    /// Adds a nondegenerate simplex with the given face list (empty for a
    /// vertex). Panics on duplicate ids or malformed face lists; inputs are
    /// produced by code or validated during parsing.
    pub fn add_simplex(&mut self, id: impl Into<String>, dim: usize, faces: Vec<SimplexRef>) {
        let id = id.into();
        assert!(!self.dim_of.contains_key(&id), "duplicate simplex id {id}");
        assert_eq!(faces.len(), if dim == 0 { 0 } else { dim + 1 });
        while self.grades.len() <= dim {
            self.grades.push(Vec::new());
        }
        self.grades[dim].push(id.clone());
        if dim > 0 {
            self.faces.insert(id.clone(), faces);
        }
        self.dim_of.insert(id, dim);
    }

    /// Largest dimension with a nondegenerate simplex, or 0 when empty.
    pub fn dim(&self) -> usize {
        self.grades.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.grades.iter().all(|g| g.is_empty())
    }

    /// Ids of nondegenerate simplices in dimension `n`, in insertion order.
    pub fn nondeg(&self, n: usize) -> &[String] {
        self.grades.get(n).map(|g| g.as_slice()).unwrap_or(&[])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.dim_of.contains_key(id)
    }

    pub fn dim_of(&self, id: &str) -> usize {
        self.dim_of[id]
    }

    /// Face list of a nondegenerate simplex of positive dimension.
    pub fn faces_of(&self, id: &str) -> &[SimplexRef] {
        &self.faces[id]
    }

    /// Dimension of an arbitrary simplex reference.
    pub fn ref_dim(&self, r: &SimplexRef) -> usize {
        r.dim(self.dim_of[&r.base])
    }

    /// Checks a reference points at a known base and has a valid word.
    pub fn ref_valid(&self, r: &SimplexRef) -> bool {
        self.dim_of.get(&r.base).is_some_and(|&d| r.is_valid(d))
    }

    /// `d_i` of an arbitrary simplex reference, in normal form.
    pub fn face_of_ref(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let (word, residual) = face_word(&r.word, i);
        match residual {
            None => SimplexRef { base: r.base.clone(), word },
            Some(k) => {
                let inner = &self.faces[&r.base][k];
                let mut out = inner.clone();
                for &j in word.iter().rev() {
                    out = out.degenerate(j);
                }
                out
            }
        }
    }

    /// All simplices of dimension `n`, degenerate ones included, in a
    /// deterministic order.
    pub fn refs_at(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for d in 0..=n.min(self.dim()) {
            let extra = n - d;
            for id in self.nondeg(d) {
                for word in decreasing_words(extra, d) {
                    out.push(SimplexRef::new(id.clone(), word));
                }
            }
        }
        out
    }

    /// Euler characteristic, computed from nondegenerate simplex counts.
    pub fn euler(&self) -> i64 {
        self.grades
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.len() as i64 } else { -(g.len() as i64) })
            .sum()
    }

    /// Total number of nondegenerate simplices.
    pub fn size(&self) -> usize {
        self.grades.iter().map(|g| g.len()).sum()
    }

    /// Checks the face tables satisfy `d_i d_j = d_{j-1} d_i` for `i < j` and
    /// that every stored reference is well formed.
    pub fn validate(&self) -> Result<(), String> {
        for d in 1..=self.dim() {
            for id in self.nondeg(d) {
                let faces = &self.faces[id];
                for (i, f) in faces.iter().enumerate() {
                    if !self.ref_valid(f) {
                        return Err(format!("face {i} of {id} is malformed: {f}"));
                    }
                    if self.ref_dim(f) + 1 != d {
                        return Err(format!("face {i} of {id} has wrong dimension"));
                    }
                }
                if d >= 2 {
                    let r = SimplexRef::nondeg(id.clone());
                    for j in 1..=d {
                        for i in 0..j {
                            let a = self.face_of_ref(&self.face_of_ref(&r, j), i);
                            let b = self.face_of_ref(&self.face_of_ref(&r, i), j - 1);
                            if a != b {
                                return Err(format!(
                                    "simplicial identity fails on {id}: d_{i} d_{j} = {a} but d_{} d_{i} = {b}",
                                    j - 1
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

impl Default for SimplicialSet {
    fn default() -> Self {
        Self::new()
    }
}

/// Strictly decreasing words of length `len` over `0..bound+len`, where the
/// letter at position `k` (outermost first, 0-based) is at most
/// `bound + len - 1 - k`. These are exactly the valid degeneracy words on a
/// `bound`-dimensional base producing a `(bound+len)`-simplex.
fn decreasing_words(len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 0 {
            out.push(acc.clone());
            return;
        }
        // Next letter j must satisfy j <= max and leave room for len-1 more
        // strictly smaller letters.
        for j in (len - 1..=max).rev() {
            acc.push(j);
            go(len - 1, j.saturating_sub(1), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut acc = Vec::new();
    go(len, bound + len - 1, &mut acc, &mut out);
    out
}

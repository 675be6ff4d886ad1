//! Standard simplices, boundaries, and horns.

use super::set::SimplicialSet;
use super::simplex::SimplexRef;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("simplex dimension {0} out of supported range")]
    DimensionOutOfRange(usize),
    #[error("horn index {index} out of range for dimension {dim}")]
    HornIndex { dim: usize, index: usize },
}

/// Id of the face of the standard simplex spanned by the given vertices.
fn vertex_id(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect()
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for v in start..=n {
            acc.push(v);
            go(v + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    go(0, n, k, &mut acc, &mut out);
    out
}

/// Adds to `x` every face of the standard `n`-simplex spanned by a vertex set
/// in `keep`, closed under taking faces. Vertices are named by their digits,
/// so `n` must stay below 10.
fn build_from_cells(n: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    assert!(n <= 9, "standard simplices are only built up to dimension 9");
    let mut x = SimplicialSet::new();
    for k in 0..=n {
        for vs in subsets_of_size(n, k + 1) {
            if !keep(&vs) {
                continue;
            }
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut sub = vs.clone();
                        sub.remove(i);
                        SimplexRef::nondeg(vertex_id(&sub))
                    })
                    .collect()
            };
            x.add_simplex(vertex_id(&vs), k, faces);
        }
    }
    x
}

/// The standard `n`-simplex. Nondegenerate faces are named by their vertex
/// strings, e.g. `02` for the edge from 0 to 2.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    build_from_cells(n, |_| true)
}

/// Boundary of the standard `n`-simplex: all proper faces.
pub fn boundary(n: usize) -> SimplicialSet {
    build_from_cells(n, |vs| vs.len() <= n)
}

/// The horn obtained from the boundary by also removing the face opposite
/// vertex `i`.
pub fn horn(n: usize, i: usize) -> Result<SimplicialSet, ValidationError> {
    if n == 0 {
        return Err(ValidationError::DimensionOutOfRange(0));
    }
    if i > n {
        return Err(ValidationError::HornIndex { dim: n, index: i });
    }
    Ok(build_from_cells(n, |vs| {
        vs.len() <= n && !(vs.len() == n && !vs.contains(&i))
    }))
}

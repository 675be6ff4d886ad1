//! Degeneracy words and the simplex reference type.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A simplex in Eilenberg-Zilber normal form: a nondegenerate base simplex
/// together with a strictly decreasing word of degeneracy indices, stored
/// outermost first. `(y, [j1, .., jm])` denotes `s_{j1}(s_{j2}(..s_{jm}(y)))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimplexRef {
    pub base: String,
    pub word: Vec<usize>,
}

impl SimplexRef {
    /// Reference to a nondegenerate simplex.
    pub fn nondeg(base: impl Into<String>) -> Self {
        SimplexRef { base: base.into(), word: Vec::new() }
    }

    pub fn new(base: impl Into<String>, word: Vec<usize>) -> Self {
        SimplexRef { base: base.into(), word }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }

    /// Dimension of this simplex given the dimension of its base.
    pub fn dim(&self, base_dim: usize) -> usize {
        base_dim + self.word.len()
    }

    /// Applies an outer degeneracy `s_i`, renormalizing so the word stays
    /// strictly decreasing.
    pub fn degenerate(&self, i: usize) -> Self {
        SimplexRef { base: self.base.clone(), word: word_insert(&self.word, i) }
    }

    /// True when the word is strictly decreasing and every index is in range
    /// for the given base dimension.
    pub fn is_valid(&self, base_dim: usize) -> bool {
        if !self.word.windows(2).all(|w| w[0] > w[1]) {
            return false;
        }
        // Innermost letter acts on a base_dim-simplex, the next on a
        // (base_dim+1)-simplex, and so on.
        let m = self.word.len();
        self.word.iter().enumerate().all(|(k, &j)| j <= base_dim + (m - 1 - k))
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "{}", self.base)
        } else {
            let parts: Vec<String> = self.word.iter().map(|j| j.to_string()).collect();
            write!(f, "{}^s[{}]", self.base, parts.join(","))
        }
    }
}

/// Prepends `s_i` to a strictly decreasing degeneracy word, rewriting with
/// `s_i s_j = s_{j+1} s_i` (for `i <= j`) until the result is again strictly
/// decreasing.
pub fn word_insert(word: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut k = 0;
    while k < word.len() && i <= word[k] {
        out.push(word[k] + 1);
        k += 1;
    }
    out.push(i);
    out.extend_from_slice(&word[k..]);
    out
}

/// Face of a degeneracy word: computes `d_i ∘ (word)` as either a pure word
/// (when the face cancels a degeneracy) or a word together with a residual
/// face index to apply to the base.
///
/// Returns `(word, Some(i'))` when the result is `word ∘ d_{i'}`, and
/// `(word, None)` when the face cancelled against a degeneracy.
pub fn face_word(word: &[usize], i: usize) -> (Vec<usize>, Option<usize>) {
    if word.is_empty() {
        return (Vec::new(), Some(i));
    }
    let j = word[0];
    let rest = &word[1..];
    if i < j {
        // d_i s_j = s_{j-1} d_i
        let (mut w, f) = face_word(rest, i);
        w = word_insert(&w, j - 1);
        (w, f)
    } else if i == j || i == j + 1 {
        // d_i s_j = id
        (rest.to_vec(), None)
    } else {
        // d_i s_j = s_j d_{i-1}
        let (mut w, f) = face_word(rest, i - 1);
        w = word_insert(&w, j);
        (w, f)
    }
}

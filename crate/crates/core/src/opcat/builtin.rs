//! Built-in bounded operator categories.
//!
//! The skeletal categories of finite sets and of ordered finite sets are
//! generated up to a size cap, with objects named by their size and a
//! morphism `a>b:w` for each function given by its word of images (`-` for
//! the empty word). Designated fibers are the sorted preimages of points,
//! so they are fixed at construction rather than searched for.

use super::wreath::{wreath, SIZE_BOUND};
use super::{Fiber, OperatorCategory, OperatorError};
use crate::simpset::FinCategory;
use std::collections::BTreeMap;

/// Builds a named instance: `triv`, `F(n)`, `O(n)`, or `Owr(k,n)` for the
/// ordered category wreathed with itself `k` times at size cap `n`.
pub fn builtin(name: &str) -> Result<OperatorCategory, OperatorError> {
    let unknown = || OperatorError::UnknownBuiltin(name.into());
    if name == "triv" {
        return Ok(trivial());
    }
    let arg = |prefix: &str| -> Option<&str> {
        name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')
    };
    if let Some(a) = arg("F") {
        let n: usize = a.parse().map_err(|_| unknown())?;
        if !(1..=9).contains(&n) {
            return Err(unknown());
        }
        return Ok(finite_sets(n));
    }
    if let Some(a) = arg("O") {
        let n: usize = a.parse().map_err(|_| unknown())?;
        if !(1..=9).contains(&n) {
            return Err(unknown());
        }
        return Ok(ordered_sets(n));
    }
    if let Some(a) = arg("Owr") {
        let (k, n) = a.split_once(',').ok_or_else(unknown)?;
        let k: usize = k.trim().parse().map_err(|_| unknown())?;
        let n: usize = n.trim().parse().map_err(|_| unknown())?;
        if !(1..=9).contains(&n) {
            return Err(unknown());
        }
        return iterated_ordered_wreath(k, n);
    }
    Err(unknown())
}

/// The one-object operator category.
pub fn trivial() -> OperatorCategory {
    let carrier = FinCategory::from_parts(vec!["1".into()], vec![], |_, _| None);
    let fibers = [((0, 0), Fiber { object: 0, projection: 0 })].into_iter().collect();
    OperatorCategory::from_table(carrier, 0, fibers)
}

/// Skeletal finite sets of size at most `n`.
pub fn finite_sets(n: usize) -> OperatorCategory {
    sized_sets(n, false)
}

/// Skeletal ordered finite sets of size at most `n`, with monotone maps.
pub fn ordered_sets(n: usize) -> OperatorCategory {
    sized_sets(n, true)
}

/// The ordered category wreathed with itself `k` times, right to left;
/// `k = 0` gives the one-object category and `k = 1` the ordered sets.
pub fn iterated_ordered_wreath(k: usize, n: usize) -> Result<OperatorCategory, OperatorError> {
    if k == 0 {
        return Ok(trivial());
    }
    let base = ordered_sets(n);
    let mut acc = base.clone();
    for _ in 1..k {
        acc = wreath(&base, &acc, SIZE_BOUND)?;
    }
    Ok(acc)
}

/// Words of the given length over `0..alphabet`, lexicographically;
/// optionally only the nondecreasing ones.
fn words(len: usize, alphabet: usize, monotone: bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            let lo = if monotone { w.last().copied().unwrap_or(0) } else { 0 };
            for d in lo..alphabet {
                let mut v = w.clone();
                v.push(d);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub(crate) fn word_id(a: usize, b: usize, w: &[usize]) -> String {
    if a == b && w.iter().enumerate().all(|(i, &d)| i == d) {
        return format!("id_{a}");
    }
    let digits: String =
        if w.is_empty() { "-".into() } else { w.iter().map(ToString::to_string).collect() };
    format!("{a}>{b}:{digits}")
}

fn parse_word_id(s: &str) -> (usize, usize, Vec<usize>) {
    if let Some(k) = s.strip_prefix("id_") {
        let k: usize = k.parse().unwrap();
        return (k, k, (0..k).collect());
    }
    let (ab, w) = s.split_once(':').unwrap();
    let (a, b) = ab.split_once('>').unwrap();
    let word = if w == "-" {
        vec![]
    } else {
        w.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    };
    (a.parse().unwrap(), b.parse().unwrap(), word)
}

fn sized_sets(n: usize, monotone: bool) -> OperatorCategory {
    assert!((1..=9).contains(&n), "object sizes must be single digits");
    let objects: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    let mut mors = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            for w in words(a, b, monotone) {
                if a == b && w.iter().enumerate().all(|(i, &d)| i == d) {
                    continue;
                }
                mors.push((word_id(a, b, &w), a, b));
            }
        }
    }
    let carrier = FinCategory::from_parts(objects, mors, |g, f| {
        let (a, _, wf) = parse_word_id(f);
        let (_, c, wg) = parse_word_id(g);
        let w: Vec<usize> = wf.iter().map(|&t| wg[t]).collect();
        Some(word_id(a, c, &w))
    });

    let mut fibers = BTreeMap::new();
    for f in 0..carrier.mors.len() {
        let (a, b, wf) = parse_word_id(&carrier.mors[f].id);
        for j in 0..b {
            let point = carrier.mor_index(&word_id(1, b, &[j])).unwrap();
            let pre: Vec<usize> = (0..a).filter(|&t| wf[t] == j).collect();
            let projection = carrier.mor_index(&word_id(pre.len(), a, &pre)).unwrap();
            fibers.insert((f, point), Fiber { object: pre.len(), projection });
        }
    }
    OperatorCategory::from_table(carrier, 1, fibers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_category_is_one_object_one_map() {
        let t = trivial();
        assert_eq!(t.carrier().objects.len(), 1);
        assert_eq!(t.carrier().mors.len(), 1);
        assert!(t.check().is_ok());
    }

    #[test]
    fn finite_set_hom_counts_are_powers() {
        let c = finite_sets(2);
        assert_eq!(c.carrier().objects.len(), 3);
        for a in 0..=2usize {
            for b in 0..=2usize {
                assert_eq!(c.carrier().hom(a, b).len(), b.pow(a as u32));
            }
        }
    }

    #[test]
    fn ordered_hom_counts_match_monotone_enumeration() {
        let c = ordered_sets(2);
        let expected = [[1, 1, 1], [0, 1, 2], [0, 1, 3]];
        for a in 0..=2usize {
            for b in 0..=2usize {
                assert_eq!(c.carrier().hom(a, b).len(), expected[a][b]);
            }
        }
    }

    #[test]
    fn bounded_instances_pass_every_axiom() {
        for c in [finite_sets(2), finite_sets(3), ordered_sets(2), ordered_sets(3)] {
            assert_eq!(c.check(), Ok(()));
        }
    }

    #[test]
    fn point_counts_equal_sizes() {
        let c = finite_sets(3);
        for k in 0..=3usize {
            assert_eq!(c.points(k).len(), k);
        }
        assert_eq!(c.points(c.terminal()).len(), 1);
    }

    #[test]
    fn builtin_names_parse() {
        assert!(builtin("triv").is_ok());
        assert!(builtin("F(2)").is_ok());
        assert!(builtin("O(3)").is_ok());
        assert!(builtin("Owr(1,2)").is_ok());
        for bad in ["F(0)", "G(2)", "O()", "Owr(2)", "F(two)"] {
            assert!(matches!(builtin(bad), Err(OperatorError::UnknownBuiltin(_))));
        }
    }
}

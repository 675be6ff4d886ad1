//! Explicit generator families for the lifting-based classifiers, each
//! instantiated as a finite list of decorated inclusions up to a dimension
//! bound.

use std::collections::BTreeMap;

use crate::scaled::{MarkedSS, ScaledSS};
use crate::simpset::{
    boundary, horn, nerve, quotient, standard_simplex, FinCategory, SimplexRef, SimplicialMap,
    SimplicialSet,
};
use thiserror::Error;

use super::solve::DecoratedMap;

/// A named inclusion belonging to a generator family.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub incl: DecoratedMap,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown generator family {0}")]
    Unknown(String),
    #[error("family {0} needs a dimension bound of at least {1}")]
    BoundTooSmall(String, usize),
}

/// The subcomplex inclusion between two sets sharing simplex identifiers.
pub fn inclusion_on_ids(src: &SimplicialSet, dst: &SimplicialSet) -> SimplicialMap {
    let mut assign = BTreeMap::new();
    for n in 0..=src.dim() {
        for id in src.nondeg(n) {
            assign.insert(id.clone(), SimplexRef::nondeg(id.clone()));
        }
    }
    SimplicialMap::new_unchecked(src.clone(), dst.clone(), assign)
}

fn vertex_name(v: usize) -> String {
    v.to_string()
}

fn cell_name(vs: &[usize]) -> String {
    vs.iter().map(|&v| vertex_name(v)).collect()
}

fn plain_horn(n: usize, i: usize) -> Generator {
    let h = horn(n, i).expect("horn index in range");
    Generator {
        name: format!("horn_{n}_{i}"),
        incl: DecoratedMap::plain(inclusion_on_ids(&h, &standard_simplex(n))),
    }
}

fn marked_inner_horns(n_max: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for i in 1..n {
            let h = horn(n, i).unwrap();
            let simplex = standard_simplex(n);
            out.push(Generator {
                name: format!("marked_inner_horn_{n}_{i}"),
                incl: DecoratedMap::marked(
                    inclusion_on_ids(&h, &simplex),
                    &MarkedSS::flat(h.clone()),
                    &MarkedSS::flat(simplex),
                ),
            });
        }
    }
    out
}

fn marked_right_horns(n_max: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let h = horn(n, n).unwrap();
        let simplex = standard_simplex(n);
        let last = SimplexRef::nondeg(cell_name(&[n - 1, n]));
        let src_edges: Vec<SimplexRef> =
            if h.contains(&last.base) { vec![last.clone()] } else { Vec::new() };
        out.push(Generator {
            name: format!("marked_right_horn_{n}"),
            incl: DecoratedMap::marked(
                inclusion_on_ids(&h, &simplex),
                &MarkedSS::explicit(h.clone(), &src_edges).unwrap(),
                &MarkedSS::explicit(simplex, &[last]).unwrap(),
            ),
        });
    }
    out
}

fn marked_pushout_product() -> Generator {
    let simplex = standard_simplex(2);
    let src = MarkedSS::explicit(
        simplex.clone(),
        &[SimplexRef::nondeg("01"), SimplexRef::nondeg("12")],
    )
    .unwrap();
    Generator {
        name: "marked_composite_edge".into(),
        incl: DecoratedMap::marked(SimplicialMap::identity(&simplex), &src, &MarkedSS::sharp(simplex)),
    }
}

/// Groupoid nerves standing in for Kan complexes in the sharpening class,
/// truncated at the bound.
fn groupoid_corpus(n_max: usize) -> Vec<(String, SimplicialSet)> {
    vec![
        ("point".into(), standard_simplex(0)),
        ("c2".into(), nerve(&FinCategory::cyclic(2), n_max)),
        ("iso".into(), nerve(&FinCategory::walking_iso(), n_max)),
    ]
}

fn marked_sharpenings(n_max: usize) -> Vec<Generator> {
    groupoid_corpus(n_max)
        .into_iter()
        .map(|(tag, k)| Generator {
            name: format!("marked_sharpen_{tag}"),
            incl: DecoratedMap::marked(
                SimplicialMap::identity(&k),
                &MarkedSS::flat(k.clone()),
                &MarkedSS::sharp(k),
            ),
        })
        .collect()
}

fn scaled_inner_horns(n_max: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for i in 1..n {
            let h = horn(n, i).unwrap();
            let simplex = standard_simplex(n);
            let pivot = SimplexRef::nondeg(cell_name(&[i - 1, i, i + 1]));
            let src_cells: Vec<SimplexRef> =
                if h.contains(&pivot.base) { vec![pivot.clone()] } else { Vec::new() };
            out.push(Generator {
                name: format!("scaled_inner_horn_{n}_{i}"),
                incl: DecoratedMap::scaled(
                    inclusion_on_ids(&h, &simplex),
                    &ScaledSS::explicit(h.clone(), &src_cells).unwrap(),
                    &ScaledSS::explicit(simplex, &[pivot]).unwrap(),
                ),
            });
        }
    }
    out
}

fn scaled_four_simplex() -> Generator {
    let simplex = standard_simplex(4);
    let t: Vec<SimplexRef> = ["024", "123", "013", "134", "012"]
        .into_iter()
        .map(SimplexRef::nondeg)
        .collect();
    let mut extended = t.clone();
    extended.push(SimplexRef::nondeg("034"));
    extended.push(SimplexRef::nondeg("134"));
    Generator {
        name: "scaled_four_simplex".into(),
        incl: DecoratedMap::scaled(
            SimplicialMap::identity(&simplex),
            &ScaledSS::explicit(simplex.clone(), &t).unwrap(),
            &ScaledSS::explicit(simplex, &extended).unwrap(),
        ),
    }
}

fn scaled_collapsed_horns(n_max: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        let part = vec!["0".to_string(), "1".to_string(), "01".to_string()];
        let (qh, _) = quotient(&horn(n, 0).unwrap(), &[part.clone()]).unwrap();
        let (qs, _) = quotient(&standard_simplex(n), &[part]).unwrap();
        let witness = SimplexRef::nondeg(cell_name(&[0, 1, n]));
        out.push(Generator {
            name: format!("scaled_collapsed_horn_{n}"),
            incl: DecoratedMap::scaled(
                inclusion_on_ids(&qh, &qs),
                &ScaledSS::explicit(qh.clone(), &[witness.clone()]).unwrap(),
                &ScaledSS::explicit(qs, &[witness]).unwrap(),
            ),
        });
    }
    out
}

fn left2_horns(n_max: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let h = horn(n, 0).unwrap();
        let simplex = standard_simplex(n);
        out.push(Generator {
            name: format!("left2_horn_{n}"),
            incl: DecoratedMap::scaled(
                inclusion_on_ids(&h, &simplex),
                &ScaledSS::flat(h.clone()),
                &ScaledSS::flat(simplex),
            ),
        });
    }
    out
}

/// Instantiates a named family of inclusions up to the bound `n_max`.
pub fn generator_family(name: &str, n_max: usize) -> Result<Vec<Generator>, FamilyError> {
    let scaled_bound = |family: &str| {
        if n_max < 2 {
            Err(FamilyError::BoundTooSmall(family.to_string(), 2))
        } else {
            Ok(())
        }
    };
    match name {
        "kan_horns" => Ok((1..=n_max)
            .flat_map(|n| (0..=n).map(move |i| plain_horn(n, i)))
            .collect()),
        "inner_horns" => Ok((2..=n_max)
            .flat_map(|n| (1..n).map(move |i| plain_horn(n, i)))
            .collect()),
        "left_horns" => Ok((1..=n_max)
            .flat_map(|n| (0..n).map(move |i| plain_horn(n, i)))
            .collect()),
        "boundaries" => Ok((0..=n_max)
            .map(|n| Generator {
                name: format!("boundary_{n}"),
                incl: DecoratedMap::plain(inclusion_on_ids(&boundary(n), &standard_simplex(n))),
            })
            .collect()),
        "marked_anodyne" => {
            let mut out = marked_inner_horns(n_max);
            out.extend(marked_right_horns(n_max));
            if n_max >= 2 {
                out.push(marked_pushout_product());
            }
            out.extend(marked_sharpenings(n_max));
            Ok(out)
        }
        "scaled_anodyne" => {
            scaled_bound("scaled_anodyne")?;
            let mut out = scaled_inner_horns(n_max);
            if n_max >= 4 {
                out.push(scaled_four_simplex());
            }
            out.extend(scaled_collapsed_horns(n_max));
            Ok(out)
        }
        "left2_horns" => {
            scaled_bound("left2_horns")?;
            Ok(left2_horns(n_max))
        }
        other => Err(FamilyError::Unknown(other.to_string())),
    }
}

//! Colorings of fan rays.
//!
//! A coloring assigns each ray a nonempty subset of the n+1 colors. It is
//! disjoint when all subsets are singletons, and simplicial when no
//! maximal cone sees every color.

use crate::error::{Error, Result};
use crate::fan::Fan;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<BTreeSet<usize>>,
    /// Number of colors, always fan dimension + 1.
    palette: usize,
}

/// Result of the simpliciality test, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicialCheck {
    Simplicial,
    /// A maximal cone carrying all colors, with one ray per color.
    Violating {
        cone: BTreeSet<usize>,
        witness: Vec<(usize, usize)>,
    },
}

impl Coloring {
    pub fn new(colors: Vec<BTreeSet<usize>>, fan_dim: usize) -> Result<Self> {
        let palette = fan_dim + 1;
        for (j, set) in colors.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::MalformedInput(format!(
                    "ray x{} has no color",
                    j + 1
                )));
            }
            if let Some(&c) = set.iter().next_back() {
                if c >= palette {
                    return Err(Error::MalformedInput(format!(
                        "color {c} out of range 0..{palette}"
                    )));
                }
            }
        }
        Ok(Coloring { colors, palette })
    }

    pub fn disjoint(single: Vec<usize>, fan_dim: usize) -> Result<Self> {
        Coloring::new(
            single.into_iter().map(|c| BTreeSet::from([c])).collect(),
            fan_dim,
        )
    }

    pub fn colors(&self) -> &[BTreeSet<usize>] {
        &self.colors
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn num_rays(&self) -> usize {
        self.colors.len()
    }

    pub fn is_disjoint(&self) -> bool {
        self.colors.iter().all(|s| s.len() == 1)
    }

    /// The single color of a ray in a disjoint coloring.
    pub fn color_of(&self, ray: usize) -> usize {
        debug_assert_eq!(self.colors[ray].len(), 1);
        *self.colors[ray].iter().next().unwrap()
    }

    /// Swap two colors everywhere.
    pub fn transpose(&self, a: usize, b: usize) -> Coloring {
        let colors = self
            .colors
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&c| {
                        if c == a {
                            b
                        } else if c == b {
                            a
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        Coloring {
            colors,
            palette: self.palette,
        }
    }

    /// Keep only the minimum color of every ray. The result is disjoint,
    /// still simplicial, and has the same combinatorial degree.
    pub fn reduce_to_disjoint(&self) -> Coloring {
        Coloring {
            colors: self
                .colors
                .iter()
                .map(|s| BTreeSet::from([*s.iter().next().unwrap()]))
                .collect(),
            palette: self.palette,
        }
    }
}

/// Does any maximal cone carry rays of all n+1 colors?
pub fn is_simplicial(fan: &Fan, coloring: &Coloring) -> Result<SimplicialCheck> {
    if coloring.num_rays() != fan.num_rays() {
        return Err(Error::MalformedInput(
            "coloring length does not match ray count".into(),
        ));
    }
    let palette = coloring.palette();
    for cone in fan.max_cones() {
        let mut seen: Vec<Option<usize>> = vec![None; palette];
        for &j in cone {
            for &c in &coloring.colors()[j] {
                if seen[c].is_none() {
                    seen[c] = Some(j);
                }
            }
        }
        if seen.iter().all(|s| s.is_some()) {
            return Ok(SimplicialCheck::Violating {
                cone: cone.clone(),
                witness: seen
                    .iter()
                    .enumerate()
                    .map(|(c, s)| (c, s.unwrap()))
                    .collect(),
            });
        }
    }
    Ok(SimplicialCheck::Simplicial)
}

/// The simplex face a cone maps to: indexed by the set of all colors
/// carried by the cone's rays (largest such set, matching the maximal-k
/// clause of the characteristic map).
pub fn psi_of_face(fan: &Fan, coloring: &Coloring, cone: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let _ = fan;
    let mut set = BTreeSet::new();
    for &j in cone {
        set.extend(coloring.colors()[j].iter().copied());
    }
    if set.is_empty() && !cone.is_empty() {
        return Err(Error::EmptyColorSet);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntVector;

    fn p2_fan() -> Fan {
        Fan::new(
            2,
            vec![
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[-1, -1]),
            ],
            vec![
                BTreeSet::from([0, 1]),
                BTreeSet::from([1, 2]),
                BTreeSet::from([0, 2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_coloring_is_simplicial() {
        let f = p2_fan();
        let c = Coloring::disjoint(vec![0, 1, 2], 2).unwrap();
        assert_eq!(is_simplicial(&f, &c).unwrap(), SimplicialCheck::Simplicial);
    }

    #[test]
    fn overloaded_cone_detected() {
        let f = p2_fan();
        let c = Coloring::new(
            vec![
                BTreeSet::from([0, 1]),
                BTreeSet::from([2]),
                BTreeSet::from([2]),
            ],
            2,
        )
        .unwrap();
        match is_simplicial(&f, &c).unwrap() {
            SimplicialCheck::Violating { cone, .. } => {
                assert_eq!(cone, BTreeSet::from([0, 1]));
            }
            SimplicialCheck::Simplicial => panic!("expected violation"),
        }
    }

    #[test]
    fn square_fan_coloring_simplicial() {
        let f = Fan::new(
            2,
            vec![
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[-1, 0]),
                IntVector::from_i64(&[0, -1]),
            ],
            vec![
                BTreeSet::from([0, 1]),
                BTreeSet::from([1, 2]),
                BTreeSet::from([2, 3]),
                BTreeSet::from([0, 3]),
            ],
        )
        .unwrap();
        let c = Coloring::disjoint(vec![0, 1, 2, 0], 2).unwrap();
        assert_eq!(is_simplicial(&f, &c).unwrap(), SimplicialCheck::Simplicial);
    }

    #[test]
    fn psi_examples() {
        let f = p2_fan();
        let c = Coloring::new(
            vec![
                BTreeSet::from([1]),
                BTreeSet::from([0, 2]),
                BTreeSet::from([2]),
            ],
            2,
        )
        .unwrap();
        assert_eq!(
            psi_of_face(&f, &c, &BTreeSet::from([0])).unwrap(),
            BTreeSet::from([1])
        );
        assert_eq!(
            psi_of_face(&f, &c, &BTreeSet::from([1, 2])).unwrap(),
            BTreeSet::from([0, 2])
        );
        assert_eq!(psi_of_face(&f, &c, &BTreeSet::new()).unwrap(), BTreeSet::new());
    }

    #[test]
    fn reduce_to_disjoint_takes_minimum() {
        let c = Coloring::new(
            vec![BTreeSet::from([0, 2]), BTreeSet::from([1])],
            2,
        )
        .unwrap();
        let d = c.reduce_to_disjoint();
        assert!(d.is_disjoint());
        assert_eq!(d.colors()[0], BTreeSet::from([0]));
        assert_eq!(d.colors()[1], BTreeSet::from([1]));
    }
}

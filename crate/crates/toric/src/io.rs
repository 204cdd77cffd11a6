//! JSON document types for the file formats the CLI speaks.
//!
//! Geometry is exchanged in plain machine integers; the library converts
//! to arbitrary precision internally. Ray indices in re-loadable
//! structures are 0-based; variable references in diagnostics are written
//! 1-based to match the usual x1..xr naming.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::fan::{ConeMap, Fan};
use crate::polytope::Polytope;
use crate::residue::{Monomial, MonomialIdeal, MonomialTuple};
use crate::semiample::{SemiampleReduction, TorusDivisor};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanDoc {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanDoc {
    pub fn to_fan(&self) -> Result<Fan> {
        let rays = self.rays.iter().map(|r| IntVector::from_i64(r)).collect();
        let cones = self
            .max_cones
            .iter()
            .map(|c| c.iter().copied().collect::<BTreeSet<usize>>())
            .collect();
        Fan::new(self.dim, rays, cones)
    }

    pub fn from_fan(fan: &Fan) -> Result<Self> {
        Ok(FanDoc {
            dim: fan.dim(),
            rays: fan
                .rays()
                .iter()
                .map(int_vector_to_i64)
                .collect::<Result<_>>()?,
            max_cones: fan
                .max_cones()
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeDoc {
    pub fn to_polytope(&self) -> Result<Polytope> {
        Polytope::from_lattice_points(
            self.vertices.iter().map(|v| IntVector::from_i64(v)).collect(),
            self.dim,
        )
    }

    pub fn from_polytope(p: &Polytope) -> Result<Self> {
        let vertices = p
            .vertices()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| {
                        if !c.is_integer() {
                            return Err(Error::MalformedInput(
                                "polytope has non-integer vertices".into(),
                            ));
                        }
                        rat_to_i64(c)
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(PolytopeDoc {
            dim: p.ambient_dim(),
            vertices,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub colors: Vec<Vec<usize>>,
}

impl ColoringDoc {
    pub fn to_coloring(&self, fan_dim: usize) -> Result<Coloring> {
        Coloring::new(
            self.colors
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
            fan_dim,
        )
    }

    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringDoc {
            colors: c
                .colors()
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorDoc {
    pub a: Vec<i64>,
}

impl DivisorDoc {
    pub fn to_divisor(&self) -> TorusDivisor {
        TorusDivisor {
            coeffs: self.a.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn from_divisor(d: &TorusDivisor) -> Result<Self> {
        Ok(DivisorDoc {
            a: d.coeffs
                .iter()
                .map(|c| i64::try_from(c).map_err(|_| overflow()))
                .collect::<std::result::Result<_, _>>()?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub exponents: Vec<u64>,
}

impl MonomialDoc {
    pub fn to_monomial(&self) -> Monomial {
        Monomial::new(self.exponents.clone())
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        MonomialDoc {
            exponents: m.exponents.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleDoc {
    pub z: Vec<MonomialDoc>,
}

impl TupleDoc {
    pub fn to_tuple(&self) -> MonomialTuple {
        MonomialTuple::new(self.z.iter().map(|m| m.to_monomial()).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealDoc {
    pub gens: Vec<MonomialDoc>,
}

impl IdealDoc {
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.gens.iter().map(|m| m.to_monomial()).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiTildeEntryDoc {
    pub cone: Vec<usize>,
    pub image: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionDoc {
    pub quotient: Vec<Vec<i64>>,
    pub sigma_alpha: FanDoc,
    pub pi_tilde: Vec<PiTildeEntryDoc>,
    pub polytope: PolytopeDoc,
}

impl ReductionDoc {
    pub fn from_reduction(red: &SemiampleReduction) -> Result<Self> {
        Ok(ReductionDoc {
            quotient: red
                .quotient
                .matrix
                .rows()
                .iter()
                .map(int_vector_to_i64)
                .collect::<Result<_>>()?,
            sigma_alpha: FanDoc::from_fan(&red.sigma_alpha)?,
            pi_tilde: cone_map_doc(&red.pi_tilde),
            polytope: PolytopeDoc::from_polytope(&red.polytope)?,
        })
    }
}

pub fn cone_map_doc(map: &ConeMap) -> Vec<PiTildeEntryDoc> {
    map.entries
        .iter()
        .map(|(cone, image)| PiTildeEntryDoc {
            cone: cone.iter().copied().collect(),
            image: image.iter().copied().collect(),
        })
        .collect()
}

fn int_vector_to_i64(v: &IntVector) -> Result<Vec<i64>> {
    v.0.iter()
        .map(|c| i64::try_from(c).map_err(|_| overflow()))
        .collect()
}

fn rat_to_i64(c: &BigRational) -> Result<i64> {
    i64::try_from(&c.to_integer()).map_err(|_| overflow())
}

fn overflow() -> Error {
    Error::MalformedInput("coordinate does not fit in 64 bits".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_doc_round_trip() {
        let doc = FanDoc {
            dim: 2,
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            max_cones: vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        };
        let fan = doc.to_fan().unwrap();
        let back = FanDoc::from_fan(&fan).unwrap();
        assert_eq!(back.rays, doc.rays);
        assert_eq!(back.max_cones, doc.max_cones);
    }

    #[test]
    fn polytope_doc_round_trip() {
        let doc = PolytopeDoc {
            dim: 2,
            vertices: vec![vec![0, 0], vec![1, 0], vec![0, 1]],
        };
        let p = doc.to_polytope().unwrap();
        let back = PolytopeDoc::from_polytope(&p).unwrap();
        let mut vs = back.vertices.clone();
        vs.sort();
        let mut expected = doc.vertices.clone();
        expected.sort();
        assert_eq!(vs, expected);
    }
}

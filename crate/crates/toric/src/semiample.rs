//! Torus-invariant divisors, Cartier data, and the semiample reduction.
//!
//! A divisor determines a piecewise-linear support function and a
//! polytope. When the divisor is semiample the polytope's normal fan
//! lives in a quotient lattice; the reduction bundles that fan, the
//! quotient map, the cone-to-cone table, and the polytope itself.

use crate::error::{Error, Result};
use crate::exact::{
    dot_ri, primitive_of_rat, quotient_lattice, solve_linear_exact, solve_rat_square,
    IntMatrix, IntVector, LinearSolution, QuotientMap, Rat,
};
use crate::fan::{ray_bijection, ConeMap, Fan};
use crate::polytope::{subsets_between, Polytope};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// A torus-invariant divisor, one integer coefficient per ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusDivisor {
    pub coeffs: Vec<BigInt>,
}

impl TorusDivisor {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        TorusDivisor {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rays: usize) -> Self {
        TorusDivisor {
            coeffs: vec![BigInt::zero(); rays],
        }
    }
}

/// Integer Cartier data: the linear functional of each maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    /// Parallel to the fan's maximal cones.
    pub per_cone: Vec<IntVector>,
}

/// A divisor class modulo linear equivalence, kept as a representative.
#[derive(Debug, Clone)]
pub struct DegreeClass {
    pub representative: TorusDivisor,
}

/// The semiample reduction of a divisor class.
#[derive(Debug, Clone)]
pub struct SemiampleReduction {
    /// The reduced fan in the quotient lattice.
    pub sigma_alpha: Fan,
    /// Surjection from the ambient lattice onto the quotient.
    pub quotient: QuotientMap,
    /// Image of every cone of the source fan (all faces, not only
    /// maximal ones) in the reduced fan.
    pub pi_tilde: ConeMap,
    /// The divisor polytope.
    pub polytope: Polytope,
}

impl SemiampleReduction {
    /// Image cone of a single ray.
    pub fn ray_image(&self, ray: usize) -> &BTreeSet<usize> {
        self.pi_tilde
            .get(&BTreeSet::from([ray]))
            .expect("every ray cone is tabulated")
    }
}

fn require_complete(fan: &Fan) -> Result<()> {
    if !fan.validate()?.complete {
        return Err(Error::NotComplete);
    }
    Ok(())
}

fn check_lengths(fan: &Fan, divisor: &TorusDivisor) -> Result<()> {
    if divisor.coeffs.len() != fan.num_rays() {
        return Err(Error::MalformedInput(format!(
            "divisor has {} coefficients for {} rays",
            divisor.coeffs.len(),
            fan.num_rays()
        )));
    }
    Ok(())
}

/// Solve for the integer linear functional of each maximal cone;
/// `NotCartier` reports the failing cone.
pub fn cartier_data(fan: &Fan, divisor: &TorusDivisor) -> Result<SupportFunction> {
    check_lengths(fan, divisor)?;
    require_complete(fan)?;
    let mut per_cone = Vec::with_capacity(fan.max_cones().len());
    for cone in fan.max_cones() {
        let rows: Vec<IntVector> = cone.iter().map(|&j| fan.rays()[j].clone()).collect();
        let rhs = IntVector(cone.iter().map(|&j| -divisor.coeffs[j].clone()).collect());
        let a = IntMatrix::new(rows, fan.dim());
        match solve_linear_exact(&a, &rhs) {
            LinearSolution::Integral(u) => per_cone.push(u),
            _ => {
                return Err(Error::NotCartier {
                    cone_rays: cone.iter().copied().collect(),
                })
            }
        }
    }
    Ok(SupportFunction { per_cone })
}

/// A divisor is semiample exactly when its support function is convex:
/// every cone's functional weakly dominates the values on all rays.
pub fn is_semiample(fan: &Fan, divisor: &TorusDivisor) -> Result<bool> {
    let support = cartier_data(fan, divisor)?;
    for u in &support.per_cone {
        for (j, v) in fan.rays().iter().enumerate() {
            if u.dot(v) < -divisor.coeffs[j].clone() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vertex representation of the divisor polytope
/// `{u : <u, v_j> >= -a_j for all rays}`.
pub fn divisor_polytope(fan: &Fan, divisor: &TorusDivisor) -> Result<Polytope> {
    check_lengths(fan, divisor)?;
    require_complete(fan)?;
    let n = fan.dim();
    let r = fan.num_rays();
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    for subset in subsets_between(r, n, n) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&j| fan.rays()[j].to_rat()).collect();
        let rhs: Vec<Rat> = subset
            .iter()
            .map(|&j| Rat::from(-divisor.coeffs[j].clone()))
            .collect();
        let Some(u) = solve_rat_square(&rows, &rhs) else {
            continue;
        };
        let ok = (0..r).all(|j| {
            dot_ri(&u, &fan.rays()[j]) >= Rat::from(-divisor.coeffs[j].clone())
        });
        if ok && !candidates.contains(&u) {
            candidates.push(u);
        }
    }
    if candidates.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    Polytope::from_points(candidates, n)
}

/// Build the reduced fan, quotient map, cone table, and polytope.
pub fn semiample_fan(fan: &Fan, divisor: &TorusDivisor) -> Result<SemiampleReduction> {
    if !is_semiample(fan, divisor)? {
        return Err(Error::NotSemiample);
    }
    let n = fan.dim();
    let polytope = divisor_polytope(fan, divisor)?;
    let da = polytope.affine_dim();

    // The quotient kills the orthogonal complement of the polytope's
    // affine span. For a full-dimensional polytope it is the identity.
    let quotient = if da == n {
        QuotientMap::identity(n)
    } else {
        let v0 = &polytope.vertices()[0];
        let dirs: Vec<IntVector> = polytope.vertices()[1..]
            .iter()
            .map(|v| {
                let d: Vec<Rat> = v.iter().zip(v0.iter()).map(|(a, b)| a - b).collect();
                primitive_of_rat(&d).expect("distinct vertices give nonzero directions")
            })
            .collect();
        let l_basis = if dirs.is_empty() {
            // Point polytope: the complement is everything.
            IntMatrix::identity(n).rows().to_vec()
        } else {
            crate::exact::integer_kernel(&IntMatrix::new(dirs, n))
        };
        quotient_lattice(&l_basis, n)
    };

    // The polytope embedded in quotient coordinates; its normal fan is the
    // reduced fan.
    let sigma_alpha = if quotient.target_dim == 0 {
        Fan::trivial()
    } else if da == n {
        polytope.normal_fan()?.fan
    } else {
        let section = quotient.section(); // n x m with q . s = id
        let v0 = polytope.vertices()[0].clone();
        let m = quotient.target_dim;
        let embedded: Vec<Vec<Rat>> = polytope
            .vertices()
            .iter()
            .map(|v| {
                let shifted: Vec<Rat> = v.iter().zip(v0.iter()).map(|(a, b)| a - b).collect();
                (0..m)
                    .map(|j| {
                        (0..n)
                            .map(|i| Rat::from(section.at(i, j).clone()) * &shifted[i])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Polytope::from_points(embedded, m)?.normal_fan()?.fan
    };

    // Reuse the source fan's own representation when the reduction is
    // geometrically trivial, so the table reads as the identity.
    let sigma_alpha = if quotient.target_dim == n {
        match ray_bijection(&sigma_alpha, fan) {
            Some(_) => fan.clone(),
            None => sigma_alpha,
        }
    } else {
        sigma_alpha
    };

    // Tabulate the image of every cone of the source fan.
    let mut entries = BTreeMap::new();
    for cone in fan.all_cones()? {
        let images: Vec<IntVector> = cone.iter().map(|&j| quotient.apply(&fan.rays()[j])).collect();
        let target = sigma_alpha
            .smallest_containing_cone(&images)?
            .ok_or_else(|| {
                Error::InternalInconsistency(
                    "a cone's image lies in no cone of the reduced fan".into(),
                )
            })?;
        entries.insert(cone, target);
    }
    Ok(SemiampleReduction {
        sigma_alpha,
        quotient,
        pi_tilde: ConeMap { entries },
        polytope,
    })
}

/// Squarefree generators of the reduced irrelevant ideal: one variable
/// set per maximal cone of the reduced fan, collecting the rays whose
/// image lies outside that cone. The empty set stands for the monomial 1.
pub fn b_alpha_generators(red: &SemiampleReduction, fan: &Fan) -> Vec<BTreeSet<usize>> {
    let mut gens: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for cone in red.sigma_alpha.max_cones() {
        let gen: BTreeSet<usize> = (0..fan.num_rays())
            .filter(|&j| !red.ray_image(j).is_subset(cone))
            .collect();
        gens.insert(gen);
    }
    gens.into_iter().collect()
}

/// Generators of the classical irrelevant ideal of the fan itself.
pub fn irrelevant_generators(fan: &Fan) -> Vec<BTreeSet<usize>> {
    let mut gens: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for cone in fan.max_cones() {
        gens.insert((0..fan.num_rays()).filter(|j| !cone.contains(j)).collect());
    }
    gens.into_iter().collect()
}

/// All inclusion-minimal ray sets whose images lie in no cone of the
/// reduced fan while every proper subset's images lie in some cone.
pub fn primitive_collections(red: &SemiampleReduction, fan: &Fan) -> Result<Vec<BTreeSet<usize>>> {
    let r = fan.num_rays();
    let images: Vec<IntVector> = (0..r).map(|j| red.quotient.apply(&fan.rays()[j])).collect();
    let mut fits_memo: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
    let fits = |subset: &[usize],
                memo: &mut BTreeMap<Vec<usize>, bool>|
     -> Result<bool> {
        if let Some(&v) = memo.get(subset) {
            return Ok(v);
        }
        let vecs: Vec<IntVector> = subset.iter().map(|&j| images[j].clone()).collect();
        let v = red.sigma_alpha.smallest_containing_cone(&vecs)?.is_some();
        memo.insert(subset.to_vec(), v);
        Ok(v)
    };
    let mut out = Vec::new();
    for subset in subsets_between(r, 1, r) {
        if fits(&subset, &mut fits_memo)? {
            continue;
        }
        let mut minimal = true;
        for drop in 0..subset.len() {
            let sub: Vec<usize> = subset
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &j)| j)
                .collect();
            if !fits(&sub, &mut fits_memo)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(subset.into_iter().collect());
        }
    }
    Ok(out)
}

/// Linear equivalence: the coefficient difference must be the ray values
/// of an integral functional.
pub fn class_eq(fan: &Fan, d1: &TorusDivisor, d2: &TorusDivisor) -> Result<bool> {
    check_lengths(fan, d1)?;
    check_lengths(fan, d2)?;
    let rows: Vec<IntVector> = fan.rays().to_vec();
    let a = IntMatrix::new(rows, fan.dim());
    let b = IntVector(
        d1.coeffs
            .iter()
            .zip(d2.coeffs.iter())
            .map(|(x, y)| x - y)
            .collect(),
    );
    Ok(matches!(
        solve_linear_exact(&a, &b),
        LinearSolution::Integral(_)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::{p1p1_fan, p2_fan};

    fn p112_fan() -> Fan {
        Fan::new(
            2,
            vec![
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[-1, -2]),
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
    fn cartier_on_p2() {
        let fan = p2_fan();
        let d = TorusDivisor::from_i64(&[1, 0, 0]);
        let s = cartier_data(&fan, &d).unwrap();
        assert_eq!(s.per_cone.len(), 3);
        // Each functional reproduces -a on its cone's rays.
        for (cone, u) in fan.max_cones().iter().zip(&s.per_cone) {
            for &j in cone {
                assert_eq!(u.dot(&fan.rays()[j]), -d.coeffs[j].clone());
            }
        }
        let zero = TorusDivisor::zero(3);
        let s0 = cartier_data(&fan, &zero).unwrap();
        assert!(s0.per_cone.iter().all(|u| u.is_zero()));
    }

    #[test]
    fn weighted_plane_divisor_not_cartier() {
        let fan = p112_fan();
        let d = TorusDivisor::from_i64(&[0, 0, 1]);
        match cartier_data(&fan, &d) {
            Err(Error::NotCartier { cone_rays }) => {
                assert_eq!(cone_rays, vec![0, 2]);
            }
            other => panic!("expected NotCartier, got {other:?}"),
        }
        // A divisor that is Cartier on the same fan.
        let d2 = TorusDivisor::from_i64(&[0, 1, 0]);
        assert!(cartier_data(&fan, &d2).is_ok());
    }

    #[test]
    fn semiample_flags() {
        let fan = p2_fan();
        assert!(is_semiample(&fan, &TorusDivisor::from_i64(&[1, 0, 0])).unwrap());
        assert!(!is_semiample(&fan, &TorusDivisor::from_i64(&[-1, 0, 0])).unwrap());
        let fan2 = p1p1_fan();
        assert!(is_semiample(&fan2, &TorusDivisor::from_i64(&[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn divisor_polytopes() {
        let fan = p2_fan();
        let p = divisor_polytope(&fan, &TorusDivisor::from_i64(&[0, 0, 1])).unwrap();
        let mut vs = p.vertices().to_vec();
        vs.sort();
        assert_eq!(vs.len(), 3);
        assert!(p.is_lattice());

        let point = divisor_polytope(&fan, &TorusDivisor::zero(3)).unwrap();
        assert_eq!(point.num_vertices(), 1);
        assert_eq!(point.affine_dim(), 0);

        let fan2 = p1p1_fan();
        let seg = divisor_polytope(&fan2, &TorusDivisor::from_i64(&[1, 0, 0, 0])).unwrap();
        assert_eq!(seg.num_vertices(), 2);
        assert_eq!(seg.affine_dim(), 1);
    }

    #[test]
    fn ample_reduction_is_identity() {
        let fan = p2_fan();
        let red = semiample_fan(&fan, &TorusDivisor::from_i64(&[0, 0, 1])).unwrap();
        assert_eq!(red.sigma_alpha, fan);
        assert!(red.pi_tilde.is_identity());
    }

    #[test]
    fn zero_divisor_reduction_is_trivial() {
        let fan = p2_fan();
        let red = semiample_fan(&fan, &TorusDivisor::zero(3)).unwrap();
        assert_eq!(red.sigma_alpha.dim(), 0);
        assert_eq!(red.quotient.target_dim, 0);
        for (_, image) in &red.pi_tilde.entries {
            assert!(image.is_empty());
        }
    }

    #[test]
    fn product_fan_reduction_collapses_a_factor() {
        let fan = p1p1_fan();
        let red = semiample_fan(&fan, &TorusDivisor::from_i64(&[1, 0, 0, 0])).unwrap();
        assert_eq!(red.quotient.target_dim, 1);
        assert_eq!(red.sigma_alpha.num_rays(), 2);
        assert_eq!(red.sigma_alpha.max_cones().len(), 2);
        // Rays e2 and -e2 collapse to the zero cone.
        assert!(red.ray_image(1).is_empty());
        assert!(red.ray_image(3).is_empty());
        assert!(!red.ray_image(0).is_empty());
        assert!(!red.ray_image(2).is_empty());
    }

    #[test]
    fn b_alpha_examples() {
        let fan = p2_fan();
        let red = semiample_fan(&fan, &TorusDivisor::from_i64(&[0, 0, 1])).unwrap();
        let gens = b_alpha_generators(&red, &fan);
        let expected: Vec<BTreeSet<usize>> = vec![
            BTreeSet::from([0]),
            BTreeSet::from([1]),
            BTreeSet::from([2]),
        ];
        assert_eq!(gens, expected);
        assert_eq!(gens, irrelevant_generators(&fan));

        let fan2 = p1p1_fan();
        let red2 = semiample_fan(&fan2, &TorusDivisor::from_i64(&[1, 0, 0, 0])).unwrap();
        let gens2 = b_alpha_generators(&red2, &fan2);
        assert_eq!(
            gens2,
            vec![BTreeSet::from([0]), BTreeSet::from([2])]
        );

        let red0 = semiample_fan(&fan, &TorusDivisor::zero(3)).unwrap();
        assert_eq!(b_alpha_generators(&red0, &fan), vec![BTreeSet::new()]);
    }

    #[test]
    fn primitive_collection_examples() {
        let fan = p2_fan();
        let red = semiample_fan(&fan, &TorusDivisor::from_i64(&[0, 0, 1])).unwrap();
        assert_eq!(
            primitive_collections(&red, &fan).unwrap(),
            vec![BTreeSet::from([0, 1, 2])]
        );

        let fan2 = p1p1_fan();
        let red2 = semiample_fan(&fan2, &TorusDivisor::from_i64(&[1, 1, 0, 0])).unwrap();
        assert_eq!(
            primitive_collections(&red2, &fan2).unwrap(),
            vec![BTreeSet::from([0, 2]), BTreeSet::from([1, 3])]
        );

        let red3 = semiample_fan(&fan2, &TorusDivisor::from_i64(&[1, 0, 0, 0])).unwrap();
        assert_eq!(
            primitive_collections(&red3, &fan2).unwrap(),
            vec![BTreeSet::from([0, 2])]
        );
    }

    #[test]
    fn class_equivalence() {
        let fan = p2_fan();
        let d1 = TorusDivisor::from_i64(&[1, 0, 0]);
        let d2 = TorusDivisor::from_i64(&[0, 1, 0]);
        assert!(class_eq(&fan, &d1, &d1).unwrap());
        assert!(class_eq(&fan, &d1, &d2).unwrap());

        let fan2 = p1p1_fan();
        let e1 = TorusDivisor::from_i64(&[1, 0, 0, 0]);
        let e2 = TorusDivisor::from_i64(&[0, 1, 0, 0]);
        assert!(!class_eq(&fan2, &e1, &e2).unwrap());
    }
}

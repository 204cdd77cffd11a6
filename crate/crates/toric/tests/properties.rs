//! Property tests for the exact-arithmetic substrate and the geometric
//! invariants that hold on every input.

use proptest::prelude::*;
use toric::exact::{
    det_sign, primitive, quotient_lattice, solve_linear_exact, IntMatrix, IntVector,
    LinearSolution,
};
use toric::lp::{feasible, Constraint, Rel};
use toric::polytope::Polytope;
use toric::residue::Monomial;

fn int_vector(dim: usize) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(-9i64..=9, dim).prop_map(|v| IntVector::from_i64(&v))
}

fn square_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, n), n).prop_map(move |rows| {
        IntMatrix::new(
            rows.iter().map(|r| IntVector::from_i64(r)).collect(),
            n,
        )
    })
}

proptest! {
    #[test]
    fn det_sign_antisymmetric_under_row_swap(m in square_matrix(3)) {
        let base = det_sign(&m).unwrap();
        let mut rows = m.rows().to_vec();
        rows.swap(0, 1);
        let swapped = IntMatrix::new(rows, 3);
        prop_assert_eq!(det_sign(&swapped).unwrap(), -base);
    }

    #[test]
    fn primitive_is_idempotent(v in int_vector(4)) {
        prop_assume!(!v.is_zero());
        let once = primitive(&v).unwrap();
        let twice = primitive(&once).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn quotient_annihilates_span(vs in prop::collection::vec(int_vector(3), 0..3)) {
        let q = quotient_lattice(&vs, 3);
        for v in &vs {
            prop_assert!(q.apply(v).is_zero());
        }
        // The section is a right inverse.
        if q.target_dim > 0 {
            let s = q.section();
            for j in 0..q.target_dim {
                let col = IntVector((0..3).map(|i| s.at(i, j).clone()).collect());
                let mut e = IntVector::zero(q.target_dim);
                e.0[j] = 1.into();
                prop_assert_eq!(q.apply(&col), e);
            }
        }
    }

    #[test]
    fn exact_solve_verifies(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 2),
                            rhs in prop::collection::vec(-5i64..=5, 2)) {
        let a = IntMatrix::new(rows.iter().map(|r| IntVector::from_i64(r)).collect(), 2);
        let b = IntVector::from_i64(&rhs);
        if let LinearSolution::Integral(x) = solve_linear_exact(&a, &b) {
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }

    #[test]
    fn monomial_divisibility_is_antisymmetric(a in prop::collection::vec(0u64..4, 4),
                                              b in prop::collection::vec(0u64..4, 4)) {
        let ma = Monomial::new(a);
        let mb = Monomial::new(b);
        if ma.divides(&mb) && mb.divides(&ma) {
            prop_assert_eq!(&ma, &mb);
        }
        if ma.divides(&mb) {
            prop_assert_eq!(mb.div(&ma).mul(&ma), mb);
        }
    }

    #[test]
    fn lp_feasible_points_satisfy(coeffs in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 1..5),
                                  rhs in prop::collection::vec(-4i64..=4, 5)) {
        let cs: Vec<Constraint> = coeffs
            .iter()
            .zip(rhs.iter())
            .map(|(c, &r)| Constraint::ge(
                c.iter().map(|&x| toric::exact::rat(x, 1)).collect(),
                toric::exact::rat(r, 1),
            ))
            .collect();
        if let Some(x) = feasible(&cs, 2) {
            for c in &cs {
                let lhs: toric::exact::Rat = c
                    .coeffs
                    .iter()
                    .zip(x.iter())
                    .map(|(a, b)| a * b)
                    .sum();
                match c.rel {
                    Rel::Ge => prop_assert!(lhs >= c.rhs),
                    Rel::Eq => prop_assert_eq!(lhs, c.rhs.clone()),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polar_reverses_face_counts(pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 4..8)) {
        let points: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64(p)).collect();
        let Ok(p0) = Polytope::from_lattice_points(points, 2) else { return Ok(()); };
        if !p0.is_full_dimensional() {
            return Ok(());
        }
        let bary = p0.barycenter();
        let shift: Vec<_> = bary.iter().map(|c| -c.clone()).collect();
        let p = p0.translate(&shift);
        let Ok(dual) = p.polar() else { return Ok(()); };
        let l = p.face_lattice().unwrap();
        let lp = dual.polytope.face_lattice().unwrap();
        for d in 0..2 {
            prop_assert_eq!(l.by_dim[d].len(), lp.by_dim[1 - d].len());
        }
    }

    #[test]
    fn flag_signs_sum_to_zero(pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3..8)) {
        let points: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64(p)).collect();
        let Ok(p) = Polytope::from_lattice_points(points, 2) else { return Ok(()); };
        if !p.is_full_dimensional() {
            return Ok(());
        }
        let orient = toric::polytope::Orientation::standard(2);
        let total: i32 = p
            .enumerate_flags()
            .unwrap()
            .iter()
            .map(|f| p.flag_sign(&orient, f).unwrap())
            .sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn normal_fans_validate(pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3..8)) {
        let points: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64(p)).collect();
        let Ok(p) = Polytope::from_lattice_points(points, 2) else { return Ok(()); };
        if !p.is_full_dimensional() {
            return Ok(());
        }
        let nf = p.normal_fan().unwrap();
        let flags = nf.fan.validate().unwrap();
        prop_assert!(flags.complete);
        prop_assert!(flags.projective);
    }
}

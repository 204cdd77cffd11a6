//! Seeded instance generators and the cross-checking property suites.
//!
//! Every suite draws reproducible random instances, exercises two or more
//! independent computation routes, and reports disagreements as failures.
//! The command-line self test and the acceptance tests both run these.

use crate::coloring::{is_simplicial, Coloring, SimplicialCheck};
use crate::degree::{
    cdeg, cdeg_cones, cdeg_flags, dual_flag, dual_map_degree, pl_degree_oracle, FacetColoring,
    SimplexTarget, DEFAULT_ORACLE_SEED,
};
use crate::error::{Error, Result};
use crate::exact::{dot_ri, IntVector, Rat};
use crate::fan::{geometric_eq, Fan, Refinement};
use crate::polytope::{Orientation, Polytope};
use crate::residue::{
    ideal_member_semiample, residue_monomials, Monomial, MonomialIdeal, MonomialTuple,
    SearchOutcome,
};
use crate::semiample::{
    b_alpha_generators, class_eq, irrelevant_generators, semiample_fan, TorusDivisor,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

/// Outcome of one property suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Fixture fans.

pub fn p1_fan() -> Fan {
    Fan::new(
        1,
        vec![IntVector::from_i64(&[1]), IntVector::from_i64(&[-1])],
        vec![BTreeSet::from([0]), BTreeSet::from([1])],
    )
    .expect("fixture fan")
}

pub fn p2_fan() -> Fan {
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
    .expect("fixture fan")
}

pub fn p1p1_fan() -> Fan {
    Fan::new(
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
    .expect("fixture fan")
}

/// Face fan of the 3-cube (normal fan of the octahedron); complete but
/// not simplicial.
pub fn cube_face_fan() -> Fan {
    let rays = vec![
        IntVector::from_i64(&[1, 1, 1]),
        IntVector::from_i64(&[1, 1, -1]),
        IntVector::from_i64(&[1, -1, 1]),
        IntVector::from_i64(&[1, -1, -1]),
        IntVector::from_i64(&[-1, 1, 1]),
        IntVector::from_i64(&[-1, 1, -1]),
        IntVector::from_i64(&[-1, -1, 1]),
        IntVector::from_i64(&[-1, -1, -1]),
    ];
    let max_cones = vec![
        BTreeSet::from([0, 1, 2, 3]),
        BTreeSet::from([4, 5, 6, 7]),
        BTreeSet::from([0, 1, 4, 5]),
        BTreeSet::from([2, 3, 6, 7]),
        BTreeSet::from([0, 2, 4, 6]),
        BTreeSet::from([1, 3, 5, 7]),
    ];
    Fan::new(3, rays, max_cones).expect("fixture fan")
}

// ---------------------------------------------------------------------------
// Random instance generation.

/// A random full-dimensional lattice polytope whose normal fan has at
/// most `max_rays` rays.
pub fn gen_polytope(rng: &mut ChaCha8Rng, n: usize, max_rays: usize) -> Polytope {
    loop {
        let k = n + 1 + rng.gen_range(0..=3);
        let pts: Vec<IntVector> = (0..k)
            .map(|_| IntVector::from_i64(&(0..n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>()))
            .collect();
        let Ok(p) = Polytope::from_lattice_points(pts, n) else {
            continue;
        };
        if !p.is_full_dimensional() {
            continue;
        }
        match p.facets() {
            Ok(f) if f.len() <= max_rays => return p,
            _ => continue,
        }
    }
}

/// A random simplicial coloring of the fan's rays; multi-color sets are
/// drawn when `allow_multi` is set.
pub fn gen_simplicial_coloring(
    rng: &mut ChaCha8Rng,
    fan: &Fan,
    allow_multi: bool,
) -> Coloring {
    let n = fan.dim();
    let r = fan.num_rays();
    for _ in 0..64 {
        let colors: Vec<BTreeSet<usize>> = (0..r)
            .map(|_| {
                if allow_multi && rng.gen_bool(0.3) {
                    let a = rng.gen_range(0..=n);
                    let b = rng.gen_range(0..=n);
                    BTreeSet::from([a, b])
                } else {
                    BTreeSet::from([rng.gen_range(0..=n)])
                }
            })
            .collect();
        let c = Coloring::new(colors, n).expect("colors in range");
        if matches!(
            is_simplicial(fan, &c).expect("lengths match"),
            SimplicialCheck::Simplicial
        ) {
            return c;
        }
    }
    // Using one color fewer than the palette is always simplicial.
    let colors: Vec<BTreeSet<usize>> = (0..r)
        .map(|_| BTreeSet::from([rng.gen_range(0..n)]))
        .collect();
    Coloring::new(colors, n).expect("colors in range")
}

/// Transport a ray coloring to the facets of a polytope realizing the fan.
pub fn facet_colors_from_rays(
    p: &Polytope,
    coloring: &Coloring,
    ray_of_facet: &[usize],
) -> Result<FacetColoring> {
    let facets = p.facets()?;
    Ok((0..facets.len())
        .map(|fi| coloring.colors()[ray_of_facet[fi]].clone())
        .collect())
}

/// The divisor whose support function is the support of `q` evaluated on
/// the fan's rays; semiample whenever the fan refines the normal fan of
/// `q`, and ample when they are equal.
pub fn divisor_from_polytope(fan: &Fan, q: &Polytope) -> TorusDivisor {
    let coeffs = fan
        .rays()
        .iter()
        .map(|v| {
            let min = q
                .vertices()
                .iter()
                .map(|u| dot_ri(u, v))
                .min()
                .expect("polytope has vertices");
            -min.to_integer()
        })
        .collect();
    TorusDivisor { coeffs }
}

/// Random (fan, semiample divisor) built from a Minkowski sum, so the
/// divisor is generally semiample but not ample.
pub fn gen_semiample_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_rays: usize,
) -> (Fan, TorusDivisor, Polytope) {
    loop {
        let p1 = gen_polytope(rng, n, max_rays);
        let p2 = gen_polytope(rng, n, max_rays);
        let Ok(sum) = p1.minkowski_sum(&p2) else {
            continue;
        };
        if !sum.is_full_dimensional() {
            continue;
        }
        let Ok(nf) = sum.normal_fan() else { continue };
        if nf.fan.num_rays() > max_rays {
            continue;
        }
        let pick = rng.gen_range(0..3u8);
        let source = match pick {
            0 => &sum,
            1 => &p1,
            _ => &p2,
        };
        let d = divisor_from_polytope(&nf.fan, source);
        return (nf.fan, d, source.clone());
    }
}

/// Random squarefree monomial ideal on `r` variables, inclusion-minimal.
pub fn gen_squarefree_ideal(rng: &mut ChaCha8Rng, r: usize) -> MonomialIdeal {
    loop {
        let m = rng.gen_range(1..=4usize);
        let mut supports: Vec<BTreeSet<usize>> = Vec::new();
        for _ in 0..m {
            let size = rng.gen_range(1..=3usize.min(r));
            let mut s = BTreeSet::new();
            while s.len() < size {
                s.insert(rng.gen_range(0..r));
            }
            supports.push(s);
        }
        // Keep only inclusion-minimal supports.
        let minimal: Vec<BTreeSet<usize>> = supports
            .iter()
            .filter(|s| {
                !supports
                    .iter()
                    .any(|t| t != *s && t.is_subset(s))
            })
            .cloned()
            .collect();
        let mut dedup: Vec<BTreeSet<usize>> = Vec::new();
        for s in minimal {
            if !dedup.contains(&s) {
                dedup.push(s);
            }
        }
        if dedup.is_empty() {
            continue;
        }
        let gens = dedup
            .iter()
            .map(|s| Monomial::from_support(s, r))
            .collect();
        if let Ok(ideal) = MonomialIdeal::new(gens) {
            return ideal;
        }
    }
}

// ---------------------------------------------------------------------------
// Property suites.

/// Flag count, colored-cone count for every color, and the topological
/// oracle must give one and the same integer.
pub fn suite_route_agreement(seed: u64, count: usize, dims: &[usize]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < count {
        let n = dims[done % dims.len()];
        if let Err(e) = route_agreement_instance(&mut rng, n, done) {
            failures.push(e);
        }
        done += 1;
    }
    SuiteReport {
        name: "route_agreement".into(),
        instances: count,
        failures,
    }
}

fn route_agreement_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    tag: usize,
) -> std::result::Result<(), String> {
    let p = gen_polytope(rng, n, 10);
    let nf = p.normal_fan().map_err(|e| format!("[{tag}] {e}"))?;
    let coloring = gen_simplicial_coloring(rng, &nf.fan, true);
    let facet_colors = facet_colors_from_rays(&p, &coloring, &nf.ray_of_facet)
        .map_err(|e| format!("[{tag}] {e}"))?;
    let orient = Orientation::standard(n);

    let by_flags =
        cdeg_flags(&p, &orient, &facet_colors, None).map_err(|e| format!("[{tag}] {e}"))?;
    let by_oracle = pl_degree_oracle(&p, &orient, &facet_colors, DEFAULT_ORACLE_SEED)
        .map_err(|e| format!("[{tag}] {e}"))?;
    if by_flags != by_oracle {
        return Err(format!(
            "[{tag}] flag count {by_flags} != oracle degree {by_oracle}"
        ));
    }
    let disjoint = coloring.reduce_to_disjoint();
    let cone_fan = if nf.fan.validate().map_err(|e| format!("[{tag}] {e}"))?.simplicial {
        nf.fan.clone()
    } else {
        nf.fan
            .simplicialize()
            .map_err(|e| format!("[{tag}] {e}"))?
            .0
    };
    for k in 0..=n {
        let by_cones =
            cdeg_cones(&cone_fan, &disjoint, k).map_err(|e| format!("[{tag}] {e}"))?;
        if by_cones != by_flags {
            return Err(format!(
                "[{tag}] cone count {by_cones} at k={k} != flag count {by_flags}"
            ));
        }
    }
    Ok(())
}

/// Transposing any two colors negates the degree.
pub fn suite_alternation(seed: u64, count: usize, dims: &[usize]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let n = dims[tag % dims.len()];
        let p = gen_polytope(&mut rng, n, 10);
        let Ok(nf) = p.normal_fan() else {
            failures.push(format!("[{tag}] degenerate fan"));
            continue;
        };
        let coloring = gen_simplicial_coloring(&mut rng, &nf.fan, false);
        // Reuse one simplicial refinement for the whole transposition orbit.
        let cone_fan = match nf.fan.validate() {
            Ok(flags) if flags.simplicial => nf.fan.clone(),
            Ok(_) => match nf.fan.simplicialize() {
                Ok((fine, _)) => fine,
                Err(e) => {
                    failures.push(format!("[{tag}] {e}"));
                    continue;
                }
            },
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let base = match cdeg_cones(&cone_fan, &coloring, 0) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        for a in 0..=n {
            for b in a + 1..=n {
                match cdeg_cones(&cone_fan, &coloring.transpose(a, b), 0) {
                    Ok(v) if v == -base => {}
                    Ok(v) => failures.push(format!(
                        "[{tag}] transposing {a},{b} gave {v}, expected {}",
                        -base
                    )),
                    Err(e) => failures.push(format!("[{tag}] {e}")),
                }
            }
        }
    }
    SuiteReport {
        name: "alternation".into(),
        instances: count,
        failures,
    }
}

/// The flag count is the same for every choice of target flag.
pub fn suite_target_flag_independence(seed: u64, count: usize, dims: &[usize]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let n = dims[tag % dims.len()];
        let p = gen_polytope(&mut rng, n, 8);
        let Ok(nf) = p.normal_fan() else { continue };
        let coloring = gen_simplicial_coloring(&mut rng, &nf.fan, true);
        let Ok(facet_colors) = facet_colors_from_rays(&p, &coloring, &nf.ray_of_facet) else {
            continue;
        };
        let orient = Orientation::standard(n);
        let base = match cdeg_flags(&p, &orient, &facet_colors, None) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let simplex = SimplexTarget::new(n).expect("simplex");
        for (fi, flag) in simplex.flags().expect("flags").iter().enumerate() {
            match cdeg_flags(&p, &orient, &facet_colors, Some(flag)) {
                Ok(v) if v == base => {}
                Ok(v) => failures.push(format!(
                    "[{tag}] target flag {fi} gave {v}, expected {base}"
                )),
                Err(e) => failures.push(format!("[{tag}] {e}")),
            }
        }
    }
    SuiteReport {
        name: "target_flag_independence".into(),
        instances: count,
        failures,
    }
}

/// The dual map has the same degree, and the flag-sign ratio between a
/// flag and its dual is the constant dictated by the dimension.
pub fn suite_duality(seed: u64, count: usize, dims: &[usize]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let n = dims[tag % dims.len()];
        let p0 = gen_polytope(&mut rng, n, 10);
        // Translate so the origin is strictly interior.
        let bary = p0.barycenter();
        let shift: Vec<Rat> = bary.iter().map(|c| -c.clone()).collect();
        let p = p0.translate(&shift);
        let Ok(nf) = p.normal_fan() else { continue };
        let coloring = gen_simplicial_coloring(&mut rng, &nf.fan, true);
        let Ok(facet_colors) = facet_colors_from_rays(&p, &coloring, &nf.ray_of_facet) else {
            continue;
        };
        let orient = Orientation::standard(n);
        let primal = match cdeg_flags(&p, &orient, &facet_colors, None) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        match dual_map_degree(&p, &orient, &facet_colors) {
            Ok(v) if v == primal => {}
            Ok(v) => failures.push(format!("[{tag}] dual degree {v} != primal {primal}")),
            Err(e) => failures.push(format!("[{tag}] {e}")),
        }
    }
    SuiteReport {
        name: "duality".into(),
        instances: count,
        failures,
    }
}

/// Exhaustive flag-sign ratio check: `sgn X = lambda * sgn X*` with
/// `lambda = (-1)^(n(n+1)/2)` for every complete flag.
pub fn suite_lambda_factor(seed: u64, extra_random: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut polytopes: Vec<Polytope> = Vec::new();
    // Centered square, cube, simplices, and random centered polytopes.
    polytopes.push(
        Polytope::from_lattice_points(
            vec![
                IntVector::from_i64(&[-1, -1]),
                IntVector::from_i64(&[1, -1]),
                IntVector::from_i64(&[-1, 1]),
                IntVector::from_i64(&[1, 1]),
            ],
            2,
        )
        .expect("square"),
    );
    let mut cube_pts = Vec::new();
    for x in [-1i64, 1] {
        for y in [-1i64, 1] {
            for z in [-1i64, 1] {
                cube_pts.push(IntVector::from_i64(&[x, y, z]));
            }
        }
    }
    polytopes.push(Polytope::from_lattice_points(cube_pts, 3).expect("cube"));
    for n in [2usize, 3] {
        polytopes.push(
            SimplexTarget::centered(n)
                .expect("simplex")
                .polytope()
                .clone(),
        );
    }
    for i in 0..extra_random {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let p0 = gen_polytope(&mut rng, n, 10);
        let bary = p0.barycenter();
        let shift: Vec<Rat> = bary.iter().map(|c| -c.clone()).collect();
        polytopes.push(p0.translate(&shift));
    }
    let mut instances = 0;
    for (pi, p) in polytopes.iter().enumerate() {
        let n = p.ambient_dim();
        let lambda: i32 = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        let dual = match p.polar() {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("[poly {pi}] {e}"));
                continue;
            }
        };
        let orient = Orientation::standard(n);
        let flags = match p.enumerate_flags() {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("[poly {pi}] {e}"));
                continue;
            }
        };
        for (fi, flag) in flags.iter().enumerate() {
            instances += 1;
            let s = p.flag_sign(&orient, flag).expect("flag sign");
            let df = dual_flag(&dual.face_map, flag);
            let sd = dual
                .polytope
                .flag_sign(&orient, &df)
                .expect("dual flag sign");
            if s != lambda * sd {
                failures.push(format!(
                    "[poly {pi} flag {fi}] sign {s} != lambda {lambda} * dual sign {sd}"
                ));
            }
        }
    }
    SuiteReport {
        name: "lambda_factor".into(),
        instances,
        failures,
    }
}

/// Catalog of complete non-simplicial 3-dimensional fans.
pub fn nonsimplicial_fan_catalog() -> Vec<Fan> {
    let mut out = vec![cube_face_fan()];
    // Normal fans of non-simple polytopes: cross-polytopes and bipyramids.
    let cross = Polytope::from_lattice_points(
        vec![
            IntVector::from_i64(&[1, 0, 0]),
            IntVector::from_i64(&[-1, 0, 0]),
            IntVector::from_i64(&[0, 1, 0]),
            IntVector::from_i64(&[0, -1, 0]),
            IntVector::from_i64(&[0, 0, 1]),
            IntVector::from_i64(&[0, 0, -1]),
        ],
        3,
    )
    .expect("cross polytope");
    out.push(cross.normal_fan().expect("fan").fan);
    let stretched = Polytope::from_lattice_points(
        vec![
            IntVector::from_i64(&[2, 0, 0]),
            IntVector::from_i64(&[-2, 0, 0]),
            IntVector::from_i64(&[0, 1, 0]),
            IntVector::from_i64(&[0, -1, 0]),
            IntVector::from_i64(&[0, 0, 1]),
            IntVector::from_i64(&[0, 0, -1]),
        ],
        3,
    )
    .expect("stretched cross");
    out.push(stretched.normal_fan().expect("fan").fan);
    let bipyramid = Polytope::from_lattice_points(
        vec![
            IntVector::from_i64(&[1, 1, 0]),
            IntVector::from_i64(&[1, -1, 0]),
            IntVector::from_i64(&[-1, 1, 0]),
            IntVector::from_i64(&[-1, -1, 0]),
            IntVector::from_i64(&[0, 0, 1]),
            IntVector::from_i64(&[0, 0, -1]),
        ],
        3,
    )
    .expect("bipyramid");
    out.push(bipyramid.normal_fan().expect("fan").fan);
    out
}

/// Degrees agree across a same-ray simplicial refinement.
pub fn suite_refinement_invariance(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let catalog = nonsimplicial_fan_catalog();
    for tag in 0..count {
        let fan = &catalog[tag % catalog.len()];
        let coloring = gen_simplicial_coloring(&mut rng, fan, false);
        let (fine, _) = match fan.simplicialize() {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        if !matches!(fan.refinement_from(&fine), Ok(Refinement::Map(_))) {
            failures.push(format!("[{tag}] refinement witness missing"));
            continue;
        }
        // Degree on the coarse fan by flags over its witness polytope;
        // degree on the refinement by cone counting.
        let coarse_deg = match fan_degree_by_flags(fan, &coloring) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let fine_deg = match cdeg_cones(&fine, &coloring.reduce_to_disjoint(), 0) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        if coarse_deg != fine_deg {
            failures.push(format!(
                "[{tag}] coarse degree {coarse_deg} != refined degree {fine_deg}"
            ));
        }
    }
    SuiteReport {
        name: "refinement_invariance".into(),
        instances: count,
        failures,
    }
}

/// Degree of a fan coloring computed on the polytope side through the
/// projectivity witness.
pub fn fan_degree_by_flags(fan: &Fan, coloring: &Coloring) -> Result<i32> {
    let witness = fan
        .witness_polytope()?
        .ok_or(Error::NotProjective)?
        .clone();
    let nf = witness.normal_fan()?;
    if !geometric_eq(&nf.fan, fan) {
        return Err(Error::InternalInconsistency(
            "witness polytope does not realize the fan".into(),
        ));
    }
    // Match facets to the original ray indexing by normal vector.
    let facets = witness.facets()?;
    let mut facet_colors: FacetColoring = Vec::with_capacity(facets.len());
    for f in facets {
        let ray = fan
            .rays()
            .iter()
            .position(|v| *v == f.normal)
            .ok_or_else(|| {
                Error::InternalInconsistency("witness facet normal is not a ray".into())
            })?;
        facet_colors.push(coloring.colors()[ray].clone());
    }
    cdeg_flags(
        &witness,
        &Orientation::standard(fan.dim()),
        &facet_colors,
        None,
    )
}

/// The four membership conditions return one verdict, on random fans,
/// ideals and semiample divisors; also checks the maximal-cone form of
/// the cone condition against all cones. Every fourth instance is a
/// factor pullback on the product fan, which is semiample and not ample.
pub fn suite_monomial_equivalence(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let (fan, divisor) = if tag % 4 == 3 {
            let fan = p1p1_fan();
            let a = rng.gen_range(1..=3i64);
            let b = rng.gen_range(0..=3i64);
            let divisor = if rng.gen_bool(0.5) {
                TorusDivisor::from_i64(&[a, 0, b, 0])
            } else {
                TorusDivisor::from_i64(&[0, a, 0, b])
            };
            (fan, divisor)
        } else {
            let (fan, divisor, _) = gen_semiample_instance(&mut rng, 2, 8);
            (fan, divisor)
        };
        let ideal = gen_squarefree_ideal(&mut rng, fan.num_rays());
        match ideal_member_semiample(&fan, &ideal, &divisor) {
            Ok(report) => {
                // Verdict of the cone condition over all cones, not only
                // maximal ones.
                let red = match semiample_fan(&fan, &divisor) {
                    Ok(r) => r,
                    Err(e) => {
                        failures.push(format!("[{tag}] {e}"));
                        continue;
                    }
                };
                match all_cone_condition(&red, &ideal) {
                    Ok(v) if v == report.member => {}
                    Ok(v) => failures.push(format!(
                        "[{tag}] all-cone condition {v} != maximal-cone verdict {}",
                        report.member
                    )),
                    Err(e) => failures.push(format!("[{tag}] {e}")),
                }
            }
            Err(Error::InternalInconsistency(msg)) => {
                failures.push(format!("[{tag}] inconsistency: {msg}"))
            }
            Err(e) => failures.push(format!("[{tag}] {e}")),
        }
    }
    SuiteReport {
        name: "monomial_equivalence".into(),
        instances: count,
        failures,
    }
}

fn all_cone_condition(
    red: &crate::semiample::SemiampleReduction,
    ideal: &MonomialIdeal,
) -> Result<bool> {
    for cone in red.sigma_alpha.all_cones()? {
        let all_land = ideal.gens().iter().all(|g| {
            g.support()
                .into_iter()
                .any(|j| red.ray_image(j).is_subset(&cone))
        });
        if all_land {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For ample divisors the reduction is the identity and the reduced
/// irrelevant ideal equals the classical one.
pub fn suite_ample_specialization(seed: u64, count: usize, dims: &[usize]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let n = dims[tag % dims.len()];
        let p = gen_polytope(&mut rng, n, 10);
        let Ok(nf) = p.normal_fan() else { continue };
        let fan = nf.fan;
        let d = divisor_from_polytope(&fan, &p);
        match semiample_fan(&fan, &d) {
            Ok(red) => {
                if red.sigma_alpha != fan {
                    failures.push(format!("[{tag}] reduced fan differs from the fan"));
                }
                if !red.pi_tilde.is_identity() {
                    failures.push(format!("[{tag}] cone table is not the identity"));
                }
                if b_alpha_generators(&red, &fan) != irrelevant_generators(&fan) {
                    failures.push(format!(
                        "[{tag}] reduced irrelevant ideal differs from the classical one"
                    ));
                }
            }
            Err(e) => failures.push(format!("[{tag}] {e}")),
        }
    }
    SuiteReport {
        name: "ample_specialization".into(),
        instances: count,
        failures,
    }
}

/// The residue of a tuple with strictly divisible product equals the
/// residue of every admissible squarefree sub-tuple.
pub fn suite_divisibility_reduction(seed: u64, count: usize, dims: &[usize]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    let mut guard = 0;
    while done < count && guard < count * 200 {
        guard += 1;
        let n = dims[done % dims.len()];
        let p = gen_polytope(&mut rng, n, 8);
        let Ok(nf) = p.normal_fan() else { continue };
        let fan = nf.fan;
        let r = fan.num_rays();
        let base = gen_simplicial_coloring(&mut rng, &fan, false);
        // Base tuple: product exactly the product of the variables.
        let mut entries: Vec<Monomial> = (0..=n)
            .map(|c| {
                let support: BTreeSet<usize> = (0..r)
                    .filter(|&j| base.colors()[j].contains(&c))
                    .collect();
                Monomial::from_support(&support, r)
            })
            .collect();
        // Extra factors make the product strictly divisible.
        for m in entries.iter_mut() {
            for _ in 0..rng.gen_range(0..=2) {
                m.exponents[rng.gen_range(0..r)] += 1;
            }
        }
        let tuple = MonomialTuple::new(entries);
        let strict = tuple.product().exponents.iter().any(|&e| e > 1);
        if !strict {
            continue;
        }
        let expected = match residue_monomials(&fan, &tuple) {
            Ok(v) => v,
            Err(_) => continue, // extras may have broken simpliciality
        };
        // All admissible sub-tuples: per ray pick one entry it divides.
        let choices: Vec<Vec<usize>> = (0..r)
            .map(|j| {
                (0..=n)
                    .filter(|&i| tuple.entries[i].exponents[j] >= 1)
                    .collect()
            })
            .collect();
        let total: usize = choices.iter().map(|c| c.len()).product();
        if total > 128 {
            continue;
        }
        done += 1;
        let mut pick = vec![0usize; r];
        loop {
            let mut sub: Vec<Monomial> = vec![Monomial::one(r); n + 1];
            for j in 0..r {
                sub[choices[j][pick[j]]].exponents[j] = 1;
            }
            let sub_tuple = MonomialTuple::new(sub);
            match residue_monomials(&fan, &sub_tuple) {
                Ok(v) if v == expected => {}
                Ok(v) => failures.push(format!(
                    "[{done}] sub-tuple residue {v} != full residue {expected}"
                )),
                Err(e) => failures.push(format!("[{done}] sub-tuple failed: {e}")),
            }
            // Advance the mixed-radix counter.
            let mut j = 0;
            loop {
                if j == r {
                    break;
                }
                pick[j] += 1;
                if pick[j] < choices[j].len() {
                    break;
                }
                pick[j] = 0;
                j += 1;
            }
            if j == r {
                break;
            }
        }
    }
    SuiteReport {
        name: "divisibility_reduction".into(),
        instances: done,
        failures,
    }
}

/// The reduction to a disjoint coloring preserves the degree.
pub fn suite_reduction_consistency(seed: u64, count: usize, dims: &[usize]) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let n = dims[tag % dims.len()];
        let p = gen_polytope(&mut rng, n, 10);
        let Ok(nf) = p.normal_fan() else { continue };
        let coloring = gen_simplicial_coloring(&mut rng, &nf.fan, true);
        let full = match cdeg(&nf.fan, &coloring) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        match cdeg(&nf.fan, &coloring.reduce_to_disjoint()) {
            Ok(v) if v == full => {}
            Ok(v) => failures.push(format!("[{tag}] reduced degree {v} != {full}")),
            Err(e) => failures.push(format!("[{tag}] {e}")),
        }
    }
    SuiteReport {
        name: "reduction_consistency".into(),
        instances: count,
        failures,
    }
}

/// Linear equivalence of divisor classes is an equivalence relation.
pub fn suite_class_equivalence(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let p = gen_polytope(&mut rng, 2, 8);
        let Ok(nf) = p.normal_fan() else { continue };
        let fan = nf.fan;
        let r = fan.num_rays();
        let rand_divisor = |rng: &mut ChaCha8Rng| {
            TorusDivisor::from_i64(
                &(0..r).map(|_| rng.gen_range(-2..=2i64)).collect::<Vec<_>>(),
            )
        };
        let d1 = rand_divisor(&mut rng);
        let d2 = rand_divisor(&mut rng);
        let d3 = rand_divisor(&mut rng);
        let c = |a: &TorusDivisor, b: &TorusDivisor| class_eq(&fan, a, b).unwrap_or(false);
        if !c(&d1, &d1) {
            failures.push(format!("[{tag}] reflexivity failed"));
        }
        if c(&d1, &d2) != c(&d2, &d1) {
            failures.push(format!("[{tag}] symmetry failed"));
        }
        if c(&d1, &d2) && c(&d2, &d3) && !c(&d1, &d3) {
            failures.push(format!("[{tag}] transitivity failed"));
        }
    }
    SuiteReport {
        name: "class_equivalence".into(),
        instances: count,
        failures,
    }
}

/// Every section monomial of a semiample divisor contains the support of
/// some vertex monomial. This is the form the radical-ideal argument
/// needs: membership of a monomial in a squarefree ideal depends only on
/// its support, so vertex monomials decide membership for all sections.
pub fn suite_vertex_support(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let (fan, divisor, _) = gen_semiample_instance(&mut rng, 2, 8);
        let sections = match crate::residue::sections_basis(&fan, &divisor) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let red = match semiample_fan(&fan, &divisor) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let vertex_supports: Vec<BTreeSet<usize>> = red
            .polytope
            .vertices()
            .iter()
            .map(|v| {
                let u = IntVector(v.iter().map(|c| c.to_integer()).collect());
                fan.rays()
                    .iter()
                    .zip(divisor.coeffs.iter())
                    .enumerate()
                    .filter(|(_, (ray, a))| u.dot(ray) != -(*a).clone())
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        for m in &sections.monomials {
            let support = m.support();
            if !vertex_supports.iter().any(|w| w.is_subset(&support)) {
                failures.push(format!(
                    "[{tag}] section {m} contains no vertex monomial support"
                ));
            }
        }
    }
    SuiteReport {
        name: "vertex_support".into(),
        instances: count,
        failures,
    }
}

/// The primitive collections must be exactly the minimal hitting sets of
/// the reduced irrelevant ideal's generator supports: both describe the
/// irreducible components of its vanishing locus.
pub fn suite_primitive_decomposition(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let (fan, divisor, _) = gen_semiample_instance(&mut rng, 2, 8);
        let red = match semiample_fan(&fan, &divisor) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let collections = match crate::semiample::primitive_collections(&red, &fan) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let gens = b_alpha_generators(&red, &fan);
        let hitting = minimal_hitting_sets(&gens, fan.num_rays());
        if collections != hitting {
            failures.push(format!(
                "[{tag}] primitive collections {collections:?} != minimal hitting sets {hitting:?}"
            ));
        }
    }
    SuiteReport {
        name: "primitive_decomposition".into(),
        instances: count,
        failures,
    }
}

/// Inclusion-minimal sets meeting every generator support; brute force.
fn minimal_hitting_sets(gens: &[BTreeSet<usize>], r: usize) -> Vec<BTreeSet<usize>> {
    if gens.iter().any(|g| g.is_empty()) {
        return Vec::new(); // the unit ideal vanishes nowhere
    }
    let hits = |s: &[usize]| gens.iter().all(|g| s.iter().any(|j| g.contains(j)));
    let mut all: Vec<Vec<usize>> = Vec::new();
    for subset in crate::polytope::subsets_between(r, 1, r) {
        if hits(&subset) {
            all.push(subset);
        }
    }
    let minimal: Vec<BTreeSet<usize>> = all
        .iter()
        .filter(|s| {
            !all.iter()
                .any(|t| t.len() < s.len() && t.iter().all(|x| s.contains(x)))
        })
        .map(|s| s.iter().copied().collect())
        .collect();
    minimal
}

/// Permuting the tuple multiplies the residue by the permutation sign.
pub fn suite_permutation_alternation(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let p = gen_polytope(&mut rng, 2, 8);
        let Ok(nf) = p.normal_fan() else { continue };
        let fan = nf.fan;
        let r = fan.num_rays();
        let base = gen_simplicial_coloring(&mut rng, &fan, false);
        let entries: Vec<Monomial> = (0..=2)
            .map(|c| {
                let support: BTreeSet<usize> = (0..r)
                    .filter(|&j| base.colors()[j].contains(&c))
                    .collect();
                Monomial::from_support(&support, r)
            })
            .collect();
        let tuple = MonomialTuple::new(entries.clone());
        let value = match residue_monomials(&fan, &tuple) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("[{tag}] {e}"));
                continue;
            }
        };
        let perms: [([usize; 3], i32); 6] = [
            ([0, 1, 2], 1),
            ([0, 2, 1], -1),
            ([1, 0, 2], -1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([2, 1, 0], -1),
        ];
        for (perm, sign) in perms {
            let permuted =
                MonomialTuple::new(perm.iter().map(|&i| entries[i].clone()).collect());
            match residue_monomials(&fan, &permuted) {
                Ok(v) if v == sign * value => {}
                Ok(v) => failures.push(format!(
                    "[{tag}] permutation {perm:?} gave {v}, expected {}",
                    sign * value
                )),
                Err(e) => failures.push(format!("[{tag}] {e}")),
            }
        }
    }
    SuiteReport {
        name: "permutation_alternation".into(),
        instances: count,
        failures,
    }
}

/// Structure of the reduction: each maximal cone's linear functional is a
/// vertex of the divisor polytope, and the cone's image lies inside the
/// reduced-fan cone of that vertex.
pub fn suite_reduction_structure(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for tag in 0..count {
        let (fan, divisor, _) = gen_semiample_instance(&mut rng, 2, 8);
        if let Err(e) = reduction_structure_instance(&fan, &divisor) {
            failures.push(format!("[{tag}] {e}"));
        }
    }
    SuiteReport {
        name: "reduction_structure".into(),
        instances: count,
        failures,
    }
}

fn reduction_structure_instance(fan: &Fan, divisor: &TorusDivisor) -> Result<()> {
    let support = crate::semiample::cartier_data(fan, divisor)?;
    let red = semiample_fan(fan, divisor)?;
    let n = fan.dim();
    let m = red.quotient.target_dim;
    // The classical irrelevant ideal sits inside the reduced one.
    let b_alpha = b_alpha_generators(&red, fan);
    for g in irrelevant_generators(fan) {
        if !b_alpha.iter().any(|h| h.is_subset(&g)) {
            return Err(Error::InternalInconsistency(format!(
                "irrelevant generator {g:?} is outside the reduced ideal"
            )));
        }
    }
    // Vertices of the polytope embedded in quotient coordinates, parallel
    // to the polytope's vertex order.
    let section = red.quotient.section();
    let v0 = red.polytope.vertices()[0].clone();
    let embed = |u: &[Rat]| -> Vec<Rat> {
        let shifted: Vec<Rat> = u.iter().zip(v0.iter()).map(|(a, b)| a - b).collect();
        (0..m)
            .map(|j| {
                (0..n)
                    .map(|i| Rat::from(section.at(i, j).clone()) * &shifted[i])
                    .sum()
            })
            .collect()
    };
    for (ci, cone) in fan.max_cones().iter().enumerate() {
        let u = &support.per_cone[ci];
        let u_rat: Vec<Rat> = u.to_rat();
        if !red.polytope.vertices().contains(&u_rat) {
            return Err(Error::InternalInconsistency(format!(
                "cone functional {u:?} is not a polytope vertex"
            )));
        }
        if m == 0 {
            continue;
        }
        // The reduced-fan cone of this vertex: rays whose value is
        // minimized there, read off the embedded polytope's facets.
        let embedded_u = embed(&u_rat);
        let vertex_cone: BTreeSet<usize> = red
            .sigma_alpha
            .rays()
            .iter()
            .enumerate()
            .filter(|(_, ray)| {
                let at_u = dot_ri(&embedded_u, ray);
                red.polytope
                    .vertices()
                    .iter()
                    .all(|w| dot_ri(&embed(w), ray) >= at_u)
            })
            .map(|(i, _)| i)
            .collect();
        let image = red
            .pi_tilde
            .get(cone)
            .ok_or_else(|| Error::InternalInconsistency("cone missing from table".into()))?;
        if !image.is_subset(&vertex_cone) {
            return Err(Error::InternalInconsistency(format!(
                "image {image:?} not inside the vertex cone {vertex_cone:?}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Counterexample discovery: semiample degree triples on a plane fan that
// admit no compatible coloring of degree one.

/// The eight-direction catalog fan of the plane.
pub fn plane_catalog_rays() -> Vec<IntVector> {
    vec![
        IntVector::from_i64(&[1, 0]),
        IntVector::from_i64(&[1, 1]),
        IntVector::from_i64(&[0, 1]),
        IntVector::from_i64(&[-1, 1]),
        IntVector::from_i64(&[-1, 0]),
        IntVector::from_i64(&[-1, -1]),
        IntVector::from_i64(&[0, -1]),
        IntVector::from_i64(&[1, -1]),
    ]
}

/// The complete plane fan over a circularly ordered subset of the
/// catalog rays; `None` when some consecutive gap reaches a half plane.
pub fn plane_subfan(ray_positions: &[usize]) -> Option<Fan> {
    let catalog = plane_catalog_rays();
    let k = ray_positions.len();
    if k < 3 {
        return None;
    }
    let rays: Vec<IntVector> = ray_positions.iter().map(|&i| catalog[i].clone()).collect();
    let mut cones = Vec::with_capacity(k);
    for i in 0..k {
        let a = &rays[i];
        let b = &rays[(i + 1) % k];
        let det = &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
        if det <= BigInt::from(0) {
            return None;
        }
        cones.push(BTreeSet::from([i, (i + 1) % k]));
    }
    Fan::new(2, rays, cones).ok()
}

/// A frozen instance: the full fan and a triple of semiample divisors.
#[derive(Debug, Clone)]
pub struct DegreeTriple {
    pub fan: Fan,
    pub divisors: Vec<TorusDivisor>,
    /// Catalog positions of each factor subfan, for the record.
    pub factors: Vec<Vec<usize>>,
}

/// Pull an ample divisor of the subfan back to the big fan: the
/// coefficients are the support values of a lattice polytope whose normal
/// fan is the subfan, so the pullback is Cartier and semiample.
pub fn pullback_divisor(big: &Fan, subfan: &Fan) -> Result<TorusDivisor> {
    let witness = subfan
        .witness_polytope()?
        .ok_or(Error::NotProjective)?
        .clone();
    // Scale the witness to integer vertices; its support values then give
    // integer linear pieces on every cone.
    let mut scale = BigInt::from(1);
    for u in witness.vertices() {
        for c in u {
            scale = num_integer::Integer::lcm(&scale, c.denom());
        }
    }
    let coeffs = big
        .rays()
        .iter()
        .map(|v| {
            let m = witness
                .vertices()
                .iter()
                .map(|u| dot_ri(u, v))
                .min()
                .expect("vertices");
            -(m * Rat::from(scale.clone())).to_integer()
        })
        .collect();
    Ok(TorusDivisor { coeffs })
}

/// Circular fan over a subset of the catalog with consecutive cones, or
/// `None` when some consecutive gap reaches a half plane.
fn catalog_fan(catalog: &[IntVector], positions: &[usize]) -> Option<Fan> {
    let k = positions.len();
    if k < 3 {
        return None;
    }
    let rays: Vec<IntVector> = positions.iter().map(|&i| catalog[i].clone()).collect();
    let mut cones = Vec::with_capacity(k);
    for i in 0..k {
        let a = &rays[i];
        let b = &rays[(i + 1) % k];
        let det = &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
        if det <= BigInt::from(0) {
            return None;
        }
        cones.push(BTreeSet::from([i, (i + 1) % k]));
    }
    Fan::new(2, rays, cones).ok()
}

/// Sixteen-direction catalog of primitive plane vectors, circularly ordered.
pub fn wide_catalog_rays() -> Vec<IntVector> {
    [
        (1, 0),
        (2, 1),
        (1, 1),
        (1, 2),
        (0, 1),
        (-1, 2),
        (-1, 1),
        (-2, 1),
        (-1, 0),
        (-2, -1),
        (-1, -1),
        (-1, -2),
        (0, -1),
        (1, -2),
        (1, -1),
        (2, -1),
    ]
    .iter()
    .map(|&(x, y)| IntVector::from_i64(&[x, y]))
    .collect()
}

/// Winding-number model of the degree-one coloring search: a coloring is
/// compatible iff every closed arc of every factor fan sees at most two
/// colors, and its degree is the winding of the cyclic color word. Used
/// to prune the triple enumeration; every reported instance is verified
/// with the full search.
fn model_admits_degree_one(union_len: usize, window_masks: &[u16]) -> bool {
    fn winding(colors: &[u8]) -> i32 {
        let r = colors.len();
        let mut t = 0i32;
        for i in 0..r {
            t += match (3 + colors[(i + 1) % r] - colors[i]) % 3 {
                0 => 0,
                1 => 1,
                _ => -1,
            } as i32;
        }
        t / 3
    }
    fn dfs(j: usize, r: usize, colors: &mut [u8], masks: &[u16], seen: &mut [u8]) -> bool {
        if j == r {
            return winding(colors) == 1;
        }
        'next: for c in 0..3u8 {
            colors[j] = c;
            let bit = 1u16 << j;
            let mut touched: Vec<(usize, u8)> = Vec::new();
            for (wi, &m) in masks.iter().enumerate() {
                if m & bit == 0 {
                    continue;
                }
                let old = seen[wi];
                let new = old | (1 << c);
                if new == 0b111 {
                    for (twi, told) in touched {
                        seen[twi] = told;
                    }
                    continue 'next;
                }
                if new != old {
                    touched.push((wi, old));
                    seen[wi] = new;
                }
            }
            if dfs(j + 1, r, colors, masks, seen) {
                return true;
            }
            for (twi, told) in touched {
                seen[twi] = told;
            }
        }
        false
    }
    let mut colors = vec![0u8; union_len];
    let mut seen = vec![0u8; window_masks.len()];
    dfs(0, union_len, &mut colors, window_masks, &mut seen)
}

fn arc_window_masks(union: &[usize], factor: &[usize]) -> Vec<u16> {
    let r = union.len();
    let pos: Vec<usize> = factor
        .iter()
        .map(|x| union.iter().position(|u| u == x).expect("factor ray in union"))
        .collect();
    let k = pos.len();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let a = pos[i];
        let b = pos[(i + 1) % k];
        let mut mask: u16 = 1 << a;
        let mut p = a;
        while p != b {
            p = (p + 1) % r;
            mask |= 1 << p;
        }
        out.push(mask);
    }
    out
}

/// Search triples of triangle subfans of the catalog whose union has at
/// most `max_union_rays` rays for one admitting no compatible degree-one
/// coloring. A winding-number model prunes the enumeration; each
/// candidate is confirmed by the full exhaustive search, whose statistics
/// are returned. Deterministic order, first hit wins.
pub fn discover_incompatible_triple(
    max_union_rays: usize,
) -> Result<Option<(DegreeTriple, crate::residue::SearchStats)>> {
    let catalog = wide_catalog_rays();
    let m = catalog.len();
    let mut triangles: Vec<Vec<usize>> = Vec::new();
    for subset in crate::polytope::subsets_between(m, 3, 3) {
        if catalog_fan(&catalog, &subset).is_some() {
            triangles.push(subset);
        }
    }
    for a in 0..triangles.len() {
        for b in a + 1..triangles.len() {
            let mut ab: Vec<usize> = triangles[a]
                .iter()
                .chain(&triangles[b])
                .copied()
                .collect();
            ab.sort();
            ab.dedup();
            if ab.len() > max_union_rays {
                continue;
            }
            for c in b + 1..triangles.len() {
                let mut union = ab.clone();
                union.extend(&triangles[c]);
                union.sort();
                union.dedup();
                if union.len() > max_union_rays {
                    continue;
                }
                let mut masks = arc_window_masks(&union, &triangles[a]);
                masks.extend(arc_window_masks(&union, &triangles[b]));
                masks.extend(arc_window_masks(&union, &triangles[c]));
                if model_admits_degree_one(union.len(), &masks) {
                    continue;
                }
                // The model found no degree-one coloring; confirm with
                // the full machinery.
                let big = catalog_fan(&catalog, &union).expect("union of valid fans is valid");
                let factors = [&triangles[a], &triangles[b], &triangles[c]];
                let divisors = factors
                    .iter()
                    .map(|pos| {
                        let sub = catalog_fan(&catalog, pos).expect("validated");
                        pullback_divisor(&big, &sub)
                    })
                    .collect::<Result<Vec<_>>>()?;
                match crate::residue::search_degree_one(&big, &divisors)? {
                    SearchOutcome::Found(_) => continue,
                    SearchOutcome::Exhausted(stats) => {
                        return Ok(Some((
                            DegreeTriple {
                                fan: big,
                                divisors,
                                factors: factors.iter().map(|p| p.to_vec()).collect(),
                            },
                            stats,
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Run every suite at the given scale, optionally restricted to one
/// dimension and spread over worker threads. Each suite owns its seed,
/// so the report is identical regardless of the worker count.
pub fn run_all(seed: u64, count: usize, dim: Option<usize>, jobs: usize) -> Vec<SuiteReport> {
    let dims_full: Vec<usize> = match dim {
        Some(n) => vec![n],
        None => vec![2, 3],
    };
    let dims_plane: Vec<usize> = match dim {
        Some(n) => vec![n],
        None => vec![2],
    };
    type Task = Box<dyn FnOnce() -> SuiteReport + Send>;
    let mut tasks: Vec<Task> = Vec::new();
    {
        let d = dims_full.clone();
        tasks.push(Box::new(move || suite_route_agreement(seed, count, &d)));
    }
    {
        let d = dims_full.clone();
        tasks.push(Box::new(move || {
            suite_alternation(seed ^ 1, count / 2 + 1, &d)
        }));
    }
    {
        let d = dims_plane.clone();
        tasks.push(Box::new(move || {
            suite_target_flag_independence(seed ^ 2, count / 4 + 1, &d)
        }));
    }
    {
        let d = dims_full.clone();
        tasks.push(Box::new(move || suite_duality(seed ^ 3, count / 2 + 1, &d)));
    }
    tasks.push(Box::new(move || suite_lambda_factor(seed ^ 4, 2)));
    tasks.push(Box::new(move || {
        suite_refinement_invariance(seed ^ 5, count / 2 + 1)
    }));
    tasks.push(Box::new(move || {
        suite_monomial_equivalence(seed ^ 6, count / 2 + 1)
    }));
    {
        let d = dims_full.clone();
        tasks.push(Box::new(move || {
            suite_ample_specialization(seed ^ 7, count / 2 + 1, &d)
        }));
    }
    {
        let d = dims_plane.clone();
        tasks.push(Box::new(move || {
            suite_divisibility_reduction(seed ^ 8, count / 4 + 1, &d)
        }));
    }
    {
        let d = dims_full;
        tasks.push(Box::new(move || {
            suite_reduction_consistency(seed ^ 9, count / 2 + 1, &d)
        }));
    }
    tasks.push(Box::new(move || suite_class_equivalence(seed ^ 10, count)));
    tasks.push(Box::new(move || suite_vertex_support(seed ^ 11, count / 2 + 1)));
    tasks.push(Box::new(move || {
        suite_reduction_structure(seed ^ 12, count / 2 + 1)
    }));
    tasks.push(Box::new(move || {
        suite_primitive_decomposition(seed ^ 13, count / 2 + 1)
    }));
    tasks.push(Box::new(move || {
        suite_permutation_alternation(seed ^ 14, count / 2 + 1)
    }));
    run_tasks(tasks, jobs.max(1))
}

fn run_tasks(
    tasks: Vec<Box<dyn FnOnce() -> SuiteReport + Send>>,
    jobs: usize,
) -> Vec<SuiteReport> {
    if jobs <= 1 {
        return tasks.into_iter().map(|t| t()).collect();
    }
    let mut slots: Vec<Option<SuiteReport>> = (0..tasks.len()).map(|_| None).collect();
    let queue: std::sync::Mutex<Vec<(usize, Box<dyn FnOnce() -> SuiteReport + Send>)>> =
        std::sync::Mutex::new(tasks.into_iter().enumerate().collect());
    let results: std::sync::Mutex<Vec<(usize, SuiteReport)>> = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let next = queue.lock().expect("queue lock").pop();
                match next {
                    Some((idx, task)) => {
                        let report = task();
                        results.lock().expect("results lock").push((idx, report));
                    }
                    None => break,
                }
            });
        }
    });
    for (idx, report) in results.into_inner().expect("results") {
        slots[idx] = Some(report);
    }
    slots.into_iter().map(|s| s.expect("every task ran")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_produce_valid_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 3] {
            let p = gen_polytope(&mut rng, n, 10);
            assert!(p.is_full_dimensional());
            let nf = p.normal_fan().unwrap();
            let flags = nf.fan.validate().unwrap();
            assert!(flags.complete && flags.projective);
            let c = gen_simplicial_coloring(&mut rng, &nf.fan, true);
            assert!(matches!(
                is_simplicial(&nf.fan, &c).unwrap(),
                SimplicialCheck::Simplicial
            ));
        }
    }

    #[test]
    fn semiample_generator_yields_semiample() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let (fan, d, _) = gen_semiample_instance(&mut rng, 2, 8);
            assert!(crate::semiample::is_semiample(&fan, &d).unwrap());
        }
    }

    #[test]
    fn plane_subfan_rejects_wide_gaps() {
        assert!(plane_subfan(&[0, 1, 2]).is_none()); // gap from e2 back to e1 is 3/4 turn
        assert!(plane_subfan(&[0, 2, 5]).is_some());
        assert!(plane_subfan(&[0, 2, 4, 6]).is_some());
    }

    #[test]
    fn smoke_suites_pass_small() {
        let dims = [2usize];
        let r = suite_route_agreement(42, 4, &dims);
        assert!(r.passed(), "{:?}", r.failures);
        let a = suite_alternation(42, 3, &dims);
        assert!(a.passed(), "{:?}", a.failures);
    }
}

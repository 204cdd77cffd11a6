//! Acceptance gate: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p toric --test acceptance -- --nocapture` to see
//! the per-criterion report.

use std::collections::BTreeSet;
use std::time::Instant;
use toric::coloring::Coloring;
use toric::degree::cdeg;
use toric::exact::IntVector;
use toric::fan::{geometric_eq, Fan};
use toric::residue::{residue_monomials, search_degree_one, MonomialTuple, SearchOutcome};
use toric::residue::Monomial;
use toric::semiample::TorusDivisor;
use toric::suite::{
    discover_incompatible_triple, p2_fan, suite_alternation, suite_ample_specialization,
    suite_divisibility_reduction, suite_duality, suite_lambda_factor,
    suite_monomial_equivalence, suite_refinement_invariance, suite_route_agreement,
    SuiteReport,
};

const SEED: u64 = 20_240_901;

fn assert_suite(criterion: &str, report: &SuiteReport) {
    assert!(
        report.passed(),
        "{criterion}: {} failures out of {} instances: {:#?}",
        report.failures.len(),
        report.instances,
        report.failures
    );
}

fn pass(criterion: u32, name: &str, detail: &str) {
    println!("criterion {criterion} ({name}): PASS {detail}");
}

/// The fan of the standard n-simplex: rays are the basis vectors and
/// their negated sum; the identity coloring paints ray e_i with color i
/// and the antidiagonal ray with color 0.
fn simplex_fan_with_identity_coloring(n: usize) -> (Fan, Coloring) {
    let mut rays: Vec<IntVector> = Vec::with_capacity(n + 1);
    rays.push(IntVector::from_i64(&vec![-1i64; n]));
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        rays.push(IntVector::from_i64(&v));
    }
    let max_cones: Vec<BTreeSet<usize>> = (0..=n)
        .map(|skip| (0..=n).filter(|&j| j != skip).collect())
        .collect();
    let fan = Fan::new(n, rays, max_cones).expect("simplex fan");
    let colors: Vec<usize> = (0..=n).collect();
    let coloring = Coloring::disjoint(colors, n).expect("coloring");
    (fan, coloring)
}

#[test]
fn criterion_01_calibration() {
    for n in 1..=3usize {
        let (fan, coloring) = simplex_fan_with_identity_coloring(n);
        assert_eq!(
            cdeg(&fan, &coloring).unwrap(),
            1,
            "identity coloring of the {n}-simplex fan"
        );
    }
    let fan = p2_fan();
    let tuple = MonomialTuple::new(vec![
        Monomial::new(vec![1, 0, 0]),
        Monomial::new(vec![0, 1, 0]),
        Monomial::new(vec![0, 0, 1]),
    ]);
    assert_eq!(residue_monomials(&fan, &tuple).unwrap(), 1);
    pass(1, "calibration", "degree +1 for n=1,2,3 and residue +1");
}

#[test]
fn criterion_02_three_route_agreement() {
    let t0 = Instant::now();
    let report = suite_route_agreement(SEED, 200, &[2, 3]);
    let elapsed = t0.elapsed();
    assert_eq!(report.instances, 200);
    assert_suite("three-route agreement", &report);
    assert!(
        elapsed.as_secs() < 300,
        "route agreement suite took {elapsed:?}, budget is five minutes"
    );
    pass(
        2,
        "three_route_agreement",
        &format!("200 instances in {elapsed:?}"),
    );
}

#[test]
fn criterion_03_alternation() {
    let report = suite_alternation(SEED, 200, &[2, 3]);
    assert_eq!(report.instances, 200);
    assert_suite("alternation", &report);
    pass(3, "alternation", "every transposition negates the degree");
}

#[test]
fn criterion_04_duality() {
    let report = suite_duality(SEED, 100, &[2, 3]);
    assert_eq!(report.instances, 100);
    assert_suite("duality", &report);
    let lambda = suite_lambda_factor(SEED, 4);
    assert_suite("lambda factor", &lambda);
    pass(
        4,
        "duality",
        &format!(
            "100 dual-degree instances; lambda checked over {} flags",
            lambda.instances
        ),
    );
}

#[test]
fn criterion_05_refinement_invariance() {
    let report = suite_refinement_invariance(SEED, 50);
    assert_eq!(report.instances, 50);
    assert_suite("refinement invariance", &report);
    pass(5, "refinement_invariance", "50 simplicialization pairs");
}

#[test]
fn criterion_06_membership_equivalence() {
    let report = suite_monomial_equivalence(SEED, 100);
    assert_eq!(report.instances, 100);
    assert_suite("membership equivalence", &report);
    pass(
        6,
        "membership_equivalence",
        "four routes agree on 100 instances, zero inconsistencies",
    );
}

#[test]
fn criterion_07_ample_specialization() {
    let report = suite_ample_specialization(SEED, 50, &[2, 3]);
    assert_eq!(report.instances, 50);
    assert_suite("ample specialization", &report);
    pass(
        7,
        "ample_specialization",
        "identity reduction and classical irrelevant ideal on 50 fans",
    );
}

#[test]
fn criterion_08_divisibility_reduction() {
    let report = suite_divisibility_reduction(SEED, 50, &[2]);
    assert_eq!(
        report.instances, 50,
        "the generator must reach fifty admissible tuples"
    );
    assert_suite("divisibility reduction", &report);
    pass(
        8,
        "divisibility_reduction",
        "all admissible sub-tuples agree on 50 tuples",
    );
}

#[test]
fn criterion_09_counterexample_reproduction() {
    let t0 = Instant::now();
    let (triple, stats) = discover_incompatible_triple(8)
        .expect("discovery runs")
        .expect("the catalog contains an incompatible triple");
    // The discovery is deterministic; its first hit is the frozen fixture.
    let frozen_fan = Fan::new(
        2,
        vec![
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[1, 1]),
            IntVector::from_i64(&[0, 1]),
            IntVector::from_i64(&[-2, -1]),
            IntVector::from_i64(&[-1, -2]),
        ],
        vec![
            BTreeSet::from([0, 1]),
            BTreeSet::from([1, 2]),
            BTreeSet::from([2, 3]),
            BTreeSet::from([3, 4]),
            BTreeSet::from([0, 4]),
        ],
    )
    .unwrap();
    let frozen_divisors = vec![
        TorusDivisor::from_i64(&[1, 0, 0, 0, 3]),
        TorusDivisor::from_i64(&[1, 1, 0, 0, 3]),
        TorusDivisor::from_i64(&[2, 1, 0, 0, 0]),
    ];
    assert!(
        geometric_eq(&triple.fan, &frozen_fan),
        "discovered fan drifted from the frozen fixture"
    );
    assert_eq!(
        triple.divisors, frozen_divisors,
        "discovered divisors drifted from the frozen fixture"
    );
    assert!(stats.leaves_checked > 0);
    // Independent re-run on the frozen instance.
    match search_degree_one(&frozen_fan, &frozen_divisors).unwrap() {
        SearchOutcome::Exhausted(s) => {
            assert!(s.candidates_examined > 0);
        }
        SearchOutcome::Found(c) => panic!("frozen instance admitted a coloring: {c:?}"),
    }
    // The shipped fixture files must encode the same instance.
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let fan_doc: toric::io::FanDoc = serde_json::from_str(
        &std::fs::read_to_string(dir.join("counterexample_fan.json")).unwrap(),
    )
    .unwrap();
    assert!(geometric_eq(&fan_doc.to_fan().unwrap(), &frozen_fan));
    for (i, d) in frozen_divisors.iter().enumerate() {
        let doc: toric::io::DivisorDoc = serde_json::from_str(
            &std::fs::read_to_string(dir.join(format!("counterexample_divisor_{i}.json")))
                .unwrap(),
        )
        .unwrap();
        assert_eq!(&doc.to_divisor(), d);
    }
    pass(
        9,
        "counterexample_reproduction",
        &format!(
            "rediscovered the frozen 5-ray instance in {:?} ({} leaves exhausted)",
            t0.elapsed(),
            stats.leaves_checked
        ),
    );
}

#[test]
fn criterion_10_worked_residues() {
    let p1p1 = toric::suite::p1p1_fan();
    let base = [
        Monomial::new(vec![1, 0, 1, 0]),
        Monomial::new(vec![0, 1, 0, 0]),
        Monomial::new(vec![0, 0, 0, 1]),
    ];
    // The base tuple and every permutation have residue zero.
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in perms {
        let tuple = MonomialTuple::new(perm.iter().map(|&i| base[i].clone()).collect());
        assert_eq!(
            residue_monomials(&p1p1, &tuple).unwrap(),
            0,
            "permutation {perm:?}"
        );
    }
    let p2 = p2_fan();
    let identity = MonomialTuple::new(vec![
        Monomial::new(vec![1, 0, 0]),
        Monomial::new(vec![0, 1, 0]),
        Monomial::new(vec![0, 0, 1]),
    ]);
    let swapped = MonomialTuple::new(vec![
        Monomial::new(vec![0, 1, 0]),
        Monomial::new(vec![1, 0, 0]),
        Monomial::new(vec![0, 0, 1]),
    ]);
    assert_eq!(residue_monomials(&p2, &identity).unwrap(), 1);
    assert_eq!(residue_monomials(&p2, &swapped).unwrap(), -1);
    pass(
        10,
        "worked_residues",
        "product fan zero for all permutations; plane pair +1/-1",
    );
}

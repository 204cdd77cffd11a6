//! Toric residues of monomial tuples, monomial-ideal membership for
//! semiample degrees, section decomposition, and the residue-one search.
//!
//! The residue of a monomial tuple whose product is divisible by the
//! product of the variables equals the combinatorial degree of the
//! coloring the tuple induces on the fan. Membership of a semiample
//! degree in a radical monomial ideal is decided on the reduced fan and
//! cross-checked four ways; any disagreement is a hard error.

use crate::coloring::{is_simplicial, Coloring, SimplicialCheck};
use crate::degree::{cdeg, cdeg_cones};
use crate::error::{Error, Result};
use crate::exact::IntVector;
use crate::fan::Fan;
use crate::semiample::{
    b_alpha_generators, class_eq, divisor_polytope, is_semiample, semiample_fan,
    TorusDivisor,
};
use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::BTreeSet;
use std::fmt;

/// A monomial in the homogeneous coordinate ring, one exponent per ray.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u64>,
}

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial { exponents }
    }

    pub fn one(rays: usize) -> Self {
        Monomial {
            exponents: vec![0; rays],
        }
    }

    /// Squarefree monomial with the given variable support.
    pub fn from_support(support: &BTreeSet<usize>, rays: usize) -> Self {
        let mut exponents = vec![0; rays];
        for &j in support {
            exponents[j] = 1;
        }
        Monomial { exponents }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.len() == other.exponents.len()
            && self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact quotient; the divisor must divide.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a.checked_sub(*b).expect("quotient of a non-divisor"))
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(j, &e)| {
                if e == 1 {
                    format!("x{}", j + 1)
                } else {
                    format!("x{}^{}", j + 1, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A tuple of n+1 monomials defining a coloring of the fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTuple {
    pub entries: Vec<Monomial>,
}

impl MonomialTuple {
    pub fn new(entries: Vec<Monomial>) -> Self {
        MonomialTuple { entries }
    }

    pub fn product(&self) -> Monomial {
        let rays = self.entries[0].exponents.len();
        self.entries
            .iter()
            .fold(Monomial::one(rays), |acc, m| acc.mul(m))
    }
}

/// A radical monomial ideal given by its minimal squarefree generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Monomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::MalformedIdeal("no generators".into()));
        }
        for g in &gens {
            if !g.is_squarefree() {
                return Err(Error::MalformedIdeal(format!(
                    "generator {g} is not squarefree"
                )));
            }
        }
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                if i != j && a.divides(b) {
                    return Err(Error::MalformedIdeal(format!(
                        "generator {a} divides generator {b}"
                    )));
                }
            }
        }
        Ok(MonomialIdeal { gens })
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Index of some generator dividing the monomial, when one exists.
    pub fn dividing_gen(&self, m: &Monomial) -> Option<usize> {
        self.gens.iter().position(|g| g.divides(m))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.dividing_gen(m).is_some()
    }
}

/// Monomial basis of the sections of a divisor: the lattice points of its
/// polytope with their homogenizations.
#[derive(Debug, Clone)]
pub struct SectionSupport {
    pub points: Vec<IntVector>,
    pub monomials: Vec<Monomial>,
}

/// The coloring induced by a tuple: a ray carries color i exactly when
/// the variable divides the i-th entry.
pub fn coloring_of_tuple(fan: &Fan, tuple: &MonomialTuple) -> Result<Coloring> {
    let n = fan.dim();
    if tuple.entries.len() != n + 1 {
        return Err(Error::MalformedInput(format!(
            "tuple has {} entries, expected {}",
            tuple.entries.len(),
            n + 1
        )));
    }
    for m in &tuple.entries {
        if m.exponents.len() != fan.num_rays() {
            return Err(Error::MalformedInput(
                "monomial width does not match ray count".into(),
            ));
        }
    }
    let mut colors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); fan.num_rays()];
    for (i, m) in tuple.entries.iter().enumerate() {
        for j in m.support() {
            colors[j].insert(i);
        }
    }
    if let Some(j) = colors.iter().position(|s| s.is_empty()) {
        return Err(Error::UncoloredRay { ray: j });
    }
    Coloring::new(colors, n)
}

/// The toric residue of a monomial tuple, via the combinatorial degree.
///
/// When the product of the entries equals the product of the variables
/// this is the residue of 1; for a strictly divisible product it is the
/// residue of the quotient monomial, which has the critical degree.
pub fn residue_monomials(fan: &Fan, tuple: &MonomialTuple) -> Result<i32> {
    let product = {
        if tuple.entries.is_empty() || tuple.entries[0].exponents.len() != fan.num_rays() {
            return Err(Error::MalformedInput(
                "tuple entries do not match the fan".into(),
            ));
        }
        tuple.product()
    };
    if product.exponents.iter().any(|&e| e == 0) {
        return Err(Error::NotDivisible);
    }
    let coloring = coloring_of_tuple(fan, tuple)?;
    if let SimplicialCheck::Violating { cone, witness } = is_simplicial(fan, &coloring)? {
        return Err(Error::CommonZero {
            cone_rays: cone.into_iter().collect(),
            witness,
        });
    }
    cdeg(fan, &coloring)
}

/// The divisor class of a monomial.
pub fn degree_of(fan: &Fan, m: &Monomial) -> Result<crate::semiample::DegreeClass> {
    if m.exponents.len() != fan.num_rays() {
        return Err(Error::MalformedInput(
            "monomial width does not match ray count".into(),
        ));
    }
    Ok(crate::semiample::DegreeClass {
        representative: TorusDivisor {
            coeffs: m.exponents.iter().map(|&e| BigInt::from(e)).collect(),
        },
    })
}

/// Lattice points of the divisor polytope with their homogenizations
/// `prod_j x_j^{<u, v_j> + a_j}`.
pub fn sections_basis(fan: &Fan, divisor: &TorusDivisor) -> Result<SectionSupport> {
    crate::semiample::cartier_data(fan, divisor)?;
    let polytope = divisor_polytope(fan, divisor)?;
    let points = polytope.lattice_points();
    let monomials = points
        .iter()
        .map(|u| homogenize(fan, divisor, u))
        .collect::<Result<Vec<_>>>()?;
    Ok(SectionSupport { points, monomials })
}

fn homogenize(fan: &Fan, divisor: &TorusDivisor, u: &IntVector) -> Result<Monomial> {
    let exps = fan
        .rays()
        .iter()
        .zip(divisor.coeffs.iter())
        .map(|(v, a)| {
            let e = u.dot(v) + a;
            if e.is_negative() {
                return Err(Error::InternalInconsistency(
                    "section exponent is negative".into(),
                ));
            }
            u64::try_from(&e).map_err(|_| {
                Error::MalformedInput("section exponent does not fit in 64 bits".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Monomial::new(exps))
}

/// Certificate bundle for an ideal-membership decision.
#[derive(Debug, Clone)]
pub struct MembershipCertificates {
    /// Each vertex of the divisor polytope with its homogenization and a
    /// dividing generator index, when one exists.
    pub vertex_sections: Vec<(IntVector, Monomial, Option<usize>)>,
    /// Each reduced-irrelevant-ideal generator with a dividing generator.
    pub b_alpha: Vec<(Monomial, Option<usize>)>,
    /// On failure: a maximal cone of the reduced fan and one ray per
    /// generator whose image it contains.
    pub witness: Option<(BTreeSet<usize>, Vec<(usize, usize)>)>,
}

#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub member: bool,
    pub condition_sections: bool,
    pub condition_b_alpha: bool,
    pub condition_cones: bool,
    pub condition_orbits: bool,
    pub certificates: MembershipCertificates,
}

/// Does every section of the semiample degree lie in the ideal?
///
/// Decided by the colored-cone condition on the reduced fan and
/// cross-checked against the section basis, the reduced irrelevant
/// ideal, and the orbit-closure route; the four verdicts must agree.
pub fn ideal_member_semiample(
    fan: &Fan,
    ideal: &MonomialIdeal,
    divisor: &TorusDivisor,
) -> Result<MembershipReport> {
    if !is_semiample(fan, divisor)? {
        return Err(Error::NotSemiample);
    }
    let red = semiample_fan(fan, divisor)?;
    let m = ideal.gens().len();

    // Route one: every monomial section belongs to the ideal.
    let sections = sections_basis(fan, divisor)?;
    let condition_sections = sections.monomials.iter().all(|s| ideal.contains(s));
    let vertex_set: BTreeSet<Vec<BigInt>> = red
        .polytope
        .vertices()
        .iter()
        .map(|v| v.iter().map(|c| c.to_integer()).collect())
        .collect();
    let vertex_sections: Vec<(IntVector, Monomial, Option<usize>)> = sections
        .points
        .iter()
        .zip(sections.monomials.iter())
        .filter(|(u, _)| vertex_set.contains(&u.0))
        .map(|(u, s)| (u.clone(), s.clone(), ideal.dividing_gen(s)))
        .collect();

    // Route two: the reduced irrelevant ideal is contained in the ideal.
    let b_alpha: Vec<(Monomial, Option<usize>)> = b_alpha_generators(&red, fan)
        .into_iter()
        .map(|support| {
            let g = Monomial::from_support(&support, fan.num_rays());
            let div = ideal.dividing_gen(&g);
            (g, div)
        })
        .collect();
    let condition_b_alpha = b_alpha.iter().all(|(_, d)| d.is_some());

    // Route three: no maximal cone of the reduced fan contains ray images
    // of all generators' colors, evaluated by fresh vector membership.
    let images: Vec<IntVector> = (0..fan.num_rays())
        .map(|j| red.quotient.apply(&fan.rays()[j]))
        .collect();
    let mut witness = None;
    'cones: for cone in red.sigma_alpha.max_cones() {
        let mut chosen = Vec::with_capacity(m);
        for (i, g) in ideal.gens().iter().enumerate() {
            let hit = g.support().into_iter().find(|&j| {
                red.sigma_alpha
                    .smallest_containing_cone(std::slice::from_ref(&images[j]))
                    .ok()
                    .flatten()
                    .is_some_and(|c| c.is_subset(cone))
            });
            match hit {
                Some(j) => chosen.push((i, j)),
                None => continue 'cones,
            }
        }
        witness = Some((cone.clone(), chosen));
        break;
    }
    let condition_cones = witness.is_none();

    // Route four: orbit closures through the tabulated cone map.
    let mut orbit_hit = false;
    for cone in red.sigma_alpha.max_cones() {
        let all_colors_land = ideal.gens().iter().all(|g| {
            g.support()
                .into_iter()
                .any(|j| red.ray_image(j).is_subset(cone))
        });
        if all_colors_land {
            orbit_hit = true;
            break;
        }
    }
    let condition_orbits = !orbit_hit;

    let verdicts = [
        condition_sections,
        condition_b_alpha,
        condition_cones,
        condition_orbits,
    ];
    if verdicts.iter().any(|&v| v != condition_cones) {
        return Err(Error::InternalInconsistency(format!(
            "membership routes disagree: sections={condition_sections} \
             b_alpha={condition_b_alpha} cones={condition_cones} orbits={condition_orbits}"
        )));
    }

    Ok(MembershipReport {
        member: condition_cones,
        condition_sections,
        condition_b_alpha,
        condition_cones,
        condition_orbits,
        certificates: MembershipCertificates {
            vertex_sections,
            b_alpha,
            witness,
        },
    })
}

/// A formal coefficient symbol: the `point`-th monomial of row `row`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSymbol {
    pub row: usize,
    pub point: IntVector,
}

/// Entry of the decomposition matrix: a formal sum of quotient monomials.
pub type FormalSum = Vec<(CoeffSymbol, Monomial)>;

/// Decompose the sections of each degree over the tuple entries: every
/// monomial is assigned to the smallest entry dividing it, and the row
/// identities are re-verified symbolically.
pub fn decompose_sections(
    supports: &[SectionSupport],
    tuple: &MonomialTuple,
) -> Result<Vec<Vec<FormalSum>>> {
    let k = tuple.entries.len();
    let mut matrix: Vec<Vec<FormalSum>> = vec![vec![Vec::new(); k]; supports.len()];
    for (i, support) in supports.iter().enumerate() {
        for (u, mono) in support.points.iter().zip(support.monomials.iter()) {
            let j = tuple
                .entries
                .iter()
                .position(|z| z.divides(mono))
                .ok_or_else(|| Error::NotDecomposable {
                    row: i,
                    point: u.0
                        .iter()
                        .map(|c| i64::try_from(c).unwrap_or(i64::MAX))
                        .collect(),
                })?;
            matrix[i][j].push((
                CoeffSymbol {
                    row: i,
                    point: u.clone(),
                },
                mono.div(&tuple.entries[j]),
            ));
        }
        // Row identity: sum over j of entry * z_j reproduces the row.
        let mut reconstructed: Vec<Monomial> = Vec::new();
        for (j, entry) in matrix[i].iter().enumerate() {
            for (_, q) in entry {
                reconstructed.push(q.mul(&tuple.entries[j]));
            }
        }
        reconstructed.sort();
        let mut original = support.monomials.clone();
        original.sort();
        if reconstructed != original {
            return Err(Error::InternalInconsistency(
                "section decomposition does not reproduce the row".into(),
            ));
        }
    }
    Ok(matrix)
}

/// Statistics of an exhausted search, certifying nonexistence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    pub candidates_examined: u64,
    pub nodes_pruned: u64,
    pub leaves_checked: u64,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Coloring),
    Exhausted(SearchStats),
}

/// Search for the lexicographically smallest disjoint simplicial coloring
/// compatible with all given semiample degrees and of degree +1.
///
/// Depth-first over rays in index order and colors in ascending order,
/// pruning partial assignments that already violate simpliciality or
/// compatibility; this guarantees the reported solution is the smallest
/// and the exhaustion statistics are reproducible.
pub fn search_degree_one(fan: &Fan, degrees: &[TorusDivisor]) -> Result<SearchOutcome> {
    let n = fan.dim();
    if degrees.len() != n + 1 {
        return Err(Error::MalformedInput(format!(
            "expected {} degrees, got {}",
            n + 1,
            degrees.len()
        )));
    }
    let mut reductions = Vec::with_capacity(degrees.len());
    for d in degrees {
        reductions.push(semiample_fan(fan, d)?);
    }
    let r = fan.num_rays();
    let palette = n + 1;

    // For each degree and each maximal reduced cone, the rays whose image
    // lands in that cone; a coloring is compatible when no such ray set
    // sees every color.
    let mut constraint_masks: Vec<Vec<bool>> = Vec::new();
    for red in &reductions {
        for cone in red.sigma_alpha.max_cones() {
            let mask: Vec<bool> = (0..r).map(|j| red.ray_image(j).is_subset(cone)).collect();
            constraint_masks.push(mask);
        }
    }
    // Simpliciality is the same constraint against the fan's own cones.
    for cone in fan.max_cones() {
        constraint_masks.push((0..r).map(|j| cone.contains(&j)).collect());
    }

    let fine = if fan.validate()?.simplicial {
        None
    } else {
        Some(fan.simplicialize()?.0)
    };
    let degree_fan = fine.as_ref().unwrap_or(fan);

    let mut stats = SearchStats {
        candidates_examined: 0,
        nodes_pruned: 0,
        leaves_checked: 0,
    };
    let mut assignment: Vec<usize> = Vec::with_capacity(r);
    let outcome = dfs(
        fan,
        degree_fan,
        &constraint_masks,
        palette,
        r,
        &mut assignment,
        &mut stats,
    )?;
    match outcome {
        Some(coloring) => {
            // Independent re-check: compatibility through the ideal route
            // and the degree through the cone count.
            let gens: Vec<Monomial> = (0..palette)
                .map(|c| {
                    let support: BTreeSet<usize> = (0..r)
                        .filter(|&j| coloring.color_of(j) == c)
                        .collect();
                    Monomial::from_support(&support, r)
                })
                .collect();
            let ideal = MonomialIdeal::new(gens)?;
            for d in degrees {
                let report = ideal_member_semiample(fan, &ideal, d)?;
                if !report.member {
                    return Err(Error::InternalInconsistency(
                        "search result fails the independent compatibility check".into(),
                    ));
                }
            }
            if cdeg(fan, &coloring)? != 1 {
                return Err(Error::InternalInconsistency(
                    "search result fails the independent degree check".into(),
                ));
            }
            Ok(SearchOutcome::Found(coloring))
        }
        None => Ok(SearchOutcome::Exhausted(stats)),
    }
}

fn dfs(
    fan: &Fan,
    degree_fan: &Fan,
    masks: &[Vec<bool>],
    palette: usize,
    r: usize,
    assignment: &mut Vec<usize>,
    stats: &mut SearchStats,
) -> Result<Option<Coloring>> {
    if assignment.len() == r {
        stats.leaves_checked += 1;
        let coloring = Coloring::disjoint(assignment.clone(), palette - 1)?;
        if cdeg_cones(degree_fan, &coloring, 0)? == 1 {
            return Ok(Some(coloring));
        }
        return Ok(None);
    }
    let j = assignment.len();
    'colors: for c in 0..palette {
        stats.candidates_examined += 1;
        assignment.push(c);
        // Prune when any constraint set already sees the full palette.
        for mask in masks {
            if !mask[j] {
                continue;
            }
            let mut seen = vec![false; palette];
            for (jj, &cc) in assignment.iter().enumerate() {
                if mask[jj] {
                    seen[cc] = true;
                }
            }
            if seen.iter().all(|&s| s) {
                stats.nodes_pruned += 1;
                assignment.pop();
                continue 'colors;
            }
        }
        if let Some(found) = dfs(fan, degree_fan, masks, palette, r, assignment, stats)? {
            return Ok(Some(found));
        }
        assignment.pop();
    }
    Ok(None)
}

/// Verdict agreement helper used by the equivalence suites: the class of
/// a monomial equals the class of another iff their divisors are
/// linearly equivalent.
pub fn monomial_class_eq(fan: &Fan, a: &Monomial, b: &Monomial) -> Result<bool> {
    let da = degree_of(fan, a)?.representative;
    let db = degree_of(fan, b)?.representative;
    class_eq(fan, &da, &db)
}

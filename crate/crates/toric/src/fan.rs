//! Polyhedral fans: validation, simplicialization, refinement checking.
//!
//! Fans are stored by primitive ray generators plus maximal cones (ray
//! index sets); lower faces and facet representations are derived on
//! demand and cached. Projectivity is decided constructively: we solve for
//! a strictly convex piecewise-linear support function by exact rational
//! LP, and the witness doubles as a polytope with the given normal fan.

use crate::error::{Error, Result};
use crate::exact::{
    det_sign, integer_kernel, primitive, rat_rank, solve_rat_square, IntMatrix,
    IntVector, Rat,
};
use crate::lp::{feasible, Constraint};
use crate::polytope::{subsets_between, Polytope};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::OnceLock;

/// A rational polyhedral fan.
#[derive(Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<BTreeSet<usize>>,
    derived: OnceLock<std::result::Result<Derived, String>>,
    validation: OnceLock<std::result::Result<Validation, String>>,
}

impl Clone for Fan {
    fn clone(&self) -> Self {
        Fan {
            dim: self.dim,
            rays: self.rays.clone(),
            max_cones: self.max_cones.clone(),
            derived: OnceLock::new(),
            validation: OnceLock::new(),
        }
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}
impl Eq for Fan {}

/// Validation flags reported for a fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanFlags {
    pub rational: bool,
    pub complete: bool,
    pub simplicial: bool,
    pub projective: bool,
}

/// One cone of the fan (maximal or derived face), canonically a ray set.
#[derive(Debug, Clone)]
pub struct ConeData {
    pub rays: BTreeSet<usize>,
    pub dim: usize,
    /// A maximal cone containing this one; its facets cut out the face.
    host: usize,
}

#[derive(Debug, Clone)]
struct ConeFacet {
    normal: IntVector,
    rays_on: BTreeSet<usize>,
}

#[derive(Debug, Clone)]
struct Derived {
    /// All cones of the fan including the zero cone, sorted by (dim, rays).
    all: Vec<ConeData>,
    by_rays: BTreeMap<BTreeSet<usize>, usize>,
    /// Facets of each maximal cone.
    cone_facets: Vec<Vec<ConeFacet>>,
    /// Dimension of each maximal cone.
    cone_dims: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Validation {
    complete: bool,
    simplicial: bool,
    projective: bool,
    witness: Option<Polytope>,
}

/// A containment-respecting assignment from cones of a fine fan to cones
/// of a coarse fan, both addressed by sorted ray index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeMap {
    pub entries: BTreeMap<BTreeSet<usize>, BTreeSet<usize>>,
}

impl ConeMap {
    pub fn get(&self, cone: &BTreeSet<usize>) -> Option<&BTreeSet<usize>> {
        self.entries.get(cone)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|(k, v)| k == v)
    }
}

/// Outcome of a refinement check.
#[derive(Debug, Clone)]
pub enum Refinement {
    Map(ConeMap),
    NotRefinement { fine_cone: BTreeSet<usize> },
}

impl Fan {
    pub fn new(
        dim: usize,
        rays: Vec<IntVector>,
        max_cones: Vec<BTreeSet<usize>>,
    ) -> Result<Self> {
        if dim == 0 {
            if !rays.is_empty() || max_cones != vec![BTreeSet::new()] {
                return Err(Error::MalformedFan(
                    "a zero-dimensional fan has no rays and only the zero cone".into(),
                ));
            }
            return Ok(Fan::trivial());
        }
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::MalformedFan(format!(
                    "ray has dimension {}, expected {dim}",
                    r.dim()
                )));
            }
            if r.is_zero() {
                return Err(Error::MalformedFan("zero vector is not a ray".into()));
            }
            if primitive(r)? != *r {
                return Err(Error::MalformedFan(format!(
                    "ray {r:?} is not primitive"
                )));
            }
        }
        let distinct: BTreeSet<&IntVector> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return Err(Error::MalformedFan("duplicate rays".into()));
        }
        if max_cones.is_empty() {
            return Err(Error::MalformedFan("fan has no maximal cones".into()));
        }
        let mut seen_cones = BTreeSet::new();
        for c in &max_cones {
            if c.is_empty() {
                return Err(Error::MalformedFan("empty maximal cone".into()));
            }
            for &i in c {
                if i >= rays.len() {
                    return Err(Error::MalformedFan(format!(
                        "cone references ray {i} out of range"
                    )));
                }
            }
            if !seen_cones.insert(c.clone()) {
                return Err(Error::MalformedFan("duplicate maximal cone".into()));
            }
        }
        for a in &max_cones {
            for b in &max_cones {
                if a != b && a.is_subset(b) {
                    return Err(Error::MalformedFan(
                        "a listed maximal cone is contained in another".into(),
                    ));
                }
            }
        }
        Ok(Fan {
            dim,
            rays,
            max_cones,
            derived: OnceLock::new(),
            validation: OnceLock::new(),
        })
    }

    /// The fan of the zero-dimensional lattice: a single zero cone.
    pub fn trivial() -> Self {
        Fan {
            dim: 0,
            rays: Vec::new(),
            max_cones: vec![BTreeSet::new()],
            derived: OnceLock::new(),
            validation: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[BTreeSet<usize>] {
        &self.max_cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    fn derived(&self) -> Result<&Derived> {
        let r = self.derived.get_or_init(|| self.compute_derived());
        match r {
            Ok(d) => Ok(d),
            Err(msg) => Err(Error::MalformedFan(msg.clone())),
        }
    }

    fn compute_derived(&self) -> std::result::Result<Derived, String> {
        let n = self.dim;
        if n == 0 {
            let zero = ConeData {
                rays: BTreeSet::new(),
                dim: 0,
                host: 0,
            };
            return Ok(Derived {
                all: vec![zero],
                by_rays: BTreeMap::from([(BTreeSet::new(), 0)]),
                cone_facets: vec![Vec::new()],
                cone_dims: vec![0],
            });
        }
        let mut cone_dims = Vec::with_capacity(self.max_cones.len());
        for cone in &self.max_cones {
            let gens: Vec<&IntVector> = cone.iter().map(|&i| &self.rays[i]).collect();
            let rank = rat_rank(&gens.iter().map(|g| g.to_rat()).collect::<Vec<_>>());
            if !self.strongly_convex(&gens) {
                return Err("maximal cone is not strongly convex".into());
            }
            // Every listed generator must be an extreme ray of its cone.
            if cone.len() > rank {
                for (k, g) in gens.iter().enumerate() {
                    let others: Vec<&IntVector> = gens
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, v)| *v)
                        .collect();
                    if in_cone_lp(g, &others) {
                        return Err(format!(
                            "generator x{} of a maximal cone is redundant",
                            cone.iter().nth(k).unwrap() + 1
                        ));
                    }
                }
            }
            cone_dims.push(rank);
        }
        // Facets of each maximal cone, brute force over (rank-1)-subsets of
        // its generators.
        let mut cone_facets = Vec::with_capacity(self.max_cones.len());
        for (ci, cone) in self.max_cones.iter().enumerate() {
            cone_facets.push(self.facets_of_cone(cone, cone_dims[ci]));
        }
        // All faces: close facet ray sets under intersection, per cone and
        // across cones; include maximal cones and the zero cone.
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert(BTreeSet::new());
        for (ci, cone) in self.max_cones.iter().enumerate() {
            sets.insert(cone.clone());
            // Faces of this cone: intersections of its facet ray sets.
            let facet_sets: Vec<BTreeSet<usize>> = cone_facets[ci]
                .iter()
                .map(|f| f.rays_on.clone())
                .collect();
            let mut local: BTreeSet<BTreeSet<usize>> = facet_sets.iter().cloned().collect();
            loop {
                let snap: Vec<BTreeSet<usize>> = local.iter().cloned().collect();
                let before = local.len();
                for i in 0..snap.len() {
                    for j in i + 1..snap.len() {
                        local.insert(snap[i].intersection(&snap[j]).cloned().collect());
                    }
                }
                if local.len() == before {
                    break;
                }
            }
            sets.extend(local);
        }
        sets.remove(&BTreeSet::new());
        let mut all = vec![ConeData {
            rays: BTreeSet::new(),
            dim: 0,
            host: 0,
        }];
        for rays in sets {
            let host = self
                .max_cones
                .iter()
                .position(|c| rays.is_subset(c))
                .expect("face comes from some maximal cone");
            let gens: Vec<Vec<Rat>> = rays.iter().map(|&i| self.rays[i].to_rat()).collect();
            let dim = rat_rank(&gens);
            all.push(ConeData { rays, dim, host });
        }
        all.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
        let by_rays = all
            .iter()
            .enumerate()
            .map(|(i, c)| (c.rays.clone(), i))
            .collect();
        let derived = Derived {
            all,
            by_rays,
            cone_facets,
            cone_dims,
        };
        // Every ray lying geometrically inside a maximal cone must be one
        // of its listed generators.
        for (j, v) in self.rays.iter().enumerate() {
            for (ci, cone) in self.max_cones.iter().enumerate() {
                if cone.contains(&j) {
                    continue;
                }
                if self.in_max_cone_derived(&derived, ci, v) {
                    return Err(format!(
                        "ray x{} lies inside a maximal cone that does not list it",
                        j + 1
                    ));
                }
            }
        }
        Ok(derived)
    }

    fn strongly_convex(&self, gens: &[&IntVector]) -> bool {
        // A cone is strongly convex iff some functional is strictly
        // positive on every generator; scale invariance turns strictness
        // into ">= 1".
        let n = self.dim;
        let cs: Vec<Constraint> = gens
            .iter()
            .map(|g| Constraint::ge(g.to_rat(), Rat::one()))
            .collect();
        feasible(&cs, n).is_some()
    }

    fn facets_of_cone(&self, cone: &BTreeSet<usize>, rank: usize) -> Vec<ConeFacet> {
        let n = self.dim;
        let idx: Vec<usize> = cone.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        if rank == 0 {
            return out;
        }
        // For full-dimensional cones a facet hyperplane is spanned by
        // rank-1 of the generators; lower-dimensional cones also need the
        // span equations, handled by membership tests instead.
        for subset in subsets_between(idx.len(), rank.saturating_sub(1), rank.saturating_sub(1))
        {
            let dirs: Vec<IntVector> = subset.iter().map(|&k| self.rays[idx[k]].clone()).collect();
            let rk = rat_rank(&dirs.iter().map(|d| d.to_rat()).collect::<Vec<_>>());
            if rk != rank - 1 {
                continue;
            }
            // Normal within the span of the cone: kernel of (dirs +
            // complement-of-span equations).
            let normals = candidate_normals(&dirs, &idx, &self.rays, n);
            for normal in normals {
                let mut pos = false;
                let mut neg = false;
                for &ri in &idx {
                    match self.rays[ri].dot(&normal).sign() {
                        num_bigint::Sign::Plus => pos = true,
                        num_bigint::Sign::Minus => neg = true,
                        num_bigint::Sign::NoSign => {}
                    }
                }
                if pos && neg {
                    continue;
                }
                let normal = if neg { normal.neg() } else { normal };
                if !seen.insert(normal.clone()) {
                    continue;
                }
                let rays_on: BTreeSet<usize> = idx
                    .iter()
                    .copied()
                    .filter(|&ri| self.rays[ri].dot(&normal).is_zero())
                    .collect();
                // A facet of a cone of dimension `rank` has dimension
                // rank-1 spanned by the generators on it.
                let on_dims: Vec<Vec<Rat>> =
                    rays_on.iter().map(|&ri| self.rays[ri].to_rat()).collect();
                if rat_rank(&on_dims) != rank - 1 {
                    continue;
                }
                out.push(ConeFacet { normal, rays_on });
            }
        }
        out
    }

    fn in_max_cone_derived(&self, derived: &Derived, ci: usize, v: &IntVector) -> bool {
        if v.is_zero() {
            return true;
        }
        let rank = derived.cone_dims[ci];
        if rank < self.dim {
            // Membership in a lower-dimensional cone: nonnegative
            // combination test.
            let gens: Vec<&IntVector> =
                self.max_cones[ci].iter().map(|&i| &self.rays[i]).collect();
            return in_cone_lp(v, &gens);
        }
        derived.cone_facets[ci]
            .iter()
            .all(|f| !f.normal.dot(v).is_negative())
    }

    /// Does the cone with the given ray set contain the vector?
    fn cone_contains(&self, derived: &Derived, cone_idx: usize, v: &IntVector) -> bool {
        let cone = &derived.all[cone_idx];
        if v.is_zero() {
            return true;
        }
        if cone.rays.is_empty() {
            return false;
        }
        let host = cone.host;
        if !self.in_max_cone_derived(derived, host, v) {
            return false;
        }
        // Within the host, the face is cut out by its active facets.
        if derived.cone_dims[host] == self.dim {
            derived.cone_facets[host]
                .iter()
                .filter(|f| cone.rays.is_subset(&f.rays_on))
                .all(|f| f.normal.dot(v).is_zero())
        } else {
            let gens: Vec<&IntVector> = cone.rays.iter().map(|&i| &self.rays[i]).collect();
            in_cone_lp(v, &gens)
        }
    }

    /// All cones of the fan (zero cone, derived faces, maximal cones) as
    /// canonical ray sets sorted by dimension.
    pub fn all_cones(&self) -> Result<Vec<BTreeSet<usize>>> {
        Ok(self.derived()?.all.iter().map(|c| c.rays.clone()).collect())
    }

    /// The unique minimal cone containing all given vectors, or `None`.
    pub fn smallest_containing_cone(
        &self,
        vectors: &[IntVector],
    ) -> Result<Option<BTreeSet<usize>>> {
        let derived = self.derived()?;
        for (i, cone) in derived.all.iter().enumerate() {
            if vectors.iter().all(|v| self.cone_contains(derived, i, v)) {
                return Ok(Some(cone.rays.clone()));
            }
        }
        Ok(None)
    }

    /// Validation flags; `MalformedFan` when cones overlap improperly.
    pub fn validate(&self) -> Result<FanFlags> {
        let v = self.validation_data()?;
        Ok(FanFlags {
            rational: true,
            complete: v.complete,
            simplicial: v.simplicial,
            projective: v.projective,
        })
    }

    /// A polytope whose normal fan is this fan, when one exists.
    pub fn witness_polytope(&self) -> Result<Option<&Polytope>> {
        Ok(self.validation_data()?.witness.as_ref())
    }

    fn validation_data(&self) -> Result<&Validation> {
        let r = self
            .validation
            .get_or_init(|| self.compute_validation().map_err(|e| e.to_string()));
        match r {
            Ok(v) => Ok(v),
            Err(msg) => Err(Error::MalformedFan(msg.clone())),
        }
    }

    fn compute_validation(&self) -> Result<Validation> {
        if self.dim == 0 {
            return Ok(Validation {
                complete: true,
                simplicial: true,
                projective: true,
                witness: Some(Polytope::from_points(vec![Vec::new()], 0)?),
            });
        }
        let derived = self.derived()?;
        let complete = self.check_complete(derived);
        let simplicial = self.max_cones.iter().enumerate().all(|(ci, cone)| {
            cone.len() == self.dim && derived.cone_dims[ci] == self.dim
        });
        // A strictly convex support function certifies a complete fan:
        // its witness polytope must reproduce the fan exactly. Without
        // one, fall back to pairwise proper-intersection checks.
        let mut witness = None;
        if complete {
            if let Some(p) = self.support_function_witness(derived) {
                let nf = p.normal_fan()?;
                if !geometric_eq(&nf.fan, self) {
                    return Err(Error::MalformedFan(
                        "support function witness does not reproduce the fan".into(),
                    ));
                }
                witness = Some(p);
            }
        }
        let projective = witness.is_some();
        if witness.is_none() {
            self.check_pairwise_proper(derived)?;
        }
        Ok(Validation {
            complete,
            simplicial,
            projective,
            witness,
        })
    }

    fn check_complete(&self, derived: &Derived) -> bool {
        let n = self.dim;
        if derived.cone_dims.iter().any(|&d| d != n) {
            return false;
        }
        // Every wall in exactly two maximal cones, and wall adjacency
        // connects all maximal cones.
        let mut walls: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, facets) in derived.cone_facets.iter().enumerate() {
            for f in facets {
                walls.entry(f.rays_on.clone()).or_default().push(ci);
            }
        }
        if walls.values().any(|cs| cs.len() != 2) {
            return false;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.max_cones.len()];
        for cs in walls.values() {
            adj[cs[0]].push(cs[1]);
            adj[cs[1]].push(cs[0]);
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &d in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Solve for a strictly convex support function; the returned polytope
    /// has one vertex per maximal cone.
    fn support_function_witness(&self, derived: &Derived) -> Option<Polytope> {
        let n = self.dim;
        let r = self.rays.len();
        if derived.cone_dims.iter().any(|&d| d != n) {
            return None;
        }
        // Per cone, express the linear piece through n independent rays.
        let mut piece: Vec<(Vec<usize>, Vec<Vec<Rat>>)> = Vec::new();
        for cone in &self.max_cones {
            let idx: Vec<usize> = cone.iter().copied().collect();
            let mut basis: Vec<usize> = Vec::new();
            for &i in &idx {
                let mut trial: Vec<Vec<Rat>> =
                    basis.iter().map(|&b| self.rays[b].to_rat()).collect();
                trial.push(self.rays[i].to_rat());
                if rat_rank(&trial) == trial.len() {
                    basis.push(i);
                }
                if basis.len() == n {
                    break;
                }
            }
            debug_assert_eq!(basis.len(), n);
            let vb: Vec<Vec<Rat>> = basis.iter().map(|&b| self.rays[b].to_rat()).collect();
            let minv = invert_rat(&vb)?;
            piece.push((basis, minv));
        }
        // Variables: y_j = support value on ray j. For cone with basis B,
        // <u, w> = (w^T M) . y_B.
        let mut cs: Vec<Constraint> = Vec::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            let (basis, minv) = &piece[ci];
            for j in 0..r {
                let in_cone = cone.contains(&j);
                if in_cone && basis.contains(&j) {
                    continue;
                }
                // coefficient vector of <u_cone, v_j> in terms of y.
                let w = self.rays[j].to_rat();
                let mut coeffs = vec![Rat::zero(); r];
                for (bpos, &b) in basis.iter().enumerate() {
                    // u = M y_B; <u, w> = sum_k w_k sum_b M[k][b] y_b
                    let mut c = Rat::zero();
                    for k in 0..n {
                        c += &w[k] * &minv[k][bpos];
                    }
                    coeffs[b] += c;
                }
                coeffs[j] -= Rat::one();
                if in_cone {
                    cs.push(Constraint::eq(coeffs, Rat::zero()));
                } else {
                    cs.push(Constraint::ge(coeffs, Rat::one()));
                }
            }
        }
        let y = feasible(&cs, r)?;
        // Recover the vertices u_cone = M y_B.
        let mut vertices = Vec::with_capacity(self.max_cones.len());
        for (basis, minv) in &piece {
            let yb: Vec<Rat> = basis.iter().map(|&b| y[b].clone()).collect();
            let u: Vec<Rat> = (0..n)
                .map(|k| {
                    (0..n)
                        .map(|b| &minv[k][b] * &yb[b])
                        .sum()
                })
                .collect();
            vertices.push(u);
        }
        Polytope::from_points(vertices, n).ok()
    }

    fn check_pairwise_proper(&self, derived: &Derived) -> Result<()> {
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                self.check_pair(derived, a, b)?;
            }
        }
        Ok(())
    }

    fn check_pair(&self, derived: &Derived, a: usize, b: usize) -> Result<()> {
        let n = self.dim;
        // Constraints for x in cone(a) /\ cone(b) via generator form:
        // x = sum lambda_i g_i = sum mu_j h_j, lambda, mu >= 0.
        // Implicit-equality detection: facet normal t of `a` is implicit
        // iff no point of the intersection has <t, x> >= 1.
        let smallest_face = |of: usize, other: usize| -> Result<BTreeSet<usize>> {
            let mut active: Vec<usize> = Vec::new();
            for (fi, f) in derived.cone_facets[of].iter().enumerate() {
                let mut cs = Vec::new();
                let ga: Vec<&IntVector> =
                    self.max_cones[of].iter().map(|&i| &self.rays[i]).collect();
                let gb: Vec<&IntVector> = self.max_cones[other]
                    .iter()
                    .map(|&i| &self.rays[i])
                    .collect();
                let ka = ga.len();
                let kb = gb.len();
                // Variables: lambda (ka), mu (kb). Equalities: sum la g = sum mu h.
                for d in 0..n {
                    let mut coeffs = vec![Rat::zero(); ka + kb];
                    for (i, g) in ga.iter().enumerate() {
                        coeffs[i] = Rat::from(g.0[d].clone());
                    }
                    for (j, h) in gb.iter().enumerate() {
                        coeffs[ka + j] = -Rat::from(h.0[d].clone());
                    }
                    cs.push(Constraint::eq(coeffs, Rat::zero()));
                }
                for v in 0..ka + kb {
                    let mut coeffs = vec![Rat::zero(); ka + kb];
                    coeffs[v] = Rat::one();
                    cs.push(Constraint::ge(coeffs, Rat::zero()));
                }
                // <t, x> >= 1 with x = sum lambda g.
                let mut coeffs = vec![Rat::zero(); ka + kb];
                for (i, g) in ga.iter().enumerate() {
                    coeffs[i] = Rat::from(f.normal.dot(g));
                }
                cs.push(Constraint::ge(coeffs, Rat::one()));
                if feasible(&cs, ka + kb).is_none() {
                    active.push(fi);
                }
            }
            Ok(self.max_cones[of]
                .iter()
                .copied()
                .filter(|&ri| {
                    active
                        .iter()
                        .all(|&fi| derived.cone_facets[of][fi].rays_on.contains(&ri))
                })
                .collect())
        };
        let fa = smallest_face(a, b)?;
        let fb = smallest_face(b, a)?;
        let va: BTreeSet<&IntVector> = fa.iter().map(|&i| &self.rays[i]).collect();
        let vb: BTreeSet<&IntVector> = fb.iter().map(|&i| &self.rays[i]).collect();
        let fa_in_b = fa
            .iter()
            .all(|&i| self.in_max_cone_derived(derived, b, &self.rays[i]));
        let fb_in_a = fb
            .iter()
            .all(|&i| self.in_max_cone_derived(derived, a, &self.rays[i]));
        if va != vb || !fa_in_b || !fb_in_a {
            return Err(Error::MalformedFan(format!(
                "maximal cones {} and {} do not intersect in a common face",
                crate::error::fmt_indices(&self.max_cones[a].iter().copied().collect::<Vec<_>>()),
                crate::error::fmt_indices(&self.max_cones[b].iter().copied().collect::<Vec<_>>())
            )));
        }
        Ok(())
    }

    /// Deterministic simplicial refinement with the same rays: every
    /// non-simplicial cone is subdivided by pulling at its smallest ray,
    /// recursively.
    pub fn simplicialize(&self) -> Result<(Fan, ConeMap)> {
        let flags = self.validate()?;
        if !flags.complete {
            return Err(Error::NotComplete);
        }
        if !flags.projective {
            return Err(Error::NotProjective);
        }
        let derived = self.derived()?;
        let mut memo: BTreeMap<usize, Vec<BTreeSet<usize>>> = BTreeMap::new();
        let mut new_cones: Vec<BTreeSet<usize>> = Vec::new();
        let mut entries = BTreeMap::new();
        for cone in &self.max_cones {
            let idx = derived.by_rays[cone];
            let pieces = self.pull_triangulate(derived, idx, &mut memo);
            for p in pieces {
                entries.insert(p.clone(), cone.clone());
                new_cones.push(p);
            }
        }
        let fine = Fan::new(self.dim, self.rays.clone(), new_cones)?;
        Ok((fine, ConeMap { entries }))
    }

    fn pull_triangulate(
        &self,
        derived: &Derived,
        cone_idx: usize,
        memo: &mut BTreeMap<usize, Vec<BTreeSet<usize>>>,
    ) -> Vec<BTreeSet<usize>> {
        if let Some(t) = memo.get(&cone_idx) {
            return t.clone();
        }
        let cone = &derived.all[cone_idx];
        let result = if cone.rays.len() == cone.dim {
            vec![cone.rays.clone()]
        } else {
            let v = *cone.rays.iter().next().expect("non-simplicial cone has rays");
            let mut pieces = Vec::new();
            for (fi, f) in derived.all.iter().enumerate() {
                if f.dim + 1 != cone.dim
                    || !f.rays.is_subset(&cone.rays)
                    || f.rays.contains(&v)
                    || f.rays.len() == cone.rays.len()
                {
                    continue;
                }
                for t in self.pull_triangulate(derived, fi, memo) {
                    let mut s = t.clone();
                    s.insert(v);
                    pieces.push(s);
                }
            }
            pieces
        };
        memo.insert(cone_idx, result.clone());
        result
    }

    /// For each maximal cone of `fine`, the minimal cone of `self`
    /// containing it.
    pub fn refinement_from(&self, fine: &Fan) -> Result<Refinement> {
        if fine.dim != self.dim {
            return Err(Error::MalformedInput(
                "refinement check requires equal ambient dimensions".into(),
            ));
        }
        let mut entries = BTreeMap::new();
        for cone in &fine.max_cones {
            let gens: Vec<IntVector> = cone.iter().map(|&i| fine.rays[i].clone()).collect();
            match self.smallest_containing_cone(&gens)? {
                Some(target) => {
                    entries.insert(cone.clone(), target);
                }
                None => {
                    return Ok(Refinement::NotRefinement {
                        fine_cone: cone.clone(),
                    })
                }
            }
        }
        Ok(Refinement::Map(ConeMap { entries }))
    }

    /// Determinant sign of a simplicial maximal cone's generators in the
    /// given ray order.
    pub fn cone_det_sign(&self, rays_in_order: &[usize]) -> Result<i32> {
        let rows: Vec<IntVector> = rays_in_order
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        det_sign(&IntMatrix::new(rows, self.dim))
    }
}

/// `v` in the cone nonnegatively generated by `gens`?
fn in_cone_lp(v: &IntVector, gens: &[&IntVector]) -> bool {
    if v.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let n = v.dim();
    let k = gens.len();
    let mut cs = Vec::with_capacity(n + k);
    for d in 0..n {
        let coeffs: Vec<Rat> = gens.iter().map(|g| Rat::from(g.0[d].clone())).collect();
        cs.push(Constraint::eq(coeffs, Rat::from(v.0[d].clone())));
    }
    for i in 0..k {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs[i] = Rat::one();
        cs.push(Constraint::ge(coeffs, Rat::zero()));
    }
    feasible(&cs, k).is_some()
}

/// Candidate primitive normals for a facet hyperplane of a cone.
fn candidate_normals(
    dirs: &[IntVector],
    _cone_rays: &[usize],
    _all_rays: &[IntVector],
    n: usize,
) -> Vec<IntVector> {
    let m = IntMatrix::new(dirs.to_vec(), n);
    let kernel = integer_kernel(&m);
    if kernel.len() != 1 {
        return Vec::new();
    }
    vec![primitive(&kernel[0]).expect("kernel generator nonzero")]
}

/// Invert a square rational matrix; `None` when singular.
fn invert_rat(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(solve_rat_square(rows, &e)?);
    }
    // cols[j] is the j-th column of the inverse.
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

/// Equal as geometric fans: same ray vectors and the same cones over them.
pub fn geometric_eq(a: &Fan, b: &Fan) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let ra: BTreeMap<&IntVector, usize> =
        a.rays().iter().enumerate().map(|(i, v)| (v, i)).collect();
    let rb: BTreeMap<&IntVector, usize> =
        b.rays().iter().enumerate().map(|(i, v)| (v, i)).collect();
    if ra.keys().collect::<BTreeSet<_>>() != rb.keys().collect::<BTreeSet<_>>() {
        return false;
    }
    let cones = |f: &Fan| -> BTreeSet<BTreeSet<IntVector>> {
        f.max_cones()
            .iter()
            .map(|c| c.iter().map(|&i| f.rays()[i].clone()).collect())
            .collect()
    };
    cones(a) == cones(b)
}

/// A bijection `a`-ray-index -> `b`-ray-index realizing geometric equality,
/// when the fans are geometrically equal.
pub fn ray_bijection(a: &Fan, b: &Fan) -> Option<Vec<usize>> {
    if !geometric_eq(a, b) {
        return None;
    }
    a.rays()
        .iter()
        .map(|v| b.rays().iter().position(|w| w == v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p2_fan() -> Fan {
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

    pub(crate) fn p1p1_fan() -> Fan {
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
        .unwrap()
    }

    /// Face fan of the 3-cube: six cones over the square facets; equals
    /// the normal fan of the octahedron.
    pub(crate) fn cube_face_fan() -> Fan {
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
            BTreeSet::from([0, 1, 2, 3]), // x = 1
            BTreeSet::from([4, 5, 6, 7]), // x = -1
            BTreeSet::from([0, 1, 4, 5]), // y = 1
            BTreeSet::from([2, 3, 6, 7]), // y = -1
            BTreeSet::from([0, 2, 4, 6]), // z = 1
            BTreeSet::from([1, 3, 5, 7]), // z = -1
        ];
        Fan::new(3, rays, max_cones).unwrap()
    }

    #[test]
    fn p2_all_flags_true() {
        let f = p2_fan();
        let flags = f.validate().unwrap();
        assert!(flags.rational && flags.complete && flags.simplicial && flags.projective);
    }

    #[test]
    fn incomplete_when_cone_removed() {
        let f = Fan::new(
            2,
            vec![
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[-1, -1]),
            ],
            vec![BTreeSet::from([0, 1]), BTreeSet::from([1, 2])],
        )
        .unwrap();
        let flags = f.validate().unwrap();
        assert!(!flags.complete);
    }

    #[test]
    fn cube_face_fan_complete_not_simplicial() {
        let f = cube_face_fan();
        let flags = f.validate().unwrap();
        assert!(flags.complete);
        assert!(!flags.simplicial);
        assert!(flags.projective);
    }

    #[test]
    fn simplicialize_identity_on_simplicial() {
        let f = p2_fan();
        let (g, map) = f.simplicialize().unwrap();
        assert!(geometric_eq(&f, &g));
        assert!(map.is_identity());
    }

    #[test]
    fn simplicialize_cube_face_fan() {
        let f = cube_face_fan();
        let (g, map) = f.simplicialize().unwrap();
        assert_eq!(g.max_cones().len(), 12);
        let flags = g.validate().unwrap();
        assert!(flags.complete && flags.simplicial);
        assert_eq!(g.rays(), f.rays());
        match f.refinement_from(&g).unwrap() {
            Refinement::Map(m) => {
                for (fine, coarse) in &m.entries {
                    assert!(map.get(fine).is_some());
                    assert!(fine.is_subset(coarse));
                }
            }
            Refinement::NotRefinement { .. } => panic!("expected refinement"),
        }
    }

    #[test]
    fn refinement_failure() {
        let fine = p2_fan();
        let coarse = p1p1_fan();
        match coarse.refinement_from(&fine).unwrap() {
            Refinement::NotRefinement { .. } => {}
            Refinement::Map(_) => panic!("P2 fan does not refine P1xP1 fan"),
        }
    }

    #[test]
    fn refinement_identity() {
        let f = p2_fan();
        match f.refinement_from(&f).unwrap() {
            Refinement::Map(m) => assert!(m.is_identity()),
            _ => panic!("fan refines itself"),
        }
    }

    #[test]
    fn smallest_containing_cone_examples() {
        let f = p2_fan();
        assert_eq!(
            f.smallest_containing_cone(&[IntVector::from_i64(&[1, 0])])
                .unwrap(),
            Some(BTreeSet::from([0]))
        );
        assert_eq!(
            f.smallest_containing_cone(&[
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1])
            ])
            .unwrap(),
            Some(BTreeSet::from([0, 1]))
        );
        assert_eq!(
            f.smallest_containing_cone(&[
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[-1, -1]),
                IntVector::from_i64(&[0, 1])
            ])
            .unwrap(),
            None
        );
        assert_eq!(
            f.smallest_containing_cone(&[IntVector::from_i64(&[0, 0])])
                .unwrap(),
            Some(BTreeSet::new())
        );
    }

    #[test]
    fn overlapping_cones_rejected() {
        // cone(e1, e2) and cone(e1+e2 ... not primitive-led overlap: use
        // cone((1,0),(1,2)) and cone((1,1),(0,1)) which overlap improperly.
        let f = Fan::new(
            2,
            vec![
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[1, 2]),
                IntVector::from_i64(&[1, 1]),
                IntVector::from_i64(&[0, 1]),
            ],
            vec![BTreeSet::from([0, 1]), BTreeSet::from([2, 3])],
        )
        .unwrap();
        assert!(matches!(f.validate(), Err(Error::MalformedFan(_))));
    }

    #[test]
    fn witness_round_trip() {
        for fan in [p2_fan(), p1p1_fan(), cube_face_fan()] {
            let flags = fan.validate().unwrap();
            assert!(flags.projective);
            let w = fan.witness_polytope().unwrap().unwrap();
            let nf = w.normal_fan().unwrap();
            assert!(geometric_eq(&nf.fan, &fan));
        }
    }
}

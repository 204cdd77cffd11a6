//! The combinatorial degree, computed three independent ways.
//!
//! Route one counts signed complete flags mapping onto a fixed target
//! flag. Route two counts signed colored cones of a simplicial projective
//! fan. Route three builds an explicit piecewise-linear characteristic
//! map on the barycentric subdivision and takes its topological degree by
//! counting signed preimages of a generic point. All three must agree;
//! the test suites enforce it.
//!
//! Sign convention: the target simplex is modeled as `conv{0, e_1..e_n}`
//! with the standard orientation, which makes the identity-type coloring
//! of the standard simplex have degree +1. Polytopes default to the
//! standard-basis orientation.

use crate::coloring::{is_simplicial, Coloring, SimplicialCheck};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::fan::Fan;
use crate::lp::{feasible, Constraint};
use crate::polytope::{rat_det_sign, FaceId, Flag, Orientation, Polytope};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Default seed for the oracle's generic-point sampler; any seed gives the
/// same degree, this one makes runs reproducible byte for byte.
pub const DEFAULT_ORACLE_SEED: u64 = 0x5eed_0001;

/// Per-facet color sets, parallel to `Polytope::facets()`.
pub type FacetColoring = Vec<BTreeSet<usize>>;

/// The standard n-simplex target, modeled as `conv{0, e_1, .., e_n}`.
///
/// Faces carry the subset index of the coordinates that vanish on them:
/// the face for a color set `S` has codimension `|S|`.
pub struct SimplexTarget {
    polytope: Polytope,
    /// Vertex index (in the polytope's canonical order) of each label;
    /// label 0 is the origin, label i the unit point e_i.
    vertex_of_label: Vec<usize>,
    n: usize,
}

impl SimplexTarget {
    pub fn new(n: usize) -> Result<Self> {
        Self::build(n, false)
    }

    /// Translated so the origin is strictly interior; used on the polar
    /// side. Face identifiers agree with the untranslated model.
    pub fn centered(n: usize) -> Result<Self> {
        Self::build(n, true)
    }

    fn build(n: usize, centered: bool) -> Result<Self> {
        assert!(n >= 1);
        let mut pts: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
        pts.push(vec![Rat::zero(); n]);
        for i in 0..n {
            let mut p = vec![Rat::zero(); n];
            p[i] = Rat::one();
            pts.push(p);
        }
        if centered {
            let bary: Vec<Rat> = (0..n)
                .map(|d| {
                    pts.iter().map(|p| p[d].clone()).sum::<Rat>()
                        / Rat::from(BigInt::from(n as i64 + 1))
                })
                .collect();
            for p in pts.iter_mut() {
                for d in 0..n {
                    p[d] = &p[d] - &bary[d];
                }
            }
        }
        let labels = pts.clone();
        let polytope = Polytope::from_points(pts, n)?;
        let vertex_of_label = labels
            .iter()
            .map(|p| {
                polytope
                    .vertices()
                    .iter()
                    .position(|v| v == p)
                    .expect("simplex vertex present")
            })
            .collect();
        Ok(SimplexTarget {
            polytope,
            vertex_of_label,
            n,
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The face on which the coordinates indexed by `colors` vanish:
    /// the convex hull of the vertices with labels outside `colors`.
    pub fn face_for_colorset(&self, colors: &BTreeSet<usize>) -> Result<FaceId> {
        let k = colors.len();
        if k == 0 || k > self.n {
            return Err(Error::EmptyColorSet);
        }
        let want: BTreeSet<usize> = (0..=self.n)
            .filter(|l| !colors.contains(l))
            .map(|l| self.vertex_of_label[l])
            .collect();
        let dim = self.n - k;
        let lattice = self.polytope.face_lattice()?;
        let idx = lattice.by_dim[dim]
            .iter()
            .position(|f| f.vertex_indices == want)
            .expect("every label subset cuts out a simplex face");
        Ok(FaceId { dim, idx })
    }

    /// The canonical target flag: the chain through the color sets
    /// `{1..n}`, `{2..n}`, ..., `{n}`.
    pub fn canonical_flag(&self) -> Result<Flag> {
        let chain = (0..self.n)
            .map(|d| {
                let colors: BTreeSet<usize> = (d + 1..=self.n).collect();
                self.face_for_colorset(&colors)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Flag { chain })
    }

    /// All complete flags of the simplex boundary.
    pub fn flags(&self) -> Result<Vec<Flag>> {
        self.polytope.enumerate_flags()
    }
}

/// Require the facet coloring to cover the boundary and be simplicial;
/// returns the union color set for each face-defining check.
fn check_facet_coloring(p: &Polytope, colors: &FacetColoring) -> Result<()> {
    let facets = p.facets()?;
    if colors.len() != facets.len() {
        return Err(Error::MalformedInput(format!(
            "facet coloring has {} entries for {} facets",
            colors.len(),
            facets.len()
        )));
    }
    let n = p.ambient_dim();
    for (i, set) in colors.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::MalformedInput(format!("facet {i} has no color")));
        }
        if set.iter().any(|&c| c > n) {
            return Err(Error::MalformedInput(format!(
                "facet {i} uses a color outside 0..={n}"
            )));
        }
    }
    // Simplicial: no vertex lies in facets of all n+1 colors.
    let lattice = p.face_lattice()?;
    for (idx, _) in lattice.by_dim[0].iter().enumerate() {
        let union = psi_face(p, colors, FaceId { dim: 0, idx })?;
        if union.len() == n + 1 {
            let cone_rays = p.facets_containing(FaceId { dim: 0, idx })?;
            return Err(Error::NotSimplicialColoring { cone_rays });
        }
    }
    Ok(())
}

/// Color set of a face: all colors carried by facets containing it.
fn psi_face(p: &Polytope, colors: &FacetColoring, id: FaceId) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for f in p.facets_containing(id)? {
        set.extend(colors[f].iter().copied());
    }
    Ok(set)
}

/// Signed count of source flags mapping onto `target`, times the target
/// flag's sign.
fn degree_by_flags(
    src: &Polytope,
    src_orient: &Orientation,
    tgt: &Polytope,
    tgt_orient: &Orientation,
    psi: &dyn Fn(FaceId) -> Result<FaceId>,
    target: &Flag,
) -> Result<i32> {
    let sgn_target = tgt.flag_sign(tgt_orient, target)?;
    let mut total = 0i32;
    for flag in src.enumerate_flags()? {
        let mut hits = true;
        for (i, &id) in flag.chain.iter().enumerate() {
            if psi(id)? != target.chain[i] {
                hits = false;
                break;
            }
        }
        if hits {
            total += src.flag_sign(src_orient, &flag)?;
        }
    }
    Ok(sgn_target * total)
}

/// Combinatorial degree by flag counting on the polytope side.
///
/// `target_flag` defaults to the canonical chain; the result is the same
/// for every choice, and the suites check that.
pub fn cdeg_flags(
    p: &Polytope,
    orient: &Orientation,
    colors: &FacetColoring,
    target_flag: Option<&Flag>,
) -> Result<i32> {
    check_facet_coloring(p, colors)?;
    let n = p.ambient_dim();
    let simplex = SimplexTarget::new(n)?;
    let canonical = simplex.canonical_flag()?;
    let target = target_flag.unwrap_or(&canonical);
    let psi = |id: FaceId| -> Result<FaceId> {
        let set = psi_face(p, colors, id)?;
        simplex.face_for_colorset(&set)
    };
    degree_by_flags(
        p,
        orient,
        simplex.polytope(),
        &Orientation::standard(n),
        &psi,
        target,
    )
}

/// Combinatorial degree by signed colored-cone counting.
///
/// For a disjoint simplicial coloring of a simplicial projective fan and
/// any fixed color `k`, this is `(-1)^k` times the signed count of
/// maximal cones whose rays carry exactly the colors other than `k`,
/// oriented by the determinant of their generators in increasing color
/// order.
pub fn cdeg_cones(fan: &Fan, coloring: &Coloring, k: usize) -> Result<i32> {
    let n = fan.dim();
    if !coloring.is_disjoint() {
        return Err(Error::NotDisjoint);
    }
    let flags = fan.validate()?;
    if !flags.simplicial {
        return Err(Error::NotSimplicial);
    }
    if !flags.projective {
        return Err(Error::NotProjective);
    }
    if let SimplicialCheck::Violating { cone, .. } = is_simplicial(fan, coloring)? {
        return Err(Error::NotSimplicialColoring {
            cone_rays: cone.into_iter().collect(),
        });
    }
    let want: BTreeSet<usize> = (0..=n).filter(|&c| c != k).collect();
    let mut total = 0i32;
    for cone in fan.max_cones() {
        let mut by_color: Vec<(usize, usize)> = cone
            .iter()
            .map(|&j| (coloring.color_of(j), j))
            .collect();
        let colors: BTreeSet<usize> = by_color.iter().map(|&(c, _)| c).collect();
        if colors != want || by_color.len() != n {
            continue;
        }
        by_color.sort();
        let order: Vec<usize> = by_color.iter().map(|&(_, j)| j).collect();
        total += fan.cone_det_sign(&order)?;
    }
    Ok(if k % 2 == 0 { total } else { -total })
}

/// Combinatorial degree of a simplicial coloring of a projective fan.
///
/// Reduces to a disjoint coloring, passes to a same-ray simplicial
/// refinement when needed, and counts colored cones.
pub fn cdeg(fan: &Fan, coloring: &Coloring) -> Result<i32> {
    let flags = fan.validate()?;
    if !flags.projective {
        return Err(Error::NotProjective);
    }
    if let SimplicialCheck::Violating { cone, .. } = is_simplicial(fan, coloring)? {
        return Err(Error::NotSimplicialColoring {
            cone_rays: cone.into_iter().collect(),
        });
    }
    let disjoint = coloring.reduce_to_disjoint();
    if flags.simplicial {
        cdeg_cones(fan, &disjoint, 0)
    } else {
        let (fine, _) = fan.simplicialize()?;
        cdeg_cones(&fine, &disjoint, 0)
    }
}

/// Topological-degree oracle for the characteristic map.
///
/// Builds the barycentric piecewise-linear map explicitly and counts
/// signed preimages of a generic rational point inside a fixed facet of
/// the target simplex, re-sampling on any exact degeneracy.
pub fn pl_degree_oracle(
    p: &Polytope,
    orient: &Orientation,
    colors: &FacetColoring,
    seed: u64,
) -> Result<i32> {
    check_facet_coloring(p, colors)?;
    let n = p.ambient_dim();
    let simplex = SimplexTarget::new(n)?;
    let tgt = simplex.polytope();
    let tgt_bary = tgt.barycenter();
    let src_bary = p.barycenter();

    // Source simplices: barycenters along every flag; image vertices:
    // barycenters of the psi-images.
    let mut cells: Vec<(Vec<Vec<Rat>>, Vec<Vec<Rat>>)> = Vec::new();
    for flag in p.enumerate_flags()? {
        let mut src_pts = Vec::with_capacity(n);
        let mut img_pts = Vec::with_capacity(n);
        for &id in &flag.chain {
            src_pts.push(p.face_barycenter(id)?);
            let set = psi_face(p, colors, id)?;
            let img = simplex.face_for_colorset(&set)?;
            img_pts.push(tgt.face_barycenter(img)?);
        }
        cells.push((src_pts, img_pts));
    }

    // The fixed facet misses only the last color: its vertices are the
    // labels 0..n-1.
    let facet_colors: BTreeSet<usize> = BTreeSet::from([n]);
    let facet = simplex.face_for_colorset(&facet_colors)?;
    let facet_verts: Vec<Vec<Rat>> = tgt
        .face(facet)?
        .vertex_indices
        .iter()
        .map(|&i| tgt.vertices()[i].clone())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'resample: for _ in 0..64 {
        // Random rational point strictly inside the fixed facet.
        let weights: Vec<Rat> = (0..facet_verts.len())
            .map(|_| Rat::from(BigInt::from(rng.gen_range(1..=1_000_000i64))))
            .collect();
        let wsum: Rat = weights.iter().cloned().sum();
        let point: Vec<Rat> = (0..n)
            .map(|d| {
                facet_verts
                    .iter()
                    .zip(weights.iter())
                    .map(|(v, w)| &v[d] * w)
                    .sum::<Rat>()
                    / wsum.clone()
            })
            .collect();

        let mut total = 0i32;
        for (src_pts, img_pts) in &cells {
            match preimage_weight(img_pts, &point) {
                CellHit::Outside => {}
                CellHit::Boundary | CellHit::DegenerateAmbiguous => continue 'resample,
                CellHit::Interior => {
                    let s_src = simplex_sign(src_pts, &src_bary) * orient.sign();
                    let s_img = simplex_sign(img_pts, &tgt_bary);
                    debug_assert!(s_src != 0 && s_img != 0);
                    total += s_src * s_img;
                }
            }
        }
        return Ok(total);
    }
    Err(Error::DegenerateSampling)
}

enum CellHit {
    Outside,
    Interior,
    Boundary,
    DegenerateAmbiguous,
}

/// Locate `point` relative to the affine simplex spanned by `verts`
/// (n points in dimension n, spanning at most an (n-1)-cell).
fn preimage_weight(verts: &[Vec<Rat>], point: &[Rat]) -> CellHit {
    let n = point.len();
    let k = verts.len(); // == n
    if k == 1 {
        return if verts[0] == point {
            CellHit::Interior
        } else {
            CellHit::Outside
        };
    }
    // Solve point - v0 = sum_{i>=1} mu_i (v_i - v0).
    let cols: Vec<Vec<Rat>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(verts[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    let rhs: Vec<Rat> = point
        .iter()
        .zip(verts[0].iter())
        .map(|(a, b)| a - b)
        .collect();
    match solve_overdetermined(&cols, &rhs, n) {
        SolveOutcome::Unique(mu) => {
            let mu0 = Rat::one() - mu.iter().cloned().sum::<Rat>();
            let mut all = vec![mu0];
            all.extend(mu);
            if all.iter().any(|m| m < &Rat::zero()) {
                CellHit::Outside
            } else if all.iter().any(|m| m.is_zero()) {
                CellHit::Boundary
            } else {
                CellHit::Interior
            }
        }
        SolveOutcome::Inconsistent => CellHit::Outside,
        SolveOutcome::Underdetermined => {
            // Degenerate image simplex; if the point is in its hull the
            // sample is ambiguous, otherwise ignore the cell.
            if point_in_hull(verts, point) {
                CellHit::DegenerateAmbiguous
            } else {
                CellHit::Outside
            }
        }
    }
}

enum SolveOutcome {
    Unique(Vec<Rat>),
    Inconsistent,
    Underdetermined,
}

/// Solve `sum_i x_i cols[i] = rhs` for x, all vectors of length `n`.
fn solve_overdetermined(cols: &[Vec<Rat>], rhs: &[Rat], n: usize) -> SolveOutcome {
    let k = cols.len();
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|d| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[d].clone()).collect();
            row.push(rhs[d].clone());
            row
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    let mut row = 0;
    for col in 0..k {
        let Some(piv) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let inv = a[row][col].clone();
        for j in col..=k {
            a[row][j] = &a[row][j] / &inv;
        }
        for r in 0..n {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..=k {
                let s = &f * &a[row][j];
                a[r][j] -= s;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    for r in row..n {
        if !a[r][k].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_of_col.iter().any(|p| p.is_none()) {
        return SolveOutcome::Underdetermined;
    }
    SolveOutcome::Unique(
        pivot_of_col
            .iter()
            .map(|p| a[p.unwrap()][k].clone())
            .collect(),
    )
}

fn point_in_hull(verts: &[Vec<Rat>], point: &[Rat]) -> bool {
    let k = verts.len();
    let n = point.len();
    let mut cs = Vec::new();
    for d in 0..n {
        cs.push(Constraint::eq(
            verts.iter().map(|v| v[d].clone()).collect(),
            point[d].clone(),
        ));
    }
    cs.push(Constraint::eq(vec![Rat::one(); k], Rat::one()));
    for i in 0..k {
        let mut c = vec![Rat::zero(); k];
        c[i] = Rat::one();
        cs.push(Constraint::ge(c, Rat::zero()));
    }
    feasible(&cs, k).is_some()
}

/// Orientation of a boundary cell `(b_0..b_{n-1})`: sign of the frame
/// from `b_0` through the other vertices, closed by a vector into the
/// ambient polytope's interior.
fn simplex_sign(verts: &[Vec<Rat>], interior: &[Rat]) -> i32 {
    let n = interior.len();
    let mut rows: Vec<Vec<Rat>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(verts[0].iter()).map(|(a, b)| a - b).collect())
        .collect();
    rows.push(
        interior
            .iter()
            .zip(verts[0].iter())
            .map(|(a, b)| a - b)
            .collect(),
    );
    debug_assert_eq!(rows.len(), n);
    rat_det_sign(&rows)
}

/// Degree of the dual characteristic map on the polar side; equals the
/// primal degree.
pub fn dual_map_degree(
    p: &Polytope,
    orient: &Orientation,
    colors: &FacetColoring,
) -> Result<i32> {
    check_facet_coloring(p, colors)?;
    let n = p.ambient_dim();
    let dual = p.polar()?; // errors when the origin is not interior
    let simplex = SimplexTarget::centered(n)?;
    let simplex_dual = simplex.polytope().polar()?;

    let psi_star = |id: FaceId| -> Result<FaceId> {
        // id is a face of the polar; find its primal face, apply psi, dualize.
        let primal = dual
            .face_map
            .iter()
            .find(|(_, &v)| v == id)
            .map(|(k, _)| *k)
            .ok_or_else(|| {
                Error::InternalInconsistency("polar face has no primal preimage".into())
            })?;
        let set = psi_face(p, colors, primal)?;
        let img = simplex.face_for_colorset(&set)?;
        simplex_dual.face_map.get(&img).copied().ok_or_else(|| {
            Error::InternalInconsistency("simplex face has no polar image".into())
        })
    };

    // Target flag: the dual of the canonical flag, reversed to ascend.
    let canonical = simplex.canonical_flag()?;
    let mut chain: Vec<FaceId> = canonical
        .chain
        .iter()
        .rev()
        .map(|id| simplex_dual.face_map[id])
        .collect();
    chain.sort_by_key(|id| id.dim);
    let target = Flag { chain };

    let std = Orientation::standard(n);
    let deg = degree_by_flags(
        &dual.polytope,
        &std,
        &simplex_dual.polytope,
        &std,
        &psi_star,
        &target,
    )?;
    Ok(deg * orient.sign())
}

/// Dualize a complete flag through a polar face correspondence.
pub fn dual_flag(face_map: &std::collections::BTreeMap<FaceId, FaceId>, flag: &Flag) -> Flag {
    let mut chain: Vec<FaceId> = flag.chain.iter().map(|id| face_map[id]).collect();
    chain.reverse();
    Flag { chain }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntVector;
    use crate::polytope::Polytope;

    fn simplex_polytope(n: usize) -> Polytope {
        SimplexTarget::new(n).unwrap().polytope().clone()
    }

    /// The identity-type coloring of the standard simplex: the facet
    /// opposite vertex-label i gets color i.
    fn identity_coloring(n: usize) -> (Polytope, FacetColoring) {
        let p = simplex_polytope(n);
        let simplex = SimplexTarget::new(n).unwrap();
        let facets = p.facets().unwrap();
        let mut colors = vec![BTreeSet::new(); facets.len()];
        for (fi, f) in facets.iter().enumerate() {
            // The missing label determines the color.
            for label in 0..=n {
                let vi = simplex.vertex_of_label[label];
                if !f.vertex_indices.contains(&vi) {
                    colors[fi] = BTreeSet::from([label]);
                }
            }
        }
        (p, colors)
    }

    #[test]
    fn calibration_flags_plus_one() {
        for n in 1..=3 {
            let (p, colors) = identity_coloring(n);
            let orient = Orientation::standard(n);
            assert_eq!(
                cdeg_flags(&p, &orient, &colors, None).unwrap(),
                1,
                "identity coloring degree in dimension {n}"
            );
        }
    }

    #[test]
    fn calibration_swap_is_minus_one() {
        let (p, mut colors) = identity_coloring(2);
        for set in colors.iter_mut() {
            *set = set
                .iter()
                .map(|&c| match c {
                    0 => 1,
                    1 => 0,
                    other => other,
                })
                .collect();
        }
        let orient = Orientation::standard(2);
        assert_eq!(cdeg_flags(&p, &orient, &colors, None).unwrap(), -1);
    }

    #[test]
    fn calibration_oracle_plus_one() {
        for n in 1..=3 {
            let (p, colors) = identity_coloring(n);
            let orient = Orientation::standard(n);
            assert_eq!(
                pl_degree_oracle(&p, &orient, &colors, DEFAULT_ORACLE_SEED).unwrap(),
                1
            );
        }
    }

    #[test]
    fn square_three_color_routes_agree() {
        // Facet colors left 0, bottom 1, right 2, top 1 on the unit square.
        let p = Polytope::from_lattice_points(
            vec![
                IntVector::from_i64(&[0, 0]),
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[1, 1]),
            ],
            2,
        )
        .unwrap();
        let facets = p.facets().unwrap();
        let colors: FacetColoring = facets
            .iter()
            .map(|f| {
                let n: Vec<i64> = f.normal.0.iter().map(|c| i64::try_from(c).unwrap()).collect();
                match n.as_slice() {
                    [1, 0] => BTreeSet::from([0]),  // left
                    [0, 1] => BTreeSet::from([1]),  // bottom
                    [-1, 0] => BTreeSet::from([2]), // right
                    [0, -1] => BTreeSet::from([1]), // top
                    other => panic!("unexpected normal {other:?}"),
                }
            })
            .collect();
        let orient = Orientation::standard(2);
        let by_flags = cdeg_flags(&p, &orient, &colors, None).unwrap();
        let by_oracle = pl_degree_oracle(&p, &orient, &colors, DEFAULT_ORACLE_SEED).unwrap();
        assert_eq!(by_flags, by_oracle);
        assert_eq!(by_flags, 0);
    }

    #[test]
    fn two_color_map_has_degree_zero() {
        // Colors {0,1} only on the square: image misses a facet.
        let p = Polytope::from_lattice_points(
            vec![
                IntVector::from_i64(&[0, 0]),
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[1, 1]),
            ],
            2,
        )
        .unwrap();
        let colors: FacetColoring = vec![
            BTreeSet::from([0]),
            BTreeSet::from([1]),
            BTreeSet::from([0]),
            BTreeSet::from([1]),
        ];
        let orient = Orientation::standard(2);
        assert_eq!(cdeg_flags(&p, &orient, &colors, None).unwrap(), 0);
        assert_eq!(
            pl_degree_oracle(&p, &orient, &colors, DEFAULT_ORACLE_SEED).unwrap(),
            0
        );
    }

    #[test]
    fn p2_cone_route_every_k() {
        let fan = crate::suite::p2_fan();
        let c = Coloring::disjoint(vec![0, 1, 2], 2).unwrap();
        for k in 0..=2 {
            assert_eq!(cdeg_cones(&fan, &c, k).unwrap(), 1, "k = {k}");
        }
        assert_eq!(cdeg(&fan, &c).unwrap(), 1);
    }

    #[test]
    fn p1p1_zero_degree() {
        let fan = crate::suite::p1p1_fan();
        let c = Coloring::disjoint(vec![0, 1, 0, 2], 2).unwrap();
        for k in 0..=2 {
            assert_eq!(cdeg_cones(&fan, &c, k).unwrap(), 0, "k = {k}");
        }
    }

    #[test]
    fn simplex_fan_calibration_all_n() {
        for n in 1..=3usize {
            let (p, colors) = identity_coloring(n);
            let nf = p.normal_fan().unwrap();
            // Transport facet colors to rays.
            let mut ray_colors = vec![BTreeSet::new(); nf.fan.num_rays()];
            for (fi, set) in colors.iter().enumerate() {
                ray_colors[nf.ray_of_facet[fi]] = set.clone();
            }
            let c = Coloring::new(ray_colors, n).unwrap();
            assert_eq!(cdeg(&nf.fan, &c).unwrap(), 1, "dimension {n}");
        }
    }

    #[test]
    fn dual_degree_matches_on_simplex() {
        // Centered simplex has the origin interior.
        let simplex = SimplexTarget::centered(2).unwrap();
        let p = simplex.polytope().clone();
        // Identity-style colors on the centered simplex.
        let facets = p.facets().unwrap();
        let mut colors = vec![BTreeSet::new(); facets.len()];
        for (fi, f) in facets.iter().enumerate() {
            for label in 0..=2 {
                let vi = simplex.vertex_of_label[label];
                if !f.vertex_indices.contains(&vi) {
                    colors[fi] = BTreeSet::from([label]);
                }
            }
        }
        let orient = Orientation::standard(2);
        let primal = cdeg_flags(&p, &orient, &colors, None).unwrap();
        assert_eq!(primal, 1);
        assert_eq!(dual_map_degree(&p, &orient, &colors).unwrap(), primal);
    }
}

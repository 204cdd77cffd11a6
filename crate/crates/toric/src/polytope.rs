//! Convex polytopes with exact rational vertices.
//!
//! Provides the face lattice, complete flags with signs, polar duality with
//! the order-reversing face correspondence, normal fans, and lattice-point
//! enumeration. Everything is brute force over supporting hyperplanes;
//! instances here have at most a dozen vertices, so exactness beats
//! asymptotics.

use crate::error::{Error, Result};
use crate::exact::{
    det_sign, dot_ri, primitive_of_rat, rat_rank, IntMatrix, IntVector, Rat,
};
use crate::fan::Fan;
use crate::lp::{feasible, Constraint};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

/// A convex polytope given by its extreme points, possibly rational.
#[derive(Debug, Clone)]
pub struct Polytope {
    vertices: Vec<Vec<Rat>>,
    ambient_dim: usize,
    faces: OnceLock<FaceData>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.ambient_dim == other.ambient_dim
    }
}
impl Eq for Polytope {}

/// A face identified by its dimension and index within that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    pub dim: usize,
    pub idx: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: BTreeSet<usize>,
    pub dim: usize,
}

/// The graded poset of proper nonempty faces, dimensions `0..n`.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub by_dim: Vec<Vec<Face>>,
    pub polytope_dim: usize,
}

/// Supporting facet data: inner normal, offset, incident vertices.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: Rat,
    pub vertex_indices: BTreeSet<usize>,
}

#[derive(Debug, Clone)]
struct FaceData {
    facets: Vec<Facet>,
    lattice: FaceLattice,
}

/// A complete flag of faces, one per dimension `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub chain: Vec<FaceId>,
}

/// An orientation given by an ordered reference basis of the ambient lattice.
#[derive(Debug, Clone)]
pub struct Orientation {
    basis: IntMatrix,
    sign: i32,
}

impl Orientation {
    pub fn standard(n: usize) -> Self {
        Orientation {
            basis: IntMatrix::identity(n),
            sign: 1,
        }
    }

    pub fn from_basis(basis: IntMatrix) -> Result<Self> {
        let s = det_sign(&basis)?;
        if s == 0 {
            return Err(Error::MalformedInput(
                "orientation basis is singular".into(),
            ));
        }
        Ok(Orientation { basis, sign: s })
    }

    pub fn reversed(&self) -> Self {
        let mut rows: Vec<IntVector> = self.basis.rows().to_vec();
        if rows.len() >= 2 {
            rows.swap(0, 1);
        }
        Orientation {
            basis: IntMatrix::new(rows, self.basis.ncols()),
            sign: -self.sign,
        }
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }
}

impl Polytope {
    /// Build a polytope from a set of points, reducing to extreme points
    /// and fixing a canonical (lexicographic) vertex order.
    pub fn from_points(points: Vec<Vec<Rat>>, ambient_dim: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::DegeneratePolytope("no points given".into()));
        }
        for p in &points {
            if p.len() != ambient_dim {
                return Err(Error::MalformedInput(format!(
                    "point has dimension {}, expected {ambient_dim}",
                    p.len()
                )));
            }
        }
        let mut unique: Vec<Vec<Rat>> = Vec::new();
        for p in points {
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        let mut vertices: Vec<Vec<Rat>> = Vec::new();
        for (i, p) in unique.iter().enumerate() {
            let others: Vec<&Vec<Rat>> = unique
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q)
                .collect();
            if others.is_empty() || !in_convex_hull(p, &others) {
                vertices.push(p.clone());
            }
        }
        vertices.sort();
        Ok(Polytope {
            vertices,
            ambient_dim,
            faces: OnceLock::new(),
        })
    }

    pub fn from_lattice_points(points: Vec<IntVector>, ambient_dim: usize) -> Result<Self> {
        Self::from_points(points.iter().map(|p| p.to_rat()).collect(), ambient_dim)
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension of the affine span of the vertices.
    pub fn affine_dim(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        let v0 = &self.vertices[0];
        let dirs: Vec<Vec<Rat>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0.iter()).map(|(a, b)| a - b).collect())
            .collect();
        rat_rank(&dirs)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.ambient_dim
    }

    /// True when every vertex has integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(|c| c.is_integer()))
    }

    pub fn barycenter(&self) -> Vec<Rat> {
        barycenter_of(&self.vertices, &self.vertices.iter().collect::<Vec<_>>())
    }

    fn face_data(&self) -> Result<&FaceData> {
        if let Some(d) = self.faces.get() {
            return Ok(d);
        }
        let data = self.compute_face_data()?;
        Ok(self.faces.get_or_init(|| data))
    }

    fn compute_face_data(&self) -> Result<FaceData> {
        let n = self.ambient_dim;
        if !self.is_full_dimensional() {
            return Err(Error::DegeneratePolytope(format!(
                "affine dimension {} < ambient dimension {n}",
                self.affine_dim()
            )));
        }
        let facets = self.enumerate_facets()?;
        let lattice = close_faces(&facets, &self.vertices, n);
        Ok(FaceData { facets, lattice })
    }

    /// Supporting facets of a full-dimensional polytope, brute force over
    /// hyperplanes spanned by vertex subsets.
    fn enumerate_facets(&self) -> Result<Vec<Facet>> {
        let n = self.ambient_dim;
        let vs = &self.vertices;
        let mut seen: BTreeSet<IntVector> = BTreeSet::new();
        let mut facets: Vec<Facet> = Vec::new();
        for subset in subsets_of_size(vs.len(), n) {
            let base = &vs[subset[0]];
            let dirs: Vec<Vec<Rat>> = subset[1..]
                .iter()
                .map(|&i| vs[i].iter().zip(base.iter()).map(|(a, b)| a - b).collect())
                .collect();
            if rat_rank(&dirs) != n - 1 {
                continue;
            }
            let Some(normal) = hyperplane_normal(&dirs, n) else {
                continue;
            };
            let offset = dot_ri(base, &normal);
            let mut lo = false;
            let mut hi = false;
            for v in vs {
                let d = dot_ri(v, &normal);
                if d < offset {
                    lo = true;
                } else if d > offset {
                    hi = true;
                }
            }
            if lo && hi {
                continue; // not supporting
            }
            // Flip so the normal points inward (all vertices on the >= side).
            let (normal, offset) = if lo {
                (normal.neg(), -offset)
            } else {
                (normal, offset)
            };
            if !seen.insert(normal.clone()) {
                continue;
            }
            let vertex_indices: BTreeSet<usize> = vs
                .iter()
                .enumerate()
                .filter(|(_, v)| dot_ri(v, &normal) == offset)
                .map(|(i, _)| i)
                .collect();
            facets.push(Facet {
                normal,
                offset,
                vertex_indices,
            });
        }
        if facets.len() < n + 1 {
            return Err(Error::DegeneratePolytope(
                "fewer supporting facets than required for a bounded full-dimensional polytope"
                    .into(),
            ));
        }
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        Ok(facets)
    }

    pub fn facets(&self) -> Result<&[Facet]> {
        Ok(&self.face_data()?.facets)
    }

    /// The complete graded face poset, facets down to vertices.
    pub fn face_lattice(&self) -> Result<&FaceLattice> {
        Ok(&self.face_data()?.lattice)
    }

    pub fn face(&self, id: FaceId) -> Result<&Face> {
        Ok(&self.face_data()?.lattice.by_dim[id.dim][id.idx])
    }

    /// Rational barycenter of a face; always strictly inside its relative
    /// interior.
    pub fn face_barycenter(&self, id: FaceId) -> Result<Vec<Rat>> {
        let face = self.face(id)?;
        let pts: Vec<&Vec<Rat>> = face
            .vertex_indices
            .iter()
            .map(|&i| &self.vertices[i])
            .collect();
        Ok(barycenter_of(&self.vertices, &pts))
    }

    /// Indices (into `facets()`) of the facets containing the given face.
    pub fn facets_containing(&self, id: FaceId) -> Result<Vec<usize>> {
        let data = self.face_data()?;
        let face = &data.lattice.by_dim[id.dim][id.idx];
        Ok(data
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| face.vertex_indices.is_subset(&f.vertex_indices))
            .map(|(i, _)| i)
            .collect())
    }

    /// All complete flags, in deterministic lexicographic order.
    pub fn enumerate_flags(&self) -> Result<Vec<Flag>> {
        let lattice = self.face_lattice()?;
        let n = lattice.polytope_dim;
        let mut flags = Vec::new();
        let mut chain = Vec::with_capacity(n);
        fn extend(
            lattice: &FaceLattice,
            chain: &mut Vec<FaceId>,
            dim: usize,
            flags: &mut Vec<Flag>,
        ) {
            let n = lattice.polytope_dim;
            if dim == n {
                flags.push(Flag {
                    chain: chain.clone(),
                });
                return;
            }
            for (idx, face) in lattice.by_dim[dim].iter().enumerate() {
                if let Some(&prev) = chain.last() {
                    let prev_face = &lattice.by_dim[prev.dim][prev.idx];
                    if !prev_face.vertex_indices.is_subset(&face.vertex_indices) {
                        continue;
                    }
                }
                chain.push(FaceId { dim, idx });
                extend(lattice, chain, dim + 1, flags);
                chain.pop();
            }
        }
        extend(lattice, &mut chain, 0, &mut flags);
        Ok(flags)
    }

    /// Sign of a complete flag under the given orientation.
    ///
    /// The frame is built from barycenters: the i-th vector points from the
    /// flag's vertex strictly into the i-dimensional member, closing with a
    /// vector into the interior of the polytope itself.
    pub fn flag_sign(&self, orientation: &Orientation, flag: &Flag) -> Result<i32> {
        let n = self.ambient_dim;
        assert_eq!(flag.chain.len(), n, "flag must have one face per dimension");
        let base = self.face_barycenter(flag.chain[0])?;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for id in flag.chain.iter().skip(1) {
            let b = self.face_barycenter(*id)?;
            rows.push(b.iter().zip(base.iter()).map(|(a, c)| a - c).collect());
        }
        let top = self.barycenter();
        rows.push(top.iter().zip(base.iter()).map(|(a, c)| a - c).collect());
        Ok(rat_det_sign(&rows) * orientation.sign())
    }

    /// The normal fan: rays are primitive inner facet normals, and the
    /// maximal cone of a vertex collects the normals of its facets.
    pub fn normal_fan(&self) -> Result<NormalFan> {
        let n = self.ambient_dim;
        if n == 0 {
            return Ok(NormalFan {
                fan: Fan::trivial(),
                ray_of_facet: Vec::new(),
            });
        }
        let data = self.face_data()?;
        let rays: Vec<IntVector> = data.facets.iter().map(|f| f.normal.clone()).collect();
        let mut max_cones = Vec::new();
        for (vi, _) in self.vertices.iter().enumerate() {
            let cone: BTreeSet<usize> = data
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.vertex_indices.contains(&vi))
                .map(|(i, _)| i)
                .collect();
            max_cones.push(cone);
        }
        let fan = Fan::new(n, rays, max_cones)?;
        Ok(NormalFan {
            fan,
            ray_of_facet: (0..data.facets.len()).collect(),
        })
    }

    /// The polar polytope and the order-reversing face correspondence.
    ///
    /// Requires the origin strictly interior; the polar has one vertex per
    /// facet of the primal and `dim G* = n - 1 - dim G`.
    pub fn polar(&self) -> Result<PolarDual> {
        let n = self.ambient_dim;
        let data = self.face_data()?;
        for f in &data.facets {
            if !f.offset.is_negative() {
                return Err(Error::OriginNotInterior);
            }
        }
        let polar_vertices: Vec<Vec<Rat>> = data
            .facets
            .iter()
            .map(|f| {
                f.normal
                    .0
                    .iter()
                    .map(|c| Rat::from(c.clone()) / -f.offset.clone())
                    .collect()
            })
            .collect();
        let polar = Polytope::from_points(polar_vertices.clone(), n)?;
        if polar.num_vertices() != data.facets.len() {
            return Err(Error::InternalInconsistency(
                "polar vertex count does not match primal facet count".into(),
            ));
        }
        // Position of each primal facet's dual point in the polar's
        // canonical vertex order.
        let mut facet_to_polar_vertex = Vec::with_capacity(data.facets.len());
        for pv in &polar_vertices {
            let pos = polar
                .vertices
                .iter()
                .position(|v| v == pv)
                .expect("polar vertex present");
            facet_to_polar_vertex.push(pos);
        }
        // Face map: G (with facets F containing it) -> polar face with
        // vertex set {dual point of F}.
        let polar_lattice = polar.face_lattice()?.clone();
        let mut face_map = BTreeMap::new();
        let lattice = &data.lattice;
        for (d, faces) in lattice.by_dim.iter().enumerate() {
            for (idx, _) in faces.iter().enumerate() {
                let id = FaceId { dim: d, idx };
                let dual_set: BTreeSet<usize> = self
                    .facets_containing(id)?
                    .into_iter()
                    .map(|f| facet_to_polar_vertex[f])
                    .collect();
                let dual_dim = n - 1 - d;
                let dual_idx = polar_lattice.by_dim[dual_dim]
                    .iter()
                    .position(|f| f.vertex_indices == dual_set)
                    .ok_or_else(|| {
                        Error::InternalInconsistency(
                            "polar face correspondence failed to match a face".into(),
                        )
                    })?;
                face_map.insert(
                    id,
                    FaceId {
                        dim: dual_dim,
                        idx: dual_idx,
                    },
                );
            }
        }
        Ok(PolarDual {
            polytope: polar,
            face_map,
        })
    }

    /// All lattice points of the polytope, bounding-box scan with an exact
    /// membership test.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let n = self.ambient_dim;
        if n == 0 {
            return vec![IntVector(Vec::new())];
        }
        let mut lo = vec![BigInt::zero(); n];
        let mut hi = vec![BigInt::zero(); n];
        for d in 0..n {
            let mut min = self.vertices[0][d].clone();
            let mut max = min.clone();
            for v in &self.vertices {
                if v[d] < min {
                    min = v[d].clone();
                }
                if v[d] > max {
                    max = v[d].clone();
                }
            }
            lo[d] = min.floor().to_integer();
            hi[d] = max.ceil().to_integer();
        }
        let mut out = Vec::new();
        let mut current = lo.clone();
        loop {
            let point: Vec<Rat> = current.iter().map(|c| Rat::from(c.clone())).collect();
            if in_convex_hull(&point, &self.vertices.iter().collect::<Vec<_>>()) {
                out.push(IntVector(current.clone()));
            }
            let mut d = 0;
            loop {
                if d == n {
                    return out;
                }
                current[d] += 1;
                if current[d] <= hi[d] {
                    break;
                }
                current[d] = lo[d].clone();
                d += 1;
            }
        }
    }

    /// Exact membership test for a rational point.
    pub fn contains(&self, point: &[Rat]) -> bool {
        in_convex_hull(
            &point.to_vec(),
            &self.vertices.iter().collect::<Vec<_>>(),
        )
    }

    /// Minkowski sum; the normal fan of the result is the common
    /// refinement of the summands' normal fans.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut sums = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect());
            }
        }
        Polytope::from_points(sums, self.ambient_dim)
    }

    /// Translate by a rational vector.
    pub fn translate(&self, shift: &[Rat]) -> Polytope {
        assert_eq!(shift.len(), self.ambient_dim);
        Polytope {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(shift.iter()).map(|(a, b)| a + b).collect())
                .collect(),
            ambient_dim: self.ambient_dim,
            faces: OnceLock::new(),
        }
    }
}

/// The normal fan together with the facet-to-ray index correspondence.
#[derive(Debug, Clone)]
pub struct NormalFan {
    pub fan: Fan,
    pub ray_of_facet: Vec<usize>,
}

/// Polar polytope plus the order-reversing correspondence on proper faces.
#[derive(Debug, Clone)]
pub struct PolarDual {
    pub polytope: Polytope,
    pub face_map: BTreeMap<FaceId, FaceId>,
}

fn barycenter_of(_all: &[Vec<Rat>], pts: &[&Vec<Rat>]) -> Vec<Rat> {
    let n = pts[0].len();
    let count = Rat::from(BigInt::from(pts.len()));
    (0..n)
        .map(|d| pts.iter().map(|p| p[d].clone()).sum::<Rat>() / count.clone())
        .collect()
}

/// Is `p` in the convex hull of `points`? Exact LP feasibility.
fn in_convex_hull(p: &Vec<Rat>, points: &[&Vec<Rat>]) -> bool {
    let k = points.len();
    if k == 0 {
        return false;
    }
    let n = p.len();
    let mut cs = Vec::with_capacity(n + 1 + k);
    for d in 0..n {
        cs.push(Constraint::eq(
            points.iter().map(|q| q[d].clone()).collect(),
            p[d].clone(),
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

/// Primitive integer normal of the hyperplane spanned by the given
/// direction vectors, or `None` if the orthogonal complement is not a line.
fn hyperplane_normal(dirs: &[Vec<Rat>], n: usize) -> Option<IntVector> {
    // Integer kernel of the (scaled) direction matrix.
    let int_rows: Vec<IntVector> = dirs
        .iter()
        .map(|d| primitive_of_rat(d).expect("direction vectors are nonzero"))
        .collect();
    let m = IntMatrix::new(int_rows, n);
    let kernel = crate::exact::integer_kernel(&m);
    if kernel.len() != 1 {
        return None;
    }
    Some(crate::exact::primitive(&kernel[0]).expect("kernel generator is nonzero"))
}

fn close_faces(facets: &[Facet], vertices: &[Vec<Rat>], n: usize) -> FaceLattice {
    let mut sets: BTreeSet<BTreeSet<usize>> = facets
        .iter()
        .map(|f| f.vertex_indices.clone())
        .collect();
    loop {
        let snapshot: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        let before = sets.len();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let inter: BTreeSet<usize> = snapshot[i]
                    .intersection(&snapshot[j])
                    .cloned()
                    .collect();
                if !inter.is_empty() {
                    sets.insert(inter);
                }
            }
        }
        if sets.len() == before {
            break;
        }
    }
    let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); n];
    for set in sets {
        let pts: Vec<&Vec<Rat>> = set.iter().map(|&i| &vertices[i]).collect();
        let dim = affine_dim_of(&pts);
        debug_assert!(dim < n, "proper faces have dimension below the polytope");
        by_dim[dim].push(Face {
            vertex_indices: set,
            dim,
        });
    }
    for faces in by_dim.iter_mut() {
        faces.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));
    }
    FaceLattice {
        by_dim,
        polytope_dim: n,
    }
}

fn affine_dim_of(pts: &[&Vec<Rat>]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let base = pts[0];
    let dirs: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rat_rank(&dirs)
}

/// Sign of the determinant of a square rational matrix.
pub fn rat_det_sign(rows: &[Vec<Rat>]) -> i32 {
    let scaled: Vec<IntVector> = rows
        .iter()
        .map(|r| {
            let mut lcm = BigInt::one();
            for c in r {
                lcm = num_integer::Integer::lcm(&lcm, c.denom());
            }
            IntVector(r.iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
        })
        .collect();
    let m = IntMatrix::new(scaled, rows.len());
    det_sign(&m).expect("square by construction")
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Iterate all subsets (as sorted index vectors) of `{0..n}` of any size
/// from `min_size` to `max_size`.
pub(crate) fn subsets_between(n: usize, min_size: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in min_size..=max_size.min(n) {
        out.extend(subsets_of_size(n, k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    pub(crate) fn lattice_polytope(coords: &[&[i64]]) -> Polytope {
        let dim = coords[0].len();
        Polytope::from_lattice_points(
            coords.iter().map(|c| IntVector::from_i64(c)).collect(),
            dim,
        )
        .unwrap()
    }

    #[test]
    fn segment_face_lattice() {
        let p = lattice_polytope(&[&[0], &[1]]);
        let l = p.face_lattice().unwrap();
        assert_eq!(l.by_dim.len(), 1);
        assert_eq!(l.by_dim[0].len(), 2);
    }

    #[test]
    fn square_face_lattice() {
        let p = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let l = p.face_lattice().unwrap();
        assert_eq!(l.by_dim[0].len(), 4);
        assert_eq!(l.by_dim[1].len(), 4);
    }

    #[test]
    fn cube_f_vector() {
        let mut pts = Vec::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let p = lattice_polytope(&pts.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
        let l = p.face_lattice().unwrap();
        assert_eq!(l.by_dim[0].len(), 8);
        assert_eq!(l.by_dim[1].len(), 12);
        assert_eq!(l.by_dim[2].len(), 6);
    }

    #[test]
    fn degenerate_polytope_rejected() {
        let p = lattice_polytope(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert!(matches!(
            p.face_lattice(),
            Err(Error::DegeneratePolytope(_))
        ));
    }

    #[test]
    fn redundant_points_dropped() {
        let p = lattice_polytope(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[1, 0]]);
        // (1,1) is on the hypotenuse, (1,0) on the bottom edge.
        assert_eq!(p.num_vertices(), 3);
    }

    #[test]
    fn square_normal_fan() {
        let p = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let nf = p.normal_fan().unwrap();
        let mut rays: Vec<Vec<i64>> = nf
            .fan
            .rays()
            .iter()
            .map(|r| r.0.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        rays.sort();
        assert_eq!(
            rays,
            vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
        );
        assert_eq!(nf.fan.max_cones().len(), 4);
    }

    #[test]
    fn triangle_normal_fan() {
        let p = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1]]);
        let nf = p.normal_fan().unwrap();
        let mut rays: Vec<Vec<i64>> = nf
            .fan
            .rays()
            .iter()
            .map(|r| r.0.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, -1], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn segment_normal_fan() {
        let p = lattice_polytope(&[&[0], &[1]]);
        let nf = p.normal_fan().unwrap();
        let mut rays: Vec<i64> = nf
            .fan
            .rays()
            .iter()
            .map(|r| i64::try_from(&r.0[0]).unwrap())
            .collect();
        rays.sort();
        assert_eq!(rays, vec![-1, 1]);
    }

    #[test]
    fn flag_counts() {
        let square = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(square.enumerate_flags().unwrap().len(), 8);
        let triangle = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(triangle.enumerate_flags().unwrap().len(), 6);
        let mut pts = Vec::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let cube = lattice_polytope(&pts.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
        assert_eq!(cube.enumerate_flags().unwrap().len(), 48);
    }

    #[test]
    fn flag_sign_simplex_and_reversal() {
        // Standard 2-simplex; flag (vertex (0,0) c edge to (1,0)).
        let p = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1]]);
        let l = p.face_lattice().unwrap();
        let v_idx = l.by_dim[0]
            .iter()
            .position(|f| {
                let i = *f.vertex_indices.iter().next().unwrap();
                p.vertices()[i] == vec![rat(0, 1), rat(0, 1)]
            })
            .unwrap();
        let vertex_set: BTreeSet<usize> = l.by_dim[0][v_idx].vertex_indices.clone();
        let e_idx = l.by_dim[1]
            .iter()
            .position(|f| {
                vertex_set.is_subset(&f.vertex_indices)
                    && f.vertex_indices.iter().any(|&i| {
                        p.vertices()[i] == vec![rat(1, 1), rat(0, 1)]
                    })
            })
            .unwrap();
        let flag = Flag {
            chain: vec![
                FaceId { dim: 0, idx: v_idx },
                FaceId { dim: 1, idx: e_idx },
            ],
        };
        let std = Orientation::standard(2);
        assert_eq!(p.flag_sign(&std, &flag).unwrap(), 1);
        assert_eq!(p.flag_sign(&std.reversed(), &flag).unwrap(), -1);
    }

    #[test]
    fn flag_signs_sum_to_zero() {
        let square = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let std = Orientation::standard(2);
        let total: i32 = square
            .enumerate_flags()
            .unwrap()
            .iter()
            .map(|f| square.flag_sign(&std, f).unwrap())
            .sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn polar_of_square_is_cross() {
        let p = lattice_polytope(&[&[-1, -1], &[1, -1], &[-1, 1], &[1, 1]]);
        let dual = p.polar().unwrap();
        let mut vs: Vec<Vec<Rat>> = dual.polytope.vertices().to_vec();
        vs.sort();
        let expected: Vec<Vec<Rat>> = vec![
            vec![rat(-1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(-1, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(0, 1)],
        ];
        assert_eq!(vs, expected);
        // Double polar returns the square.
        let back = dual.polytope.polar().unwrap();
        assert_eq!(back.polytope.vertices(), p.vertices());
    }

    #[test]
    fn polar_requires_interior_origin() {
        let p = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(p.polar(), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn polar_face_counts_reverse() {
        let p = lattice_polytope(&[&[-1, -1], &[1, -1], &[-1, 1], &[1, 1]]);
        let dual = p.polar().unwrap();
        let l = p.face_lattice().unwrap();
        let lp = dual.polytope.face_lattice().unwrap();
        for d in 0..2 {
            assert_eq!(l.by_dim[d].len(), lp.by_dim[1 - d].len());
        }
        for (src, dst) in &dual.face_map {
            assert_eq!(dst.dim, 1 - src.dim);
        }
    }

    #[test]
    fn lattice_point_counts() {
        let square = lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(square.lattice_points().len(), 4);
        let twice_simplex = lattice_polytope(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(twice_simplex.lattice_points().len(), 6);
        let seg = lattice_polytope(&[&[0], &[3]]);
        assert_eq!(seg.lattice_points().len(), 4);
    }

    #[test]
    fn minkowski_square_from_segments() {
        let sx = lattice_polytope(&[&[0, 0], &[1, 0]]);
        let sy = lattice_polytope(&[&[0, 0], &[0, 1]]);
        let sum = sx.minkowski_sum(&sy).unwrap();
        assert_eq!(sum.num_vertices(), 4);
    }
}

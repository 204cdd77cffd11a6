//! Exact integer and rational linear algebra.
//!
//! Everything downstream (polytopes, fans, degrees) is built on the types
//! and routines here. All arithmetic is arbitrary precision; floating point
//! is banned library-wide because the quantities we ultimately compute are
//! integers (signs, degree counts) and any rounding corrupts them.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Convenience constructor for a `BigInt`.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Convenience constructor for a `BigRational`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// A lattice vector with arbitrary-precision integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(pub Vec<Int>);

impl IntVector {
    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![Int::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        assert_eq!(self.dim(), other.dim(), "dot product dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        assert_eq!(self.dim(), other.dim());
        IntVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|c| Rat::from(c.clone())).collect()
    }
}

/// A matrix of lattice vectors; rows all share the same dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    cols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<IntVector>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.dim(), cols, "row width mismatch");
        }
        IntMatrix { rows, cols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::new(rows.iter().map(|r| IntVector::from_i64(r)).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![Int::zero(); n];
                v[i] = Int::one();
                IntVector(v)
            })
            .collect();
        IntMatrix { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.rows[r].0[c]
    }

    /// Matrix-vector product over the integers.
    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        IntVector(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    /// Matrix-vector product with a rational vector.
    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|r| {
                r.0.iter()
                    .zip(v.iter())
                    .map(|(a, b)| Rat::from(a.clone()) * b)
                    .sum()
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.cols)
            .map(|c| IntVector(self.rows.iter().map(|r| r.0[c].clone()).collect()))
            .collect();
        IntMatrix {
            rows,
            cols: self.nrows(),
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rat_rank(&self.rows.iter().map(|r| r.to_rat()).collect::<Vec<_>>())
    }
}

/// Sign of the determinant of a square matrix, computed exactly by
/// fraction-free elimination.
pub fn det_sign(m: &IntMatrix) -> Result<i32> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(sign_of(&det(m)))
}

pub(crate) fn sign_of(x: &Int) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact determinant via Bareiss fraction-free elimination.
pub fn det(m: &IntMatrix) -> Int {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of non-square matrix");
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.rows.iter().map(|r| r.0.clone()).collect();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Divide a nonzero vector by the gcd of its entries, preserving signs.
pub fn primitive(v: &IntVector) -> Result<IntVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut g = Int::zero();
    for c in &v.0 {
        g = g.gcd(c);
    }
    Ok(IntVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Clear denominators of a rational vector and reduce to a primitive
/// integer vector pointing the same way.
pub fn primitive_of_rat(v: &[Rat]) -> Result<IntVector> {
    let mut lcm = Int::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints = IntVector(v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
    primitive(&ints)
}

/// Row-style Hermite normal form.
///
/// Returns `(h, p)` with `h = p * a`, `p` unimodular, `h` in row echelon
/// form with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Pivot rows are chosen by minimal absolute value.
pub fn row_hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.nrows();
    let n = a.ncols();
    let mut h: Vec<Vec<Int>> = a.rows.iter().map(|r| r.0.clone()).collect();
    let mut p: Vec<Vec<Int>> = (0..m)
        .map(|i| {
            let mut r = vec![Int::zero(); m];
            r[i] = Int::one();
            r
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row >= m {
            break;
        }
        // Euclidean reduction in this column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m {
                if !h[r][col].is_zero()
                    && best.is_none_or(|b| h[r][col].abs() < h[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot_row, b);
            p.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = div_round(&h[r][col], &h[pivot_row][col]);
                for c in 0..n {
                    let s = &q * &h[pivot_row][c];
                    h[r][c] -= s;
                }
                for c in 0..m {
                    let s = &q * &p[pivot_row][c];
                    p[r][c] -= s;
                }
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[pivot_row][col].is_zero() {
            continue;
        }
        if h[pivot_row][col].is_negative() {
            for c in 0..n {
                h[pivot_row][c] = -h[pivot_row][c].clone();
            }
            for c in 0..m {
                p[pivot_row][c] = -p[pivot_row][c].clone();
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        for r in 0..pivot_row {
            let q = h[r][col].div_floor(&h[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            for c in 0..n {
                let s = &q * &h[pivot_row][c];
                h[r][c] -= s;
            }
            for c in 0..m {
                let s = &q * &p[pivot_row][c];
                p[r][c] -= s;
            }
        }
        pivot_row += 1;
    }
    let cols_p = m;
    (
        IntMatrix::new(h.into_iter().map(IntVector).collect(), n),
        IntMatrix::new(p.into_iter().map(IntVector).collect(), cols_p),
    )
}

/// Quotient rounded toward the nearest integer; keeps coefficients small
/// during Hermite reduction.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    if (&r * 2u8).abs() > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Smith normal form: returns `(d, p, q)` with `p * a * q = d`, `p` and `q`
/// unimodular and `d` diagonal with each diagonal entry dividing the next.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let m = a.nrows();
    let n = a.ncols();
    let mut d: Vec<Vec<Int>> = a.rows.iter().map(|r| r.0.clone()).collect();
    let mut p: Vec<Vec<Int>> = identity_vec(m);
    let mut q: Vec<Vec<Int>> = identity_vec(n);

    let mut t = 0;
    while t < m && t < n {
        // Find a nonzero pivot of minimal absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        p.swap(t, bi);
        swap_cols(&mut d, t, bj);
        swap_cols(&mut q, t, bj);

        let mut clean = true;
        for i in t + 1..m {
            if d[i][t].is_zero() {
                continue;
            }
            let f = div_round(&d[i][t], &d[t][t]);
            row_sub(&mut d, i, t, &f);
            row_sub(&mut p, i, t, &f);
            if !d[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if d[t][j].is_zero() {
                continue;
            }
            let f = div_round(&d[t][j], &d[t][t]);
            col_sub(&mut d, j, t, &f);
            col_sub(&mut q, j, t, &f);
            if !d[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Pivot must divide every remaining entry; if not, fold the
        // offending row in and repeat.
        let mut offender = None;
        'scan: for i in t + 1..m {
            for j in t + 1..n {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = Int::one();
            for c in 0..n {
                let add = d[i][c].clone() * &one;
                d[t][c] += add;
            }
            for c in 0..m {
                let add = p[i][c].clone() * &one;
                p[t][c] += add;
            }
            continue;
        }
        if d[t][t].is_negative() {
            for c in 0..n {
                d[t][c] = -d[t][c].clone();
            }
            for c in 0..m {
                p[t][c] = -p[t][c].clone();
            }
        }
        t += 1;
    }
    (
        IntMatrix::new(d.into_iter().map(IntVector).collect(), n),
        IntMatrix::new(p.into_iter().map(IntVector).collect(), m),
        IntMatrix::new(q.into_iter().map(IntVector).collect(), n),
    )
}

fn identity_vec(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut r = vec![Int::zero(); n];
            r[i] = Int::one();
            r
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn row_sub(m: &mut [Vec<Int>], target: usize, source: usize, factor: &Int) {
    for c in 0..m[target].len() {
        let s = factor * &m[source][c];
        m[target][c] -= s;
    }
}

fn col_sub(m: &mut [Vec<Int>], target: usize, source: usize, factor: &Int) {
    for row in m.iter_mut() {
        let s = factor * &row[source];
        row[target] -= s;
    }
}

/// Outcome of an exact linear solve `a x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// An integer solution exists; one is returned.
    Integral(IntVector),
    /// A rational solution exists but no integral one does.
    RationalOnly(Vec<Rat>),
    /// The system is inconsistent even over the rationals.
    NoSolution,
}

/// Solve `a x = b` exactly, reporting whether an integral solution exists.
///
/// Works for any shape of `a`; under- and over-determined systems are
/// handled through the Smith normal form.
pub fn solve_linear_exact(a: &IntMatrix, b: &IntVector) -> LinearSolution {
    assert_eq!(a.nrows(), b.dim(), "right-hand side length mismatch");
    let (d, p, q) = snf(a);
    let pb = p.mul_vec(b);
    let m = a.nrows();
    let n = a.ncols();
    let rank = (0..m.min(n)).take_while(|&i| !d.at(i, i).is_zero()).count();
    for i in rank..m {
        if !pb.0[i].is_zero() {
            return LinearSolution::NoSolution;
        }
    }
    let mut z_rat = vec![Rat::zero(); n];
    let mut integral = true;
    for i in 0..rank {
        let di = d.at(i, i);
        if !(&pb.0[i] % di).is_zero() {
            integral = false;
        }
        z_rat[i] = Rat::new(pb.0[i].clone(), di.clone());
    }
    let x_rat = q.mul_rat_vec(&z_rat);
    if integral {
        let x = IntVector(
            x_rat
                .iter()
                .map(|c| {
                    debug_assert!(c.is_integer());
                    c.numer().clone()
                })
                .collect(),
        );
        LinearSolution::Integral(x)
    } else {
        LinearSolution::RationalOnly(x_rat)
    }
}

/// A surjection from the ambient lattice onto the quotient by the
/// saturation of a spanning set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    pub matrix: IntMatrix,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl QuotientMap {
    pub fn identity(n: usize) -> Self {
        QuotientMap {
            matrix: IntMatrix::identity(n),
            source_dim: n,
            target_dim: n,
        }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.matrix.mul_vec(v)
    }

    /// An integer right inverse: `apply(section(y)) = y` for all `y`.
    pub fn section(&self) -> IntMatrix {
        let mut cols: Vec<IntVector> = Vec::with_capacity(self.target_dim);
        for j in 0..self.target_dim {
            let mut e = IntVector::zero(self.target_dim);
            e.0[j] = Int::one();
            match solve_linear_exact(&self.matrix, &e) {
                LinearSolution::Integral(x) => cols.push(x),
                _ => unreachable!("quotient map is surjective; section must exist"),
            }
        }
        // Assemble columns into an n x m matrix.
        let n = self.source_dim;
        let rows = (0..n)
            .map(|i| IntVector(cols.iter().map(|c| c.0[i].clone()).collect()))
            .collect();
        IntMatrix::new(rows, self.target_dim)
    }
}

/// The surjection `Z^n -> Z^n / sat(span)` for a list of spanning vectors.
///
/// The target is a genuine lattice of rank `n - dim(span)`: the kernel is
/// the saturation of the span, so the quotient is torsion free. The result
/// is canonicalized by Hermite reduction so equal quotients compare equal.
pub fn quotient_lattice(spanning: &[IntVector], ambient_dim: usize) -> QuotientMap {
    for v in spanning {
        assert_eq!(v.dim(), ambient_dim, "spanning vector dimension mismatch");
    }
    // Columns of `a` are the spanning vectors.
    let a_rows: Vec<IntVector> = (0..ambient_dim)
        .map(|i| IntVector(spanning.iter().map(|v| v.0[i].clone()).collect()))
        .collect();
    let a = IntMatrix::new(a_rows, spanning.len());
    let (h, p) = row_hnf(&a);
    let rank = (0..h.nrows())
        .take_while(|&i| h.rows()[i].0.iter().any(|c| !c.is_zero()))
        .count();
    let target_dim = ambient_dim - rank;
    // The last rows of p annihilate the spanning set and form a surjection
    // onto the quotient; Hermite-reduce them for a canonical representative.
    let q_rows: Vec<IntVector> = p.rows()[rank..].to_vec();
    let q = IntMatrix::new(q_rows, ambient_dim);
    let (canon, _) = row_hnf(&q);
    QuotientMap {
        matrix: canon,
        source_dim: ambient_dim,
        target_dim,
    }
}

/// Basis of the integer kernel `{x : a x = 0}`; always a saturated lattice.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVector> {
    let n = a.ncols();
    let (d, _, q) = snf(a);
    let rank = (0..a.nrows().min(n))
        .take_while(|&i| !d.at(i, i).is_zero())
        .count();
    // Kernel is spanned by the last n - rank columns of q.
    (rank..n)
        .map(|j| IntVector(a_col(&q, j)))
        .collect()
}

fn a_col(m: &IntMatrix, j: usize) -> Vec<Int> {
    m.rows().iter().map(|r| r.0[j].clone()).collect()
}

/// Rank of a rational matrix given as rows.
pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].clone();
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &inv;
            for c in col..n {
                let s = &f * &m[rank][c];
                m[r][c] -= s;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solve a square rational system `m x = c` by Gaussian elimination.
/// Returns `None` when the matrix is singular.
pub fn solve_rat_square(m: &[Vec<Rat>], c: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    assert_eq!(c.len(), n);
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(c.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for i in 0..n {
        let piv = (i..n).find(|&r| !a[r][i].is_zero())?;
        a.swap(i, piv);
        let inv = a[i][i].clone();
        for j in i..=n {
            a[i][j] = &a[i][j] / &inv;
        }
        for r in 0..n {
            if r == i || a[r][i].is_zero() {
                continue;
            }
            let f = a[r][i].clone();
            for j in i..=n {
                let s = &f * &a[i][j];
                a[r][j] -= s;
            }
        }
    }
    Some(a.iter().map(|r| r[n].clone()).collect())
}

/// Dot product of a rational vector with an integer vector.
pub fn dot_ri(a: &[Rat], b: &IntVector) -> Rat {
    assert_eq!(a.len(), b.dim());
    a.iter()
        .zip(b.0.iter())
        .map(|(x, y)| x * Rat::from(y.clone()))
        .sum()
}

/// Dot product of two rational vectors.
pub fn dot_rr(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_sign_identity_and_swap() {
        let id = IntMatrix::identity(3);
        assert_eq!(det_sign(&id).unwrap(), 1);
        let swapped = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(det_sign(&swapped).unwrap(), -1);
        let singular = IntMatrix::from_i64(&[&[1, 2], &[1, 2]]);
        assert_eq!(det_sign(&singular).unwrap(), 0);
    }

    #[test]
    fn det_sign_rejects_non_square() {
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(det_sign(&m), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn det_values() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(det(&m), int(6));
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(det(&m), int(-3));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(
            primitive(&IntVector::from_i64(&[2, -4])).unwrap(),
            IntVector::from_i64(&[1, -2])
        );
        assert_eq!(
            primitive(&IntVector::from_i64(&[1, 0, 0])).unwrap(),
            IntVector::from_i64(&[1, 0, 0])
        );
        assert_eq!(
            primitive(&IntVector::from_i64(&[-3, -3])).unwrap(),
            IntVector::from_i64(&[-1, -1])
        );
        assert!(matches!(
            primitive(&IntVector::from_i64(&[0, 0])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn hnf_reconstructs() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (h, p) = row_hnf(&a);
        // h = p * a
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Int::zero();
                for k in 0..3 {
                    s += p.at(i, k) * a.at(k, j);
                }
                assert_eq!(&s, h.at(i, j));
            }
        }
        // p unimodular
        assert_eq!(det(&p).abs(), Int::one());
    }

    #[test]
    fn snf_reconstructs_and_divides() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (d, p, q) = snf(&a);
        assert_eq!(det(&p).abs(), Int::one());
        assert_eq!(det(&q).abs(), Int::one());
        // p * a * q = d
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Int::zero();
                for k in 0..3 {
                    for l in 0..3 {
                        s += p.at(i, k) * a.at(k, l) * q.at(l, j);
                    }
                }
                assert_eq!(&s, d.at(i, j), "entry ({i},{j})");
            }
        }
        // Divisibility chain on the diagonal.
        for i in 0..2 {
            if !d.at(i + 1, i + 1).is_zero() {
                assert!((d.at(i + 1, i + 1) % d.at(i, i)).is_zero());
            }
        }
    }

    #[test]
    fn quotient_of_empty_span_is_identity() {
        let q = quotient_lattice(&[], 2);
        assert_eq!(q.matrix, IntMatrix::identity(2));
        assert_eq!(q.target_dim, 2);
    }

    #[test]
    fn quotient_by_e1_is_second_coordinate() {
        let q = quotient_lattice(&[IntVector::from_i64(&[1, 0])], 2);
        assert_eq!(q.target_dim, 1);
        assert_eq!(q.matrix, IntMatrix::from_i64(&[&[0, 1]]));
    }

    #[test]
    fn quotient_by_full_span_is_zero_map() {
        let q = quotient_lattice(
            &[IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[0, 1])],
            2,
        );
        assert_eq!(q.target_dim, 0);
        assert_eq!(q.matrix.nrows(), 0);
    }

    #[test]
    fn quotient_annihilates_spanning_set() {
        let spanning = vec![
            IntVector::from_i64(&[2, 4, 6]),
            IntVector::from_i64(&[1, 1, 1]),
        ];
        let q = quotient_lattice(&spanning, 3);
        assert_eq!(q.target_dim, 1);
        for v in &spanning {
            assert!(q.apply(v).is_zero());
        }
        // Saturation: (3, 5, 7) = half of (2,4,6)+(4,6,8)? check a lattice
        // point of the real span that is not an integer combination.
        // span contains (1, 3, 5) = (2,4,6) - (1,1,1); and (3,5,7) =
        // (2,4,6) + (1,1,1); both must map to zero.
        assert!(q.apply(&IntVector::from_i64(&[1, 3, 5])).is_zero());
        let s = q.section();
        // q . s = identity on the target
        let composed = IntMatrix::new(
            q.matrix
                .rows()
                .iter()
                .map(|r| {
                    IntVector(
                        (0..q.target_dim)
                            .map(|j| {
                                (0..q.source_dim).map(|k| r.0[k].clone() * s.at(k, j)).sum()
                            })
                            .collect(),
                    )
                })
                .collect(),
            q.target_dim,
        );
        assert_eq!(composed, IntMatrix::identity(1));
    }

    #[test]
    fn solve_identity() {
        let a = IntMatrix::identity(2);
        let b = IntVector::from_i64(&[1, 2]);
        assert_eq!(
            solve_linear_exact(&a, &b),
            LinearSolution::Integral(IntVector::from_i64(&[1, 2]))
        );
    }

    #[test]
    fn solve_inconsistent() {
        let a = IntMatrix::from_i64(&[&[1, 0], &[1, 0]]);
        let b = IntVector::from_i64(&[0, 1]);
        assert_eq!(solve_linear_exact(&a, &b), LinearSolution::NoSolution);
    }

    #[test]
    fn solve_rational_only() {
        // Rows (1,0) and (-1,-2) with rhs (0,-1): solution (0, 1/2).
        let a = IntMatrix::from_i64(&[&[1, 0], &[-1, -2]]);
        let b = IntVector::from_i64(&[0, -1]);
        match solve_linear_exact(&a, &b) {
            LinearSolution::RationalOnly(x) => {
                assert_eq!(x, vec![rat(0, 1), rat(1, 2)]);
            }
            other => panic!("expected rational-only solution, got {other:?}"),
        }
    }

    #[test]
    fn kernel_of_sum_row() {
        let a = IntMatrix::from_i64(&[&[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).is_zero());
        }
    }
}

//! Exact integer and rational arithmetic: integer vectors and matrices,
//! Hermite normal form, unimodular inverses, primitive vectors, lattice
//! indices, and the small amount of rational linear algebra the polyhedral
//! code needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Integer vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zero(n: usize) -> Self {
        IntVector(vec![BigInt::zero(); n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn dot_u32(&self, exps: &[u32]) -> BigInt {
        debug_assert_eq!(self.len(), exps.len());
        self.0
            .iter()
            .zip(exps)
            .fold(BigInt::zero(), |acc, (a, &b)| acc + a * BigInt::from(b))
    }

    pub fn scaled(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    /// Gcd of the entries (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(JsonInt))
    }
}

/// Serializes an integer as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise, so no value is ever rounded.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let vecs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64(r)).collect();
        Self::from_rows(&vecs)
    }

    pub fn from_rows(rows: &[IntVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, IntVector::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::shape("rows of unequal length"));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.0.iter().cloned()).collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[IntVector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &IntVector) -> Result<IntVector> {
        if v.len() != self.cols {
            return Err(Error::shape("vector length does not match matrix columns"));
        }
        Ok(IntVector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &v.0[j])
                })
                .collect(),
        ))
    }

    /// Permutes columns: column `j` of the result is column `order[j]` of `self`.
    pub fn permute_columns(&self, order: &[usize]) -> IntMatrix {
        let cols: Vec<IntVector> = order.iter().map(|&j| self.column(j)).collect();
        IntMatrix::from_columns(&cols).expect("columns share a length")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(target, j) - q * self.get(source, j);
            self.set(target, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::shape("determinant of a non-square matrix"));
        }
        Ok(bareiss_determinant(
            (0..self.rows).map(|i| self.row(i).0).collect::<Vec<_>>(),
        ))
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.row_vectors())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.row_vectors())
    }
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Hermite normal form `H = U·A` with `U` unimodular.
///
/// `H` is in row echelon form; each pivot is positive and the entries above
/// a pivot lie in `[0, pivot)`. The pivot of each column is chosen as the
/// nonzero entry of least absolute value.
pub fn hermite_normal_form(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if a.rows == 0 || a.cols == 0 {
        return Err(Error::shape("hermite normal form of an empty matrix"));
    }
    let m = a.rows;
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pr = 0;
    for col in 0..a.cols {
        if pr == m {
            break;
        }
        let mut has_pivot = false;
        loop {
            let best = (pr..m)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&i, &j| {
                    h.get(i, col)
                        .abs()
                        .cmp(&h.get(j, col).abs())
                        .then(i.cmp(&j))
                });
            let Some(best) = best else { break };
            has_pivot = true;
            h.swap_rows(pr, best);
            u.swap_rows(pr, best);
            let mut clean = true;
            for i in pr + 1..m {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col).div_floor(h.get(pr, col));
                h.sub_row_multiple(i, pr, &q);
                u.sub_row_multiple(i, pr, &q);
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if h.get(pr, col).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let p = h.get(pr, col).clone();
        for i in 0..pr {
            let q = h.get(i, col).div_floor(&p);
            if !q.is_zero() {
                h.sub_row_multiple(i, pr, &q);
                u.sub_row_multiple(i, pr, &q);
            }
        }
        pr += 1;
    }
    Ok((h, u))
}

/// True iff `|det M| = 1`.
pub fn is_unimodular(m: &IntMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::shape("unimodularity test needs a square matrix"));
    }
    Ok(m.determinant()?.abs().is_one())
}

/// Integer inverse of a unimodular matrix.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    if !is_unimodular(m)? {
        return Err(Error::domain(format!("matrix {m} is not unimodular")));
    }
    // For unimodular input the Hermite form is the identity, so U = M^-1.
    let (h, u) = hermite_normal_form(m)?;
    if !h.is_identity() {
        return Err(Error::Internal(
            "HNF of a unimodular matrix is not the identity".into(),
        ));
    }
    Ok(u)
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &IntVector) -> Result<IntVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::domain("primitive vector of the zero vector"));
    }
    Ok(IntVector(v.0.iter().map(|a| a / &g).collect()))
}

/// Index of the group generated by `generators` inside the lattice points of
/// their rational span: the gcd of the maximal minors.
pub fn lattice_index(generators: &[IntVector]) -> Result<BigInt> {
    let k = generators.len();
    if k == 0 {
        return Ok(BigInt::one());
    }
    let n = generators[0].len();
    if generators.iter().any(|g| g.len() != n) {
        return Err(Error::shape("generators of unequal length"));
    }
    if rank_of_rows(generators) != k {
        return Err(Error::domain("generators are linearly dependent"));
    }
    let mut g = BigInt::zero();
    for cols in combinations(n, k) {
        let minor: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|v| cols.iter().map(|&j| v.0[j].clone()).collect())
            .collect();
        g = g.gcd(&bareiss_determinant(minor));
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// ℤ-basis of `{x ∈ ℤⁿ : A x = 0}` for `A` given by its rows.
pub fn integer_kernel(rows: &[IntVector], n: usize) -> Result<Vec<IntVector>> {
    if rows.is_empty() {
        return Ok((0..n).map(|i| IntVector::unit(n, i)).collect());
    }
    // U·Aᵗ = H; rows of U matching zero rows of H span the left kernel of Aᵗ.
    let at = IntMatrix::from_rows(rows)?.transpose();
    let (h, u) = hermite_normal_form(&at)?;
    Ok((0..h.rows)
        .filter(|&i| h.row(i).is_zero())
        .map(|i| u.row(i))
        .collect())
}

/// ℤ-basis of the saturated lattice `span_ℚ(rows) ∩ ℤⁿ`.
pub fn saturated_basis(rows: &[IntVector], n: usize) -> Result<Vec<IntVector>> {
    let complement = integer_kernel(rows, n)?;
    integer_kernel(&complement, n)
}

pub(crate) fn to_rational_rows(rows: &[IntVector]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| {
            r.0.iter()
                .map(|a| Rational::from_integer(a.clone()))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form over ℚ; returns the nonzero rows and pivot columns.
pub(crate) fn rref(mut m: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_of_rows(rows: &[IntVector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(to_rational_rows(rows)).1.len()
}

/// Clears denominators of a rational vector and makes it primitive.
pub(crate) fn primitive_from_rational(v: &[Rational]) -> IntVector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let iv = IntVector(ints);
    primitive(&iv).unwrap_or(iv)
}

/// Canonical primitive integer basis of the rational row space (from the RREF).
pub fn canonical_row_space(rows: &[IntVector]) -> Vec<IntVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, _) = rref(to_rational_rows(rows));
    r.iter().map(|row| primitive_from_rational(row)).collect()
}

/// Canonical primitive integer basis of the orthogonal complement of the row space.
pub fn orthogonal_complement(rows: &[IntVector], n: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return (0..n).map(|i| IntVector::unit(n, i)).collect();
    }
    let (r, pivots) = rref(to_rational_rows(rows));
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<IntVector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            primitive_from_rational(&v)
        })
        .collect();
    canonical_row_space(&basis)
}

/// Orthogonal projection of `v` onto the complement of span(`basis`), made primitive.
/// Returns `None` when the projection vanishes.
pub(crate) fn project_out(v: &IntVector, basis: &[IntVector]) -> Option<IntVector> {
    if basis.is_empty() {
        return primitive(v).ok();
    }
    let k = basis.len();
    let n = v.len();
    // Solve (B Bᵗ) c = B v, projection = v - Bᵗ c.
    let mut gram: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rational> = (0..k)
                .map(|j| Rational::from_integer(basis[i].dot(&basis[j])))
                .collect();
            row.push(Rational::from_integer(basis[i].dot(v)));
            row
        })
        .collect();
    gram = rref(gram).0;
    let coeffs: Vec<Rational> = (0..k).map(|i| gram[i][k].clone()).collect();
    let proj: Vec<Rational> = (0..n)
        .map(|j| {
            let mut x = Rational::from_integer(v.0[j].clone());
            for (c, b) in coeffs.iter().zip(basis) {
                x -= c * Rational::from_integer(b.0[j].clone());
            }
            x
        })
        .collect();
    if proj.iter().all(Zero::is_zero) {
        None
    } else {
        Some(primitive_from_rational(&proj))
    }
}

/// Solves `x · A = b` for a row vector `x`, where `A` has full row rank.
/// Returns `None` when `b` is not in the row space.
pub(crate) fn solve_row_combination(a: &[IntVector], b: &IntVector) -> Option<Vec<Rational>> {
    let k = a.len();
    let n = b.len();
    // Columns of the augmented system: unknowns x_0..x_{k-1}; n equations.
    let system: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = a
                .iter()
                .map(|r| Rational::from_integer(r.0[j].clone()))
                .collect();
            row.push(Rational::from_integer(b.0[j].clone()));
            row
        })
        .collect();
    let (r, pivots) = rref(system);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

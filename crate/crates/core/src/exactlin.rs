//! Exact rational scalars and the dense linear/tensor algebra everything
//! else computes with.
//!
//! All arithmetic is over arbitrary-precision rationals; there is no rounding
//! anywhere, so matrix equality is meaningful as an identity check. Tensor
//! products of maps use one fixed convention throughout the crate: row-major
//! Kronecker with the left factor major, i.e. the basis vector `e_i (x) e_k`
//! of `A (x) B` has index `i * dim(B) + k`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// The ground field: arbitrary-precision rationals in canonical form
/// (reduced, positive denominator).
pub type Rational = BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d` in canonical form. Panics on `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`, sign on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational, LinError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| LinError::BadRational(s.to_string()))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("tensor factor list is empty")]
    EmptyDims,
    #[error("permutation is not a bijection on the factor positions")]
    BadPermutation,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has no unique solution")]
    NotUnique,
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("entry list has length {got}, expected {rows}x{cols}={want}")]
    BadEntryCount { rows: usize, cols: usize, got: usize, want: usize },
}

/// Dense row-major matrix over [`Rational`].
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        assert!(!rows.is_empty(), "from_rows: no rows");
        let nrows = rows.len();
        let cols = rows[0].len();
        for r in &rows {
            assert_eq!(r.len(), cols, "from_rows: ragged rows");
        }
        let entries = rows.into_iter().flatten().collect();
        Mat { rows: nrows, cols, entries }
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Mat::from_fn(rows.len(), rows[0].len(), |i, j| rat(rows[i][j]))
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinError> {
        if entries.len() != rows * cols {
            return Err(LinError::BadEntryCount { rows, cols, got: entries.len(), want: rows * cols });
        }
        Ok(Mat { rows, cols, entries })
    }

    /// One-column matrix holding `v`.
    pub fn col_vector(v: &[Rational]) -> Self {
        Mat { rows: v.len(), cols: 1, entries: v.to_vec() }
    }

    /// One-row matrix holding `v`.
    pub fn row_vector(v: &[Rational]) -> Self {
        Mat { rows: 1, cols: v.len(), entries: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Matrix product. Dimension compatibility is an internal invariant;
    /// violations indicate a composition bug, hence the panic.
    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} . {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(i, j) += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }

    pub fn scale(&self, c: &Rational) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "apply: vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.at(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += a * vj;
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact inverse via Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<Mat, LinError> {
        if self.rows != self.cols {
            return Err(LinError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero()).ok_or(LinError::NotInvertible)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.at(col, col).clone();
            a.scale_row(col, &p.recip());
            inv.scale_row(col, &p.recip());
            for r in 0..n {
                if r != col && !a.at(r, col).is_zero() {
                    let factor = a.at(r, col).clone();
                    a.add_scaled_row(col, r, &(-factor.clone()));
                    inv.add_scaled_row(col, r, &(-factor));
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rational) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            if !self.entries[idx].is_zero() {
                self.entries[idx] *= c;
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_scaled_row(&mut self, src: usize, dst: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.entries[src * self.cols + j].clone();
            if !v.is_zero() {
                self.entries[dst * self.cols + j] += v * c;
            }
        }
    }

    /// Reduced row echelon form; returns the pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let lead = self.at(row, col).clone();
            self.scale_row(row, &lead.recip());
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = -self.at(r, col).clone();
                    self.add_scaled_row(row, r, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Solves `self . X = rhs` exactly. Requires the solution to be unique
    /// (full column rank); inconsistent systems are reported as such.
    pub fn solve(&self, rhs: &Mat) -> Result<Mat, LinError> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let mut aug = Mat::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..rhs.cols {
                *aug.at_mut(i, self.cols + j) = rhs.at(i, j).clone();
            }
        }
        let pivots = aug.rref();
        let lead_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < self.cols).collect();
        // A pivot in the augmented block means the system is inconsistent.
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(LinError::Inconsistent);
        }
        if lead_pivots.len() < self.cols {
            return Err(LinError::NotUnique);
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (r, &c) in lead_pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                *x.at_mut(c, j) = aug.at(r, self.cols + j).clone();
            }
        }
        Ok(x)
    }

    /// Canonical basis of the column space: the original columns sitting at
    /// the pivot positions of the reduced row echelon form.
    pub fn image_basis(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Mat::zeros(self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                *basis.at_mut(i, k) = self.at(i, c).clone();
            }
        }
        (basis, pivots)
    }
}

/// Kronecker product, left factor major:
/// `kron(A,B)[(i*B.rows+k, j*B.cols+l)] = A[i,j] * B[k,l]`.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let v = a.at(i, j);
            if v.is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    let w = b.at(k, l);
                    if !w.is_zero() {
                        *out.at_mut(i * b.rows() + k, j * b.cols() + l) = v * w;
                    }
                }
            }
        }
    }
    out
}

/// Kronecker product of coordinate vectors under the same convention.
pub fn vec_kron(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// The permutation matrix sending `e_{i_0} (x) ... (x) e_{i_{n-1}}` to the
/// basis vector whose factor `k` has been moved to position `perm[k]`.
pub fn factor_permute(dims: &[usize], perm: &[usize]) -> Result<Mat, LinError> {
    if dims.is_empty() {
        return Err(LinError::EmptyDims);
    }
    let n = dims.len();
    if perm.len() != n {
        return Err(LinError::BadPermutation);
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(LinError::BadPermutation);
        }
        seen[p] = true;
    }
    let total: usize = dims.iter().product();
    let mut m = Mat::zeros(total, total);
    for col in 0..total {
        *m.at_mut(perm_index(dims, perm, col), col) = Rational::one();
    }
    Ok(m)
}

/// `I_pre (x) m (x) I_post` — applies `m` to one leg of a tensor product,
/// with `pre`/`post` the total dimensions on either side.
pub fn on_leg(pre: usize, m: &Mat, post: usize) -> Mat {
    kron(&kron(&Mat::identity(pre), m), &Mat::identity(post))
}

/// Image of a basis index under the leg permutation, i.e. the row index of
/// the 1 in column `input` of `factor_permute(dims, perm)`.
pub fn perm_index(dims: &[usize], perm: &[usize], input: usize) -> usize {
    let n = dims.len();
    let mut idx = vec![0usize; n];
    let mut rem = input;
    for k in (0..n).rev() {
        idx[k] = rem % dims[k];
        rem /= dims[k];
    }
    let mut out_dims = vec![0usize; n];
    for k in 0..n {
        out_dims[perm[k]] = dims[k];
    }
    let mut row = 0usize;
    for (pos, out_dim) in out_dims.iter().enumerate() {
        let k = perm.iter().position(|&p| p == pos).unwrap();
        row = row * out_dim + idx[k];
    }
    row
}

impl Mat {
    /// `self . factor_permute(dims, perm)` computed as a column remap, so the
    /// permutation matrix is never materialized.
    pub fn permute_cols(&self, dims: &[usize], perm: &[usize]) -> Mat {
        let total: usize = dims.iter().product();
        assert_eq!(self.cols, total, "permute_cols: dims do not match column count");
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, perm_index(dims, perm, j)).clone())
    }

    /// `factor_permute(dims, perm) . self` computed as a row remap.
    pub fn permute_rows(&self, dims: &[usize], perm: &[usize]) -> Mat {
        let total: usize = dims.iter().product();
        assert_eq!(self.rows, total, "permute_rows: dims do not match row count");
        let mut out = Mat::zeros(self.rows, self.cols);
        for k in 0..self.rows {
            let target = perm_index(dims, perm, k);
            for j in 0..self.cols {
                *out.at_mut(target, j) = self.at(k, j).clone();
            }
        }
        out
    }
}

/// Permutes the tensor legs of a coordinate vector.
pub fn permute_vec(dims: &[usize], perm: &[usize], v: &[Rational]) -> Vec<Rational> {
    let total: usize = dims.iter().product();
    assert_eq!(v.len(), total, "permute_vec: dims do not match length");
    let mut out = vec![Rational::zero(); total];
    for (k, val) in v.iter().enumerate() {
        if !val.is_zero() {
            out[perm_index(dims, perm, k)] = val.clone();
        }
    }
    out
}

/// Componentwise product of `u` and `v` inside a tensor product of algebras:
/// leg `k` has dimension `dims[k]` and multiplication matrix `muls[k]`
/// (shape `dims[k] x dims[k]^2`). Works entry by entry on the nonzero
/// supports, so large tensor powers never appear as dense matrices.
pub fn componentwise_product(
    muls: &[&Mat],
    dims: &[usize],
    u: &[Rational],
    v: &[Rational],
) -> Vec<Rational> {
    let n = dims.len();
    let total: usize = dims.iter().product();
    assert_eq!(u.len(), total, "componentwise_product: u length");
    assert_eq!(v.len(), total, "componentwise_product: v length");
    let decode = |mut x: usize| {
        let mut idx = vec![0usize; n];
        for k in (0..n).rev() {
            idx[k] = x % dims[k];
            x /= dims[k];
        }
        idx
    };
    let mut out = vec![Rational::zero(); total];
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let ii = decode(i);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let jj = decode(j);
            let coeff = ui * vj;
            // product column per leg, then their Kronecker accumulated
            let mut acc: Vec<Rational> = vec![coeff];
            for k in 0..n {
                let col = muls[k].column(ii[k] * dims[k] + jj[k]);
                acc = vec_kron(&acc, &col);
            }
            for (t, val) in acc.into_iter().enumerate() {
                if !val.is_zero() {
                    out[t] += val;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kron_identity_times_scalar() {
        let i2 = Mat::identity(2);
        let two = Mat::from_int_rows(&[&[2]]);
        let k = kron(&i2, &two);
        assert_eq!(k, Mat::from_int_rows(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn kron_unit_case() {
        let one = Mat::from_int_rows(&[&[1]]);
        assert_eq!(kron(&one, &one), one);
    }

    #[test]
    fn kron_acts_factorwise_on_basis_pairs() {
        // kron(A,B)(x (x) y) = A x (x) B y for all standard basis pairs, 2x2 inputs
        let a = Mat::from_int_rows(&[&[0, 1], &[1, 0]]);
        let b = Mat::from_int_rows(&[&[3, -1], &[2, 5]]);
        let k = kron(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                let mut x = vec![rat(0); 2];
                x[i] = rat(1);
                let mut y = vec![rat(0); 2];
                y[j] = rat(1);
                let lhs = k.apply(&vec_kron(&x, &y));
                let rhs = vec_kron(&a.apply(&x), &b.apply(&y));
                assert_eq!(lhs, rhs, "basis pair ({i},{j})");
            }
        }
    }

    #[test]
    fn factor_permute_swap_two_three() {
        let m = factor_permute(&[2, 3], &[1, 0]).unwrap();
        // entry (j*2+i, i*3+j) = 1
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(*m.at(j * 2 + i, i * 3 + j), rat(1));
            }
        }
        assert_eq!(m.entries().iter().filter(|e| !e.is_zero()).count(), 6);
    }

    #[test]
    fn factor_permute_identity_single_factor() {
        assert_eq!(factor_permute(&[2], &[0]).unwrap(), Mat::identity(2));
    }

    #[test]
    fn factor_permute_composes_to_identity() {
        let dims = [2, 2, 3];
        let perm = [2, 0, 1];
        let fwd = factor_permute(&dims, &perm).unwrap();
        // inverse permutation applied to the permuted dims
        let mut out_dims = [0usize; 3];
        for k in 0..3 {
            out_dims[perm[k]] = dims[k];
        }
        let mut inv = [0usize; 3];
        for k in 0..3 {
            inv[perm[k]] = k;
        }
        let back = factor_permute(&out_dims, &inv).unwrap();
        assert_eq!(back.mul(&fwd), Mat::identity(12));
    }

    #[test]
    fn factor_permute_empty_dims_is_error() {
        assert_eq!(factor_permute(&[], &[]), Err(LinError::EmptyDims));
    }

    #[test]
    fn invert_two_by_two() {
        let a = Mat::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = a.invert().unwrap();
        assert_eq!(inv, Mat::from_int_rows(&[&[1, -1], &[-1, 2]]));
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert_eq!(inv.mul(&a), Mat::identity(2));
    }

    #[test]
    fn invert_identity() {
        assert_eq!(Mat::identity(3).invert().unwrap(), Mat::identity(3));
    }

    #[test]
    fn invert_rank_deficient_fails() {
        let a = Mat::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.invert(), Err(LinError::NotInvertible));
    }

    #[test]
    fn rational_round_trip_format() {
        assert_eq!(format_rational(&rat_frac(-4, 6)), "-2/3");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational("-2/3").unwrap(), rat_frac(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn solve_and_image_basis() {
        let a = Mat::from_int_rows(&[&[1, 0], &[0, 2], &[1, 2]]);
        let rhs = Mat::from_int_rows(&[&[3], &[4], &[7]]);
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul(&x), rhs);

        let e = Mat::from_int_rows(&[&[1, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let (basis, pivots) = e.image_basis();
        assert_eq!(pivots, vec![0]);
        assert_eq!(basis.cols(), 1);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| rat_frac(n, d))
    }

    fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(small_rational(), rows * cols)
            .prop_map(move |v| Mat::from_entries(rows, cols, v).unwrap())
    }

    proptest! {
        #[test]
        fn composition_is_associative(
            a in small_mat(2, 3), b in small_mat(3, 2), c in small_mat(2, 2)
        ) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn kron_mixed_product(
            a in small_mat(2, 2), b in small_mat(3, 2),
            c in small_mat(2, 2), d in small_mat(2, 3)
        ) {
            prop_assert_eq!(kron(&a, &b).mul(&kron(&c, &d)), kron(&a.mul(&c), &b.mul(&d)));
        }

        #[test]
        fn factor_permute_is_orthogonal(perm in Just(()).prop_flat_map(|_| {
            proptest::sample::select(vec![
                (vec![2usize, 3], vec![1usize, 0]),
                (vec![2, 2, 2], vec![2, 0, 1]),
                (vec![3, 2], vec![0, 1]),
                (vec![2, 2, 3], vec![1, 2, 0]),
            ])
        })) {
            let (dims, p) = perm;
            let m = factor_permute(&dims, &p).unwrap();
            let n: usize = dims.iter().product();
            prop_assert_eq!(m.transpose().mul(&m), Mat::identity(n));
            prop_assert!(m.entries().iter().all(|e| e.is_zero() || e == &rat(1)));
        }
    }
}

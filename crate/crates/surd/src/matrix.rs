//! Arbitrary-precision integer matrices, Smith normal form, and exact
//! linear solving.
//!
//! Everything downstream (canonical forms, Hom/Ext, extension totals,
//! obstruction classes) reduces to the two entry points here:
//! [`smith_normal_form`] and [`solve`].

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows of machine integers (test and examples
    /// convenience).
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.into_iter().flatten().collect();
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vec<BigInt>]) -> Self {
        assert!(columns.iter().all(|col| col.len() == len), "ragged columns");
        IntMatrix::from_fn(len, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        IntMatrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { BigInt::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length must equal column count");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, factor: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * factor)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row counts must agree");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { other.get(i, j - self.cols).clone() }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = self.get(src, j) * q;
            let v = self.get(dst, j) + t;
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += q * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = self.get(i, src) * q;
            let v = self.get(i, dst) + t;
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Result of [`smith_normal_form`]: `left * input * right = diagonal`, with
/// `left` and `right` unimodular and the diagonal entries forming a
/// divisibility chain `d_1 | d_2 | …` of nonnegative integers (zeros last).
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    pub left_inverse: IntMatrix,
    pub right_inverse: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries, one per row/column up to `min(rows, cols)`.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let n = min(self.diagonal.rows(), self.diagonal.cols());
        (0..n).map(|i| self.diagonal.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal_entries().iter().filter(|d| !d.is_zero()).count()
    }

    /// Solves `input * x = b` for the matrix this decomposition came from.
    /// Returns one solution or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let rows = self.diagonal.rows();
        let cols = self.diagonal.cols();
        assert_eq!(b.len(), rows, "right-hand side length must equal row count");
        let ub = self.left.mul_vec(b);
        let mut w = vec![BigInt::zero(); cols];
        for (i, ub_i) in ub.iter().enumerate() {
            let d = if i < cols { self.diagonal.get(i, i).clone() } else { BigInt::zero() };
            if d.is_zero() {
                if !ub_i.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = ub_i.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            }
        }
        Some(self.right.mul_vec(&w))
    }

    /// A basis (as columns) of the integer kernel of the original matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let cols = self.diagonal.cols();
        let rows = self.diagonal.rows();
        (0..cols)
            .filter(|&j| j >= rows || self.diagonal.get(j, j).is_zero())
            .map(|j| self.right.column(j))
            .collect()
    }
}

/// Nearest-integer division, ties broken toward the floor.  The remainder
/// `a - div_round(a, b) * b` has absolute value at most `|b| / 2`.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let q0 = a.div_floor(b);
    let q1 = &q0 + BigInt::one();
    let r0 = (a - &q0 * b).abs();
    let r1 = (a - &q1 * b).abs();
    if r1 < r0 { q1 } else { q0 }
}

struct SnfState {
    d: IntMatrix,
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.left.swap_rows(a, b);
        self.left_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.right_inv.swap_rows(a, b);
    }

    /// `row[dst] += q * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.row_axpy(dst, src, q);
        self.left.row_axpy(dst, src, q);
        let neg = -q;
        self.left_inv.col_axpy(src, dst, &neg);
    }

    /// `col[dst] += q * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.col_axpy(dst, src, q);
        self.right.col_axpy(dst, src, q);
        let neg = -q;
        self.right_inv.row_axpy(src, dst, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
    }
}

/// Deterministic pivot rule: the nonzero entry of smallest absolute value in
/// the block at `(k, k)`, ties broken in row-major order.
fn pivot_in_block(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// First entry in the block strictly below/right of `(k, k)` that the pivot
/// does not divide, in row-major order.
fn find_nondivisible(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let pivot = d.get(k, k);
    for i in (k + 1)..d.rows() {
        for j in (k + 1)..d.cols() {
            if !d.get(i, j).mod_floor(pivot).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Smith normal form over the integers.
///
/// Returns unimodular `left`, `right` (with tracked inverses) and a diagonal
/// matrix `D = left * m * right` whose nonzero entries are positive and form
/// a divisibility chain, followed by zeros.  The computation is fully
/// deterministic: pivots are chosen by smallest absolute value with
/// row-major tie-breaking, and reduction uses nearest-integer quotients.
///
/// Matrices whose entries stay within `i64` throughout are handled by a
/// machine-integer mirror of the same elimination; any overflow falls back
/// to the arbitrary-precision path, so results are identical either way.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    if let Some(snf) = fast::smith_normal_form_i64(m) {
        return snf;
    }
    smith_normal_form_bigint(m)
}

fn smith_normal_form_bigint(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut st = SnfState {
        d: m.clone(),
        left: IntMatrix::identity(rows),
        left_inv: IntMatrix::identity(rows),
        right: IntMatrix::identity(cols),
        right_inv: IntMatrix::identity(cols),
    };

    let limit = min(rows, cols);
    let mut k = 0;
    while k < limit {
        let Some((pi, pj)) = pivot_in_block(&st.d, k) else {
            break; // remaining block is zero
        };
        st.swap_rows(k, pi);
        st.swap_cols(k, pj);

        // Clear column k and row k.  A nonzero remainder is strictly smaller
        // than the pivot, so swapping it into the pivot position makes
        // progress; the loop terminates because |d[k][k]| strictly decreases.
        loop {
            let mut cleared = true;
            for i in (k + 1)..rows {
                if st.d.get(i, k).is_zero() {
                    continue;
                }
                let q = div_round(st.d.get(i, k), st.d.get(k, k));
                if !q.is_zero() {
                    let neg = -q;
                    st.add_row(i, k, &neg);
                }
                if !st.d.get(i, k).is_zero() {
                    st.swap_rows(k, i);
                    cleared = false;
                }
            }
            if !cleared {
                continue;
            }
            for j in (k + 1)..cols {
                if st.d.get(k, j).is_zero() {
                    continue;
                }
                let q = div_round(st.d.get(k, j), st.d.get(k, k));
                if !q.is_zero() {
                    let neg = -q;
                    st.add_col(j, k, &neg);
                }
                if !st.d.get(k, j).is_zero() {
                    st.swap_cols(k, j);
                    cleared = false;
                }
            }
            if !cleared {
                continue;
            }
            // Column and row are clear; enforce divisibility of the rest.
            if let Some((i, _)) = find_nondivisible(&st.d, k) {
                st.add_row(k, i, &BigInt::one());
                continue;
            }
            break;
        }

        if st.d.get(k, k).is_negative() {
            st.negate_row(k);
        }
        k += 1;
    }

    SmithDecomposition {
        left: st.left,
        diagonal: st.d,
        right: st.right,
        left_inverse: st.left_inv,
        right_inverse: st.right_inv,
    }
}

/// Machine-integer mirror of the Smith normal form elimination.  Every
/// operation matches the arbitrary-precision path exactly — same pivot rule,
/// same nearest-integer quotients, same update order — and all arithmetic is
/// overflow-checked, so the fast path either reproduces the reference result
/// bit for bit or reports `None` and cedes to the `BigInt` computation.
mod fast {
    use super::{IntMatrix, SmithDecomposition};
    use alloc::vec;
    use alloc::vec::Vec;
    use core::cmp::min;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    struct Mat {
        rows: usize,
        cols: usize,
        data: Vec<i64>,
    }

    impl Mat {
        fn identity(n: usize) -> Mat {
            let mut data = vec![0i64; n * n];
            for i in 0..n {
                data[i * n + i] = 1;
            }
            Mat { rows: n, cols: n, data }
        }

        fn get(&self, i: usize, j: usize) -> i64 {
            self.data[i * self.cols + j]
        }

        fn set(&mut self, i: usize, j: usize, v: i64) {
            self.data[i * self.cols + j] = v;
        }

        fn swap_rows(&mut self, a: usize, b: usize) {
            if a == b {
                return;
            }
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }

        fn swap_cols(&mut self, a: usize, b: usize) {
            if a == b {
                return;
            }
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }

        fn row_axpy(&mut self, dst: usize, src: usize, q: i64) -> Option<()> {
            for j in 0..self.cols {
                let t = self.get(src, j).checked_mul(q)?;
                let v = self.get(dst, j).checked_add(t)?;
                self.set(dst, j, v);
            }
            Some(())
        }

        fn col_axpy(&mut self, dst: usize, src: usize, q: i64) -> Option<()> {
            for i in 0..self.rows {
                let t = self.get(i, src).checked_mul(q)?;
                let v = self.get(i, dst).checked_add(t)?;
                self.set(i, dst, v);
            }
            Some(())
        }

        fn negate_row(&mut self, i: usize) -> Option<()> {
            for j in 0..self.cols {
                let v = self.get(i, j).checked_neg()?;
                self.set(i, j, v);
            }
            Some(())
        }

        fn negate_col(&mut self, j: usize) -> Option<()> {
            for i in 0..self.rows {
                let v = self.get(i, j).checked_neg()?;
                self.set(i, j, v);
            }
            Some(())
        }

        fn to_bigint(&self) -> IntMatrix {
            IntMatrix::from_fn(self.rows, self.cols, |i, j| BigInt::from(self.get(i, j)))
        }
    }

    fn div_floor(a: i64, b: i64) -> Option<i64> {
        let q = a.checked_div(b)?;
        let r = a.checked_rem(b)?;
        if r != 0 && (r < 0) != (b < 0) {
            q.checked_sub(1)
        } else {
            Some(q)
        }
    }

    /// Nearest-integer division with ties toward the floor, matching the
    /// `BigInt` `div_round`.
    fn div_round(a: i64, b: i64) -> Option<i64> {
        let q0 = div_floor(a, b)?;
        let q1 = q0.checked_add(1)?;
        let r0 = a.checked_sub(q0.checked_mul(b)?)?.checked_abs()?;
        let r1 = a.checked_sub(q1.checked_mul(b)?)?.checked_abs()?;
        Some(if r1 < r0 { q1 } else { q0 })
    }

    struct State {
        d: Mat,
        left: Mat,
        left_inv: Mat,
        right: Mat,
        right_inv: Mat,
    }

    impl State {
        fn swap_rows(&mut self, a: usize, b: usize) {
            self.d.swap_rows(a, b);
            self.left.swap_rows(a, b);
            self.left_inv.swap_cols(a, b);
        }

        fn swap_cols(&mut self, a: usize, b: usize) {
            self.d.swap_cols(a, b);
            self.right.swap_cols(a, b);
            self.right_inv.swap_rows(a, b);
        }

        fn add_row(&mut self, dst: usize, src: usize, q: i64) -> Option<()> {
            self.d.row_axpy(dst, src, q)?;
            self.left.row_axpy(dst, src, q)?;
            self.left_inv.col_axpy(src, dst, q.checked_neg()?)
        }

        fn add_col(&mut self, dst: usize, src: usize, q: i64) -> Option<()> {
            self.d.col_axpy(dst, src, q)?;
            self.right.col_axpy(dst, src, q)?;
            self.right_inv.row_axpy(src, dst, q.checked_neg()?)
        }

        fn negate_row(&mut self, i: usize) -> Option<()> {
            self.d.negate_row(i)?;
            self.left.negate_row(i)?;
            self.left_inv.negate_col(i)
        }
    }

    fn pivot_in_block(d: &Mat, k: usize) -> Option<Option<(usize, usize)>> {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..d.rows {
            for j in k..d.cols {
                let v = d.get(i, j);
                if v == 0 {
                    continue;
                }
                let a = v.checked_abs()?;
                match best {
                    Some((b, _, _)) if b <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        Some(best.map(|(_, i, j)| (i, j)))
    }

    fn find_nondivisible(d: &Mat, k: usize) -> Option<(usize, usize)> {
        let pivot = d.get(k, k);
        for i in (k + 1)..d.rows {
            for j in (k + 1)..d.cols {
                if d.get(i, j) % pivot != 0 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub(super) fn smith_normal_form_i64(m: &IntMatrix) -> Option<SmithDecomposition> {
        let rows = m.rows();
        let cols = m.cols();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(m.get(i, j).to_i64()?);
            }
        }
        let mut st = State {
            d: Mat { rows, cols, data },
            left: Mat::identity(rows),
            left_inv: Mat::identity(rows),
            right: Mat::identity(cols),
            right_inv: Mat::identity(cols),
        };

        let limit = min(rows, cols);
        let mut k = 0;
        while k < limit {
            let Some((pi, pj)) = pivot_in_block(&st.d, k)? else {
                break;
            };
            st.swap_rows(k, pi);
            st.swap_cols(k, pj);

            loop {
                let mut cleared = true;
                for i in (k + 1)..rows {
                    if st.d.get(i, k) == 0 {
                        continue;
                    }
                    let q = div_round(st.d.get(i, k), st.d.get(k, k))?;
                    if q != 0 {
                        st.add_row(i, k, q.checked_neg()?)?;
                    }
                    if st.d.get(i, k) != 0 {
                        st.swap_rows(k, i);
                        cleared = false;
                    }
                }
                if !cleared {
                    continue;
                }
                for j in (k + 1)..cols {
                    if st.d.get(k, j) == 0 {
                        continue;
                    }
                    let q = div_round(st.d.get(k, j), st.d.get(k, k))?;
                    if q != 0 {
                        st.add_col(j, k, q.checked_neg()?)?;
                    }
                    if st.d.get(k, j) != 0 {
                        st.swap_cols(k, j);
                        cleared = false;
                    }
                }
                if !cleared {
                    continue;
                }
                if let Some((i, _)) = find_nondivisible(&st.d, k) {
                    st.add_row(k, i, 1)?;
                    continue;
                }
                break;
            }

            if st.d.get(k, k) < 0 {
                st.negate_row(k)?;
            }
            k += 1;
        }

        Some(SmithDecomposition {
            left: st.left.to_bigint(),
            diagonal: st.d.to_bigint(),
            right: st.right.to_bigint(),
            left_inverse: st.left_inv.to_bigint(),
            right_inverse: st.right_inv.to_bigint(),
        })
    }
}

/// Solves `a * x = b` over the integers.  Returns one solution, or `None`
/// when none exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    smith_normal_form(a).solve(b)
}

/// Solves `a * x ≡ b (mod modulus)` componentwise, over the integers when
/// `modulus = 0`.  Returns one solution, or `None` when none exists.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], modulus: &BigInt) -> Option<Vec<BigInt>> {
    if modulus.is_zero() {
        return solve(a, b);
    }
    let aug = a.hstack(&IntMatrix::diagonal(&vec![modulus.clone(); a.rows()]));
    solve(&aug, b).map(|x| x[..a.cols()].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn snf_diag(rows: &[Vec<i64>]) -> Vec<BigInt> {
        smith_normal_form(&IntMatrix::from_i64_rows(rows)).diagonal_entries()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_of_diag_2_3_merges_into_chain() {
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 3]]), vec![big(1), big(6)]);
    }

    #[test]
    fn snf_of_column_2_minus_4() {
        assert_eq!(snf_diag(&[vec![2], vec![-4]]), vec![big(2)]);
    }

    #[test]
    fn snf_of_zero_matrix() {
        assert_eq!(snf_diag(&[vec![0, 0], vec![0, 0]]), vec![big(0), big(0)]);
    }

    #[test]
    fn snf_classic_3x3() {
        assert_eq!(
            snf_diag(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![big(2), big(6), big(12)]
        );
    }

    #[test]
    fn snf_wide_and_tall() {
        assert_eq!(snf_diag(&[vec![6, 10]]), vec![big(2)]);
        assert_eq!(snf_diag(&[vec![6], vec![10]]), vec![big(2)]);
    }

    #[test]
    fn snf_is_deterministic() {
        let m = IntMatrix::from_i64_rows(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.left, b.left);
        assert_eq!(a.right, b.right);
        assert_eq!(a.diagonal, b.diagonal);
    }

    #[test]
    fn solve_simple_system() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let x = solve(&a, &[big(4), big(9)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![big(4), big(9)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = IntMatrix::from_i64_rows(&[vec![2]]);
        assert_eq!(solve(&a, &[big(3)]), None);
    }

    #[test]
    fn solve_underdetermined() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 3]]);
        let x = solve(&a, &[big(1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![big(1)]);
    }

    #[test]
    fn solve_mod_congruence() {
        // 3x ≡ 1 (mod 5) has solution x ≡ 2
        let a = IntMatrix::from_i64_rows(&[vec![3]]);
        let x = solve_mod(&a, &[big(1)], &big(5)).unwrap();
        assert_eq!((big(3) * &x[0] - big(1)).mod_floor(&big(5)), big(0));
        // 2x ≡ 1 (mod 4) has none
        let a = IntMatrix::from_i64_rows(&[vec![2]]);
        assert_eq!(solve_mod(&a, &[big(1)], &big(4)), None);
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4]]);
        let snf = smith_normal_form(&a);
        let kernel = snf.kernel_basis();
        assert_eq!(kernel.len(), 1);
        assert!(a.mul_vec(&kernel[0]).iter().all(Zero::is_zero));
        assert!(!kernel[0].iter().all(Zero::is_zero));
    }

    fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-30i64..30, r * c).prop_map(move |entries| {
                IntMatrix::from_fn(r, c, |i, j| BigInt::from(entries[i * c + j]))
            })
        })
    }

    #[test]
    fn huge_entries_take_the_fallback_path_and_still_decompose() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(3) + BigInt::from(7);
        let m = IntMatrix::from_rows(vec![
            vec![huge.clone(), BigInt::from(2)],
            vec![BigInt::from(4), -huge],
        ]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diagonal);
        assert_eq!(snf.left.mul(&snf.left_inverse), IntMatrix::identity(2));
        assert_eq!(snf.right.mul(&snf.right_inverse), IntMatrix::identity(2));
    }

    proptest! {
        #[test]
        fn machine_and_bigint_eliminations_agree(m in matrix_strategy()) {
            let fast = smith_normal_form(&m);
            let reference = smith_normal_form_bigint(&m);
            prop_assert_eq!(fast.left, reference.left);
            prop_assert_eq!(fast.diagonal, reference.diagonal);
            prop_assert_eq!(fast.right, reference.right);
            prop_assert_eq!(fast.left_inverse, reference.left_inverse);
            prop_assert_eq!(fast.right_inverse, reference.right_inverse);
        }

        #[test]
        fn snf_transforms_are_unimodular_and_reproduce_d(m in matrix_strategy()) {
            let snf = smith_normal_form(&m);
            prop_assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diagonal.clone());
            prop_assert_eq!(snf.left.mul(&snf.left_inverse), IntMatrix::identity(m.rows()));
            prop_assert_eq!(snf.right.mul(&snf.right_inverse), IntMatrix::identity(m.cols()));
        }

        #[test]
        fn snf_diagonal_is_a_divisibility_chain(m in matrix_strategy()) {
            let entries = smith_normal_form(&m).diagonal_entries();
            let mut seen_zero = false;
            for w in entries.windows(2) {
                if w[0].is_zero() { seen_zero = true; }
                if seen_zero {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!(!w[0].is_negative());
                    prop_assert!(w[1].mod_floor(&w[0]).is_zero());
                }
            }
        }

        #[test]
        fn solve_returns_actual_solutions(m in matrix_strategy(), xs in proptest::collection::vec(-9i64..9, 4)) {
            let x: Vec<BigInt> = (0..m.cols()).map(|j| BigInt::from(xs[j % xs.len()])).collect();
            let b = m.mul_vec(&x);
            let found = solve(&m, &b).expect("constructed system must be solvable");
            prop_assert_eq!(m.mul_vec(&found), b);
        }
    }
}

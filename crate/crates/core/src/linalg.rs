//! Dense exact linear algebra: matrices and canonical subspaces.
//!
//! Subspaces are kept in reduced row echelon form with ordered pivots, so
//! subspace equality is literal data equality. All eliminations are exact
//! (no pivot growth concerns over the rationals at the dimensions this
//! crate handles).

use crate::scalar::{is_zero_vec, zero_vec, Scalar};
use num::{One, Zero};

/// Dense matrix of exact rationals, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == n_cols));
        Mat {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix applied to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = zero_vec(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for j in 0..self.cols {
                let c = self.get(i, j);
                if !c.is_zero() && !v[j].is_zero() {
                    acc += c * &v[j];
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// In-place Gauss-Jordan elimination. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find pivot row
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = Scalar::one() / self.get(r, c).clone();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per row of the
    /// result, in the canonical free-variable order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = zero_vec(self.cols);
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = zero_vec(self.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if the matrix is invertible.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// A linear subspace of `Q^ambient` held as a reduced-row-echelon basis.
/// Two subspaces are equal iff the struct data is equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|i| crate::scalar::unit_vec(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<Scalar>>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient))
            .collect();
        if rows.is_empty() {
            return Subspace::zero(ambient);
        }
        let mut m = Mat::from_rows(rows);
        let pivots = m.rref_in_place();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// Intersection via the kernel of the stacked coefficient matrix.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // columns: coefficients on self.basis then other.basis;
        // rows: ambient coordinates of  a·U - b·V = 0.
        let mut m = Mat::zeros(self.ambient, self.dim() + other.dim());
        for (j, u) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, j, u[i].clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, self.dim() + j, -v[i].clone());
            }
        }
        let vectors = m
            .kernel()
            .into_iter()
            .map(|coeffs| {
                let mut w = zero_vec(self.ambient);
                for (j, u) in self.basis.iter().enumerate() {
                    if !coeffs[j].is_zero() {
                        for i in 0..self.ambient {
                            w[i] += &coeffs[j] * &u[i];
                        }
                    }
                }
                w
            })
            .collect::<Vec<_>>();
        Subspace::span(self.ambient, vectors)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residue = v.to_vec();
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                for i in 0..self.ambient {
                    residue[i] -= c * &row[i];
                }
            }
        }
        if is_zero_vec(&residue) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vec(v))
    }

    /// Vector in ambient coordinates from coefficients on the echelon basis.
    pub fn from_coords(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim());
        let mut w = zero_vec(self.ambient);
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                for i in 0..self.ambient {
                    w[i] += c * &row[i];
                }
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn v(ints: &[i64]) -> Vec<Scalar> {
        ints.iter().map(|&n| int(n)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let m = Mat::from_rows(vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&m.apply(&k[0])));
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(vec![v(&[2, 1]), v(&[1, 1])]);
        let x = m.solve(&v(&[3, 2])).unwrap();
        assert_eq!(x, v(&[1, 1]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        let sing = Mat::from_rows(vec![v(&[1, 2]), v(&[2, 4])]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&v(&[0, 1])).is_none());
    }

    #[test]
    fn subspace_canonical_equality() {
        let u = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let w = Subspace::span(3, vec![v(&[2, 2, 2]), v(&[0, 0, 5]), v(&[1, 1, 1])]);
        assert_eq!(u, w);
        assert_eq!(u.dim(), 2);
        assert!(u.contains_vec(&v(&[3, 3, 7])));
        assert!(!u.contains_vec(&v(&[1, 0, 0])));
    }

    #[test]
    fn coords_roundtrip() {
        let u = Subspace::span(3, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let x = v(&[2, 5, 1]);
        let c = u.coords(&x).unwrap();
        assert_eq!(u.from_coords(&c), x);
    }

    #[test]
    fn empty_and_zero_dimensional() {
        let z = Subspace::zero(0);
        assert_eq!(z.dim(), 0);
        assert!(z.contains_vec(&[]));
        let m = Mat::zeros(0, 0);
        assert_eq!(m.rank(), 0);
        assert_eq!(Subspace::full(0).dim(), 0);
    }

    proptest! {
        #[test]
        fn dim_formula_holds(seed_u in proptest::collection::vec(proptest::collection::vec(-4i64..5, 4), 0..4),
                             seed_w in proptest::collection::vec(proptest::collection::vec(-4i64..5, 4), 0..4)) {
            let u = Subspace::span(4, seed_u.iter().map(|r| v(r)));
            let w = Subspace::span(4, seed_w.iter().map(|r| v(r)));
            let s = u.sum(&w);
            let i = u.intersect(&w);
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(s.contains(&u) && s.contains(&w));
            prop_assert!(u.contains(&i) && w.contains(&i));
            // canonical form is idempotent
            let re = Subspace::span(4, u.basis().to_vec());
            prop_assert_eq!(re, u);
        }
    }
}

//! Dense exact linear algebra over a [`Field`].
//!
//! Row-vector convention throughout: a linear map is a matrix whose row `i`
//! is the image of basis vector `i`, and vectors act by `v * A`.

use crate::arith::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: &F, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field: field.clone(),
            nrows,
            ncols,
            data: vec![field.zero(); nrows * ncols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, ncols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            field: field.clone(),
            nrows,
            ncols,
            data,
        }
    }

    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            ncols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.data[i * self.ncols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows, "dimension mismatch");
        let k = &self.field;
        let mut out = Self::zero(k, self.nrows, o.ncols);
        for i in 0..self.nrows {
            for l in 0..self.ncols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                let a = a.clone();
                let orow = o.row(l);
                let dst = out.row_mut(i);
                for (d, b) in dst.iter_mut().zip(orow) {
                    if !k.is_zero(b) {
                        k.add_mul_assign(d, &a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols));
        let k = &self.field;
        Matrix {
            field: k.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| k.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols));
        let k = &self.field;
        Matrix {
            field: k.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| k.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let k = &self.field;
        Matrix {
            field: k.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|a| k.mul(a, s)).collect(),
        }
    }

    /// `A - lambda * I`
    pub fn sub_scalar(&self, lambda: &F::Elem) -> Self {
        assert_eq!(self.nrows, self.ncols);
        let mut m = self.clone();
        for i in 0..self.nrows {
            let v = self.field.sub(m.get(i, i), lambda);
            m.set(i, i, v);
        }
        m
    }

    /// `v * A`
    pub fn vec_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.nrows);
        let k = &self.field;
        let mut out = vec![k.zero(); self.ncols];
        for (i, a) in v.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (d, b) in out.iter_mut().zip(self.row(i)) {
                if !k.is_zero(b) {
                    k.add_mul_assign(d, a, b);
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let k = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let Some(p) = (r..m.nrows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.ncols {
                    m.data.swap(p * m.ncols + j, r * m.ncols + j);
                }
            }
            let inv = k.inv(m.get(r, c));
            for j in c..m.ncols {
                let v = k.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            let prow: Vec<F::Elem> = m.row(r)[c..].to_vec();
            for i in 0..m.nrows {
                if i == r || k.is_zero(m.get(i, c)) {
                    continue;
                }
                let f = k.neg(m.get(i, c));
                let row = &mut m.data[i * m.ncols + c..(i + 1) * m.ncols];
                for (d, b) in row.iter_mut().zip(&prow) {
                    if !k.is_zero(b) {
                        k.add_mul_assign(d, &f, b);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x^T = 0}` (column null space).
    pub fn right_kernel(&self) -> Vec<Vec<F::Elem>> {
        let k = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![k.zero(); self.ncols];
            v[free] = k.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Kernel of the map `v -> v * A` as a subspace of the row space.
    pub fn left_kernel(&self) -> Subspace<F> {
        Subspace::from_vectors(&self.field, self.nrows, self.transpose().right_kernel())
    }

    /// Solve `c * A = w` for `c`, if solvable.
    pub fn solve_left(&self, w: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let k = &self.field;
        // columns of the augmented system are the rows of A plus w
        let mut t = self.transpose();
        let mut aug = Self::zero(k, t.nrows, t.ncols + 1);
        for i in 0..t.nrows {
            for j in 0..t.ncols {
                aug.set(i, j, std::mem::replace(&mut t.data[i * t.ncols + j], k.zero()));
            }
            aug.set(i, t.ncols, w[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.nrows) {
            return None;
        }
        let mut c = vec![k.zero(); self.nrows];
        for (i, &p) in pivots.iter().enumerate() {
            c[p] = r.get(i, self.nrows).clone();
        }
        Some(c)
    }

    /// Characteristic polynomial `det(x I - A)`, monic, low degree first.
    pub fn charpoly(&self) -> Vec<F::Elem> {
        assert_eq!(self.nrows, self.ncols, "square matrix required");
        let k = &self.field;
        let n = self.nrows;
        let mut h = self.clone();
        // reduce to upper Hessenberg form by similarity transforms
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !k.is_zero(h.get(i, m - 1))) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let inv = k.inv(h.get(m, m - 1));
            for j in m + 1..n {
                let u = k.mul(h.get(j, m - 1), &inv);
                if k.is_zero(&u) {
                    continue;
                }
                for c in 0..n {
                    let v = k.sub(h.get(j, c), &k.mul(&u, h.get(m, c)));
                    h.set(j, c, v);
                }
                for r in 0..n {
                    let v = k.add(h.get(r, m), &k.mul(&u, h.get(r, j)));
                    h.set(r, m, v);
                }
            }
        }
        let mut polys: Vec<Vec<F::Elem>> = vec![vec![k.one()]];
        for m in 1..=n {
            // (x - h_mm) p_{m-1}
            let prev = &polys[m - 1];
            let mut p = vec![k.zero(); m + 1];
            for (i, c) in prev.iter().enumerate() {
                k.add_assign(&mut p[i + 1], c);
                let t = k.mul(c, h.get(m - 1, m - 1));
                p[i] = k.sub(&p[i], &t);
            }
            let mut t = k.one();
            for i in (1..m).rev() {
                t = k.mul(&t, h.get(i, i - 1));
                if k.is_zero(&t) {
                    break;
                }
                let coef = k.mul(h.get(i - 1, m - 1), &t);
                if k.is_zero(&coef) {
                    continue;
                }
                for (j, c) in polys[i - 1].iter().enumerate() {
                    let s = k.mul(&coef, c);
                    p[j] = k.sub(&p[j], &s);
                }
            }
            polys.push(p);
        }
        polys.pop().unwrap()
    }

    /// `f(A)` for a polynomial given low degree first.
    pub fn eval_poly(&self, f: &[F::Elem]) -> Self {
        let k = &self.field;
        let n = self.nrows;
        let mut acc = Self::zero(k, n, n);
        for c in f.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = k.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// A subspace of `K^n`, stored as a reduced echelon basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn from_vectors(field: &F, n: usize, vecs: Vec<Vec<F::Elem>>) -> Self {
        let m = Matrix::from_rows(field, n, vecs);
        let (r, pivots) = m.rref();
        let mut basis = Matrix::zero(field, pivots.len(), n);
        for i in 0..pivots.len() {
            basis.row_mut(i).clone_from_slice(r.row(i));
        }
        Subspace { basis, pivots }
    }

    pub fn whole(field: &F, n: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn zero(field: &F, n: usize) -> Self {
        Subspace {
            basis: Matrix::zero(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.rows()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let c: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        back.iter().zip(v).all(|(a, b)| a == b).then_some(c)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, c: &[F::Elem]) -> Vec<F::Elem> {
        self.basis.vec_mul(c)
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        (0..self.dim()).all(|i| o.contains(self.basis.row(i)))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut v = self.basis_vectors();
        v.extend(o.basis_vectors());
        Self::from_vectors(self.field(), self.ambient_dim(), v)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        let k = self.field();
        let n = self.ambient_dim();
        if self.dim() == 0 || o.dim() == 0 {
            return Self::zero(k, n);
        }
        let mut rows = self.basis_vectors();
        rows.extend(o.basis_vectors());
        let stacked = Matrix::from_rows(k, n, rows);
        let rel = stacked.left_kernel();
        let vecs = rel
            .basis_vectors()
            .into_iter()
            .map(|z| self.combine(&z[..self.dim()]))
            .collect();
        Self::from_vectors(k, n, vecs)
    }

    /// Images of the basis vectors under `op`.
    pub fn images(&self, op: &Matrix<F>) -> Matrix<F> {
        self.basis.mul(op)
    }

    /// Matrix of `op` restricted to this (stable) subspace, in basis
    /// coordinates.
    pub fn restrict(&self, op: &Matrix<F>) -> Result<Matrix<F>> {
        self.restrict_images(&self.images(op))
    }

    /// As [`Subspace::restrict`], from precomputed images of the basis.
    pub fn restrict_images(&self, images: &Matrix<F>) -> Result<Matrix<F>> {
        let k = self.field();
        let mut rows = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            rows.push(
                self.coordinates(images.row(i))
                    .ok_or_else(|| Error::NotStable("operator".into()))?,
            );
        }
        Ok(Matrix::from_rows(k, self.dim(), rows))
    }

    /// `{v in self : v * op = 0}` given the images of the basis vectors.
    pub fn kernel_of_images(&self, images: &Matrix<F>) -> Self {
        let rel = images.left_kernel();
        let vecs = rel
            .basis_vectors()
            .into_iter()
            .map(|c| self.combine(&c))
            .collect();
        Self::from_vectors(self.field(), self.ambient_dim(), vecs)
    }

    pub fn kernel_of(&self, op: &Matrix<F>) -> Self {
        self.kernel_of_images(&self.images(op))
    }
}

/// Polynomial helpers over a field (coefficients low degree first).
pub mod poly {
    use crate::arith::Field;

    pub fn trim<F: Field>(k: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
        while p.last().is_some_and(|c| k.is_zero(c)) {
            p.pop();
        }
        p
    }

    pub fn mul<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![k.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                k.add_mul_assign(&mut out[i + j], x, y);
            }
        }
        trim(k, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(rows: &[Vec<i64>]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(&Rationals, rows)
    }

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,1]]: x^2 - 3x + 1
        let a = q(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(a.charpoly(), vec![qi(1), qi(-3), qi(1)]);
        // companion matrix of x^3 - 2x + 5 (row convention)
        let c = q(&[vec![0, 1, 0], vec![0, 0, 1], vec![-5, 2, 0]]);
        assert_eq!(c.charpoly(), vec![qi(5), qi(-2), qi(0), qi(1)]);
        // Cayley-Hamilton
        assert!(c.eval_poly(&c.charpoly()).is_zero());
    }

    #[test]
    fn charpoly_needs_pivoting() {
        let a = q(&[vec![1, 0, 2, 0], vec![0, 3, 0, 1], vec![4, 0, 0, 1], vec![0, 1, 1, 2]]);
        let f = a.charpoly();
        assert!(a.eval_poly(&f).is_zero());
        // det = f(0) for even n
        let det_oracle = {
            let (_, piv) = a.rref();
            piv.len()
        };
        assert_eq!(det_oracle, 4);
        assert_ne!(f[0], qi(0));
    }

    #[test]
    fn kernels_and_subspaces() {
        let k = PrimeField::new(7);
        let a = Matrix::from_i64_rows(&k, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let lk = a.left_kernel();
        assert_eq!(lk.dim(), 1);
        for v in lk.basis_vectors() {
            assert!(a.vec_mul(&v).iter().all(|&x| x == 0));
        }
        let rk = a.right_kernel();
        assert_eq!(rk.len(), 1);
        let w1 = Subspace::from_vectors(&k, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let w2 = Subspace::from_vectors(&k, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let both = w1.intersect(&w2);
        assert_eq!(both.dim(), 1);
        assert!(both.contains(&[0, 3, 0]));
        assert_eq!(w1.sum(&w2).dim(), 3);
    }

    #[test]
    fn solve_and_restrict() {
        let a = q(&[vec![1, 1], vec![0, 1]]);
        let c = a.solve_left(&[qi(2), qi(5)]).unwrap();
        assert_eq!(a.vec_mul(&c), vec![qi(2), qi(5)]);
        let sing = q(&[vec![1, 1], vec![2, 2]]);
        assert!(sing.solve_left(&[qi(1), qi(0)]).is_none());
        let op = q(&[vec![2, 0, 0], vec![0, 3, 1], vec![0, 0, 5]]);
        let w = Subspace::from_vectors(&Rationals, 3, vec![vec![qi(1), qi(0), qi(0)]]);
        assert_eq!(w.restrict(&op).unwrap(), q(&[vec![2]]));
        let bad = Subspace::from_vectors(&Rationals, 3, vec![vec![qi(0), qi(1), qi(0)]]);
        assert!(matches!(bad.restrict(&op), Err(Error::NotStable(_))));
    }
}

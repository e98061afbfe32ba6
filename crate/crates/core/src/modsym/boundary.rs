//! The boundary map `(c : d) -> {a/c} - {b/d}` to formal sums of cusps.

use super::cusps::{label_of, Cusp, CuspLabel};
use super::space::{lift_to_sl2z, ManinSymbolSpace, Sign};
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Boundary matrix (rows = basis vectors, columns = cusp classes) together
/// with a representative of each class. In the plus quotient the classes of
/// `c` and `-c` are merged.
#[derive(Debug, Clone)]
pub struct BoundaryMap<F: Field> {
    pub matrix: Matrix<F>,
    pub cusps: Vec<Cusp>,
}

impl<F: Field> ManinSymbolSpace<F> {
    fn cusp_slot(&self, c: Cusp, list: &mut Vec<Cusp>) -> usize {
        let m = self.level();
        let neg = c.neg();
        for (i, r) in list.iter().enumerate() {
            if c.is_gamma0_equiv(r, m) || (self.sign() == Sign::Plus && neg.is_gamma0_equiv(r, m)) {
                return i;
            }
        }
        list.push(c);
        list.len() - 1
    }

    pub fn boundary(&self) -> BoundaryMap<F> {
        let k = self.field();
        let mut cusps = Vec::new();
        let mut entries = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let (u, v) = self.generator(j);
            let [a, b, c, d] = lift_to_sl2z(u, v, self.level());
            let i1 = self.cusp_slot(Cusp::new(a, c), &mut cusps);
            let i2 = self.cusp_slot(Cusp::new(b, d), &mut cusps);
            entries.push((i1, i2));
        }
        let mut matrix = Matrix::zero(k, self.dim(), cusps.len());
        for (j, (i1, i2)) in entries.into_iter().enumerate() {
            let x = k.add(matrix.get(j, i1), &k.one());
            matrix.set(j, i1, x);
            let y = k.sub(matrix.get(j, i2), &k.one());
            matrix.set(j, i2, y);
        }
        BoundaryMap { matrix, cusps }
    }

    /// Kernel of the boundary map.
    pub fn cuspidal_subspace(&self) -> Subspace<F> {
        self.boundary().matrix.left_kernel()
    }

    /// Boundary at level `N^2` expressed on the labelled cusps
    /// `infinity, [0], [1], ..., [N-1]` (plus quotient: `[x]` and `[-x]` are
    /// both sent to the smaller label).
    pub fn labelled_boundary(&self, n: u64) -> Result<Matrix<F>> {
        if self.level() != n * n {
            return Err(Error::InvalidArgument(format!(
                "level {} is not {n}^2",
                self.level()
            )));
        }
        let k = self.field();
        let fold = |l: CuspLabel| match (self.sign(), l) {
            (Sign::Plus, CuspLabel::X(x)) => CuspLabel::X(x.min(n - x)),
            _ => l,
        };
        let mut matrix = Matrix::zero(k, self.dim(), n as usize + 1);
        for j in 0..self.dim() {
            let (u, v) = self.generator(j);
            let [a, b, c, d] = lift_to_sl2z(u, v, self.level());
            let i1 = fold(label_of(Cusp::new(a, c), n)).index();
            let i2 = fold(label_of(Cusp::new(b, d), n)).index();
            let x = k.add(matrix.get(j, i1), &k.one());
            matrix.set(j, i1, x);
            let y = k.sub(matrix.get(j, i2), &k.one());
            matrix.set(j, i2, y);
        }
        Ok(matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use crate::gamma0::genus;

    #[test]
    fn level_11() {
        let s = ManinSymbolSpace::new(11, Sign::Zero, &Rationals).unwrap();
        assert_eq!(s.cuspidal_subspace().dim(), 2);
        let b = s.boundary();
        for j in 0..s.dim() {
            let sum = b.matrix.row(j).iter().fold(Rationals.zero(), |a, x| a + x);
            assert_eq!(sum, Rationals.zero());
        }
    }

    #[test]
    fn cuspidal_dimensions() {
        let k = PrimeField::new(1_000_003);
        for m in 1..150u64 {
            let full = ManinSymbolSpace::new(m, Sign::Zero, &k).unwrap();
            assert_eq!(full.cuspidal_subspace().dim() as u64, 2 * genus(m), "level {m}");
            let plus = ManinSymbolSpace::new(m, Sign::Plus, &k).unwrap();
            assert_eq!(plus.cuspidal_subspace().dim() as u64, genus(m), "level {m} plus");
        }
    }

    #[test]
    fn labelled_boundary_has_same_kernel() {
        let k = PrimeField::new(10007);
        for sign in [Sign::Zero, Sign::Plus] {
            let s = ManinSymbolSpace::new(49, sign, &k).unwrap();
            let lab = s.labelled_boundary(7).unwrap();
            assert_eq!(lab.left_kernel(), s.cuspidal_subspace());
        }
    }
}

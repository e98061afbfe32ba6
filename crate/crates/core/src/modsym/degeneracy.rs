//! Manin's trick, degeneracy maps from level `N^2` to level `N`, and the
//! new subspace.

use super::space::{lift_to_sl2z, ManinSymbolSpace};
use crate::arith::{gcd_i64, Field};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// `{0, a/b}` as a sum of Manin symbols `(c, d)`, each with coefficient 1,
/// from the continued-fraction convergents of `a/b`. `b = 0` means infinity.
pub fn manin_trick(a: i64, b: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1)];
    if b == 0 {
        return out;
    }
    let (mut num, mut den) = if b < 0 { (-a, -b) } else { (a, b) };
    let g = gcd_i64(num, den);
    num /= g;
    den /= g;
    // convergents p_{j-1}/q_{j-1}, p_{j-2}/q_{j-2}
    let (mut q1, mut q2) = (0i64, 1i64);
    let mut sign = -1i64;
    loop {
        let ai = num.div_euclid(den);
        let r = num.rem_euclid(den);
        let q = ai * q1 + q2;
        out.push((sign * q, q1));
        q2 = q1;
        q1 = q;
        sign = -sign;
        if r == 0 {
            break;
        }
        num = den;
        den = r;
    }
    out
}

impl<F: Field> ManinSymbolSpace<F> {
    /// `out += coef * {alpha, beta}` for cusps given as fractions (`x/0` is
    /// infinity).
    pub fn add_modular_symbol(&self, out: &mut [F::Elem], alpha: (i64, i64), beta: (i64, i64), coef: &F::Elem) {
        let k = self.field();
        let neg = k.neg(coef);
        for (c, d) in manin_trick(beta.0, beta.1) {
            self.add_symbol(out, c, d, coef);
        }
        for (c, d) in manin_trick(alpha.0, alpha.1) {
            self.add_symbol(out, c, d, &neg);
        }
    }

    /// Matrix of `{alpha, beta} -> {t alpha, t beta}` into `target`, whose
    /// level must divide `level / t`.
    pub fn degeneracy_matrix(&self, target: &ManinSymbolSpace<F>, t: u64) -> Result<Matrix<F>> {
        if !self.level().is_multiple_of(t * target.level()) {
            return Err(Error::InvalidArgument(format!(
                "degeneracy map {} -> {} with t = {t} is not defined",
                self.level(),
                target.level()
            )));
        }
        let k = self.field();
        let t = t as i64;
        let rows = (0..self.dim())
            .map(|j| {
                let (u, v) = self.generator(j);
                let [a, b, c, d] = lift_to_sl2z(u, v, self.level());
                let mut out = vec![k.zero(); target.dim()];
                // g{0, oo} = {b/d, a/c}
                target.add_modular_symbol(&mut out, (t * b, d), (t * a, c), &k.one());
                out
            })
            .collect();
        Ok(Matrix::from_rows(k, target.dim(), rows))
    }

    /// Cuspidal part of the kernel of both degeneracy maps to level `N`.
    pub fn new_subspace(&self, n: u64) -> Result<Subspace<F>> {
        if self.level() != n * n {
            return Err(Error::InvalidArgument(format!(
                "level {} is not {n}^2",
                self.level()
            )));
        }
        let low = ManinSymbolSpace::new(n, self.sign(), self.field())?;
        let d1 = self.degeneracy_matrix(&low, 1)?;
        let dn = self.degeneracy_matrix(&low, n)?;
        let cusp = self.cuspidal_subspace();
        let i1 = cusp.images(&d1);
        let i2 = cusp.images(&dn);
        let rows = (0..cusp.dim())
            .map(|i| {
                let mut r = i1.row(i).to_vec();
                r.extend_from_slice(i2.row(i));
                r
            })
            .collect();
        let both = Matrix::from_rows(self.field(), 2 * low.dim(), rows);
        Ok(cusp.kernel_of_images(&both))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use crate::modsym::{HeckeOp, Sign};

    #[test]
    fn manin_trick_structure() {
        // the symbols are (+-q_j, q_{j-1}) for consecutive convergent denominators
        for (a, b) in [(1i64, 1i64), (3, 7), (-5, 3), (22, 7), (0, 1), (13, -4)] {
            let syms = manin_trick(a, b);
            assert_eq!(syms[0], (0, 1));
            for w in syms.windows(2) {
                assert_eq!(w[1].1, w[0].0.abs());
                assert_eq!(gcd_i64(w[1].0, w[1].1), 1);
            }
            let g = gcd_i64(a, b);
            assert_eq!(syms.last().unwrap().0.abs(), (b / g).abs());
        }
        assert_eq!(manin_trick(1, 0), vec![(0, 1)]);
        assert_eq!(manin_trick(1, 1), vec![(0, 1), (-1, 0)]);
    }

    #[test]
    fn manin_trick_is_consistent_with_relations() {
        // {0, a/b} computed two ways: directly, and as {0, a/b + k} - {a/b, a/b + k}
        // (translation by k acts trivially on symbols: [[1, k], [0, 1]] in Gamma0(M))
        let s = ManinSymbolSpace::new(23, Sign::Zero, &Rationals).unwrap();
        let k = &Rationals;
        for (a, b) in [(3i64, 7i64), (5, 11), (-2, 9)] {
            let mut direct = vec![k.zero(); s.dim()];
            s.add_modular_symbol(&mut direct, (0, 1), (a, b), &k.one());
            let mut shifted = vec![k.zero(); s.dim()];
            // {0, a/b} = {0, 1} + {1, a/b + 1} - {a/b, a/b + 1}; with translation
            // {1, a/b + 1} = {0, a/b} so this checks {0,1} = {a/b, a/b + 1}
            s.add_modular_symbol(&mut shifted, (0, 1), (1, 1), &k.one());
            let mut moved = vec![k.zero(); s.dim()];
            s.add_modular_symbol(&mut moved, (a, b), (a + b, b), &k.one());
            assert_eq!(shifted, moved);
            assert!(direct.iter().any(|x| x != &k.zero()) || a == 0);
        }
    }

    #[test]
    fn new_subspace_at_49() {
        // S2(Gamma0(7)) = 0 so everything cuspidal at 49 is new; genus(49) = 1
        let k = PrimeField::new(10007);
        let s = ManinSymbolSpace::new(49, Sign::Zero, &k).unwrap();
        assert_eq!(s.new_subspace(7).unwrap().dim(), 2);
    }

    #[test]
    fn degeneracy_commutes_with_hecke() {
        let k = PrimeField::new(10007);
        let hi = ManinSymbolSpace::new(121, Sign::Zero, &k).unwrap();
        let lo = ManinSymbolSpace::new(11, Sign::Zero, &k).unwrap();
        for t in [1u64, 11] {
            let d = hi.degeneracy_matrix(&lo, t).unwrap();
            for l in [2u64, 3] {
                let th = hi.hecke_matrix(HeckeOp::T(l)).unwrap();
                let tl = lo.hecke_matrix(HeckeOp::T(l)).unwrap();
                assert_eq!(th.mul(&d), d.mul(&tl), "t = {t}, l = {l}");
            }
        }
    }
}

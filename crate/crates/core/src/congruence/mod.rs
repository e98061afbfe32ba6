//! The Eisenstein maximal ideal on cuspidal modular symbols of level `N^2`,
//! the congruent newform, and its congruence depth.

mod certificate;
mod decompose;

pub use certificate::{congruence_depth, find_congruent_newform, CongruenceCertificate};
pub use decompose::{decompose_new, decompose_new_with_order, Eigensystem, NewDecomposition, NewformOrbit};

use serde::Serialize;

use crate::cache::{images_via, Cache};
use crate::arith::{is_prime, primes_up_to, Field, PrimeField};
use crate::error::{Error, Result};
use crate::gamma0::sturm_bound;
use crate::linalg::{Matrix, Subspace};
use crate::modsym::{HeckeOp, ManinSymbolSpace, Sign};

/// Outcome of [`eisenstein_locus`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EisensteinLocusReport {
    pub n: u64,
    pub p: u64,
    /// Primes `l <= sturm` (other than `N`) were imposed.
    pub sturm: u64,
    /// Dimension of the cuspidal plus space over `F_p`.
    pub cuspidal_dim: usize,
    /// Dimension of the common kernel of `T_l - l - 1`.
    pub eisenstein_dim: usize,
    /// Dimension of the part of that kernel killed by `U_N`.
    pub m_dim: usize,
    /// Dimension of the part fixed by `U_N`.
    pub m_old_dim: usize,
    pub verdict_m: bool,
    pub verdict_m_old: bool,
    /// `N = -1 mod p`, recorded independently of the computation.
    pub n_is_minus_one: bool,
}

impl EisensteinLocusReport {
    /// Whether the computed verdicts are the ones predicted for this pair.
    pub fn matches_theorem(&self) -> bool {
        self.verdict_m == self.n_is_minus_one && !self.verdict_m_old
    }

    /// `Err(Contradiction)` unless [`Self::matches_theorem`].
    pub fn assert_theorem(&self) -> Result<()> {
        if self.matches_theorem() {
            return Ok(());
        }
        Err(Error::Contradiction(format!(
            "N = {}, p = {}: verdict(m) = {}, verdict(m_old) = {}, N = -1 mod p is {}",
            self.n, self.p, self.verdict_m, self.verdict_m_old, self.n_is_minus_one
        )))
    }
}

fn check_pair(n: u64, p: u64) -> Result<()> {
    if !is_prime(n) || !is_prime(p) || n == p {
        return Err(Error::InvalidArgument(format!("need distinct primes, got N = {n}, p = {p}")));
    }
    if p < 5 {
        return Err(Error::OutsideHypothesis(format!("p = {p} < 5")));
    }
    if n % p == 1 {
        return Err(Error::OutsideHypothesis(format!("N = {n} is 1 mod p = {p}")));
    }
    Ok(())
}

/// Restrict `vectors` to the combinations `v` with `T v = lambda v`.
fn eigen_kernel<F: Field>(
    cache: Option<&Cache>,
    space: &ManinSymbolSpace<F>,
    op: HeckeOp,
    lambda: &F::Elem,
    basis: &[Vec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let k = space.field();
    let images = images_via(cache, space, op, basis)?;
    let rows = images
        .into_iter()
        .zip(basis)
        .map(|(w, v)| w.iter().zip(v).map(|(a, b)| k.sub(a, &k.mul(lambda, b))).collect())
        .collect();
    let diff = Matrix::from_rows(k, space.dim(), rows);
    let combos = diff.left_kernel().basis_vectors();
    let basis_m = Matrix::from_rows(k, space.dim(), basis.to_vec());
    let vecs = combos.iter().map(|c| basis_m.vec_mul(c)).collect();
    Ok(Subspace::from_vectors(k, space.dim(), vecs).basis_vectors())
}

/// Detect the ideals `m = (p, T_l - l - 1, U_N)` and
/// `m_old = (p, T_l - l - 1, U_N - 1)` on the cuspidal plus space of
/// level `N^2` over `F_p`, imposing `T_l` for primes `l <= sturm(N^2)`.
pub fn eisenstein_locus(n: u64, p: u64) -> Result<EisensteinLocusReport> {
    eisenstein_locus_with(n, p, sturm_bound(n * n), None)
}

/// As [`eisenstein_locus`] with an explicit prime bound and an optional
/// Hecke cache.
pub fn eisenstein_locus_with(n: u64, p: u64, bound: u64, cache: Option<&Cache>) -> Result<EisensteinLocusReport> {
    check_pair(n, p)?;
    let k = PrimeField::new(p);
    let space = ManinSymbolSpace::new(n * n, Sign::Plus, &k)?;
    let cusp = space.cuspidal_subspace();
    let mut basis = cusp.basis_vectors();
    for l in primes_up_to(bound).into_iter().filter(|&l| l != n) {
        if basis.is_empty() {
            break;
        }
        basis = eigen_kernel(cache, &space, HeckeOp::T(l), &k.from_i64(l as i64 + 1), &basis)?;
    }
    let eisenstein_dim = basis.len();
    let m_dim = eigen_kernel(cache, &space, HeckeOp::U(n), &k.zero(), &basis)?.len();
    let m_old_dim = eigen_kernel(cache, &space, HeckeOp::U(n), &k.one(), &basis)?.len();
    Ok(EisensteinLocusReport {
        n,
        p,
        sturm: bound,
        cuspidal_dim: cusp.dim(),
        eisenstein_dim,
        m_dim,
        m_old_dim,
        verdict_m: m_dim > 0,
        verdict_m_old: m_old_dim > 0,
        n_is_minus_one: (n + 1).is_multiple_of(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pairs() {
        let r = eisenstein_locus(19, 5).unwrap();
        assert!(r.verdict_m && !r.verdict_m_old, "{r:?}");
        assert!(r.matches_theorem());
        assert_eq!(r.sturm, 64);
        assert_eq!(r.cuspidal_dim, 22);
        let r = eisenstein_locus(13, 5).unwrap();
        assert!(!r.verdict_m && !r.verdict_m_old, "{r:?}");
        assert!(matches!(eisenstein_locus(11, 5), Err(Error::OutsideHypothesis(_))));
        assert!(matches!(eisenstein_locus(19, 3), Err(Error::OutsideHypothesis(_))));
    }
}

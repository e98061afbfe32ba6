//! Eisenstein series of level `N^2`, their residues at the cusps, and the
//! Hecke module structure of `Div^0(C)` near the Eisenstein ideal.

mod divisor;
mod qexp;

pub use divisor::{divisor_action, divisor_action_matrix, CuspDivisor};
pub use qexp::{
    atkin_lehner_e, constant_term, default_truncation, e2, e2n, eigen_check, eisenstein_e, sigma,
    EigenReport, QExpansion,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{is_prime, is_primitive_root, is_square_mod, primes_up_to, Field, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::modsym::{CuspLabel, HeckeOp};

fn check_prime_level(n: u64) -> Result<()> {
    if !is_prime(n) {
        return Err(Error::InvalidArgument(format!("N = {n} is not prime")));
    }
    Ok(())
}

/// `Res(E) = (N^2 - 1)/24 * c`.
pub fn residue_of_e(n: u64) -> Result<CuspDivisor<Rationals>> {
    check_prime_level(n)?;
    let k = Rationals;
    let alpha = BigRational::new(BigInt::from(n * n - 1), BigInt::from(24));
    Ok(CuspDivisor::frak_c(&k, n).scale(&k, &alpha))
}

/// `Res(E_{2,N}) = (N - 1)/24 * (infinity - [0] + c)`.
pub fn residue_of_e2n(n: u64) -> Result<CuspDivisor<Rationals>> {
    check_prime_level(n)?;
    let k = Rationals;
    let alpha = BigRational::new(BigInt::from(n - 1), BigInt::from(24));
    Ok(CuspDivisor::infinity_part(&k, n).scale(&k, &alpha))
}

/// Independent check of the residues of `E` at `infinity` and `[0]`
/// against the constant terms of `E` and `w_{N^2} E` computed from their
/// `q`-expansions. Returns `(Res_inf, Res_[0])` on success.
pub fn cross_check_residue_of_e(n: u64) -> Result<(BigRational, BigRational)> {
    let res = residue_of_e(n)?;
    let terms = 2;
    let at_inf = constant_term(&eisenstein_e(n, terms));
    let at_zero = constant_term(&atkin_lehner_e(n, terms));
    if *res.coeff(CuspLabel::Infinity) != at_inf || *res.coeff(CuspLabel::Zero) != at_zero {
        return Err(Error::Contradiction(format!(
            "residue of E at N = {n}: divisor gives ({}, {}), q-expansions give ({at_inf}, {at_zero})",
            res.coeff(CuspLabel::Infinity),
            res.coeff(CuspLabel::Zero)
        )));
    }
    Ok((at_inf, at_zero))
}

/// Result of [`verify_cusp_lattice`].
#[derive(Debug, Clone, Serialize)]
pub struct CuspLatticeReport {
    pub n: u64,
    pub p: u64,
    /// Primes `l != N` up to the budget whose `T_l - l - 1` were imposed.
    pub ells_used: usize,
    /// Dimension of the common kernel in `Div^0(C; F_p)`.
    pub kernel_dim: usize,
    /// Kernel equals the span of `infinity - [0] + c` and `c`.
    pub spans_p: bool,
    /// `U_N c = 0`.
    pub u_kills_c: bool,
    /// `U_N (infinity - [0] + c) = infinity - [0] + c`.
    pub u_fixes_infinity_part: bool,
    /// Prime `l = -1 mod p` that is a primitive root mod `N`.
    pub aux_ell: u64,
    /// Prime `q != -1 mod p` that is a non-square mod `N`; `None` when
    /// every unit mod `N` is a square (`N = 2`).
    pub aux_q: Option<u64>,
}

impl CuspLatticeReport {
    pub fn ok(&self) -> bool {
        self.kernel_dim == 2 && self.spans_p && self.u_kills_c && self.u_fixes_infinity_part
    }
}

/// Compute the part of `Div^0(C; F_p)` killed by every `T_l - l - 1`
/// (`l <= budget`, `l != N`) and compare it with the span `P` of
/// `infinity - [0] + c` and `c`.
///
/// Needs `p` prime, `p != N`, `N != 1 mod p`, and a budget large enough to
/// contain the auxiliary primes used in the argument that the kernel is
/// exactly `P`.
pub fn verify_cusp_lattice(n: u64, p: u64, budget: u64) -> Result<CuspLatticeReport> {
    check_prime_level(n)?;
    if !is_prime(p) || p == n {
        return Err(Error::OutsideHypothesis(format!("need a prime p != N, got p = {p}")));
    }
    if n % p == 1 {
        return Err(Error::OutsideHypothesis(format!("N = {n} is 1 mod p = {p}")));
    }
    let ells: Vec<u64> = primes_up_to(budget).into_iter().filter(|&l| l != n).collect();
    let aux_ell = ells
        .iter()
        .copied()
        .find(|&l| (l + 1) % p == 0 && is_primitive_root(l, n));
    let all_squares = n == 2;
    let aux_q = ells
        .iter()
        .copied()
        .find(|&q| (q + 1) % p != 0 && !all_squares && !is_square_mod(q as i64, n));
    let aux_ell = aux_ell.ok_or(Error::IncreaseBudget(budget))?;
    if !all_squares && aux_q.is_none() {
        return Err(Error::IncreaseBudget(budget));
    }

    let k = PrimeField::new(p);
    let dim = n as usize + 1;
    // Div^0 as the kernel of the degree map
    let deg0: Vec<Vec<u64>> = (1..dim)
        .map(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v[0] = p - 1;
            v
        })
        .collect();
    let mut space = Subspace::from_vectors(&k, dim, deg0);
    for &l in &ells {
        if space.dim() == 0 {
            break;
        }
        let t = divisor_action_matrix(&k, HeckeOp::T(l), n)?.sub_scalar(&k.from_i64(l as i64 + 1));
        space = space.kernel_of(&t);
    }
    let c = CuspDivisor::frak_c(&k, n);
    let e = CuspDivisor::infinity_part(&k, n);
    let p_span = Subspace::from_vectors(&k, dim, vec![c.coeffs().to_vec(), e.coeffs().to_vec()]);
    let u = HeckeOp::U(n);
    Ok(CuspLatticeReport {
        n,
        p,
        ells_used: ells.len(),
        kernel_dim: space.dim(),
        spans_p: space == p_span,
        u_kills_c: divisor_action(&k, u, &c)? == CuspDivisor::zero(&k, n),
        u_fixes_infinity_part: divisor_action(&k, u, &e)? == e,
        aux_ell,
        aux_q,
    })
}

//! The newform congruent to `E` modulo a prime above `p`, and the depth of
//! that congruence.

use serde::Serialize;

use super::decompose::{Eigensystem, NewDecomposition};
use crate::arith::{OrderElement, PrimeIdeal, Valuation};
use crate::error::{Error, Result};
use crate::gamma0::sturm_bound;

/// `a_l = l + 1 mod P^s` for all primes `l <= bound`, `l != N`, with
/// equality of valuation at `witness`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCertificate {
    pub level: u64,
    /// The prime, rendered as `(p, g(t))`.
    pub prime: String,
    pub convention: String,
    pub s: u32,
    pub witness: u64,
    pub bound: u64,
}

fn eisenstein_difference(sys: &Eigensystem, l: u64, n: u64) -> Option<OrderElement> {
    let a = sys.get(l)?;
    // a_N(E) = 0 for U_N; a_l(E) = l + 1 otherwise (normalized)
    let target = if l == n { 0 } else { l as i64 + 1 };
    Some(a.add_int(-target))
}

/// First orbit (in decomposition order) and prime `P | p` of its order with
/// `a_l = l + 1 mod P` for all primes `l <= sturm(N^2)` and `a_N = 0 mod P`.
///
/// Only defined when `N = -1 mod p`, which is exactly when the Eisenstein
/// ideal `m` is nontrivial.
pub fn find_congruent_newform(decomp: &NewDecomposition, p: u64) -> Result<(usize, PrimeIdeal)> {
    let n = decomp.n;
    if !(n + 1).is_multiple_of(p) {
        return Err(Error::OutsideHypothesis(format!(
            "N = {n} is not -1 mod p = {p}; the Eisenstein locus is empty"
        )));
    }
    let bound = sturm_bound(n * n);
    for (i, orbit) in decomp.orbits.iter().enumerate() {
        let sys = &orbit.system;
        'ideals: for ideal in PrimeIdeal::above(&sys.minpoly, p) {
            for (&l, _) in sys.a.range(..=bound) {
                let diff = eisenstein_difference(sys, l, n).expect("stored");
                if !diff.is_integral() || !ideal.contains_power(&diff, 1)? {
                    continue 'ideals;
                }
            }
            return Ok((i, ideal));
        }
    }
    Err(Error::Contradiction(format!(
        "no newform orbit of level {} is congruent to E modulo a prime above {p}; investigate index/order issues",
        n * n
    )))
}

/// `s = min v_P(a_l - l - 1)` over primes `l <= sturm(N^2)`, `l != N`.
pub fn congruence_depth(sys: &Eigensystem, ideal: &PrimeIdeal, n: u64) -> Result<CongruenceCertificate> {
    let bound = sturm_bound(n * n);
    if sys.bound < bound {
        return Err(Error::InsufficientTruncation {
            needed: bound as usize,
            have: sys.bound as usize,
        });
    }
    let mut best: Option<(u32, u64)> = None;
    for (&l, _) in sys.a.range(..=bound) {
        if l == n {
            continue;
        }
        let diff = eisenstein_difference(sys, l, n).expect("stored");
        if let Valuation::Finite(v) = ideal.valuation(&diff)? {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, l));
            }
        }
    }
    let (s, witness) = best.ok_or_else(|| {
        Error::Contradiction("a_l = l + 1 exactly for every l up to the Sturm bound".into())
    })?;
    Ok(CongruenceCertificate {
        level: sys.level,
        prime: ideal.render("t"),
        convention: sys.convention(),
        s,
        witness,
        bound,
    })
}

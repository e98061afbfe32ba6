//! Arithmetic of `F = Q(N^(1/p))`: splitting of rational primes, the
//! predictions obtained from a congruent eigensystem about the unramified
//! degree-`p` extension `L / F`, and norm forms.

mod norm;

pub use norm::{
    multiplication_matrix, norm_by_determinant, norm_form_value, norm_search, symbolic_norm_form, MPoly,
};

use serde::Serialize;

use crate::arith::{factor_degrees_mod, is_pth_power_mod, multiplicative_order, IntPoly, OrderElement, PrimeIdeal};
use crate::congruence::Eigensystem;
use crate::error::{Error, Result};

/// Factorization pattern of `l` in `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub ell: u64,
    /// Residue degrees of the primes above `l`, ascending.
    pub degrees: Vec<usize>,
    pub inert: bool,
    /// `N` is a `p`-th power mod `l`.
    pub pth_power: bool,
}

/// Residue degrees of the primes of `F` over `l`, from the factorization of
/// `x^p - N` mod `l`, checked against the description: one prime of degree
/// 1 and `(p-1)/r` of degree `r = ord_p(l)` when `N` is a `p`-th power mod
/// `l`, and `l` inert otherwise.
pub fn splitting_in_f(ell: u64, n: u64, p: u64) -> Result<SplittingReport> {
    if ell == p || ell == n {
        return Err(Error::Ramified(ell));
    }
    let mut c = vec![0i64; p as usize + 1];
    c[0] = -(n as i64);
    c[p as usize] = 1;
    let degrees = factor_degrees_mod(&IntPoly::from_i64(&c), ell)?;
    let pth_power = is_pth_power_mod(n as i64, ell, p)?;
    let expected = if pth_power {
        let r = multiplicative_order(ell % p, p) as usize;
        let mut v = vec![1];
        v.extend(std::iter::repeat_n(r, (p as usize - 1) / r));
        v.sort_unstable();
        v
    } else {
        vec![p as usize]
    };
    if degrees != expected {
        return Err(Error::Contradiction(format!(
            "x^{p} - {n} mod {ell} has degrees {degrees:?}, expected {expected:?}"
        )));
    }
    Ok(SplittingReport {
        ell,
        inert: degrees == [p as usize],
        degrees,
        pth_power,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The degree-1 prime of `F` over `l` splits in `L`.
    SplitsInL,
    /// The degree-1 prime of `F` over `l` does not split in `L`.
    NonSplit,
    /// `l = 1 mod p` is inert in `F`, and (given class number `p`) the prime
    /// above it is principal.
    InertAndPrincipal,
    NoConclusion,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SplitsInL => "splits-in-L",
            Verdict::NonSplit => "non-split",
            Verdict::InertAndPrincipal => "inert-and-principal",
            Verdict::NoConclusion => "no-conclusion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub ell: u64,
    pub ell_mod_p: u64,
    /// `v_P(a_l - l - 1)`, truncated at `s + 1`.
    pub v_eisenstein: u32,
    /// `v_P(a_l - 2)`, truncated at `s + 1`.
    pub v_two: u32,
    pub verdict: Verdict,
}

fn truncated_valuation(ideal: &PrimeIdeal, x: &OrderElement, cap: u32) -> Result<u32> {
    Ok(ideal.valuation(x)?.finite().unwrap_or(cap).min(cap))
}

/// What the congruence `a_l = l + 1 mod P^s` (and its failure mod
/// `P^(s+1)`) implies about `l`.
pub fn predict(ell: u64, a_ell: &OrderElement, ideal: &PrimeIdeal, s: u32, n: u64, p: u64) -> Result<Prediction> {
    if ell == n || ell == p {
        return Err(Error::InvalidArgument(format!("no prediction for l = {ell}")));
    }
    let cap = s + 1;
    let v_eisenstein = truncated_valuation(ideal, &a_ell.add_int(-(ell as i64) - 1), cap)?;
    let v_two = truncated_valuation(ideal, &a_ell.add_int(-2), cap)?;
    let split = splitting_in_f(ell, n, p)?;
    let verdict = if ell % p == 1 {
        if v_two < cap {
            if !split.inert {
                return Err(Error::Contradiction(format!(
                    "l = {ell}: v(a_l - 2) = {v_two} <= s predicts l inert in F, but x^{p} - {n} has a root mod {ell}"
                )));
            }
            Verdict::InertAndPrincipal
        } else {
            Verdict::NoConclusion
        }
    } else {
        if !split.degrees.contains(&1) {
            return Err(Error::Contradiction(format!("l = {ell} has no degree-1 prime in F")));
        }
        if v_eisenstein >= cap {
            Verdict::SplitsInL
        } else {
            Verdict::NonSplit
        }
    };
    Ok(Prediction {
        ell,
        ell_mod_p: ell % p,
        v_eisenstein,
        v_two,
        verdict,
    })
}

/// One row of the coefficient table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub ell: u64,
    pub a: OrderElement,
    /// The congruence persists modulo `P^(s+1)`.
    pub bold: bool,
    /// A principal prime of `F` lies over `l` (by the corollary, or `l = N`).
    pub circled: bool,
    /// `None` for the ramified primes `p` and `N`.
    pub splitting: Option<SplittingReport>,
    pub prediction: Option<Prediction>,
}

/// Bold and circled flags for all primes `l <= ell_max` stored in `sys`.
pub fn table_flags(
    sys: &Eigensystem,
    ideal: &PrimeIdeal,
    s: u32,
    n: u64,
    p: u64,
    ell_max: u64,
) -> Result<Vec<TableRow>> {
    if sys.bound < ell_max {
        return Err(Error::InsufficientTruncation {
            needed: ell_max as usize,
            have: sys.bound as usize,
        });
    }
    let cap = s + 1;
    let mut rows = Vec::new();
    for (&ell, a) in sys.a.range(..=ell_max) {
        let v_eis = truncated_valuation(ideal, &a.add_int(-(ell as i64) - 1), cap)?;
        let v_two = truncated_valuation(ideal, &a.add_int(-2), cap)?;
        let bold = v_eis >= cap;
        let circled = ell == n || (ell % p == 1 && v_two < cap) || (ell % p != 1 && bold);
        let (splitting, prediction) = if ell == n || ell == p {
            (None, None)
        } else {
            let pred = predict(ell, a, ideal, s, n, p)?;
            let agrees = match pred.verdict {
                Verdict::SplitsInL | Verdict::InertAndPrincipal => circled,
                Verdict::NonSplit | Verdict::NoConclusion => !circled,
            };
            if !agrees {
                return Err(Error::Contradiction(format!("l = {ell}: flags disagree with prediction")));
            }
            (Some(splitting_in_f(ell, n, p)?), Some(pred))
        };
        rows.push(TableRow {
            ell,
            a: a.clone(),
            bold,
            circled,
            splitting,
            prediction,
        });
    }
    Ok(rows)
}

//! End-to-end runs: the survey of `(N, p)` pairs and the coefficient table
//! of the congruent newform, with TSV/JSON rendering.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::arith::{is_prime, primes_up_to};
use crate::cache::Cache;
use crate::classfield::{splitting_in_f, table_flags, SplittingReport, TableRow};
use crate::congruence::{
    congruence_depth, decompose_new_with_order, eisenstein_locus_with, find_congruent_newform,
    CongruenceCertificate, EisensteinLocusReport, Eigensystem,
};
use crate::error::{Error, Result};
use crate::gamma0::sturm_bound;

/// Default cap on Hecke field degrees in the decomposition.
pub const DEGREE_CAP: usize = 8;

/// One `(N, p)` row of a survey.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub n: u64,
    pub p: u64,
    /// `None` when `N = 1 mod p`, where the criterion does not apply.
    pub report: Option<EisensteinLocusReport>,
}

impl SurveyRow {
    pub fn ok(&self) -> bool {
        self.report.as_ref().is_none_or(|r| r.matches_theorem())
    }
}

/// Locus reports for every prime `5 <= N <= n_max`, `N != p`, and every `p`
/// in `ps`. `sturm` replaces the default prime bound `sturm(N^2)`.
pub fn survey(ps: &[u64], n_max: u64, sturm: Option<u64>, cache: Option<&Cache>) -> Result<Vec<SurveyRow>> {
    for &p in ps {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} must be a prime >= 5")));
        }
    }
    let pairs: Vec<(u64, u64)> = ps
        .iter()
        .flat_map(|&p| {
            primes_up_to(n_max)
                .into_iter()
                .filter(move |&n| n >= 5 && n != p)
                .map(move |n| (n, p))
        })
        .collect();
    pairs
        .par_iter()
        .map(|&(n, p)| {
            let report = if n % p == 1 {
                None
            } else {
                let bound = sturm.unwrap_or_else(|| sturm_bound(n * n));
                Some(eisenstein_locus_with(n, p, bound, cache)?)
            };
            Ok(SurveyRow { n, p, report })
        })
        .collect()
}

pub fn survey_tsv(rows: &[SurveyRow]) -> String {
    let mut out = String::from("N\tp\tsturm\tcuspidal_dim\tm_dim\tm_old_dim\tverdict_m\tverdict_m_old\tN_is_-1_mod_p\tstatus\n");
    for r in rows {
        match &r.report {
            Some(x) => out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                x.n,
                x.p,
                x.sturm,
                x.cuspidal_dim,
                x.m_dim,
                x.m_old_dim,
                x.verdict_m,
                x.verdict_m_old,
                x.n_is_minus_one,
                if x.matches_theorem() { "ok" } else { "MISMATCH" }
            )),
            None => out.push_str(&format!("{}\t{}\t\t\t\t\t\t\t\toutside-hypothesis\n", r.n, r.p)),
        }
    }
    out
}

/// Everything behind the coefficient table.
#[derive(Debug, Clone)]
pub struct TableReport {
    pub n: u64,
    pub p: u64,
    pub locus: EisensteinLocusReport,
    pub system: Eigensystem,
    pub certificate: CongruenceCertificate,
    pub rows: Vec<TableRow>,
}

/// Decompose, find the congruent orbit, certify the depth and flag every
/// prime `l <= ell_max`.
pub fn table(n: u64, p: u64, ell_max: u64, sturm: Option<u64>, cache: Option<&Cache>) -> Result<TableReport> {
    let bound = sturm.unwrap_or_else(|| sturm_bound(n * n));
    let locus = eisenstein_locus_with(n, p, bound, cache)?;
    locus.assert_theorem()?;
    if !locus.verdict_m {
        return Err(Error::OutsideHypothesis(format!(
            "no Eisenstein congruence at N = {n}, p = {p}"
        )));
    }
    let order: Vec<u64> = primes_up_to(sturm_bound(n * n)).into_iter().filter(|&l| l != n).collect();
    let decomp = decompose_new_with_order(n, ell_max, DEGREE_CAP, &order, cache)?;
    let (i, ideal) = find_congruent_newform(&decomp, p)?;
    let system = decomp.orbits[i].system.clone();
    let certificate = congruence_depth(&system, &ideal, n)?;
    let rows = table_flags(&system, &ideal, certificate.s, n, p, ell_max)?;
    Ok(TableReport {
        n,
        p,
        locus,
        system,
        certificate,
        rows,
    })
}

impl TableReport {
    pub fn tsv(&self) -> String {
        let c = &self.certificate;
        let mut out = format!(
            "# minpoly: {}\n# convention: {}\n# prime: {}\n# s: {} (witness {}, bound {})\n",
            self.system.minpoly.render("t"),
            c.convention,
            c.prime,
            c.s,
            c.witness,
            c.bound
        );
        out.push_str("ell\ta_coeffs\ta\tbold\tcircled\tsplitting\n");
        for r in &self.rows {
            let coeffs: Vec<String> = r.a.coeffs().iter().map(|x| x.to_string()).collect();
            let split = match &r.splitting {
                Some(s) => s.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
                None => "ramified".into(),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.ell,
                coeffs.join(","),
                r.a.render("t"),
                r.bold,
                r.circled,
                split
            ));
        }
        out
    }

    pub fn json(&self) -> Value {
        serde_json::json!({
            "N": self.n.to_string(),
            "p": self.p.to_string(),
            "locus": self.locus,
            "eigensystem": self.system.to_json(),
            "certificate": self.certificate,
            "rows": self.rows,
        })
    }
}

/// Splitting reports for primes `l <= ell_max`, `l` not in `{p, N}`.
pub fn splitting(n: u64, p: u64, ell_max: u64) -> Result<Vec<SplittingReport>> {
    primes_up_to(ell_max)
        .into_par_iter()
        .filter(|&l| l != p && l != n)
        .map(|l| splitting_in_f(l, n, p))
        .collect()
}

pub fn splitting_tsv(rows: &[SplittingReport]) -> String {
    let mut out = String::from("ell\tdegrees\tinert\tpth_power\n");
    for r in rows {
        let d: Vec<String> = r.degrees.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{}\t{}\t{}\t{}\n", r.ell, d.join(","), r.inert, r.pth_power));
    }
    out
}

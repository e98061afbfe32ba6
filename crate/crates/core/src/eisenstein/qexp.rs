//! Truncated `q`-expansions with rational coefficients and the Eisenstein
//! series `E2`, `E_{2,N}` and `E`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::field::rational_to_string;
use crate::error::{Error, Result};

/// `sigma(n) = sum of the positive divisors of n`.
pub fn sigma(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("sigma(0) is undefined".into()));
    }
    let mut s = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += d;
            if d * d != n {
                s += n / d;
            }
        }
        d += 1;
    }
    Ok(s)
}

/// `a_0 + a_1 q + ... + a_{n-1} q^{n-1}` over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QExpansion {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        QExpansion { coeffs }
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len(), "truncation mismatch");
        QExpansion::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QExpansion::new(self.coeffs.iter().map(|a| a * s).collect())
    }

    /// `f(m z)`: the coefficient of `q^k` moves to `q^(m k)`.
    pub fn dilate(&self, m: usize) -> Self {
        let mut c = vec![BigRational::zero(); self.len()];
        for (k, a) in self.coeffs.iter().enumerate() {
            if k * m < c.len() {
                c[k * m] = a.clone();
            } else {
                break;
            }
        }
        QExpansion::new(c)
    }
}

/// `E2 = -1/24 + sum sigma(n) q^n`.
pub fn e2(n_terms: usize) -> QExpansion {
    let mut c = Vec::with_capacity(n_terms);
    for n in 0..n_terms {
        c.push(if n == 0 {
            BigRational::new((-1).into(), 24.into())
        } else {
            rat(sigma(n as u64).unwrap() as i64)
        });
    }
    QExpansion::new(c)
}

/// `E_{2,N}(z) = E2(z) - N E2(N z)`.
pub fn e2n(n: u64, n_terms: usize) -> QExpansion {
    let e = e2(n_terms);
    e.sub(&e.dilate(n as usize).scale(&rat(n as i64)))
}

/// `E(z) = N E_{2,N}(z) - N E_{2,N}(N z)`.
pub fn eisenstein_e(n: u64, n_terms: usize) -> QExpansion {
    let f = e2n(n, n_terms);
    let nn = rat(n as i64);
    f.scale(&nn).sub(&f.dilate(n as usize).scale(&nn))
}

/// `(w_{N^2} E)(z) = E_{2,N}(z) - N^2 E_{2,N}(N z)`.
pub fn atkin_lehner_e(n: u64, n_terms: usize) -> QExpansion {
    let f = e2n(n, n_terms);
    f.sub(&f.dilate(n as usize).scale(&rat((n * n) as i64)))
}

/// Outcome of [`eigen_check`].
#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    /// `(l, eigenvalue)` for each `T_l` relation that holds, as decimal strings.
    pub t_eigenvalues: Vec<(u64, String)>,
    /// Primes whose `T_l` relation fails.
    pub t_failures: Vec<u64>,
    /// `U_N` eigenvalue, if the expansion is a `U_N`-eigenvector.
    pub u_eigenvalue: Option<String>,
    /// Number of indices `m` checked per relation.
    pub checked_up_to: usize,
}

/// Check `a_{lm} + l a_{m/l} = lambda_l a_m` for `l` in `ells` (prime to
/// `N`) and `a_{Nm} = lambda a_m` for `0 <= m <= m_max`.
pub fn eigen_check(f: &QExpansion, n: u64, ells: &[u64], m_max: usize) -> Result<EigenReport> {
    let largest = ells.iter().copied().chain([n]).max().unwrap() as usize;
    let needed = largest * m_max + 1;
    if f.len() < needed {
        return Err(Error::InsufficientTruncation {
            needed,
            have: f.len(),
        });
    }
    let eigen_of = |pairs: Vec<(BigRational, BigRational)>| -> Option<BigRational> {
        // pairs of (image coefficient, original coefficient)
        let lambda = match pairs.iter().find(|(_, a)| !a.is_zero()) {
            Some((b, a)) => b / a,
            None => BigRational::zero(),
        };
        pairs
            .iter()
            .all(|(b, a)| *b == &lambda * a)
            .then_some(lambda)
    };
    let mut t_eigenvalues = Vec::new();
    let mut t_failures = Vec::new();
    for &l in ells {
        if n.is_multiple_of(l) {
            return Err(Error::InvalidArgument(format!("T_{l} needs l prime to {n}")));
        }
        let lr = rat(l as i64);
        let pairs = (0..=m_max)
            .map(|m| {
                let mut b = f.coeff(l as usize * m).clone();
                if m % l as usize == 0 {
                    b += &lr * f.coeff(m / l as usize);
                }
                (b, f.coeff(m).clone())
            })
            .collect();
        match eigen_of(pairs) {
            Some(lambda) => t_eigenvalues.push((l, rational_to_string(&lambda))),
            None => t_failures.push(l),
        }
    }
    let pairs = (0..=m_max)
        .map(|m| (f.coeff(n as usize * m).clone(), f.coeff(m).clone()))
        .collect();
    let u_eigenvalue = eigen_of(pairs).map(|l| rational_to_string(&l));
    Ok(EigenReport {
        t_eigenvalues,
        t_failures,
        u_eigenvalue,
        checked_up_to: m_max,
    })
}

/// Default truncation `2 * Sturm(N^2) + 1`.
pub fn default_truncation(n: u64) -> usize {
    2 * crate::gamma0::sturm_bound(n * n) as usize + 1
}

/// Constant term helper used by the residue cross-check.
pub fn constant_term(f: &QExpansion) -> BigRational {
    f.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
}

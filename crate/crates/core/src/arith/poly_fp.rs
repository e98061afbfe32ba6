//! Dense univariate polynomials over `F_p` and their factorization
//! (square-free decomposition, distinct-degree and Cantor-Zassenhaus
//! equal-degree splitting).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{mod_inv, IntPoly};
use crate::error::{Error, Result};

/// Polynomial over `F_p`, coefficients low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    c: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyFp { p, c }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        PolyFp { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        Self::new(self.p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + self.mulmod(a, b)) % self.p;
            }
        }
        Self::new(self.p, v)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| self.mulmod(a, s)).collect())
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = mod_inv(d.lead() as i64, self.p).expect("leading coefficient invertible");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = self.mulmod(r[k + dd], inv);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                let t = self.mulmod(coef, b);
                r[k + j] = (r[k + j] + self.p - t) % self.p;
            }
        }
        r.truncate(dd);
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inv(self.lead() as i64, self.p).expect("unit");
        self.scale(inv)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inv(r0.lead() as i64, p).expect("unit");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| self.mulmod(a, i as u64 % self.p))
            .collect();
        Self::new(self.p, v)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Evaluate at a point of `F_p`.
    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0u64, |acc, &a| (self.mulmod(acc, x) + a) % self.p)
    }

    /// Square-free decomposition: pairs `(g, k)` with `self = lc * prod g^k`,
    /// each `g` monic and square-free.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyFp, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let p = self.p;
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_rem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if !c.is_one() {
            // c is a p-th power: take the root coefficientwise
            let root: Vec<u64> = c.c.iter().step_by(p as usize).copied().collect();
            let root = PolyFp::new(p, root);
            for (g, k) in root.squarefree_decomposition() {
                out.push((g, k * p as usize));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs `(d, g)` where `g` is the product of all irreducible factors of
    /// degree `d`.
    pub fn distinct_degree(&self) -> Vec<(usize, PolyFp)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod_u64(p, &f);
            let g = h.sub(&x).gcd(&f);
            if !g.is_one() {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if let Some(deg) = f.degree() {
            if deg > 0 {
                out.push((deg, f));
            }
        }
        out
    }

    /// Split a monic square-free product of irreducibles all of degree `d`.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        loop {
            let a = PolyFp::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(nd-1)) for F_2
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                a.pow_mod(&e, self).sub(&Self::one(p))
            };
            let g = b.gcd(self);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.div_rem(&g).0.monic();
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients).
    pub fn factor(&self) -> Vec<(PolyFp, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, k) in self.squarefree_decomposition() {
            for (d, h) in g.distinct_degree() {
                for irr in h.equal_degree(d, &mut rng) {
                    out.push((irr, k));
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.c.len(), &a.0.c, a.1).cmp(&(b.0.c.len(), &b.0.c, b.1))
        });
        out
    }
}

/// Reduce an integer polynomial modulo a prime.
pub fn reduce_int_poly(f: &IntPoly, ell: u64) -> PolyFp {
    let m = num_bigint::BigInt::from(ell);
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = ((c % &m) + &m) % &m;
            u64::try_from(r).expect("residue fits in u64")
        })
        .collect();
    PolyFp::new(ell, coeffs)
}

/// Multiset of degrees of the irreducible factors of `poly` over `F_l`,
/// counted with multiplicity, sorted ascending.
pub fn factor_degrees_mod(poly: &IntPoly, ell: u64) -> Result<Vec<usize>> {
    if poly.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let f = reduce_int_poly(poly, ell);
    if f.degree() != poly.degree() {
        return Err(Error::LeadingCoefficientVanishes);
    }
    let mut degrees = Vec::new();
    for (g, k) in f.squarefree_decomposition() {
        for (d, h) in g.distinct_degree() {
            let count = h.degree().unwrap_or(0) / d;
            for _ in 0..count * k {
                degrees.push(d);
            }
        }
    }
    degrees.sort_unstable();
    Ok(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_roots(f: &PolyFp) -> usize {
        (0..f.modulus()).filter(|&x| f.eval(x) == 0).count()
    }

    #[test]
    fn degrees_of_x5_minus_19() {
        let f = IntPoly::from_i64(&[-19, 0, 0, 0, 0, 1]);
        assert_eq!(factor_degrees_mod(&f, 7).unwrap(), vec![1, 4]);
        assert_eq!(factor_degrees_mod(&f, 11).unwrap(), vec![5]);
        assert_eq!(factor_degrees_mod(&IntPoly::from_i64(&[-1, 1]), 13).unwrap(), vec![1]);
        // root-count oracle
        assert_eq!(brute_roots(&reduce_int_poly(&f, 7)), 1);
        assert_eq!(brute_roots(&reduce_int_poly(&f, 11)), 0);
    }

    #[test]
    fn leading_coefficient_check() {
        let f = IntPoly::from_i64(&[1, 0, 7]);
        assert_eq!(factor_degrees_mod(&f, 7), Err(Error::LeadingCoefficientVanishes));
    }

    #[test]
    fn repeated_factors() {
        // (x-1)^2 (x^2+1) over F_7: x^2+1 irreducible since -1 is a non-square
        let a = PolyFp::from_i64(7, &[-1, 1]);
        let b = PolyFp::from_i64(7, &[1, 0, 1]);
        let f = a.mul(&a).mul(&b);
        let fac = f.factor();
        assert_eq!(fac, vec![(a.clone(), 2), (b.clone(), 1)]);
        // p-th power case: (x-1)^7 over F_7
        let g = (0..7).fold(PolyFp::one(7), |acc, _| acc.mul(&a));
        assert_eq!(g.factor(), vec![(a, 7)]);
    }

    #[test]
    fn full_factorization_reconstructs() {
        for p in [2u64, 3, 5, 13, 101] {
            let f = PolyFp::from_i64(p, &[3, -1, 4, 1, -5, 9, 2, 6, 1]);
            let fac = f.factor();
            let mut prod = PolyFp::one(p);
            for (g, k) in &fac {
                for _ in 0..*k {
                    prod = prod.mul(g);
                }
            }
            assert_eq!(prod, f.monic(), "p = {p}");
        }
    }

    #[test]
    fn xgcd_identity() {
        let a = PolyFp::from_i64(11, &[1, 2, 3, 1]);
        let b = PolyFp::from_i64(11, &[5, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}

//! Integer polynomials: arithmetic, resultants, and factorization over `Q`
//! by modular factorization, Hensel lifting and subset recombination.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly_fp::{reduce_int_poly, PolyFp};
use super::primes_up_to;

/// Polynomial with `BigInt` coefficients, low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut c = coeffs;
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn constant(a: BigInt) -> Self {
        Self::new(vec![a])
    }

    /// `x - a`
    pub fn linear(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.c
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, a| acc * x + BigRational::from_integer(a.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Self::new(self.c.iter().map(|a| a / &g).collect())
    }

    /// Exact division in `Z[x]`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        let lc = d.lead();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let (qk, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if !qk.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &qk * b;
                }
            }
            q[k] = qk;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder `prem(self, d)`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.lead();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            let lr = r.lead();
            let mut t = vec![BigInt::zero(); shift];
            t.extend(d.c.iter().map(|b| b * &lr));
            r = r.scale(&lc).sub(&Self::new(t));
        }
        r
    }

    /// Primitive gcd in `Z[x]` (positive leading coefficient).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Reduce mod `m` to coefficients in `[0, m)`.
    pub fn mod_positive(&self, m: &BigInt) -> Self {
        Self::new(self.c.iter().map(|a| a.mod_floor(m)).collect())
    }

    /// Reduce mod `m` to the symmetric range `(-m/2, m/2]`.
    pub fn mod_symmetric(&self, m: &BigInt) -> Self {
        let half: BigInt = m / 2;
        Self::new(
            self.c
                .iter()
                .map(|a| {
                    let r = a.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    fn from_fp(f: &PolyFp) -> Self {
        Self::new(f.coeffs().iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() || !mag.is_one() {
                s.push_str(&mag.to_string());
                if !mono.is_empty() {
                    s.push('*');
                }
            }
            s.push_str(&mono);
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `Res(f, g) = lc(f)^deg(g) * prod g(roots of f)` via the Sylvester matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(n), Some(m)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    if n == 0 && m == 0 {
        return BigInt::one();
    }
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, a) in f.c.iter().rev().enumerate() {
            row[i + j] = a.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, a) in g.c.iter().rev().enumerate() {
            row[i + j] = a.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

pub fn discriminant(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let r = resultant(f, &f.derivative());
    let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    sign * r / f.lead()
}

/// Factorization over `Q` of a nonzero integer polynomial: irreducible
/// primitive factors with multiplicity, plus an integer unit/content factor
/// (returned as a degree-0 entry when it is not 1). The product of
/// `factor^multiplicity` reconstructs the input exactly.
pub fn factor_over_q(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out = Vec::new();
    let pp = f.primitive_part();
    let unit = &f.lead() / pp.lead();
    if !unit.is_one() {
        out.push((IntPoly::constant(unit), 1));
    }
    if pp.degree() == Some(0) {
        return out;
    }
    let g = pp.gcd(&pp.derivative());
    let sqf = pp.div_exact(&g).expect("gcd divides").primitive_part();
    let mut irreducibles = factor_squarefree(&sqf);
    irreducibles.sort();
    let mut rest = pp;
    for q in irreducibles {
        let mut k = 0;
        while let Some(r) = rest.div_exact(&q) {
            rest = r;
            k += 1;
        }
        debug_assert!(k > 0);
        out.push((q, k));
    }
    debug_assert!(rest.degree() == Some(0) && rest.lead().abs().is_one());
    out.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
    out
}

fn coeff_bound(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let max = f.c.iter().map(|a| a.abs()).max().unwrap_or_default();
    // |lc| * 2^n * sqrt(n+1) * max|f_i| bounds every scaled factor
    let sqrt = BigInt::from(((n + 1) as f64).sqrt().ceil() as u64);
    f.lead().abs() * (BigInt::one() << n) * sqrt * max
}

fn choose_prime(f: &IntPoly) -> (u64, Vec<PolyFp>) {
    let mut best: Option<(u64, Vec<PolyFp>)> = None;
    let mut good = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        if (f.lead() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_int_poly(f, p);
        if !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        let factors: Vec<PolyFp> = fp.factor().into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        good += 1;
        if good >= 6 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("some prime keeps the polynomial square-free")
}

/// Lift `f = G*H mod p` (G monic) to `mod p^k`.
fn hensel_pair(f: &IntPoly, g: &PolyFp, h: &PolyFp, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, _, t) = g.xgcd(h);
    assert!(one.is_one(), "factors must be coprime");
    let pb = BigInt::from(p);
    let mut big_g = IntPoly::from_fp(g);
    let mut big_h = IntPoly::from_fp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let diff = f.sub(&big_g.mul(&big_h));
        let e_int = IntPoly::new(diff.c.iter().map(|a| a / &pj).collect());
        let e = reduce_int_poly(&e_int, p);
        let dg = e.mul(&t).rem(g);
        let dh = e.sub(&h.mul(&dg)).div_rem(g).0;
        big_g = big_g.add(&IntPoly::from_fp(&dg).scale(&pj)).mod_positive(&next);
        big_h = big_h.add(&IntPoly::from_fp(&dh).scale(&pj)).mod_positive(&next);
        pj = next;
    }
    (big_g, big_h)
}

/// Lift the monic modular factors of `f` to `mod p^k`.
fn hensel_multi(f: &IntPoly, factors: &[PolyFp], p: u64, k: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let inv = f.lead().modinv(&pk).expect("lc is a unit mod p");
        return vec![f.scale(&inv).mod_positive(&pk)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g = left.iter().fold(PolyFp::one(p), |acc, x| acc.mul(x));
    let lc = reduce_int_poly(&IntPoly::constant(f.lead()), p);
    let h = right.iter().fold(lc, |acc, x| acc.mul(x));
    let (big_g, big_h) = hensel_pair(f, &g, &h, p, k);
    let mut out = hensel_multi(&big_g, left, p, k);
    out.extend(hensel_multi(&big_h, right, p, k));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive square-free polynomial of degree >= 1.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    if f.degree() == Some(1) {
        return vec![f.primitive_part()];
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.primitive_part()];
    }
    let bound = coeff_bound(f) * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        k += 1;
        pk *= &pb;
    }
    let mut lifted = hensel_multi(f, &modular, p, k);
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in subsets(lifted.len(), size) {
            let lc = IntPoly::constant(rest.lead());
            let cand = subset
                .iter()
                .fold(lc, |acc, &i| acc.mul(&lifted[i]))
                .mod_symmetric(&pk)
                .primitive_part();
            if let Some(q) = rest.div_exact(&cand) {
                found.push(cand);
                rest = q;
                let mut keep = Vec::new();
                for (i, g) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest.primitive_part());
    }
    found
}

/// Integer value of a `BigInt` that is known to be small.
pub fn to_i64(a: &BigInt) -> Option<i64> {
    a.to_i64()
}

pub fn is_negative(a: &BigInt) -> bool {
    a.sign() == Sign::Minus
}

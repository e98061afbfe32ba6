//! Elements of `Q[t]/(m)`, the order `Z[t]/(m)`, and prime ideals of the
//! form `(p, g(t))` with valuations computed by ideal-power membership.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly_fp::{reduce_int_poly, PolyFp};
use super::poly_z::{resultant, IntPoly};
use crate::error::{Error, Result};

/// An element of `Q[t]/(m)` in the power basis `1, t, ..., t^(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderElement {
    minpoly: IntPoly,
    coeffs: Vec<BigRational>,
}

impl OrderElement {
    /// Build from arbitrary-length coefficients, reducing modulo `m`.
    pub fn new(minpoly: &IntPoly, coeffs: Vec<BigRational>) -> Self {
        assert!(minpoly.is_monic(), "minimal polynomial must be monic");
        let d = minpoly.degree().expect("nonzero minimal polynomial");
        let mut c = coeffs;
        // reduce high powers using t^d = -(m_0 + ... + m_{d-1} t^{d-1})
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for (i, mi) in minpoly.coeffs()[..d].iter().enumerate() {
                c[shift + i] -= &top * BigRational::from_integer(mi.clone());
            }
        }
        c.resize(d, BigRational::zero());
        OrderElement {
            minpoly: minpoly.clone(),
            coeffs: c,
        }
    }

    pub fn from_ints(minpoly: &IntPoly, coeffs: &[i64]) -> Self {
        Self::new(
            minpoly,
            coeffs
                .iter()
                .map(|&a| BigRational::from_integer(a.into()))
                .collect(),
        )
    }

    pub fn from_int(minpoly: &IntPoly, a: i64) -> Self {
        Self::from_ints(minpoly, &[a])
    }

    /// The generator `t`.
    pub fn gen(minpoly: &IntPoly) -> Self {
        Self::from_ints(minpoly, &[0, 1])
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, or an error if some coordinate is not integral.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()).ok_or(Error::NotInOrder))
            .collect()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.minpoly, o.minpoly, "elements of different fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        OrderElement {
            minpoly: self.minpoly.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        OrderElement {
            minpoly: self.minpoly.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        OrderElement {
            minpoly: self.minpoly.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::new(&self.minpoly, prod)
    }

    pub fn add_int(&self, a: i64) -> Self {
        self.add(&Self::from_int(&self.minpoly, a))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        OrderElement {
            minpoly: self.minpoly.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    /// Field norm `N(alpha) = Res(m, alpha)`.
    pub fn norm(&self) -> BigRational {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        );
        let d = self.coeffs.len() as u32;
        BigRational::new(resultant(&self.minpoly, &num), den.pow(d))
    }

    /// Apply a ring map `t -> image` (image must share this field's minimal
    /// polynomial, or be an element of another field where `m(image) = 0`).
    pub fn substitute(&self, image: &OrderElement) -> OrderElement {
        let mut acc = OrderElement::from_int(image.minpoly(), 0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(image).add(&OrderElement::from_int(image.minpoly(), 0).add_rational(c));
        }
        acc
    }

    fn add_rational(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Human-readable rendering in the power basis, e.g. `-4 - 3*b`.
    pub fn render(&self, var: &str) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
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
            let m = super::field::rational_to_string(&mag);
            if mono.is_empty() {
                s.push_str(&m);
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{m}*{mono}"));
            }
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

#[derive(Serialize, Deserialize)]
struct OrderElementJson {
    minpoly: Vec<String>,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for OrderElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrderElementJson {
            minpoly: self.minpoly.coeffs().iter().map(|c| c.to_string()).collect(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = OrderElementJson::deserialize(d)?;
        let parse = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        let m = IntPoly::new(j.minpoly.iter().map(|s| parse(s)).collect::<std::result::Result<_, _>>()?);
        if !m.is_monic() {
            return Err(D::Error::custom("minimal polynomial must be monic"));
        }
        let mut coeffs = Vec::new();
        for [n, den] in &j.coeffs {
            let den = parse(den)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(parse(n)?, den));
        }
        Ok(OrderElement::new(&m, coeffs))
    }
}

/// A `p`-adic valuation value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= k`.
    pub fn at_least(self, k: u32) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// The ideal `(p, g(t))` of `Z[t]/(m)`, for `g` a monic irreducible factor
/// of `m` mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub p: u64,
    /// Monic lift of the residue generator, coefficients in `[0, p)`.
    pub gen: IntPoly,
    /// Multiplicity of `g` in `m` mod `p`.
    pub e: u32,
    /// `deg g`.
    pub f: u32,
    pub minpoly: IntPoly,
    /// Whether `Z[t]` is maximal at `p` (Dedekind criterion). When false
    /// the `(p, g)` description may not give a prime, and valuations are
    /// only membership depths in `Z[t]/(m)`.
    pub p_maximal: bool,
}

impl PrimeIdeal {
    /// All ideals `(p, g)` above `p`, one per irreducible factor of `m` mod `p`.
    pub fn above(minpoly: &IntPoly, p: u64) -> Vec<PrimeIdeal> {
        assert!(minpoly.is_monic());
        let mbar = reduce_int_poly(minpoly, p);
        let maximal = is_p_maximal(minpoly, p);
        mbar.factor()
            .into_iter()
            .map(|(g, e)| PrimeIdeal {
                p,
                gen: IntPoly::new(g.coeffs().iter().map(|&c| BigInt::from(c)).collect()),
                e: e as u32,
                f: g.degree().unwrap() as u32,
                minpoly: minpoly.clone(),
                p_maximal: maximal,
            })
            .collect()
    }

    /// Whether this is the only ideal of this form above `p`.
    pub fn is_unique_above(&self) -> bool {
        self.e * self.f == self.minpoly.degree().unwrap() as u32
    }

    /// Upper-triangular basis of the lattice `P^k` inside `Z^d`.
    pub fn power_basis(&self, k: u32) -> Vec<Vec<BigInt>> {
        let d = self.minpoly.degree().unwrap();
        let g = OrderElement::new(
            &self.minpoly,
            self.gen.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        );
        let t = OrderElement::gen(&self.minpoly);
        let p = OrderElement::from_int(&self.minpoly, self.p as i64);
        let mut gens = Vec::new();
        for i in 0..=k {
            // p^i g^(k-i)
            let mut x = OrderElement::from_int(&self.minpoly, 1);
            for _ in 0..i {
                x = x.mul(&p);
            }
            for _ in i..k {
                x = x.mul(&g);
            }
            for _ in 0..d {
                gens.push(x.integer_coeffs().expect("integral generator"));
                x = x.mul(&t);
            }
        }
        hnf(gens, d)
    }

    pub fn contains_power(&self, alpha: &OrderElement, k: u32) -> Result<bool> {
        let v = alpha.integer_coeffs()?;
        if k == 0 {
            return Ok(true);
        }
        Ok(lattice_contains(&self.power_basis(k), v))
    }

    /// The exact valuation of `alpha` at this ideal.
    pub fn valuation(&self, alpha: &OrderElement) -> Result<Valuation> {
        assert_eq!(alpha.minpoly(), &self.minpoly, "element of another field");
        let v = alpha.integer_coeffs()?;
        if alpha.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let norm = alpha.norm().to_integer().abs();
        let pb = BigInt::from(self.p);
        let mut vp = 0u32;
        let mut n = norm;
        while (&n % &pb).is_zero() {
            n /= &pb;
            vp += 1;
        }
        // P^k | alpha forces p^(k f) | N(alpha) when the order is p-maximal;
        // otherwise vp is still a bound for the length of the chain
        let bound = if self.p_maximal { vp / self.f } else { vp };
        let mut k = 0;
        while k < bound && lattice_contains(&self.power_basis(k + 1), v.clone()) {
            k += 1;
        }
        Ok(Valuation::Finite(k))
    }

    pub fn render(&self, var: &str) -> String {
        format!("({}, {})", self.p, self.gen.render(var))
    }
}

/// Hermite normal form of the lattice spanned by `rows` in `Z^d`, returned as
/// `d` upper-triangular rows with positive diagonal (the lattice must have
/// full rank).
pub fn hnf(mut rows: Vec<Vec<BigInt>>, d: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    for col in 0..d {
        loop {
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let pivot_row = rows[piv].clone();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = rows[i][col].div_floor(&pivot_row[col]);
                for j in col..d {
                    let t = &q * &pivot_row[j];
                    rows[i][j] -= t;
                }
            }
        }
        let idx = (0..rows.len())
            .find(|&i| !rows[i][col].is_zero())
            .expect("lattice of full rank");
        let mut r = rows.swap_remove(idx);
        if r[col].is_negative() {
            r.iter_mut().for_each(|x| *x = -x.clone());
        }
        out.push(r);
    }
    // reduce entries above the diagonal
    for c in 0..d {
        for i in 0..c {
            let q = out[i][c].div_floor(&out[c][c]);
            if !q.is_zero() {
                let row = out[c].clone();
                for j in c..d {
                    out[i][j] -= &q * &row[j];
                }
            }
        }
    }
    out
}

fn lattice_contains(basis: &[Vec<BigInt>], mut v: Vec<BigInt>) -> bool {
    for (c, row) in basis.iter().enumerate() {
        let (q, r) = v[c].div_mod_floor(&row[c]);
        if !r.is_zero() {
            return false;
        }
        if !q.is_zero() {
            for j in c..v.len() {
                v[j] -= &q * &row[j];
            }
        }
    }
    v.iter().all(|x| x.is_zero())
}

/// Dedekind criterion: whether `Z[t]/(m)` is maximal at `p`.
pub fn is_p_maximal(minpoly: &IntPoly, p: u64) -> bool {
    let mbar = reduce_int_poly(minpoly, p);
    let factors = mbar.factor();
    let g = factors.iter().fold(PolyFp::one(p), |acc, (g, _)| acc.mul(g));
    let (h, r) = mbar.div_rem(&g);
    debug_assert!(r.is_zero());
    let lift = |f: &PolyFp| IntPoly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect());
    let diff = lift(&g).mul(&lift(&h)).sub(minpoly);
    let pb = BigInt::from(p);
    let f_int = IntPoly::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    let fbar = reduce_int_poly(&f_int, p);
    fbar.gcd(&g).gcd(&h).is_one()
}

/// Primes `p` at which `Z[t]/(m)` fails to be maximal (divisors of the
/// discriminant checked by the Dedekind criterion).
pub fn non_maximal_primes(minpoly: &IntPoly) -> Vec<u64> {
    let disc = super::poly_z::discriminant(minpoly).abs();
    let mut out = Vec::new();
    let mut n = disc;
    let mut q = 2u64;
    // trial division suffices for the small discriminants met in practice;
    // any large cofactor is checked directly when it fits in u64
    while BigInt::from(q) * BigInt::from(q) <= n && q < 1_000_000 {
        let qb = BigInt::from(q);
        if (&n % &qb).is_zero() {
            let mut e = 0;
            while (&n % &qb).is_zero() {
                n /= &qb;
                e += 1;
            }
            if e >= 2 && !is_p_maximal(minpoly, q) {
                out.push(q);
            }
        }
        q += 1;
    }
    out
}

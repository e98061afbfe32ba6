//! Norms from `F = Q(N^(1/p))`: numeric values, the symbolic norm form in
//! `p` variables, and a bounded search for elements of given norm.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::poly_z::{det_bareiss, resultant};
use crate::arith::IntPoly;

fn kummer_poly(n: u64, p: u64) -> IntPoly {
    let mut c = vec![BigInt::zero(); p as usize + 1];
    c[0] = -BigInt::from(n);
    c[p as usize] = BigInt::one();
    IntPoly::new(c)
}

/// `Norm(sum c_i theta^i)` for `theta^p = N`, as the resultant of
/// `x^p - N` and `sum c_i x^i`.
pub fn norm_form_value(coeffs: &[i64], n: u64, p: u64) -> BigInt {
    assert!(coeffs.len() <= p as usize, "at most p coefficients");
    let g = IntPoly::from_i64(coeffs);
    if g.is_zero() {
        return BigInt::zero();
    }
    resultant(&kummer_poly(n, p), &g)
}

/// Matrix of multiplication by `sum c_i theta^i` on the basis
/// `1, theta, ..., theta^(p-1)`; its determinant is the norm.
pub fn multiplication_matrix(coeffs: &[i64], n: u64, p: u64) -> Vec<Vec<BigInt>> {
    let p = p as usize;
    let mut m = vec![vec![BigInt::zero(); p]; p];
    for (j, row) in m.iter_mut().enumerate() {
        for (i, &c) in coeffs.iter().enumerate() {
            let k = i + j;
            let v = if k >= p { BigInt::from(c) * n } else { BigInt::from(c) };
            row[k % p] += v;
        }
    }
    m
}

/// Norm via the determinant of the multiplication matrix.
pub fn norm_by_determinant(coeffs: &[i64], n: u64, p: u64) -> BigInt {
    det_bareiss(multiplication_matrix(coeffs, n, p))
}

/// Polynomial with integer coefficients in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut m = Self::zero(nvars);
        m.add_term(vec![0; nvars], c);
        m
    }

    /// `c * x_i`.
    pub fn var(nvars: usize, i: usize, c: BigInt) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut m = Self::zero(nvars);
        m.add_term(e, c);
        m
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.nvars);
        let entry = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// Terms sorted by exponent vector, largest first.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (e.clone(), c.clone())).collect()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, x: &[i64]) -> BigInt {
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                t *= BigInt::from(*xi).pow(k);
            }
            total += t;
        }
        total
    }
}

/// Variable names `a, b, c, ...`.
fn var_name(i: usize) -> char {
    (b'a' + i as u8) as char
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(abs.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(var_name(i).to_string()),
                    _ => factors.push(format!("{}^{x}", var_name(i))),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// The norm form `Norm(a + b theta + c theta^2 + ...)` as a polynomial in
/// `p` variables, expanded from the determinant of the multiplication
/// matrix by Laplace expansion over column subsets.
pub fn symbolic_norm_form(n: u64, p: u64) -> MPoly {
    let pv = p as usize;
    assert!(pv <= 16, "symbolic expansion is exponential in p");
    // entry (j, k) of the multiplication matrix: coefficient i = k - j mod p,
    // times N when the index wraps
    let entry = |j: usize, k: usize| -> MPoly {
        let i = (k + pv - j) % pv;
        let c = if i + j >= pv { BigInt::from(n) } else { BigInt::one() };
        MPoly::var(pv, i, c)
    };
    let mut dets: Vec<Option<MPoly>> = vec![None; 1 << pv];
    dets[0] = Some(MPoly::constant(pv, BigInt::one()));
    for mask in 1usize..(1 << pv) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = MPoly::zero(pv);
        let mut pos = 0;
        for col in 0..pv {
            if mask & (1 << col) == 0 {
                continue;
            }
            let rest = dets[mask ^ (1 << col)].as_ref().expect("smaller subset");
            let term = entry(row, col).mul(rest);
            // sign (-1)^(row + pos) with pos the rank of col in the subset
            acc = if (row + pos).is_multiple_of(2) { acc.add(&term) } else { acc.add(&term.neg()) };
            pos += 1;
        }
        dets[mask] = Some(acc);
    }
    dets.pop().flatten().expect("full determinant")
}

/// Order in which coefficient values are tried: `0, 1, -1, 2, -2, ...`.
fn value_at_rank(r: i64) -> i64 {
    if r % 2 == 1 {
        (r + 1) / 2
    } else {
        -(r / 2)
    }
}

/// Search `[-bound, bound]^p` for a tuple whose norm is `target`, by
/// increasing `L1` norm and then lexicographically in the value order
/// `0, 1, -1, 2, -2, ...`. The first tuple in that order is returned.
pub fn norm_search(target: &BigInt, n: u64, p: u64, bound: u64) -> Option<Vec<i64>> {
    let pv = p as usize;
    let b = bound as i64;
    for l1 in 0..=(pv as i64 * b) {
        let found = (0..=2 * b)
            .into_par_iter()
            .map(value_at_rank)
            .filter(|c0| c0.abs() <= l1)
            .find_map_first(|c0| {
                let mut tuple = vec![c0];
                search_rest(&mut tuple, pv, b, l1 - c0.abs(), &|t| {
                    norm_by_determinant(t, n, p) == *target
                })
                .then_some(tuple)
            });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn search_rest(tuple: &mut Vec<i64>, len: usize, b: i64, remaining: i64, ok: &dyn Fn(&[i64]) -> bool) -> bool {
    if tuple.len() == len {
        return remaining == 0 && ok(tuple);
    }
    for r in 0..=2 * b {
        let v = value_at_rank(r);
        if v.abs() > remaining {
            continue;
        }
        tuple.push(v);
        if search_rest(tuple, len, b, remaining - v.abs(), ok) {
            return true;
        }
        tuple.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(norm_form_value(&[0, 1, 0, 0, 0], 19, 5), BigInt::from(19));
        assert_eq!(norm_form_value(&[1, 0, 0, 0, 0], 19, 5), BigInt::from(1));
        assert_eq!(norm_form_value(&[1, 1, 0, 0, 0], 19, 5), BigInt::from(20));
        assert_eq!(norm_form_value(&[0, 0, 0, 0, 0], 19, 5), BigInt::from(0));
        assert_eq!(norm_form_value(&[2], 19, 5), BigInt::from(32));
        // sqrt(2): Norm(a + b sqrt 2) = a^2 - 2 b^2
        assert_eq!(norm_form_value(&[3, 2], 2, 2), BigInt::from(1));
        for c in [[1i64, -2, 3, 0, 1], [0, 0, 1, 0, 0], [-1, 1, -1, 1, -1]] {
            assert_eq!(norm_form_value(&c, 19, 5), norm_by_determinant(&c, 19, 5));
        }
    }

    #[test]
    fn symbolic_matches_numeric() {
        let f = symbolic_norm_form(19, 5);
        assert_eq!(f.coefficient(&[5, 0, 0, 0, 0]), BigInt::from(1));
        assert_eq!(f.coefficient(&[0, 0, 0, 0, 5]), BigInt::from(130321));
        for c in [[1i64, -2, 3, 0, 1], [2, 1, 0, -1, 1], [0, 3, -3, 2, 0]] {
            assert_eq!(f.eval(&c), norm_form_value(&c, 19, 5));
        }
        let q = symbolic_norm_form(2, 2);
        assert_eq!(q.to_string(), "a^2 - 2*b^2");
    }

    #[test]
    fn search_examples() {
        let t = |x: i64| BigInt::from(x);
        assert_eq!(norm_search(&t(19), 19, 5, 1), Some(vec![0, 1, 0, 0, 0]));
        assert_eq!(norm_search(&t(1), 19, 5, 1), Some(vec![1, 0, 0, 0, 0]));
        assert_eq!(norm_search(&t(20), 19, 5, 1), Some(vec![1, 1, 0, 0, 0]));
        assert_eq!(norm_search(&t(2), 19, 5, 0), None);
    }
}

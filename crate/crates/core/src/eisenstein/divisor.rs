//! Divisors supported on the cusps of `X0(N^2)` and the Hecke action on them.

use serde_json::{Map, Value};

use crate::arith::{mod_inv, Field};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modsym::{CuspLabel, HeckeOp};

/// A divisor `sum n_c c` on the `N + 1` cusps, indexed as in
/// [`CuspLabel::index`].
#[derive(Debug, Clone, PartialEq)]
pub struct CuspDivisor<F: Field> {
    n: u64,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> CuspDivisor<F> {
    pub fn zero(k: &F, n: u64) -> Self {
        CuspDivisor {
            n,
            coeffs: vec![k.zero(); n as usize + 1],
        }
    }

    /// The divisor `1 * c`.
    pub fn cusp(k: &F, n: u64, c: CuspLabel) -> Self {
        let mut d = Self::zero(k, n);
        d.coeffs[c.index()] = k.one();
        d
    }

    pub fn from_coeffs(n: u64, coeffs: Vec<F::Elem>) -> Self {
        assert_eq!(coeffs.len(), n as usize + 1);
        CuspDivisor { n, coeffs }
    }

    /// `c = sum_x ([x] - [0])`.
    pub fn frak_c(k: &F, n: u64) -> Self {
        let mut d = Self::zero(k, n);
        d.coeffs[1] = k.from_i64(1 - n as i64);
        for x in 1..n {
            d.coeffs[1 + x as usize] = k.one();
        }
        d
    }

    /// `infinity - [0] + c`.
    pub fn infinity_part(k: &F, n: u64) -> Self {
        let mut d = Self::frak_c(k, n);
        d.coeffs[0] = k.one();
        d.coeffs[1] = k.sub(&d.coeffs[1], &k.one());
        d
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, c: CuspLabel) -> &F::Elem {
        &self.coeffs[c.index()]
    }

    pub fn degree(&self, k: &F) -> F::Elem {
        self.coeffs.iter().fold(k.zero(), |a, b| k.add(&a, b))
    }

    pub fn add(&self, k: &F, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| k.add(a, b)).collect();
        CuspDivisor { n: self.n, coeffs }
    }

    pub fn scale(&self, k: &F, s: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| k.mul(a, s)).collect();
        CuspDivisor { n: self.n, coeffs }
    }

    /// `{"inf": .., "zero": .., "x": {"1": .., ...}}` with decimal strings.
    pub fn to_json(&self, k: &F) -> Value {
        let mut x = Map::new();
        for i in 1..self.n {
            x.insert(i.to_string(), Value::String(k.to_decimal(&self.coeffs[1 + i as usize])));
        }
        serde_json::json!({
            "inf": k.to_decimal(&self.coeffs[0]),
            "zero": k.to_decimal(&self.coeffs[1]),
            "x": x,
        })
    }

    pub fn from_json(k: &F, n: u64, v: &Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("malformed cusp divisor".into());
        let parse = |v: Option<&Value>| -> Result<F::Elem> {
            match v {
                None => Ok(k.zero()),
                Some(v) => v.as_str().and_then(|s| k.parse_decimal(s)).ok_or_else(bad),
            }
        };
        let mut d = Self::zero(k, n);
        d.coeffs[0] = parse(v.get("inf"))?;
        d.coeffs[1] = parse(v.get("zero"))?;
        if let Some(xs) = v.get("x") {
            for (key, val) in xs.as_object().ok_or_else(bad)? {
                let x: u64 = key.parse().map_err(|_| bad())?;
                if x == 0 || x >= n {
                    return Err(bad());
                }
                d.coeffs[1 + x as usize] = parse(Some(val))?;
            }
        }
        Ok(d)
    }

    /// Render as `a*inf + b*[0] + ...`, skipping zero terms.
    pub fn render(&self, k: &F) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !k.is_zero(a))
            .map(|(i, a)| format!("{}*{}", k.to_decimal(a), CuspLabel::from_index(i)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Image of a single cusp under `T_l` (`l != N`) or `U_N`, as a list of
/// `(coefficient, cusp)` terms.
fn act_on_cusp(op: HeckeOp, n: u64, c: CuspLabel) -> Vec<(i64, CuspLabel)> {
    match op {
        HeckeOp::T(l) => match c {
            CuspLabel::X(x) => {
                let lx = (l % n) * x % n;
                let linv = mod_inv(l as i64, n).expect("l prime to N");
                vec![(l as i64, CuspLabel::X(lx)), (1, CuspLabel::X(linv * x % n))]
            }
            other => vec![(l as i64 + 1, other)],
        },
        HeckeOp::U(_) => match c {
            CuspLabel::Infinity => {
                let mut v = vec![(1, CuspLabel::Infinity)];
                v.extend((1..n).map(|x| (1, CuspLabel::X(x))));
                v
            }
            _ => vec![(n as i64, CuspLabel::Zero)],
        },
    }
}

fn check_op(op: HeckeOp, n: u64) -> Result<()> {
    match op {
        HeckeOp::T(l) if l % n == 0 => Err(Error::InvalidArgument(format!(
            "T_{l} is not defined on cusps of X0({n}^2); use U_{n}"
        ))),
        HeckeOp::U(q) if q != n => Err(Error::InvalidArgument(format!(
            "only U_{n} acts on cusps of X0({n}^2), got U_{q}"
        ))),
        _ => Ok(()),
    }
}

/// Hecke action on `Div(C)`.
pub fn divisor_action<F: Field>(k: &F, op: HeckeOp, d: &CuspDivisor<F>) -> Result<CuspDivisor<F>> {
    check_op(op, d.n)?;
    let mut out = CuspDivisor::zero(k, d.n);
    for (i, a) in d.coeffs.iter().enumerate() {
        if k.is_zero(a) {
            continue;
        }
        for (m, c) in act_on_cusp(op, d.n, CuspLabel::from_index(i)) {
            k.add_mul_assign(&mut out.coeffs[c.index()], a, &k.from_i64(m));
        }
    }
    Ok(out)
}

/// Matrix of the action in the row convention: row `i` is the image of
/// the `i`-th cusp.
pub fn divisor_action_matrix<F: Field>(k: &F, op: HeckeOp, n: u64) -> Result<Matrix<F>> {
    check_op(op, n)?;
    let mut m = Matrix::zero(k, n as usize + 1, n as usize + 1);
    for i in 0..=n as usize {
        for (a, c) in act_on_cusp(op, n, CuspLabel::from_index(i)) {
            let v = k.add(m.get(i, c.index()), &k.from_i64(a));
            m.set(i, c.index(), v);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    #[test]
    fn t3_on_one() {
        let k = Rationals;
        let d = CuspDivisor::cusp(&k, 19, CuspLabel::X(1));
        let img = divisor_action(&k, HeckeOp::T(3), &d).unwrap();
        let mut want = CuspDivisor::zero(&k, 19);
        want.coeffs[1 + 3] = k.from_i64(3);
        want.coeffs[1 + 13] = k.one();
        assert_eq!(img, want);
        assert!(divisor_action(&k, HeckeOp::T(19), &d).is_err());
        assert!(divisor_action(&k, HeckeOp::U(5), &d).is_err());
    }

    #[test]
    fn u_n_on_p() {
        let k = PrimeField::new(5);
        let n = 19;
        let c = CuspDivisor::frak_c(&k, n);
        let z = divisor_action(&k, HeckeOp::U(n), &c).unwrap();
        assert_eq!(z, CuspDivisor::zero(&k, n));
        let e = CuspDivisor::infinity_part(&k, n);
        assert_eq!(divisor_action(&k, HeckeOp::U(n), &e).unwrap(), e);
        for l in [2u64, 3, 7, 23] {
            for d in [&c, &e] {
                let img = divisor_action(&k, HeckeOp::T(l), d).unwrap();
                assert_eq!(img, d.scale(&k, &k.from_i64(l as i64 + 1)));
            }
        }
    }

    #[test]
    fn matrix_agrees_with_action_and_commutes() {
        let k = Rationals;
        let n = 13;
        let t2 = divisor_action_matrix(&k, HeckeOp::T(2), n).unwrap();
        let t5 = divisor_action_matrix(&k, HeckeOp::T(5), n).unwrap();
        let u = divisor_action_matrix(&k, HeckeOp::U(n), n).unwrap();
        assert_eq!(t2.mul(&t5), t5.mul(&t2));
        assert_eq!(t2.mul(&u), u.mul(&t2));
        let d = CuspDivisor::from_coeffs(n, (0..=n as i64).map(|i| k.from_i64(i * i - 3)).collect());
        let via_matrix = CuspDivisor::from_coeffs(n, t5.vec_mul(d.coeffs()));
        assert_eq!(via_matrix, divisor_action(&k, HeckeOp::T(5), &d).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let k = Rationals;
        let d = CuspDivisor::frak_c(&k, 7).scale(&k, &k.from_i64(2));
        let v = d.to_json(&k);
        assert_eq!(v["zero"], "-12");
        assert_eq!(v["x"]["3"], "2");
        assert_eq!(CuspDivisor::from_json(&k, 7, &v).unwrap(), d);
        assert!(CuspDivisor::from_json(&k, 7, &serde_json::json!({"x": {"9": "1"}})).is_err());
    }
}

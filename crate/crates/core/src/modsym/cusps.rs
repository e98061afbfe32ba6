//! Cusps of `Gamma0(M)`: equivalence testing for general levels and the
//! explicit labels `infinity, [0], [x]` of `X0(N^2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_i64, mod_inv};

/// A cusp `a/c` in lowest terms with `c >= 0` (`1/0` is infinity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub a: i64,
    pub c: i64,
}

impl Cusp {
    pub fn new(a: i64, c: i64) -> Self {
        assert!(a != 0 || c != 0, "0/0 is not a cusp");
        if c == 0 {
            return Cusp { a: 1, c: 0 };
        }
        let g = gcd_i64(a, c);
        let (a, c) = (a / g, c / g);
        if c < 0 {
            Cusp { a: -a, c: -c }
        } else {
            Cusp { a, c }
        }
    }

    pub fn infinity() -> Self {
        Cusp { a: 1, c: 0 }
    }

    pub fn neg(&self) -> Self {
        Cusp::new(-self.a, self.c)
    }

    /// `Gamma0(M)`-equivalence via `s1 c2 = s2 c1 mod gcd(c1 c2, M)` with
    /// `a_j s_j = 1 mod c_j`.
    pub fn is_gamma0_equiv(&self, o: &Cusp, m: u64) -> bool {
        if self == o {
            return true;
        }
        let m = m as i64;
        let (u1, v1) = (self.a, self.c);
        let (u2, v2) = (o.a, o.c);
        if gcd_i64(v1, m) != gcd_i64(v2, m) {
            return false;
        }
        let s = |u: i64, v: i64| -> i64 {
            if (u, v) == (0, 1) {
                0
            } else if v == 0 || v == 1 {
                1
            } else {
                mod_inv(u, v as u64).expect("lowest terms") as i64
            }
        };
        let (s1, s2) = (s(u1, v1), s(u2, v2));
        let g = gcd_i64((v1 as i128 * v2 as i128 % m as i128) as i64, m);
        let diff = s1 as i128 * v2 as i128 - s2 as i128 * v1 as i128;
        diff.rem_euclid(g as i128) == 0
    }
}

/// Cusp labels of `X0(N^2)` for a prime `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CuspLabel {
    Infinity,
    Zero,
    /// `[x]` for `x` in `1..N`.
    X(u64),
}

impl CuspLabel {
    /// Position in the order `infinity, [0], [1], ..., [N-1]`.
    pub fn index(&self) -> usize {
        match *self {
            CuspLabel::Infinity => 0,
            CuspLabel::Zero => 1,
            CuspLabel::X(x) => 1 + x as usize,
        }
    }

    pub fn from_index(i: usize) -> Self {
        match i {
            0 => CuspLabel::Infinity,
            1 => CuspLabel::Zero,
            _ => CuspLabel::X(i as u64 - 1),
        }
    }

    /// Width of the cusp on `X0(N^2)`.
    pub fn width(&self, n: u64) -> u64 {
        match self {
            CuspLabel::Infinity => 1,
            CuspLabel::Zero => n * n,
            CuspLabel::X(_) => n,
        }
    }

    /// Image under `a/c -> -a/c`.
    pub fn neg(&self, n: u64) -> Self {
        match *self {
            CuspLabel::X(x) => CuspLabel::X(n - x),
            other => other,
        }
    }

    /// All `N + 1` labels in index order.
    pub fn all(n: u64) -> Vec<CuspLabel> {
        (0..=n as usize).map(CuspLabel::from_index).collect()
    }
}

impl fmt::Display for CuspLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspLabel::Infinity => write!(f, "inf"),
            CuspLabel::Zero => write!(f, "[0]"),
            CuspLabel::X(x) => write!(f, "[{x}]"),
        }
    }
}

/// Label of the cusp `x/y` on `X0(N^2)`.
pub fn label_of(cusp: Cusp, n: u64) -> CuspLabel {
    let (x, y) = (cusp.a, cusp.c);
    let n = n as i64;
    if y == 0 || y % (n * n) == 0 {
        return CuspLabel::Infinity;
    }
    if y % n != 0 {
        return CuspLabel::Zero;
    }
    let u = y / n;
    CuspLabel::X((u as i128 * x as i128).rem_euclid(n as i128) as u64)
}

/// Class of `gamma * infinity` for an integer matrix `[[a, b], [c, d]]` with
/// positive determinant.
pub fn cusp_class(gamma: [i64; 4], n: u64) -> CuspLabel {
    let [a, b, c, d] = gamma;
    assert!(a * d - b * c > 0, "determinant must be positive");
    if c == 0 {
        return CuspLabel::Infinity;
    }
    label_of(Cusp::new(a, c), n)
}

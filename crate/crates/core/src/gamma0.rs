//! Classical invariants of `Gamma0(M)`: index, elliptic points, cusps,
//! genus and the weight-2 Sturm bound.

use crate::arith::{factorize, gcd};

/// `[SL2(Z) : Gamma0(M)] = M * prod_{q | M} (1 + 1/q)`.
pub fn index(m: u64) -> u64 {
    factorize(m)
        .iter()
        .fold(m, |acc, &(q, _)| acc / q * (q + 1))
}

fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(q, _)| acc / q * (q - 1))
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Number of elliptic points of order 2.
pub fn nu2(m: u64) -> u64 {
    if m.is_multiple_of(4) {
        return 0;
    }
    factorize(m)
        .iter()
        .map(|&(q, _)| match q {
            2 => 1,
            _ if q % 4 == 1 => 2,
            _ => 0,
        })
        .product()
}

/// Number of elliptic points of order 3.
pub fn nu3(m: u64) -> u64 {
    if m.is_multiple_of(9) {
        return 0;
    }
    factorize(m)
        .iter()
        .map(|&(q, _)| match q {
            3 => 1,
            _ if q % 3 == 1 => 2,
            _ => 0,
        })
        .product()
}

pub fn num_cusps(m: u64) -> u64 {
    divisors(m)
        .into_iter()
        .map(|d| euler_phi(gcd(d, m / d)))
        .sum()
}

/// Genus of `X0(M)`.
pub fn genus(m: u64) -> u64 {
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
    let twelve_g = 12 + index(m) as i64 - 3 * nu2(m) as i64 - 4 * nu3(m) as i64 - 6 * num_cusps(m) as i64;
    assert!(twelve_g >= 0 && twelve_g % 12 == 0, "genus formula");
    (twelve_g / 12) as u64
}

/// Weight-2 Sturm bound `ceil(index / 6)`.
pub fn sturm_bound(m: u64) -> u64 {
    index(m).div_ceil(6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_361() {
        assert_eq!(index(361), 380);
        assert_eq!(nu2(361), 0);
        assert_eq!(nu3(361), 2);
        assert_eq!(num_cusps(361), 20);
        assert_eq!(genus(361), 22);
        assert_eq!(sturm_bound(361), 64);
    }

    #[test]
    fn small_levels() {
        assert_eq!(genus(11), 1);
        assert_eq!(num_cusps(11), 2);
        assert_eq!(sturm_bound(11), 2);
        assert_eq!(sturm_bound(1), 1);
        assert_eq!(genus(1), 0);
        assert_eq!(genus(19), 1);
        assert_eq!(genus(841), 58);
        // genus 0 levels
        for m in [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25] {
            assert_eq!(genus(m), 0, "level {m}");
        }
        assert_eq!(genus(37), 2);
        assert_eq!(genus(389), 32);
    }
}

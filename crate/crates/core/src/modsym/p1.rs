//! The projective line `P^1(Z/M)` with constant-time canonical indexing.

use crate::arith::{gcd, mod_inv};

#[derive(Debug, Clone)]
pub struct P1List {
    m: u64,
    /// `div_pos[g]` is the slot of divisor `g` in `tables`, or `usize::MAX`.
    div_pos: Vec<usize>,
    /// Per divisor `g`: class index of `(g, v)` for each `v`, `u32::MAX` if invalid.
    tables: Vec<Vec<u32>>,
    reps: Vec<(u64, u64)>,
}

impl P1List {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "level must be positive");
        let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        let mut div_pos = vec![usize::MAX; m as usize + 1];
        let mut tables = Vec::with_capacity(divisors.len());
        let mut reps = Vec::new();
        for (slot, &g) in divisors.iter().enumerate() {
            div_pos[g as usize] = slot;
            let mg = m / g;
            // scalars t = 1 mod M/g that are units mod M fix the first coordinate g
            let stab: Vec<u64> = (0..g)
                .map(|j| (1 + j * mg) % m.max(1))
                .filter(|&t| gcd(t, m) == 1 || m == 1)
                .collect();
            let mut table = vec![u32::MAX; m as usize];
            for v in 0..m {
                if gcd(g, v) != 1 || table[v as usize] != u32::MAX {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push((g % m, v));
                for &t in &stab {
                    table[(t * v % m) as usize] = k;
                }
            }
            tables.push(table);
        }
        P1List {
            m,
            div_pos,
            tables,
            reps,
        }
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Canonical representative `(u, v)` of class `i`.
    pub fn rep(&self, i: usize) -> (u64, u64) {
        self.reps[i]
    }

    /// Class of `(u : v)`, or `None` when `gcd(u, v, M) != 1`.
    pub fn index(&self, u: i64, v: i64) -> Option<usize> {
        let m = self.m;
        let u = u.rem_euclid(m as i64) as u64;
        let v = v.rem_euclid(m as i64) as u64;
        let g = gcd(u, m);
        if gcd(g, v) != 1 {
            return None;
        }
        let mg = m / g;
        // s is a unit mod M with s * u = g mod M
        let mut s = if mg == 1 {
            1
        } else {
            mod_inv((u / g) as i64, mg).expect("u/g is a unit mod M/g")
        };
        while gcd(s, m) != 1 {
            s += mg;
        }
        let v2 = ((s as u128 * v as u128) % m as u128) as usize;
        let k = self.tables[self.div_pos[g as usize]][v2];
        debug_assert_ne!(k, u32::MAX);
        Some(k as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma0::index;

    #[test]
    fn sizes_match_index() {
        for m in 1..200 {
            assert_eq!(P1List::new(m).len() as u64, index(m), "level {m}");
        }
        assert_eq!(P1List::new(361).len(), 380);
        assert_eq!(P1List::new(11).len(), 12);
    }

    #[test]
    fn index_is_scalar_invariant() {
        for m in [12u64, 36, 49, 60, 361] {
            let p1 = P1List::new(m);
            for i in 0..p1.len() {
                let (u, v) = p1.rep(i);
                assert_eq!(p1.index(u as i64, v as i64), Some(i));
                for s in 1..m {
                    if gcd(s, m) == 1 {
                        let j = p1.index((s * u) as i64, (s * v) as i64);
                        assert_eq!(j, Some(i), "level {m} rep {i} scalar {s}");
                    }
                }
            }
            assert_eq!(p1.index(0, 0), if m == 1 { Some(0) } else { None });
        }
    }
}

//! Merel's Heilbronn matrices `X_n`: integer matrices `[[a, b], [c, d]]`
//! of determinant `n` with `a > b >= 0` and `d > c >= 0`.

pub type Heilbronn = [i64; 4];

pub fn merel(n: u64) -> Vec<Heilbronn> {
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a == 0 {
            let d = n / a;
            for b in 0..a {
                out.push([a, b, 0, d]);
            }
            for c in 1..d {
                out.push([a, 0, c, d]);
            }
        }
        for d in n / a + 1..=n {
            let bc = a * d - n;
            for c in bc / a + 1..d {
                if bc % c == 0 {
                    out.push([a, bc / c, c, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: i64) -> usize {
        let mut k = 0;
        for a in 1..=n {
            for b in 0..a {
                for d in 1..=n {
                    for c in 0..d {
                        if a * d - b * c == n {
                            k += 1;
                        }
                    }
                }
            }
        }
        k
    }

    #[test]
    fn counts_match_definition() {
        assert_eq!(merel(2).len(), 4);
        for n in 1..30 {
            let hs = merel(n);
            assert_eq!(hs.len(), brute(n as i64), "n = {n}");
            for [a, b, c, d] in hs {
                assert_eq!(a * d - b * c, n as i64);
                assert!(a > b && b >= 0 && d > c && c >= 0);
            }
        }
    }
}

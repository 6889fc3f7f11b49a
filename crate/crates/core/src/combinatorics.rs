//! Binomial coefficients mod 2 and partition counts.

use crate::error::{Error, Result};

/// `C(n, t) mod 2`, with `C(n, t) = 0` outside `0 <= t <= n`.
///
/// Lucas: the coefficient is odd iff every binary digit of `t` is also a
/// digit of `n`.
pub fn binom_mod2(n: i64, t: i64) -> bool {
    0 <= t && t <= n && (t & n) == t
}

/// Number of partitions of `k` into exactly `q` positive parts; zero when
/// `k <= 0` or `k < q`.
pub fn partitions_exact(k: i64, q: i64) -> u64 {
    if k <= 0 || q <= 0 || k < q {
        return 0;
    }
    let (k, q) = (k as usize, q as usize);
    // table[j][s] = P_j(s), built with P_j(s) = P_{j-1}(s-1) + P_j(s-j)
    let mut prev = vec![0u64; k + 1];
    prev[0] = 1; // P_0(0)
    for j in 1..=q {
        let mut cur = vec![0u64; k + 1];
        for s in j..=k {
            cur[s] = prev[s - 1] + cur[s - j];
        }
        prev = cur;
    }
    prev[k]
}

/// The unique `(p, m)` with `n = 2^p + m` and `0 < m <= 2^p`.
pub fn split_pow2(n: u64) -> Result<(u32, u64)> {
    if n < 2 {
        return Err(Error::Domain(format!("split_pow2 needs n >= 2, got {n}")));
    }
    let p = (n - 1).ilog2();
    Ok((p, n - (1u64 << p)))
}

/// Exact `C(n, k)` as u128; panics on overflow (n <= 120 is safe).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_binomial(n: u64, t: u64) -> u128 {
        let fact = |x: u64| (1..=x as u128).product::<u128>();
        fact(n) / (fact(t) * fact(n - t))
    }

    /// Multisets of `q` positive parts summing to `k`, listed non-increasing.
    fn enumerate_partitions(k: i64, q: i64, max_part: i64) -> u64 {
        if q == 0 {
            return u64::from(k == 0);
        }
        (1..=max_part.min(k))
            .map(|first| enumerate_partitions(k - first, q - 1, first))
            .sum()
    }

    #[test]
    fn binomial_parity_examples() {
        assert!(binom_mod2(3, 2));
        assert!(!binom_mod2(4, 2));
        for n in -3..10 {
            assert!(!binom_mod2(n, -1));
        }
        assert!(!binom_mod2(2, 3));
        assert!(binom_mod2(0, 0));
    }

    #[test]
    fn lucas_agrees_with_factorials() {
        for n in 0..=30u64 {
            for t in 0..=n {
                assert_eq!(
                    binom_mod2(n as i64, t as i64),
                    factorial_binomial(n, t) % 2 == 1,
                    "C({n},{t})"
                );
            }
        }
        for n in 0..=64u64 {
            for t in 0..=n {
                assert_eq!(binom_mod2(n as i64, t as i64), binomial(n, t) % 2 == 1);
            }
        }
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions_exact(5, 2), 2);
        assert_eq!(partitions_exact(9, 3), 7);
        for k in 1..30 {
            assert_eq!(partitions_exact(k, 1), 1);
        }
        assert_eq!(partitions_exact(0, 0), 0);
        assert_eq!(partitions_exact(2, 3), 0);
        assert_eq!(partitions_exact(-4, 2), 0);
    }

    #[test]
    fn partitions_match_enumeration_and_recurrence() {
        for k in 1..=40 {
            for q in 1..=6 {
                let p = partitions_exact(k, q);
                assert_eq!(p, enumerate_partitions(k, q, k), "P_{q}({k})");
                if q >= 2 {
                    assert_eq!(
                        p,
                        partitions_exact(k - 1, q - 1) + partitions_exact(k - q, q)
                    );
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_pow2(7).unwrap(), (2, 3));
        assert_eq!(split_pow2(16).unwrap(), (3, 8));
        assert_eq!(split_pow2(17).unwrap(), (4, 1));
        assert_eq!(split_pow2(2).unwrap(), (0, 1));
        assert_eq!(split_pow2(3).unwrap(), (1, 1));
        assert!(split_pow2(1).is_err());
        for n in 2..5000u64 {
            let (p, m) = split_pow2(n).unwrap();
            assert!(m > 0 && m <= 1 << p && (1 << p) + m == n);
        }
    }
}

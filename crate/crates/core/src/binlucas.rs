//! Bit combinatorics of binary expansions.
//!
//! Everything here works on the binary digits `[n]_i` of natural numbers:
//! disjointness of expansions, the `#` operation, parity of binomial
//! coefficients via Lucas' theorem at `p = 2`, and the lattice path counts
//! `Q_t^{(l,m)}` of the quiver on `N x N` with right, up and (from even
//! vertices) diagonal steps.
//!
//! Naturals are carried as `u64`; path counts as [`BigUint`].

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Index of the least set bit of `n`.
pub fn nu(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::domain("nu(0) is undefined"));
    }
    Ok(n.trailing_zeros())
}

/// `true` iff the binary expansions of `l` and `m` share no set bit.
#[inline]
pub fn perp(l: u64, m: u64) -> bool {
    l & m == 0
}

/// Disjointness predicate that also accepts `l - 1` / `m - 1` style arguments
/// which may have gone negative. A negative argument is never disjoint from a
/// positive one; `-1` has every bit set.
#[inline]
pub(crate) fn perp_signed(l: i64, m: i64) -> bool {
    l & m == 0
}

/// Smallest `s` such that `[l]_t + [m]_t <= 1` for all `t >= s`.
#[inline]
pub fn disjoint_from(l: u64, m: u64) -> u32 {
    64 - (l & m).leading_zeros()
}

/// The `#` operation: `l # m = lambda + mu + 2^s - 1`, where `s` is
/// [`disjoint_from`] and `lambda`, `mu` are the parts of `l`, `m` at bit
/// positions `>= s` (weighted, i.e. `l` with its low `s` bits cleared).
///
/// Requires `l + m` to fit in a `u64`.
pub fn hash(l: u64, m: u64) -> u64 {
    let s = disjoint_from(l, m);
    let low: u128 = (1u128 << s) - 1;
    let high_mask = !(low as u64);
    let total = u128::from(l & high_mask) + u128::from(m & high_mask) + low;
    u64::try_from(total).expect("l # m does not fit in u64")
}

/// Parity of `binomial(r, s)`: 1 iff the bits of `s` are a subset of the bits of `r`.
#[inline]
pub fn binom_parity(r: u64, s: u64) -> u8 {
    u8::from(s & !r == 0)
}

/// Exact number of paths of length `t` from `(0, 0)` to `(l, m)`:
/// `binom(2t - l - m, t - m) * binom(floor((l + m) / 2), l + m - t)`.
pub fn q_count(t: u64, l: u64, m: u64) -> BigUint {
    if l.max(m) > t || t > l + m {
        return BigUint::zero();
    }
    let first = binomial(BigUint::from(2 * t - l - m), BigUint::from(t - m));
    let second = binomial(BigUint::from((l + m) / 2), BigUint::from(l + m - t));
    first * second
}

/// Parity of [`q_count`], computed with bit operations only.
///
/// With `j = l + m - t`, the count is congruent to
/// `binom(t + j, l + j) * binom(l + j, 2j)`.
pub fn q_parity(t: u64, l: u64, m: u64) -> u8 {
    if l.max(m) > t || t > l + m {
        return 0;
    }
    let j = l + m - t;
    binom_parity(t + j, l + j) & binom_parity(l + j, 2 * j)
}

/// Finds `(l', m')` with `l' <= l`, `m' <= m`, `l' + m' = t` and an odd path
/// count at `(l', m')`. Candidates are tried in descending `l'`.
///
/// Fails if `Q_t^{(l,m)}` is even.
pub fn back_diag_witness(t: u64, l: u64, m: u64) -> Result<Option<(u64, u64)>> {
    if q_parity(t, l, m) != 1 {
        return Err(Error::domain(format!(
            "back_diag_witness requires an odd path count, Q_{t}^({l},{m}) is even"
        )));
    }
    let lo = t.saturating_sub(m);
    let hi = l.min(t);
    Ok((lo..=hi)
        .rev()
        .map(|lp| (lp, t - lp))
        .find(|&(lp, mp)| q_parity(t, lp, mp) == 1))
}

/// Largest `t` for which some `(lambda, mu)` in the box `[0, l] x [0, m]`
/// carries an odd path count of length `t`.
///
/// This is a direct scan over the box and does not use [`hash`]; it is the
/// reference the `#` operation is checked against.
pub fn tau(l: u64, m: u64) -> u64 {
    for t in (0..=l + m).rev() {
        // Only vertices with max(lambda, mu) <= t <= lambda + mu can be reached.
        for lambda in 0..=l.min(t) {
            let mu_lo = t.saturating_sub(lambda);
            let mu_hi = m.min(t);
            if (mu_lo..=mu_hi).any(|mu| q_parity(t, lambda, mu) == 1) {
                return t;
            }
        }
    }
    unreachable!("Q_0^(0,0) = 1 is always in the box")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_values() {
        assert_eq!(nu(146).unwrap(), 1);
        assert_eq!(nu(1).unwrap(), 0);
        assert_eq!(nu(8).unwrap(), 3);
        assert!(matches!(nu(0), Err(Error::Domain(_))));
    }

    #[test]
    fn perp_values() {
        assert!(!perp(146, 266));
        assert!(perp(145, 266));
        for m in 0..100 {
            assert!(perp(0, m));
        }
    }

    #[test]
    fn perp_signed_negative_one() {
        assert!(!perp_signed(5, -1));
        assert!(perp_signed(0, -1));
        assert_eq!(perp_signed(6, 3), perp(6, 3));
    }

    #[test]
    fn hash_worked_examples() {
        assert_eq!(disjoint_from(146, 1304), 5);
        assert_eq!(hash(146, 1304), 1439);
        assert_eq!(hash(146, 266), 411);
        assert_eq!(hash(5, 7), 7);
        for m in 0..200 {
            assert_eq!(hash(0, m), m);
        }
    }

    #[test]
    fn hash_agrees_with_tau_on_small_values() {
        assert_eq!(tau(5, 7), 7);
        assert_eq!(tau(1, 1), 1);
        for l in 0..20 {
            assert_eq!(tau(l, 0), l);
        }
    }

    #[test]
    fn binom_parity_values() {
        assert_eq!(binom_parity(5, 1), 1);
        assert_eq!(binom_parity(4, 2), 0);
        assert_eq!(binom_parity(3, 5), 0);
        for n in 0..50 {
            assert_eq!(binom_parity(n, 0), 1);
        }
    }

    #[test]
    fn q_count_identities() {
        for l in 0..15u64 {
            for t in 0..32u64 {
                let expected = u8::from(t == l);
                // Exact on the axis, only modulo 2 on the diagonal.
                assert_eq!(q_count(t, l, 0), BigUint::from(expected));
                assert_eq!(q_parity(t, l, l), expected);
                let on_diag = q_count(t, l, l) % 2u32;
                assert_eq!(on_diag, BigUint::from(expected));
            }
            for m in 0..15u64 {
                assert_eq!(
                    q_count(l + m, l, m),
                    binomial(BigUint::from(l + m), BigUint::from(l))
                );
                assert_eq!(q_count(l + m, l, m), q_count(l + m, m, l));
            }
        }
        // (0,0) -> (0,1) -> (1,1) and (0,0) -> (1,0) -> (1,1).
        assert_eq!(q_count(2, 1, 1), BigUint::from(2u32));
    }

    #[test]
    fn q_parity_values() {
        assert_eq!(q_parity(3, 3, 3), 1);
        assert_eq!(q_parity(4, 3, 3), 0);
        assert_eq!(q_parity(3, 1, 2), 1);
        assert_eq!(q_parity(2, 1, 1), 0);
    }

    #[test]
    fn back_diag_witness_values() {
        assert_eq!(back_diag_witness(2, 1, 2).unwrap(), Some((0, 2)));
        for l in 0..10 {
            for m in 0..10 {
                if binom_parity(l + m, l) == 1 {
                    assert_eq!(back_diag_witness(l + m, l, m).unwrap(), Some((l, m)));
                }
            }
        }
        assert!(back_diag_witness(2, 1, 1).is_err());
    }
}

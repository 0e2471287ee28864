//! Prime-field helpers used by the probabilistic rank tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Scalar;

/// Fixed list of primes between 2^30 and 2^31; the rank tests draw from
/// this list so runs are reproducible under a seed.
pub const PRIMES: [u64; 10] = [
    1_073_741_827,
    1_073_741_831,
    1_073_741_833,
    1_073_741_839,
    1_073_741_843,
    1_073_741_857,
    1_073_741_891,
    1_073_741_909,
    1_073_741_939,
    1_073_741_953,
];

/// A coefficient denominator vanished modulo the chosen prime; the caller
/// should retry with another prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("denominator divisible by prime {0}")]
pub struct DenominatorNotInvertible(pub u64);

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime. Returns `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Image of a rational number in F_p.
pub fn reduce_scalar(x: &Scalar, p: u64) -> Result<u64, DenominatorNotInvertible> {
    let den = bigint_mod(x.denom(), p);
    let inv = inv_mod(den, p).ok_or(DenominatorNotInvertible(p))?;
    let num = if x.numer().is_negative() {
        let m = bigint_mod(&-x.numer(), p);
        if m.is_zero() {
            0
        } else {
            p - m
        }
    } else {
        bigint_mod(x.numer(), p)
    };
    Ok(mul_mod(num, inv, p))
}

/// Rank of a dense matrix over F_p by Gaussian elimination. Rows are consumed.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p).expect("nonzero pivot");
        for v in &mut rows[rank][col..cols] {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for c in col..cols {
                row[c] = sub_mod(row[c], mul_mod(factor, pivot_row[c], p), p);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn primes_are_in_range_and_prime() {
        for &p in &PRIMES {
            assert!(p > 1 << 30 && p < 1 << 31);
            let mut d = 2u64;
            while d * d <= p {
                assert_ne!(p % d, 0, "{p} divisible by {d}");
                d += 1;
            }
        }
    }

    #[test]
    fn reduce_negative_fraction() {
        let p = PRIMES[0];
        let x = Scalar::new(BigInt::from(-3), BigInt::from(7));
        let r = reduce_scalar(&x, p).unwrap();
        assert_eq!(mul_mod(r, 7, p), p - 3);
    }

    #[test]
    fn reduce_flags_bad_denominator() {
        let p = 7;
        let x = Scalar::new(BigInt::from(1), BigInt::from(14));
        assert_eq!(reduce_scalar(&x, p), Err(DenominatorNotInvertible(7)));
    }

    #[test]
    fn rank_mod_small() {
        let p = 101;
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], p), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![3, 4]], p), 2);
        assert_eq!(rank_mod(vec![vec![0, 0, 0]], p), 0);
    }
}

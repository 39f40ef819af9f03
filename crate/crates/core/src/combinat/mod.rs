//! Exact binomial arithmetic, subset encodings, lex/colex orders and the
//! size-parameter algebra.

mod order;
mod size;
mod subset;

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

pub use order::{rank, unrank, Order};
pub use size::{count_from_lambda, size_parameter, union_of_stars_size, SizeParameter};
pub use subset::{ColexCombinations, SubsetCode, MAX_N};

/// `C(n, k)` as a big integer; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial with signed arguments: zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binom_signed(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        binom(n as u64, k as u64)
    }
}

/// Same as [`binom`], lifted into the rationals.
pub fn binom_q(n: i64, k: i64) -> BigRational {
    BigRational::from_integer(binom_signed(n, k).into())
}

const TABLE: usize = 65;

fn table() -> &'static [[u64; TABLE]; TABLE] {
    static T: OnceLock<Box<[[u64; TABLE]; TABLE]>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = Box::new([[0u64; TABLE]; TABLE]);
        for n in 0..TABLE {
            t[n][0] = 1;
            for k in 1..=n {
                // C(64, k) fits in u64 for every k
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        t
    })
}

/// Machine-word binomial for `n <= 64`.
#[inline]
pub fn small_binom(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    table()[n as usize][k as usize]
}

/// `C(n, k)` as `u64` when it fits.
pub fn binom_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    if n < TABLE as u64 {
        return Some(small_binom(n as u32, k as u32));
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Falling-factorial ratio `k(k-1)...(k-i+1) / n(n-1)...(n-i+1)`.
///
/// This is the probability that `i` fixed elements all land in a uniform
/// random `k`-subset of `[n]`.
pub fn falling_ratio(n: u64, k: u64, i: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(invalid("falling_ratio needs n >= 1"));
    }
    if k > n {
        return Err(invalid(format!("falling_ratio needs k <= n, got k={k}, n={n}")));
    }
    if i > k {
        return Err(invalid(format!("falling_ratio needs i <= k, got i={i}, k={k}")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..i {
        num *= k - j;
        den *= n - j;
    }
    Ok(BigRational::new(num.into(), den.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(5, 2), BigUint::from(10u32));
        assert_eq!(binom(4, 0), BigUint::from(1u32));
        assert_eq!(binom(24, 2), BigUint::from(276u32));
        assert_eq!(binom(3, 5), BigUint::zero());
    }

    #[test]
    fn binom_large_n() {
        // C(10^6, 2) = 10^6 * 999999 / 2
        assert_eq!(binom(1_000_000, 2), BigUint::from(499_999_500_000u64));
        let big = binom(1_000_000, 64);
        // symmetric route: product of (n - i) / (i + 1) in the other order
        let mut alt = BigUint::one();
        for i in 0..64u64 {
            alt *= 1_000_000 - i;
        }
        let mut fact = BigUint::one();
        for i in 1..=64u64 {
            fact *= i;
        }
        assert_eq!(big, alt / fact);
    }

    #[test]
    fn pascal_identity() {
        for n in 1..=200u64 {
            for k in 1..=n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn venn_identity() {
        // C(n-k-1, k-1) = sum_{i<s} C(s-1, i) C(n-k-s, k-i-1)
        for k in 1..=12i64 {
            for s in 1..=k {
                for n in (2 * k + s)..=100 {
                    let lhs = binom_signed(n - k - 1, k - 1);
                    let rhs: BigUint = (0..s)
                        .map(|i| binom_signed(s - 1, i) * binom_signed(n - k - s, k - i - 1))
                        .sum();
                    assert_eq!(lhs, rhs, "n={n} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn small_table_agrees() {
        for n in 0..=64u32 {
            for k in 0..=n {
                assert_eq!(BigUint::from(small_binom(n, k)), binom(n as u64, k as u64));
            }
        }
        assert_eq!(binom_u64(70, 3), Some(54740));
        assert_eq!(binom_u64(5, 7), Some(0));
        assert_eq!(binom_u64(200, 100), None);
    }

    #[test]
    fn falling_ratio_examples() {
        assert_eq!(falling_ratio(5, 2, 2).unwrap(), BigRational::new(1.into(), 10.into()));
        assert_eq!(falling_ratio(9, 4, 0).unwrap(), BigRational::one());
        assert_eq!(falling_ratio(9, 4, 1).unwrap(), BigRational::new(4.into(), 9.into()));
        assert!(falling_ratio(9, 4, 5).is_err());
    }

    #[test]
    fn falling_ratio_below_power() {
        for n in 1..30u64 {
            for k in 0..=n {
                let p = BigRational::new((k as i64).into(), (n as i64).into());
                for i in 0..=k {
                    let fr = falling_ratio(n, k, i).unwrap();
                    let pow = num_traits::pow(p.clone(), i as usize);
                    assert!(fr <= pow, "n={n} k={k} i={i}");
                }
            }
        }
        assert!(falling_ratio(10, 3, 2).unwrap().to_f64().unwrap() < 0.1);
    }
}

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

use super::{binom, binom_signed};

/// A family cardinality `m` written as `C(n,k) - C(n-s,k) + (λ-s)·C(n-s-1,k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeParameter {
    pub n: u64,
    pub k: u64,
    pub m: BigUint,
    pub s: u64,
    pub lambda: BigRational,
}

/// Size of a union of `s` distinct stars in `C([n], k)`.
pub fn union_of_stars_size(n: u64, k: u64, s: u64) -> BigUint {
    let s = s.min(n);
    binom(n, k) - binom(n - s, k)
}

fn q(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Decompose `m` into `(s, λ)` with `s` the largest number of stars whose
/// union has at most `m` members.
///
/// When `m` is exactly the size of a union of `s` stars the result is
/// `λ = s`, so `λ` always lies in `[s, s+1)`.
pub fn size_parameter(n: u64, k: u64, m: &BigUint) -> Result<SizeParameter> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "size parameter needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let total = binom(n, k);
    if *m > total {
        return Err(Error::OutOfRange {
            what: "family size",
            detail: format!("{m} > C({n}, {k}) = {total}"),
        });
    }
    // beyond n-k+1 stars the union is already everything
    let cap = n - k + 1;
    let (mut lo, mut hi) = (0u64, cap);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if union_of_stars_size(n, k, mid) <= *m {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let s = lo;
    let excess = m - union_of_stars_size(n, k, s);
    let step = binom_signed(n as i64 - s as i64 - 1, k as i64 - 1);
    let lambda = if step.is_zero() {
        debug_assert!(excess.is_zero());
        BigRational::from_integer(s.into())
    } else {
        BigRational::from_integer(s.into()) + BigRational::new(excess.into(), step.into())
    };
    Ok(SizeParameter {
        n,
        k,
        m: m.clone(),
        s,
        lambda,
    })
}

/// Inverse of [`size_parameter`] for a pinned `s`; `λ` may range over `[s, s+1]`.
pub fn count_from_lambda(n: u64, k: u64, s: u64, lambda: &BigRational) -> Result<BigUint> {
    if k == 0 || k > n || s > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n and s <= n, got n={n}, k={k}, s={s}"
        )));
    }
    let s_q = BigRational::from_integer(s.into());
    if *lambda < s_q || *lambda > &s_q + BigRational::from_integer(1.into()) {
        return Err(Error::OutOfRange {
            what: "lambda",
            detail: format!("{lambda} not in [{s}, {}]", s + 1),
        });
    }
    let step = binom_signed(n as i64 - s as i64 - 1, k as i64 - 1);
    let m = q(union_of_stars_size(n, k, s)) + (lambda - s_q) * q(step);
    if !m.is_integer() {
        return Err(Error::NonIntegralSize(format!(
            "n={n}, k={k}, s={s}, lambda={lambda} gives m = {m}"
        )));
    }
    let m = m.to_integer();
    if m.is_negative() || m > BigInt::from(binom(n, k)) {
        return Err(Error::OutOfRange {
            what: "family size",
            detail: format!("{m} outside [0, C({n}, {k})]"),
        });
    }
    Ok(m.to_biguint().expect("non-negative"))
}

impl SizeParameter {
    /// `λ·C(n-1,k-1) - C(s+1,2)·C(n-2,k-2) <= m <= λ·C(n-1,k-1)`.
    pub fn crude_bounds_hold(&self) -> bool {
        let (n, k, s) = (self.n as i64, self.k as i64, self.s as i64);
        let star = &self.lambda * q(binom_signed(n - 1, k - 1));
        let slack = q(binom_signed(s + 1, 2) * binom_signed(n - 2, k - 2));
        let m = q(self.m.clone());
        &star - slack <= m && m <= star
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn examples() {
        let sp = size_parameter(5, 2, &BigUint::from(4u32)).unwrap();
        assert_eq!((sp.s, sp.lambda.clone()), (1, r(1, 1)));
        let sp = size_parameter(5, 2, &BigUint::from(5u32)).unwrap();
        assert_eq!((sp.s, sp.lambda.clone()), (1, r(4, 3)));
        let sp = size_parameter(5, 2, &BigUint::zero()).unwrap();
        assert_eq!((sp.s, sp.lambda.clone()), (0, r(0, 1)));
        let sp = size_parameter(5, 2, &BigUint::from(10u32)).unwrap();
        assert_eq!((sp.s, sp.lambda.clone()), (4, r(4, 1)));
        assert!(size_parameter(5, 2, &BigUint::from(11u32)).is_err());
    }

    #[test]
    fn roundtrip_and_crude() {
        for n in 1..=40u64 {
            for k in 1..=n {
                let total = binom(n, k);
                if total > BigUint::from(10_000u32) {
                    continue;
                }
                let t: u64 = total.try_into().unwrap();
                for m in 0..=t {
                    let m = BigUint::from(m);
                    let sp = size_parameter(n, k, &m).unwrap();
                    assert!(sp.lambda >= r(sp.s as i64, 1));
                    assert!(sp.lambda < r(sp.s as i64 + 1, 1));
                    assert_eq!(count_from_lambda(n, k, sp.s, &sp.lambda).unwrap(), m);
                    assert!(sp.crude_bounds_hold(), "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn pinned_top_of_range() {
        // λ = s+1 with s pinned is the union of s+1 stars
        let m = count_from_lambda(9, 2, 1, &r(2, 1)).unwrap();
        assert_eq!(m, union_of_stars_size(9, 2, 2));
        assert!(matches!(
            count_from_lambda(24, 2, 1, &r(4, 3)),
            Err(Error::NonIntegralSize(_))
        ));
        assert!(count_from_lambda(24, 2, 1, &r(5, 2)).is_err());
    }
}

use crate::error::{Error, Result};

use super::{binom_u64, SubsetCode};

/// Total orders on `k`-subsets of `[n]`.
///
/// `Lex`: `A` precedes `B` when `min(A Δ B)` lies in `A`.
/// `Colex`: `A` precedes `B` when `max(A Δ B)` lies in `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Lex,
    Colex,
}

fn total(n: u32, k: u32) -> Result<u64> {
    binom_u64(n as u64, k as u64)
        .ok_or_else(|| Error::TooLarge(format!("C({n}, {k}) does not fit in 64 bits")))
}

fn colex_rank(set: &SubsetCode) -> Result<u64> {
    let mut r: u64 = 0;
    for (i, e) in set.iter().enumerate() {
        let c = binom_u64((e - 1) as u64, i as u64 + 1)
            .ok_or_else(|| Error::TooLarge("colex rank overflow".into()))?;
        r += c;
    }
    Ok(r)
}

fn colex_unrank(n: u32, k: u32, mut r: u64) -> SubsetCode {
    let mut code = SubsetCode::EMPTY;
    let mut a = n;
    for i in (1..=k).rev() {
        // largest a with C(a, i) <= r
        a -= 1;
        while binom_u64(a as u64, i as u64).is_none_or(|c| c > r) {
            a -= 1;
        }
        r -= binom_u64(a as u64, i as u64).unwrap();
        code.insert(a + 1);
    }
    code
}

fn reverse(n: u32, set: &SubsetCode) -> SubsetCode {
    let mut out = SubsetCode::EMPTY;
    for e in set.iter() {
        out.insert(n + 1 - e);
    }
    out
}

fn check_set(n: u32, k: u32, set: &SubsetCode) -> Result<()> {
    if !set.fits(n) || set.len() != k {
        return Err(Error::InvalidParameter(format!(
            "{set:?} is not a {k}-subset of [{n}]"
        )));
    }
    Ok(())
}

/// Position of `set` among the `k`-subsets of `[n]` in the given order.
pub fn rank(order: Order, n: u32, k: u32, set: &SubsetCode) -> Result<u64> {
    check_set(n, k, set)?;
    match order {
        Order::Colex => colex_rank(set),
        Order::Lex => {
            // reversing the ground set turns lex into reverse colex
            let t = total(n, k)?;
            Ok(t - 1 - colex_rank(&reverse(n, set))?)
        }
    }
}

/// Inverse of [`rank`].
pub fn unrank(order: Order, n: u32, k: u32, r: u64) -> Result<SubsetCode> {
    let t = total(n, k)?;
    if r >= t {
        return Err(Error::OutOfRange {
            what: "rank",
            detail: format!("{r} >= C({n}, {k}) = {t}"),
        });
    }
    Ok(match order {
        Order::Colex => colex_unrank(n, k, r),
        Order::Lex => reverse(n, &colex_unrank(n, k, t - 1 - r)),
    })
}

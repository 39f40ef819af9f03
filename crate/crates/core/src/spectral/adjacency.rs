use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::ops::{AddAssign, Div};

use rayon::prelude::*;

use crate::combinat::{rank, small_binom, ColexCombinations, Order, SubsetCode};
use crate::error::{Error, Result};
use crate::family::Family;

/// Largest ground set for dense functions on `C([n], k)`.
pub const SPECTRAL_MAX_N: u32 = 24;

fn check_shape(n: u32, k: u32, len: usize) -> Result<usize> {
    if n > SPECTRAL_MAX_N {
        return Err(Error::TooLarge(format!(
            "dense functions need n <= {SPECTRAL_MAX_N}, got {n}"
        )));
    }
    let total = small_binom(n, k) as usize;
    if len != total {
        return Err(Error::InvalidParameter(format!(
            "vector has length {len}, expected C({n}, {k}) = {total}"
        )));
    }
    Ok(total)
}

/// 0/1 vector of a family, indexed by colex rank.
pub fn indicator(family: &Family) -> Result<Vec<BigInt>> {
    let total = check_shape(family.n(), family.k(), small_binom(family.n(), family.k()) as usize)?;
    let mut f = vec![BigInt::zero(); total];
    for a in family {
        f[rank(Order::Colex, family.n(), family.k(), a)? as usize] = BigInt::one();
    }
    Ok(f)
}

/// `(Ag)(A) = Σ_{B ∩ A = ∅} g(B)` for a rational function on `C([n], k)`
/// indexed by colex rank.
pub fn adjacency_apply(n: u32, k: u32, g: &[BigRational]) -> Result<Vec<BigRational>> {
    check_shape(n, k, g.len())?;
    let den = g.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = g.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    Ok(adjacency_apply_int(n, k, &scaled)?
        .into_iter()
        .map(|x| BigRational::new(x, den.clone()))
        .collect())
}

/// Integer version of [`adjacency_apply`].
pub fn adjacency_apply_int(n: u32, k: u32, g: &[BigInt]) -> Result<Vec<BigInt>> {
    let total = check_shape(n, k, g.len())?;
    let sets: Vec<SubsetCode> = ColexCombinations::new(n, k).collect();
    let max_abs = g.iter().map(|x| x.abs()).max().unwrap_or_default();
    // every partial sum is bounded by max|g| · C(n, k)
    let bound = &max_abs * BigInt::from(total.max(1));
    if bound.bits() < 126 {
        let small: Vec<i128> = g.iter().map(|x| x.to_i128().expect("bounded")).collect();
        return Ok(apply_i128(n, k, &sets, &small).into_iter().map(BigInt::from).collect());
    }
    Ok(pairwise(n, k, &sets, g, BigInt::zero()))
}

/// `A g` on machine integers; the caller rules out overflow.
pub(crate) fn apply_i128(n: u32, k: u32, sets: &[SubsetCode], g: &[i128]) -> Vec<i128> {
    let pairwise_cost = sets.len() as f64 * small_binom(n - k.min(n), k) as f64 * k.max(1) as f64;
    let layered_cost = (1u64 << n) as f64
        + (k + 1..=n.saturating_sub(k))
            .map(|j| small_binom(n, j) as f64 * j as f64)
            .sum::<f64>();
    if layered_cost < pairwise_cost {
        let sum: u128 = g.iter().map(|x| x.unsigned_abs()).sum();
        if sum.saturating_mul(n as u128) < 1 << 62 {
            let small: Vec<i64> = g.iter().map(|&x| x as i64).collect();
            layered(n, k, sets, &small).into_iter().map(i128::from).collect()
        } else {
            layered(n, k, sets, g)
        }
    } else {
        pairwise(n, k, sets, g, 0i128)
    }
}

/// `(Ag)(X) = G(X̄)` with `G(S) = Σ_{B ⊆ S, |B| = k} g(B)`, built one subset
/// size at a time: each such `B` lies in `|S| - k` of the sets `S - e`.
fn layered<T>(n: u32, k: u32, sets: &[SubsetCode], g: &[T]) -> Vec<T>
where
    T: Copy + Default + AddAssign + Div<Output = T> + From<i32>,
{
    let full = (1u64 << n) - 1;
    let mut h = vec![T::default(); 1usize << n];
    for (a, &v) in sets.iter().zip(g) {
        h[a.low_word() as usize] = v;
    }
    for j in k + 1..=n.saturating_sub(k) {
        let div = T::from((j - k) as i32);
        let mut s: u64 = (1 << j) - 1;
        while s <= full {
            let mut acc = T::default();
            let mut rest = s;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                acc += h[(s ^ bit) as usize];
                rest ^= bit;
            }
            h[s as usize] = acc / div;
            // next set of the same size
            let low = s & s.wrapping_neg();
            let ripple = s + low;
            s = (((ripple ^ s) >> 2) / low) | ripple;
        }
    }
    sets.iter().map(|a| h[(full & !a.low_word()) as usize]).collect()
}

fn pairwise<T>(n: u32, k: u32, sets: &[SubsetCode], g: &[T], zero: T) -> Vec<T>
where
    T: Clone + Send + Sync + for<'a> std::ops::AddAssign<&'a T>,
{
    // k-subsets of the n-k positions of a complement
    let patterns: Vec<Vec<usize>> = ColexCombinations::new(n.saturating_sub(k), k)
        .map(|c| c.iter().map(|e| e as usize - 1).collect())
        .collect();
    sets.par_iter()
        .map(|a| {
            let comp: Vec<u32> = a.complement(n).iter().map(|e| e - 1).collect();
            let mut acc = zero.clone();
            for pat in &patterns {
                let r: u64 = pat
                    .iter()
                    .enumerate()
                    .map(|(j, &pos)| small_binom(comp[pos], j as u32 + 1))
                    .sum();
                acc += &g[r as usize];
            }
            acc
        })
        .collect()
}

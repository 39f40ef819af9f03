//! Kneser spectra, eigencomponent norms of family indicators, the linear
//! profile, and the spectral inequality checkers.

mod adjacency;
mod mixing;
mod profile;

use num_bigint::{BigInt, BigUint};

use crate::combinat::{binom, binom_signed};
use crate::error::{invalid, Result};

pub use adjacency::{adjacency_apply, adjacency_apply_int, indicator, SPECTRAL_MAX_N};
pub use mixing::{
    expander_mixing_check, mixing_bounds, singular_ratio_bound, singular_ratio_sq_exact, star_split_check,
    MixingCheck, StarSplit,
};
pub use profile::{
    check_gammamax, check_thirdorder, eigencomponent_norms, linear_profile, linear_profile_closed_form, moments,
    thirdorder_bound, SpectralProfile,
};

/// Eigenvalues `(-1)^i C(n-k-i, k-i)` of `K(n, k)` and their multiplicities
/// `C(n,i) - C(n,i-1)`, for `i = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub eigenvalues: Vec<BigInt>,
    pub multiplicities: Vec<BigUint>,
}

pub fn spectrum(n: u64, k: u64) -> Result<SpectrumTable> {
    if n < 2 * k + 1 {
        return Err(invalid(format!("spectrum needs n >= 2k+1, got n={n}, k={k}")));
    }
    let (ni, ki) = (n as i64, k as i64);
    let eigenvalues = (0..=ki)
        .map(|i| {
            let v = BigInt::from(binom_signed(ni - ki - i, ki - i));
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let multiplicities = (0..=k)
        .map(|i| {
            let below = if i == 0 { BigUint::from(0u32) } else { binom(n, i - 1) };
            binom(n, i) - below
        })
        .collect();
    Ok(SpectrumTable {
        eigenvalues,
        multiplicities,
    })
}

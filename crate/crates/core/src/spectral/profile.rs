use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::adjacency::{adjacency_apply_int, apply_i128, indicator, SPECTRAL_MAX_N};
use super::spectrum;
use crate::bounds::{BoundReport, BoundValue, Relation};
use crate::combinat::{binom, falling_ratio, rank, small_binom, ColexCombinations, Order, SubsetCode};
use crate::error::{invalid, Error, Result};
use crate::exact::{from_biguint, int, rat, Rounding};
use crate::family::Family;

/// Density, star densities and level-one data of a family indicator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralProfile {
    pub n: u32,
    pub k: u32,
    pub size: usize,
    pub alpha: BigRational,
    pub gamma: Vec<BigRational>,
    pub gamma_max: BigRational,
    /// Coefficients of the level-one component `f₁ = Σ a_i x_i`.
    pub a: Vec<BigRational>,
    /// `‖f₁‖² / ‖f‖²`.
    pub eta: BigRational,
    /// `‖f_i‖²` for `i = 0..=k` (counting measure), when computed.
    pub eigennorm_sq: Option<Vec<BigRational>>,
}

fn check_kneser(n: u32, k: u32) -> Result<()> {
    if n < 2 * k + 1 {
        return Err(invalid(format!("need n >= 2k+1, got n={n}, k={k}")));
    }
    Ok(())
}

/// `⟨f, A^j f⟩` for `j = 0..=upto`, using `A` symmetric to halve the work.
pub fn moments(family: &Family, upto: u32) -> Result<Vec<BigInt>> {
    let (n, k) = (family.n(), family.k());
    let steps = upto.div_ceil(2);
    let degree = small_binom(n.saturating_sub(k), k).max(1) as f64;
    let total = small_binom(n, k).max(1) as f64;
    // entries of A^j f are at most degree^j, so dot products stay below total·degree^upto
    if n <= SPECTRAL_MAX_N && total.log2() + upto as f64 * degree.log2() < 120.0 {
        let sets: Vec<SubsetCode> = ColexCombinations::new(n, k).collect();
        let mut powers = vec![vec![0i128; sets.len()]];
        for a in family {
            powers[0][rank(Order::Colex, n, k, a)? as usize] = 1;
        }
        for _ in 0..steps {
            let next = apply_i128(n, k, &sets, powers.last().unwrap());
            powers.push(next);
        }
        let dot = |u: &[i128], v: &[i128]| -> i128 { u.iter().zip(v).map(|(x, y)| x * y).sum() };
        return Ok((0..=upto as usize)
            .map(|j| BigInt::from(dot(&powers[j / 2], &powers[j.div_ceil(2)])))
            .collect());
    }
    let mut powers = vec![indicator(family)?];
    for _ in 0..steps {
        let next = adjacency_apply_int(n, k, powers.last().unwrap())?;
        powers.push(next);
    }
    let dot = |u: &[BigInt], v: &[BigInt]| -> BigInt { u.iter().zip(v).map(|(x, y)| x * y).sum() };
    Ok((0..=upto as usize)
        .map(|j| dot(&powers[j / 2], &powers[j.div_ceil(2)]))
        .collect())
}

/// Squared norms `‖f_i‖²` of the projections of the indicator onto the
/// eigenspaces of `K(n, k)`, from the first `k+1` moments.
pub fn eigencomponent_norms(family: &Family) -> Result<Vec<BigRational>> {
    let (n, k) = (family.n(), family.k());
    check_kneser(n, k)?;
    if n > SPECTRAL_MAX_N {
        return Err(Error::TooLarge(format!("eigencomponent norms need n <= {SPECTRAL_MAX_N}")));
    }
    let m = moments(family, k)?;
    let lambdas = spectrum(n as u64, k as u64)?.eigenvalues;
    // x_i = L_i(A) applied in moment space, L_i the Lagrange basis polynomial
    let mut out = Vec::with_capacity(lambdas.len());
    for (i, li) in lambdas.iter().enumerate() {
        let mut poly = vec![BigInt::one()];
        let mut den = BigInt::one();
        for (l, ll) in lambdas.iter().enumerate() {
            if l == i {
                continue;
            }
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * ll;
            }
            poly = next;
            den *= li - ll;
        }
        let num: BigInt = poly.iter().zip(&m).map(|(c, mj)| c * mj).sum();
        out.push(BigRational::new(num, den));
    }
    Ok(out)
}

/// Closed-form profile without eigencomponent norms.
pub fn linear_profile_closed_form(family: &Family) -> Result<SpectralProfile> {
    let (n, k) = (family.n(), family.k());
    check_kneser(n, k)?;
    if k == 0 {
        return Err(invalid("linear profile needs k >= 1"));
    }
    if family.is_empty() {
        return Err(invalid("linear profile needs a nonempty family"));
    }
    let alpha = family.density();
    let gamma = family.star_densities()?;
    let gamma_max = gamma.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let scale = rat(n as i64 - 1, (n - k) as i64);
    let a: Vec<BigRational> = gamma.iter().map(|g| &scale * (g - &alpha)).collect();
    let p = rat(k as i64, n as i64);
    let p2 = if k >= 2 {
        falling_ratio(n as u64, k as u64, 2)?
    } else {
        BigRational::zero()
    };
    let a2: BigRational = a.iter().map(|x| x * x).sum();
    let eta = a2 * (p - p2) / &alpha;
    Ok(SpectralProfile {
        n,
        k,
        size: family.len(),
        alpha,
        gamma,
        gamma_max,
        a,
        eta,
        eigennorm_sq: None,
    })
}

/// Linear profile; for `n <= 24` also the eigencomponent norms, checked
/// against the closed form for `η`.
pub fn linear_profile(family: &Family) -> Result<SpectralProfile> {
    let mut profile = linear_profile_closed_form(family)?;
    if family.n() <= SPECTRAL_MAX_N {
        let norms = eigencomponent_norms(family)?;
        let eta = &norms[1] / int(family.len());
        if eta != profile.eta {
            return Err(Error::Invariant(format!(
                "closed-form eta {} differs from spectral eta {eta}",
                profile.eta
            )));
        }
        profile.eigennorm_sq = Some(norms);
    }
    Ok(profile)
}

/// Checks `η³ <= c³·γ_max² + 3c²·η·α` with `c = (n-1)/(n-k)`.
pub fn check_gammamax(profile: &SpectralProfile) -> BoundReport {
    let c = rat(profile.n as i64 - 1, (profile.n - profile.k) as i64);
    let c2 = &c * &c;
    let rhs = &c2 * &c * &profile.gamma_max * &profile.gamma_max + int(3) * c2 * &profile.eta * &profile.alpha;
    let lhs = &profile.eta * &profile.eta * &profile.eta;
    BoundReport::new("gammamax", BoundValue::Exact(rhs), Rounding::Up)
        .with_hypothesis("n >= 2k+1", profile.n > 2 * profile.k)
        .compare(lhs, Relation::AtMost)
}

/// `(α - (k/(n-k))·(η + (k/(n-k))²))·C(n-k,k)`, a lower bound on the
/// average degree `2e(F)/|F|`.
pub fn thirdorder_bound(profile: &SpectralProfile) -> BigRational {
    let r = rat(profile.k as i64, (profile.n - profile.k) as i64);
    let inner = &profile.alpha - &r * (&profile.eta + &r * &r);
    inner * from_biguint(binom((profile.n - profile.k) as u64, profile.k as u64))
}

pub fn check_thirdorder(profile: &SpectralProfile, edge_count: u64) -> BoundReport {
    let avg = BigRational::new(BigInt::from(2 * edge_count), BigInt::from(profile.size));
    BoundReport::new("thirdorder", BoundValue::Exact(thirdorder_bound(profile)), Rounding::Down)
        .with_hypothesis("n >= 2k+1", profile.n > 2 * profile.k)
        .compare(avg, Relation::AtLeast)
}

impl SpectralProfile {
    pub fn to_json(&self) -> Value {
        let strs = |v: &[BigRational]| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
        json!({
            "alpha": self.alpha.to_string(),
            "gamma": strs(&self.gamma),
            "gamma_max": self.gamma_max.to_string(),
            "a": strs(&self.a),
            "eta": self.eta.to_string(),
            "eigennorm_sq": self.eigennorm_sq.as_deref().map(strs),
        })
    }
}

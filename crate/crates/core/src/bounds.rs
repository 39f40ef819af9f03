//! Evaluators for the degree bounds and auxiliary inequalities, each with
//! its own hypothesis gate.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::combinat::{binom, binom_q, binom_signed, SubsetCode};
use crate::error::{invalid, Error, Result};
use crate::exact::{format_decimal, int, rat, RadicalExpr, Rounding};
use crate::family::Family;

/// Significant digits used whenever a value is rendered as a decimal.
pub const DISPLAY_DIGITS: u32 = 12;

/// Whether a bound is evaluated only inside its hypothesis range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EvalMode {
    #[default]
    Gated,
    Forced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(BigRational),
    Radical(RadicalExpr),
    /// The bound is undefined for these inputs and asserts nothing.
    Vacuous,
}

impl BoundValue {
    pub fn from_expr(expr: RadicalExpr) -> Self {
        match expr.as_rational() {
            Some(x) => BoundValue::Exact(x),
            None => BoundValue::Radical(expr),
        }
    }

    /// Exact comparison of the bound against a rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Option<Ordering> {
        match self {
            BoundValue::Exact(v) => Some(v.cmp(x)),
            BoundValue::Radical(e) => Some(e.cmp_rational(x)),
            BoundValue::Vacuous => None,
        }
    }

    /// Decimal rendering rounded in the given direction.
    pub fn decimal(&self, rounding: Rounding) -> Option<String> {
        match self {
            BoundValue::Exact(v) => Some(format_decimal(v, DISPLAY_DIGITS, rounding)),
            BoundValue::Radical(e) => {
                let iv = e.enclose();
                let end = match rounding {
                    Rounding::Down => &iv.lo,
                    Rounding::Up => &iv.hi,
                };
                Some(format_decimal(end, DISPLAY_DIGITS, rounding))
            }
            BoundValue::Vacuous => None,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            BoundValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub text: String,
    pub ok: bool,
}

impl Hypothesis {
    pub fn new(text: impl Into<String>, ok: bool) -> Self {
        Hypothesis {
            text: text.into(),
            ok,
        }
    }
}

/// How the measured quantity must relate to the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    AtMost,
    Below,
    Above,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::Below => "<",
            Relation::Above => ">",
        }
    }

    /// `ord` is `bound.cmp(measured)`.
    fn satisfied(self, ord: Ordering) -> bool {
        match self {
            Relation::AtLeast => ord != Ordering::Greater,
            Relation::AtMost => ord != Ordering::Less,
            Relation::Below => ord == Ordering::Greater,
            Relation::Above => ord == Ordering::Less,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub measured: BigRational,
    pub relation: Relation,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: &'static str,
    pub value: BoundValue,
    /// Direction in which the displayed decimal is rounded.
    pub rounding: Rounding,
    pub hypotheses: Vec<Hypothesis>,
    pub mode: EvalMode,
    pub comparison: Option<Comparison>,
}

impl BoundReport {
    pub fn new(name: &'static str, value: BoundValue, rounding: Rounding) -> Self {
        BoundReport {
            name,
            value,
            rounding,
            hypotheses: Vec::new(),
            mode: EvalMode::Gated,
            comparison: None,
        }
    }

    pub fn with_hypothesis(mut self, text: impl Into<String>, ok: bool) -> Self {
        self.hypotheses.push(Hypothesis::new(text, ok));
        self
    }

    pub fn with_mode(mut self, mode: EvalMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn hypothesis_ok(&self) -> bool {
        self.hypotheses.iter().all(|h| h.ok)
    }

    /// Verdicts are only issued inside the hypothesis range or when forced.
    pub fn may_compare(&self) -> bool {
        self.hypothesis_ok() || self.mode == EvalMode::Forced
    }

    /// Attach a measured quantity. A vacuous bound always holds.
    pub fn compare(mut self, measured: BigRational, relation: Relation) -> Self {
        if !self.may_compare() {
            return self;
        }
        let verdict = match self.value.cmp_rational(&measured) {
            Some(ord) if !relation.satisfied(ord) => Verdict::Violated,
            _ => Verdict::Holds,
        };
        self.comparison = Some(Comparison {
            measured,
            relation,
            verdict,
        });
        self
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.comparison.as_ref().map(|c| c.verdict)
    }

    pub fn holds(&self) -> bool {
        self.verdict() == Some(Verdict::Holds)
    }

    pub fn decimal(&self) -> Option<String> {
        self.value.decimal(self.rounding)
    }

    pub fn to_json(&self) -> Value {
        let exact = match &self.value {
            BoundValue::Exact(v) => Value::String(v.to_string()),
            BoundValue::Radical(e) => Value::String(e.to_string()),
            BoundValue::Vacuous => Value::Null,
        };
        let hypotheses: Vec<Value> = self
            .hypotheses
            .iter()
            .map(|h| json!({ "text": h.text, "ok": h.ok }))
            .collect();
        let comparison = match &self.comparison {
            Some(c) => json!({
                "measured": c.measured.to_string(),
                "relation": format!("measured {} bound", c.relation.symbol()),
                "verdict": match c.verdict {
                    Verdict::Holds => "holds",
                    Verdict::Violated => "violated",
                },
            }),
            None => Value::Null,
        };
        let mut out = json!({
            "name": self.name,
            "value": self.decimal(),
            "rounding": self.rounding.as_str(),
            "exact": exact,
            "hypothesis_ok": self.hypothesis_ok(),
            "hypotheses": hypotheses,
            "verdict": comparison,
        });
        if self.mode == EvalMode::Forced && !self.hypothesis_ok() {
            out["note"] = Value::String("unconditional evaluation, no theorem guarantee".into());
        }
        out
    }
}

fn p_of(n: u64, k: u64) -> BigRational {
    rat(k as i64, n as i64)
}

fn check_lambda(s: u64, lambda: &BigRational) -> Result<()> {
    let lo = int(s);
    let hi = int(s + 1);
    if *lambda < lo || *lambda > hi {
        return Err(Error::OutOfRange {
            what: "lambda",
            detail: format!("{lambda} not in [{s}, {}]", s + 1),
        });
    }
    Ok(())
}

fn check_kneser(n: u64, k: u64) -> Result<()> {
    if n < 2 * k + 1 {
        return Err(invalid(format!("need n >= 2k+1, got n={n}, k={k}")));
    }
    Ok(())
}

/// Lower bound on the maximum degree of a family with size parameter `λ`
/// that is not a union of `s` stars:
/// `C(n-k-1,k-1)·(sλ/(s+1) - 11(√(s³p) + s³p))`.
pub fn main_lower_bound(n: u64, k: u64, s: u64, lambda: &BigRational, mode: EvalMode) -> Result<BoundReport> {
    check_lambda(s, lambda)?;
    check_kneser(n, k)?;
    let b = binom_q(n as i64 - k as i64 - 1, k as i64 - 1);
    let s3p = int(s * s * s) * p_of(n, k);
    let lead = int(s) * lambda / int(s + 1);
    let expr = RadicalExpr::new(&b * (lead - int(11) * &s3p), -(&b * int(11)), s3p)?;
    Ok(BoundReport::new("main_lower_bound", BoundValue::from_expr(expr), Rounding::Down)
        .with_hypothesis("n >= 10000*s^2*k", n >= 10000 * s * s * k)
        .with_mode(mode))
}

/// Maximum degree guaranteed by the explicit construction:
/// `(sλ/(s+1) + 4sp)·C(n-k-1,k-1)`.
pub fn construction_upper_bound(n: u64, k: u64, s: u64, lambda: &BigRational, mode: EvalMode) -> Result<BoundReport> {
    check_lambda(s, lambda)?;
    let ok = n >= 12 * k * s;
    if !ok && mode == EvalMode::Gated {
        return Err(Error::Hypothesis(format!("n >= 12*k*s fails for n={n}, k={k}, s={s}")));
    }
    let value = (int(s) * lambda / int(s + 1) + int(4 * s) * p_of(n, k))
        * binom_q(n as i64 - k as i64 - 1, k as i64 - 1);
    Ok(BoundReport::new("construction_upper_bound", BoundValue::Exact(value), Rounding::Up)
        .with_hypothesis("n >= 12*k*s", ok)
        .with_mode(mode))
}

/// Expected degree of a singleton-intersection member in the random
/// construction: `(sλ/(s+1))·C(n-k-s,k-1) + Σ_{i=2..s} C(s,i)·C(n-k-s,k-i)`.
pub fn random_expected_degree(n: u64, k: u64, s: u64, lambda: &BigRational) -> BigRational {
    let (n, k, s) = (n as i64, k as i64, s as i64);
    let mut value = int(s) * lambda / int(s + 1) * binom_q(n - k - s, k - 1);
    for i in 2..=s {
        value += binom_q(s, i) * binom_q(n - k - s, k - i);
    }
    value
}

/// Maximum degree of a union of `s` stars: `C(n-k,k) - C(n-k-s+1,k)`.
pub fn stars_max_degree(n: u64, k: u64, s: u64) -> Result<BigUint> {
    if n < 2 * k || s == 0 {
        return Err(invalid(format!("need n >= 2k and s >= 1, got n={n}, k={k}, s={s}")));
    }
    let (n, k, s) = (n as i64, k as i64, s as i64);
    Ok(binom_signed(n - k, k) - binom_signed(n - k - s + 1, k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// Density of a popular star, given a lower bound `c0` on it.
    Extension { c0: BigRational },
    /// Density reached by at least `s+1` stars.
    Many,
}

/// Density thresholds forced on stars of a degree minimiser.
pub fn threshold(kind: &Threshold, n: u64, k: u64, s: u64, lambda: &BigRational, mode: EvalMode) -> Result<BoundReport> {
    check_lambda(s, lambda)?;
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let p = p_of(n, k);
    let r = lambda / int(s + 1) - int(s * s + 4 * s) * &p;
    let (name, d, text, ok) = match kind {
        Threshold::Extension { c0 } => {
            if !c0.is_positive() {
                return Err(invalid(format!("c0 must be positive, got {c0}")));
            }
            ("extension_threshold", int(2 * (s + 1)) * &p / c0, "n >= 12*s*k", n >= 12 * s * k)
        }
        Threshold::Many => ("many_stars_threshold", int(40 * (s + 1)) * &p, "n >= 100*s^2*k", n >= 100 * s * s * k),
    };
    let expr = RadicalExpr::new(r, -BigRational::one(), d)?;
    Ok(BoundReport::new(name, BoundValue::from_expr(expr), Rounding::Down)
        .with_hypothesis(text, ok)
        .with_mode(mode))
}

/// `C(m,k)/C(n,k) >= 1 - k(n-m)/(n-k+1)` for `k <= m <= n`.
pub fn binom_ratio(n: u64, m: u64, k: u64) -> Result<BoundReport> {
    if !(k <= m && m <= n) {
        return Err(invalid(format!("need k <= m <= n, got k={k}, m={m}, n={n}")));
    }
    let measured = BigRational::new(BigInt::from(binom(m, k)), BigInt::from(binom(n, k)));
    let value = BigRational::one() - rat((k * (n - m)) as i64, (n - k + 1) as i64);
    Ok(BoundReport::new("binom_ratio", BoundValue::Exact(value), Rounding::Down)
        .with_hypothesis("k <= m <= n", true)
        .compare(measured, Relation::AtLeast))
}

/// Star density of element 1 against the density of the slice that meets
/// `[s+1]` exactly in `{1}`: `γ̃ + sp > γ >= γ̃(1 - 2sp)`.
///
/// Returns the upper and lower halves as separate reports.
pub fn star_conversion(family: &Family, s: u64) -> Result<[BoundReport; 2]> {
    let (n, k) = (family.n() as u64, family.k() as u64);
    if !(s <= k && 2 * k <= n) || s + 1 > n {
        return Err(invalid(format!("need s <= k <= n/2, got s={s}, k={k}, n={n}")));
    }
    let one = SubsetCode::prefix(1);
    let gamma = BigRational::new(
        family.slice(&one, &one)?.family.len().into(),
        BigInt::from(binom_signed(n as i64 - 1, k as i64 - 1)),
    );
    let head = SubsetCode::prefix(s as u32 + 1);
    let den = binom_signed(n as i64 - s as i64 - 1, k as i64 - 1);
    if den.is_zero() {
        return Err(invalid("slice denominator C(n-s-1, k-1) vanishes"));
    }
    let tilde = BigRational::new(family.slice(&head, &one)?.family.len().into(), BigInt::from(den));
    let sp = int(s) * p_of(n, k);
    let upper = BoundReport::new("star_conversion_upper", BoundValue::Exact(&tilde + &sp), Rounding::Up)
        .with_hypothesis("s <= k <= n/2", true)
        .compare(gamma.clone(), Relation::Below);
    let lower = BoundReport::new(
        "star_conversion_lower",
        BoundValue::Exact(&tilde * (BigRational::one() - int(2) * sp)),
        Rounding::Down,
    )
    .with_hypothesis("s <= k <= n/2", true)
    .compare(gamma, Relation::AtLeast);
    Ok([upper, lower])
}

/// Whether every member meets all but at most `l` other members.
pub fn almost_intersecting(family: &Family, l: u64) -> bool {
    family.max_degree() <= l
}

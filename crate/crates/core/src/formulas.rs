//! Closed-form values of the extremal set sizes.
//!
//! All minima are taken by enumerating the relevant divisor sets directly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::group::{divisors, is_prime, restricted_divisor_set, GroupSpec};

/// How much of a reported value is actually proven.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaStatus {
    /// Proven for every finite abelian group.
    Theorem,
    TheoremCyclic,
    TheoremVectorSpace,
    /// Proven upper bound, equality only conjectured.
    Conjectured,
    UpperBoundOnly,
}

impl FormulaStatus {
    pub fn tag(self) -> &'static str {
        match self {
            FormulaStatus::Theorem => "theorem",
            FormulaStatus::TheoremCyclic => "theorem-cyclic",
            FormulaStatus::TheoremVectorSpace => "theorem-vector-space",
            FormulaStatus::Conjectured => "conjectured",
            FormulaStatus::UpperBoundOnly => "upper-bound-only",
        }
    }
}

impl fmt::Display for FormulaStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaStatus::Theorem => "theorem",
            FormulaStatus::TheoremCyclic => "theorem (cyclic)",
            FormulaStatus::TheoremVectorSpace => "theorem (elementary abelian)",
            FormulaStatus::Conjectured => "conjectured",
            FormulaStatus::UpperBoundOnly => "upper bound only",
        })
    }
}

/// A formula value together with its proof status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: usize,
    pub status: FormulaStatus,
}

fn check_cardinality(name: &str, r: usize, order: usize) -> Result<()> {
    if r == 0 || r > order {
        return domain(format!("{name} = {r} outside 1..={order}"));
    }
    Ok(())
}

/// `d(2⌈r/d⌉ - 1)`, the size of the difference set of `⌈r/d⌉` consecutive
/// cosets of a subgroup of order `d`.
pub fn coset_progression_size(r: usize, d: usize) -> usize {
    d * (2 * r.div_ceil(d) - 1)
}

/// `min(r + s - 1, p)`; the prime-order special case of [`mu`].
pub fn cauchy_davenport(p: usize, r: usize, s: usize) -> Result<usize> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    check_cardinality("r", r, p)?;
    check_cardinality("s", s, p)?;
    Ok((r + s - 1).min(p))
}

/// `μ_G(r, s)`: the minimum of `|A + B|` over `|A| = r`, `|B| = s`.
/// Depends only on the order of `g`.
pub fn mu(g: &GroupSpec, r: usize, s: usize) -> Result<usize> {
    mu_for_order(g.order(), r, s)
}

pub fn mu_for_order(order: usize, r: usize, s: usize) -> Result<usize> {
    check_cardinality("r", r, order)?;
    check_cardinality("s", s, order)?;
    Ok(divisors(order)?
        .into_iter()
        .map(|d| d * (r.div_ceil(d) + s.div_ceil(d) - 1))
        .min()
        .expect("1 divides every order"))
}

/// `ρ⁺_G(r) = μ_G(r, r)`.
pub fn rho_plus(g: &GroupSpec, r: usize) -> Result<usize> {
    mu(g, r, r)
}

/// The predicted minimum of `|A - A|`: the minimum of `d(2⌈r/d⌉ - 1)` over
/// `d ∈ D(N, e, r)`. Always an upper bound; see [`rho_minus_status`] for
/// when it is known to be exact.
pub fn rho_minus_conjectured(g: &GroupSpec, r: usize) -> Result<usize> {
    check_cardinality("r", r, g.order())?;
    Ok(restricted_divisor_set(g.order(), g.exponent(), r)?
        .into_iter()
        .map(|d| coset_progression_size(r, d))
        .min()
        .expect("D(N, e, r) contains N"))
}

pub fn rho_minus_status(g: &GroupSpec) -> FormulaStatus {
    if g.is_cyclic() {
        FormulaStatus::TheoremCyclic
    } else if g.elementary_abelian().is_some() {
        FormulaStatus::TheoremVectorSpace
    } else {
        FormulaStatus::Conjectured
    }
}

pub fn rho_minus_evaluation(g: &GroupSpec, r: usize) -> Result<Evaluation> {
    Ok(Evaluation {
        value: rho_minus_conjectured(g, r)?,
        status: rho_minus_status(g),
    })
}

/// `min_{d | N} d(2⌈r/d⌉ - 1)`, the cyclic-group value.
pub fn rho_minus_cyclic(n: usize, r: usize) -> Result<usize> {
    check_cardinality("r", r, n)?;
    Ok(divisors(n)?
        .into_iter()
        .map(|d| coset_progression_size(r, d))
        .min()
        .expect("1 divides n"))
}

/// `ρ⁻` of `(Z/p)^d`: `p^t · min(2⌈r/p^t⌉ - 1, p)` where `p^t < r ≤ p^{t+1}`,
/// and 1 for `r = 1`.
pub fn rho_minus_vector_space(p: usize, d: u32, r: usize) -> Result<usize> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let order = p
        .checked_pow(d)
        .ok_or_else(|| Error::Domain(format!("{p}^{d} overflows")))?;
    check_cardinality("r", r, order)?;
    if r == 1 {
        return Ok(1);
    }
    let mut pt = 1;
    while pt * p < r {
        pt *= p;
    }
    Ok(pt * (2 * r.div_ceil(pt) - 1).min(p))
}

/// Splits `m = c·p + v` with `1 ≤ v ≤ p`.
pub fn split_signed_size(p: usize, m: usize) -> Result<(usize, usize)> {
    if m == 0 || p == 0 {
        return domain("m and p must be positive");
    }
    let c = (m - 1) / p;
    Ok((c, m - c * p))
}

/// Predicted minimum of `|2±A|` over `|A| = cp + v` in `(Z/p)²`.
///
/// Only two regimes have a prediction: `1 ≤ c ≤ (p-3)/2` with any
/// `1 ≤ v ≤ p` gives `(2c+1)p`, and `c = (p-1)/2` with `v ≤ (p-1)/2` gives
/// `p² - 1`. Anything else is refused.
pub fn rho_pm_predicted(p: usize, c: usize, v: usize) -> Result<usize> {
    if !is_prime(p) || p == 2 {
        return domain(format!("p = {p} must be an odd prime"));
    }
    if (1..=(p - 3) / 2).contains(&c) && (1..=p).contains(&v) {
        Ok((2 * c + 1) * p)
    } else if c == (p - 1) / 2 && (1..=(p - 1) / 2).contains(&v) {
        Ok(p * p - 1)
    } else {
        Err(Error::UnsupportedRegime(format!(
            "no prediction for p = {p}, c = {c}, v = {v}"
        )))
    }
}

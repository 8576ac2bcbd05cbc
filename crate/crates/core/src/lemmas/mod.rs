//! Executable checks of the sequence inequalities behind the `r ≤ p²` case
//! and of the hyperplane intersection lemma.
//!
//! Each checker distinguishes three outcomes: the statement holds, it
//! fails, or its hypotheses are not met. Sweeps report vacuous cases
//! separately so they never count as coverage.

mod hyperplane;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::is_prime;

pub use hyperplane::{
    check_hyperplane_lemma, sweep_hyperplane_exhaustive, sweep_hyperplane_random, HyperplaneCheck,
};

/// A weakly decreasing sequence of positive integers `λ₁ ≥ … ≥ λ_m > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPartitionSeq(Vec<usize>);

impl IntPartitionSeq {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("sequence must have at least one term".into()));
        }
        if values.contains(&0) {
            return Err(Error::Domain("sequence terms must be positive".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "{values:?} is not weakly decreasing"
            )));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl std::str::FromStr for IntPartitionSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad sequence term {t:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Self::new(values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum LemmaOutcome {
    Holds { slack: i64 },
    Fails { slack: i64 },
    HypothesisViolated { reason: String },
}

impl LemmaOutcome {
    fn from_slack(slack: i64) -> Self {
        if slack >= 0 {
            Self::Holds { slack }
        } else {
            Self::Fails { slack }
        }
    }

    fn violated(reason: impl Into<String>) -> Self {
        Self::HypothesisViolated {
            reason: reason.into(),
        }
    }
}

/// `μ_k = max_{i+j-1=k} (λᵢ + λⱼ - 1)` for `k = 1..2m-1`, maximised directly.
pub fn mu_from_lambda(lambda: &IntPartitionSeq) -> Vec<usize> {
    pairwise_max(lambda.values(), |a, b| a + b - 1)
}

/// Pointwise-smallest `μ` with `μ_{i+j-1} ≥ min{λᵢ + λⱼ - 1, p}`.
pub fn minimal_mu(p: usize, lambda: &IntPartitionSeq) -> Vec<usize> {
    pairwise_max(lambda.values(), |a, b| (a + b - 1).min(p))
}

fn pairwise_max(values: &[usize], f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let m = values.len();
    let mut out = vec![0; 2 * m - 1];
    for (i, &a) in values.iter().enumerate() {
        for (j, &b) in values.iter().enumerate() {
            out[i + j] = out[i + j].max(f(a, b));
        }
    }
    out
}

/// `Σμ ≥ 3Σλ - 3` for `m > 1`, `λ₁ > 1`.
pub fn check_lemma_a1(lambda: &IntPartitionSeq) -> LemmaOutcome {
    if lambda.len() < 2 {
        return LemmaOutcome::violated("needs m > 1");
    }
    if lambda.values()[0] < 2 {
        return LemmaOutcome::violated("needs λ₁ > 1");
    }
    let total: usize = mu_from_lambda(lambda).iter().sum();
    LemmaOutcome::from_slack(total as i64 - (3 * lambda.sum() as i64 - 3))
}

/// `Σμ ≥ (2n+1)p` for every `μ` with `μ_{i+j-1} ≥ min{λᵢ + λⱼ - 1, p}`.
///
/// Without an explicit `mu` the minimal feasible sequence from
/// [`minimal_mu`] is checked, which covers all feasible ones. A supplied
/// `mu` that violates the pairwise constraint is a hypothesis violation.
pub fn check_lemma_a2(
    p: usize,
    n: usize,
    lambda: &IntPartitionSeq,
    mu: Option<&[usize]>,
) -> LemmaOutcome {
    let m = lambda.len();
    if !is_prime(p) {
        return LemmaOutcome::violated(format!("{p} is not prime"));
    }
    if n < 1 {
        return LemmaOutcome::violated("needs n ≥ 1");
    }
    if m < n + 2 || 2 * m + 1 > p {
        return LemmaOutcome::violated(format!("needs n + 2 ≤ m ≤ (p - 1)/2, got m = {m}"));
    }
    if lambda.values()[0] > p {
        return LemmaOutcome::violated("needs p ≥ λ₁");
    }
    if lambda.sum() < n * p + 1 {
        return LemmaOutcome::violated(format!("needs Σλ ≥ np + 1 = {}", n * p + 1));
    }
    let minimal = minimal_mu(p, lambda);
    let mu = match mu {
        None => minimal,
        Some(given) => {
            if given.len() != 2 * m - 1 {
                return LemmaOutcome::violated(format!("μ must have {} terms", 2 * m - 1));
            }
            if given.iter().zip(&minimal).any(|(g, lo)| g < lo) {
                return LemmaOutcome::violated("μ violates μ_{i+j-1} ≥ min{λᵢ + λⱼ - 1, p}");
            }
            given.to_vec()
        }
    };
    let total: usize = mu.iter().sum();
    LemmaOutcome::from_slack(total as i64 - ((2 * n + 1) * p) as i64)
}

/// Ferrers diagram `{(x, y) : 0 ≤ y < len, 0 ≤ x < values[y]}`.
pub fn ferrers_diagram(values: &[usize]) -> BTreeSet<(usize, usize)> {
    values
        .iter()
        .enumerate()
        .flat_map(|(y, &row)| (0..row).map(move |x| (x, y)))
        .collect()
}

/// Whether `F(λ) + F(λ) ⊆ F(μ)` for `μ = mu_from_lambda(λ)`.
pub fn ferrers_containment(lambda: &IntPartitionSeq) -> bool {
    let f = ferrers_diagram(lambda.values());
    let target = ferrers_diagram(&mu_from_lambda(lambda));
    f.iter()
        .all(|&(x, y)| f.iter().all(|&(u, v)| target.contains(&(x + u, y + v))))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub checked: usize,
    pub passed: usize,
    pub vacuous: usize,
    pub failed: usize,
}

impl SweepSummary {
    fn tally(&mut self, outcome: &LemmaOutcome) {
        self.checked += 1;
        match outcome {
            LemmaOutcome::Holds { .. } => self.passed += 1,
            LemmaOutcome::Fails { .. } => self.failed += 1,
            LemmaOutcome::HypothesisViolated { .. } => self.vacuous += 1,
        }
    }

    pub fn clean(&self) -> bool {
        self.failed == 0
    }
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "checked={} passed={} vacuous={} failed={}",
            self.checked, self.passed, self.vacuous, self.failed
        )
    }
}

/// Weakly decreasing sequences of length `len` with terms in `1..=max_part`.
pub fn decreasing_sequences(len: usize, max_part: usize) -> Vec<IntPartitionSeq> {
    fn go(len: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntPartitionSeq>) {
        if prefix.len() == len {
            out.push(IntPartitionSeq(prefix.clone()));
            return;
        }
        for v in (1..=max).rev() {
            prefix.push(v);
            go(len, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 {
        go(len, max_part, &mut Vec::new(), &mut out);
    }
    out
}

/// Every `λ` with `1 ≤ m ≤ max_len`, `λ₁ ≤ max_part`. A sequence fails if
/// the inequality fails or the Ferrers containment does.
pub fn sweep_lemma_a1(max_len: usize, max_part: usize) -> SweepSummary {
    let mut summary = SweepSummary::default();
    for len in 1..=max_len {
        for lambda in decreasing_sequences(len, max_part) {
            let mut outcome = check_lemma_a1(&lambda);
            if !ferrers_containment(&lambda) {
                outcome = LemmaOutcome::Fails { slack: i64::MIN };
            }
            summary.tally(&outcome);
        }
    }
    summary
}

/// Every admissible `(n, m, λ)` for prime `p` with `λ₁ ≤ p` and
/// `Σλ ≤ np + p`, in minimal-`μ` mode. Sequences with `Σλ ≤ np` are counted
/// as vacuous.
pub fn sweep_lemma_a2(p: usize) -> Result<SweepSummary> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let mut summary = SweepSummary::default();
    let max_m = (p - 1) / 2;
    for n in 1.. {
        if n + 2 > max_m {
            break;
        }
        for m in n + 2..=max_m {
            for lambda in decreasing_sequences(m, p) {
                if lambda.sum() > n * p + p {
                    continue;
                }
                summary.tally(&check_lemma_a2(p, n, &lambda, None));
            }
        }
    }
    Ok(summary)
}

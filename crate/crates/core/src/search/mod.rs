//! Exact minima of `|A - A|`, `|A + A|` and `|2±A|` over `r`-subsets.
//!
//! Two modes share one normalised search space:
//!
//! * exhaustive: every candidate set is evaluated from scratch. This is
//!   the correctness oracle for the pruned mode.
//! * branch-and-bound: sets are grown in increasing index order with an
//!   incrementally maintained objective mask, and a partial set is dropped
//!   as soon as `max(|partial objective|, μ_G(r,r))` reaches the incumbent.
//!
//! Normalisation. `|A - A|` and `|A + A|` are translation invariant, so the
//! identity is forced into `A`. `2±A` is not translation invariant and is
//! never normalised this way. For `(Z/p)^d` the automorphism group acts
//! transitively on nonzero elements, so any set with a nonzero member can
//! be moved to one containing index 1; this is the optional automorphism
//! pruning.

mod engine;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use engine::MAX_SEARCH_ORDER;
pub use verify::{
    check_signed_lower_bound, prediction, verify_conjecture, ConjectureReport, SearchRecord,
    SignedBoundCheck, VerifyOptions,
};

use crate::error::{domain, Error, Result};
use crate::formulas::mu;
use crate::group::GroupSpec;
use crate::subset::{GroupSubset, Objective};
use engine::{Plan, Tables};

pub const DEFAULT_NODE_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    #[default]
    BranchAndBound,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::BranchAndBound => "branch-and-bound",
        })
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "bnb" | "branch-and-bound" => Ok(SearchMode::BranchAndBound),
            other => Err(Error::Parse(format!("unknown search mode {other:?}"))),
        }
    }
}

/// Whether to force index 1 into the set for elementary abelian groups.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AutomorphismPruning {
    Off,
    /// Required; fails for groups that are not elementary abelian.
    On,
    /// On for `(Z/p)^d` with `d ≥ 2`, off otherwise.
    #[default]
    Auto,
}

impl FromStr for AutomorphismPruning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(Self::Off),
            "on" => Ok(Self::On),
            "auto" => Ok(Self::Auto),
            other => Err(Error::Parse(format!(
                "unknown automorphism setting {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub workers: usize,
    /// Jobs whose candidate count exceeds this are refused. `None` disables
    /// the guard.
    pub node_budget: Option<u128>,
    pub automorphisms: AutomorphismPruning,
    /// Force the identity into the set for translation-invariant objectives.
    pub translation_normalization: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            mode: SearchMode::default(),
            workers: 1,
            node_budget: Some(DEFAULT_NODE_BUDGET),
            automorphisms: AutomorphismPruning::default(),
            translation_normalization: true,
        }
    }
}

impl SearchOptions {
    pub fn exhaustive() -> Self {
        Self {
            mode: SearchMode::Exhaustive,
            ..Self::default()
        }
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_automorphisms(mut self, automorphisms: AutomorphismPruning) -> Self {
        self.automorphisms = automorphisms;
        self
    }

    pub fn with_node_budget(mut self, budget: Option<u128>) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn without_normalization(mut self) -> Self {
        self.translation_normalization = false;
        self.automorphisms = AutomorphismPruning::Off;
        self
    }
}

/// Exact minimum with a witness set attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCertificate {
    pub group: GroupSpec,
    pub r: usize,
    pub objective: Objective,
    pub minimum: usize,
    pub witness: GroupSubset,
    pub nodes_explored: u64,
    pub mode: SearchMode,
    /// A priori lower bound used for pruning and early exit.
    pub lower_bound: usize,
    pub elapsed: Duration,
}

fn check_search_input(g: &GroupSpec, r: usize) -> Result<()> {
    let n = g.order();
    if n > MAX_SEARCH_ORDER {
        return domain(format!(
            "group order {n} exceeds the search limit of {MAX_SEARCH_ORDER}"
        ));
    }
    if r == 0 || r > n {
        return domain(format!("infeasible cardinality {r} for group of order {n}"));
    }
    Ok(())
}

fn plan(g: &GroupSpec, r: usize, objective: Objective, opts: &SearchOptions) -> Result<Plan> {
    let n = g.order();
    let automorphisms = match opts.automorphisms {
        AutomorphismPruning::Off => false,
        AutomorphismPruning::Auto => g.elementary_abelian().is_some_and(|(_, d)| d >= 2),
        AutomorphismPruning::On => {
            if g.elementary_abelian().is_none() {
                return domain(format!(
                    "automorphism pruning needs an elementary abelian group, got [{g}]"
                ));
            }
            true
        }
    };
    let translate = opts.translation_normalization && objective != Objective::Signed2;

    let (forced, pool): (Vec<usize>, Vec<usize>) = match (translate, automorphisms) {
        (true, true) if r >= 2 => (vec![0, 1], (2..n).collect()),
        (true, _) => (vec![0], (1..n).collect()),
        (false, true) if r >= 2 => (vec![1], (0..n).filter(|&i| i != 1).collect()),
        // a single element is either 0 or equivalent to index 1
        (false, true) => (Vec::new(), vec![0, 1]),
        (false, false) => (Vec::new(), (0..n).collect()),
    };
    let need = r - forced.len();
    Ok(Plan { forced, pool, need })
}

/// Number of candidate sets the search would visit without pruning.
pub fn estimate_nodes(
    g: &GroupSpec,
    r: usize,
    objective: Objective,
    opts: &SearchOptions,
) -> Result<u128> {
    check_search_input(g, r)?;
    Ok(plan(g, r, objective, opts)?.leaf_count())
}

fn a_priori_lower_bound(g: &GroupSpec, r: usize, objective: Objective) -> Result<usize> {
    let m = mu(g, r, r)?;
    Ok(match objective {
        Objective::Diff | Objective::Sum => m,
        // (A - A) \ {0} ⊆ 2±A
        Objective::Signed2 => m.saturating_sub(1).max(1),
    })
}

/// `min |objective(A)|` over all `A ⊆ g` with `|A| = r`.
pub fn exact_rho(
    g: &GroupSpec,
    r: usize,
    objective: Objective,
    opts: &SearchOptions,
) -> Result<SearchCertificate> {
    check_search_input(g, r)?;
    let start = Instant::now();
    let plan = plan(g, r, objective, opts)?;
    if let Some(budget) = opts.node_budget {
        let estimate = plan.leaf_count();
        if estimate > budget {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
    }
    let lower_bound = a_priori_lower_bound(g, r, objective)?;
    let tables = Tables::new(g);
    let prune = opts.mode == SearchMode::BranchAndBound;
    let outcome = engine::run(
        &tables,
        &plan,
        objective,
        lower_bound,
        prune,
        opts.workers.max(1),
    );

    let witness = GroupSubset::from_indices(g, outcome.members)?;
    debug_assert_eq!(witness.len(), r);
    debug_assert_eq!(objective.measure(&witness)?, outcome.minimum);
    Ok(SearchCertificate {
        group: g.clone(),
        r,
        objective,
        minimum: outcome.minimum,
        witness,
        nodes_explored: outcome.nodes,
        mode: opts.mode,
        lower_bound,
        elapsed: start.elapsed(),
    })
}

/// `ρ±(G, m, 2)`: the minimum of `|2±A|` over `|A| = m`.
pub fn exact_rho_pm2(g: &GroupSpec, m: usize, opts: &SearchOptions) -> Result<SearchCertificate> {
    exact_rho(g, m, Objective::Signed2, opts)
}

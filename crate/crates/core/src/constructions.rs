//! Explicit sets whose difference sets meet the upper bounds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::formulas::{coset_progression_size, rho_minus_vector_space};
use crate::group::{
    divisors, invariant_factor_isomorphism, restricted_divisor_set, subgroup_of_order, GroupSpec,
};
use crate::subset::{GroupSubset, Objective};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    CosetProgression,
    Product,
    LexPrefix,
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionKind::CosetProgression => "coset-progression",
            ConstructionKind::Product => "product",
            ConstructionKind::LexPrefix => "lex-prefix",
        })
    }
}

/// A constructed set, its measured objective, and the bound it was built to
/// meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub set: GroupSubset,
    pub objective: Objective,
    pub achieved_size: usize,
    pub target_bound: usize,
    pub construction: ConstructionKind,
}

impl WitnessReport {
    fn measure(
        set: GroupSubset,
        target_bound: usize,
        construction: ConstructionKind,
    ) -> Result<Self> {
        let achieved_size = Objective::Diff.measure(&set)?;
        debug_assert!(
            achieved_size <= target_bound,
            "{construction} missed its bound"
        );
        Ok(Self {
            set,
            objective: Objective::Diff,
            achieved_size,
            target_bound,
            construction,
        })
    }

    pub fn meets_bound(&self) -> bool {
        self.achieved_size <= self.target_bound
    }
}

fn check_r(r: usize, order: usize) -> Result<()> {
    if r == 0 || r > order {
        return domain(format!("r = {r} outside 1..={order}"));
    }
    Ok(())
}

/// `⋃_{i < ⌈r/d⌉} (H + i)` in `Z/n`, with `H` the subgroup of order `d`.
pub fn coset_progression(n: usize, r: usize, d: usize) -> Result<WitnessReport> {
    let group = GroupSpec::cyclic(n)?;
    check_r(r, n)?;
    if d == 0 || !n.is_multiple_of(d) {
        return domain(format!("{d} does not divide {n}"));
    }
    let cosets = r.div_ceil(d);
    let step = n / d;
    let indices = (0..cosets).flat_map(|i| (0..d).map(move |k| k * step + i));
    let set = GroupSubset::from_indices(&group, indices)?;
    WitnessReport::measure(
        set,
        coset_progression_size(r, d),
        ConstructionKind::CosetProgression,
    )
}

/// `A₁ × A₂ ⊆ H × Z/e ≅ g`: a subgroup of order `d1` in `H` times a coset
/// progression of `⌈r/d1⌉` elements in `Z/e` built with divisor `d2`.
pub fn product_construction(
    g: &GroupSpec,
    r: usize,
    d1: usize,
    d2: usize,
) -> Result<WitnessReport> {
    let order = g.order();
    let e = g.exponent();
    check_r(r, order)?;
    if d1 == 0 || !(order / e).is_multiple_of(d1) {
        return domain(format!("d1 = {d1} does not divide N/e = {}", order / e));
    }
    if d2 == 0 || !e.is_multiple_of(d2) {
        return domain(format!("d2 = {d2} does not divide e = {e}"));
    }
    if d1 * e < r {
        return domain(format!("d1·e = {} is below r = {r}", d1 * e));
    }

    let iso = invariant_factor_isomorphism(g);
    let split = iso.domain().factors();
    let (head, _) = split.split_at(split.len().saturating_sub(1));
    let h = GroupSpec::new(head.to_vec())?;
    let first = subgroup_of_order(&h, d1)?;
    let second = coset_progression(e, r.div_ceil(d1), d2)?.set;
    let indices: Vec<usize> = first
        .indices()
        .flat_map(|a| second.indices().map(move |b| a * e + b))
        .collect();
    let inner = GroupSubset::from_indices(iso.domain(), indices)?;
    let set = iso.apply_subset(&inner)?;
    WitnessReport::measure(
        set,
        coset_progression_size(r, d1 * d2),
        ConstructionKind::Product,
    )
}

/// The product construction for the `d ∈ D(N, e, r)` with the smallest
/// bound. Ties go to the smallest `d1`.
pub fn best_construction(g: &GroupSpec, r: usize) -> Result<WitnessReport> {
    let e = g.exponent();
    check_r(r, g.order())?;
    // D(N, e, r) only fixes the products, so pick the factorisation here
    let allowed = restricted_divisor_set(g.order(), e, r)?;
    let mut best: Option<(usize, usize, usize)> = None;
    for d1 in divisors(g.order() / e)?
        .into_iter()
        .filter(|&d1| d1 * e >= r)
    {
        for d2 in divisors(e)? {
            debug_assert!(allowed.contains(&(d1 * d2)));
            let bound = coset_progression_size(r, d1 * d2);
            if best.is_none_or(|(b, _, _)| bound < b) {
                best = Some((bound, d1, d2));
            }
        }
    }
    let (_, d1, d2) = best.expect("d1 = N/e always qualifies");
    product_construction(g, r, d1, d2)
}

/// The first `r` elements of `(Z/p)^d` in lexicographic order.
pub fn lex_prefix(p: usize, d: usize, r: usize) -> Result<WitnessReport> {
    let group = GroupSpec::elementary(p, d)?;
    check_r(r, group.order())?;
    let set = GroupSubset::from_indices(&group, 0..r)?;
    let bound = rho_minus_vector_space(p, d as u32, r)?;
    WitnessReport::measure(set, bound, ConstructionKind::LexPrefix)
}

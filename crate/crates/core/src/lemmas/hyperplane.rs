use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::SweepSummary;
use crate::error::{domain, Error, Result};
use crate::group::GroupSpec;
use crate::subset::GroupSubset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneCheck {
    pub hyperplanes: usize,
    pub min_intersection: usize,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub implication_ok: bool,
}

/// Functionals `c ∈ F_p^d \ {0}` whose first nonzero coordinate is 1, one
/// per vector hyperplane `{x : c·x = 0}`.
fn normalized_functionals(p: usize, d: usize) -> Vec<Vec<usize>> {
    let space = GroupSpec::new(vec![p; d]).expect("p ≥ 2");
    space
        .elements()
        .map(|c| c.into_coords())
        .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

struct Hyperplanes {
    p: usize,
    d: usize,
    functionals: Vec<Vec<usize>>,
    points: Vec<Vec<usize>>,
}

impl Hyperplanes {
    fn new(p: usize, d: usize) -> Result<Self> {
        if d < 3 {
            return domain(format!("hyperplane lemma needs dimension d ≥ 3, got {d}"));
        }
        let space = GroupSpec::elementary(p, d)?;
        Ok(Self {
            p,
            d,
            functionals: normalized_functionals(p, d),
            points: space.elements().map(|x| x.into_coords()).collect(),
        })
    }

    fn check(&self, m: i64, s: &GroupSubset) -> Result<HyperplaneCheck> {
        let expected = GroupSpec::new(vec![self.p; self.d])?;
        if s.group() != &expected {
            return Err(Error::GroupMismatch {
                left: s.group().to_string(),
                right: expected.to_string(),
            });
        }
        let members: Vec<&Vec<usize>> = s.indices().map(|i| &self.points[i]).collect();
        let min_intersection = self
            .functionals
            .iter()
            .map(|c| {
                members
                    .iter()
                    .filter(|x| {
                        c.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<usize>() % self.p == 0
                    })
                    .count()
            })
            .min()
            .unwrap_or(0);
        let unit = (self.p as i64).pow(self.d as u32 - 2);
        let hypothesis_holds = min_intersection as i64 >= m * unit;
        let conclusion_holds = members.len() as i64 >= m * unit * self.p as i64;
        Ok(HyperplaneCheck {
            hyperplanes: self.functionals.len(),
            min_intersection,
            hypothesis_holds,
            conclusion_holds,
            implication_ok: !hypothesis_holds || conclusion_holds,
        })
    }
}

/// If `|S ∩ H| ≥ m·p^{d-2}` for every vector hyperplane `H` of `F_p^d`,
/// then `|S| ≥ m·p^{d-1}`. Evaluates both sides for one `S`.
pub fn check_hyperplane_lemma(
    p: usize,
    d: usize,
    m: i64,
    s: &GroupSubset,
) -> Result<HyperplaneCheck> {
    Hyperplanes::new(p, d)?.check(m, s)
}

fn tally(summary: &mut SweepSummary, check: &HyperplaneCheck) {
    summary.checked += 1;
    if !check.hypothesis_holds {
        summary.vacuous += 1;
    } else if check.conclusion_holds {
        summary.passed += 1;
    } else {
        summary.failed += 1;
    }
}

/// Every subset of `F_p^d`; only feasible for `p^d ≤ 20` or so.
pub fn sweep_hyperplane_exhaustive(p: usize, d: usize, m: i64) -> Result<SweepSummary> {
    let planes = Hyperplanes::new(p, d)?;
    let n = planes.points.len();
    if n > 24 {
        return domain(format!("2^{n} subsets is too many for an exhaustive sweep"));
    }
    let group = GroupSpec::elementary(p, d)?;
    let mut summary = SweepSummary::default();
    for mask in 0u64..1 << n {
        let s = GroupSubset::from_indices(&group, (0..n).filter(|i| mask >> i & 1 == 1))?;
        tally(&mut summary, &planes.check(m, &s)?);
    }
    Ok(summary)
}

/// `samples` random subsets: a size uniform in `0..=p^d`, then a uniform
/// subset of that size.
pub fn sweep_hyperplane_random(
    p: usize,
    d: usize,
    m: i64,
    samples: usize,
    seed: u64,
) -> Result<SweepSummary> {
    let planes = Hyperplanes::new(p, d)?;
    let n = planes.points.len();
    let group = GroupSpec::elementary(p, d)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut summary = SweepSummary::default();
    for _ in 0..samples {
        let k = rng.gen_range(0..=n);
        let s = GroupSubset::from_indices(&group, sample(&mut rng, n, k))?;
        tally(&mut summary, &planes.check(m, &s)?);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup_of_order;

    #[test]
    fn hyperplane_counts() {
        assert_eq!(normalized_functionals(2, 3).len(), 7);
        assert_eq!(normalized_functionals(3, 3).len(), 13);
        assert_eq!(normalized_functionals(5, 4).len(), 156);
    }

    #[test]
    fn hyperplane_itself_satisfies_lemma() {
        let g = GroupSpec::elementary(2, 3).unwrap();
        let plane = subgroup_of_order(&g, 4).unwrap();
        let check = check_hyperplane_lemma(2, 3, 1, &plane).unwrap();
        assert_eq!(check.min_intersection, 2);
        assert!(check.hypothesis_holds && check.conclusion_holds && check.implication_ok);
    }

    #[test]
    fn empty_set_with_zero_threshold() {
        let g = GroupSpec::elementary(2, 3).unwrap();
        let check = check_hyperplane_lemma(2, 3, 0, &GroupSubset::empty(&g)).unwrap();
        assert!(check.hypothesis_holds && check.conclusion_holds);
    }

    #[test]
    fn rejects_low_dimension_and_wrong_group() {
        let g = GroupSpec::elementary(3, 2).unwrap();
        assert!(check_hyperplane_lemma(3, 2, 1, &GroupSubset::empty(&g)).is_err());
        assert!(check_hyperplane_lemma(2, 3, 1, &GroupSubset::empty(&g)).is_err());
    }

    #[test]
    fn random_sweep_is_reproducible() {
        let a = sweep_hyperplane_random(3, 3, 1, 200, 7).unwrap();
        let b = sweep_hyperplane_random(3, 3, 1, 200, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.checked, 200);
        assert!(a.vacuous > 0 && a.passed > 0 && a.clean(), "{a}");
    }
}

use serde::{Deserialize, Serialize};

use super::{exact_rho, SearchCertificate, SearchMode, SearchOptions};
use crate::error::{domain, Error, Result};
use crate::formulas::{rho_minus_conjectured, rho_plus, rho_pm_predicted, split_signed_size};
use crate::group::{enumerate_abelian_groups, Element, GroupSpec};
use crate::subset::Objective;

/// One line of a search report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub group: String,
    pub r: usize,
    pub objective: Objective,
    pub minimum: usize,
    pub conjectured: Option<usize>,
    pub equal: Option<bool>,
    pub witness: Vec<Vec<usize>>,
    pub nodes: u64,
    pub millis: u64,
}

impl SearchRecord {
    pub fn new(cert: &SearchCertificate, conjectured: Option<usize>) -> Self {
        Self {
            group: cert.group.to_string(),
            r: cert.r,
            objective: cert.objective,
            minimum: cert.minimum,
            conjectured,
            equal: conjectured.map(|c| c == cert.minimum),
            witness: cert
                .witness
                .elements()
                .into_iter()
                .map(Element::into_coords)
                .collect(),
            nodes: cert.nodes_explored,
            millis: cert.elapsed.as_millis() as u64,
        }
    }

    fn sort_key(&self) -> (usize, Vec<usize>, usize) {
        let group: GroupSpec = self.group.parse().unwrap_or_default();
        (group.order(), group.factors().to_vec(), self.r)
    }
}

/// The closed-form value the search result is compared against, if any:
/// the predicted `ρ⁻` for differences, `μ(r,r)` for sums, and the
/// `(Z/p)²` signed-sumset prediction where one exists.
pub fn prediction(g: &GroupSpec, r: usize, objective: Objective) -> Option<usize> {
    match objective {
        Objective::Diff => rho_minus_conjectured(g, r).ok(),
        Objective::Sum => rho_plus(g, r).ok(),
        Objective::Signed2 => {
            let (p, d) = g.elementary_abelian()?;
            if d != 2 {
                return None;
            }
            let (c, v) = split_signed_size(p, r).ok()?;
            rho_pm_predicted(p, c, v).ok()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub search: SearchOptions,
    /// Groups up to this order are also searched exhaustively and the two
    /// minima must agree.
    pub cross_check_max_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            search: SearchOptions::default(),
            cross_check_max_order: 10,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjectureReport {
    /// Sorted by group order, factor list, then `r`.
    pub records: Vec<SearchRecord>,
    pub counterexamples: Vec<SearchRecord>,
    pub groups_checked: usize,
    pub cross_checked: usize,
}

impl ConjectureReport {
    pub fn all_equal(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Compares the exact minimum of `|A - A|` with the predicted value for
/// every abelian group of order at most `max_order` and every `r`.
/// `on_record` sees each record as soon as it is computed.
pub fn verify_conjecture(
    max_order: usize,
    opts: &VerifyOptions,
    mut on_record: impl FnMut(&SearchRecord),
) -> Result<ConjectureReport> {
    if max_order == 0 {
        return domain("max order must be at least 1");
    }
    let oracle = SearchOptions {
        mode: SearchMode::Exhaustive,
        ..opts.search.clone()
    };
    let mut report = ConjectureReport::default();
    for n in 1..=max_order {
        for g in enumerate_abelian_groups(n) {
            report.groups_checked += 1;
            for r in 1..=n {
                let cert = exact_rho(&g, r, Objective::Diff, &opts.search)?;
                if n <= opts.cross_check_max_order && opts.search.mode != SearchMode::Exhaustive {
                    let check = exact_rho(&g, r, Objective::Diff, &oracle)?;
                    if check.minimum != cert.minimum {
                        return Err(Error::OracleDisagreement {
                            group: g.to_string(),
                            r,
                            exhaustive: check.minimum,
                            pruned: cert.minimum,
                        });
                    }
                    report.cross_checked += 1;
                }
                let record = SearchRecord::new(&cert, Some(rho_minus_conjectured(&g, r)?));
                on_record(&record);
                if record.equal == Some(false) {
                    report.counterexamples.push(record.clone());
                }
                report.records.push(record);
            }
        }
    }
    report.records.sort_by_key(SearchRecord::sort_key);
    Ok(report)
}

/// Exact check of `ρ±(G, m, 2) ≥ min{ρ⁻(m), ρ⁻(2m) - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedBoundCheck {
    pub group: String,
    pub m: usize,
    pub rho_pm: usize,
    pub rho_minus_m: usize,
    pub rho_minus_2m: usize,
    pub bound: usize,
    pub holds: bool,
}

pub fn check_signed_lower_bound(
    g: &GroupSpec,
    m: usize,
    opts: &SearchOptions,
) -> Result<SignedBoundCheck> {
    if m == 0 || 2 * m > g.order() {
        return domain(format!(
            "need 1 ≤ m ≤ N/2, got m = {m} with N = {}",
            g.order()
        ));
    }
    let rho_pm = exact_rho(g, m, Objective::Signed2, opts)?.minimum;
    let rho_minus_m = exact_rho(g, m, Objective::Diff, opts)?.minimum;
    let rho_minus_2m = exact_rho(g, 2 * m, Objective::Diff, opts)?.minimum;
    let bound = rho_minus_m.min(rho_minus_2m - 1);
    Ok(SignedBoundCheck {
        group: g.to_string(),
        m,
        rho_pm,
        rho_minus_m,
        rho_minus_2m,
        bound,
        holds: rho_pm >= bound,
    })
}

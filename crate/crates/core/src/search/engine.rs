use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::thread;

use crate::group::GroupSpec;
use crate::subset::Objective;

pub(crate) type Mask = u128;

/// Largest group order the search handles; one bit per element in a [`Mask`].
pub const MAX_SEARCH_ORDER: usize = Mask::BITS as usize;

#[inline]
fn bit(i: usize) -> Mask {
    1 << i
}

#[inline]
fn size(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Cayley tables by linear index.
pub(crate) struct Tables {
    n: usize,
    add: Vec<u8>,
    sub: Vec<u8>,
    neg: Vec<u8>,
}

impl Tables {
    pub(crate) fn new(g: &GroupSpec) -> Self {
        let n = g.order();
        debug_assert!(n <= MAX_SEARCH_ORDER);
        let neg: Vec<u8> = (0..n).map(|i| g.neg_index(i) as u8).collect();
        let mut add = vec![0u8; n * n];
        let mut sub = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = g.add_indices(i, j) as u8;
                sub[i * n + j] = g.add_indices(i, neg[j] as usize) as u8;
            }
        }
        Self { n, add, sub, neg }
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    fn sub(&self, a: usize, b: usize) -> usize {
        self.sub[a * self.n + b] as usize
    }

    #[inline]
    fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Objective mask of `members ∪ {x}` given the mask of `members`.
    #[inline]
    fn extend(&self, objective: Objective, mask: Mask, members: &[usize], x: usize) -> Mask {
        let mut m = mask;
        match objective {
            Objective::Diff => {
                m |= bit(0);
                for &p in members {
                    m |= bit(self.sub(x, p)) | bit(self.sub(p, x));
                }
            }
            Objective::Sum => {
                m |= bit(self.add(x, x));
                for &p in members {
                    m |= bit(self.add(x, p));
                }
            }
            Objective::Signed2 => {
                let double = self.add(x, x);
                m |= bit(double) | bit(self.neg(double));
                for &p in members {
                    let s = self.add(x, p);
                    let d = self.sub(x, p);
                    m |= bit(s) | bit(self.neg(s)) | bit(d) | bit(self.neg(d));
                }
            }
        }
        m
    }

    fn mask_of(&self, objective: Objective, members: &[usize]) -> Mask {
        (0..members.len()).fold(0, |m, k| {
            self.extend(objective, m, &members[..k], members[k])
        })
    }

    /// Objective of a complete set straight from the definition, sharing no
    /// code with [`Tables::extend`].
    fn evaluate(&self, objective: Objective, members: &[usize]) -> usize {
        let mut m: Mask = 0;
        match objective {
            Objective::Diff => {
                for &a in members {
                    for &b in members {
                        m |= bit(self.sub(a, b));
                    }
                }
            }
            Objective::Sum => {
                for &a in members {
                    for &b in members {
                        m |= bit(self.add(a, b));
                    }
                }
            }
            Objective::Signed2 => {
                for &a in members {
                    let double = self.add(a, a);
                    m |= bit(double) | bit(self.neg(double));
                    for &b in members.iter().filter(|&&b| b != a) {
                        let s = self.add(a, b);
                        m |= bit(s) | bit(self.neg(s)) | bit(self.sub(a, b));
                    }
                }
            }
        }
        size(m)
    }
}

/// The normalised search space: every candidate set is `forced` plus
/// `need` elements of `pool` chosen in increasing position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Plan {
    pub forced: Vec<usize>,
    pub pool: Vec<usize>,
    pub need: usize,
}

impl Plan {
    pub(crate) fn leaf_count(&self) -> u128 {
        binomial(self.pool.len(), self.need)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

pub(crate) struct Outcome {
    pub minimum: usize,
    pub members: Vec<usize>,
    pub nodes: u64,
}

struct Shared<'a> {
    tables: &'a Tables,
    plan: &'a Plan,
    objective: Objective,
    lower_bound: usize,
    best: AtomicUsize,
    nodes: AtomicU64,
    next_job: AtomicUsize,
}

impl Shared<'_> {
    fn optimal_found(&self) -> bool {
        self.best.load(Ordering::Relaxed) <= self.lower_bound
    }
}

struct Worker<'a, 'b> {
    shared: &'b Shared<'a>,
    members: Vec<usize>,
    nodes: u64,
    best: Option<(usize, Vec<usize>)>,
}

impl Worker<'_, '_> {
    fn record(&mut self, value: usize) {
        let previous = self.shared.best.fetch_min(value, Ordering::Relaxed);
        if value < previous && self.best.as_ref().is_none_or(|(b, _)| value < *b) {
            self.best = Some((value, self.members.clone()));
        }
    }

    fn branch_and_bound(&mut self, next: usize, mask: Mask) {
        let Shared {
            tables,
            plan,
            objective,
            lower_bound,
            ..
        } = *self.shared;
        let need = self.shared_need();
        if need == 0 {
            self.record(size(mask));
            return;
        }
        for pos in next..=plan.pool.len() - need {
            if self.shared.optimal_found() {
                return;
            }
            let x = plan.pool[pos];
            let extended = tables.extend(objective, mask, &self.members, x);
            self.nodes += 1;
            // objectives only grow when elements are added
            if size(extended).max(lower_bound) >= self.shared.best.load(Ordering::Relaxed) {
                continue;
            }
            self.members.push(x);
            self.branch_and_bound(pos + 1, extended);
            self.members.pop();
        }
    }

    fn exhaustive(&mut self, next: usize) {
        let Shared {
            tables,
            plan,
            objective,
            ..
        } = *self.shared;
        let need = self.shared_need();
        if need == 0 {
            self.nodes += 1;
            let value = tables.evaluate(objective, &self.members);
            if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
                self.best = Some((value, self.members.clone()));
            }
            self.shared.best.fetch_min(value, Ordering::Relaxed);
            return;
        }
        for pos in next..=plan.pool.len() - need {
            self.members.push(plan.pool[pos]);
            self.exhaustive(pos + 1);
            self.members.pop();
        }
    }

    fn shared_need(&self) -> usize {
        let plan = self.shared.plan;
        plan.forced.len() + plan.need - self.members.len()
    }
}

/// Runs the search over `plan`. Subtrees are split on the first element
/// taken from the pool and handed out to `workers` threads in order.
pub(crate) fn run(
    tables: &Tables,
    plan: &Plan,
    objective: Objective,
    lower_bound: usize,
    prune: bool,
    workers: usize,
) -> Outcome {
    let shared = Shared {
        tables,
        plan,
        objective,
        lower_bound,
        best: AtomicUsize::new(usize::MAX),
        nodes: AtomicU64::new(0),
        next_job: AtomicUsize::new(0),
    };
    let base_mask = tables.mask_of(objective, &plan.forced);
    let jobs = if plan.need == 0 {
        1
    } else {
        plan.pool.len() + 1 - plan.need
    };

    let work = |shared: &Shared| {
        let mut worker = Worker {
            shared,
            members: plan.forced.clone(),
            nodes: 0,
            best: None,
        };
        loop {
            let job = shared.next_job.fetch_add(1, Ordering::Relaxed);
            if job >= jobs {
                break;
            }
            if plan.need == 0 {
                if prune {
                    worker.branch_and_bound(0, base_mask);
                } else {
                    worker.exhaustive(0);
                }
                continue;
            }
            let x = plan.pool[job];
            if prune {
                if shared.optimal_found() {
                    break;
                }
                let extended = tables.extend(objective, base_mask, &worker.members, x);
                worker.nodes += 1;
                if size(extended).max(lower_bound) >= shared.best.load(Ordering::Relaxed) {
                    continue;
                }
                worker.members.push(x);
                worker.branch_and_bound(job + 1, extended);
            } else {
                worker.members.push(x);
                worker.exhaustive(job + 1);
            }
            worker.members.pop();
        }
        shared.nodes.fetch_add(worker.nodes, Ordering::Relaxed);
        worker.best
    };

    let results: Vec<Option<(usize, Vec<usize>)>> = if workers <= 1 {
        vec![work(&shared)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers.min(jobs))
                .map(|_| s.spawn(|| work(&shared)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let (minimum, mut members) = results
        .into_iter()
        .flatten()
        .map(|(value, mut members)| {
            members.sort_unstable();
            (value, members)
        })
        .min()
        .expect("at least one candidate set is visited");
    members.sort_unstable();
    Outcome {
        minimum,
        members,
        nodes: shared.nodes.load(Ordering::Relaxed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(25, 12), 5_200_300);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn incremental_masks_match_definitions() {
        let g: GroupSpec = "3,4".parse().unwrap();
        let t = Tables::new(&g);
        let members = [0, 3, 5, 10, 11];
        for objective in [Objective::Diff, Objective::Sum, Objective::Signed2] {
            for k in 1..=members.len() {
                let m = t.mask_of(objective, &members[..k]);
                assert_eq!(size(m), t.evaluate(objective, &members[..k]));
            }
        }
    }
}

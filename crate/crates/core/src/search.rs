//! Desk-scale searches: exhaustive minimum-size designs and backtracking for
//! sharply transitive sets.
//!
//! Both searches run under an explicit node budget. Running out of budget is
//! reported as such, never as absence of a result.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use itertools::Itertools;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::design::{
    build_report, design_bound, frequencies, is_t_design_moments, moment, space_frequencies,
    transitivity, DesignReport,
};
use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::perm::{format_one_line, Permutation};
use crate::permset::PermSet;

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;
/// Environment variable overriding node budgets in the CLI.
pub const BUDGET_ENV: &str = "PERMDESIGN_BUDGET";

/// Reads [`BUDGET_ENV`], falling back to `default` when unset or unparsable.
pub fn budget_from_env(default: u64) -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeCount {
    pub size: usize,
    pub subsets_checked: u64,
    pub designs_found: u64,
}

/// Replication record for [`exhaustive_min_design`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustionCertificate {
    pub n: usize,
    pub t: usize,
    pub max_size: usize,
    pub predicate: String,
    pub sizes: Vec<SizeCount>,
    pub nodes: u64,
    pub budget: u64,
}

#[derive(Debug, Clone)]
pub enum MinDesignOutcome {
    Found {
        design: PermSet,
        report: Box<DesignReport>,
        certificate: ExhaustionCertificate,
    },
    /// Every subset in range was checked and none is a design.
    Exhausted { certificate: ExhaustionCertificate },
    /// The budget would have been exceeded; sizes listed in the certificate
    /// were fully checked, larger ones were not.
    Inconclusive {
        certificate: ExhaustionCertificate,
        reason: String,
    },
}

impl MinDesignOutcome {
    pub fn certificate(&self) -> &ExhaustionCertificate {
        match self {
            MinDesignOutcome::Found { certificate, .. }
            | MinDesignOutcome::Exhausted { certificate }
            | MinDesignOutcome::Inconclusive { certificate, .. } => certificate,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            MinDesignOutcome::Found {
                design,
                report,
                certificate,
            } => json!({
                "status": "found",
                "design": design.iter().map(format_one_line).collect::<Vec<_>>(),
                "report": report,
                "certificate": certificate,
            }),
            MinDesignOutcome::Exhausted { certificate } => json!({
                "status": "exhausted",
                "certificate": certificate,
            }),
            MinDesignOutcome::Inconclusive {
                certificate,
                reason,
            } => json!({
                "status": "inconclusive",
                "reason": reason,
                "certificate": certificate,
            }),
        }
    }
}

/// Searches identity-containing subsets of `S_n` in increasing size for a
/// `t`-design of size at most `max_size`.
///
/// Every criterion is invariant under left translation, so each design has a
/// translate containing the identity. Within a size, subsets are visited in
/// lexicographic order of their sorted member indices. A size is only
/// started if all of its `C(n!−1, size−1)` subsets fit in the budget.
pub fn exhaustive_min_design(
    n: usize,
    t: usize,
    max_size: usize,
    budget: u64,
) -> Result<MinDesignOutcome> {
    if n == 0 || n > 5 {
        return Err(Error::UnsupportedSearch {
            reason: format!("exhaustive design search needs 1 <= n <= 5, got {n}"),
        });
    }
    if t == 0 || t > n {
        return Err(Error::StrengthOutOfRange {
            n,
            t,
            reason: "need 1 <= t <= n",
        });
    }
    let all: Vec<Permutation> = Permutation::all(n)?.collect();
    let max_size = max_size.min(all.len());
    let dist: Vec<Vec<usize>> = all
        .iter()
        .map(|a| all.iter().map(|b| a.distance_unchecked(b)).collect())
        .collect();

    // Space moments as exact (numerator, denominator) pairs.
    let space = space_frequencies(n);
    let targets: Vec<(i128, i128)> = (1..=t as u32)
        .map(|i| {
            let m = moment(&space, i);
            (m.numer().to_i128().unwrap(), m.denom().to_i128().unwrap())
        })
        .collect();

    let mut cert = ExhaustionCertificate {
        n,
        t,
        max_size,
        predicate: format!(
            "all subsets D of S_{n} with identity in D and 1 <= |D| <= {max_size}, \
             members indexed in lexicographic order, tested by the moment criterion for i = 1..{t}"
        ),
        sizes: Vec::new(),
        nodes: 0,
        budget,
    };

    let mut hist = vec![0i128; n + 1];
    for size in 1..=max_size {
        let count = binomial(all.len() - 1, size - 1)
            .to_u64()
            .unwrap_or(u64::MAX);
        if cert.nodes.saturating_add(count) > budget {
            let reason = format!(
                "size {size} needs {count} subsets but only {} of {budget} nodes remain",
                budget - cert.nodes
            );
            return Ok(MinDesignOutcome::Inconclusive {
                certificate: cert,
                reason,
            });
        }
        let mut checked = 0u64;
        for rest in (1..all.len()).combinations(size - 1) {
            checked += 1;
            let members: Vec<usize> = std::iter::once(0).chain(rest).collect();
            hist.iter_mut().for_each(|h| *h = 0);
            for &a in &members {
                for &b in &members {
                    hist[dist[a][b]] += 1;
                }
            }
            let pairs = (size * size) as i128;
            let is_design = targets.iter().enumerate().all(|(idx, &(num, den))| {
                let power = idx as u32 + 1;
                let sum: i128 = hist
                    .iter()
                    .enumerate()
                    .map(|(j, &h)| h * (j as i128).pow(power))
                    .sum();
                sum * den == num * pairs
            });
            if is_design {
                cert.nodes += checked;
                cert.sizes.push(SizeCount {
                    size,
                    subsets_checked: checked,
                    designs_found: 1,
                });
                let design = PermSet::new(members.iter().map(|&i| all[i].clone()).collect())?;
                let report = build_report(&design, t, 1)?;
                if !report.is_design() {
                    return Err(Error::CriteriaDisagree {
                        detail: "search hit failed re-verification".into(),
                    });
                }
                return Ok(MinDesignOutcome::Found {
                    design,
                    report: Box::new(report),
                    certificate: cert,
                });
            }
        }
        cert.nodes += checked;
        cert.sizes.push(SizeCount {
            size,
            subsets_checked: checked,
            designs_found: 0,
        });
    }
    Ok(MinDesignOutcome::Exhausted { certificate: cert })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SharpSearchOutcome {
    Found(PermSet),
    /// The whole tree was searched without success.
    Exhausted,
    BudgetExceeded,
}

impl SharpSearchOutcome {
    pub fn to_json(&self, n: usize, t: usize) -> serde_json::Value {
        match self {
            SharpSearchOutcome::Found(set) => json!({
                "status": "found",
                "n": n,
                "t": t,
                "size": set.len(),
                "set": set.iter().map(format_one_line).collect::<Vec<_>>(),
            }),
            SharpSearchOutcome::Exhausted => json!({"status": "exhausted", "n": n, "t": t}),
            SharpSearchOutcome::BudgetExceeded => {
                json!({"status": "budget_exceeded", "n": n, "t": t})
            }
        }
    }
}

struct SharpSearch<'a> {
    cands: &'a [Permutation],
    target: usize,
    /// Members sharing a given image of point 1 in a sharp set.
    quota: usize,
    /// Largest number of positions on which two members may agree.
    max_agree: usize,
    nodes: &'a AtomicU64,
    budget: u64,
    out_of_budget: &'a AtomicBool,
    best_branch: &'a AtomicUsize,
}

enum BranchResult {
    Success(Vec<usize>),
    Failure,
    Aborted,
}

impl SharpSearch<'_> {
    fn compatible(&self, a: usize, b: usize) -> bool {
        let n = self.cands[a].degree();
        n - self.cands[a].distance_unchecked(&self.cands[b]) <= self.max_agree
    }

    fn first_image(&self, c: usize) -> usize {
        self.cands[c].zero_based()[0] as usize
    }

    /// Sorted members of a sharp set fill the image classes of point 1 in
    /// order, `quota` members each; check every class can still be filled.
    fn feasible(&self, level: usize, pool: &[usize]) -> bool {
        let n = self.cands[0].degree();
        let mut counts = vec![0usize; n];
        for &c in pool {
            counts[self.first_image(c)] += 1;
        }
        let class = level / self.quota;
        (class..n).all(|v| {
            let need = if v == class {
                self.quota - level % self.quota
            } else {
                self.quota
            };
            counts[v] >= need
        })
    }

    fn dfs(&self, branch: usize, chosen: &mut Vec<usize>, pool: &[usize]) -> Option<bool> {
        if chosen.len() == self.target {
            return Some(true);
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            self.out_of_budget.store(true, Ordering::Relaxed);
            return None;
        }
        if self.out_of_budget.load(Ordering::Relaxed)
            || self.best_branch.load(Ordering::Relaxed) < branch
        {
            return None;
        }
        if !self.feasible(chosen.len(), pool) {
            return Some(false);
        }
        let class = chosen.len() / self.quota;
        for (pos, &c) in pool.iter().enumerate() {
            match self.first_image(c).cmp(&class) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
            let next: Vec<usize> = pool[pos + 1..]
                .iter()
                .copied()
                .filter(|&o| self.compatible(c, o))
                .collect();
            chosen.push(c);
            match self.dfs(branch, chosen, &next) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            chosen.pop();
        }
        Some(false)
    }

    fn run_branch(&self, branch: usize, root: usize) -> BranchResult {
        let pool: Vec<usize> = (root + 1..self.cands.len())
            .filter(|&o| self.compatible(root, o))
            .collect();
        let mut chosen = vec![root];
        match self.dfs(branch, &mut chosen, &pool) {
            Some(true) => BranchResult::Success(chosen),
            Some(false) => BranchResult::Failure,
            None => BranchResult::Aborted,
        }
    }
}

/// Backtracking search for a sharply `t`-transitive subset of `S_n`
/// (`t = 1`: a Latin square; `t = 2`: `n(n−1)` permutations pairwise at
/// distance at least `n − 1`).
///
/// Candidates are visited in lexicographic order and members are chosen in
/// increasing order, so the first success is the lexicographically least
/// solution. Top-level branches (the first member) are handed to `workers`
/// threads; a branch's success is reported only once every earlier branch has
/// failed, which makes the answer independent of the worker count.
pub fn search_sharp_set(
    n: usize,
    t: usize,
    workers: usize,
    budget: u64,
) -> Result<SharpSearchOutcome> {
    let supported = match t {
        1 => (1..=8).contains(&n),
        2 => (2..=5).contains(&n),
        _ => false,
    };
    if !supported {
        return Err(Error::UnsupportedSearch {
            reason: format!(
                "sharp-set search supports t=1 with n<=8 and t=2 with 2<=n<=5, got n={n}, t={t}"
            ),
        });
    }
    let cands: Vec<Permutation> = Permutation::all(n)?.collect();
    let target = design_bound(n, t).to_usize().expect("small");
    let nodes = AtomicU64::new(0);
    let out_of_budget = AtomicBool::new(false);
    let best_branch = AtomicUsize::new(usize::MAX);
    let search = SharpSearch {
        cands: &cands,
        target,
        quota: target / n,
        max_agree: t - 1,
        nodes: &nodes,
        budget,
        out_of_budget: &out_of_budget,
        best_branch: &best_branch,
    };

    // Level 0 must take image class 0 of point 1.
    let roots: Vec<usize> = (0..cands.len())
        .filter(|&c| search.first_image(c) == 0)
        .collect();
    let results: Mutex<Vec<Option<BranchResult>>> =
        Mutex::new((0..roots.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let work = || loop {
        let b = next.fetch_add(1, Ordering::SeqCst);
        if b >= roots.len() || b > best_branch.load(Ordering::SeqCst) {
            break;
        }
        if out_of_budget.load(Ordering::SeqCst) {
            break;
        }
        let r = search.run_branch(b, roots[b]);
        if matches!(r, BranchResult::Success(_)) {
            best_branch.fetch_min(b, Ordering::SeqCst);
        }
        results.lock().unwrap()[b] = Some(r);
    };
    let workers = workers.max(1);
    if workers == 1 {
        work();
    } else {
        thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(work);
            }
        });
    }

    let results = results.into_inner().unwrap();
    for r in results {
        match r {
            Some(BranchResult::Success(chosen)) => {
                let set = PermSet::new(chosen.iter().map(|&i| cands[i].clone()).collect())?;
                verify_sharp(&set, t)?;
                return Ok(SharpSearchOutcome::Found(set));
            }
            Some(BranchResult::Failure) => {}
            Some(BranchResult::Aborted) | None => return Ok(SharpSearchOutcome::BudgetExceeded),
        }
    }
    Ok(SharpSearchOutcome::Exhausted)
}

fn verify_sharp(set: &PermSet, t: usize) -> Result<()> {
    let tr = transitivity(set, t, 1)?;
    let design = is_t_design_moments(&frequencies(set), t)?;
    if tr.sharp && design {
        Ok(())
    } else {
        Err(Error::CriteriaDisagree {
            detail: format!(
                "search result failed re-verification (sharp={}, design={design})",
                tr.sharp
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::to_latin_square;

    #[test]
    fn min_design_s3_t2() {
        let outcome = exhaustive_min_design(3, 2, 6, DEFAULT_NODE_BUDGET).unwrap();
        let MinDesignOutcome::Found {
            design,
            certificate,
            ..
        } = outcome
        else {
            panic!("expected a design");
        };
        assert_eq!(design, PermSet::symmetric_group(3).unwrap());
        let checked: Vec<u64> = certificate
            .sizes
            .iter()
            .map(|s| s.subsets_checked)
            .collect();
        assert_eq!(checked, [1, 5, 10, 10, 5, 1]);

        let outcome = exhaustive_min_design(3, 2, 5, DEFAULT_NODE_BUDGET).unwrap();
        let MinDesignOutcome::Exhausted { certificate } = outcome else {
            panic!("expected exhaustion");
        };
        assert_eq!(certificate.nodes, 31);
        assert!(certificate.sizes.iter().all(|s| s.designs_found == 0));
    }

    #[test]
    fn min_design_s2_t1() {
        let outcome = exhaustive_min_design(2, 1, 2, DEFAULT_NODE_BUDGET).unwrap();
        let MinDesignOutcome::Found { design, .. } = outcome else {
            panic!("expected a design");
        };
        assert_eq!(design.len(), 2);
    }

    #[test]
    fn min_design_budget_is_explicit() {
        let outcome = exhaustive_min_design(5, 2, 20, 1_000).unwrap();
        let MinDesignOutcome::Inconclusive { certificate, .. } = outcome else {
            panic!("expected inconclusive");
        };
        assert!(certificate.nodes <= 1_000);
        assert!(exhaustive_min_design(6, 1, 6, 10).is_err());
    }

    #[test]
    fn min_design_s4_t1_is_size_4() {
        let outcome = exhaustive_min_design(4, 1, 6, DEFAULT_NODE_BUDGET).unwrap();
        let MinDesignOutcome::Found { design, .. } = outcome else {
            panic!("expected a design");
        };
        assert_eq!(design.len(), 4);
    }

    #[test]
    fn latin_squares_small() {
        for n in 1..=6 {
            let SharpSearchOutcome::Found(set) =
                search_sharp_set(n, 1, 1, DEFAULT_NODE_BUDGET).unwrap()
            else {
                panic!("n={n}");
            };
            assert_eq!(set.len(), n);
            to_latin_square(&set).unwrap();
        }
    }

    #[test]
    fn sharp_two_sets() {
        let SharpSearchOutcome::Found(s3) = search_sharp_set(3, 2, 1, DEFAULT_NODE_BUDGET).unwrap()
        else {
            panic!();
        };
        assert_eq!(s3, PermSet::symmetric_group(3).unwrap());
        let SharpSearchOutcome::Found(s5) = search_sharp_set(5, 2, 4, DEFAULT_NODE_BUDGET).unwrap()
        else {
            panic!();
        };
        assert_eq!(s5.len(), 20);
    }

    #[test]
    fn sharp_search_rejects_out_of_range() {
        assert!(search_sharp_set(9, 1, 1, 10).is_err());
        assert!(search_sharp_set(6, 2, 1, 10).is_err());
        assert!(search_sharp_set(4, 3, 1, 10).is_err());
        assert_eq!(
            search_sharp_set(6, 1, 2, 3).unwrap(),
            SharpSearchOutcome::BudgetExceeded
        );
    }
}

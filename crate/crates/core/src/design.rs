//! Frequencies, power moments, dual frequencies and the t-design criteria
//! for subsets of `S_n` under the fixed-point metric, together with
//! transitivity checks, group structure and the size bounds.
//!
//! Everything is exact. The moment criterion is valid for every `t ≤ n`;
//! the Charlier-based criteria (dual frequencies, `tcrit`) are only evaluated
//! for `t ≤ ⌊n/2⌋`, where the reversed Charlier polynomials are known to be
//! orthogonal.

use std::thread;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::charlier::{inner_product_space, reversed_charlier, IntPolynomial};
use crate::error::{Error, Result};
use crate::exact::{
    factorial, falling_factorial, format_rational, rencontres, ExactInt, ExactRational,
    RationalString,
};
use crate::permset::PermSet;

/// Distance distribution `f_0..f_n` of a permutation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyVector {
    f: Vec<ExactRational>,
}

impl FrequencyVector {
    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.f
    }

    pub fn get(&self, i: usize) -> &ExactRational {
        &self.f[i]
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.f.iter().map(format_rational).collect()
    }
}

/// Ordered-pair distance histogram. Only the upper triangle is computed; it is
/// doubled and the `|D|` diagonal pairs land in bin 0. Rows are dealt to
/// `workers` threads round-robin and the integer sub-histograms summed, so the
/// result does not depend on the worker count.
pub fn distance_histogram(d: &PermSet, workers: usize) -> Vec<u64> {
    let n = d.degree();
    let els = d.elements();
    let workers = workers.clamp(1, els.len().max(1));
    let row_hist = |start: usize| {
        let mut hist = vec![0u64; n + 1];
        for i in (start..els.len()).step_by(workers) {
            for other in &els[i + 1..] {
                hist[els[i].distance_unchecked(other)] += 2;
            }
        }
        hist
    };
    let partials: Vec<Vec<u64>> = if workers == 1 {
        vec![row_hist(0)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| scope.spawn(move || row_hist(w)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    let mut hist = vec![0u64; n + 1];
    for part in partials {
        for (acc, v) in hist.iter_mut().zip(part) {
            *acc += v;
        }
    }
    hist[0] += els.len() as u64;
    hist
}

pub fn frequencies(d: &PermSet) -> FrequencyVector {
    frequencies_with_workers(d, 1)
}

pub fn frequencies_with_workers(d: &PermSet, workers: usize) -> FrequencyVector {
    let size = d.len() as u64;
    let total = ExactInt::from(size * size);
    FrequencyVector {
        f: distance_histogram(d, workers)
            .into_iter()
            .map(|c| ExactRational::new(c.into(), total.clone()))
            .collect(),
    }
}

/// Frequencies of `S_n` itself: `v_i / n!`.
pub fn space_frequencies(n: usize) -> FrequencyVector {
    let table = rencontres(n);
    let n_fact = factorial(n);
    FrequencyVector {
        f: (0..=n)
            .map(|i| ExactRational::new(table.w(n - i).clone(), n_fact.clone()))
            .collect(),
    }
}

/// `Σ_j f_j j^i`
pub fn moment(f: &FrequencyVector, i: u32) -> ExactRational {
    f.f.iter()
        .enumerate()
        .map(|(j, fj)| fj * ExactRational::from_integer(ExactInt::from(j).pow(i)))
        .sum()
}

fn check_strength(n: usize, t: usize) -> Result<()> {
    if t == 0 || t > n {
        return Err(Error::StrengthOutOfRange {
            n,
            t,
            reason: "need 1 <= t <= n",
        });
    }
    Ok(())
}

fn check_charlier_range(n: usize, t: usize) -> Result<()> {
    if t == 0 || 2 * t > n {
        return Err(Error::StrengthOutOfRange {
            n,
            t,
            reason: "Charlier criteria need 1 <= t <= n/2",
        });
    }
    Ok(())
}

/// Canonical criterion: moments `1..=t` match those of the whole space.
pub fn is_t_design_moments(f: &FrequencyVector, t: usize) -> Result<bool> {
    let n = f.degree();
    check_strength(n, t)?;
    let space = space_frequencies(n);
    Ok((1..=t as u32).all(|i| moment(f, i) == moment(&space, i)))
}

/// Unnormalized dual frequency `ĝ_k = Σ_i Ĉ_k(i) f_i`. It differs from the
/// orthonormal dual frequency by a nonzero factor, so it vanishes exactly
/// when that one does.
pub fn dual_frequency(f: &FrequencyVector, k: usize) -> Result<ExactRational> {
    let n = f.degree();
    check_charlier_range(n, k)?;
    Ok(dual_with(&reversed_charlier(k, n), f))
}

fn dual_with(poly: &IntPolynomial, f: &FrequencyVector) -> ExactRational {
    f.f.iter()
        .enumerate()
        .map(|(i, fi)| fi * ExactRational::from_integer(poly.eval_usize(i)))
        .sum()
}

pub fn is_t_design_dual(f: &FrequencyVector, t: usize) -> Result<bool> {
    let n = f.degree();
    check_charlier_range(n, t)?;
    Ok((1..=t).all(|k| dual_with(&reversed_charlier(k, n), f).is_zero()))
}

/// `Σ_{i=1}^{n} f_i (Ĉ_k(0) − Ĉ_k(i)) = Ĉ_k(0)` for every `k ∈ [1..t]`.
pub fn is_t_design_tcrit(f: &FrequencyVector, t: usize) -> Result<bool> {
    let n = f.degree();
    check_charlier_range(n, t)?;
    Ok((1..=t).all(|k| {
        let poly = reversed_charlier(k, n);
        let at_zero = poly.eval_usize(0);
        let lhs: ExactRational = (1..=n)
            .map(|i| &f.f[i] * ExactRational::from_integer(&at_zero - poly.eval_usize(i)))
            .sum();
        lhs == ExactRational::from_integer(at_zero)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transitivity {
    pub transitive: bool,
    pub sharp: bool,
}

/// Number of ordered `t`-tuples of distinct points, `n!/(n−t)!`.
fn arrangements(n: usize, t: usize) -> usize {
    (0..t).map(|j| n - j).product()
}

/// Dense rank of an ordered tuple of distinct points in `[0..n)`.
fn tuple_rank(tuple: &[u32], n: usize) -> usize {
    let t = tuple.len();
    let mut rank = 0;
    for i in 0..t {
        let smaller_used = tuple[..i].iter().filter(|&&a| a < tuple[i]).count();
        let digit = tuple[i] as usize - smaller_used;
        rank = rank * (n - i) + digit;
    }
    rank
}

/// Counts, for every ordered pair of distinct-entry `t`-tuples `(a, b)`, the
/// members of `D` carrying `a` to `b`. Transitive iff every count is at least
/// one; sharp iff every count is exactly one. Source tuples are split across
/// `workers` threads and the verdicts combined by conjunction.
pub fn transitivity(d: &PermSet, t: usize, workers: usize) -> Result<Transitivity> {
    let n = d.degree();
    check_strength(n, t)?;
    let targets = arrangements(n, t);
    // Each source tuple has |D| images; covering `targets` needs |D| >= targets.
    if d.len() < targets {
        return Ok(Transitivity {
            transitive: false,
            sharp: false,
        });
    }
    let sources: Vec<Vec<u32>> = (0..n as u32).permutations(t).collect();
    let workers = workers.clamp(1, sources.len());
    let covers = |start: usize| {
        let mut hit = vec![false; targets];
        let mut image = vec![0u32; t];
        sources.iter().skip(start).step_by(workers).all(|a| {
            hit.iter_mut().for_each(|h| *h = false);
            let mut distinct = 0;
            for sigma in d {
                let imgs = sigma.zero_based();
                for (slot, &x) in image.iter_mut().zip(a) {
                    *slot = imgs[x as usize];
                }
                let r = tuple_rank(&image, n);
                if !std::mem::replace(&mut hit[r], true) {
                    distinct += 1;
                }
            }
            distinct == targets
        })
    };
    let transitive = if workers == 1 {
        covers(0)
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| scope.spawn(move || covers(w)))
                .collect();
            handles.into_iter().all(|h| h.join().unwrap())
        })
    };
    // With every count >= 1 and counts summing to |D| per source, all counts
    // equal one exactly when |D| = n!/(n−t)!.
    Ok(Transitivity {
        transitive,
        sharp: transitive && d.len() == targets,
    })
}

pub fn is_t_transitive(d: &PermSet, t: usize) -> Result<bool> {
    Ok(transitivity(d, t, 1)?.transitive)
}

/// Largest `t` for which `D` is `t`-transitive (0 if not transitive), and
/// whether it is sharply so at that `t`.
pub fn max_transitivity(d: &PermSet, workers: usize) -> (usize, bool) {
    let mut best = (0, false);
    for t in 1..=d.degree() {
        let tr = transitivity(d, t, workers).expect("t within range");
        if !tr.transitive {
            break;
        }
        best = (t, tr.sharp);
    }
    best
}

/// A pair `(σ, τ)` with `σ∘τ ∉ D`, if any; scanned in lexicographic order.
pub fn non_closure_witness(d: &PermSet) -> Option<(crate::Permutation, crate::Permutation)> {
    d.iter()
        .cartesian_product(d.iter())
        .find(|(s, t)| !d.contains(&s.compose_unchecked(t)))
        .map(|(s, t)| (s.clone(), t.clone()))
}

/// Closure under composition; for a finite subset of a finite group this
/// already forces the identity and inverses.
pub fn is_group(d: &PermSet) -> bool {
    non_closure_witness(d).is_none()
}

/// Burnside count of orbits on `[1..n]`.
pub fn orbit_count(d: &PermSet) -> Result<usize> {
    if !is_group(d) {
        return Err(Error::NotAGroup);
    }
    let total: usize = d.iter().map(|s| s.fixed_points()).sum();
    assert_eq!(total % d.len(), 0, "Burnside average must be integral");
    Ok(total / d.len())
}

/// `n(n−1)⋯(n−t+1)`, the lower bound on the size of a `t`-design.
pub fn design_bound(n: usize, t: usize) -> ExactInt {
    falling_factorial(&ExactInt::from(n), t)
}

/// `(n−1)² + 1`, the 2-design bound from the Cauchy–Schwarz argument.
pub fn cor2_bound(n: usize) -> ExactInt {
    let m = ExactInt::from(n) - 1;
    &m * &m + 1
}

/// Whether `n(n−1)` strictly exceeds `(n−1)² + 1`; true for every `n ≥ 3`.
pub fn sm_bound_exceeds_cor2(n: usize) -> bool {
    design_bound(n, 2) > cor2_bound(n)
}

/// `P_t(x) = (n−x)(n−1−x)⋯(n−t+1−x)`.
pub fn tuple_count_polynomial(n: usize, t: usize) -> IntPolynomial {
    (0..t).fold(IntPolynomial::constant(1), |acc, j| {
        &acc * &IntPolynomial::from_i64(&[n as i64 - j as i64, -1])
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideCheck {
    /// `Σ_i i(i−1)⋯(i−t+1) w_i`
    pub falling_sum: ExactInt,
    /// `⟨1, P_t⟩` over the whole space.
    pub inner_product: ExactRational,
    pub holds: bool,
}

/// Counts ordered `t`-tuples fixed pointwise, two ways: both must give `n!`
/// (resp. 1 after normalizing), since `S_n` is transitive on such tuples.
pub fn burnside_tuple_identity(n: usize, t: usize) -> Result<BurnsideCheck> {
    check_strength(n, t)?;
    let table = rencontres(n);
    let falling_sum: ExactInt = (0..=n)
        .map(|i| falling_factorial(&ExactInt::from(i), t) * table.w(i))
        .sum();
    let inner_product = inner_product_space(
        &IntPolynomial::constant(1),
        &tuple_count_polynomial(n, t),
        n,
    );
    let holds = falling_sum == factorial(n) && inner_product.is_one();
    Ok(BurnsideCheck {
        falling_sum,
        inner_product,
        holds,
    })
}

/// Exact Gaussian elimination for a square system.
fn solve_linear(
    mut a: Vec<Vec<ExactRational>>,
    mut b: Vec<ExactRational>,
) -> Result<Vec<ExactRational>> {
    let size = b.len();
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..size {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            let pivot_row = a[col].clone();
            for (cell, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                *cell -= &factor * p;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Ok((0..size).map(|i| &b[i] / &a[i][i]).collect())
}

/// Frequencies `f_{n−t+1}, …, f_n` of a design meeting the size bound with
/// equality, given `f_i = 0` on `[1..n−t]` and `f_0 = 1/(n(n−1)⋯(n−t+1))`.
///
/// For `t ≤ n/2` the tail is solved from the `tcrit` equations and confirmed
/// against the moment equations. Above `n/2` only the moment equations are
/// used. The result is checked to sum to one together with `f_0`.
pub fn tight_frequencies(n: usize, t: usize) -> Result<Vec<ExactRational>> {
    check_strength(n, t)?;
    let unknowns: Vec<usize> = (n - t + 1..=n).collect();
    let by_moments = tight_tail_by_moments(n, t, &unknowns)?;
    let tail = if 2 * t <= n {
        let by_tcrit = tight_tail_by_tcrit(n, t, &unknowns)?;
        if by_tcrit != by_moments {
            return Err(Error::CriteriaDisagree {
                detail: format!("tight tail differs between tcrit and moments at n={n}, t={t}"),
            });
        }
        by_tcrit
    } else {
        by_moments
    };
    let f0 = ExactRational::new(One::one(), design_bound(n, t));
    let total: ExactRational = tail.iter().sum::<ExactRational>() + &f0;
    if !total.is_one() {
        return Err(Error::CriteriaDisagree {
            detail: format!(
                "tight tail sums to {} with f_0 = {}",
                format_rational(&(total - &f0)),
                format_rational(&f0)
            ),
        });
    }
    Ok(tail)
}

fn tight_tail_by_tcrit(n: usize, t: usize, unknowns: &[usize]) -> Result<Vec<ExactRational>> {
    let mut a = Vec::with_capacity(t);
    let mut b = Vec::with_capacity(t);
    for k in 1..=t {
        let poly = reversed_charlier(k, n);
        let at_zero = poly.eval_usize(0);
        a.push(
            unknowns
                .iter()
                .map(|&i| ExactRational::from_integer(&at_zero - poly.eval_usize(i)))
                .collect(),
        );
        b.push(ExactRational::from_integer(at_zero));
    }
    solve_linear(a, b)
}

fn tight_tail_by_moments(n: usize, t: usize, unknowns: &[usize]) -> Result<Vec<ExactRational>> {
    let space = space_frequencies(n);
    let a = (1..=t as u32)
        .map(|j| {
            unknowns
                .iter()
                .map(|&i| ExactRational::from_integer(ExactInt::from(i).pow(j)))
                .collect()
        })
        .collect();
    let b = (1..=t as u32).map(|j| moment(&space, j)).collect();
    solve_linear(a, b)
}

/// Verdict of a criterion that may not apply at the given `(n, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds(bool),
    NotApplicable,
}

impl Verdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Holds(b) => Some(b),
            Verdict::NotApplicable => None,
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Holds(b) => s.serialize_bool(*b),
            Verdict::NotApplicable => s.serialize_str("n/a"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentEntry {
    pub i: usize,
    pub value: RationalString,
    pub space_value: RationalString,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualEntry {
    pub k: usize,
    pub value: RationalString,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriteriaVerdicts {
    pub moments: bool,
    pub dual: Verdict,
    pub tcrit: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsSummary {
    pub sm: RationalString,
    pub cor2_t2: RationalString,
    pub meets_sm_equality: bool,
    /// `f_i = 0` for every `i ∈ [1..n−t]`.
    pub equality_clause: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitivitySummary {
    pub max_t: usize,
    pub sharp: bool,
    pub is_group: bool,
}

/// Everything known about a permutation set at strength `t`. Serializes to
/// the JSON report with a fixed key order.
#[derive(Debug, Clone, Serialize)]
pub struct DesignReport {
    pub n: usize,
    pub t: usize,
    pub size: usize,
    pub frequencies: Vec<RationalString>,
    pub moments: Vec<MomentEntry>,
    pub dual_frequencies: Option<Vec<DualEntry>>,
    pub criteria: CriteriaVerdicts,
    pub bounds: BoundsSummary,
    pub transitivity: TransitivitySummary,
}

impl DesignReport {
    pub fn is_design(&self) -> bool {
        self.criteria.moments
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Builds the full report. Fails if applicable criteria disagree, which would
/// indicate a defect rather than a property of `D`.
pub fn build_report(d: &PermSet, t: usize, workers: usize) -> Result<DesignReport> {
    let n = d.degree();
    check_strength(n, t)?;
    let f = frequencies_with_workers(d, workers);
    let space = space_frequencies(n);

    let moments: Vec<MomentEntry> = (1..=t)
        .map(|i| {
            let value = moment(&f, i as u32);
            let space_value = moment(&space, i as u32);
            MomentEntry {
                i,
                equal: value == space_value,
                value: RationalString(value),
                space_value: RationalString(space_value),
            }
        })
        .collect();
    let by_moments = moments.iter().all(|m| m.equal);

    let charlier_ok = 2 * t <= n;
    let (dual_frequencies, dual, tcrit) = if charlier_ok {
        let duals: Vec<DualEntry> = (1..=t)
            .map(|k| DualEntry {
                k,
                value: RationalString(dual_with(&reversed_charlier(k, n), &f)),
            })
            .collect();
        let dual = duals.iter().all(|e| e.value.0.is_zero());
        let tcrit = is_t_design_tcrit(&f, t)?;
        (Some(duals), Verdict::Holds(dual), Verdict::Holds(tcrit))
    } else {
        (None, Verdict::NotApplicable, Verdict::NotApplicable)
    };
    for (name, v) in [("dual", dual), ("tcrit", tcrit)] {
        if let Some(b) = v.as_bool() {
            if b != by_moments {
                return Err(Error::CriteriaDisagree {
                    detail: format!("moments={by_moments} but {name}={b} (n={n}, t={t})"),
                });
            }
        }
    }

    let sm = design_bound(n, t);
    let equality_clause = (1..=n - t).all(|i| f.get(i).is_zero());
    let bounds = BoundsSummary {
        meets_sm_equality: ExactInt::from(d.len()) == sm,
        sm: RationalString(ExactRational::from_integer(sm)),
        cor2_t2: RationalString(ExactRational::from_integer(cor2_bound(n))),
        equality_clause,
    };

    let (max_t, sharp) = max_transitivity(d, workers);
    Ok(DesignReport {
        n,
        t,
        size: d.len(),
        frequencies: f.values().iter().cloned().map(RationalString).collect(),
        moments,
        dual_frequencies,
        criteria: CriteriaVerdicts {
            moments: by_moments,
            dual,
            tcrit,
        },
        bounds,
        transitivity: TransitivitySummary {
            max_t,
            sharp,
            is_group: is_group(d),
        },
    })
}

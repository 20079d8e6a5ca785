//! Win-probability estimators and sample-size bounds.
//!
//! All exact estimators accumulate integer counts and divide once at the end,
//! so two estimators agree exactly whenever their counts agree.
//!
//! The independent-arm estimator averages the indicator
//! `1{r_{k,n_k} >= r_{j,n_j} ∀ j≠k}` over every one of the `N^K` cross-arm
//! tuples. Because the coordinates of a tuple vary independently, the number
//! of winning tuples for arm `k` factorises:
//!
//! ```text
//!   Σ_n Π_{j≠k} #{n' : r_{j,n'} <= r_{k,n}}
//! ```
//!
//! which needs one sort per arm and one binary search per (arm, sample, rival).

use rand::seq::index;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of M-subsets enumerated per arm before the sampled
/// estimator is required.
pub const DEFAULT_SUBSET_CAP: u128 = 1_000_000;

/// Rewards observed in the exploration phase, stored arm by arm.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplorationLog {
    arms: Vec<Vec<f64>>,
    paired: bool,
}

impl ExplorationLog {
    /// `rows[n][k]` is the `n`-th reward of arm `k`.
    pub fn from_rows(rows: &[Vec<f64>], paired: bool) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::invalid("every row of a log must have the same number of arms"));
        }
        let arms = (0..k).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Self::from_columns(arms, paired)
    }

    /// `columns[k]` holds the `N` rewards of arm `k`.
    pub fn from_columns(columns: Vec<Vec<f64>>, paired: bool) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::invalid(format!("a log needs at least 2 arms, got {}", columns.len())));
        }
        let n = columns[0].len();
        if n == 0 {
            return Err(Error::invalid("empty exploration log"));
        }
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::invalid("every arm must have the same number of samples"));
        }
        if columns.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::invalid("log entries must be finite"));
        }
        Ok(ExplorationLog {
            arms: columns,
            paired,
        })
    }

    pub fn num_samples(&self) -> usize {
        self.arms[0].len()
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn is_paired(&self) -> bool {
        self.paired
    }

    pub fn arm(&self, k: usize) -> &[f64] {
        &self.arms[k]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.arms
    }

    pub fn reward(&self, n: usize, k: usize) -> f64 {
        self.arms[k][n]
    }

    /// Applies `f` to every reward.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_columns(
            self.arms.iter().map(|c| c.iter().map(|&x| f(x)).collect()).collect(),
            self.paired,
        )
    }
}

/// How a [`WinProbabilities`] vector was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMethod {
    IndependentExact,
    IndependentSampled,
    Paired,
    Quadrature,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WinProbabilities {
    pub values: Vec<f64>,
    pub m: usize,
    pub method: EstimateMethod,
    /// Denominator of the counts: compared tuples, rows, or draws.
    pub samples_used: u128,
    /// Integer numerators, when the estimate is a ratio of counts.
    pub counts: Option<Vec<u128>>,
    pub standard_errors: Option<Vec<f64>>,
}

impl WinProbabilities {
    fn from_counts(counts: Vec<u128>, denominator: u128, m: usize, method: EstimateMethod) -> Self {
        let d = denominator as f64;
        WinProbabilities {
            values: counts.iter().map(|&c| c as f64 / d).collect(),
            m,
            method,
            samples_used: denominator,
            counts: Some(counts),
            standard_errors: None,
        }
    }

    /// Arm with the largest value, lowest index on ties.
    pub fn best_arm(&self) -> usize {
        argmax(&self.values)
    }

    /// Gap between the two largest values.
    pub fn gap(&self) -> f64 {
        let mut sorted = self.values.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        sorted[0] - sorted.get(1).copied().unwrap_or(0.0)
    }

    /// True when the maximum is attained by more than one arm.
    pub fn has_tied_max(&self) -> bool {
        let best = self.values[self.best_arm()];
        self.values.iter().filter(|&&v| v == best).count() > 1
    }
}

/// Index of the first maximum.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Index of the first minimum.
pub fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Maps non-NaN floats to integers with the same order, so that `-0.0` and
/// `0.0` share a key. Integer sorting is markedly faster than float sorting.
fn order_key(x: f64) -> u64 {
    let bits = (x + 0.0).to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

fn sorted_keys(values: &[f64]) -> Vec<u64> {
    let mut v: Vec<u64> = values.iter().map(|&x| order_key(x)).collect();
    v.sort_unstable();
    v
}

/// Winning-tuple counts for every arm over the full cross product of
/// `columns`, optionally requiring the winner to be at least `threshold`.
///
/// Arm `k`'s reward `x` wins `Π_{j≠k} #{y in column j : y <= x}` tuples. With
/// every column sorted, those counts come from one merge sweep per arm.
fn cross_product_counts(columns: &[Vec<f64>], threshold: Option<f64>) -> Result<Vec<u128>> {
    let sorted_cols: Vec<Vec<u64>> = columns.iter().map(|c| sorted_keys(c)).collect();
    let floor = threshold.map(order_key).unwrap_or(0);
    let overflow = || Error::Numeric("win count overflowed 128 bits".into());
    let mut counts = vec![0u128; columns.len()];
    let mut below = vec![0usize; columns.len()];
    for (k, col) in sorted_cols.iter().enumerate() {
        below.iter_mut().for_each(|b| *b = 0);
        let mut total: u128 = 0;
        for &x in col.iter().skip_while(|&&x| x < floor) {
            let mut prod: u128 = 1;
            for (j, other) in sorted_cols.iter().enumerate() {
                if j == k {
                    continue;
                }
                while below[j] < other.len() && other[below[j]] <= x {
                    below[j] += 1;
                }
                prod = prod.checked_mul(below[j] as u128).ok_or_else(overflow)?;
            }
            total = total.checked_add(prod).ok_or_else(overflow)?;
        }
        counts[k] = total;
    }
    Ok(counts)
}

/// Row-wise winning counts over matched columns.
fn matched_counts(columns: &[Vec<f64>]) -> Vec<u128> {
    let len = columns[0].len();
    let mut counts = vec![0u128; columns.len()];
    for n in 0..len {
        let best = columns.iter().map(|c| c[n]).fold(f64::NEG_INFINITY, f64::max);
        for (k, c) in columns.iter().enumerate() {
            if c[n] >= best {
                counts[k] += 1;
            }
        }
    }
    counts
}

/// Independent-arm estimate over all `N^K` tuples.
///
/// With `threshold = Some(c)` the constant `c` joins the comparison set, so
/// arm `k` only wins tuples in which its reward is also at least `c`.
pub fn estimate_ote_independent(log: &ExplorationLog, threshold: Option<f64>) -> Result<WinProbabilities> {
    if let Some(c) = threshold {
        if c.is_nan() {
            return Err(Error::invalid("threshold must not be NaN"));
        }
    }
    let n = log.num_samples() as u128;
    let denominator = n
        .checked_pow(log.num_arms() as u32)
        .ok_or_else(|| Error::Numeric("N^K overflowed 128 bits".into()))?;
    let counts = cross_product_counts(log.columns(), threshold)?;
    Ok(WinProbabilities::from_counts(counts, denominator, 1, EstimateMethod::IndependentExact))
}

/// Estimate from simultaneous observations: the fraction of rows in which
/// arm `k` is at least every other arm.
pub fn estimate_ote_paired(log: &ExplorationLog) -> Result<WinProbabilities> {
    require_paired(log)?;
    let counts = matched_counts(log.columns());
    Ok(WinProbabilities::from_counts(
        counts,
        log.num_samples() as u128,
        1,
        EstimateMethod::Paired,
    ))
}

fn require_paired(log: &ExplorationLog) -> Result<()> {
    if log.is_paired() {
        Ok(())
    } else {
        Err(Error::invalid(
            "the paired estimator needs a log of simultaneous observations",
        ))
    }
}

/// `C(n, k)`, or `None` if it does not fit in 128 bits.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Lexicographic `m`-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, m: usize) -> Self {
        Combinations {
            n,
            current: (0..m).collect(),
            done: m > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let m = self.current.len();
        // rightmost position that can still move
        match (0..m).rev().find(|&i| self.current[i] < self.n - m + i) {
            Some(i) => {
                self.current[i] += 1;
                for j in i + 1..m {
                    self.current[j] = self.current[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Calls `f` on every `m`-subset of `0..n` in the order of [`Combinations`],
/// reusing one index buffer.
fn for_each_subset(n: usize, m: usize, mut f: impl FnMut(&[usize])) {
    if m > n {
        return;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        f(&idx);
        match (0..m).rev().find(|&i| idx[i] < n - m + i) {
            Some(i) => {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
            }
            None => return,
        }
    }
}

/// All `C(N, M)` M-sums of every arm.
///
/// Column `j` of every arm is built from the same index subset, the `j`-th
/// subset in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct MSumSet {
    sums: Vec<Vec<f64>>,
    m: usize,
    n: usize,
}

impl MSumSet {
    /// `sums()[k][j]` is the `j`-th M-sum of arm `k`.
    pub fn sums(&self) -> &[Vec<f64>] {
        &self.sums
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_subsets(&self) -> usize {
        self.sums[0].len()
    }

    /// Index subsets in column order.
    pub fn subsets(&self) -> Combinations {
        Combinations::new(self.n, self.m)
    }
}

fn check_m(log: &ExplorationLog, m: usize) -> Result<()> {
    if m == 0 || m > log.num_samples() {
        return Err(Error::invalid(format!(
            "m must lie in [1, N] = [1, {}], got {m}",
            log.num_samples()
        )));
    }
    Ok(())
}

fn subset_count(log: &ExplorationLog, m: usize) -> u128 {
    binomial(log.num_samples(), m).unwrap_or(u128::MAX)
}

pub fn build_m_sums(log: &ExplorationLog, m: usize, cap: u128) -> Result<MSumSet> {
    check_m(log, m)?;
    let n = log.num_samples();
    let subsets = subset_count(log, m);
    if subsets > cap {
        return Err(Error::Capacity { n, m, subsets, cap });
    }
    let sums = log
        .columns()
        .iter()
        .map(|col| {
            let mut out = Vec::with_capacity(subsets as usize);
            for_each_subset(n, m, |idx| out.push(idx.iter().fold(0.0, |acc, &i| acc + col[i])));
            out
        })
        .collect();
    Ok(MSumSet { sums, m, n })
}

/// Whether M-sums of different arms are compared across all subset tuples or
/// only within the same subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FteMode {
    Independent,
    Paired,
}

/// Random subset tuples to draw when exact enumeration exceeds the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingBudget {
    pub tuples: u64,
    pub seed: u64,
}

pub fn estimate_fte(
    log: &ExplorationLog,
    m: usize,
    mode: FteMode,
    budget: Option<SamplingBudget>,
) -> Result<WinProbabilities> {
    estimate_fte_with_cap(log, m, mode, budget, DEFAULT_SUBSET_CAP)
}

pub fn estimate_fte_with_cap(
    log: &ExplorationLog,
    m: usize,
    mode: FteMode,
    budget: Option<SamplingBudget>,
    cap: u128,
) -> Result<WinProbabilities> {
    check_m(log, m)?;
    if mode == FteMode::Paired {
        require_paired(log)?;
    }
    let subsets = subset_count(log, m);
    if subsets > cap {
        return match budget {
            Some(b) => estimate_fte_sampled(log, m, mode, b),
            None => Err(Error::Capacity {
                n: log.num_samples(),
                m,
                subsets,
                cap,
            }),
        };
    }
    let set = build_m_sums(log, m, cap)?;
    let mut est = match mode {
        FteMode::Independent => {
            let denominator = subsets
                .checked_pow(log.num_arms() as u32)
                .ok_or_else(|| Error::Numeric("C(N,M)^K overflowed 128 bits".into()))?;
            let counts = cross_product_counts(set.sums(), None)?;
            WinProbabilities::from_counts(counts, denominator, m, EstimateMethod::IndependentExact)
        }
        FteMode::Paired => {
            WinProbabilities::from_counts(matched_counts(set.sums()), subsets, m, EstimateMethod::Paired)
        }
    };
    est.m = m;
    Ok(est)
}

fn random_m_sum<R: Rng + ?Sized>(col: &[f64], m: usize, rng: &mut R) -> f64 {
    let mut idx = index::sample(rng, col.len(), m).into_vec();
    idx.sort_unstable();
    idx.iter().fold(0.0, |acc, &i| acc + col[i])
}

fn estimate_fte_sampled(
    log: &ExplorationLog,
    m: usize,
    mode: FteMode,
    budget: SamplingBudget,
) -> Result<WinProbabilities> {
    if budget.tuples == 0 {
        return Err(Error::invalid("sampling budget must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let k = log.num_arms();
    let n = log.num_samples();
    let mut counts = vec![0u128; k];
    let mut sums = vec![0.0; k];
    for _ in 0..budget.tuples {
        match mode {
            FteMode::Independent => {
                for (s, col) in sums.iter_mut().zip(log.columns()) {
                    *s = random_m_sum(col, m, &mut rng);
                }
            }
            FteMode::Paired => {
                let mut idx = index::sample(&mut rng, n, m).into_vec();
                idx.sort_unstable();
                for (s, col) in sums.iter_mut().zip(log.columns()) {
                    *s = idx.iter().fold(0.0, |acc, &i| acc + col[i]);
                }
            }
        }
        let best = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (c, &s) in counts.iter_mut().zip(&sums) {
            if s >= best {
                *c += 1;
            }
        }
    }
    let method = match mode {
        FteMode::Independent => EstimateMethod::IndependentSampled,
        FteMode::Paired => EstimateMethod::Paired,
    };
    Ok(WinProbabilities::from_counts(counts, budget.tuples as u128, m, method))
}

fn check_bound_args(k: usize, epsilon_r: f64, delta_p: f64) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    if !(epsilon_r > 0.0 && epsilon_r < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon_r}")));
    }
    if !(delta_p > 0.0 && delta_p <= 1.0) {
        return Err(Error::invalid(format!("delta-p must lie in (0, 1], got {delta_p}")));
    }
    Ok(())
}

/// `2 ln(2K / ε_r) / Δp²`.
pub fn hoeffding_sample_bound(k: usize, epsilon_r: f64, delta_p: f64) -> f64 {
    2.0 * (2.0 * k as f64 / epsilon_r).ln() / (delta_p * delta_p)
}

/// Smallest integer not below `x`, treating values within a few ulps above an
/// integer as that integer.
pub(crate) fn ceil_tolerant(x: f64) -> u64 {
    let c = x.ceil();
    if c - 1.0 >= x - 8.0 * f64::EPSILON * x.abs() {
        (c - 1.0) as u64
    } else {
        c as u64
    }
}

/// Explorations per arm for one-time exploitation regret at most `epsilon_r`
/// at gap `delta_p`.
pub fn sample_size_ote(k: usize, epsilon_r: f64, delta_p: f64) -> Result<u64> {
    check_bound_args(k, epsilon_r, delta_p)?;
    Ok(ceil_tolerant(hoeffding_sample_bound(k, epsilon_r, delta_p)))
}

/// Smallest `N` with `⌊N/M⌋` at least the one-time bound.
pub fn sample_size_fte(k: usize, epsilon_r: f64, delta_p: f64, m: usize) -> Result<u64> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    // ⌊N/M⌋ >= q for integer q  <=>  N >= M q
    Ok(sample_size_ote(k, epsilon_r, delta_p)? * m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log2(a: &[f64], b: &[f64]) -> ExplorationLog {
        ExplorationLog::from_columns(vec![a.to_vec(), b.to_vec()], true).unwrap()
    }

    #[test]
    fn log_validation() {
        assert!(ExplorationLog::from_columns(vec![vec![], vec![]], false).is_err());
        assert!(ExplorationLog::from_columns(vec![vec![1.0]], false).is_err());
        assert!(ExplorationLog::from_columns(vec![vec![1.0], vec![1.0, 2.0]], false).is_err());
        assert!(ExplorationLog::from_columns(vec![vec![f64::NAN], vec![1.0]], false).is_err());
        let log = ExplorationLog::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]], true).unwrap();
        assert_eq!(log.arm(1), &[2.0, 4.0]);
        assert_eq!(log.reward(1, 0), 3.0);
    }

    #[test]
    fn independent_small_example() {
        // 9 pairs: arm 1 wins (1,0),(2,0),(3,0),(3,2.5)
        let p = estimate_ote_independent(&log2(&[1.0, 2.0, 3.0], &[0.0, 2.5, 4.0]), None).unwrap();
        assert_eq!(p.counts, Some(vec![4, 5]));
        assert_eq!(p.samples_used, 9);
        assert_eq!(p.values, vec![4.0 / 9.0, 5.0 / 9.0]);
    }

    #[test]
    fn independent_dominance() {
        let p = estimate_ote_independent(&log2(&[5.0, 6.0], &[1.0, 2.0]), None).unwrap();
        assert_eq!(p.values, vec![1.0, 0.0]);
    }

    #[test]
    fn threshold_joins_the_comparison() {
        let log = log2(&[1.0, 2.0, 3.0], &[0.0, 2.5, 4.0]);
        let p = estimate_ote_independent(&log, Some(2.2)).unwrap();
        // arm 1 only via r=3 (beats 0, 2.5); arm 2 via 2.5 (beats 1, 2) and 4 (beats all)
        assert_eq!(p.counts, Some(vec![2, 5]));
        assert!(estimate_ote_independent(&log, Some(f64::NAN)).is_err());
    }

    #[test]
    fn paired_small_example() {
        let p = estimate_ote_paired(&log2(&[1.0, 2.0, 3.0], &[0.0, 2.5, 4.0])).unwrap();
        assert_eq!(p.counts, Some(vec![1, 2]));
        assert_eq!(p.values, vec![1.0 / 3.0, 2.0 / 3.0]);
    }

    #[test]
    fn paired_ties_credit_everyone() {
        let log = ExplorationLog::from_columns(vec![vec![1.0, 2.0]; 3], true).unwrap();
        assert_eq!(estimate_ote_paired(&log).unwrap().values, vec![1.0; 3]);
    }

    #[test]
    fn signed_zeros_tie() {
        let log = ExplorationLog::from_columns(vec![vec![-0.0, -1.0], vec![0.0, 2.0]], false).unwrap();
        let p = estimate_ote_independent(&log, None).unwrap();
        assert_eq!(p.counts, Some(vec![1, 4]));
        let p = estimate_ote_independent(&log, Some(0.0)).unwrap();
        assert_eq!(p.counts, Some(vec![1, 4]));
    }

    #[test]
    fn paired_needs_simultaneous_log() {
        let log = ExplorationLog::from_columns(vec![vec![1.0], vec![2.0]], false).unwrap();
        assert!(estimate_ote_paired(&log).is_err());
        assert!(estimate_fte(&log, 1, FteMode::Paired, None).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(6, 0), Some(1));
        assert_eq!(binomial(3, 4), Some(0));
        assert_eq!(binomial(60, 30), Some(118_264_581_564_861_424));
        assert_eq!(binomial(1000, 500), None);
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(10, 4).count() as u128, binomial(10, 4).unwrap());
    }

    #[test]
    fn m_sums() {
        let log = log2(&[1.0, 2.0, 3.0], &[0.0, 2.5, 4.0]);
        let s = build_m_sums(&log, 2, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(s.sums()[0], vec![3.0, 4.0, 5.0]);
        assert_eq!(s.sums()[1], vec![2.5, 4.0, 6.5]);
        assert_eq!(s.subsets().collect::<Vec<_>>(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let full = build_m_sums(&log, 3, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(full.sums()[0], vec![6.0]);
        let single = build_m_sums(&log, 1, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(single.sums()[1], log.arm(1));
        assert!(build_m_sums(&log, 0, DEFAULT_SUBSET_CAP).is_err());
        assert!(build_m_sums(&log, 4, DEFAULT_SUBSET_CAP).is_err());
        assert!(matches!(build_m_sums(&log, 2, 2), Err(Error::Capacity { subsets: 3, .. })));
    }

    #[test]
    fn fte_tie_credits_both_arms() {
        let log = log2(&[1.0, 2.0, 3.0], &[0.0, 2.5, 4.0]);
        let p = estimate_fte(&log, 2, FteMode::Independent, None).unwrap();
        assert_eq!(p.counts, Some(vec![5, 5]));
        assert_eq!(p.values, vec![5.0 / 9.0, 5.0 / 9.0]);
        assert_eq!(p.m, 2);
    }

    #[test]
    fn fte_m1_reduces_to_ote() {
        let log = log2(&[0.3, 1.7, 2.2, 0.1], &[1.0, 0.2, 2.2, 3.0]);
        let a = estimate_fte(&log, 1, FteMode::Independent, None).unwrap();
        let b = estimate_ote_independent(&log, None).unwrap();
        assert_eq!(a.counts, b.counts);
        let a = estimate_fte(&log, 1, FteMode::Paired, None).unwrap();
        let b = estimate_ote_paired(&log).unwrap();
        assert_eq!(a.counts, b.counts);
    }

    #[test]
    fn fte_capacity_and_sampling() {
        let col: Vec<f64> = (0..40).map(|i| i as f64).collect();
        let shifted: Vec<f64> = col.iter().map(|x| x + 0.5).collect();
        let log = log2(&col, &shifted);
        // C(40, 20) is far above the default cap
        let err = estimate_fte(&log, 20, FteMode::Independent, None).unwrap_err();
        assert!(matches!(err, Error::Capacity { n: 40, m: 20, .. }));
        let budget = SamplingBudget { tuples: 20_000, seed: 9 };
        let p = estimate_fte(&log, 20, FteMode::Independent, Some(budget)).unwrap();
        assert_eq!(p.method, EstimateMethod::IndependentSampled);
        assert_eq!(p.samples_used, 20_000);
        // shifted arm wins slightly more often
        assert!(p.values[1] > p.values[0]);
        let again = estimate_fte(&log, 20, FteMode::Independent, Some(budget)).unwrap();
        assert_eq!(p, again);
        let paired = estimate_fte(&log, 20, FteMode::Paired, Some(budget)).unwrap();
        // same subset for both arms: arm 2 is always exactly 10 ahead
        assert_eq!(paired.values, vec![0.0, 1.0]);
        let zero = SamplingBudget { tuples: 0, seed: 0 };
        assert!(estimate_fte(&log, 20, FteMode::Paired, Some(zero)).is_err());
    }

    #[test]
    fn sample_sizes() {
        let e2 = std::f64::consts::E.powi(2);
        assert_eq!(sample_size_ote(2, 4.0 / e2, 1.0).unwrap(), 4);
        assert_eq!(sample_size_ote(2, 0.1, 0.28).unwrap(), 95);
        assert_eq!(sample_size_ote(10, 0.05, 0.1).unwrap(), 1199);
        assert_eq!(sample_size_fte(2, 0.1, 0.28, 2).unwrap(), 190);
        assert_eq!(sample_size_fte(2, 0.1, 0.28, 1).unwrap(), 95);
        assert!(sample_size_ote(1, 0.1, 0.2).is_err());
        assert!(sample_size_ote(2, 0.0, 0.2).is_err());
        assert!(sample_size_ote(2, 0.1, 1.5).is_err());
        assert!(sample_size_fte(2, 0.1, 0.2, 0).is_err());
    }

    #[test]
    fn best_arm_and_gap() {
        let p = WinProbabilities::from_counts(vec![3, 5, 5], 10, 1, EstimateMethod::Paired);
        assert_eq!(p.best_arm(), 1);
        assert!(p.has_tied_max());
        assert_eq!(p.gap(), 0.0);
        assert_eq!(argmin(&[2.0, 1.0, 1.0]), 1);
    }
}

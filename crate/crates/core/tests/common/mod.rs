//! Naive enumeration oracles shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;

/// All `m`-element index subsets of `0..n`, in no particular order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

fn subset_sum(col: &[f64], idx: &[usize]) -> f64 {
    idx.iter().fold(0.0, |acc, &i| acc + col[i])
}

fn winners(values: &[f64], counts: &mut [u128]) {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for (c, &v) in counts.iter_mut().zip(values) {
        if v >= best {
            *c += 1;
        }
    }
}

/// Counts over every tuple that picks one entry from each list.
pub fn cross_counts(lists: &[Vec<f64>]) -> Vec<u128> {
    let k = lists.len();
    let mut counts = vec![0u128; k];
    let mut idx = vec![0usize; k];
    let mut values = vec![0.0; k];
    loop {
        for j in 0..k {
            values[j] = lists[j][idx[j]];
        }
        winners(&values, &mut counts);
        let mut j = 0;
        loop {
            if j == k {
                return counts;
            }
            idx[j] += 1;
            if idx[j] < lists[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Independent M-sum counts by full enumeration of subset tuples.
pub fn brute_independent(columns: &[Vec<f64>], m: usize) -> Vec<u128> {
    let subs = subsets(columns[0].len(), m);
    let sums: Vec<Vec<f64>> = columns
        .iter()
        .map(|c| subs.iter().map(|s| subset_sum(c, s)).collect())
        .collect();
    cross_counts(&sums)
}

/// Paired M-sum counts: every arm uses the same subset.
pub fn brute_paired(columns: &[Vec<f64>], m: usize) -> Vec<u128> {
    let mut counts = vec![0u128; columns.len()];
    for s in subsets(columns[0].len(), m) {
        let values: Vec<f64> = columns.iter().map(|c| subset_sum(c, &s)).collect();
        winners(&values, &mut counts);
    }
    counts
}

/// Random small-integer log with plenty of ties.
pub fn random_integer_log<R: Rng>(rng: &mut R, k: usize, n: usize, max: i32) -> Vec<Vec<f64>> {
    (0..k)
        .map(|_| (0..n).map(|_| rng.random_range(0..=max) as f64).collect())
        .collect()
}

//! Matching (bottleneck) distance between persistence diagrams.
//!
//! Finite points may be matched to each other or to the diagonal, with
//! ∞-norm costs. Essential classes are matched only among themselves by
//! birth; a difference in their number makes the distance infinite.

use crate::matching::hopcroft_karp;
use crate::persistence::{DegreeDiagram, PersistenceDiagram};

/// Slack used when comparing a distance with an upper bound for `d_G`.
pub const STABILITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WitnessEntry {
    Points { left: (f64, f64), right: (f64, f64) },
    LeftToDiagonal((f64, f64)),
    RightToDiagonal((f64, f64)),
    Essentials { left: f64, right: f64 },
    UnmatchedLeftEssential(f64),
    UnmatchedRightEssential(f64),
}

fn point_cost(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn diagonal_cost(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

impl WitnessEntry {
    pub fn cost(&self) -> f64 {
        match *self {
            WitnessEntry::Points { left, right } => point_cost(left, right),
            WitnessEntry::LeftToDiagonal(p) | WitnessEntry::RightToDiagonal(p) => diagonal_cost(p),
            WitnessEntry::Essentials { left, right } => (left - right).abs(),
            WitnessEntry::UnmatchedLeftEssential(_) | WitnessEntry::UnmatchedRightEssential(_) => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchingResult {
    pub degree: usize,
    /// `f64::INFINITY` when essential counts differ.
    pub distance: f64,
    pub witness: Vec<WitnessEntry>,
}

impl MatchingResult {
    /// Largest cost in the witness; equals `distance` by construction.
    pub fn witness_cost(&self) -> f64 {
        self.witness.iter().map(WitnessEntry::cost).fold(0.0, f64::max)
    }
}

/// Bottleneck distance between two degree diagrams, with an optimal matching.
pub fn bottleneck_degree(left: &DegreeDiagram, right: &DegreeDiagram, degree: usize) -> MatchingResult {
    let mut witness = finite_matching(&left.pairs, &right.pairs);
    witness.extend(essential_matching(&left.essential, &right.essential));
    let distance = witness.iter().map(WitnessEntry::cost).fold(0.0, f64::max);
    MatchingResult { degree, distance, witness }
}

pub fn bottleneck_distance(left: &PersistenceDiagram, right: &PersistenceDiagram, degree: usize) -> MatchingResult {
    bottleneck_degree(left.degree(degree), right.degree(degree), degree)
}

/// Per-degree results and their maximum.
pub fn bottleneck_aggregate(
    left: &PersistenceDiagram,
    right: &PersistenceDiagram,
    degrees: impl IntoIterator<Item = usize>,
) -> (f64, Vec<MatchingResult>) {
    let results: Vec<MatchingResult> = degrees.into_iter().map(|n| bottleneck_distance(left, right, n)).collect();
    let agg = results.iter().map(|r| r.distance).fold(0.0, f64::max);
    (agg, results)
}

/// Whether `max_n D_match(left_n, right_n) ≤ dg_upper` (up to
/// [`STABILITY_SLACK`]) over the given degrees.
pub fn verify_stability(
    left: &PersistenceDiagram,
    right: &PersistenceDiagram,
    dg_upper: f64,
    degrees: impl IntoIterator<Item = usize>,
) -> bool {
    bottleneck_aggregate(left, right, degrees).0 <= dg_upper + STABILITY_SLACK
}

/// Sorted pairing is optimal for the bottleneck cost on the real line.
fn essential_matching(left: &[f64], right: &[f64]) -> Vec<WitnessEntry> {
    let mut l = left.to_vec();
    let mut r = right.to_vec();
    l.sort_by(f64::total_cmp);
    r.sort_by(f64::total_cmp);
    let mut out: Vec<WitnessEntry> =
        l.iter().zip(&r).map(|(&a, &b)| WitnessEntry::Essentials { left: a, right: b }).collect();
    out.extend(l.iter().skip(r.len()).map(|&b| WitnessEntry::UnmatchedLeftEssential(b)));
    out.extend(r.iter().skip(l.len()).map(|&b| WitnessEntry::UnmatchedRightEssential(b)));
    out
}

/// Perfect matching on the augmented point sets (each side extended by the
/// diagonal projections of the other side), minimising the largest cost.
fn finite_matching(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<WitnessEntry> {
    let (n1, n2) = (a.len(), b.len());
    if n1 + n2 == 0 {
        return Vec::new();
    }
    let mut candidates: Vec<f64> = vec![0.0];
    for &p in a {
        candidates.push(diagonal_cost(p));
        candidates.extend(b.iter().map(|&q| point_cost(p, q)));
    }
    candidates.extend(b.iter().map(|&q| diagonal_cost(q)));
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // left: a_0..a_{n1-1}, then diagonal copies of b; right: b_0..b_{n2-1},
    // then diagonal copies of a.
    let graph = |t: f64| -> Vec<Vec<usize>> {
        let mut adj = Vec::with_capacity(n1 + n2);
        for (i, &p) in a.iter().enumerate() {
            let mut row: Vec<usize> = (0..n2).filter(|&j| point_cost(p, b[j]) <= t).collect();
            if diagonal_cost(p) <= t {
                row.push(n2 + i);
            }
            adj.push(row);
        }
        for (j, &q) in b.iter().enumerate() {
            let mut row = Vec::with_capacity(n1 + 1);
            if diagonal_cost(q) <= t {
                row.push(j);
            }
            row.extend((0..n1).map(|i| n2 + i));
            adj.push(row);
        }
        adj
    };
    let perfect = |t: f64| hopcroft_karp(&graph(t), n1 + n2).iter().all(Option::is_some);

    // the last candidate always admits a perfect matching (everything to the diagonal)
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let mate = hopcroft_karp(&graph(candidates[lo]), n1 + n2);
    let mut out = Vec::new();
    for (l, m) in mate.iter().enumerate() {
        let r = m.expect("perfect matching");
        match (l < n1, r < n2) {
            (true, true) => out.push(WitnessEntry::Points { left: a[l], right: b[r] }),
            (true, false) => out.push(WitnessEntry::LeftToDiagonal(a[l])),
            (false, true) => out.push(WitnessEntry::RightToDiagonal(b[r])),
            (false, false) => {}
        }
    }
    out
}

//! Baseline ranking methods: SVD, least squares, seriation on two
//! similarity measures, and random-walk centrality in three variants.

use nalgebra::DMatrix;

use crate::data::{ComparisonData, Kind, Ranking, ranking_from_scores};
use crate::error::{RankError, Result};
use crate::linalg::{stationary_distribution, symmetric_eigen};
use crate::metrics::count_upsets;

/// Convergence settings for the stationary-distribution power iteration.
pub const STATIONARY_TOL: f64 = 1e-10;
pub const STATIONARY_MAX_ITER: usize = 100_000;

/// Symmetric nonnegative player-similarity matrix.
#[derive(Debug, Clone)]
pub struct SimilarityMatrix(pub DMatrix<f64>);

/// Row-stochastic random-walk matrix.
#[derive(Debug, Clone)]
pub struct TransitionMatrix(pub DMatrix<f64>);

impl TransitionMatrix {
    /// Rows must sum to one within 1e-12 and entries must be nonnegative.
    pub fn validate(&self) -> bool {
        let p = &self.0;
        (0..p.nrows()).all(|i| {
            let row_sum: f64 = p.row(i).iter().sum();
            (row_sum - 1.0).abs() < 1e-12 && p.row(i).iter().all(|&x| x >= 0.0)
        })
    }
}

/// Pick the candidate ranking with the fewest upsets against `c`.
/// Ties keep the earliest candidate, making the choice deterministic.
fn min_upsets(c: &ComparisonData, candidates: Vec<Ranking>) -> Result<Ranking> {
    let mut best: Option<(usize, Ranking)> = None;
    for cand in candidates {
        let u = count_upsets(c, &cand)?;
        if best.as_ref().map_or(true, |(bu, _)| u < *bu) {
            best = Some((u, cand));
        }
    }
    Ok(best.expect("at least one candidate").1)
}

/// Rank by the top two singular vectors of the materialized comparison
/// matrix, trying both sort directions of each and keeping the candidate
/// with the fewest upsets.
pub fn rank_svd(c: &ComparisonData) -> Result<Ranking> {
    if c.n < 2 {
        return Err(RankError::BadSpec("need n >= 2".into()));
    }
    let m = c.materialize();
    let svd = m.svd(true, false);
    let u = svd.u.as_ref().ok_or(RankError::DegenerateSpectrum)?;
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());
    if svd.singular_values[idx[0]] <= 0.0 {
        return Err(RankError::DegenerateSpectrum);
    }
    let mut candidates = Vec::new();
    for &k in idx.iter().take(2) {
        let col: Vec<f64> = u.column(k).iter().copied().collect();
        candidates.push(ranking_from_scores(&col, false));
        candidates.push(ranking_from_scores(&col, true));
    }
    min_upsets(c, candidates)
}

/// Least-squares potentials on the comparison graph.
///
/// Solves `min ||Bx - w||^2` through the graph-Laplacian normal equations
/// with the zero-mean gauge, where row `e = (i, j)` of the incidence matrix
/// gives `x_j - x_i ~ C_ij`. Larger potentials mean stronger players.
pub fn ls_potentials(c: &ComparisonData) -> Result<Vec<f64>> {
    let n = c.n;
    if !c.is_connected() {
        return Err(RankError::SingularSystem);
    }
    let mut lap = DMatrix::<f64>::zeros(n, n);
    let mut b = nalgebra::DVector::<f64>::zeros(n);
    for e in &c.edges {
        lap[(e.i, e.i)] += 1.0;
        lap[(e.j, e.j)] += 1.0;
        lap[(e.i, e.j)] -= 1.0;
        lap[(e.j, e.i)] -= 1.0;
        // b_v = sum over neighbors u of C_uv
        b[e.i] -= e.value;
        b[e.j] += e.value;
    }
    // pin the gauge: L + J/n is positive definite on connected graphs and
    // leaves the zero-mean solution of Lx = b unchanged
    let jn = 1.0 / n as f64;
    for i in 0..n {
        for j in 0..n {
            lap[(i, j)] += jn;
        }
    }
    let chol = lap.cholesky().ok_or(RankError::SingularSystem)?;
    Ok(chol.solve(&b).iter().copied().collect())
}

/// Least-squares ranking; the direction with fewer upsets wins.
pub fn rank_ls(c: &ComparisonData) -> Result<Ranking> {
    let x = ls_potentials(c)?;
    let candidates = vec![ranking_from_scores(&x, true), ranking_from_scores(&x, false)];
    min_upsets(c, candidates)
}

/// Which similarity the seriation ranking is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SerialVariant {
    /// Count of matching comparisons against third parties.
    Match,
    /// Generalized-linear-model similarity; uses comparison magnitudes.
    Glm,
}

/// Matching-comparisons similarity. The input sign matrix gets a unit
/// diagonal before the count, so `0 <= S_ij <= n`.
pub fn s_match(c: &ComparisonData) -> SimilarityMatrix {
    let n = c.n;
    let mut cs = c.signed().materialize();
    for i in 0..n {
        cs[(i, i)] = 1.0;
    }
    let ones = DMatrix::<f64>::from_element(n, n, 1.0);
    let s = (ones * n as f64 + &cs * cs.transpose()) * 0.5;
    SimilarityMatrix(s)
}

/// GLM similarity. Unobserved third-party comparisons contribute 1/2;
/// cardinal magnitudes are rescaled to [-1, 1] by n - 1.
pub fn s_glm(c: &ComparisonData) -> SimilarityMatrix {
    let n = c.n;
    let a = c.adjacency();
    let mut cm = c.materialize();
    if c.kind == Kind::Cardinal {
        cm /= (n - 1) as f64;
    }
    let mut s = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                if a[(i, k)] * a[(j, k)] > 0.0 {
                    acc += 1.0 - (cm[(i, k)] - cm[(j, k)]).abs() / 2.0;
                } else {
                    acc += 0.5;
                }
            }
            s[(i, j)] = acc;
        }
    }
    SimilarityMatrix(s)
}

/// Seriation ranking: order players along the Fiedler vector of the
/// similarity Laplacian, then pick the direction with fewer upsets.
pub fn serial_rank(c: &ComparisonData, variant: SerialVariant) -> Result<Ranking> {
    if c.n < 3 {
        return Err(RankError::BadSpec("seriation needs n >= 3".into()));
    }
    let s = match variant {
        SerialVariant::Match => s_match(c),
        SerialVariant::Glm => s_glm(c),
    }
    .0;
    let n = c.n;
    let mut lap = -s.clone();
    for i in 0..n {
        let d: f64 = s.row(i).iter().sum();
        lap[(i, i)] += d;
    }
    let (vals, vecs) = symmetric_eigen(&lap);
    let scale = vals[n - 1].abs().max(1.0);
    let zero_multiplicity = vals.iter().filter(|&&v| v.abs() < 1e-9 * scale).count();
    if zero_multiplicity > 1 {
        return Err(RankError::DisconnectedSimilarityGraph(zero_multiplicity));
    }
    let fiedler: Vec<f64> = vecs.column(1).iter().copied().collect();
    let candidates = vec![ranking_from_scores(&fiedler, false), ranking_from_scores(&fiedler, true)];
    min_upsets(c, candidates)
}

/// How winning probabilities are derived for the adjusted random-walk
/// ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralityVariant {
    AdjustedOrdinal,
    AdjustedCardinal,
}

/// Winning-probability matrix for the adjusted variants.
///
/// `A_ij` estimates the probability that `j` beats `i`; `C_ij > 0` means `j`
/// is the better player, so `A_ij > 1/2` on that branch. The cardinal branch
/// uses `1/2 + |C_ij| / (2(n-1))` and its complement on the opposite sign,
/// keeping `A_ij + A_ji = 1`.
pub fn winning_probabilities(c: &ComparisonData, variant: CentralityVariant) -> DMatrix<f64> {
    let n = c.n;
    let mut a = DMatrix::<f64>::zeros(n, n);
    match variant {
        CentralityVariant::AdjustedOrdinal => {
            let s = s_match(c).0;
            for e in &c.edges {
                let frac = s[(e.i, e.j)] / (2.0 * n as f64);
                if e.value > 0.0 {
                    a[(e.i, e.j)] = 1.0 - frac;
                    a[(e.j, e.i)] = frac;
                } else if e.value < 0.0 {
                    a[(e.i, e.j)] = frac;
                    a[(e.j, e.i)] = 1.0 - frac;
                }
            }
        }
        CentralityVariant::AdjustedCardinal => {
            for e in &c.edges {
                let p = 0.5 + e.value.abs() / (2.0 * (n - 1) as f64);
                if e.value > 0.0 {
                    a[(e.i, e.j)] = p;
                    a[(e.j, e.i)] = 1.0 - p;
                } else if e.value < 0.0 {
                    a[(e.i, e.j)] = 1.0 - p;
                    a[(e.j, e.i)] = p;
                }
            }
        }
    }
    a
}

/// Scale winning probabilities into a lazy random walk; `d_max` is the
/// maximum degree of the comparison graph.
pub fn transition_matrix(a: &DMatrix<f64>, d_max: usize) -> TransitionMatrix {
    let n = a.nrows();
    let mut p = a / d_max.max(1) as f64;
    for i in 0..n {
        p[(i, i)] = 0.0;
        let off: f64 = p.row(i).iter().sum();
        p[(i, i)] = 1.0 - off;
    }
    TransitionMatrix(p)
}

fn rank_by_stationary(p: &TransitionMatrix) -> Result<Ranking> {
    let pi = stationary_distribution(&p.0, STATIONARY_TOL, STATIONARY_MAX_ITER)?;
    Ok(ranking_from_scores(&pi, true))
}

/// Random-walk centrality ranking with the adjusted winning probabilities.
pub fn rank_centrality(c: &ComparisonData, variant: CentralityVariant) -> Result<Ranking> {
    if !c.is_connected() {
        return Err(RankError::NotIrreducible);
    }
    let a = winning_probabilities(c, variant);
    let d_max = c.degrees().into_iter().max().unwrap_or(0);
    let p = transition_matrix(&a, d_max);
    rank_by_stationary(&p)
}

/// One head-to-head match: players `i` and `j`, and the index of the winner
/// (which must be one of the two).
#[derive(Debug, Clone, Copy)]
pub struct MatchOutcome {
    pub i: usize,
    pub j: usize,
    pub winner: usize,
}

/// The original win-fraction random-walk ranking over repeated matches.
pub fn rank_centrality_original(n: usize, matches: &[MatchOutcome]) -> Result<Ranking> {
    if matches.is_empty() {
        return Err(RankError::EmptyInput("no matches".into()));
    }
    let a = win_fraction_matrix(n, matches)?;
    let mut degrees = vec![std::collections::HashSet::new(); n];
    for m in matches {
        degrees[m.i].insert(m.j);
        degrees[m.j].insert(m.i);
    }
    let d_max = degrees.iter().map(|s| s.len()).max().unwrap_or(0);
    let p = transition_matrix(&a, d_max);
    rank_by_stationary(&p)
}

/// `A_ij = a_ij / (a_ij + a_ji)` where `a_ij` is the fraction of matches
/// between the pair won by `j`.
pub fn win_fraction_matrix(n: usize, matches: &[MatchOutcome]) -> Result<DMatrix<f64>> {
    let mut wins = DMatrix::<f64>::zeros(n, n);
    let mut played = DMatrix::<f64>::zeros(n, n);
    for m in matches {
        if m.i >= n || m.j >= n {
            return Err(RankError::IndexOutOfBounds(m.i.max(m.j), n));
        }
        if m.i == m.j {
            return Err(RankError::SelfComparison(m.i));
        }
        if m.winner != m.i && m.winner != m.j {
            return Err(RankError::BadSpec(format!("winner {} not in pair ({}, {})", m.winner, m.i, m.j)));
        }
        played[(m.i, m.j)] += 1.0;
        played[(m.j, m.i)] += 1.0;
        // wins[(i, j)] counts matches in which j beat i
        let (loser, winner) = if m.winner == m.i { (m.j, m.i) } else { (m.i, m.j) };
        wins[(loser, winner)] += 1.0;
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if played[(i, j)] > 0.0 {
                let aij = wins[(i, j)] / played[(i, j)];
                let aji = wins[(j, i)] / played[(j, i)];
                if aij + aji > 0.0 {
                    a[(i, j)] = aij / (aij + aji);
                }
            }
        }
    }
    Ok(a)
}

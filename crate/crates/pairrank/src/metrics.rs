//! Ranking quality metrics: Kendall distance, upsets, and the two
//! correlation scores, each evaluated once per undirected edge (ordered
//! `i < j`).

use serde::{Deserialize, Serialize};

use crate::data::{ComparisonData, Edge, Ranking};
use crate::error::{RankError, Result};

/// All quality metrics of a recovered ranking against comparison data, plus
/// the Kendall distance to a reference ranking when one is available.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricReport {
    pub kendall_distance: f64,
    pub kendall_correlation: f64,
    pub upsets: usize,
    pub score: f64,
    pub weighted_score: f64,
}

impl MetricReport {
    pub fn compute(c: &ComparisonData, recovered: &Ranking, truth: &Ranking) -> Result<Self> {
        let kd = kendall_distance(recovered, truth)?;
        let upsets = count_upsets(c, recovered)?;
        let (score, weighted_score) = correlation_scores(c, recovered)?;
        Ok(Self { kendall_distance: kd, kendall_correlation: 1.0 - 2.0 * kd, upsets, score, weighted_score })
    }
}

fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(RankError::SizeMismatch { expected: a, got: b });
    }
    Ok(())
}

/// Fraction of player pairs ordered differently by the two rankings.
pub fn kendall_distance(a: &Ranking, b: &Ranking) -> Result<f64> {
    check_same_n(a.n(), b.n())?;
    let n = a.n();
    if n < 2 {
        return Err(RankError::SizeMismatch { expected: 2, got: n });
    }
    let mut discordant = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let da = a.rank_of[i] as i64 - a.rank_of[j] as i64;
            let db = b.rank_of[i] as i64 - b.rank_of[j] as i64;
            if da * db < 0 {
                discordant += 1;
            }
        }
    }
    Ok(discordant as f64 / (n * (n - 1) / 2) as f64)
}

/// Kendall distance between two rankings restricted to a subset of players,
/// comparing only the relative order within the subset.
pub fn kendall_distance_on(a: &Ranking, b: &Ranking, subset: &[usize]) -> Result<f64> {
    check_same_n(a.n(), b.n())?;
    let m = subset.len();
    if m < 2 {
        return Err(RankError::SizeMismatch { expected: 2, got: m });
    }
    let mut discordant = 0usize;
    for x in 0..m {
        for y in (x + 1)..m {
            let (i, j) = (subset[x], subset[y]);
            let da = a.rank_of[i] as i64 - a.rank_of[j] as i64;
            let db = b.rank_of[i] as i64 - b.rank_of[j] as i64;
            if da * db < 0 {
                discordant += 1;
            }
        }
    }
    Ok(discordant as f64 / (m * (m - 1) / 2) as f64)
}

/// Number of observed comparisons whose direction contradicts the ranking:
/// edges with `sign(C_ij * (r_i - r_j)) = -1`.
pub fn count_upsets(c: &ComparisonData, r: &Ranking) -> Result<usize> {
    check_same_n(c.n, r.n())?;
    let mut upsets = 0usize;
    for e in &c.edges {
        let chat = r.rank_of[e.i] as f64 - r.rank_of[e.j] as f64;
        if e.value.signum() * chat.signum() == -1.0 {
            upsets += 1;
        }
    }
    Ok(upsets)
}

/// The two correlation scores (higher is better):
/// `Q_s = sum C_ij * sign(r_i - r_j)` and `Q_w = sum C_ij * (r_i - r_j)`
/// over observed edges with `i < j`.
pub fn correlation_scores(c: &ComparisonData, r: &Ranking) -> Result<(f64, f64)> {
    check_same_n(c.n, r.n())?;
    let mut qs = 0.0;
    let mut qw = 0.0;
    for e in &c.edges {
        let chat = r.rank_of[e.i] as f64 - r.rank_of[e.j] as f64;
        qs += e.value * chat.signum();
        qw += e.value * chat;
    }
    Ok((qs, qw))
}

/// Rank offsets `r_i - r_j` induced by `r`, exactly on the support of `c`.
pub fn induced_offsets(r: &Ranking, c: &ComparisonData) -> Result<Vec<Edge>> {
    check_same_n(c.n, r.n())?;
    Ok(c.edges
        .iter()
        .map(|e| Edge { i: e.i, j: e.j, value: r.rank_of[e.i] as f64 - r.rank_of[e.j] as f64 })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Kind;

    fn rk(v: &[usize]) -> Ranking {
        Ranking::new(v.to_vec()).unwrap()
    }

    #[test]
    fn kendall_identity_and_reversal() {
        let a = rk(&[1, 2, 3, 4, 5]);
        let b = rk(&[5, 4, 3, 2, 1]);
        assert_eq!(kendall_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(kendall_distance(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn kendall_single_swap() {
        // enumerate the 3 pairs by hand: only (1,2) disagrees
        let a = rk(&[1, 2, 3]);
        let b = rk(&[1, 3, 2]);
        assert!((kendall_distance(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn kendall_size_mismatch() {
        let a = rk(&[1, 2, 3]);
        let b = rk(&[1, 2]);
        assert!(matches!(kendall_distance(&a, &b), Err(RankError::SizeMismatch { .. })));
    }

    #[test]
    fn upsets_noiseless_is_zero() {
        // complete cardinal data from the identity ranking
        let n = 5;
        let truth = Ranking::identity(n);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j, truth.rank_of[i] as f64 - truth.rank_of[j] as f64));
            }
        }
        let c = ComparisonData::build(n, edges, Kind::Cardinal).unwrap();
        assert_eq!(count_upsets(&c, &truth).unwrap(), 0);
    }

    #[test]
    fn upset_single_edge_sign_check() {
        // C_01 = +1 says player 1 is the better one; ranking player 0 above
        // player 1 contradicts it.
        let c = ComparisonData::build(2, [(0, 1, 1.0)], Kind::Ordinal).unwrap();
        let r = rk(&[1, 2]);
        assert_eq!(count_upsets(&c, &r).unwrap(), 1);
        let r = rk(&[2, 1]);
        assert_eq!(count_upsets(&c, &r).unwrap(), 0);
    }

    #[test]
    fn upsets_empty_edges() {
        let c = ComparisonData::build(3, std::iter::empty(), Kind::Cardinal).unwrap();
        assert_eq!(count_upsets(&c, &rk(&[1, 2, 3])).unwrap(), 0);
    }

    #[test]
    fn correlation_scores_zero_measurements() {
        let c = ComparisonData::build(3, [(0, 1, 0.0), (1, 2, 0.0)], Kind::Cardinal).unwrap();
        assert_eq!(correlation_scores(&c, &rk(&[1, 2, 3])).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn weighted_score_complete_noiseless_n3() {
        // offsets (1-2), (1-3), (2-3): squared 1 + 4 + 1 = 6
        let truth = Ranking::identity(3);
        let c = ComparisonData::build(
            3,
            [(0, 1, -1.0), (0, 2, -2.0), (1, 2, -1.0)],
            Kind::Cardinal,
        )
        .unwrap();
        let (_, qw) = correlation_scores(&c, &truth).unwrap();
        assert_eq!(qw, 6.0);
    }

    #[test]
    fn scores_negate_with_sign_flip() {
        let c = ComparisonData::build(4, [(0, 1, 2.0), (1, 3, -1.0), (2, 3, 3.0)], Kind::Cardinal).unwrap();
        let flipped = ComparisonData::build(
            4,
            c.edges.iter().map(|e| (e.i, e.j, -e.value)),
            Kind::Cardinal,
        )
        .unwrap();
        let r = rk(&[3, 1, 4, 2]);
        let (qs, qw) = correlation_scores(&c, &r).unwrap();
        let (fqs, fqw) = correlation_scores(&flipped, &r).unwrap();
        assert_eq!(qs, -fqs);
        assert_eq!(qw, -fqw);
    }

    #[test]
    fn induced_offsets_path_graph() {
        let c = ComparisonData::build(3, [(0, 1, 1.0), (1, 2, 1.0)], Kind::Ordinal).unwrap();
        let out = induced_offsets(&Ranking::identity(3), &c).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].value, -1.0);
        assert_eq!(out[1].value, -1.0);
    }

    #[test]
    fn induced_offsets_empty_graph() {
        let c = ComparisonData::build(4, std::iter::empty(), Kind::Cardinal).unwrap();
        assert!(induced_offsets(&rk(&[2, 1, 4, 3]), &c).unwrap().is_empty());
    }
}

//! Comparison data and rankings.
//!
//! The sign convention follows the cardinal model `C_ij = r_i - r_j`, where
//! rank 1 is the best player. `C_ij > 0` therefore means player `i` carries a
//! larger rank number than `j`, i.e. `j` is the stronger player. Every method
//! and metric in this crate uses this convention.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{RankError, Result};

/// Maximum n for which a dense matrix may be materialized.
pub const DENSE_CAP: usize = 5000;

/// Whether comparison values are numeric rank offsets or binary preferences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cardinal,
    Ordinal,
}

/// One observed comparison, stored canonically with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    /// Rank offset `C_ij` (cardinal) or sign (ordinal).
    pub value: f64,
}

/// Sparse skew-symmetric matrix of observed pairwise rank offsets, together
/// with its undirected measurement graph.
///
/// Only the upper triangle is stored; `C_ji = -C_ij` is implied and the
/// diagonal is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonData {
    pub n: usize,
    pub edges: Vec<Edge>,
    pub kind: Kind,
}

impl ComparisonData {
    /// Canonicalize and validate an edge list.
    ///
    /// Edges with `i > j` are flipped (negating the value); duplicates and
    /// self-comparisons are rejected. Cardinal values must satisfy
    /// `|c| <= n - 1`; ordinal values must be exactly `-1` or `+1`.
    pub fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>, kind: Kind) -> Result<Self> {
        let mut canon: Vec<Edge> = Vec::new();
        for (i, j, value) in edges {
            if i >= n {
                return Err(RankError::IndexOutOfBounds(i, n));
            }
            if j >= n {
                return Err(RankError::IndexOutOfBounds(j, n));
            }
            if i == j {
                return Err(RankError::SelfComparison(i));
            }
            if !value.is_finite() {
                return Err(RankError::ValueOutOfRange { i, j, value, reason: "non-finite".into() });
            }
            let (i, j, value) = if i < j { (i, j, value) } else { (j, i, -value) };
            match kind {
                Kind::Cardinal => {
                    if value.abs() > (n - 1) as f64 {
                        return Err(RankError::ValueOutOfRange {
                            i,
                            j,
                            value,
                            reason: format!("|c| exceeds n-1 = {}", n - 1),
                        });
                    }
                }
                Kind::Ordinal => {
                    if value != 1.0 && value != -1.0 {
                        return Err(RankError::ValueOutOfRange {
                            i,
                            j,
                            value,
                            reason: "ordinal values must be -1 or +1".into(),
                        });
                    }
                }
            }
            canon.push(Edge { i, j, value });
        }
        canon.sort_by_key(|e| (e.i, e.j));
        for w in canon.windows(2) {
            if w[0].i == w[1].i && w[0].j == w[1].j {
                return Err(RankError::DuplicateEdge(w[0].i, w[0].j));
            }
        }
        Ok(Self { n, edges: canon, kind })
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Dense skew-symmetric matrix with zero diagonal.
    pub fn materialize(&self) -> DMatrix<f64> {
        assert!(self.n <= DENSE_CAP, "n = {} exceeds dense cap {}", self.n, DENSE_CAP);
        let mut m = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            m[(e.i, e.j)] = e.value;
            m[(e.j, e.i)] = -e.value;
        }
        m
    }

    /// Dense 0/1 adjacency of the measurement graph.
    pub fn adjacency(&self) -> DMatrix<f64> {
        assert!(self.n <= DENSE_CAP);
        let mut a = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.i, e.j)] = 1.0;
            a[(e.j, e.i)] = 1.0;
        }
        a
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for e in &self.edges {
            d[e.i] += 1;
            d[e.j] += 1;
        }
        d
    }

    /// Sign the values, turning cardinal data into ordinal data.
    ///
    /// Edges whose cardinal value is exactly zero are dropped (zero encodes a
    /// missing comparison in the ordinal model).
    pub fn signed(&self) -> ComparisonData {
        let edges = self
            .edges
            .iter()
            .filter(|e| e.value != 0.0)
            .map(|e| Edge { i: e.i, j: e.j, value: e.value.signum() })
            .collect();
        ComparisonData { n: self.n, edges, kind: Kind::Ordinal }
    }

    /// Connected components of the measurement graph, each sorted ascending.
    /// Components are ordered by descending size, ties by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.i), find(&mut parent, e.j));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Restriction to a subset of players, re-indexed densely in the order of
    /// `subset` (which must be sorted ascending).
    pub fn restrict(&self, subset: &[usize]) -> ComparisonData {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &v) in subset.iter().enumerate() {
            pos[v] = k;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.i] != usize::MAX && pos[e.j] != usize::MAX)
            .map(|e| Edge { i: pos[e.i], j: pos[e.j], value: e.value })
            .collect();
        ComparisonData { n: subset.len(), edges, kind: self.kind }
    }

    /// Apply a player relabeling: player `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ComparisonData> {
        if perm.len() != self.n {
            return Err(RankError::SizeMismatch { expected: self.n, got: perm.len() });
        }
        ComparisonData::build(
            self.n,
            self.edges.iter().map(|e| (perm[e.i], perm[e.j], e.value)),
            self.kind,
        )
    }
}

/// A permutation of the players: `rank_of[p]` is the rank of player `p`,
/// with rank 1 the best. Optionally carries the real scores or angles the
/// ranking was derived from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub rank_of: Vec<usize>,
    pub scores: Option<Vec<f64>>,
}

impl Ranking {
    pub fn new(rank_of: Vec<usize>) -> Result<Self> {
        let n = rank_of.len();
        let mut seen = vec![false; n + 1];
        for &r in &rank_of {
            if r < 1 || r > n || seen[r] {
                return Err(RankError::BadSpec(format!("rank_of is not a bijection onto 1..={n}")));
            }
            seen[r] = true;
        }
        Ok(Self { rank_of, scores: None })
    }

    pub fn with_scores(mut self, scores: Vec<f64>) -> Self {
        self.scores = Some(scores);
        self
    }

    pub fn n(&self) -> usize {
        self.rank_of.len()
    }

    /// Identity ranking: player p gets rank p + 1.
    pub fn identity(n: usize) -> Self {
        Self { rank_of: (1..=n).collect(), scores: None }
    }

    /// Players listed best-first.
    pub fn order(&self) -> Vec<usize> {
        let mut ord = vec![0usize; self.n()];
        for (p, &r) in self.rank_of.iter().enumerate() {
            ord[r - 1] = p;
        }
        ord
    }

    /// Build a ranking from an ordering of players (best first).
    pub fn from_order(order: &[usize]) -> Self {
        let mut rank_of = vec![0usize; order.len()];
        for (pos, &p) in order.iter().enumerate() {
            rank_of[p] = pos + 1;
        }
        Self { rank_of, scores: None }
    }
}

/// Rank players by score, ties broken by ascending player index.
///
/// With `descending = false` the smallest score gets rank 1.
pub fn ranking_from_scores(scores: &[f64], descending: bool) -> Ranking {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| {
        let ord = scores[a].partial_cmp(&scores[b]).unwrap_or(std::cmp::Ordering::Equal);
        let ord = if descending { ord.reverse() } else { ord };
        ord.then(a.cmp(&b))
    });
    Ranking::from_order(&idx).with_scores(scores.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_minimal() {
        let c = ComparisonData::build(3, [(0, 1, 2.0)], Kind::Cardinal).unwrap();
        assert_eq!(c.num_edges(), 1);
        assert_eq!(c.edges[0], Edge { i: 0, j: 1, value: 2.0 });
    }

    #[test]
    fn build_rejects_duplicate_after_canonicalization() {
        let err = ComparisonData::build(3, [(0, 1, 2.0), (1, 0, -2.0)], Kind::Cardinal).unwrap_err();
        assert!(matches!(err, RankError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn build_rejects_self_comparison() {
        let err = ComparisonData::build(3, [(0, 0, 1.0)], Kind::Cardinal).unwrap_err();
        assert!(matches!(err, RankError::SelfComparison(0)));
    }

    #[test]
    fn build_rejects_out_of_range() {
        let err = ComparisonData::build(3, [(0, 1, 3.0)], Kind::Cardinal).unwrap_err();
        assert!(matches!(err, RankError::ValueOutOfRange { .. }));
        let err = ComparisonData::build(3, [(0, 1, 0.5)], Kind::Ordinal).unwrap_err();
        assert!(matches!(err, RankError::ValueOutOfRange { .. }));
    }

    #[test]
    fn canonicalization_flips_sign() {
        let c = ComparisonData::build(4, [(2, 1, 3.0)], Kind::Cardinal).unwrap();
        assert_eq!(c.edges[0], Edge { i: 1, j: 2, value: -3.0 });
    }

    #[test]
    fn materialized_matrix_is_skew_symmetric() {
        let c = ComparisonData::build(4, [(0, 1, 2.0), (2, 3, -1.0), (0, 3, 1.0)], Kind::Cardinal).unwrap();
        let m = c.materialize();
        assert_eq!(m, -m.transpose());
    }

    #[test]
    fn components_and_restrict() {
        let c = ComparisonData::build(5, [(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0)], Kind::Cardinal).unwrap();
        let comps = c.components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(!c.is_connected());
        let sub = c.restrict(&comps[0]);
        assert_eq!(sub.n, 3);
        assert_eq!(sub.num_edges(), 2);
    }

    #[test]
    fn ranking_rejects_non_bijection() {
        assert!(Ranking::new(vec![1, 1, 3]).is_err());
        assert!(Ranking::new(vec![1, 2, 4]).is_err());
        assert!(Ranking::new(vec![2, 1, 3]).is_ok());
    }

    #[test]
    fn scores_tie_break_by_index() {
        let r = ranking_from_scores(&[0.5, 0.5, 0.1], false);
        assert_eq!(r.rank_of, vec![2, 3, 1]);
        let r = ranking_from_scores(&[0.5, 0.5, 0.1], true);
        assert_eq!(r.rank_of, vec![1, 2, 3]);
    }
}

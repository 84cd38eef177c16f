//! Synthetic comparison-data generators.
//!
//! Three ensembles over an Erdos-Renyi measurement graph G(n, p):
//!
//! * `Mun` — multiplicative uniform noise: each observed offset is
//!   `(r_i - r_j)(1 + eps)` with `eps ~ Uniform[-eta, eta]`, rounded to the
//!   nearest nonzero integer of the same sign and capped at `n - 1`.
//! * `Ero` — outliers: each observed offset is exact with probability
//!   `1 - eta`, otherwise replaced by a discrete uniform draw from
//!   `[-(n-1), n-1]`.
//! * `Planted` — a planted subset of players whose internal comparisons are
//!   corrupted with probability `eta` while all remaining comparisons are
//!   corrupted with probability `eta2`.
//!
//! All generators are deterministic functions of the spec, including the
//! seed. The PRNG is ChaCha8 (recorded in generator metadata as "chacha8");
//! the ground-truth permutation is drawn first, then pairs are visited in
//! lexicographic order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{ComparisonData, Kind, Ranking};
use crate::error::{RankError, Result};

/// Name of the PRNG algorithm backing the generators.
pub const PRNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseModel {
    Mun,
    Ero,
    Planted,
}

impl std::fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoiseModel::Mun => write!(f, "mun"),
            NoiseModel::Ero => write!(f, "ero"),
            NoiseModel::Planted => write!(f, "planted"),
        }
    }
}

/// Parameters of one synthetic instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub model: NoiseModel,
    pub n: usize,
    /// Edge probability.
    pub p: f64,
    /// Noise level (corruption probability inside the planted set for
    /// `Planted`).
    pub eta: f64,
    /// Corruption probability outside the planted set (`Planted` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta2: Option<f64>,
    /// Planted fraction in (0, 1) (`Planted` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub kind: Kind,
    pub seed: u64,
}

impl NoiseSpec {
    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(RankError::BadSpec(format!("n = {} too small", self.n)));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(RankError::BadSpec(format!("p = {} outside [0, 1]", self.p)));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(RankError::BadSpec(format!("eta = {} outside [0, 1]", self.eta)));
        }
        if self.model == NoiseModel::Planted {
            let eta2 = self.eta2.ok_or_else(|| RankError::BadSpec("planted model needs eta2".into()))?;
            if !(0.0..=1.0).contains(&eta2) {
                return Err(RankError::BadSpec(format!("eta2 = {eta2} outside [0, 1]")));
            }
            let beta = self.beta.ok_or_else(|| RankError::BadSpec("planted model needs beta".into()))?;
            if !(0.0 < beta && beta < 1.0) {
                return Err(RankError::BadSpec(format!("beta = {beta} outside (0, 1)")));
            }
            if (beta * self.n as f64).round() < 2.0 {
                return Err(RankError::BadSpec("planted set needs beta * n >= 2".into()));
            }
        }
        Ok(())
    }
}

/// A generated instance: comparison data, the ground-truth ranking it was
/// derived from, and the planted low-noise subset when one exists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlantedInstance {
    pub data: ComparisonData,
    pub ground_truth: Ranking,
    pub planted_set: Option<Vec<usize>>,
}

fn rng_for(spec: &NoiseSpec) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(spec.seed)
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Ranking {
    let mut ranks: Vec<usize> = (1..=n).collect();
    // Fisher-Yates
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        ranks.swap(i, j);
    }
    Ranking::new(ranks).expect("permutation is a bijection")
}

fn outlier(n: usize, rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-(n as i64 - 1)..=(n as i64 - 1)) as f64
}

fn nonzero_outlier(n: usize, rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let v = outlier(n, rng);
        if v != 0.0 {
            return v;
        }
    }
}

/// Multiplicative-uniform-noise offset for a true offset `o`.
///
/// The rounded magnitude is kept at least 1 so the sign of the measurement
/// always matches the sign of `o` (the discrete form of the model never
/// produces zero for eta < 1), and is capped at `n - 1`.
fn mun_value(o: f64, eta: f64, n: usize, rng: &mut ChaCha8Rng) -> f64 {
    let eps: f64 = rng.gen_range(-eta..=eta);
    let noisy = o * (1.0 + eps);
    let mag = noisy.abs().round().max(1.0).min((n - 1) as f64);
    o.signum() * mag
}

/// Generate a multiplicative-uniform-noise instance.
pub fn gen_mun(spec: &NoiseSpec) -> Result<PlantedInstance> {
    if spec.model != NoiseModel::Mun {
        return Err(RankError::BadSpec(format!("gen_mun called with model {}", spec.model)));
    }
    spec.validate()?;
    let mut rng = rng_for(spec);
    let truth = random_permutation(spec.n, &mut rng);
    let mut edges = Vec::new();
    for i in 0..spec.n {
        for j in (i + 1)..spec.n {
            if rng.gen::<f64>() < spec.p {
                let o = truth.rank_of[i] as f64 - truth.rank_of[j] as f64;
                let v = mun_value(o, spec.eta, spec.n, &mut rng);
                let v = if spec.kind == Kind::Ordinal { v.signum() } else { v };
                edges.push((i, j, v));
            }
        }
    }
    let data = ComparisonData::build(spec.n, edges, spec.kind)?;
    Ok(PlantedInstance { data, ground_truth: truth, planted_set: None })
}

/// Generate an Erdos-Renyi-outliers instance.
pub fn gen_ero(spec: &NoiseSpec) -> Result<PlantedInstance> {
    if spec.model != NoiseModel::Ero {
        return Err(RankError::BadSpec(format!("gen_ero called with model {}", spec.model)));
    }
    spec.validate()?;
    let mut rng = rng_for(spec);
    let truth = random_permutation(spec.n, &mut rng);
    let mut edges = Vec::new();
    for i in 0..spec.n {
        for j in (i + 1)..spec.n {
            if rng.gen::<f64>() < spec.p {
                let v = ero_value(&truth, i, j, spec.eta, spec.n, spec.kind, &mut rng);
                edges.push((i, j, v));
            }
        }
    }
    let data = ComparisonData::build(spec.n, edges, spec.kind)?;
    Ok(PlantedInstance { data, ground_truth: truth, planted_set: None })
}

fn ero_value(
    truth: &Ranking,
    i: usize,
    j: usize,
    eta: f64,
    n: usize,
    kind: Kind,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let corrupted = rng.gen::<f64>() < eta;
    let v = if corrupted {
        // ordinal instances resample zero outliers: zero is reserved for
        // missing comparisons
        match kind {
            Kind::Ordinal => nonzero_outlier(n, rng),
            Kind::Cardinal => outlier(n, rng),
        }
    } else {
        truth.rank_of[i] as f64 - truth.rank_of[j] as f64
    };
    if kind == Kind::Ordinal {
        v.signum()
    } else {
        v
    }
}

/// Generate a planted-partial-ranking instance: comparisons inside the
/// planted set are corrupted with probability `eta`, all others with
/// probability `eta2`.
pub fn gen_planted(spec: &NoiseSpec) -> Result<PlantedInstance> {
    if spec.model != NoiseModel::Planted {
        return Err(RankError::BadSpec(format!("gen_planted called with model {}", spec.model)));
    }
    spec.validate()?;
    let eta2 = spec.eta2.unwrap();
    let beta = spec.beta.unwrap();
    let mut rng = rng_for(spec);
    let truth = random_permutation(spec.n, &mut rng);
    let size = (beta * spec.n as f64).round() as usize;
    // uniformly random subset via partial Fisher-Yates
    let mut pool: Vec<usize> = (0..spec.n).collect();
    for k in 0..size {
        let pick = rng.gen_range(k..spec.n);
        pool.swap(k, pick);
    }
    let mut planted: Vec<usize> = pool[..size].to_vec();
    planted.sort_unstable();
    let inside = vec![false; spec.n];
    let mut inside = inside;
    for &v in &planted {
        inside[v] = true;
    }
    let mut edges = Vec::new();
    for i in 0..spec.n {
        for j in (i + 1)..spec.n {
            if rng.gen::<f64>() < spec.p {
                let eta = if inside[i] && inside[j] { spec.eta } else { eta2 };
                let v = ero_value(&truth, i, j, eta, spec.n, spec.kind, &mut rng);
                edges.push((i, j, v));
            }
        }
    }
    let data = ComparisonData::build(spec.n, edges, spec.kind)?;
    Ok(PlantedInstance { data, ground_truth: truth, planted_set: Some(planted) })
}

/// Dispatch on the model.
pub fn generate(spec: &NoiseSpec) -> Result<PlantedInstance> {
    match spec.model {
        NoiseModel::Mun => gen_mun(spec),
        NoiseModel::Ero => gen_ero(spec),
        NoiseModel::Planted => gen_planted(spec),
    }
}

/// Derive a per-cell seed from a root seed (splitmix64 over the pair), so
/// benchmark cells are independent yet reproducible.
pub fn sub_seed(root: u64, cell: u64) -> u64 {
    let mut z = root ^ cell.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: NoiseModel, n: usize, p: f64, eta: f64, kind: Kind, seed: u64) -> NoiseSpec {
        NoiseSpec { model, n, p, eta, eta2: None, beta: None, kind, seed }
    }

    #[test]
    fn mun_zero_noise_is_exact() {
        let inst = gen_mun(&spec(NoiseModel::Mun, 12, 1.0, 0.0, Kind::Cardinal, 7)).unwrap();
        let r = &inst.ground_truth.rank_of;
        assert_eq!(inst.data.num_edges(), 12 * 11 / 2);
        for e in &inst.data.edges {
            assert_eq!(e.value, r[e.i] as f64 - r[e.j] as f64);
        }
    }

    #[test]
    fn mun_half_noise_window() {
        // with eta = 0.5 a true offset of 10 must land in [5, 15]
        let n = 40;
        for seed in 0..20 {
            let inst = gen_mun(&spec(NoiseModel::Mun, n, 1.0, 0.5, Kind::Cardinal, seed)).unwrap();
            let r = &inst.ground_truth.rank_of;
            for e in &inst.data.edges {
                let o = r[e.i] as f64 - r[e.j] as f64;
                if o.abs() == 10.0 {
                    assert!(e.value.abs() >= 5.0 && e.value.abs() <= 15.0, "got {}", e.value);
                    assert_eq!(e.value.signum(), o.signum());
                }
            }
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let s = spec(NoiseModel::Ero, 25, 0.4, 0.3, Kind::Cardinal, 99);
        let a = gen_ero(&s).unwrap();
        let b = gen_ero(&s).unwrap();
        assert_eq!(a.data, b.data);
        assert_eq!(a.ground_truth, b.ground_truth);
    }

    #[test]
    fn ero_zero_noise_exact_and_pure_outlier_limit() {
        let inst = gen_ero(&spec(NoiseModel::Ero, 15, 1.0, 0.0, Kind::Cardinal, 3)).unwrap();
        let r = &inst.ground_truth.rank_of;
        for e in &inst.data.edges {
            assert_eq!(e.value, r[e.i] as f64 - r[e.j] as f64);
        }
        // eta = 1: all values iid uniform on {-(n-1), ..., n-1}; check range
        let inst = gen_ero(&spec(NoiseModel::Ero, 15, 1.0, 1.0, Kind::Cardinal, 3)).unwrap();
        for e in &inst.data.edges {
            assert!(e.value.abs() <= 14.0);
            assert_eq!(e.value, e.value.round());
        }
    }

    #[test]
    fn ero_corrupted_fraction_concentrates() {
        // Monte-Carlo mean of the corrupted-edge fraction at eta = 0.25
        let n = 30;
        let mut corrupted = 0usize;
        let mut total = 0usize;
        for seed in 0..50 {
            let inst = gen_ero(&spec(NoiseModel::Ero, n, 1.0, 0.25, Kind::Cardinal, seed)).unwrap();
            let r = &inst.ground_truth.rank_of;
            for e in &inst.data.edges {
                total += 1;
                if e.value != r[e.i] as f64 - r[e.j] as f64 {
                    corrupted += 1;
                }
            }
        }
        // an outlier can coincide with the true offset, deflating the count
        // by about 1/(2n-1); keep the band from the spec
        let frac = corrupted as f64 / total as f64;
        assert!((frac - 0.25).abs() < 0.03, "corrupted fraction {frac}");
    }

    #[test]
    fn planted_degenerate_matches_ero() {
        let mut s = spec(NoiseModel::Planted, 20, 0.6, 0.0, Kind::Cardinal, 5);
        s.eta2 = Some(0.0);
        s.beta = Some(0.3);
        let inst = gen_planted(&s).unwrap();
        let r = &inst.ground_truth.rank_of;
        for e in &inst.data.edges {
            assert_eq!(e.value, r[e.i] as f64 - r[e.j] as f64);
        }
        assert_eq!(inst.planted_set.as_ref().unwrap().len(), 6);
    }

    #[test]
    fn planted_set_size_rounds() {
        let mut s = spec(NoiseModel::Planted, 250, 0.5, 0.0, Kind::Cardinal, 1);
        s.eta2 = Some(1.0);
        s.beta = Some(0.3);
        let inst = gen_planted(&s).unwrap();
        assert_eq!(inst.planted_set.unwrap().len(), 75);
    }

    #[test]
    fn planted_internal_edges_exact_when_eta1_zero() {
        let mut s = spec(NoiseModel::Planted, 30, 1.0, 0.0, Kind::Cardinal, 11);
        s.eta2 = Some(1.0);
        s.beta = Some(0.4);
        let inst = gen_planted(&s).unwrap();
        let lam = inst.planted_set.as_ref().unwrap();
        let inside: std::collections::HashSet<_> = lam.iter().copied().collect();
        let r = &inst.ground_truth.rank_of;
        for e in &inst.data.edges {
            if inside.contains(&e.i) && inside.contains(&e.j) {
                assert_eq!(e.value, r[e.i] as f64 - r[e.j] as f64);
            }
        }
    }

    #[test]
    fn bad_spec_rejected() {
        let s = spec(NoiseModel::Mun, 10, 1.4, 0.0, Kind::Cardinal, 0);
        assert!(matches!(gen_mun(&s), Err(RankError::BadSpec(_))));
        let s = spec(NoiseModel::Planted, 10, 0.5, 0.0, Kind::Cardinal, 0);
        assert!(matches!(gen_planted(&s), Err(RankError::BadSpec(_))));
    }

    #[test]
    fn mun_ordinal_signs_match_truth() {
        let inst = gen_mun(&spec(NoiseModel::Mun, 20, 0.7, 0.8, Kind::Ordinal, 4)).unwrap();
        let r = &inst.ground_truth.rank_of;
        for e in &inst.data.edges {
            let o = r[e.i] as f64 - r[e.j] as f64;
            assert_eq!(e.value, o.signum());
        }
    }
}

//! Small dense linear-algebra helpers shared by the ranking methods.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{RankError, Result};

pub type CMatrix = DMatrix<Complex<f64>>;
pub type CVector = DVector<Complex<f64>>;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors, same order as `eigenvalues`.
    pub eigenvectors: CMatrix,
}

/// Full eigen-decomposition of a complex Hermitian matrix (ascending order).
pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let se = m.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..se.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let eigenvalues = idx.iter().map(|&k| se.eigenvalues[k]).collect();
    let eigenvectors = CMatrix::from_columns(&idx.iter().map(|&k| se.eigenvectors.column(k).into_owned()).collect::<Vec<_>>());
    HermitianEigen { eigenvalues, eigenvectors }
}

/// Full eigen-decomposition of a real symmetric matrix (ascending order).
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let se = m.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..se.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&k| se.eigenvalues[k]).collect();
    let vecs = DMatrix::from_columns(&idx.iter().map(|&k| se.eigenvectors.column(k).into_owned()).collect::<Vec<_>>());
    (vals, vecs)
}

/// Dominant eigenpair of a Hermitian matrix whose spectrum lies in
/// `[-bound, bound]`, by shifted power iteration.
///
/// The shift `bound + margin` makes the largest (most positive) eigenvalue
/// the one of largest modulus, so the iteration converges to it. Converges
/// when the residual `||Mv - lambda v||` drops below `tol`.
pub fn dominant_eigenpair(m: &CMatrix, bound: f64, tol: f64, max_iter: usize) -> Result<(f64, CVector)> {
    let n = m.nrows();
    let shift = Complex::new(bound * 1.1 + 0.1, 0.0);
    // deterministic start with a mild index-dependent profile so it is not
    // orthogonal to the dominant eigenvector by symmetry
    let mut v = CVector::from_fn(n, |i, _| Complex::new(1.0 + 0.01 * ((i % 17) as f64), 0.005 * ((i % 13) as f64)));
    v /= Complex::new(v.norm(), 0.0);
    let mut lambda = 0.0f64;
    for it in 0..max_iter {
        let mut w = m * &v;
        w += &v * shift;
        let norm = w.norm();
        if norm == 0.0 {
            return Err(RankError::NonConvergence(it));
        }
        w /= Complex::new(norm, 0.0);
        // Rayleigh quotient of the unshifted matrix
        let mv = m * &w;
        lambda = w.dotc(&mv).re;
        let residual = (&mv - &w * Complex::new(lambda, 0.0)).norm();
        v = w;
        if residual < tol {
            return Ok((lambda, v));
        }
    }
    // accept a nearly-converged pair rather than fail outright only if the
    // residual is within a small multiple of the tolerance
    let mv = m * &v;
    let residual = (&mv - &v * Complex::new(lambda, 0.0)).norm();
    if residual < tol * 100.0 {
        return Ok((lambda, v));
    }
    Err(RankError::NonConvergence(max_iter))
}

/// Stationary distribution of a row-stochastic matrix by left power
/// iteration, converging in total variation.
pub fn stationary_distribution(p: &DMatrix<f64>, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let n = p.nrows();
    let mut pi = DVector::from_element(n, 1.0 / n as f64);
    for _ in 0..max_iter {
        let mut next = p.tr_mul(&pi);
        let sum: f64 = next.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(RankError::NotIrreducible);
        }
        next /= sum;
        let tv: f64 = next.iter().zip(pi.iter()).map(|(a, b)| (a - b).abs()).sum();
        pi = next;
        if tv < tol {
            return Ok(pi.iter().copied().collect());
        }
    }
    Err(RankError::NotIrreducible)
}

/// Hermitize: (M + M*) / 2, squashing roundoff drift.
pub fn hermitize(m: &mut CMatrix) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * Complex::new(0.5, 0.0);
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
        m[(i, i)] = Complex::new(m[(i, i)].re, 0.0);
    }
}

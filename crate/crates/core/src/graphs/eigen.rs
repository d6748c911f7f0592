//! Cyclic Jacobi eigensolver for symmetric matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Graph;
use crate::error::{Error, Result};
use crate::spectra::{Eig, Spectrum};

/// Vertex cap for dense eigensolving.
pub const MAX_EIGEN_VERTICES: usize = 5000;
const ROTATION_THRESHOLD: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are one entry.
pub const MERGE_TOL: f64 = 1e-9;
/// Radius attached to every numeric eigenvalue.
pub const NUMERIC_RADIUS: f64 = 1e-8;
/// Vertex cap for exact rank certification of integer eigenvalues.
pub const MAX_CERTIFY_VERTICES: usize = 256;
const INTEGER_SNAP: f64 = 1e-6;

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of the row-major symmetric `n x n` matrix `a` (overwritten),
/// sweeping rotations row by row until the off-diagonal Frobenius norm drops
/// below `1e-12 * n`.
pub fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix is not n x n");
    let tol = 1e-12 * n.max(1) as f64;
    let mut off = off_diagonal_norm(a, n);
    let mut sweeps = 0;
    while off >= tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < ROTATION_THRESHOLD {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    a[k * n + p] = np;
                    a[p * n + k] = np;
                    a[k * n + q] = nq;
                    a[q * n + k] = nq;
                }
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        off = off_diagonal_norm(a, n);
    }
    Ok((0..n).map(|i| a[i * n + i]).collect())
}

/// Numeric spectrum of the adjacency matrix, grouped at [`MERGE_TOL`] with
/// radius [`NUMERIC_RADIUS`].
pub fn numeric_spectrum(g: &Graph) -> Result<Spectrum> {
    if g.n() == 0 || g.n() > MAX_EIGEN_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "eigensolver handles 1..={MAX_EIGEN_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let mut a = g.adjacency_f64();
    let values = jacobi_eigenvalues(&mut a, g.n())?;
    Spectrum::from_numeric(&values, MERGE_TOL, NUMERIC_RADIUS)
}

/// Rank of `A - cI` over the rationals by fraction-free elimination.
pub fn shifted_rank(g: &Graph, c: i64) -> usize {
    let n = g.n();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigInt::from(g.has_edge(i, j) as i64 - if i == j { c } else { 0 }))
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest.iter_mut() {
            for j in col + 1..n {
                row[j] = (&row[j] * &pivot[col] - &row[col] * &pivot[j]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Numeric spectrum in which an entry near an integer `c` with multiplicity
/// `m` becomes exactly `c` when `A - cI` has nullity `m`.
pub fn certified_spectrum(g: &Graph) -> Result<Spectrum> {
    let num = numeric_spectrum(g)?;
    if g.n() > MAX_CERTIFY_VERTICES {
        return Ok(num);
    }
    let entries = num
        .entries()
        .iter()
        .map(|(e, m)| {
            let c = e.to_f64().round();
            if (e.to_f64() - c).abs() <= INTEGER_SNAP
                && g.n() - shifted_rank(g, c as i64) == *m as usize
            {
                (Eig::int(c as i64), *m)
            } else {
                (e.clone(), *m)
            }
        })
        .collect();
    Spectrum::new(entries)
}

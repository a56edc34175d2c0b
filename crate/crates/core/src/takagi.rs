//! Autonne–Takagi factorization `A = Q Σ Qᵀ` of complex symmetric matrices,
//! computed from an ordinary SVD `A = F K Gᴴ`.
//!
//! For an isolated singular value the Takagi vector is the left singular
//! vector with its phase halved against the right one:
//! `t = diag(Fᴴ G*)`, `φ = ∠t / 2`, `q = f · e^{jφ}`.
//!
//! Inside a cluster of (nearly) equal nonzero singular values `Fᴴ G*` is not
//! diagonal, so the per-column recipe breaks down (the identity matrix is the
//! simplest example). Each such cluster instead gets the small symmetric block
//! `S = F_clᴴ A F_cl*`, factored as `S = W Σ_cl Wᵀ` through the real
//! symmetric form `[[Re S, Im S], [Im S, −Re S]]`, and `F_cl ← F_cl W`.
//! Singular values at numerical zero keep their left vectors unchanged.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::{self, real_symmetric_eigen, ComplexMatrix, SvdFactorization, C64};

/// Relative tolerance on `‖A − Aᵀ‖_F` accepted as input.
pub const INPUT_SYMMETRY_TOL: f64 = 1e-8;
/// Singular values closer than this (relative to `σ₁`) share a cluster.
pub const CLUSTER_GAP: f64 = 1e-4;
/// Singular values at or below this fraction of `σ₁` are treated as zero.
pub const ZERO_RELATIVE: f64 = 1e-12;
/// Rank threshold used by [`rotate_noise_subspace`].
pub const RANK_RELATIVE: f64 = 1e-10;

/// Intermediates of the SVD post-processing, kept for inspection.
#[derive(Debug, Clone)]
pub struct TakagiDiagnostics {
    /// `diag(Fᴴ G*)`.
    pub t: Vec<C64>,
    /// `∠t / 2`, in `(−π/2, π/2]`.
    pub phi: Vec<f64>,
    /// Index ranges that received the cluster-level correction.
    pub clusters: Vec<Range<usize>>,
}

#[derive(Debug, Clone)]
pub struct TakagiFactorization {
    /// Unitary Takagi vectors, as columns.
    pub q: ComplexMatrix,
    /// Nonnegative, descending.
    pub takagi_values: Vec<f64>,
    pub diagnostics: Option<TakagiDiagnostics>,
}

impl TakagiFactorization {
    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    /// `Q · diag(σ) · Qᵀ`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &s) in self.takagi_values.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for r in 0..n {
                let a = self.q[(r, k)] * s;
                for c in 0..n {
                    out[(r, c)] += a * self.q[(c, k)];
                }
            }
        }
        out
    }

    /// `‖A − Q Σ Qᵀ‖_F / max(1, ‖A‖_F)`.
    pub fn residual(&self, a: &ComplexMatrix) -> Result<f64> {
        let diff = a.sub(&self.reconstruct())?.frobenius_norm();
        Ok(diff / a.frobenius_norm().max(1.0))
    }

    /// Number of Takagi values above `RANK_RELATIVE · σ₁`.
    pub fn numerical_rank(&self) -> usize {
        let cut = RANK_RELATIVE * self.takagi_values.first().copied().unwrap_or(0.0);
        self.takagi_values.iter().filter(|&&s| s > cut).count()
    }
}

pub fn takagi_factorize(a: &ComplexMatrix) -> Result<TakagiFactorization> {
    if !a.is_square() {
        return Err(Error::dim(format!(
            "Takagi factorization needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let defect = linalg::symmetry_defect(a)?;
    let allowed = INPUT_SYMMETRY_TOL * a.frobenius_norm().max(1.0);
    if defect > allowed {
        return Err(Error::domain(format!(
            "matrix is not symmetric: ‖A − Aᵀ‖_F = {defect:e} exceeds {allowed:e}"
        )));
    }
    let n = a.rows();
    let sym = if defect == 0.0 {
        a.clone()
    } else {
        a.add(&a.transpose())?.scale(C64::new(0.5, 0.0))
    };

    let SvdFactorization {
        left: f,
        singular_values: k,
        right: g,
    } = linalg::svd(&sym)?;

    let t: Vec<C64> = (0..n)
        .map(|i| (0..n).map(|r| f[(r, i)].conj() * g[(r, i)].conj()).sum())
        .collect();
    let phi: Vec<f64> = t.iter().map(|z| z.arg() / 2.0).collect();

    let sigma1 = k[0];
    if sigma1 == 0.0 {
        return Ok(TakagiFactorization {
            q: ComplexMatrix::identity(n),
            takagi_values: k,
            diagnostics: Some(TakagiDiagnostics {
                t,
                phi,
                clusters: Vec::new(),
            }),
        });
    }

    let zero_cut = ZERO_RELATIVE * sigma1;
    let gap = CLUSTER_GAP * sigma1;
    let mut q = f.clone();
    let mut values = k.clone();
    let mut clusters = Vec::new();

    let mut start = 0;
    while start < n {
        if k[start] <= zero_cut {
            // Null space: any orthonormal basis of the left null space works.
            break;
        }
        let mut end = start + 1;
        while end < n && k[end] > zero_cut && k[end - 1] - k[end] <= gap {
            end += 1;
        }
        if end - start == 1 {
            let rot = C64::from_polar(1.0, phi[start]);
            for r in 0..n {
                q[(r, start)] = f[(r, start)] * rot;
            }
        } else {
            let (w, cluster_values) = cluster_correction(&sym, &f, start..end)?;
            for r in 0..n {
                for c in 0..(end - start) {
                    q[(r, start + c)] = (0..(end - start))
                        .map(|j| f[(r, start + j)] * w[(j, c)])
                        .sum();
                }
            }
            values[start..end].copy_from_slice(&cluster_values);
            clusters.push(start..end);
        }
        start = end;
    }

    Ok(TakagiFactorization {
        q,
        takagi_values: values,
        diagnostics: Some(TakagiDiagnostics { t, phi, clusters }),
    })
}

/// Takagi factorization of the cluster block `S = F_clᴴ A F_cl*`.
///
/// With `S = X + jY`, a Takagi pair `S q* = σ q`, `q = x + jy`, is exactly an
/// eigenpair of the real symmetric `[[X, Y], [Y, −X]]` with eigenvalue `σ`.
/// The positive half of that spectrum gives orthonormal complex vectors.
fn cluster_correction(
    a: &ComplexMatrix,
    f: &ComplexMatrix,
    range: Range<usize>,
) -> Result<(ComplexMatrix, Vec<f64>)> {
    let n = a.rows();
    let k = range.len();
    let fc = f.block(0, range.start, n, k)?;
    let s = fc.conj_transpose().matmul(&a.matmul(&fc.conj())?)?;
    let s = s.add(&s.transpose())?.scale(C64::new(0.5, 0.0));

    let dim = 2 * k;
    let mut real = vec![0.0; dim * dim];
    for i in 0..k {
        for j in 0..k {
            let z = s[(i, j)];
            real[i * dim + j] = z.re;
            real[i * dim + (k + j)] = z.im;
            real[(k + i) * dim + j] = z.im;
            real[(k + i) * dim + (k + j)] = -z.re;
        }
    }
    let (eigvals, eigvecs) = real_symmetric_eigen(&real, dim)?;
    let mut w = ComplexMatrix::zeros(k, k);
    for c in 0..k {
        let v = &eigvecs[c];
        for r in 0..k {
            w[(r, c)] = C64::new(v[r], v[k + r]);
        }
    }
    let values = eigvals[..k].iter().map(|&x| x.max(0.0)).collect();
    Ok((w, values))
}

/// Replaces the noise-subspace columns `q[:, rank..]` by `q[:, rank..] · T`.
///
/// `t_mat = None` stands for the identity; it is the only valid choice when
/// `rank` equals the dimension.
pub fn rotate_noise_subspace(
    f: &TakagiFactorization,
    rank: usize,
    t_mat: Option<&ComplexMatrix>,
) -> Result<TakagiFactorization> {
    let n = f.dim();
    if rank > n {
        return Err(Error::dim(format!("rank {rank} exceeds dimension {n}")));
    }
    let noise = n - rank;
    let Some(t) = t_mat else {
        return Ok(f.clone());
    };
    if noise == 0 {
        return Err(Error::dim("no noise subspace to rotate, pass None"));
    }
    if t.rows() != noise || t.cols() != noise {
        return Err(Error::dim(format!(
            "rotation must be {noise}x{noise}, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    let defect = linalg::unitarity_defect(t)?;
    if defect > linalg::TAU_UNITARY {
        return Err(Error::domain(format!("rotation is not unitary (defect {defect:e})")));
    }
    let cut = RANK_RELATIVE * f.takagi_values.first().copied().unwrap_or(0.0);
    if let Some((i, &s)) = f.takagi_values[rank..]
        .iter()
        .enumerate()
        .find(|(_, &s)| s > cut)
    {
        return Err(Error::domain(format!(
            "Takagi value {s:e} at index {} is not zero, cannot rotate it",
            rank + i
        )));
    }

    let mut q = f.q.clone();
    for r in 0..n {
        for c in 0..noise {
            q[(r, rank + c)] = (0..noise).map(|j| f.q[(r, rank + j)] * t[(j, c)]).sum();
        }
    }
    Ok(TakagiFactorization {
        q,
        takagi_values: f.takagi_values.clone(),
        diagnostics: f.diagnostics.clone(),
    })
}

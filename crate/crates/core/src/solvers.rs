//! Closed-form Max-SNR RIS designs and the baselines they are compared with.

use std::f64::consts::TAU;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, outer_product, ComplexMatrix, ComplexVector, C64};
use crate::takagi::{self, TakagiFactorization};

/// Feasibility tolerance on returned RIS matrices.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Relative gap between the top two singular values below which the
/// principal direction of a multi-antenna channel is reported as ambiguous.
pub const DEGENERACY_REL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Architecture {
    FullyConnected,
    GroupConnected { group_size: usize },
    DiagonalOptimal,
    DiagonalRandom,
}

impl Architecture {
    /// Label used in CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            Architecture::FullyConnected => "fully-connected",
            Architecture::GroupConnected { .. } => "group-connected",
            Architecture::DiagonalOptimal => "diagonal-optimal",
            Architecture::DiagonalRandom => "diagonal-random",
        }
    }

    pub fn group_size(&self) -> Option<usize> {
        match self {
            Architecture::GroupConnected { group_size } => Some(*group_size),
            _ => None,
        }
    }

    pub fn from_parts(label: &str, group_size: Option<usize>) -> Result<Self> {
        match (label, group_size) {
            ("fully-connected", None) => Ok(Architecture::FullyConnected),
            ("group-connected", Some(g)) if g >= 1 => Ok(Architecture::GroupConnected { group_size: g }),
            ("diagonal-optimal", None) => Ok(Architecture::DiagonalOptimal),
            ("diagonal-random", None) => Ok(Architecture::DiagonalRandom),
            _ => Err(Error::config(format!(
                "unknown architecture {label:?} with group size {group_size:?}"
            ))),
        }
    }
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Architecture::GroupConnected { group_size } => write!(f, "group-connected(M_G={group_size})"),
            other => f.write_str(other.label()),
        }
    }
}

/// A RIS scattering matrix tagged with the architecture that produced it.
#[derive(Debug, Clone)]
pub struct RisConfiguration {
    pub theta: ComplexMatrix,
    pub architecture: Architecture,
}

impl RisConfiguration {
    pub fn m(&self) -> usize {
        self.theta.rows()
    }

    /// Checks lossless reciprocity and the architecture's sparsity pattern.
    pub fn validate(&self) -> Result<()> {
        let u = linalg::unitarity_defect(&self.theta)?;
        let s = linalg::symmetry_defect(&self.theta)?;
        if u > FEASIBILITY_TOL || s > FEASIBILITY_TOL {
            return Err(Error::domain(format!(
                "{} RIS is infeasible: unitarity defect {u:e}, symmetry defect {s:e}",
                self.architecture
            )));
        }
        let m = self.m();
        match self.architecture {
            Architecture::GroupConnected { group_size } => {
                if m % group_size != 0 {
                    return Err(Error::config(format!("M={m} is not divisible by group size {group_size}")));
                }
                for r in 0..m {
                    for c in 0..m {
                        if r / group_size != c / group_size && self.theta[(r, c)] != C64::new(0.0, 0.0) {
                            return Err(Error::domain(format!("nonzero off-block entry at ({r},{c})")));
                        }
                    }
                }
            }
            Architecture::DiagonalOptimal | Architecture::DiagonalRandom => {
                for r in 0..m {
                    for c in 0..m {
                        let z = self.theta[(r, c)];
                        if r == c && (z.norm() - 1.0).abs() > 1e-12 {
                            return Err(Error::domain(format!("diagonal entry {r} is not unit modulus")));
                        }
                        if r != c && z != C64::new(0.0, 0.0) {
                            return Err(Error::domain(format!("off-diagonal entry at ({r},{c})")));
                        }
                    }
                }
            }
            Architecture::FullyConnected => {}
        }
        Ok(())
    }
}

/// One channel realization: Tx→RIS (`h_t`, `M × N_T`), RIS→Rx (`h_r`) and an
/// optional direct Tx→Rx scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkChannels {
    pub h_t: ComplexMatrix,
    pub h_r: ComplexVector,
    pub direct: Option<C64>,
}

impl LinkChannels {
    pub fn new(h_t: ComplexMatrix, h_r: ComplexVector, direct: Option<C64>) -> Result<Self> {
        if h_t.rows() != h_r.len() {
            return Err(Error::dim(format!(
                "h_t has {} rows but h_r has length {}",
                h_t.rows(),
                h_r.len()
            )));
        }
        Ok(Self { h_t, h_r, direct })
    }

    /// SISO link from two vectors.
    pub fn siso(h_t: ComplexVector, h_r: ComplexVector, direct: Option<C64>) -> Result<Self> {
        Self::new(ComplexMatrix::from_columns(&[h_t])?, h_r, direct)
    }

    pub fn m(&self) -> usize {
        self.h_r.len()
    }

    pub fn n_t(&self) -> usize {
        self.h_t.cols()
    }

    pub fn h_t_vector(&self) -> ComplexVector {
        self.h_t.column(0)
    }

    /// Copy with column `k` of `h_t` multiplied by `√powers[k]`.
    pub fn scale_columns(&self, powers: &[f64]) -> Result<Self> {
        if powers.len() != self.n_t() {
            return Err(Error::dim(format!(
                "{} powers for {} transmit columns",
                powers.len(),
                self.n_t()
            )));
        }
        if let Some(p) = powers.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::domain(format!("transmit power {p} must be finite and nonnegative")));
        }
        let h_t = ComplexMatrix::from_fn(self.m(), self.n_t(), |r, c| self.h_t[(r, c)] * powers[c].sqrt());
        Ok(Self {
            h_t,
            h_r: self.h_r.clone(),
            direct: self.direct,
        })
    }

    fn require_siso(&self, who: &str) -> Result<()> {
        if self.n_t() != 1 {
            return Err(Error::dim(format!("{who} needs a single transmit column, got {}", self.n_t())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EquivalentChannel {
    Scalar(C64),
    Vector(ComplexVector),
}

impl EquivalentChannel {
    pub fn power(&self) -> f64 {
        match self {
            EquivalentChannel::Scalar(z) => z.norm_sqr(),
            EquivalentChannel::Vector(v) => v.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    pub fn scalar(&self) -> Option<C64> {
        match self {
            EquivalentChannel::Scalar(z) => Some(*z),
            EquivalentChannel::Vector(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub ris: RisConfiguration,
    /// Received signal power for unit transmit power.
    pub achieved_power: f64,
    pub equivalent_channel: EquivalentChannel,
    /// `|g_Rᴴ g_T − 1|` of the Takagi construction (largest over groups).
    pub alignment_residual: f64,
    /// MRT beamformer (MISO) or MRC combiner (SIMO), unit norm.
    pub beamformer: Option<ComplexVector>,
    /// The top singular value of the multi-antenna channel was repeated.
    pub degenerate_principal: bool,
    /// Takagi factorization behind a fully-connected solution.
    pub takagi: Option<TakagiFactorization>,
}

/// `A = u_R u_Tᴴ + (u_R u_Tᴴ)ᵀ`.
pub fn siso_symmetric_matrix(u_r: &ComplexVector, u_t: &ComplexVector) -> Result<ComplexMatrix> {
    if u_r.len() != u_t.len() {
        return Err(Error::dim("u_R and u_T lengths differ"));
    }
    let b = outer_product(u_r, u_t);
    b.add(&b.transpose())
}

/// `Θ = Q Qᵀ`.
pub fn theta_from_takagi(q: &ComplexMatrix) -> ComplexMatrix {
    let n = q.rows();
    ComplexMatrix::from_fn(n, n, |r, c| (0..q.cols()).map(|k| q[(r, k)] * q[(c, k)]).sum())
}

struct FullyConnected {
    theta: ComplexMatrix,
    takagi: TakagiFactorization,
    alignment_residual: f64,
}

/// Takagi-based alignment of a unit receive direction with a unit transmit
/// direction. Both inputs must be normalized.
fn fully_connected_design(u_r: &ComplexVector, u_t: &ComplexVector) -> Result<FullyConnected> {
    let a = siso_symmetric_matrix(u_r, u_t)?;
    let takagi = takagi::takagi_factorize(&a)?;
    let theta = theta_from_takagi(&takagi.q);
    let g_r = takagi.q.left_hmul(u_r)?.conj(); // Qᴴ u_R
    let g_t = takagi.q.transpose().matvec(u_t)?; // Qᵀ u_T
    let alignment_residual = (g_r.dot(&g_t)? - 1.0).norm();
    Ok(FullyConnected {
        theta,
        takagi,
        alignment_residual,
    })
}

fn nonzero_unit(v: &ComplexVector, name: &str) -> Result<(ComplexVector, f64)> {
    let n = v.norm();
    if n == 0.0 {
        return Err(Error::domain(format!("{name} is the zero vector")));
    }
    Ok((v.scale(C64::new(1.0 / n, 0.0)), n))
}

/// `h_Rᴴ Θ h_T`.
pub fn cascaded_channel(h_r: &ComplexVector, theta: &ComplexMatrix, h_t: &ComplexVector) -> Result<C64> {
    h_r.dot(&theta.matvec(h_t)?)
}

/// Fully-connected Max-SNR design for a single-antenna link, optionally with
/// a direct path whose phase is matched by a global rotation of Θ.
pub fn max_snr_siso(ch: &LinkChannels) -> Result<SolveOutcome> {
    ch.require_siso("max_snr_siso")?;
    let h_t = ch.h_t_vector();
    let (u_t, _) = nonzero_unit(&h_t, "h_T")?;
    let (u_r, _) = nonzero_unit(&ch.h_r, "h_R")?;
    let design = fully_connected_design(&u_r, &u_t)?;

    let theta = match ch.direct {
        Some(h) if h != C64::new(0.0, 0.0) => design.theta.scale(C64::from_polar(1.0, h.arg())),
        _ => design.theta,
    };
    let h_eq = ch.direct.unwrap_or_default() + cascaded_channel(&ch.h_r, &theta, &h_t)?;
    Ok(SolveOutcome {
        ris: RisConfiguration {
            theta,
            architecture: Architecture::FullyConnected,
        },
        achieved_power: h_eq.norm_sqr(),
        equivalent_channel: EquivalentChannel::Scalar(h_eq),
        alignment_residual: design.alignment_residual,
        beamformer: None,
        degenerate_principal: false,
        takagi: Some(design.takagi),
    })
}

/// Group-connected design: contiguous groups of `group_size` elements, each
/// solved independently; the per-group contributions are real and positive
/// and so add coherently.
pub fn max_snr_group(ch: &LinkChannels, group_size: usize) -> Result<SolveOutcome> {
    ch.require_siso("max_snr_group")?;
    if ch.direct.is_some() {
        return Err(Error::config("group-connected design does not support a direct link"));
    }
    let m = ch.m();
    if group_size == 0 || m % group_size != 0 {
        return Err(Error::config(format!("M={m} is not divisible by group size {group_size}")));
    }
    let h_t = ch.h_t_vector();
    let mut theta = ComplexMatrix::zeros(m, m);
    let mut alignment_residual: f64 = 0.0;
    for start in (0..m).step_by(group_size) {
        let h_tg = h_t.segment(start, group_size)?;
        let h_rg = ch.h_r.segment(start, group_size)?;
        let (nt, nr) = (h_tg.norm(), h_rg.norm());
        let block = if nt == 0.0 || nr == 0.0 {
            ComplexMatrix::identity(group_size)
        } else {
            let u_t = h_tg.scale(C64::new(1.0 / nt, 0.0));
            let u_r = h_rg.scale(C64::new(1.0 / nr, 0.0));
            let d = fully_connected_design(&u_r, &u_t)?;
            alignment_residual = alignment_residual.max(d.alignment_residual);
            d.theta
        };
        theta.set_block(start, start, &block)?;
    }
    let h_eq = cascaded_channel(&ch.h_r, &theta, &h_t)?;
    Ok(SolveOutcome {
        ris: RisConfiguration {
            theta,
            architecture: Architecture::GroupConnected { group_size },
        },
        achieved_power: h_eq.norm_sqr(),
        equivalent_channel: EquivalentChannel::Scalar(h_eq),
        alignment_residual,
        beamformer: None,
        degenerate_principal: false,
        takagi: None,
    })
}

/// Largest left singular vector, top singular value and whether the top
/// value is repeated.
pub fn principal_left_vector(h: &ComplexMatrix) -> Result<(ComplexVector, f64, bool)> {
    let f = linalg::svd(h)?;
    let s = &f.singular_values;
    if s[0] == 0.0 {
        return Err(Error::domain("channel matrix is zero"));
    }
    let degenerate = s.len() > 1 && s[0] - s[1] <= DEGENERACY_REL * s[0];
    Ok((f.left.column(0), s[0], degenerate))
}

/// Multi-antenna transmitter: Θ aligns `h_R` with the dominant left singular
/// vector of `H_T`, then the transmitter applies MRT on `h_eq = h_Rᴴ Θ H_T`.
pub fn max_snr_miso(ch: &LinkChannels) -> Result<SolveOutcome> {
    if ch.direct.is_some() {
        return Err(Error::config("MISO design does not support a direct link"));
    }
    if ch.n_t() > ch.m() {
        return Err(Error::dim(format!(
            "MISO design needs N_T ≤ M, got N_T={} and M={}",
            ch.n_t(),
            ch.m()
        )));
    }
    let (u_r, _) = nonzero_unit(&ch.h_r, "h_R")?;
    let (u_t1, _, degenerate) = principal_left_vector(&ch.h_t)?;
    let design = fully_connected_design(&u_r, &u_t1)?;
    // h_eq as a column: (h_Rᴴ Θ H_T)ᵀ
    let row = design.theta.matmul(&ch.h_t)?.left_hmul(&ch.h_r)?;
    let power: f64 = row.iter().map(|z| z.norm_sqr()).sum();
    let beamformer = if power > 0.0 {
        Some(row.conj().scale(C64::new(1.0 / power.sqrt(), 0.0)))
    } else {
        None
    };
    Ok(SolveOutcome {
        ris: RisConfiguration {
            theta: design.theta,
            architecture: Architecture::FullyConnected,
        },
        achieved_power: power,
        equivalent_channel: EquivalentChannel::Vector(row),
        alignment_residual: design.alignment_residual,
        beamformer,
        degenerate_principal: degenerate,
        takagi: Some(design.takagi),
    })
}

/// Multi-antenna receiver, the mirror image of [`max_snr_miso`]: the receive
/// side supplies the dominant direction and the receiver combines with MRC.
pub fn max_snr_simo(h_t: &ComplexVector, h_r_matrix: &ComplexMatrix) -> Result<SolveOutcome> {
    let m = h_r_matrix.rows();
    if h_t.len() != m {
        return Err(Error::dim(format!("h_T has length {} but the receive matrix has {m} rows", h_t.len())));
    }
    if h_r_matrix.cols() > m {
        return Err(Error::dim(format!(
            "SIMO design needs N_R ≤ M, got N_R={} and M={m}",
            h_r_matrix.cols()
        )));
    }
    let (u_t, _) = nonzero_unit(h_t, "h_T")?;
    let (u_r1, _, degenerate) = principal_left_vector(h_r_matrix)?;
    let design = fully_connected_design(&u_r1, &u_t)?;
    // H_Rᴴ Θ h_T
    let h_eq = h_r_matrix.conj_transpose().matvec(&design.theta.matvec(h_t)?)?;
    let power: f64 = h_eq.iter().map(|z| z.norm_sqr()).sum();
    let combiner = if power > 0.0 {
        Some(h_eq.scale(C64::new(1.0 / power.sqrt(), 0.0)))
    } else {
        None
    };
    Ok(SolveOutcome {
        ris: RisConfiguration {
            theta: design.theta,
            architecture: Architecture::FullyConnected,
        },
        achieved_power: power,
        equivalent_channel: EquivalentChannel::Vector(h_eq),
        alignment_residual: design.alignment_residual,
        beamformer: combiner,
        degenerate_principal: degenerate,
        takagi: Some(design.takagi),
    })
}

/// Conventional diagonal RIS with co-phasing: `θ_m = −arg(h_T(m) h_R(m)*)`.
pub fn diagonal_optimal(ch: &LinkChannels) -> Result<SolveOutcome> {
    ch.require_siso("diagonal_optimal")?;
    let h_t = ch.h_t_vector();
    let phases: Vec<C64> = h_t
        .iter()
        .zip(ch.h_r.iter())
        .map(|(t, r)| {
            let p = t * r.conj();
            if p == C64::new(0.0, 0.0) {
                C64::new(1.0, 0.0)
            } else {
                C64::from_polar(1.0, -p.arg())
            }
        })
        .collect();
    let theta = ComplexMatrix::from_diagonal(&phases)?;
    let h_eq = ch.direct.unwrap_or_default() + cascaded_channel(&ch.h_r, &theta, &h_t)?;
    Ok(SolveOutcome {
        ris: RisConfiguration {
            theta,
            architecture: Architecture::DiagonalOptimal,
        },
        achieved_power: h_eq.norm_sqr(),
        equivalent_channel: EquivalentChannel::Scalar(h_eq),
        alignment_residual: 0.0,
        beamformer: None,
        degenerate_principal: false,
        takagi: None,
    })
}

/// Diagonal RIS with i.i.d. uniform phases on `[0, 2π)`.
pub fn diagonal_random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<RisConfiguration> {
    if m == 0 {
        return Err(Error::dim("RIS needs at least one element"));
    }
    let phases: Vec<C64> = (0..m)
        .map(|_| C64::from_polar(1.0, rng.random::<f64>() * TAU))
        .collect();
    Ok(RisConfiguration {
        theta: ComplexMatrix::from_diagonal(&phases)?,
        architecture: Architecture::DiagonalRandom,
    })
}

/// Sum rate of the K-user SISO MAC in bits/s/Hz:
/// `log₂(1 + Σ_k P_k |h_Rᴴ Θ h_k|² / σ²)`, with `h_k` the unscaled columns of
/// `ch.h_t`.
pub fn mac_sum_rate(ch: &LinkChannels, ris: &RisConfiguration, powers: &[f64], noise_power: f64) -> Result<f64> {
    if !(noise_power > 0.0) || !noise_power.is_finite() {
        return Err(Error::domain(format!("noise power must be positive, got {noise_power}")));
    }
    if ris.m() != ch.m() {
        return Err(Error::dim(format!("RIS has {} elements, channel has {}", ris.m(), ch.m())));
    }
    let scaled = ch.scale_columns(powers)?;
    let row = ris.theta.matmul(&scaled.h_t)?.left_hmul(&ch.h_r)?;
    let received: f64 = row.iter().map(|z| z.norm_sqr()).sum();
    Ok((1.0 + received / noise_power).log2())
}

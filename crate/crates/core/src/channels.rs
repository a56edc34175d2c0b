//! Scenario geometry, large-scale path loss and small-scale fading.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector, C64};
use crate::solvers::LinkChannels;

/// Human-readable description of the generator, written to run metadata.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed) + set_stream(stream_id)";

pub type Point3 = [f64; 3];

fn distance(a: Point3, b: Point3) -> f64 {
    a.iter().zip(&b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioGeometry {
    pub rx_position: Point3,
    pub ris_position: Point3,
    /// Center of the Tx disc; the disc lies in the plane `z = tx_center[2]`.
    pub tx_center: Point3,
    pub tx_radius: f64,
    pub path_loss_exponent: f64,
    /// Loss at 1 m, in dB.
    pub reference_loss_db: f64,
}

impl Default for ScenarioGeometry {
    fn default() -> Self {
        Self {
            rx_position: [50.0, 0.0, 2.0],
            ris_position: [40.0, 0.0, 5.0],
            tx_center: [0.0, 0.0, 2.0],
            tx_radius: 10.0,
            path_loss_exponent: 3.75,
            reference_loss_db: -30.0,
        }
    }
}

impl ScenarioGeometry {
    pub fn validate(&self) -> Result<()> {
        let finite = self
            .rx_position
            .iter()
            .chain(&self.ris_position)
            .chain(&self.tx_center)
            .chain([&self.tx_radius, &self.path_loss_exponent, &self.reference_loss_db])
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::config("geometry has non-finite values"));
        }
        if !(self.path_loss_exponent > 0.0) {
            return Err(Error::config("path loss exponent must be positive"));
        }
        if self.tx_radius < 0.0 {
            return Err(Error::config("tx radius must be nonnegative"));
        }
        if distance(self.rx_position, self.ris_position) == 0.0 {
            return Err(Error::config("Rx and RIS coincide"));
        }
        // The closest disc point to the RIS must stay strictly away from it.
        let dz = self.ris_position[2] - self.tx_center[2];
        let dxy = ((self.ris_position[0] - self.tx_center[0]).powi(2)
            + (self.ris_position[1] - self.tx_center[1]).powi(2))
        .sqrt();
        if dz == 0.0 && dxy <= self.tx_radius {
            return Err(Error::config("RIS lies inside the Tx disc"));
        }
        Ok(())
    }

    /// Uniform point in the Tx disc (area-uniform: `r = R√u`).
    pub fn sample_tx<R: Rng + ?Sized>(&self, rng: &mut R) -> Point3 {
        let r = self.tx_radius * rng.random::<f64>().sqrt();
        let angle = rng.random::<f64>() * TAU;
        [
            self.tx_center[0] + r * angle.cos(),
            self.tx_center[1] + r * angle.sin(),
            self.tx_center[2],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingModel {
    Rayleigh,
    /// `k_factor` is the linear LoS-to-scatter power ratio.
    Rician { k_factor: f64 },
    PureLoS,
}

impl FadingModel {
    /// LoS and scatter amplitude weights.
    fn weights(&self) -> (f64, f64) {
        match *self {
            FadingModel::Rayleigh => (0.0, 1.0),
            FadingModel::Rician { k_factor } => ((k_factor / (1.0 + k_factor)).sqrt(), (1.0 / (1.0 + k_factor)).sqrt()),
            FadingModel::PureLoS => (1.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let FadingModel::Rician { k_factor } = self {
            if !(*k_factor >= 0.0) || k_factor.is_infinite() {
                return Err(Error::config(format!("Rician K-factor must be finite and ≥ 0, got {k_factor}")));
            }
        }
        Ok(())
    }
}

/// Deterministic random stream keyed by `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// One `CN(0, 1)` draw.
    pub fn complex_normal(&mut self) -> C64 {
        let re: f64 = StandardNormal.sample(&mut self.rng);
        let im: f64 = StandardNormal.sample(&mut self.rng);
        C64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `PL = L₀ − 10 β log₁₀ d` in dB.
pub fn path_loss_db(d: f64, geo: &ScenarioGeometry) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::domain(format!("link distance must be positive, got {d}")));
    }
    Ok(geo.reference_loss_db - 10.0 * geo.path_loss_exponent * d.log10())
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

/// Thermal noise power `σ² = 10^((psd + 10 log₁₀ BW − 30) / 10)` in watts.
pub fn noise_power_watts(psd_dbm_per_hz: f64, bandwidth_hz: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) || !bandwidth_hz.is_finite() {
        return Err(Error::domain(format!("bandwidth must be positive, got {bandwidth_hz}")));
    }
    Ok(dbm_to_watts(psd_dbm_per_hz + 10.0 * bandwidth_hz.log10()))
}

/// One fading vector of length `m` with amplitude `√gain`.
///
/// The draw order is fixed regardless of the fading model (LoS phase first,
/// then `m` scatter coefficients), so the same stream yields the same
/// scatter part under every model.
fn fading_vector(m: usize, gain: f64, fading: &FadingModel, rng: &mut RngStream) -> Vec<C64> {
    let (los_w, nlos_w) = fading.weights();
    let los = C64::from_polar(1.0, rng.random::<f64>() * TAU);
    let amp = gain.sqrt();
    (0..m)
        .map(|_| {
            let w = rng.complex_normal();
            let z = if nlos_w == 0.0 {
                los
            } else if los_w == 0.0 {
                w
            } else {
                los * los_w + w * nlos_w
            };
            z * amp
        })
        .collect()
}

fn check_dims(m: usize, n_t: usize) -> Result<()> {
    if m == 0 || n_t == 0 {
        return Err(Error::dim(format!("need M ≥ 1 and N_T ≥ 1, got M={m}, N_T={n_t}")));
    }
    Ok(())
}

fn link_gain(a: Point3, b: Point3, geo: &ScenarioGeometry) -> Result<f64> {
    Ok(db_to_linear(path_loss_db(distance(a, b), geo)?))
}

/// One Tx (with `n_t` antennas at a single position) → RIS → Rx realization.
pub fn sample_link(
    m: usize,
    n_t: usize,
    geo: &ScenarioGeometry,
    fading: &FadingModel,
    rng: &mut RngStream,
) -> Result<LinkChannels> {
    check_dims(m, n_t)?;
    let tx = geo.sample_tx(rng);
    let gain_t = link_gain(tx, geo.ris_position, geo)?;
    let gain_r = link_gain(geo.ris_position, geo.rx_position, geo)?;
    let columns: Vec<ComplexVector> = (0..n_t)
        .map(|_| ComplexVector::new(fading_vector(m, gain_t, fading, rng)))
        .collect::<Result<_>>()?;
    let h_r = ComplexVector::new(fading_vector(m, gain_r, fading, rng))?;
    LinkChannels::new(ComplexMatrix::from_columns(&columns)?, h_r, None)
}

/// K single-antenna users at independent positions in the Tx disc. Column
/// `k` of `h_t` is user `k`'s unscaled channel to the RIS.
pub fn sample_mac_link(
    m: usize,
    users: usize,
    geo: &ScenarioGeometry,
    fading: &FadingModel,
    rng: &mut RngStream,
) -> Result<LinkChannels> {
    check_dims(m, users)?;
    let mut columns = Vec::with_capacity(users);
    for _ in 0..users {
        let tx = geo.sample_tx(rng);
        let gain = link_gain(tx, geo.ris_position, geo)?;
        columns.push(ComplexVector::new(fading_vector(m, gain, fading, rng))?);
    }
    let gain_r = link_gain(geo.ris_position, geo.rx_position, geo)?;
    let h_r = ComplexVector::new(fading_vector(m, gain_r, fading, rng))?;
    LinkChannels::new(ComplexMatrix::from_columns(&columns)?, h_r, None)
}

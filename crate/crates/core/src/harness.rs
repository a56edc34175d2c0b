//! Monte Carlo experiment runner: SNR gain of BD-RIS over diagonal RIS, and
//! the sum rate of a RIS-assisted SISO multiple-access channel.
//!
//! Each `(M, trial)` pair is an independent work item with its own random
//! stream, so results do not depend on how items are scheduled. Rows are
//! emitted in `(M, trial, architecture)` order.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::channels::{self, FadingModel, Point3, RngStream, ScenarioGeometry};
use crate::error::{Error, Result};
use crate::solvers::{self, Architecture, LinkChannels};

pub const CSV_HEADER: [&str; 8] = ["experiment", "m", "architecture", "group_size", "trial", "metric", "value", "seed"];
pub const SNR_GAIN_METRIC: &str = "snr_gain_db";
pub const SUM_RATE_METRIC: &str = "sum_rate_bps_hz";
pub const MAC_DIAGONAL_BASELINE: &str =
    "diagonal phases co-phased against the dominant left singular vector of the sqrt(P)-scaled user matrix";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    SnrGain,
    MacSumRate,
}

impl Experiment {
    pub fn label(&self) -> &'static str {
        match self {
            Experiment::SnrGain => "snr-gain",
            Experiment::MacSumRate => "mac-sum-rate",
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        match s {
            "snr-gain" => Ok(Experiment::SnrGain),
            "mac-sum-rate" => Ok(Experiment::MacSumRate),
            _ => Err(Error::config(format!(
                "unknown experiment {s:?} (expected snr-gain or mac-sum-rate)"
            ))),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    pub psd_dbm_per_hz: f64,
    pub bandwidth_hz: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            psd_dbm_per_hz: -174.0,
            bandwidth_hz: 2e6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub m_values: Vec<usize>,
    /// SNR-gain only.
    pub group_sizes: Vec<usize>,
    pub trials: usize,
    pub fading: FadingModel,
    pub geometry: ScenarioGeometry,
    /// Per-user transmit power (MAC only).
    pub tx_power_dbm: f64,
    pub noise: NoiseSpec,
    pub seed: u64,
    pub num_users: usize,
}

impl ExperimentSpec {
    pub fn new(experiment: Experiment, m_values: Vec<usize>) -> Self {
        Self {
            experiment,
            m_values,
            group_sizes: Vec::new(),
            trials: 100,
            fading: FadingModel::Rayleigh,
            geometry: ScenarioGeometry::default(),
            tx_power_dbm: 20.0,
            noise: NoiseSpec::default(),
            seed: 1,
            num_users: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_values.is_empty() {
            return Err(Error::config("m_values is empty"));
        }
        if let Some(dup) = first_duplicate(&self.m_values) {
            return Err(Error::config(format!("M={dup} is listed twice")));
        }
        if self.m_values.contains(&0) {
            return Err(Error::config("M must be positive"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials must be at least 1"));
        }
        self.fading.validate()?;
        self.geometry.validate()?;
        match self.experiment {
            Experiment::SnrGain => {
                if let Some(dup) = first_duplicate(&self.group_sizes) {
                    return Err(Error::config(format!("group size {dup} is listed twice")));
                }
                for &g in &self.group_sizes {
                    if g == 0 {
                        return Err(Error::config("group size must be positive"));
                    }
                    for &m in &self.m_values {
                        if m % g != 0 {
                            return Err(Error::config(format!("M={m} is not divisible by group size {g}")));
                        }
                    }
                }
            }
            Experiment::MacSumRate => {
                if !self.group_sizes.is_empty() {
                    return Err(Error::config("group_sizes only applies to snr-gain"));
                }
                if self.num_users == 0 {
                    return Err(Error::config("num_users must be at least 1"));
                }
                if let Some(&m) = self.m_values.iter().find(|&&m| m < self.num_users) {
                    return Err(Error::config(format!(
                        "M={m} is smaller than num_users={}",
                        self.num_users
                    )));
                }
                if !self.tx_power_dbm.is_finite() {
                    return Err(Error::config("tx_power_dbm must be finite"));
                }
                channels::noise_power_watts(self.noise.psd_dbm_per_hz, self.noise.bandwidth_hz)
                    .map_err(|e| Error::config(e.to_string()))?;
            }
        }
        Ok(())
    }

    /// Canonical text form, also the on-disk spec format.
    pub fn to_text(&self) -> String {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let point = |p: &Point3| format!("{}, {}, {}", p[0], p[1], p[2]);
        let g = &self.geometry;
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("experiment", self.experiment.label().into());
        kv("m_values", list(&self.m_values));
        if self.experiment == Experiment::SnrGain {
            kv("group_sizes", list(&self.group_sizes));
        }
        kv("trials", self.trials.to_string());
        kv("fading", fading_to_text(&self.fading));
        kv("seed", self.seed.to_string());
        if self.experiment == Experiment::MacSumRate {
            kv("num_users", self.num_users.to_string());
            kv("tx_power_dbm", self.tx_power_dbm.to_string());
            kv("noise_psd_dbm_hz", self.noise.psd_dbm_per_hz.to_string());
            kv("bandwidth_hz", self.noise.bandwidth_hz.to_string());
        }
        kv("rx_position", point(&g.rx_position));
        kv("ris_position", point(&g.ris_position));
        kv("tx_center", point(&g.tx_center));
        kv("tx_radius", g.tx_radius.to_string());
        kv("path_loss_exponent", g.path_loss_exponent.to_string());
        kv("reference_loss_db", g.reference_loss_db.to_string());
        out
    }

    /// Parses the `key = value` spec format. Blank lines and `#` comments are
    /// ignored; unknown, duplicate or inapplicable keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs: Vec<(usize, String, String)> = Vec::new();
        let mut seen = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {line_no}: expected `key = value`")))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if !seen.insert(k.clone()) {
                return Err(Error::config(format!("line {line_no}: duplicate key {k:?}")));
            }
            pairs.push((line_no, k, v));
        }

        let experiment = pairs
            .iter()
            .find(|(_, k, _)| k == "experiment")
            .map(|(_, _, v)| Experiment::from_label(v))
            .transpose()?
            .ok_or_else(|| Error::config("missing key \"experiment\""))?;
        let mut spec = ExperimentSpec::new(experiment, Vec::new());
        let mut have_m = false;

        for (line_no, k, v) in &pairs {
            let ctx = |e: Error| match e {
                Error::Config(m) => Error::config(format!("line {line_no}: {k}: {m}")),
                other => other,
            };
            let mac_only = matches!(k.as_str(), "num_users" | "tx_power_dbm" | "noise_psd_dbm_hz" | "bandwidth_hz");
            if mac_only && experiment != Experiment::MacSumRate {
                return Err(Error::config(format!("line {line_no}: key {k:?} only applies to mac-sum-rate")));
            }
            if k == "group_sizes" && experiment != Experiment::SnrGain {
                return Err(Error::config(format!("line {line_no}: key \"group_sizes\" only applies to snr-gain")));
            }
            match k.as_str() {
                "experiment" => {}
                "m_values" => {
                    spec.m_values = parse_list(v).map_err(ctx)?;
                    have_m = true;
                }
                "group_sizes" => spec.group_sizes = parse_list(v).map_err(ctx)?,
                "trials" => spec.trials = parse_num(v).map_err(ctx)?,
                "fading" => spec.fading = parse_fading(v).map_err(ctx)?,
                "seed" => spec.seed = parse_num(v).map_err(ctx)?,
                "num_users" => spec.num_users = parse_num(v).map_err(ctx)?,
                "tx_power_dbm" => spec.tx_power_dbm = parse_num(v).map_err(ctx)?,
                "noise_psd_dbm_hz" => spec.noise.psd_dbm_per_hz = parse_num(v).map_err(ctx)?,
                "bandwidth_hz" => spec.noise.bandwidth_hz = parse_num(v).map_err(ctx)?,
                "rx_position" => spec.geometry.rx_position = parse_point(v).map_err(ctx)?,
                "ris_position" => spec.geometry.ris_position = parse_point(v).map_err(ctx)?,
                "tx_center" => spec.geometry.tx_center = parse_point(v).map_err(ctx)?,
                "tx_radius" => spec.geometry.tx_radius = parse_num(v).map_err(ctx)?,
                "path_loss_exponent" => spec.geometry.path_loss_exponent = parse_num(v).map_err(ctx)?,
                "reference_loss_db" => spec.geometry.reference_loss_db = parse_num(v).map_err(ctx)?,
                _ => return Err(Error::config(format!("line {line_no}: unknown key {k:?}"))),
            }
        }
        if !have_m {
            return Err(Error::config("missing key \"m_values\""));
        }
        spec.validate()?;
        Ok(spec)
    }

    /// SHA-256 of the canonical text.
    pub fn hash_hex(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

fn first_duplicate(v: &[usize]) -> Option<usize> {
    let mut seen = HashSet::new();
    v.iter().copied().find(|x| !seen.insert(*x))
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::config(format!("cannot parse {s:?} as a number")))
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_num(x.trim())).collect()
}

fn parse_point(s: &str) -> Result<Point3> {
    let v: Vec<f64> = s.split(',').map(|x| parse_num(x.trim())).collect::<Result<_>>()?;
    v.try_into()
        .map_err(|_| Error::config(format!("expected three coordinates, got {s:?}")))
}

fn parse_fading(s: &str) -> Result<FadingModel> {
    match s {
        "rayleigh" => Ok(FadingModel::Rayleigh),
        "los" | "pure-los" => Ok(FadingModel::PureLoS),
        _ => match s.strip_prefix("rician:") {
            Some(k) => Ok(FadingModel::Rician {
                k_factor: parse_num(k.trim())?,
            }),
            None => Err(Error::config(format!(
                "unknown fading {s:?} (expected rayleigh, los or rician:<K>)"
            ))),
        },
    }
}

fn fading_to_text(f: &FadingModel) -> String {
    match f {
        FadingModel::Rayleigh => "rayleigh".into(),
        FadingModel::PureLoS => "los".into(),
        FadingModel::Rician { k_factor } => format!("rician:{k_factor}"),
    }
}

pub fn load_spec(path: &Path) -> Result<ExperimentSpec> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ExperimentSpec::parse(&text)
}

/// One raw per-trial result.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub experiment: Experiment,
    pub m: usize,
    pub architecture: Architecture,
    pub trial: usize,
    pub metric: String,
    pub value: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecutionMode {
    Sequential,
    /// `threads = None` uses the global rayon pool. Without the `parallel`
    /// feature this runs sequentially.
    Parallel { threads: Option<usize> },
}

impl Default for ExecutionMode {
    fn default() -> Self {
        ExecutionMode::Parallel { threads: None }
    }
}

/// Stream for one work item; distinct for every `(M, trial)` pair.
pub fn stream_id(m: usize, trial: usize) -> u64 {
    ((m as u64) << 32) | trial as u64
}

fn map_items<F>(items: &[(usize, usize)], mode: ExecutionMode, f: F) -> Result<Vec<ResultRecord>>
where
    F: Fn(usize, usize) -> Result<Vec<ResultRecord>> + Sync + Send,
{
    let nested: Vec<Vec<ResultRecord>> = match mode {
        ExecutionMode::Sequential => items.iter().map(|&(m, t)| f(m, t)).collect::<Result<_>>()?,
        ExecutionMode::Parallel { threads } => run_parallel(items, threads, &f)?,
    };
    Ok(nested.into_iter().flatten().collect())
}

#[cfg(feature = "parallel")]
fn run_parallel<F>(items: &[(usize, usize)], threads: Option<usize>, f: &F) -> Result<Vec<Vec<ResultRecord>>>
where
    F: Fn(usize, usize) -> Result<Vec<ResultRecord>> + Sync + Send,
{
    use rayon::prelude::*;
    let work = || items.par_iter().map(|&(m, t)| f(m, t)).collect::<Result<Vec<_>>>();
    match threads {
        None => work(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::config(format!("cannot build a {n}-thread pool: {e}")))?
            .install(work),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<F>(items: &[(usize, usize)], _threads: Option<usize>, f: &F) -> Result<Vec<Vec<ResultRecord>>>
where
    F: Fn(usize, usize) -> Result<Vec<ResultRecord>> + Sync + Send,
{
    items.iter().map(|&(m, t)| f(m, t)).collect()
}

fn work_items(spec: &ExperimentSpec) -> Vec<(usize, usize)> {
    spec.m_values
        .iter()
        .flat_map(|&m| (0..spec.trials).map(move |t| (m, t)))
        .collect()
}

fn require(spec: &ExperimentSpec, experiment: Experiment) -> Result<()> {
    if spec.experiment != experiment {
        return Err(Error::config(format!(
            "spec describes {} but {} was requested",
            spec.experiment, experiment
        )));
    }
    spec.validate()
}

/// Runs whichever experiment the spec describes.
pub fn run_experiment(spec: &ExperimentSpec, mode: ExecutionMode) -> Result<Vec<ResultRecord>> {
    match spec.experiment {
        Experiment::SnrGain => run_snr_gain_with(spec, mode),
        Experiment::MacSumRate => run_mac_sum_rate_with(spec, mode),
    }
}

pub fn run_snr_gain(spec: &ExperimentSpec) -> Result<Vec<ResultRecord>> {
    run_snr_gain_with(spec, ExecutionMode::default())
}

pub fn run_snr_gain_with(spec: &ExperimentSpec, mode: ExecutionMode) -> Result<Vec<ResultRecord>> {
    require(spec, Experiment::SnrGain)?;
    map_items(&work_items(spec), mode, |m, trial| snr_gain_trial(spec, m, trial))
}

/// Gain of a BD-RIS over the co-phased diagonal RIS on the same draw, in dB.
pub fn snr_gain_db(bd: &solvers::SolveOutcome, diag: &solvers::SolveOutcome) -> Result<f64> {
    let gain = 10.0 * (bd.achieved_power / diag.achieved_power).log10();
    if !gain.is_finite() {
        return Err(Error::Numerical {
            what: "SNR gain is not finite".into(),
            residual: diag.achieved_power,
        });
    }
    Ok(gain)
}

fn snr_gain_trial(spec: &ExperimentSpec, m: usize, trial: usize) -> Result<Vec<ResultRecord>> {
    let mut rng = RngStream::new(spec.seed, stream_id(m, trial));
    let ch = channels::sample_link(m, 1, &spec.geometry, &spec.fading, &mut rng)?;
    let diag = solvers::diagonal_optimal(&ch)?;
    let record = |architecture, value| ResultRecord {
        experiment: Experiment::SnrGain,
        m,
        architecture,
        trial,
        metric: SNR_GAIN_METRIC.into(),
        value,
        seed: spec.seed,
    };
    let mut out = Vec::with_capacity(1 + spec.group_sizes.len());
    let full = solvers::max_snr_siso(&ch)?;
    out.push(record(Architecture::FullyConnected, snr_gain_db(&full, &diag)?));
    for &g in &spec.group_sizes {
        let grp = solvers::max_snr_group(&ch, g)?;
        out.push(record(Architecture::GroupConnected { group_size: g }, snr_gain_db(&grp, &diag)?));
    }
    Ok(out)
}

pub fn run_mac_sum_rate(spec: &ExperimentSpec) -> Result<Vec<ResultRecord>> {
    run_mac_sum_rate_with(spec, ExecutionMode::default())
}

pub fn run_mac_sum_rate_with(spec: &ExperimentSpec, mode: ExecutionMode) -> Result<Vec<ResultRecord>> {
    require(spec, Experiment::MacSumRate)?;
    let noise = channels::noise_power_watts(spec.noise.psd_dbm_per_hz, spec.noise.bandwidth_hz)?;
    let powers = vec![channels::dbm_to_watts(spec.tx_power_dbm); spec.num_users];
    map_items(&work_items(spec), mode, |m, trial| {
        mac_trial(spec, m, trial, &powers, noise)
    })
}

/// Per-architecture MAC sum rates for one channel draw, in the order
/// BD-RIS, co-phased diagonal, random diagonal.
pub fn mac_rates<R: rand::Rng + ?Sized>(
    ch: &LinkChannels,
    powers: &[f64],
    noise: f64,
    rng: &mut R,
) -> Result<[(Architecture, f64); 3]> {
    let scaled = ch.scale_columns(powers)?;
    let bd = solvers::max_snr_miso(&scaled)?;
    let (u1, _, _) = solvers::principal_left_vector(&scaled.h_t)?;
    let diag = solvers::diagonal_optimal(&LinkChannels::siso(u1, ch.h_r.clone(), None)?)?;
    let random = solvers::diagonal_random(ch.m(), rng)?;
    Ok([
        (Architecture::FullyConnected, solvers::mac_sum_rate(ch, &bd.ris, powers, noise)?),
        (Architecture::DiagonalOptimal, solvers::mac_sum_rate(ch, &diag.ris, powers, noise)?),
        (Architecture::DiagonalRandom, solvers::mac_sum_rate(ch, &random, powers, noise)?),
    ])
}

fn mac_trial(spec: &ExperimentSpec, m: usize, trial: usize, powers: &[f64], noise: f64) -> Result<Vec<ResultRecord>> {
    let mut rng = RngStream::new(spec.seed, stream_id(m, trial));
    let ch = channels::sample_mac_link(m, spec.num_users, &spec.geometry, &spec.fading, &mut rng)?;
    let rates = mac_rates(&ch, powers, noise, &mut rng)?;
    Ok(rates
        .into_iter()
        .map(|(architecture, value)| ResultRecord {
            experiment: Experiment::MacSumRate,
            m,
            architecture,
            trial,
            metric: SUM_RATE_METRIC.into(),
            value,
            seed: spec.seed,
        })
        .collect())
}

/// 12 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn write_csv(records: &[ResultRecord], path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| Error::io(path, e))?;
    w.write_record(CSV_HEADER).map_err(|e| Error::io(path, e))?;
    for r in records {
        let group = r.architecture.group_size().map(|g| g.to_string()).unwrap_or_default();
        w.write_record([
            r.experiment.label(),
            &r.m.to_string(),
            r.architecture.label(),
            &group,
            &r.trial.to_string(),
            &r.metric,
            &format_value(r.value),
            &r.seed.to_string(),
        ])
        .map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRecord>> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::io(path, e))?;
    let header = rd.headers().map_err(|e| Error::io(path, e))?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::config(format!(
            "{}: unexpected header {:?}",
            path.display(),
            header.iter().collect::<Vec<_>>()
        )));
    }
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let row = row.map_err(|e| Error::io(path, e))?;
        let bad = |what: &str| Error::config(format!("{}: row {}: bad {what}", path.display(), i + 1));
        let group = match &row[3] {
            "" => None,
            g => Some(g.parse().map_err(|_| bad("group_size"))?),
        };
        out.push(ResultRecord {
            experiment: Experiment::from_label(&row[0])?,
            m: row[1].parse().map_err(|_| bad("m"))?,
            architecture: Architecture::from_parts(&row[2], group)?,
            trial: row[4].parse().map_err(|_| bad("trial"))?,
            metric: row[5].to_string(),
            value: row[6].parse().map_err(|_| bad("value"))?,
            seed: row[7].parse().map_err(|_| bad("seed"))?,
        });
    }
    Ok(out)
}

/// `<csv path>.meta`.
pub fn meta_path(csv_path: &Path) -> PathBuf {
    let mut s = csv_path.as_os_str().to_os_string();
    s.push(".meta");
    PathBuf::from(s)
}

pub fn meta_text(spec: &ExperimentSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("library = {} {}\n", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")));
    out.push_str(&format!("rng = {}\n", channels::RNG_NAME));
    out.push_str("stream_id = (M << 32) | trial\n");
    out.push_str(&format!("spec_sha256 = {}\n", spec.hash_hex()));
    out.push_str(&format!("experiment = {}\n", spec.experiment));
    out.push_str(&format!("seed = {}\n", spec.seed));
    if spec.experiment == Experiment::MacSumRate {
        out.push_str(&format!("mac_diagonal_baseline = {MAC_DIAGONAL_BASELINE}\n"));
    }
    out
}

pub fn write_meta(csv_path: &Path, spec: &ExperimentSpec) -> Result<PathBuf> {
    let path = meta_path(csv_path);
    fs::write(&path, meta_text(spec)).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Mean and standard error of one `(M, architecture, metric)` series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSummary {
    pub m: usize,
    pub architecture: Architecture,
    pub metric: String,
    pub count: usize,
    pub mean: f64,
    pub std_err: f64,
}

/// Aggregates raw rows in first-seen order. Standard error uses the sample
/// standard deviation over `√count`.
pub fn summarize(records: &[ResultRecord]) -> Vec<SeriesSummary> {
    let mut keys: Vec<(usize, Architecture, &str)> = Vec::new();
    let mut values: Vec<Vec<f64>> = Vec::new();
    for r in records {
        let key = (r.m, r.architecture, r.metric.as_str());
        match keys.iter().position(|k| *k == key) {
            Some(i) => values[i].push(r.value),
            None => {
                keys.push(key);
                values.push(vec![r.value]);
            }
        }
    }
    keys.into_iter()
        .zip(values)
        .map(|((m, architecture, metric), v)| {
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let var = if v.len() > 1 {
                v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            SeriesSummary {
                m,
                architecture,
                metric: metric.to_string(),
                count: v.len(),
                mean,
                std_err: (var / n).sqrt(),
            }
        })
        .collect()
}

/// Mean of one series, if present.
pub fn series_mean(summary: &[SeriesSummary], m: usize, architecture: Architecture) -> Option<f64> {
    summary
        .iter()
        .find(|s| s.m == m && s.architecture == architecture)
        .map(|s| s.mean)
}

//! Experiment configuration (JSON) and its validation.

use serde::{Deserialize, Serialize};
use shaperecon::forward_oracle::SolverParams;
use shaperecon::fourier::min_samples;
use shaperecon::scattering_inversion::{DEFAULT_SEED, DEFAULT_STABILITY_THRESHOLD};
use shaperecon::special_functions::MAX_ORDER;
use shaperecon::{ComplexFourierSeries, PerturbedDisk, Physics, RealTrigSeries};
use num_complex::Complex64;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Supported wavenumbers for acoustic experiments.
pub const K_ENVELOPE: (f64, f64) = (1e-3, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Forward,
    DtnOrder,
    Farfield,
    Reconstruct,
    Sweep,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::Forward,
        ExperimentKind::DtnOrder,
        ExperimentKind::Farfield,
        ExperimentKind::Reconstruct,
        ExperimentKind::Sweep,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Forward => "forward",
            ExperimentKind::DtnOrder => "dtn-order",
            ExperimentKind::Farfield => "farfield",
            ExperimentKind::Reconstruct => "reconstruct",
            ExperimentKind::Sweep => "sweep",
        }
    }

    fn uses_epsilon_list(self) -> bool {
        matches!(self, ExperimentKind::DtnOrder | ExperimentKind::Farfield | ExperimentKind::Sweep)
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown experiment '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PhysicsConfig {
    /// Perfect conductor, Laplace equation.
    Electric {},
    /// Sound-soft obstacle, Helmholtz equation with wavenumber `k`.
    Acoustic { k: f64 },
}

impl PhysicsConfig {
    pub fn physics(self) -> Physics {
        match self {
            PhysicsConfig::Electric {} => Physics::Laplace,
            PhysicsConfig::Acoustic { k } => Physics::Helmholtz { k },
        }
    }
}

/// `r = 1 + ε f(θ)` with `f = cos[0]/2 + Σ cos[n] cos nθ + sin[n-1] sin nθ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeConfig {
    pub epsilon: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl ShapeConfig {
    pub fn series(&self) -> RealTrigSeries {
        RealTrigSeries::new(&self.cos, &self.sin)
    }
}

/// One complex Fourier mode of the boundary data `Ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeConfig {
    pub n: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub n_trunc: usize,
    pub m_colloc: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let p = SolverParams::default();
        SolverConfig {
            n_trunc: p.n_trunc,
            m_colloc: p.m_colloc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementConfig {
    /// Defaults to 100 (electric) or 200/k (acoustic).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub noise: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for MeasurementConfig {
    fn default() -> Self {
        MeasurementConfig {
            radius: None,
            samples: default_samples(),
            noise: 0.0,
            seed: default_seed(),
        }
    }
}

fn default_samples() -> usize {
    64
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_threshold() -> f64 {
    DEFAULT_STABILITY_THRESHOLD
}

fn default_epsilons() -> Vec<f64> {
    vec![0.04, 0.02, 0.01]
}

fn default_data() -> Vec<ModeConfig> {
    // cos 2θ
    vec![
        ModeConfig { n: -2, re: 0.5, im: 0.0 },
        ModeConfig { n: 2, re: 0.5, im: 0.0 },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Must match the subcommand when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentKind>,
    pub physics: PhysicsConfig,
    pub shape: ShapeConfig,
    /// Boundary data for `forward`, `dtn-order` and `farfield`.
    #[serde(default = "default_data")]
    pub data: Vec<ModeConfig>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub measurement: MeasurementConfig,
    /// Defaults to `1..=4` (electric) or `-4..=4` (acoustic).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<i64>>,
    #[serde(default = "default_threshold")]
    pub stability_threshold: f64,
    /// Amplitudes for `dtn-order`, `farfield` and `sweep`.
    #[serde(default = "default_epsilons")]
    pub epsilons: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn physics(&self) -> Physics {
        self.physics.physics()
    }

    pub fn data_series(&self) -> ComplexFourierSeries {
        let modes: Vec<(i64, Complex64)> = self
            .data
            .iter()
            .map(|m| (m.n, Complex64::new(m.re, m.im)))
            .collect();
        ComplexFourierSeries::from_modes(&modes)
    }

    pub fn solver_params(&self) -> SolverParams {
        SolverParams::new(self.solver.n_trunc, self.solver.m_colloc)
    }

    pub fn measurement_radius(&self) -> f64 {
        self.measurement.radius.unwrap_or(match self.physics {
            PhysicsConfig::Electric {} => 100.0,
            PhysicsConfig::Acoustic { k } => 200.0 / k,
        })
    }

    pub fn probe_list(&self) -> Vec<i64> {
        self.probes.clone().unwrap_or_else(|| match self.physics {
            PhysicsConfig::Electric {} => (1..=4).collect(),
            PhysicsConfig::Acoustic { .. } => (-4..=4).collect(),
        })
    }
}

/// Every reason `config` cannot run `kind`; empty iff runnable.
pub fn validate(config: &ExperimentConfig, kind: ExperimentKind) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(declared) = config.experiment {
        if declared != kind {
            out.push(format!("config declares experiment '{declared}' but '{kind}' was requested"));
        }
    }
    let eps = config.shape.epsilon;
    let eps_list_used = kind.uses_epsilon_list();
    if !eps.is_finite() || eps < 0.0 || (eps_list_used && config.epsilons.iter().any(|e| !e.is_finite() || *e < 0.0)) {
        out.push("epsilon must be nonnegative".into());
    }
    if eps_list_used && config.epsilons.is_empty() {
        out.push("epsilons must list at least one amplitude".into());
    }
    if matches!(kind, ExperimentKind::DtnOrder | ExperimentKind::Farfield)
        && config.epsilons.iter().filter(|e| **e > 0.0).count() < 2
    {
        out.push("an order study needs at least two positive epsilons".into());
    }
    if matches!(kind, ExperimentKind::Reconstruct) && eps <= 0.0 {
        out.push("reconstruction needs a positive epsilon".into());
    }
    if matches!(kind, ExperimentKind::Sweep) && config.epsilons.iter().any(|e| *e <= 0.0) {
        out.push("sweep epsilons must be positive".into());
    }

    let s = config.solver;
    let needed = 2 * min_samples(s.n_trunc);
    if s.m_colloc < needed || !s.m_colloc.is_multiple_of(2) {
        out.push(format!(
            "aliasing: m_colloc = {} must be even and at least 2(2 n_trunc + 2) = {needed}",
            s.m_colloc
        ));
    }
    if s.n_trunc == 0 || s.n_trunc > MAX_ORDER {
        out.push(format!("n_trunc = {} must lie in 1..={MAX_ORDER}", s.n_trunc));
    }

    if let PhysicsConfig::Acoustic { k } = config.physics {
        if !(k >= K_ENVELOPE.0 && k <= K_ENVELOPE.1) {
            out.push(format!(
                "wavenumber k = {k} is outside the supported envelope [{}, {}]",
                K_ENVELOPE.0, K_ENVELOPE.1
            ));
        }
    }

    let f = config.shape.series();
    let mut amplitudes = vec![eps];
    if eps_list_used {
        amplitudes.extend(&config.epsilons);
    }
    let mut max_radius = 1.0f64;
    for a in amplitudes.into_iter().filter(|a| a.is_finite() && *a >= 0.0) {
        match PerturbedDisk::new(a, f.clone()) {
            Ok(d) => max_radius = max_radius.max(d.max_radius()),
            Err(e) => out.push(format!("shape at epsilon {a}: {e}")),
        }
    }

    let m = &config.measurement;
    if m.samples < 4 || !m.samples.is_multiple_of(2) {
        out.push(format!("measurement samples = {} must be even and at least 4", m.samples));
    }
    if !m.noise.is_finite() || m.noise < 0.0 {
        out.push("measurement noise must be nonnegative".into());
    }
    let radius = config.measurement_radius();
    if !radius.is_finite() || radius <= max_radius {
        out.push(format!("measurement radius {radius} must exceed the obstacle radius {max_radius}"));
    }
    if config.stability_threshold.is_nan() || config.stability_threshold <= 0.0 {
        out.push("stability_threshold must be positive".into());
    }

    if matches!(kind, ExperimentKind::Reconstruct | ExperimentKind::Sweep) {
        let probes = config.probe_list();
        if probes.is_empty() {
            out.push("at least one probe is required".into());
        }
        if matches!(config.physics, PhysicsConfig::Electric {}) && probes.iter().any(|p| *p < 1) {
            out.push("electric probes must be at least 1".into());
        }
        let top = probes.iter().map(|p| p.unsigned_abs() as usize + 1).max().unwrap_or(0);
        if top > MAX_ORDER {
            out.push(format!("probe order {top} exceeds {MAX_ORDER}"));
        }
    }
    if matches!(kind, ExperimentKind::Forward | ExperimentKind::DtnOrder | ExperimentKind::Farfield) {
        if config.data.is_empty() {
            out.push("boundary data must contain at least one mode".into());
        }
        let order = config.data.iter().map(|m| m.n.unsigned_abs() as usize).max().unwrap_or(0);
        if order + f.order() > s.n_trunc {
            out.push(format!(
                "boundary data order {order} plus shape order {} exceeds n_trunc = {}",
                f.order(),
                s.n_trunc
            ));
        }
    }
    out
}

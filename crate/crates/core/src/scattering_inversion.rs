//! Probe-based recovery of the shape coefficients from far-field data.
//!
//! Each probe is an entire incident field whose first-order scattered
//! response isolates one or two Fourier coefficients of `f`. Measurements
//! are the difference between the field scattered by the perturbed obstacle
//! and by the unit disk, sampled on a large circle.

use crate::dtn::Physics;
use crate::forward_oracle::{solve_exterior_dirichlet_gauged, LaplaceGauge, SolverParams};
use crate::fourier::{ComplexFourierSeries, RealTrigSeries, SampledPeriodicFn};
use crate::geometry::PerturbedDisk;
use crate::special_functions::{bessel_j_array, hankel1_array};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Default ratio for [`reconstruct_acoustic`]'s stability test.
pub const DEFAULT_STABILITY_THRESHOLD: f64 = 1e3;
/// Default seed for synthetic measurement noise.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Entire (interior-regular) incident field.
#[derive(Debug, Clone, PartialEq)]
pub enum IncidentField {
    /// `â_0/2 + Σ r^n (â_n cos nθ + b̂_n sin nθ)`.
    Harmonic(RealTrigSeries),
    /// `Σ c_n J_{|n|}(kr) e^{inθ}`.
    Entire { k: f64, modes: ComplexFourierSeries },
}

impl IncidentField {
    pub fn physics(&self) -> Physics {
        match self {
            IncidentField::Harmonic(_) => Physics::Laplace,
            IncidentField::Entire { k, .. } => Physics::Helmholtz { k: *k },
        }
    }

    pub fn evaluate(&self, r: f64, theta: f64) -> Result<Complex64> {
        match self {
            IncidentField::Harmonic(s) => {
                let mut v = 0.5 * s.a(0);
                let mut p = 1.0;
                for n in 1..=s.order() {
                    p *= r;
                    let (sn, cn) = (n as f64 * theta).sin_cos();
                    v += p * (s.a(n) * cn + s.b(n) * sn);
                }
                Ok(Complex64::new(v, 0.0))
            }
            IncidentField::Entire { k, modes } => {
                let j = bessel_j_array(modes.order(), k * r)?;
                Ok(modes
                    .modes()
                    .map(|(n, c)| c * j[n.unsigned_abs() as usize] * Complex64::cis(n as f64 * theta))
                    .sum())
            }
        }
    }

    /// `∂_r v` at `(r, θ)`.
    pub fn radial_derivative(&self, r: f64, theta: f64) -> Result<Complex64> {
        match self {
            IncidentField::Harmonic(s) => {
                let mut v = 0.0;
                let mut p = 1.0;
                for n in 1..=s.order() {
                    let (sn, cn) = (n as f64 * theta).sin_cos();
                    v += n as f64 * p * (s.a(n) * cn + s.b(n) * sn);
                    p *= r;
                }
                Ok(Complex64::new(v, 0.0))
            }
            IncidentField::Entire { k, modes } => {
                let j = bessel_j_array(modes.order() + 1, k * r)?;
                Ok(modes
                    .modes()
                    .map(|(n, c)| {
                        let a = n.unsigned_abs() as usize;
                        let dj = if a == 0 { -j[1] } else { 0.5 * (j[a - 1] - j[a + 1]) };
                        c * (k * dj) * Complex64::cis(n as f64 * theta)
                    })
                    .sum())
            }
        }
    }

    /// Fourier coefficients of the trace on the unit circle.
    pub fn unit_trace(&self) -> Result<ComplexFourierSeries> {
        match self {
            IncidentField::Harmonic(s) => Ok(s.to_complex()),
            IncidentField::Entire { k, modes } => {
                let j = bessel_j_array(modes.order(), *k)?;
                Ok(modes.map_modes(|n, c| c * j[n.unsigned_abs() as usize]))
            }
        }
    }
}

/// `(v, w) = (-(1/n) rⁿ sin nθ, (1/n) rⁿ cos nθ)`.
pub fn electric_probe(n: usize) -> Result<(IncidentField, IncidentField)> {
    if n == 0 {
        return Err(Error::InvalidParameter("electric probe order must be at least 1".into()));
    }
    let inv = 1.0 / n as f64;
    Ok((
        IncidentField::Harmonic(RealTrigSeries::sin_mode(n, -inv)),
        IncidentField::Harmonic(RealTrigSeries::cos_mode(n, inv)),
    ))
}

/// `v = c J_ν(kr) e^{-i(m-1)θ}` with `ν = |m - 1|` and `c = π H_ν(k) / (2i)`,
/// so that `𝒩₀(v|_{r=1}) - ∂_r v|_{r=1} = e^{-i(m-1)θ}`.
pub fn acoustic_probe(m: i64, k: f64) -> Result<IncidentField> {
    Physics::Helmholtz { k }.validate()?;
    let nu = (m - 1).unsigned_abs() as usize;
    let h = hankel1_array(nu, k)?[nu];
    let c = h * PI / Complex64::new(0.0, 2.0);
    Ok(IncidentField::Entire {
        k,
        modes: ComplexFourierSeries::single_mode(-(m - 1), c),
    })
}

/// Where and how the scattered difference is sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementParams {
    pub radius: f64,
    pub samples: usize,
    /// Uniform noise amplitude relative to `max |signal|`.
    pub noise: f64,
    pub seed: u64,
}

impl MeasurementParams {
    pub fn laplace_default() -> Self {
        MeasurementParams {
            radius: 100.0,
            samples: 64,
            noise: 0.0,
            seed: DEFAULT_SEED,
        }
    }

    pub fn helmholtz_default(k: f64) -> Self {
        MeasurementParams {
            radius: 200.0 / k,
            ..Self::laplace_default()
        }
    }
}

/// Samples of `(v^s - v₀^s)(R, θ_j)`, where `v^s` and `v₀^s` are scattered
/// by the perturbed obstacle and the unit disk. The noise generator is
/// seeded by `(params.seed, stream)`.
pub fn simulate_scattered_difference(
    disk: &PerturbedDisk,
    incident: &IncidentField,
    solver: &SolverParams,
    params: &MeasurementParams,
    stream: u64,
) -> Result<Vec<Complex64>> {
    let physics = incident.physics();
    if params.radius < disk.max_radius() {
        return Err(Error::InsideObstacle {
            r: params.radius,
            theta: 0.0,
        });
    }
    let scattered = |d: &PerturbedDisk| -> Result<Vec<Complex64>> {
        let data = |t: f64| -incident.evaluate(d.radius(t), t).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let sol = solve_exterior_dirichlet_gauged(physics, d, data, solver, LaplaceGauge::Decaying)?;
        sol.sample_circle(params.radius, params.samples)
    };
    let perturbed = scattered(disk)?;
    let reference = scattered(&PerturbedDisk::unit_disk())?;
    let mut diff: Vec<Complex64> = perturbed.iter().zip(&reference).map(|(a, b)| a - b).collect();
    if !diff.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter("incident field could not be evaluated on the boundary".into()));
    }
    if physics == Physics::Laplace {
        diff.iter_mut().for_each(|z| z.im = 0.0);
    }
    if params.noise > 0.0 {
        let amplitude = params.noise * diff.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(stream);
        for z in diff.iter_mut() {
            z.re += amplitude * rng.random_range(-1.0..=1.0);
            if physics != Physics::Laplace {
                z.im += amplitude * rng.random_range(-1.0..=1.0);
            }
        }
    }
    Ok(diff)
}

/// `(c₁, d₁) = (R â₁/ε, R b̂₁/ε)` of real samples on the circle of radius
/// `R`; the constant mode is discarded.
pub fn measure_dipole_laplace(samples: &[f64], radius: f64, epsilon: f64) -> Result<(f64, f64)> {
    check_epsilon(epsilon)?;
    let s = RealTrigSeries::analyze(&SampledPeriodicFn::new(samples.to_vec())?, 1)?;
    Ok((radius * s.a(1) / epsilon, radius * s.b(1) / epsilon))
}

/// Exposed coefficients `ĉ_n(f 𝒩₀(v) - f ∂_r v)` from samples on the circle
/// of radius `R`, using `H_n(kR) ≈ √(2/(πkR)) e^{i(kR - π/4 - nπ/2)}`.
pub fn measure_pattern_helmholtz(
    samples: &[Complex64],
    k: f64,
    radius: f64,
    epsilon: f64,
    order: usize,
) -> Result<ComplexFourierSeries> {
    Physics::Helmholtz { k }.validate()?;
    check_epsilon(epsilon)?;
    let c = ComplexFourierSeries::analyze(&SampledPeriodicFn::new(samples.to_vec())?, order)?;
    let h = hankel1_array(order, k)?;
    let normalization = Complex64::cis(-k * radius) * ((PI * k * radius / 2.0).sqrt() / epsilon);
    Ok(c.map_modes(|n, v| {
        let a = n.unsigned_abs() as usize;
        let phase = Complex64::cis(FRAC_PI_4 + (a % 4) as f64 * FRAC_PI_2);
        v * normalization * h[a] * phase
    }))
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "measurements need a positive epsilon, got {epsilon}"
        )));
    }
    Ok(())
}

/// `(c₁, d₁)` for both fields of electric probe `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectricMeasurement {
    pub n: usize,
    pub v: (f64, f64),
    pub w: (f64, f64),
}

/// Exposed pattern for acoustic probe `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct AcousticMeasurement {
    pub m: i64,
    pub pattern: ComplexFourierSeries,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeStability {
    pub m: i64,
    /// `|H_{|m-1|}(k)| / min_{n ≤ ν_max} |H_n(k)|`.
    pub factor: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub f_hat: RealTrigSeries,
    /// Disagreement between redundant estimates of mode `n`, indexed by
    /// `n ≥ 0`; zero where only one estimate exists.
    pub residuals: Vec<f64>,
    /// Acoustic probes only.
    pub stability: Vec<ProbeStability>,
}

#[derive(Default, Clone, Copy)]
struct Estimates {
    sum: f64,
    count: u32,
    first: Option<f64>,
    spread: f64,
}

impl Estimates {
    fn push(&mut self, v: f64) {
        if let Some(f) = self.first {
            self.spread = self.spread.max((v - f).abs());
        } else {
            self.first = Some(v);
        }
        self.sum += v;
        self.count += 1;
    }

    fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum / self.count as f64
        }
    }
}

/// Averages the redundant estimates
/// `b̂_{n∓1} = (c₁(v) ± d₁(w))/2`, `â_{n-1} = (d₁(v) - c₁(w))/2`,
/// `â_{n+1} = (-d₁(v) - c₁(w))/2`.
pub fn reconstruct_electric(measurements: &[ElectricMeasurement]) -> Result<ReconstructionResult> {
    let top = measurements.iter().map(|m| m.n).max().ok_or(Error::InsufficientProbes)?;
    if measurements.iter().any(|m| m.n == 0) {
        return Err(Error::InvalidParameter("electric probe order must be at least 1".into()));
    }
    let order = top + 1;
    let mut a = vec![Estimates::default(); order + 1];
    let mut b = vec![Estimates::default(); order + 1];
    for m in measurements {
        let ((cv, dv), (cw, dw)) = (m.v, m.w);
        let n = m.n;
        if n > 1 {
            b[n - 1].push(0.5 * (cv + dw));
        }
        b[n + 1].push(0.5 * (cv - dw));
        a[n - 1].push(0.5 * (dv - cw));
        a[n + 1].push(0.5 * (-dv - cw));
    }
    let cos: Vec<f64> = a.iter().map(Estimates::mean).collect();
    let sin: Vec<f64> = b[1..].iter().map(Estimates::mean).collect();
    let residuals = a.iter().zip(&b).map(|(x, y)| x.spread.max(y.spread)).collect();
    Ok(ReconstructionResult {
        f_hat: RealTrigSeries::new(&cos, &sin),
        residuals,
        stability: Vec::new(),
    })
}

/// `ĉ_m(f)` is mode 1 of probe `m`'s exposed pattern. Probes with
/// `|H_{|m-1|}(k)| > threshold · min_{n ≤ ν_max} |H_n(k)|` are omitted.
/// The estimates are projected onto real `f` by averaging `ĉ_m` with
/// `conj(ĉ_{-m})`.
pub fn reconstruct_acoustic(
    measurements: &[AcousticMeasurement],
    k: f64,
    stability_threshold: f64,
) -> Result<ReconstructionResult> {
    Physics::Helmholtz { k }.validate()?;
    if measurements.is_empty() {
        return Err(Error::InsufficientProbes);
    }
    let nu_max = measurements
        .iter()
        .map(|m| (m.m - 1).unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let h = hankel1_array(nu_max, k)?;
    let h_min = h.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);

    let mut stability = Vec::with_capacity(measurements.len());
    let mut raw: Vec<(i64, Complex64)> = Vec::new();
    for meas in measurements {
        let factor = h[(meas.m - 1).unsigned_abs() as usize].norm() / h_min;
        let stable = factor <= stability_threshold;
        stability.push(ProbeStability {
            m: meas.m,
            factor,
            stable,
        });
        if stable {
            raw.push((meas.m, meas.pattern.coeff(1)));
        }
    }
    let order = raw.iter().map(|(m, _)| m.unsigned_abs() as usize).max().unwrap_or(0);
    let mut est = vec![(Complex64::new(0.0, 0.0), 0u32); 2 * order + 1];
    for (m, c) in &raw {
        let slot = &mut est[(*m + order as i64) as usize];
        slot.0 += c;
        slot.1 += 1;
    }
    let mean = |m: i64| -> Option<Complex64> {
        let (s, n) = est[(m + order as i64) as usize];
        (n > 0).then(|| s / n as f64)
    };

    let mut symmetric = ComplexFourierSeries::zeros(order);
    let mut residuals = vec![0.0; order + 1];
    for n in 0..=order as i64 {
        let value = match (mean(n), mean(-n).map(|c| c.conj())) {
            (Some(p), Some(q)) => {
                residuals[n as usize] = (p - q).norm();
                (p + q) * 0.5
            }
            (Some(p), None) => p,
            (None, Some(q)) => q,
            (None, None) => Complex64::new(0.0, 0.0),
        };
        symmetric.set(n, value);
        symmetric.set(-n, value.conj());
    }
    let f_hat = RealTrigSeries::from_complex(&symmetric, 1e-12)?;
    Ok(ReconstructionResult {
        f_hat,
        residuals,
        stability,
    })
}

/// Simulates and measures electric probes `n ∈ probes`.
pub fn electric_measurements(
    disk: &PerturbedDisk,
    probes: &[usize],
    solver: &SolverParams,
    params: &MeasurementParams,
) -> Result<Vec<ElectricMeasurement>> {
    let fields: Vec<(usize, IncidentField, IncidentField)> = probes
        .iter()
        .map(|&n| electric_probe(n).map(|(v, w)| (n, v, w)))
        .collect::<Result<_>>()?;
    let eps = disk.epsilon();
    let pairs = solver.execution.try_map(2 * fields.len(), |i| {
        let (_, v, w) = &fields[i / 2];
        let inc = if i % 2 == 0 { v } else { w };
        let samples = simulate_scattered_difference(disk, inc, solver, params, i as u64)?;
        let re: Vec<f64> = samples.iter().map(|z| z.re).collect();
        measure_dipole_laplace(&re, params.radius, eps)
    })?;
    Ok(fields
        .iter()
        .enumerate()
        .map(|(i, (n, _, _))| ElectricMeasurement {
            n: *n,
            v: pairs[2 * i],
            w: pairs[2 * i + 1],
        })
        .collect())
}

/// Simulates and measures acoustic probes `m ∈ probes` at wavenumber `k`.
pub fn acoustic_measurements(
    disk: &PerturbedDisk,
    k: f64,
    probes: &[i64],
    solver: &SolverParams,
    params: &MeasurementParams,
) -> Result<Vec<AcousticMeasurement>> {
    let order = (params.samples / 2).saturating_sub(1).min(8);
    let eps = disk.epsilon();
    solver.execution.try_map(probes.len(), |i| {
        let m = probes[i];
        let inc = acoustic_probe(m, k)?;
        let samples = simulate_scattered_difference(disk, &inc, solver, params, i as u64)?;
        let pattern = measure_pattern_helmholtz(&samples, k, params.radius, eps, order)?;
        Ok(AcousticMeasurement { m, pattern })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtn::{apply_symbol, DtnOperator};
    use crate::fourier::node;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fast() -> SolverParams {
        SolverParams::new(24, 128)
    }

    #[test]
    fn electric_probe_fields() {
        let (v, w) = electric_probe(1).unwrap();
        for &(r, t) in &[(1.0, 0.3), (2.0, 1.1)] {
            assert!((v.evaluate(r, t).unwrap() - c(-r * t.sin(), 0.0)).norm() < 1e-15);
            assert!((w.evaluate(r, t).unwrap() - c(r * t.cos(), 0.0)).norm() < 1e-15);
        }
        assert!(electric_probe(0).is_err());
        for n in 1..6 {
            let (v, w) = electric_probe(n).unwrap();
            let nv = apply_symbol(Physics::Laplace, DtnOperator::N0, &v.unit_trace().unwrap()).unwrap();
            let expect = RealTrigSeries::sin_mode(n, 1.0).to_complex();
            assert!((&nv - &expect).max_abs() < 1e-15);
            for j in 0..16 {
                let t = node(j, 16);
                assert!(v.evaluate(1.0, t).unwrap().norm() <= 1.0 / n as f64 + 1e-15);
                assert!(w.evaluate(1.0, t).unwrap().norm() <= 1.0 / n as f64 + 1e-15);
            }
        }
    }

    #[test]
    fn acoustic_probe_exposes_single_mode() {
        for &k in &[0.5, 1.0, 3.0] {
            for m in -4i64..=4 {
                let inc = acoustic_probe(m, k).unwrap();
                let trace = inc.unit_trace().unwrap();
                let n0 = apply_symbol(Physics::Helmholtz { k }, DtnOperator::N0, &trace).unwrap();
                for j in 0..8 {
                    let t = node(j, 8);
                    let lhs = n0.eval(t) - inc.radial_derivative(1.0, t).unwrap();
                    let expect = Complex64::cis(-((m - 1) as f64) * t);
                    assert!((lhs - expect).norm() < 1e-10, "k={k} m={m}");
                }
            }
        }
        let IncidentField::Entire { modes, .. } = acoustic_probe(1, 2.0).unwrap() else {
            unreachable!()
        };
        let h0 = hankel1_array(0, 2.0).unwrap()[0];
        assert!((modes.coeff(0) - h0 * PI / c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn radial_derivative_matches_finite_difference() {
        let fields = [
            IncidentField::Harmonic(RealTrigSeries::new(&[1.0, 0.5, -0.2], &[0.3, 0.7])),
            IncidentField::Entire {
                k: 1.7,
                modes: ComplexFourierSeries::from_modes(&[(-2, c(0.5, 0.1)), (0, c(1.0, 0.0)), (3, c(0.0, 1.0))]),
            },
        ];
        let h = 1e-5;
        for f in &fields {
            let fd = (f.evaluate(1.3 + h, 0.4).unwrap() - f.evaluate(1.3 - h, 0.4).unwrap()) / (2.0 * h);
            assert!((f.radial_derivative(1.3, 0.4).unwrap() - fd).norm() < 1e-8);
        }
    }

    #[test]
    fn zero_epsilon_difference_vanishes() {
        let d = PerturbedDisk::new(0.0, RealTrigSeries::cos_mode(2, 1.0)).unwrap();
        let (_, w) = electric_probe(1).unwrap();
        let mp = MeasurementParams::laplace_default();
        let s = simulate_scattered_difference(&d, &w, &fast(), &mp, 0).unwrap();
        assert!(s.iter().all(|z| z.norm() == 0.0));
        let inc = IncidentField::Entire {
            k: 1.0,
            modes: ComplexFourierSeries::single_mode(1, c(1.0, 0.0)),
        };
        let s = simulate_scattered_difference(&d, &inc, &fast(), &MeasurementParams::helmholtz_default(1.0), 0).unwrap();
        assert!(s.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn concentric_difference_closed_form() {
        let eps = 0.05;
        let d = PerturbedDisk::new(eps, RealTrigSeries::constant(1.0)).unwrap();
        let (_, w) = electric_probe(1).unwrap();
        let mp = MeasurementParams::laplace_default();
        let s = simulate_scattered_difference(&d, &w, &fast(), &mp, 0).unwrap();
        for (j, z) in s.iter().enumerate() {
            let t = node(j, mp.samples);
            let expect = -(2.0 * eps + eps * eps) * t.cos() / mp.radius;
            assert!((z.re - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn dipole_measurement() {
        let (r, eps, m) = (100.0, 0.01, 32);
        let cosine: Vec<f64> = (0..m).map(|j| -2.0 * eps * node(j, m).cos() / r + 0.3).collect();
        let (c1, d1) = measure_dipole_laplace(&cosine, r, eps).unwrap();
        assert!((c1 + 2.0).abs() < 1e-12 && d1.abs() < 1e-12);
        assert_eq!(measure_dipole_laplace(&vec![0.0; m], r, eps).unwrap(), (0.0, 0.0));
        let sine: Vec<f64> = (0..m).map(|j| -eps * node(j, m).sin() / r).collect();
        let (c1, d1) = measure_dipole_laplace(&sine, r, eps).unwrap();
        assert!(c1.abs() < 1e-12 && (d1 + 1.0).abs() < 1e-12);
        assert!(measure_dipole_laplace(&sine, r, 0.0).is_err());
    }

    #[test]
    fn pattern_measurement_round_trip() {
        let (k, eps, r, m) = (1.0, 0.01, 200.0, 32);
        assert_eq!(measure_pattern_helmholtz(&vec![c(0.0, 0.0); m], k, r, eps, 4).unwrap().max_abs(), 0.0);
        let exposed = ComplexFourierSeries::from_modes(&[(-2, c(0.3, -0.1)), (1, c(1.0, 0.5)), (3, c(0.0, 0.2))]);
        let h = hankel1_array(4, k).unwrap();
        // Synthesize ε Σ ĉ_n e^{-i(π/4 + |n|π/2)} / H_{|n|}(k) in the asymptotic radial form.
        let samples: Vec<Complex64> = (0..m)
            .map(|j| {
                let t = node(j, m);
                let sum: Complex64 = exposed
                    .modes()
                    .map(|(n, v)| {
                        let a = n.unsigned_abs() as usize;
                        v * eps / h[a] * Complex64::cis(-(FRAC_PI_4 + a as f64 * FRAC_PI_2) + n as f64 * t)
                    })
                    .sum();
                sum * (2.0 / (PI * k * r)).sqrt() * Complex64::cis(k * r)
            })
            .collect();
        let got = measure_pattern_helmholtz(&samples, k, r, eps, 4).unwrap();
        assert!((&got - &exposed.resized(4)).max_abs() < 1e-10);
    }

    #[test]
    fn electric_formulas_concentric() {
        // f ≡ 1 at first order: c₁(w¹) = -2, d₁(v¹) = 2, others 0.
        let meas = ElectricMeasurement {
            n: 1,
            v: (0.0, 2.0),
            w: (-2.0, 0.0),
        };
        let r = reconstruct_electric(&[meas]).unwrap();
        assert!((r.f_hat.a(0) - 2.0).abs() < 1e-15);
        assert_eq!(r.f_hat.order(), 2);
        assert!(reconstruct_electric(&[]).is_err());
        let zero = ElectricMeasurement {
            n: 2,
            v: (0.0, 0.0),
            w: (0.0, 0.0),
        };
        let r = reconstruct_electric(&[meas, zero]).unwrap();
        assert_eq!(r.f_hat.order(), 3);
    }

    #[test]
    fn acoustic_manufactured_recovery() {
        let k = 1.0;
        let truth = RealTrigSeries::new(&[0.4, 0.5, 1.0], &[0.0, 0.0, -0.7]).to_complex();
        let meas: Vec<AcousticMeasurement> = (-3i64..=3)
            .map(|m| {
                // Exposed series ĉ_n(f e^{-i(m-1)θ}) = ĉ_{n+m-1}(f).
                let pattern = ComplexFourierSeries::from_modes(
                    &(-4i64..=4).map(|n| (n, truth.coeff(n + m - 1))).collect::<Vec<_>>(),
                );
                AcousticMeasurement { m, pattern }
            })
            .collect();
        let r = reconstruct_acoustic(&meas, k, DEFAULT_STABILITY_THRESHOLD).unwrap();
        let got = r.f_hat.to_complex();
        for n in -3i64..=3 {
            assert!((got.coeff(n) - truth.coeff(n)).norm() < 1e-9, "n={n}");
        }
        assert!(r.stability.iter().all(|s| s.stable));
        assert!(r.residuals.iter().all(|&x| x < 1e-12));

        let zero: Vec<AcousticMeasurement> = (-2i64..=2)
            .map(|m| AcousticMeasurement {
                m,
                pattern: ComplexFourierSeries::zeros(3),
            })
            .collect();
        assert_eq!(reconstruct_acoustic(&zero, k, 1e3).unwrap().f_hat.max_abs_on_grid(16), 0.0);
    }

    #[test]
    fn unstable_probes_are_omitted() {
        let meas: Vec<AcousticMeasurement> = [1i64, 9]
            .iter()
            .map(|&m| AcousticMeasurement {
                m,
                pattern: ComplexFourierSeries::single_mode(1, c(1.0, 0.0)),
            })
            .collect();
        let r = reconstruct_acoustic(&meas, 1.0, 1e3).unwrap();
        assert!(r.stability[0].stable && !r.stability[1].stable);
        assert_eq!(r.f_hat.order(), 1);
    }

    #[test]
    fn noise_is_seeded() {
        let d = PerturbedDisk::new(0.01, RealTrigSeries::cos_mode(2, 1.0)).unwrap();
        let (v, _) = electric_probe(2).unwrap();
        let mp = MeasurementParams {
            noise: 0.01,
            ..MeasurementParams::laplace_default()
        };
        let a = simulate_scattered_difference(&d, &v, &fast(), &mp, 3).unwrap();
        let b = simulate_scattered_difference(&d, &v, &fast(), &mp, 3).unwrap();
        let other = simulate_scattered_difference(&d, &v, &fast(), &mp, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, other);
    }
}

//! Exterior Dirichlet solver on the true perturbed boundary by least-squares
//! collocation in an outgoing multipole basis.
//!
//! Laplace basis: `(ρ/r)^{|n|} e^{inθ}`, which contains the constant at
//! `n = 0`. Helmholtz basis: `H_{|n|}(kr) / H_{|n|}(kρ) e^{inθ}`. Both decay
//! (or radiate) by construction. With reference radius `ρ = 1` and `ε = 0`
//! the coefficients are the Fourier coefficients of the data.

use crate::dtn::Physics;
use crate::fourier::{min_samples, node, ComplexFourierSeries};
use crate::geometry::PerturbedDisk;
use crate::linalg::{solve_least_squares, DenseLinearSystem};
use crate::par::Execution;
use crate::special_functions::{hankel1_array, hankel1_with_derivs};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

/// Least-squares residual above which an ill-conditioned fit is rejected.
pub const RESIDUAL_LIMIT: f64 = 1e-6;
/// Normal-equation condition estimate above which a poor fit is rejected.
pub const CONDITION_LIMIT: f64 = 1e14;
/// Points this close inside the boundary are still accepted by `evaluate`.
const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    pub n_trunc: usize,
    pub m_colloc: usize,
    pub execution: Execution,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            n_trunc: 64,
            m_colloc: 512,
            execution: Execution::default(),
        }
    }
}

impl SolverParams {
    pub fn new(n_trunc: usize, m_colloc: usize) -> Self {
        SolverParams {
            n_trunc,
            m_colloc,
            execution: Execution::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// `M_colloc ≥ 2 (2 N_trunc + 2)`.
    pub fn validate(&self) -> Result<()> {
        let needed = 2 * min_samples(self.n_trunc);
        if self.m_colloc < needed || !self.m_colloc.is_multiple_of(2) {
            return Err(Error::Aliasing {
                samples: self.m_colloc,
                order: self.n_trunc,
                needed,
            });
        }
        Ok(())
    }
}

/// How the Laplace constant mode is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaplaceGauge {
    /// `u = const + O(1/r)`; the constant is part of the solution.
    #[default]
    Bounded,
    /// `u → 0`; the boundary condition holds up to a free constant, which is
    /// fitted and then reported separately.
    Decaying,
}

/// Outgoing expansion about a reference circle of radius `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multipole {
    physics: Physics,
    reference_radius: f64,
    coeffs: ComplexFourierSeries,
    // H_{|n|}(kρ) for the Helmholtz basis.
    denominators: Vec<Complex64>,
}

impl Multipole {
    pub fn new(physics: Physics, reference_radius: f64, coeffs: ComplexFourierSeries) -> Result<Self> {
        let physics = physics.validate()?;
        if !reference_radius.is_finite() || reference_radius <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "reference radius must be positive, got {reference_radius}"
            )));
        }
        let denominators = match physics {
            Physics::Laplace => Vec::new(),
            Physics::Helmholtz { k } => hankel1_array(coeffs.order(), k * reference_radius)?,
        };
        Ok(Multipole {
            physics,
            reference_radius,
            coeffs,
            denominators,
        })
    }

    pub fn physics(&self) -> Physics {
        self.physics
    }

    pub fn reference_radius(&self) -> f64 {
        self.reference_radius
    }

    pub fn coefficients(&self) -> &ComplexFourierSeries {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.order()
    }

    /// Radial factors of the basis and their `r`-derivatives for `|n| ≤ N`.
    fn radial(&self, r: f64, with_derivs: bool) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        let n = self.order();
        match self.physics {
            Physics::Laplace => {
                let q = self.reference_radius / r;
                let mut vals = Vec::with_capacity(n + 1);
                let mut p = 1.0;
                for _ in 0..=n {
                    vals.push(Complex64::new(p, 0.0));
                    p *= q;
                }
                let ders = if with_derivs {
                    vals.iter()
                        .enumerate()
                        .map(|(m, v)| v * (-(m as f64) / r))
                        .collect()
                } else {
                    Vec::new()
                };
                Ok((vals, ders))
            }
            Physics::Helmholtz { k } => {
                if with_derivs {
                    let (h, dh) = hankel1_with_derivs(n, k * r)?;
                    let vals = h.iter().zip(&self.denominators).map(|(a, b)| a.fdiv(*b)).collect();
                    let ders = dh
                        .iter()
                        .zip(&self.denominators)
                        .map(|(a, b)| (a * k).fdiv(*b))
                        .collect();
                    Ok((vals, ders))
                } else {
                    let h = hankel1_array(n, k * r)?;
                    let vals = h.iter().zip(&self.denominators).map(|(a, b)| a.fdiv(*b)).collect();
                    Ok((vals, Vec::new()))
                }
            }
        }
    }

    pub fn evaluate(&self, r: f64, theta: f64) -> Result<Complex64> {
        let (rad, _) = self.radial(r, false)?;
        Ok(self
            .coeffs
            .modes()
            .map(|(n, c)| c * rad[n.unsigned_abs() as usize] * Complex64::cis(n as f64 * theta))
            .sum())
    }

    /// `(∂_r u, ∂_θ u)`.
    pub fn gradient_polar(&self, r: f64, theta: f64) -> Result<(Complex64, Complex64)> {
        let (rad, drad) = self.radial(r, true)?;
        let mut ur = Complex64::new(0.0, 0.0);
        let mut ut = Complex64::new(0.0, 0.0);
        for (n, c) in self.coeffs.modes() {
            let a = n.unsigned_abs() as usize;
            let e = c * Complex64::cis(n as f64 * theta);
            ur += e * drad[a];
            ut += e * rad[a] * Complex64::new(0.0, n as f64);
        }
        Ok((ur, ut))
    }

    /// Values on the circle of radius `r` at the `m` uniform nodes.
    pub fn sample_circle(&self, r: f64, m: usize) -> Result<Vec<Complex64>> {
        let (rad, _) = self.radial(r, false)?;
        let scaled = self.coeffs.map_modes(|n, c| c * rad[n.unsigned_abs() as usize]);
        Ok(scaled.sample(m))
    }

    /// Laplace only: `(α, β)` with `u = const + (α cos θ + β sin θ)/r + O(r⁻²)`.
    pub fn dipole(&self) -> Option<(Complex64, Complex64)> {
        if self.physics != Physics::Laplace {
            return None;
        }
        let (p, m) = (self.coeffs.coeff(1), self.coeffs.coeff(-1));
        let rho = self.reference_radius;
        Some(((p + m) * rho, (p - m) * Complex64::new(0.0, rho)))
    }

    /// Helmholtz only: `g_n` with `u ~ √(2/(πr)) e^{ikr} Σ g_n e^{inθ}`.
    pub fn far_field_pattern(&self) -> Option<ComplexFourierSeries> {
        let Physics::Helmholtz { k } = self.physics else {
            return None;
        };
        let scale = 1.0 / k.sqrt();
        Some(self.coeffs.map_modes(|n, c| {
            let a = n.unsigned_abs() as usize;
            c.fdiv(self.denominators[a]) * far_field_phase(a) * scale
        }))
    }
}

/// `e^{-i(π/4 + |n|π/2)}`.
pub fn far_field_phase(abs_n: usize) -> Complex64 {
    let quarter = (abs_n % 4) as f64;
    Complex64::cis(-(FRAC_PI_4 + quarter * FRAC_PI_2))
}

/// Solution of an exterior Dirichlet problem on a [`PerturbedDisk`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorSolution {
    field: Multipole,
    disk: PerturbedDisk,
    gauge_constant: Complex64,
    boundary_residual: f64,
    condition_estimate: f64,
}

impl ExteriorSolution {
    pub fn physics(&self) -> Physics {
        self.field.physics
    }

    pub fn field(&self) -> &Multipole {
        &self.field
    }

    pub fn coefficients(&self) -> &ComplexFourierSeries {
        &self.field.coeffs
    }

    pub fn disk(&self) -> &PerturbedDisk {
        &self.disk
    }

    /// Fitted constant `C` with `u = Ψ + C` on the boundary in the
    /// [`LaplaceGauge::Decaying`] gauge; zero otherwise.
    pub fn gauge_constant(&self) -> Complex64 {
        self.gauge_constant
    }

    /// `max_j |u(boundary_point(θ_j)) - Ψ(θ_j) - C|` over collocation nodes.
    pub fn boundary_residual(&self) -> f64 {
        self.boundary_residual
    }

    pub fn condition_estimate(&self) -> f64 {
        self.condition_estimate
    }

    pub fn evaluate(&self, r: f64, theta: f64) -> Result<Complex64> {
        if r < self.disk.radius(theta) - BOUNDARY_SLACK {
            return Err(Error::InsideObstacle { r, theta });
        }
        self.field.evaluate(r, theta)
    }

    /// `∇u · ν` at the boundary point with angle `θ`.
    pub fn normal_derivative_on_boundary(&self, theta: f64) -> Result<Complex64> {
        let (r, dr) = self.disk.radius_and_slope(theta);
        let (ur, ut) = self.field.gradient_polar(r, theta)?;
        Ok((ur * r - ut * (dr / r)) / r.hypot(dr))
    }

    /// Values on the circle of radius `r`, which must enclose the obstacle.
    pub fn sample_circle(&self, r: f64, m: usize) -> Result<Vec<Complex64>> {
        if r < self.disk.max_radius() {
            return Err(Error::InsideObstacle { r, theta: 0.0 });
        }
        self.field.sample_circle(r, m)
    }
}

/// Fits `u(1 + εf(θ_j), θ_j) = data(θ_j)` at `M_colloc` uniform nodes.
pub fn solve_exterior_dirichlet<F>(
    physics: Physics,
    disk: &PerturbedDisk,
    data: F,
    params: &SolverParams,
) -> Result<ExteriorSolution>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    solve_exterior_dirichlet_gauged(physics, disk, data, params, LaplaceGauge::Bounded)
}

/// [`solve_exterior_dirichlet`] with band-limited data.
pub fn solve_exterior_dirichlet_series(
    physics: Physics,
    disk: &PerturbedDisk,
    psi: &ComplexFourierSeries,
    params: &SolverParams,
) -> Result<ExteriorSolution> {
    solve_exterior_dirichlet(physics, disk, |t| psi.eval(t), params)
}

/// [`solve_exterior_dirichlet`] with an explicit Laplace gauge; the gauge is
/// ignored for Helmholtz.
pub fn solve_exterior_dirichlet_gauged<F>(
    physics: Physics,
    disk: &PerturbedDisk,
    data: F,
    params: &SolverParams,
    gauge: LaplaceGauge,
) -> Result<ExteriorSolution>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let physics = physics.validate()?;
    params.validate()?;
    let n = params.n_trunc;
    let m = params.m_colloc;
    let unit = Multipole::new(physics, 1.0, ComplexFourierSeries::zeros(n))?;
    let cols = 2 * n + 1;

    let rows: Vec<(Vec<Complex64>, Complex64)> = params.execution.try_map(m, |j| {
        let theta = node(j, m);
        let r = disk.radius(theta);
        let (rad, _) = unit.radial(r, false)?;
        let row = (0..cols)
            .map(|c| {
                let mode = c as i64 - n as i64;
                rad[mode.unsigned_abs() as usize] * Complex64::cis(mode as f64 * theta)
            })
            .collect();
        Ok::<_, Error>((row, data(theta)))
    })?;
    let rhs: Vec<Complex64> = rows.iter().map(|(_, b)| *b).collect();
    let system = DenseLinearSystem::from_fn(m, cols, |i, c| rows[i].0[c], rhs.clone())?;
    let ls = solve_least_squares(&system)?;

    let residual = system
        .residual(&ls.solution)
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm()));
    if residual > RESIDUAL_LIMIT && ls.condition_estimate > CONDITION_LIMIT {
        return Err(Error::IllConditioned {
            residual,
            condition: ls.condition_estimate,
        });
    }

    let mut coeffs = ComplexFourierSeries::zeros(n);
    for (c, v) in ls.solution.iter().enumerate() {
        coeffs.set(c as i64 - n as i64, *v);
    }
    let mut gauge_constant = Complex64::new(0.0, 0.0);
    if physics == Physics::Laplace && gauge == LaplaceGauge::Decaying {
        gauge_constant = -coeffs.coeff(0);
        coeffs.set(0, Complex64::new(0.0, 0.0));
    }
    Ok(ExteriorSolution {
        field: Multipole::new(physics, 1.0, coeffs)?,
        disk: disk.clone(),
        gauge_constant,
        boundary_residual: residual,
        condition_estimate: ls.condition_estimate,
    })
}

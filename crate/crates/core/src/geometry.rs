//! The perturbed disk `∂D_ε = {(1 + ε f(θ)) e_θ}`.

use crate::fourier::RealTrigSeries;
use crate::{Error, Result};

/// Grid used for sup-norm estimates of `f` and `ḟ`.
pub const SUP_GRID: usize = 4096;

/// Star-shaped obstacle with boundary radius `1 + ε f(θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedDisk {
    epsilon: f64,
    shape: RealTrigSeries,
    slope: RealTrigSeries,
    m_bound: f64,
}

impl PerturbedDisk {
    /// Rejects negative `ε` and shapes for which `1 + ε f` is not positive
    /// on the sup grid.
    pub fn new(epsilon: f64, shape: RealTrigSeries) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "epsilon must be nonnegative and finite, got {epsilon}"
            )));
        }
        let slope = shape.derivative();
        let values = shape.sample(SUP_GRID);
        if let Some(bad) = values.iter().find(|&&v| 1.0 + epsilon * v <= 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "boundary radius 1 + eps f = {} is not positive",
                1.0 + epsilon * bad
            )));
        }
        // M = max(|f|_inf, |f'|_inf, 1), estimated on the grid.
        let sup_f = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let m_bound = sup_f.max(slope.max_abs_on_grid(SUP_GRID)).max(1.0);
        Ok(PerturbedDisk {
            epsilon,
            shape,
            slope,
            m_bound,
        })
    }

    pub fn unit_disk() -> Self {
        Self::new(0.0, RealTrigSeries::zeros(0)).expect("unit disk is valid")
    }

    /// Same shape function, different amplitude.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(epsilon, self.shape.clone())
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn shape(&self) -> &RealTrigSeries {
        &self.shape
    }

    /// `M = max(‖f‖∞, ‖ḟ‖∞, 1)` on a 4096-point grid.
    pub fn m_bound(&self) -> f64 {
        self.m_bound
    }

    /// `1 + ε f(θ)`.
    pub fn radius(&self, theta: f64) -> f64 {
        1.0 + self.epsilon * self.shape.eval(theta)
    }

    /// Largest boundary radius on the sup grid.
    pub fn max_radius(&self) -> f64 {
        1.0 + self.epsilon * self.shape.sample(SUP_GRID).into_iter().fold(f64::MIN, f64::max)
    }

    pub fn boundary_point(&self, theta: f64) -> [f64; 2] {
        let r = self.radius(theta);
        let (s, c) = theta.sin_cos();
        [r * c, r * s]
    }

    /// `d/dθ` of [`PerturbedDisk::boundary_point`]: `ε ḟ e_θ + (1 + ε f) τ_θ`.
    pub fn tangent(&self, theta: f64) -> [f64; 2] {
        let r = self.radius(theta);
        let dr = self.epsilon * self.slope.eval(theta);
        let (s, c) = theta.sin_cos();
        [dr * c - r * s, dr * s + r * c]
    }

    /// `N_θ = (1 + ε f) e_θ - ε ḟ τ_θ`, not normalized.
    pub fn normal_vector(&self, theta: f64) -> [f64; 2] {
        let r = self.radius(theta);
        let dr = self.epsilon * self.slope.eval(theta);
        let (s, c) = theta.sin_cos();
        [r * c + dr * s, r * s - dr * c]
    }

    /// `ν = N_θ / |N_θ|`.
    pub fn outward_normal(&self, theta: f64) -> [f64; 2] {
        let n = self.normal_vector(theta);
        let len = n[0].hypot(n[1]);
        [n[0] / len, n[1] / len]
    }

    /// `|N_θ| = sqrt((1 + ε f)^2 + (ε ḟ)^2)`.
    pub fn metric_factor(&self, theta: f64) -> f64 {
        let r = self.radius(theta);
        let dr = self.epsilon * self.slope.eval(theta);
        r.hypot(dr)
    }

    /// `(1 + ε f(θ), ε ḟ(θ))`.
    pub fn radius_and_slope(&self, theta: f64) -> (f64, f64) {
        (self.radius(theta), self.epsilon * self.slope.eval(theta))
    }
}

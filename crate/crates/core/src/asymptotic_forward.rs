//! First-order fields and far-field patterns in closed form.
//!
//! The shifted-disk solutions expand about the circle of radius
//! `ρ = 1 - εM`, which lies inside the obstacle, so both terms are smooth up
//! to the true boundary.

use crate::dtn::{apply_symbol, DtnOperator, Physics, MIN_WAVENUMBER};
use crate::forward_oracle::{far_field_phase, Multipole};
use crate::fourier::{ComplexFourierSeries, RealTrigSeries, SampledPeriodicFn};
use crate::geometry::PerturbedDisk;
use crate::special_functions::hankel1_array;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `u₀^{εM}` and `u₁^{εM}`, both expanded about radius `1 - εM`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedDiskSolutions {
    pub epsilon: f64,
    pub u0: Multipole,
    pub u1: Multipole,
}

impl ShiftedDiskSolutions {
    /// `u₀^{εM} + ε u₁^{εM}`.
    pub fn evaluate(&self, r: f64, theta: f64) -> Result<Complex64> {
        Ok(self.u0.evaluate(r, theta)? + self.u1.evaluate(r, theta)? * self.epsilon)
    }
}

/// Laplace shifted-disk pair: mode `n` of `u₀` is `(ρ/r)^{|n|} ĉ_n(Ψ)` and of
/// `u₁` is `-(ρ/r)^{|n|} ĉ_n((f + M) 𝒩₀Ψ)`.
pub fn shifted_disk_solutions_laplace(
    disk: &PerturbedDisk,
    psi: &ComplexFourierSeries,
) -> Result<ShiftedDiskSolutions> {
    shifted_disk_solutions(Physics::Laplace, disk, psi)
}

/// Helmholtz shifted-disk pair with Hankel ratios `H_{|n|}(kr)/H_{|n|}(kρ)`.
pub fn shifted_disk_solutions_helmholtz(
    disk: &PerturbedDisk,
    psi: &ComplexFourierSeries,
    k: f64,
) -> Result<ShiftedDiskSolutions> {
    shifted_disk_solutions(Physics::Helmholtz { k }, disk, psi)
}

fn shifted_disk_solutions(
    physics: Physics,
    disk: &PerturbedDisk,
    psi: &ComplexFourierSeries,
) -> Result<ShiftedDiskSolutions> {
    let eps = disk.epsilon();
    let m = disk.m_bound();
    let rho = 1.0 - eps * m;
    if rho <= 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "shift radius 1 - eps M = {rho} is not positive"
        )));
    }
    if let Physics::Helmholtz { k } = physics {
        if k * rho < MIN_WAVENUMBER {
            return Err(Error::InvalidParameter(format!(
                "shifted wavenumber k (1 - eps M) = {} is below {MIN_WAVENUMBER}",
                k * rho
            )));
        }
    }
    let n0_psi = apply_symbol(physics, DtnOperator::N0, psi)?;
    let shifted_f = (disk.shape() + &RealTrigSeries::constant(m)).to_complex();
    let order = disk.shape().order() + psi.order();
    let u1_data = -&n0_psi.product(&shifted_f, order);
    Ok(ShiftedDiskSolutions {
        epsilon: eps,
        u0: Multipole::new(physics, rho, psi.clone())?,
        u1: Multipole::new(physics, rho, u1_data)?,
    })
}

/// `u - u₀ ≈ C + (dipole_cos cos θ + dipole_sin sin θ)/r`. The fields are
/// complex so that complex boundary data is accepted; they are real for
/// real data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldLaplace {
    pub dipole_cos: Complex64,
    pub dipole_sin: Complex64,
    /// Never predicted; `None` marks the unfixed gauge.
    pub constant: Option<Complex64>,
}

impl FarFieldLaplace {
    /// Dipole part at `(r, θ)`, constant excluded.
    pub fn evaluate(&self, r: f64, theta: f64) -> Complex64 {
        (self.dipole_cos * theta.cos() + self.dipole_sin * theta.sin()) / r
    }
}

/// `dipole_cos = -ε â₁(𝒩₀(Ψ) f)`, `dipole_sin = -ε b̂₁(𝒩₀(Ψ) f)`.
pub fn far_field_laplace(disk: &PerturbedDisk, psi: &ComplexFourierSeries) -> Result<FarFieldLaplace> {
    let g = n0_times_f(Physics::Laplace, disk, psi)?;
    let (a1, b1) = real_pair(&g, 1);
    let eps = disk.epsilon();
    Ok(FarFieldLaplace {
        dipole_cos: -a1 * eps,
        dipole_sin: -b1 * eps,
        constant: None,
    })
}

/// Outgoing pattern: `u - u₀ ≈ √(2/(πr)) e^{ikr} Σ_{|n| ≤ cutoff} g_n e^{inθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldHelmholtz {
    pub k: f64,
    pub pattern: ComplexFourierSeries,
    pub cutoff: usize,
}

impl FarFieldHelmholtz {
    pub fn evaluate(&self, r: f64, theta: f64) -> Complex64 {
        self.pattern.eval(theta) * (2.0 / (PI * r)).sqrt() * Complex64::cis(self.k * r)
    }
}

/// Smallest `N` with `Σ_{|n|>N} |ĉ_n(g)| ≤ √ε Σ_n |ĉ_n(g)|`.
pub fn choose_cutoff(g: &ComplexFourierSeries, epsilon: f64) -> usize {
    let total = g.l1_norm();
    let bound = epsilon.max(0.0).sqrt() * total;
    let mut tail = total;
    for n in 0..=g.order() {
        let ni = n as i64;
        tail -= g.coeff(ni).norm();
        if n > 0 {
            tail -= g.coeff(-ni).norm();
        }
        if tail <= bound {
            return n;
        }
    }
    g.order()
}

/// `g_n = -ε ĉ_n(𝒩₀(Ψ) f) e^{-i(π/4 + |n|π/2)} / (√k H_{|n|}(k))` for
/// `|n| ≤ N` chosen by [`choose_cutoff`].
pub fn far_field_helmholtz(
    disk: &PerturbedDisk,
    psi: &ComplexFourierSeries,
    k: f64,
) -> Result<FarFieldHelmholtz> {
    let physics = Physics::Helmholtz { k }.validate()?;
    let g = n0_times_f(physics, disk, psi)?;
    let eps = disk.epsilon();
    let cutoff = choose_cutoff(&g, eps);
    let h = hankel1_array(cutoff, k)?;
    let scale = -eps / k.sqrt();
    let mut pattern = ComplexFourierSeries::zeros(cutoff);
    for (n, c) in g.modes() {
        let a = n.unsigned_abs() as usize;
        if a <= cutoff {
            pattern.set(n, c.fdiv(h[a]) * far_field_phase(a) * scale);
        }
    }
    Ok(FarFieldHelmholtz { k, pattern, cutoff })
}

/// Outgoing pattern of a field sampled on the circle of radius `r`, using
/// the exact radial factor `H_{|n|}(kr)` rather than its large-`r` form.
pub fn pattern_from_circle(
    samples: &SampledPeriodicFn<Complex64>,
    k: f64,
    r: f64,
    order: usize,
) -> Result<ComplexFourierSeries> {
    Physics::Helmholtz { k }.validate()?;
    let c = ComplexFourierSeries::analyze(samples, order)?;
    let h = hankel1_array(order, k * r)?;
    let scale = 1.0 / k.sqrt();
    Ok(c.map_modes(|n, v| {
        let a = n.unsigned_abs() as usize;
        v.fdiv(h[a]) * far_field_phase(a) * scale
    }))
}

/// `(α, β)` of the `1/r` term of a decaying harmonic field sampled on the
/// circle of radius `r`. Exact for multipole fields: other modes are
/// orthogonal to `e^{±iθ}`.
pub fn dipole_from_circle(samples: &SampledPeriodicFn<Complex64>, r: f64) -> Result<(Complex64, Complex64)> {
    let c = ComplexFourierSeries::analyze(samples, 1)?;
    let (a, b) = real_pair(&c, 1);
    Ok((a * r, b * r))
}

fn n0_times_f(physics: Physics, disk: &PerturbedDisk, psi: &ComplexFourierSeries) -> Result<ComplexFourierSeries> {
    let n0_psi = apply_symbol(physics, DtnOperator::N0, psi)?;
    let order = disk.shape().order() + psi.order();
    Ok(n0_psi.product(&disk.shape().to_complex(), order))
}

/// `(â_n, b̂_n)` of a complex series, so that `c_n e^{inθ} + c_{-n} e^{-inθ}
/// = â_n cos nθ + b̂_n sin nθ`.
fn real_pair(c: &ComplexFourierSeries, n: i64) -> (Complex64, Complex64) {
    let (p, m) = (c.coeff(n), c.coeff(-n));
    (p + m, (p - m) * Complex64::i())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtn::DtnSymbol;
    use crate::fourier::node;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cos_series(n: i64) -> ComplexFourierSeries {
        ComplexFourierSeries::from_modes(&[(n, c(0.5, 0.0)), (-n, c(0.5, 0.0))])
    }

    #[test]
    fn shifted_solutions_at_zero_epsilon() {
        let d = PerturbedDisk::new(0.0, RealTrigSeries::cos_mode(2, 1.0)).unwrap();
        let psi = cos_series(3);
        let s = shifted_disk_solutions_laplace(&d, &psi).unwrap();
        assert_eq!(s.u0.reference_radius(), 1.0);
        assert_eq!(s.u0.coefficients(), &psi);
        // u₁ boundary data is -(f + M) 𝒩₀Ψ with M = 2.
        let f_plus_m = RealTrigSeries::new(&[4.0, 0.0, 1.0], &[]);
        for j in 0..16 {
            let t = node(j, 16);
            let expect = -f_plus_m.eval(t) * (-3.0 * (3.0 * t).cos());
            assert!((s.u1.evaluate(1.0, t).unwrap() - c(expect, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn shifted_solutions_constant_data() {
        let d = PerturbedDisk::new(0.05, RealTrigSeries::cos_mode(2, 1.0)).unwrap();
        let psi = ComplexFourierSeries::single_mode(0, c(2.5, 0.0));
        let s = shifted_disk_solutions_laplace(&d, &psi).unwrap();
        assert!((s.evaluate(1.7, 0.3).unwrap() - c(2.5, 0.0)).norm() < 1e-14);
        assert_eq!(s.u1.coefficients().max_abs(), 0.0);
    }

    #[test]
    fn shifted_helmholtz_u1_data() {
        let k = 1.0;
        let d = PerturbedDisk::new(0.0, RealTrigSeries::zeros(0)).unwrap();
        let psi = ComplexFourierSeries::single_mode(1, c(1.0, 0.0));
        let s = shifted_disk_solutions_helmholtz(&d, &psi, k).unwrap();
        let sigma = DtnSymbol::new(Physics::Helmholtz { k }, DtnOperator::N0, 1)
            .unwrap()
            .sigma(1)
            .unwrap();
        // f ≡ 0 gives M = 1, so the data is -σ₁(1, k) e^{iθ}.
        let v = s.u1.evaluate(1.0, 0.4).unwrap();
        assert!((v + sigma * Complex64::cis(0.4)).norm() < 1e-12);
    }

    fn boundary_misfit(physics: Physics, eps: f64) -> f64 {
        let f = RealTrigSeries::cos_mode(3, 1.0);
        let d = PerturbedDisk::new(eps, f).unwrap();
        let psi = cos_series(2);
        let s = match physics {
            Physics::Laplace => shifted_disk_solutions_laplace(&d, &psi).unwrap(),
            Physics::Helmholtz { k } => shifted_disk_solutions_helmholtz(&d, &psi, k).unwrap(),
        };
        let m = 256;
        let errs: Vec<Complex64> = (0..m)
            .map(|j| {
                let t = node(j, m);
                s.evaluate(d.radius(t), t).unwrap() - psi.eval(t)
            })
            .collect();
        let mean = errs.iter().sum::<Complex64>() / m as f64;
        errs.iter().map(|e| (e - mean).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn shifted_boundary_misfit_is_superlinear() {
        for physics in [Physics::Laplace, Physics::Helmholtz { k: 1.0 }] {
            let (e1, e2) = (boundary_misfit(physics, 0.02), boundary_misfit(physics, 0.01));
            let slope = (e1 / e2).log2();
            assert!(slope >= 1.5, "{physics:?} slope {slope}");
        }
    }

    #[test]
    fn laplace_far_field_examples() {
        let zero_f = PerturbedDisk::new(0.1, RealTrigSeries::zeros(0)).unwrap();
        let ff = far_field_laplace(&zero_f, &cos_series(1)).unwrap();
        assert_eq!((ff.dipole_cos, ff.dipole_sin), (c(0.0, 0.0), c(0.0, 0.0)));

        let d = PerturbedDisk::new(0.03, RealTrigSeries::constant(1.0)).unwrap();
        let constant = ComplexFourierSeries::single_mode(0, c(1.0, 0.0));
        assert_eq!(far_field_laplace(&d, &constant).unwrap().dipole_cos, c(0.0, 0.0));

        let ff = far_field_laplace(&d, &cos_series(1)).unwrap();
        assert!((ff.dipole_cos - c(0.03, 0.0)).norm() < 1e-15);
        assert!(ff.dipole_sin.norm() < 1e-15);
        assert!(ff.constant.is_none());
    }

    #[test]
    fn cutoff_rule() {
        let band = ComplexFourierSeries::from_modes(&[(-3, c(1.0, 0.0)), (2, c(0.5, 0.0))]);
        assert!(choose_cutoff(&band, 1e-8) <= 3);
        let mut geo = ComplexFourierSeries::zeros(30);
        for n in -30i64..=30 {
            geo.set(n, c(0.5f64.powi(n.abs() as i32), 0.0));
        }
        let total = geo.l1_norm();
        let expect = (0..=30usize)
            .find(|&n| {
                let tail: f64 = ((n + 1)..=30).map(|m| 2.0 * 0.5f64.powi(m as i32)).sum();
                tail <= 0.1 * total
            })
            .unwrap();
        assert_eq!(choose_cutoff(&geo, 0.01), expect);
        assert_eq!(expect, 3);
        assert_eq!(choose_cutoff(&geo, 1.0), 0);
    }

    #[test]
    fn helmholtz_far_field_mode_bookkeeping() {
        let k = 1.0;
        let d = PerturbedDisk::new(0.01, RealTrigSeries::cos_mode(2, 1.0)).unwrap();
        let psi = ComplexFourierSeries::single_mode(1, c(1.0, 0.0));
        let ff = far_field_helmholtz(&d, &psi, k).unwrap();
        let sigma = DtnSymbol::new(Physics::Helmholtz { k }, DtnOperator::N0, 1)
            .unwrap()
            .sigma(1)
            .unwrap();
        let h = hankel1_array(3, k).unwrap();
        for (n, g) in ff.pattern.modes() {
            if n == -1 || n == 3 {
                let a = n.unsigned_abs() as usize;
                let expect = -0.01 * sigma * 0.5 / h[a] * far_field_phase(a);
                assert!((g - expect).norm() < 1e-14 * expect.norm());
            } else {
                assert!(g.norm() < 1e-16);
            }
        }
        let zero = PerturbedDisk::new(0.0, RealTrigSeries::cos_mode(2, 1.0)).unwrap();
        assert_eq!(far_field_helmholtz(&zero, &psi, k).unwrap().pattern.max_abs(), 0.0);
    }

    #[test]
    fn pattern_from_circle_inverts_multipole() {
        let k = 1.5;
        let coeffs = ComplexFourierSeries::from_modes(&[(-2, c(0.3, 0.1)), (0, c(1.0, 0.0)), (4, c(0.0, -0.2))]);
        let mp = Multipole::new(Physics::Helmholtz { k }, 0.9, coeffs).unwrap();
        let r = 50.0;
        let samples = SampledPeriodicFn::new(mp.sample_circle(r, 32).unwrap()).unwrap();
        let g = pattern_from_circle(&samples, k, r, 6).unwrap();
        let expect = mp.far_field_pattern().unwrap().resized(6);
        assert!((&g - &expect).max_abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn far_field_rotation_equivariance(
            fa in prop::collection::vec(-1.0f64..1.0, 4),
            fb in prop::collection::vec(-1.0f64..1.0, 3),
            p in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5),
            alpha in 0.0f64..std::f64::consts::TAU,
        ) {
            let f = RealTrigSeries::new(&fa, &fb);
            let modes: Vec<(i64, Complex64)> =
                p.iter().enumerate().map(|(i, (a, b))| (i as i64 - 2, c(*a, *b))).collect();
            let psi = ComplexFourierSeries::from_modes(&modes);
            // Rotation by α: g(θ) ↦ g(θ - α), real coefficients via the complex form.
            let f_rot = RealTrigSeries::from_complex(&f.to_complex().rotated(alpha), 1e-12).unwrap();
            let d = PerturbedDisk::new(0.01, f).unwrap();
            let d_rot = PerturbedDisk::new(0.01, f_rot).unwrap();

            let base = far_field_helmholtz(&d, &psi, 1.0).unwrap();
            let rot = far_field_helmholtz(&d_rot, &psi.rotated(alpha), 1.0).unwrap();
            let n = base.pattern.order().max(rot.pattern.order());
            let diff = &rot.pattern.resized(n) - &base.pattern.rotated(alpha).resized(n);
            prop_assert!(diff.max_abs() < 1e-10);

            let lb = far_field_laplace(&d, &psi).unwrap();
            let lr = far_field_laplace(&d_rot, &psi.rotated(alpha)).unwrap();
            let (s, co) = alpha.sin_cos();
            // Dipole (α, β) rotates as a vector.
            let ec = lb.dipole_cos * co - lb.dipole_sin * s;
            let es = lb.dipole_cos * s + lb.dipole_sin * co;
            prop_assert!((lr.dipole_cos - ec).norm() < 1e-10 && (lr.dipole_sin - es).norm() < 1e-10);
        }
    }
}

//! Dirichlet-to-Neumann operators of the unit disk as Fourier multipliers,
//! and their first-order correction for the perturbed disk.
//!
//! `N0` maps exterior Dirichlet data on the unit circle to `∂_r u` there;
//! `D0` is the companion multiplier with `D0 N0 Ψ = ∂_r² u`. The normal
//! points away from the obstacle, so decaying Laplace modes give
//! `σ(n) = -|n|`.

use crate::fourier::{ComplexFourierSeries, RealTrigSeries};
use crate::geometry::PerturbedDisk;
use crate::special_functions::{self, hankel1_with_derivs, second_derivative_from_ode};
use crate::{Error, Result};
use num_complex::Complex64;

/// Smallest wavenumber accepted anywhere in the crate.
pub const MIN_WAVENUMBER: f64 = 1e-3;

/// Field equation outside the obstacle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Physics {
    /// `Δu = 0`, bounded at infinity.
    Laplace,
    /// `Δu + k²u = 0` with the outgoing radiation condition.
    Helmholtz { k: f64 },
}

impl Physics {
    pub fn validate(self) -> Result<Self> {
        if let Physics::Helmholtz { k } = self {
            if !k.is_finite() || k < MIN_WAVENUMBER {
                return Err(Error::InvalidParameter(format!(
                    "wavenumber must be at least {MIN_WAVENUMBER}, got {k}"
                )));
            }
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtnOperator {
    /// `N0`: Dirichlet data to `∂_r u` on the unit circle.
    N0,
    /// `D0`: multiplier with `D0 N0 = ∂_r²` on the unit circle.
    D0,
}

/// Precomputed multiplier `σ(n)`, which depends only on `|n|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DtnSymbol {
    physics: Physics,
    operator: DtnOperator,
    table: Vec<Complex64>,
}

impl DtnSymbol {
    /// Tabulates `σ(n)` for `|n| ≤ max_order`.
    pub fn new(physics: Physics, operator: DtnOperator, max_order: usize) -> Result<Self> {
        let physics = physics.validate()?;
        let table = match physics {
            Physics::Laplace => (0..=max_order)
                .map(|n| {
                    let v = match (operator, n) {
                        (DtnOperator::N0, _) => -(n as f64),
                        (DtnOperator::D0, 0) => 0.0,
                        (DtnOperator::D0, _) => -(n as f64 + 1.0),
                    };
                    Complex64::new(v, 0.0)
                })
                .collect(),
            Physics::Helmholtz { k } => {
                if max_order > special_functions::MAX_ORDER {
                    return Err(special_functions::SpecialFunctionError::OrderOutOfRange(
                        max_order,
                    )
                    .into());
                }
                let (h, dh) = hankel1_with_derivs(max_order, k)?;
                (0..=max_order)
                    .map(|n| match operator {
                        DtnOperator::N0 => (dh[n] * k).fdiv(h[n]),
                        DtnOperator::D0 => {
                            (second_derivative_from_ode(n, k, h[n], dh[n]) * k).fdiv(dh[n])
                        }
                    })
                    .collect()
            }
        };
        Ok(DtnSymbol {
            physics,
            operator,
            table,
        })
    }

    pub fn physics(&self) -> Physics {
        self.physics
    }

    pub fn operator(&self) -> DtnOperator {
        self.operator
    }

    pub fn max_order(&self) -> usize {
        self.table.len() - 1
    }

    /// `σ(n)`, or `None` beyond the table.
    pub fn sigma(&self, n: i64) -> Option<Complex64> {
        self.table.get(n.unsigned_abs() as usize).copied()
    }

    /// `ĉ_n ↦ σ(n) ĉ_n`.
    pub fn apply(&self, psi: &ComplexFourierSeries) -> Result<ComplexFourierSeries> {
        if psi.order() > self.max_order() {
            return Err(Error::SymbolOrderExceeded {
                table: self.max_order(),
                order: psi.order(),
            });
        }
        Ok(psi.map_modes(|n, c| c * self.table[n.unsigned_abs() as usize]))
    }
}

/// One-shot `N0` or `D0` application with a table sized to `psi`.
pub fn apply_symbol(
    physics: Physics,
    operator: DtnOperator,
    psi: &ComplexFourierSeries,
) -> Result<ComplexFourierSeries> {
    DtnSymbol::new(physics, operator, psi.order())?.apply(psi)
}

/// `∂_r² u_0` on the unit circle, i.e. `D0 N0 Ψ`.
pub fn second_radial(physics: Physics, psi: &ComplexFourierSeries) -> Result<ComplexFourierSeries> {
    let n0 = apply_symbol(physics, DtnOperator::N0, psi)?;
    apply_symbol(physics, DtnOperator::D0, &n0)
}

/// Laplace case of [`second_radial`].
pub fn laplace_second_radial(psi: &ComplexFourierSeries) -> Result<ComplexFourierSeries> {
    second_radial(Physics::Laplace, psi)
}

/// `N¹_f Ψ = (D0 N0 Ψ) f - N0((N0 Ψ) f) - ḟ Ψ̇`, the `ε`-coefficient of the
/// perturbed DtN map. Output order is `order(f) + order(Ψ)`, which holds
/// every product exactly.
pub fn first_order_correction(
    physics: Physics,
    f: &RealTrigSeries,
    psi: &ComplexFourierSeries,
) -> Result<ComplexFourierSeries> {
    let order = f.order() + psi.order();
    let n0 = DtnSymbol::new(physics, DtnOperator::N0, order)?;
    let d0 = DtnSymbol::new(physics, DtnOperator::D0, order)?;
    let fc = f.to_complex();

    let n0_psi = n0.apply(psi)?;
    let curvature_term = d0.apply(&n0_psi)?.product(&fc, order);
    let transfer_term = n0.apply(&n0_psi.product(&fc, order))?;
    let tangential_term = fc.derivative().product(&psi.derivative(), order);
    Ok(&(&curvature_term - &transfer_term) - &tangential_term)
}

/// `N0 Ψ + ε N¹_f Ψ` for the shape stored in `disk`.
pub fn expanded_dtn(
    physics: Physics,
    disk: &PerturbedDisk,
    psi: &ComplexFourierSeries,
) -> Result<ComplexFourierSeries> {
    let n0_psi = apply_symbol(physics, DtnOperator::N0, psi)?;
    if disk.epsilon() == 0.0 {
        return Ok(n0_psi);
    }
    let correction = first_order_correction(physics, disk.shape(), psi)?;
    Ok(&n0_psi + &(&correction * disk.epsilon()))
}

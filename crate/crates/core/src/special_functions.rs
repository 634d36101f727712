//! Bessel and Hankel functions of integer order and positive real argument.
//!
//! `J_n` comes from Miller's downward recurrence (normalized with the
//! identity `J_0 + 2 Σ J_{2k} = 1`) for moderate arguments, and from the
//! Hankel asymptotic expansion of `J_0`, `J_1` followed by recurrence for
//! large arguments. `Y_n` is always built by upward recurrence from `Y_0`
//! and `Y_1`, which come either from the Neumann series in the `J_{2k}` or
//! from the same asymptotic expansion.
//!
//! The supported envelope is `n <= 200`, `x` in `[1e-6, 1e4]`. Inside it
//! every value is either finite or reported as [`SpecialFunctionError::Overflow`]
//! (only `Y_n` for large `n` and tiny `x` can overflow an `f64`).

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 200;
/// Smallest supported argument.
pub const MIN_ARGUMENT: f64 = 1e-6;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1e4;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Above this argument the order-0/1 functions come from the asymptotic expansion.
const ASYMPTOTIC_THRESHOLD: f64 = 25.0;

/// Magnitude beyond which the recurrences rescale or report overflow.
const BIG: f64 = 1e250;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecialFunctionError {
    #[error("argument {0} outside the supported range [{MIN_ARGUMENT:e}, {MAX_ARGUMENT:e}]")]
    ArgumentOutOfRange(f64),
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("Y_{order}({x}) is not representable as a finite f64")]
    Overflow { order: usize, x: f64 },
    #[error("asymptotic Hankel form needs x >= 10*max(n,1), got n = {order}, x = {x}")]
    AsymptoticPrecondition { order: usize, x: f64 },
}

type Result<T> = std::result::Result<T, SpecialFunctionError>;

fn check_argument(x: f64) -> Result<()> {
    if x.is_finite() && (MIN_ARGUMENT..=MAX_ARGUMENT).contains(&x) {
        Ok(())
    } else {
        Err(SpecialFunctionError::ArgumentOutOfRange(x))
    }
}

// Internal arrays may reach MAX_ORDER + 1 so that derivatives at MAX_ORDER work.
fn check_order(n: usize) -> Result<()> {
    if n <= MAX_ORDER + 1 {
        Ok(())
    } else {
        Err(SpecialFunctionError::OrderOutOfRange(n))
    }
}

/// `J_n(x)` for a single order.
pub fn bessel_j(n: usize, x: f64) -> Result<f64> {
    if n > MAX_ORDER {
        return Err(SpecialFunctionError::OrderOutOfRange(n));
    }
    Ok(bessel_j_array(n, x)?[n])
}

/// `Y_n(x)` for a single order.
pub fn bessel_y(n: usize, x: f64) -> Result<f64> {
    if n > MAX_ORDER {
        return Err(SpecialFunctionError::OrderOutOfRange(n));
    }
    Ok(bessel_y_array(n, x)?[n])
}

/// `H^(1)_n(x) = J_n(x) + i Y_n(x)`.
pub fn hankel1(n: usize, x: f64) -> Result<Complex64> {
    if n > MAX_ORDER {
        return Err(SpecialFunctionError::OrderOutOfRange(n));
    }
    Ok(hankel1_array(n, x)?[n])
}

/// `H^(1)'_n(x)` from `H'_n = -H_{n+1} + (n/x) H_n`.
pub fn hankel1_deriv(n: usize, x: f64) -> Result<Complex64> {
    if n > MAX_ORDER {
        return Err(SpecialFunctionError::OrderOutOfRange(n));
    }
    let h = hankel1_array(n + 1, x)?;
    Ok(derivative_from_recurrence(n, x, &h))
}

/// `H^(1)''_n(x)` from Bessel's equation `H'' = -H'/x - (1 - n^2/x^2) H`.
pub fn hankel1_second_deriv(n: usize, x: f64) -> Result<Complex64> {
    if n > MAX_ORDER {
        return Err(SpecialFunctionError::OrderOutOfRange(n));
    }
    let h = hankel1_array(n + 1, x)?;
    let d1 = derivative_from_recurrence(n, x, &h);
    Ok(second_derivative_from_ode(n, x, h[n], d1))
}

/// Leading large-argument form `sqrt(2/(pi x)) exp(i(x - pi/4 - n pi/2))`.
///
/// Only valid for `x >= 10 max(n, 1)`; smaller arguments are rejected.
pub fn hankel1_asymptotic(n: usize, x: f64) -> Result<Complex64> {
    check_argument(x)?;
    if x < 10.0 * (n.max(1) as f64) {
        return Err(SpecialFunctionError::AsymptoticPrecondition { order: n, x });
    }
    let phase = x - PI / 4.0 - (n as f64) * PI / 2.0;
    Ok(Complex64::from_polar((2.0 / (PI * x)).sqrt(), phase))
}

/// `J_0(x), ..., J_nmax(x)`.
pub fn bessel_j_array(nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_argument(x)?;
    check_order(nmax)?;
    if x <= ASYMPTOTIC_THRESHOLD {
        let (values, _) = miller_normalized(nmax, x);
        return Ok(values);
    }
    let (j0, _) = asymptotic_j_y(0, x);
    let (j1, _) = asymptotic_j_y(1, x);
    if (nmax as f64) < x {
        let mut out = Vec::with_capacity(nmax + 1);
        out.push(j0);
        if nmax >= 1 {
            out.push(j1);
        }
        for n in 1..nmax {
            let next = (2.0 * n as f64 / x) * out[n] - out[n - 1];
            out.push(next);
        }
        return Ok(out);
    }
    // Orders above x: downward recurrence is the stable direction. Match its
    // scale to whichever of J_0, J_1 is larger (they never vanish together).
    let mut raw = miller_raw(nmax.max(1), x).values;
    let scale = if j0.abs() >= j1.abs() {
        j0 / raw[0]
    } else {
        j1 / raw[1]
    };
    raw.truncate(nmax + 1);
    raw.iter_mut().for_each(|v| *v *= scale);
    Ok(raw)
}

/// `Y_0(x), ..., Y_nmax(x)` by upward recurrence.
pub fn bessel_y_array(nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_argument(x)?;
    check_order(nmax)?;
    let (y0, y1) = if x <= ASYMPTOTIC_THRESHOLD {
        neumann_y0_y1(x)
    } else {
        (asymptotic_j_y(0, x).1, asymptotic_j_y(1, x).1)
    };
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(y0);
    if nmax >= 1 {
        out.push(y1);
    }
    for n in 1..nmax {
        let next = (2.0 * n as f64 / x) * out[n] - out[n - 1];
        if !next.is_finite() || next.abs() > f64::MAX / 4.0 {
            return Err(SpecialFunctionError::Overflow { order: n + 1, x });
        }
        out.push(next);
    }
    Ok(out)
}

/// `H^(1)_0(x), ..., H^(1)_nmax(x)`.
pub fn hankel1_array(nmax: usize, x: f64) -> Result<Vec<Complex64>> {
    let j = bessel_j_array(nmax, x)?;
    let y = bessel_y_array(nmax, x)?;
    Ok(j.into_iter()
        .zip(y)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

/// Values and first derivatives `H^(1)_n(x)`, `H^(1)'_n(x)` for `n = 0..=nmax`.
pub fn hankel1_with_derivs(nmax: usize, x: f64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let mut h = hankel1_array(nmax + 1, x)?;
    let d: Vec<Complex64> = (0..=nmax)
        .map(|n| derivative_from_recurrence(n, x, &h))
        .collect();
    h.truncate(nmax + 1);
    Ok((h, d))
}

fn derivative_from_recurrence(n: usize, x: f64, h: &[Complex64]) -> Complex64 {
    -h[n + 1] + h[n] * (n as f64 / x)
}

pub(crate) fn second_derivative_from_ode(
    n: usize,
    x: f64,
    value: Complex64,
    deriv: Complex64,
) -> Complex64 {
    let nf = n as f64;
    -deriv / x - value * (1.0 - nf * nf / (x * x))
}

struct MillerRaw {
    values: Vec<f64>,
    even_sum: f64,
}

fn miller_start(nmax: usize, x: f64) -> usize {
    let top = (nmax as f64).max(x.ceil());
    let start = top + 20.0 + (60.0 * top.max(1.0)).sqrt();
    let start = start.ceil() as usize;
    start + start % 2
}

/// Unnormalized downward recurrence; `values` covers orders `0..=start`.
fn miller_raw(nmax: usize, x: f64) -> MillerRaw {
    let start = miller_start(nmax, x);
    let mut values = vec![0.0; start + 1];
    let mut above = 0.0;
    let mut current = 1e-30;
    values[start] = current;
    let mut even_sum = 0.0;
    for n in (1..=start).rev() {
        let below = (2.0 * n as f64 / x) * current - above;
        above = current;
        current = below;
        values[n - 1] = current;
        if (n - 1) % 2 == 0 && n - 1 > 0 {
            even_sum += 2.0 * current;
        }
        if current.abs() > BIG {
            let shrink = 1.0 / BIG;
            values[n - 1..].iter_mut().for_each(|v| *v *= shrink);
            above *= shrink;
            current *= shrink;
            even_sum *= shrink;
        }
    }
    even_sum += values[0];
    MillerRaw { values, even_sum }
}

/// Miller recurrence normalized by `J_0 + 2 Σ J_{2k} = 1`; also returns the
/// full normalized tail up to the starting order.
fn miller_normalized(nmax: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let raw = miller_raw(nmax, x);
    let scale = 1.0 / raw.even_sum;
    let full: Vec<f64> = raw.values.iter().map(|v| v * scale).collect();
    (full[..=nmax].to_vec(), full)
}

/// `Y_0`, `Y_1` from the Neumann series
/// `Y_0 = (2/pi)(ln(x/2) + gamma) J_0 - (4/pi) Σ (-1)^k J_{2k} / k`
/// and its derivative (`Y_1 = -Y_0'`).
fn neumann_y0_y1(x: f64) -> (f64, f64) {
    let (_, j) = miller_normalized(1, x);
    let log_term = (x / 2.0).ln() + EULER_GAMMA;
    let mut sum0 = 0.0;
    let mut sum1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum0 += sign * j[2 * k] / k as f64;
        sum1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = (2.0 / PI) * log_term * j[0] - (4.0 / PI) * sum0;
    let y1 = -(2.0 / (PI * x)) * j[0] + (2.0 / PI) * log_term * j[1] + (2.0 / PI) * sum1;
    (y0, y1)
}

/// Hankel's asymptotic expansion for orders 0 and 1, summed until the
/// terms stop decreasing.
fn asymptotic_j_y(order: usize, x: f64) -> (f64, f64) {
    let mu = 4.0 * (order * order) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if k > 2 && next.abs() >= term.abs() {
            break;
        }
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    // chi = x - (order/2 + 1/4) pi, expanded to avoid rounding x - const.
    let (s, c) = x.sin_cos();
    let (sin_chi, cos_chi) = if order == 0 {
        (FRAC_1_SQRT_2 * (s - c), FRAC_1_SQRT_2 * (c + s))
    } else {
        (-FRAC_1_SQRT_2 * (s + c), FRAC_1_SQRT_2 * (s - c))
    };
    let amp = (2.0 / (PI * x)).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}

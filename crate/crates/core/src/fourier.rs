//! Truncated Fourier series of 2π-periodic functions.
//!
//! Two conventions are used side by side:
//!
//! * [`RealTrigSeries`]: `â_n = (1/π)∫Ψ cos nθ dθ`, `b̂_n = (1/π)∫Ψ sin nθ dθ`,
//!   synthesized as `â_0/2 + Σ_{n≥1} (â_n cos nθ + b̂_n sin nθ)`. Note the
//!   halved DC term.
//! * [`ComplexFourierSeries`]: `ĉ_n = (1/2π)∫Ψ e^{-inθ} dθ`, synthesized as
//!   `Σ_{|n|≤N} ĉ_n e^{inθ}`.
//!
//! Transforms are direct `O(MN)` sums over `M` uniform nodes `θ_j = 2πj/M`;
//! they are exact for band-limited data as long as `M ≥ 2N + 2`.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// `θ_j = 2πj/M`.
pub fn node(j: usize, m: usize) -> f64 {
    2.0 * PI * j as f64 / m as f64
}

/// Smallest admissible even sample count that resolves `order` exactly.
pub fn min_samples(order: usize) -> usize {
    (2 * order + 2).max(4)
}

fn check_sampling(m: usize, order: usize) -> Result<()> {
    let needed = 2 * order + 2;
    if m < needed {
        return Err(Error::Aliasing {
            samples: m,
            order,
            needed,
        });
    }
    Ok(())
}

/// `cos(2πk/M)`, `sin(2πk/M)` so that `nθ_j` reduces to an exact table index.
struct TrigTable {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigTable {
    fn new(m: usize) -> Self {
        let (sin, cos) = (0..m).map(|k| node(k, m).sin_cos()).unzip();
        TrigTable { cos, sin }
    }

    fn m(&self) -> usize {
        self.cos.len()
    }

    /// `(cos nθ_j, sin nθ_j)`.
    fn at(&self, n: i64, j: usize) -> (f64, f64) {
        let m = self.m() as i64;
        let k = (n.rem_euclid(m) * j as i64).rem_euclid(m) as usize;
        (self.cos[k], self.sin[k])
    }
}

/// Samples of a periodic function at `M` uniform nodes (`M` even, `M ≥ 4`).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPeriodicFn<T = f64> {
    values: Vec<T>,
}

impl<T: Copy> SampledPeriodicFn<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        let m = values.len();
        if m < 4 || !m.is_multiple_of(2) {
            return Err(Error::InvalidSampleCount(m));
        }
        Ok(SampledPeriodicFn { values })
    }

    pub fn from_fn(m: usize, f: impl Fn(f64) -> T) -> Result<Self> {
        Self::new((0..m).map(|j| f(node(j, m))).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn node(&self, j: usize) -> f64 {
        node(j, self.values.len())
    }
}

/// Real trigonometric polynomial in the `(â_n, b̂_n)` convention.
///
/// Both coefficient vectors have length `order + 1`; `b[0]` is always zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTrigSeries {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl RealTrigSeries {
    pub fn zeros(order: usize) -> Self {
        RealTrigSeries {
            a: vec![0.0; order + 1],
            b: vec![0.0; order + 1],
        }
    }

    /// `cos` holds `â_0, â_1, ...`; `sin` holds `b̂_1, b̂_2, ...`.
    pub fn new(cos: &[f64], sin: &[f64]) -> Self {
        let order = cos.len().saturating_sub(1).max(sin.len());
        let mut s = Self::zeros(order);
        s.a[..cos.len()].copy_from_slice(cos);
        s.b[1..=sin.len()].copy_from_slice(sin);
        s
    }

    /// The constant function `value` (so `â_0 = 2 value`).
    pub fn constant(value: f64) -> Self {
        Self::new(&[2.0 * value], &[])
    }

    pub fn cos_mode(n: usize, amplitude: f64) -> Self {
        let mut s = Self::zeros(n);
        s.a[n] = amplitude;
        s
    }

    pub fn sin_mode(n: usize, amplitude: f64) -> Self {
        let mut s = Self::zeros(n.max(1));
        if n > 0 {
            s.b[n] = amplitude;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    /// `â_n`, zero beyond the truncation order.
    pub fn a(&self, n: usize) -> f64 {
        self.a.get(n).copied().unwrap_or(0.0)
    }

    /// `b̂_n`, zero beyond the truncation order and at `n = 0`.
    pub fn b(&self, n: usize) -> f64 {
        self.b.get(n).copied().unwrap_or(0.0)
    }

    pub fn set_a(&mut self, n: usize, value: f64) {
        self.grow(n);
        self.a[n] = value;
    }

    pub fn set_b(&mut self, n: usize, value: f64) {
        assert!(n > 0, "b_0 is identically zero");
        self.grow(n);
        self.b[n] = value;
    }

    fn grow(&mut self, n: usize) {
        if n > self.order() {
            self.a.resize(n + 1, 0.0);
            self.b.resize(n + 1, 0.0);
        }
    }

    /// `â_0 .. â_N`.
    pub fn cos_coefficients(&self) -> &[f64] {
        &self.a
    }

    /// `b̂_1 .. b̂_N`.
    pub fn sin_coefficients(&self) -> &[f64] {
        &self.b[1..]
    }

    /// Copy truncated or zero-padded to `order`.
    pub fn resized(&self, order: usize) -> Self {
        let mut s = Self::zeros(order);
        let keep = order.min(self.order());
        s.a[..=keep].copy_from_slice(&self.a[..=keep]);
        s.b[..=keep].copy_from_slice(&self.b[..=keep]);
        s
    }

    /// Synthesis `â_0/2 + Σ (â_n cos nθ + b̂_n sin nθ)`.
    pub fn eval(&self, theta: f64) -> f64 {
        let mut sum = 0.5 * self.a[0];
        for n in 1..=self.order() {
            let (s, c) = (n as f64 * theta).sin_cos();
            sum += self.a[n] * c + self.b[n] * s;
        }
        sum
    }

    /// Values at the `m` uniform nodes.
    pub fn sample(&self, m: usize) -> Vec<f64> {
        let table = TrigTable::new(m);
        (0..m)
            .map(|j| {
                let mut sum = 0.5 * self.a[0];
                for n in 1..=self.order() {
                    let (c, s) = table.at(n as i64, j);
                    sum += self.a[n] * c + self.b[n] * s;
                }
                sum
            })
            .collect()
    }

    /// Trapezoid-rule coefficients up to `order`; requires `M ≥ 2 order + 2`.
    pub fn analyze(samples: &SampledPeriodicFn<f64>, order: usize) -> Result<Self> {
        let m = samples.len();
        check_sampling(m, order)?;
        let table = TrigTable::new(m);
        let mut s = Self::zeros(order);
        let w = 2.0 / m as f64;
        for n in 0..=order {
            let (mut ca, mut cb) = (0.0, 0.0);
            for (j, &v) in samples.values().iter().enumerate() {
                let (c, sn) = table.at(n as i64, j);
                ca += v * c;
                cb += v * sn;
            }
            s.a[n] = w * ca;
            if n > 0 {
                s.b[n] = w * cb;
            }
        }
        Ok(s)
    }

    /// `d/dθ`: `â_n cos nθ ↦ -n â_n sin nθ`, `b̂_n sin nθ ↦ n b̂_n cos nθ`.
    pub fn derivative(&self) -> Self {
        let mut d = Self::zeros(self.order());
        for n in 1..=self.order() {
            let nf = n as f64;
            d.a[n] = nf * self.b[n];
            d.b[n] = -nf * self.a[n];
        }
        d
    }

    /// Pointwise product re-analyzed to `order_out`, sampled finely enough
    /// that no aliasing occurs.
    pub fn product(&self, other: &Self, order_out: usize) -> Self {
        let m = min_samples((self.order() + other.order()).max(order_out));
        let values: Vec<f64> = self
            .sample(m)
            .into_iter()
            .zip(other.sample(m))
            .map(|(x, y)| x * y)
            .collect();
        let samples = SampledPeriodicFn::new(values).expect("even sample count");
        Self::analyze(&samples, order_out).expect("sampling chosen above Nyquist")
    }

    /// `ĉ_0 = â_0/2`, `ĉ_{±n} = (â_n ∓ i b̂_n)/2`.
    pub fn to_complex(&self) -> ComplexFourierSeries {
        let mut c = ComplexFourierSeries::zeros(self.order());
        c.set(0, Complex64::new(0.5 * self.a[0], 0.0));
        for n in 1..=self.order() {
            let v = Complex64::new(self.a[n], -self.b[n]) * 0.5;
            c.set(n as i64, v);
            c.set(-(n as i64), v.conj());
        }
        c
    }

    /// Inverse of [`RealTrigSeries::to_complex`]; rejects series whose
    /// conjugate-symmetry mismatch exceeds `tol`.
    pub fn from_complex(c: &ComplexFourierSeries, tol: f64) -> Result<Self> {
        if let Some((mode, mismatch)) = c.conjugate_symmetry_mismatch() {
            if mismatch > tol {
                return Err(Error::NotConjugateSymmetric { mode, mismatch });
            }
        }
        let mut s = Self::zeros(c.order());
        s.a[0] = 2.0 * c.coeff(0).re;
        for n in 1..=c.order() {
            // Average of the two conjugate partners, doubled.
            let v = c.coeff(n as i64) + c.coeff(-(n as i64)).conj();
            s.a[n] = v.re;
            s.b[n] = -v.im;
        }
        Ok(s)
    }

    /// `max(|Ψ(θ_j)|)` over `m` uniform nodes.
    pub fn max_abs_on_grid(&self, m: usize) -> f64 {
        self.sample(m).into_iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        RealTrigSeries {
            a: self.a.iter().map(|v| v * factor).collect(),
            b: self.b.iter().map(|v| v * factor).collect(),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let order = self.order().max(other.order());
        let mut s = Self::zeros(order);
        for n in 0..=order {
            s.a[n] = op(self.a(n), other.a(n));
            s.b[n] = op(self.b(n), other.b(n));
        }
        s
    }
}

impl Add for &RealTrigSeries {
    type Output = RealTrigSeries;
    fn add(self, rhs: Self) -> RealTrigSeries {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &RealTrigSeries {
    type Output = RealTrigSeries;
    fn sub(self, rhs: Self) -> RealTrigSeries {
        self.zip_with(rhs, |x, y| x - y)
    }
}

/// Complex Fourier coefficients `ĉ_n`, `|n| ≤ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFourierSeries {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl ComplexFourierSeries {
    pub fn zeros(order: usize) -> Self {
        ComplexFourierSeries {
            order,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * order + 1],
        }
    }

    /// Series of the smallest order holding the given `(n, ĉ_n)` pairs.
    pub fn from_modes(modes: &[(i64, Complex64)]) -> Self {
        let order = modes.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        let mut s = Self::zeros(order);
        for &(n, v) in modes {
            s.set(n, s.coeff(n) + v);
        }
        s
    }

    /// `e^{inθ}`.
    pub fn single_mode(n: i64, value: Complex64) -> Self {
        Self::from_modes(&[(n, value)])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `ĉ_n`, zero outside `|n| ≤ N`.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.order {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.order as i64) as usize]
        }
    }

    /// Sets `ĉ_n`, growing the truncation order if needed.
    pub fn set(&mut self, n: i64, value: Complex64) {
        let need = n.unsigned_abs() as usize;
        if need > self.order {
            *self = self.resized(need);
        }
        let idx = (n + self.order as i64) as usize;
        self.coeffs[idx] = value;
    }

    /// `(n, ĉ_n)` for `n = -N..=N`.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let off = self.order as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - off, c))
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn resized(&self, order: usize) -> Self {
        let mut s = Self::zeros(order);
        let keep = order.min(self.order) as i64;
        for n in -keep..=keep {
            s.coeffs[(n + order as i64) as usize] = self.coeff(n);
        }
        s
    }

    /// Applies `ĉ_n ↦ g(n, ĉ_n)` mode by mode.
    pub fn map_modes(&self, g: impl Fn(i64, Complex64) -> Complex64) -> Self {
        let mut s = self.clone();
        let off = self.order as i64;
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            *c = g(i as i64 - off, *c);
        }
        s
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.modes()
            .map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * theta))
            .sum()
    }

    pub fn sample(&self, m: usize) -> Vec<Complex64> {
        let table = TrigTable::new(m);
        (0..m)
            .map(|j| {
                self.modes()
                    .map(|(n, c)| {
                        let (co, si) = table.at(n, j);
                        c * Complex64::new(co, si)
                    })
                    .sum()
            })
            .collect()
    }

    /// `ĉ_n = (1/M) Σ Ψ_j e^{-inθ_j}` for `|n| ≤ order`.
    pub fn analyze(samples: &SampledPeriodicFn<Complex64>, order: usize) -> Result<Self> {
        let m = samples.len();
        check_sampling(m, order)?;
        let table = TrigTable::new(m);
        let mut s = Self::zeros(order);
        let w = 1.0 / m as f64;
        for n in -(order as i64)..=(order as i64) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &v) in samples.values().iter().enumerate() {
                let (c, si) = table.at(n, j);
                acc += v * Complex64::new(c, -si);
            }
            s.set(n, acc * w);
        }
        Ok(s)
    }

    /// Complex coefficients of real samples.
    pub fn analyze_real(samples: &SampledPeriodicFn<f64>, order: usize) -> Result<Self> {
        let values = samples
            .values()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        Self::analyze(&SampledPeriodicFn::new(values)?, order)
    }

    /// `ĉ_n ↦ i n ĉ_n`.
    pub fn derivative(&self) -> Self {
        self.map_modes(|n, c| c * Complex64::new(0.0, n as f64))
    }

    pub fn product(&self, other: &Self, order_out: usize) -> Self {
        let m = min_samples((self.order + other.order).max(order_out));
        let values: Vec<Complex64> = self
            .sample(m)
            .into_iter()
            .zip(other.sample(m))
            .map(|(x, y)| x * y)
            .collect();
        let samples = SampledPeriodicFn::new(values).expect("even sample count");
        Self::analyze(&samples, order_out).expect("sampling chosen above Nyquist")
    }

    /// Coefficients of `Ψ(θ - α)`: `ĉ_n ↦ ĉ_n e^{-inα}`.
    pub fn rotated(&self, alpha: f64) -> Self {
        self.map_modes(|n, c| c * Complex64::from_polar(1.0, -(n as f64) * alpha))
    }

    /// `Σ |ĉ_n|`.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc.max(c.norm()))
    }

    /// Largest `|ĉ_{-n} - conj(ĉ_n)|` and the mode where it occurs.
    pub fn conjugate_symmetry_mismatch(&self) -> Option<(i64, f64)> {
        (0..=self.order as i64)
            .map(|n| (n, (self.coeff(-n) - self.coeff(n).conj()).norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        self.map_modes(|_, c| c * factor)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let order = self.order.max(other.order);
        let mut s = Self::zeros(order);
        for n in -(order as i64)..=(order as i64) {
            s.set(n, op(self.coeff(n), other.coeff(n)));
        }
        s
    }
}

impl Add for &ComplexFourierSeries {
    type Output = ComplexFourierSeries;
    fn add(self, rhs: Self) -> ComplexFourierSeries {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &ComplexFourierSeries {
    type Output = ComplexFourierSeries;
    fn sub(self, rhs: Self) -> ComplexFourierSeries {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl Mul<f64> for &ComplexFourierSeries {
    type Output = ComplexFourierSeries;
    fn mul(self, rhs: f64) -> ComplexFourierSeries {
        self.scaled(Complex64::new(rhs, 0.0))
    }
}

impl Neg for &ComplexFourierSeries {
    type Output = ComplexFourierSeries;
    fn neg(self) -> ComplexFourierSeries {
        self * -1.0
    }
}

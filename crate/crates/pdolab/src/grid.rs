//! Periodic grids on [-L, L)^n (n ∈ {1,2}), the discrete Fourier transform
//! contract, test-function generators, and dilation operators.
//!
//! # Transform convention
//!
//! This is the one place the normalization is fixed; everything else derives
//! from it. With Δx = 2L/N and the frequency lattice {kπ/L : -N/2 ≤ k < N/2}:
//!
//! * forward:  û(ξ) = Σ_x u(x) e^{-i⟨x,ξ⟩} Δx^n        (Riemann sum for the
//!   continuum transform),
//! * inverse:  u(x) = (2π)^{-n} Σ_ξ û(ξ) e^{i⟨x,ξ⟩} Δξ^n.
//!
//! The (2π)^{-n} sits on the inverse, so applying a symbol to û and summing
//! back is exactly the operator quadrature used by the `operator` module.
//! Parseval reads Σ|u|²Δx^n = (2π)^{-n} Σ|û|²Δξ^n; `norm_l2` accounts for the
//! side it is called on.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::tolerances;
use crate::util::map_indices;

/// A point or frequency in at most two dimensions; unused axes hold zero.
pub type Point = [f64; 2];

pub fn norm2(p: Point) -> f64 {
    (p[0] * p[0] + p[1] * p[1]).sqrt()
}

/// Validated periodic grid descriptor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    points_per_axis: usize,
    half_period: f64,
}

impl GridSpec {
    /// Build a grid on [-L, L)^dim with N points per axis.
    /// N must be a power of two, N ≥ 8, L > 0, dim ∈ {1,2}.
    pub fn new(dim: usize, points_per_axis: usize, half_period: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidGrid(format!("dim must be 1 or 2, got {dim}")));
        }
        if points_per_axis < 8 || !points_per_axis.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points_per_axis must be a power of two >= 8, got {points_per_axis}"
            )));
        }
        if !(half_period > 0.0) || !half_period.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "half_period must be positive, got {half_period}"
            )));
        }
        Ok(GridSpec {
            dim,
            points_per_axis,
            half_period,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn half_period(&self) -> f64 {
        self.half_period
    }

    /// Total number of sample points, N^dim.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing Δx = 2L/N.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_period / self.points_per_axis as f64
    }

    /// Frequency lattice spacing Δξ = π/L.
    pub fn freq_spacing(&self) -> f64 {
        std::f64::consts::PI / self.half_period
    }

    /// Largest per-axis lattice frequency magnitude, (N/2)·Δξ.
    pub fn nyquist(&self) -> f64 {
        (self.points_per_axis as f64 / 2.0) * self.freq_spacing()
    }

    /// Largest Euclidean frequency magnitude on the lattice (corner).
    pub fn max_freq_norm(&self) -> f64 {
        self.nyquist() * (self.dim as f64).sqrt()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn freq_cell_volume(&self) -> f64 {
        self.freq_spacing().powi(self.dim as i32)
    }

    /// Decompose a linear index into per-axis indices.
    pub fn axes(&self, idx: usize) -> [usize; 2] {
        let n = self.points_per_axis;
        if self.dim == 1 {
            [idx, 0]
        } else {
            [idx / n, idx % n]
        }
    }

    pub fn linear(&self, axes: [usize; 2]) -> usize {
        if self.dim == 1 {
            axes[0]
        } else {
            axes[0] * self.points_per_axis + axes[1]
        }
    }

    /// Physical coordinates of sample `idx`: x_i = -L + i·Δx per axis.
    pub fn point(&self, idx: usize) -> Point {
        let ax = self.axes(idx);
        let dx = self.spacing();
        let mut p = [0.0, 0.0];
        for d in 0..self.dim {
            p[d] = -self.half_period + ax[d] as f64 * dx;
        }
        p
    }

    /// Integer lattice index k per axis (ascending order, -N/2 ≤ k < N/2).
    pub fn freq_index(&self, idx: usize) -> [i64; 2] {
        let ax = self.axes(idx);
        let half = self.points_per_axis as i64 / 2;
        let mut k = [0i64, 0];
        for d in 0..self.dim {
            k[d] = ax[d] as i64 - half;
        }
        k
    }

    /// Frequency coordinates ξ = k·π/L of lattice slot `idx`.
    pub fn freq(&self, idx: usize) -> Point {
        let k = self.freq_index(idx);
        let dxi = self.freq_spacing();
        let mut p = [0.0, 0.0];
        for d in 0..self.dim {
            p[d] = k[d] as f64 * dxi;
        }
        p
    }

    /// Same shape (dim and N); half-periods may differ.
    pub fn same_shape(&self, other: &GridSpec) -> bool {
        self.dim == other.dim && self.points_per_axis == other.points_per_axis
    }

    /// Shape equal and half-period equal to relative 1e-12 (derived grids
    /// accumulate a rounding step or two).
    pub fn compatible(&self, other: &GridSpec) -> bool {
        self.same_shape(other)
            && (self.half_period - other.half_period).abs() <= 1e-12 * self.half_period.abs()
    }
}

/// Convenience alias for `GridSpec::new`.
pub fn make_grid(dim: usize, points_per_axis: usize, half_period: f64) -> Result<GridSpec> {
    GridSpec::new(dim, points_per_axis, half_period)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Physical,
    Frequency,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Physical => "physical",
            Side::Frequency => "frequency",
        }
    }
}

/// Complex samples on a grid, on either the physical or the frequency side.
/// Frequency-side storage is in ascending-k order per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub grid: GridSpec,
    pub side: Side,
    pub values: Vec<Complex64>,
}

impl SampledField {
    pub fn new(grid: GridSpec, side: Side, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(SampledField { grid, side, values })
    }

    pub fn zeros(grid: GridSpec, side: Side) -> Self {
        SampledField {
            grid,
            side,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Sample a function of the physical coordinates.
    pub fn from_fn(grid: GridSpec, f: impl Fn(Point) -> Complex64 + Sync) -> Self {
        let values = map_indices(grid.len(), |i| f(grid.point(i)));
        SampledField {
            grid,
            side: Side::Physical,
            values,
        }
    }

    /// Fill frequency-side values from a function of ξ.
    pub fn from_freq_fn(grid: GridSpec, f: impl Fn(Point) -> Complex64 + Sync) -> Self {
        let values = map_indices(grid.len(), |i| f(grid.freq(i)));
        SampledField {
            grid,
            side: Side::Frequency,
            values,
        }
    }

    fn expect_side(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::SideMismatch {
                expected: side.name(),
                got: self.side.name(),
            });
        }
        Ok(())
    }

    pub fn norm_sup(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Discrete L² norm under the documented convention; valid on both sides.
    pub fn norm_l2(&self) -> f64 {
        let sumsq: f64 = self.values.iter().map(|z| z.norm_sqr()).sum();
        match self.side {
            Side::Physical => (sumsq * self.grid.cell_volume()).sqrt(),
            Side::Frequency => {
                let twopi = (2.0 * std::f64::consts::PI).powi(self.grid.dim() as i32);
                (sumsq * self.grid.freq_cell_volume() / twopi).sqrt()
            }
        }
    }

    /// Discrete L^p norm (physical side).
    pub fn norm_lp(&self, p: f64) -> Result<f64> {
        self.expect_side(Side::Physical)?;
        if !(p >= 1.0) {
            return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
        }
        let s: f64 = self.values.iter().map(|z| z.norm().powf(p)).sum();
        Ok((s * self.grid.cell_volume()).powf(1.0 / p))
    }

    /// Largest active |k|∞ on the lattice, with "active" meaning the
    /// coefficient exceeds 1e-12 of the peak. Zero field reports 0.
    pub fn band_limit_index(&self) -> u64 {
        let hat = match self.side {
            Side::Frequency => self.clone(),
            Side::Physical => self.fft_forward().expect("physical side checked"),
        };
        let peak = hat.norm_sup();
        if peak == 0.0 {
            return 0;
        }
        let mut band = 0u64;
        for (i, z) in hat.values.iter().enumerate() {
            if z.norm() > 1e-12 * peak {
                let k = hat.grid.freq_index(i);
                let m = k[0].unsigned_abs().max(k[1].unsigned_abs());
                band = band.max(m);
            }
        }
        band
    }

    /// Forward transform; errors unless the field is physical-side.
    pub fn fft_forward(&self) -> Result<SampledField> {
        self.expect_side(Side::Physical)?;
        let mut work = self.values.clone();
        raw_fft(&mut work, &self.grid, false);
        // Reorder to ascending k and attach Δx^n e^{ikπ} phases.
        let n = self.grid.points_per_axis;
        let half = n / 2;
        let scale = self.grid.cell_volume();
        let dim = self.grid.dim;
        let values = map_indices(self.grid.len(), |i| {
            let ax = self.grid.axes(i);
            let mut src = [0usize; 2];
            let mut parity = 0usize;
            for d in 0..dim {
                src[d] = (ax[d] + half) % n;
                parity += ax[d] + half;
            }
            let sgn = if parity % 2 == 1 { -1.0 } else { 1.0 };
            let v = if dim == 1 {
                work[src[0]]
            } else {
                work[src[0] * n + src[1]]
            };
            v * sgn * scale
        });
        Ok(SampledField {
            grid: self.grid,
            side: Side::Frequency,
            values,
        })
    }

    /// Inverse transform; errors unless the field is frequency-side.
    pub fn fft_inverse(&self) -> Result<SampledField> {
        self.expect_side(Side::Frequency)?;
        let n = self.grid.points_per_axis;
        let half = n / 2;
        let dim = self.grid.dim;
        // Fold (-1)^k phases and return to DFT storage order.
        let mut work = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for i in 0..self.grid.len() {
            let ax = self.grid.axes(i);
            let mut dst = [0usize; 2];
            let mut parity = 0usize;
            for d in 0..dim {
                dst[d] = (ax[d] + half) % n;
                parity += ax[d] + half;
            }
            let sgn = if parity % 2 == 1 { -1.0 } else { 1.0 };
            let j = if dim == 1 {
                dst[0]
            } else {
                dst[0] * n + dst[1]
            };
            work[j] = self.values[i] * sgn;
        }
        raw_fft(&mut work, &self.grid, true);
        let scale = (self.grid.freq_spacing() / (2.0 * std::f64::consts::PI)).powi(dim as i32);
        for v in &mut work {
            *v *= scale;
        }
        Ok(SampledField {
            grid: self.grid,
            side: Side::Physical,
            values: work,
        })
    }

    pub fn to_frequency(&self) -> Result<SampledField> {
        match self.side {
            Side::Frequency => Ok(self.clone()),
            Side::Physical => self.fft_forward(),
        }
    }

    pub fn to_physical(&self) -> Result<SampledField> {
        match self.side {
            Side::Physical => Ok(self.clone()),
            Side::Frequency => self.fft_inverse(),
        }
    }

    /// Pointwise linear combination; grids and sides must agree.
    pub fn axpy(
        &self,
        alpha: Complex64,
        other: &SampledField,
        beta: Complex64,
    ) -> Result<SampledField> {
        if !self.grid.compatible(&other.grid) || self.side != other.side {
            return Err(Error::GridMismatch(
                "axpy operands differ in grid or side".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(SampledField {
            grid: self.grid,
            side: self.side,
            values,
        })
    }

    pub fn scaled(&self, alpha: Complex64) -> SampledField {
        SampledField {
            grid: self.grid,
            side: self.side,
            values: self.values.iter().map(|v| alpha * v).collect(),
        }
    }
}

fn raw_fft(values: &mut [Complex64], grid: &GridSpec, inverse: bool) {
    let n = grid.points_per_axis;
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    if grid.dim == 1 {
        fft.process(values);
        return;
    }
    // axis 1: contiguous rows
    for row in values.chunks_exact_mut(n) {
        fft.process(row);
    }
    // axis 0: gather columns
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for i2 in 0..n {
        for i1 in 0..n {
            col[i1] = values[i1 * n + i2];
        }
        fft.process(&mut col);
        for i1 in 0..n {
            values[i1 * n + i2] = col[i1];
        }
    }
}

/// Built-in test function families.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    Gaussian {
        center: Point,
        width: f64,
    },
    ModulatedGaussian {
        center: Point,
        width: f64,
        modulation: Point,
    },
    Bump {
        center: Point,
        width: f64,
    },
    RandomBandLimited {
        seed: u64,
        band: usize,
    },
}

/// Sample one of the built-in test functions on `grid`.
///
/// Gaussian and bump families must decay below `tolerances::BOUNDARY_DECAY`
/// (relative to their peak) at the domain boundary; the band limit of the
/// random family must stay strictly inside the lattice.
pub fn make_test_function(kind: &TestFunction, grid: &GridSpec) -> Result<SampledField> {
    match kind {
        TestFunction::Gaussian { center, width } => {
            check_width(grid, *width)?;
            let (c, w) = (*center, *width);
            let u = SampledField::from_fn(*grid, move |x| {
                let d2 = sq_dist(x, c);
                Complex64::new((-d2 / (2.0 * w * w)).exp(), 0.0)
            });
            check_boundary_decay(&u)?;
            Ok(u)
        }
        TestFunction::ModulatedGaussian {
            center,
            width,
            modulation,
        } => {
            check_width(grid, *width)?;
            let (c, w, q) = (*center, *width, *modulation);
            let u = SampledField::from_fn(*grid, move |x| {
                let d2 = sq_dist(x, c);
                let phase = x[0] * q[0] + x[1] * q[1];
                Complex64::from_polar((-d2 / (2.0 * w * w)).exp(), phase)
            });
            check_boundary_decay(&u)?;
            Ok(u)
        }
        TestFunction::Bump { center, width } => {
            // Support must sit strictly inside the domain.
            let reach = center[0].abs().max(center[1].abs()) + width;
            if reach >= grid.half_period() {
                return Err(Error::TestFunction(format!(
                    "bump support (center offset + width = {reach:.3}) reaches the boundary L = {}",
                    grid.half_period()
                )));
            }
            let (c, w) = (*center, *width);
            Ok(SampledField::from_fn(*grid, move |x| {
                let t = sq_dist(x, c) / (w * w);
                if t >= 1.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new((1.0 - 1.0 / (1.0 - t)).exp(), 0.0)
                }
            }))
        }
        TestFunction::RandomBandLimited { seed, band } => {
            let n = grid.points_per_axis();
            if *band + 1 > n / 2 {
                return Err(Error::TestFunction(format!(
                    "band limit {band} exceeds lattice half-width N/2 = {}",
                    n / 2
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut hat = SampledField::zeros(*grid, Side::Frequency);
            let b2 = (*band * *band) as i64;
            for i in 0..grid.len() {
                let k = grid.freq_index(i);
                if k[0] * k[0] + k[1] * k[1] <= b2 {
                    let re: f64 = rng.gen_range(-1.0..1.0);
                    let im: f64 = rng.gen_range(-1.0..1.0);
                    hat.values[i] = Complex64::new(re, im);
                }
            }
            hat.fft_inverse()
        }
    }
}

fn sq_dist(x: Point, c: Point) -> f64 {
    let dx = x[0] - c[0];
    let dy = x[1] - c[1];
    dx * dx + dy * dy
}

fn check_width(grid: &GridSpec, width: f64) -> Result<()> {
    if !(width > 0.0) {
        return Err(Error::TestFunction(format!(
            "width must be positive, got {width}"
        )));
    }
    if width >= grid.half_period() {
        return Err(Error::TestFunction(format!(
            "width {width} too large for half-period {}",
            grid.half_period()
        )));
    }
    Ok(())
}

fn check_boundary_decay(u: &SampledField) -> Result<()> {
    let peak = u.norm_sup();
    let n = u.grid.points_per_axis();
    let mut worst = 0.0f64;
    for i in 0..u.grid.len() {
        let ax = u.grid.axes(i);
        let on_boundary = (0..u.grid.dim()).any(|d| ax[d] == 0 || ax[d] == n - 1);
        if on_boundary {
            worst = worst.max(u.values[i].norm());
        }
    }
    if worst > tolerances::BOUNDARY_DECAY * peak {
        return Err(Error::TestFunction(format!(
            "boundary value {worst:.3e} exceeds {:.0e} of peak {peak:.3e}; shrink the width",
            tolerances::BOUNDARY_DECAY
        )));
    }
    Ok(())
}

/// Dilation τ_j u(x) = u(2^{jρ} x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dilation {
    pub scale_exponent: i32,
    pub rho: f64,
}

impl Dilation {
    pub fn new(scale_exponent: i32, rho: f64) -> Self {
        Dilation {
            scale_exponent,
            rho,
        }
    }

    /// The dilation factor s = 2^{jρ}.
    pub fn scale(&self) -> f64 {
        (self.rho * self.scale_exponent as f64).exp2()
    }
}

/// Exact dilation by relabeling: the returned field holds the same values on
/// the grid with half-period L/s, where it represents u(s·). Exact for every
/// scale, which is what the operator rescaling identity relies on.
pub fn dilate_rescaled(u: &SampledField, d: &Dilation) -> Result<SampledField> {
    u.expect_side(Side::Physical)?;
    let s = d.scale();
    let grid = GridSpec::new(
        u.grid.dim(),
        u.grid.points_per_axis(),
        u.grid.half_period() / s,
    )?;
    Ok(SampledField {
        grid,
        side: Side::Physical,
        values: u.values.clone(),
    })
}

/// Dilation onto the same grid via evaluation of the trigonometric
/// interpolant at the scaled sample points. Exact whenever s maps the active
/// lattice into itself (integer s, or band-compatible 1/integer); otherwise
/// band-limited interpolation. Errors when the scaled band would alias.
pub fn dilate_on_grid(u: &SampledField, d: &Dilation) -> Result<SampledField> {
    u.expect_side(Side::Physical)?;
    let s = d.scale();
    let band = u.band_limit_index() as f64;
    let nyq = u.grid.points_per_axis() as f64 / 2.0;
    if band * s > nyq {
        return Err(Error::Aliasing {
            band,
            scale: s,
            nyquist: nyq,
        });
    }
    if d.scale_exponent == 0 || d.rho == 0.0 {
        return Ok(u.clone());
    }
    let hat = u.fft_forward()?;
    let grid = u.grid;
    let dim = grid.dim();
    let norm = grid.freq_cell_volume() / (2.0 * std::f64::consts::PI).powi(dim as i32);
    let values = map_indices(grid.len(), |i| {
        let x = grid.point(i);
        let y = [x[0] * s, x[1] * s];
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in hat.values.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let xi = grid.freq(k);
            acc += c * Complex64::cis(y[0] * xi[0] + y[1] * xi[1]);
        }
        acc * norm
    });
    Ok(SampledField {
        grid,
        side: Side::Physical,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use std::f64::consts::PI;

    fn rel_sup(a: &SampledField, b: &SampledField) -> f64 {
        let denom = b.norm_sup().max(1e-300);
        a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
            / denom
    }

    #[test]
    fn grid_construction_and_rejects() {
        let g = make_grid(1, 64, PI).unwrap();
        assert_eq!(g.spacing(), PI / 32.0);
        assert_eq!(g.freq_index(0), [-32, 0]);
        assert_eq!(g.freq_index(63), [31, 0]);

        let g2 = make_grid(2, 32, PI).unwrap();
        assert_eq!(g2.len(), 1024);

        assert!(make_grid(1, 63, PI).is_err());
        assert!(make_grid(1, 4, PI).is_err());
        assert!(make_grid(1, 64, 0.0).is_err());
        assert!(make_grid(3, 64, PI).is_err());
    }

    #[test]
    fn constant_field_transforms_to_delta() {
        let g = make_grid(1, 64, PI).unwrap();
        let u = SampledField::from_fn(g, |_| Complex64::new(1.0, 0.0));
        let hat = u.fft_forward().unwrap();
        // mass = Σ 1·Δx = 2L at k = 0
        for i in 0..g.len() {
            let k = g.freq_index(i)[0];
            let expect = if k == 0 { 2.0 * PI } else { 0.0 };
            assert!((hat.values[i].norm() - expect).abs() < 1e-10);
        }
        let back = hat.fft_inverse().unwrap();
        assert!(rel_sup(&back, &u) < tolerances::DFT_ROUND_TRIP);
    }

    #[test]
    fn single_mode_lands_on_its_lattice_slot() {
        let g = make_grid(1, 64, PI).unwrap();
        // e^{ix} has frequency index k = 1 on L = π.
        let u = SampledField::from_fn(g, |x| Complex64::cis(x[0]));
        let hat = u.fft_forward().unwrap();
        for i in 0..g.len() {
            let k = g.freq_index(i)[0];
            let v = hat.values[i].norm();
            if k == 1 {
                assert!((v - 2.0 * PI).abs() < 1e-9, "mode mass {v}");
            } else {
                assert!(v < 1e-9, "leakage at k={k}: {v}");
            }
        }
    }

    #[test]
    fn forward_matches_direct_quadrature() {
        let g = make_grid(1, 16, 1.7).unwrap();
        let u =
            make_test_function(&TestFunction::RandomBandLimited { seed: 5, band: 6 }, &g).unwrap();
        let fast = u.fft_forward().unwrap();
        let slow = oracle::dft_forward(&u);
        assert!(rel_sup(&fast, &slow) < 1e-12);

        let g2 = make_grid(2, 8, 0.9).unwrap();
        let u2 =
            make_test_function(&TestFunction::RandomBandLimited { seed: 9, band: 3 }, &g2).unwrap();
        let fast2 = u2.fft_forward().unwrap();
        let slow2 = oracle::dft_forward(&u2);
        assert!(rel_sup(&fast2, &slow2) < 1e-12);
    }

    #[test]
    fn round_trip_and_parseval_random_fields() {
        for (dim, n) in [(1usize, 64usize), (2, 16)] {
            let g = make_grid(dim, n, 2.3).unwrap();
            let u = make_test_function(
                &TestFunction::RandomBandLimited {
                    seed: 42 + dim as u64,
                    band: n / 4,
                },
                &g,
            )
            .unwrap();
            let hat = u.fft_forward().unwrap();
            let back = hat.fft_inverse().unwrap();
            assert!(rel_sup(&back, &u) < tolerances::DFT_ROUND_TRIP);
            let rel = (u.norm_l2() - hat.norm_l2()).abs() / u.norm_l2();
            assert!(rel < tolerances::PARSEVAL_REL, "parseval violation {rel}");
        }
    }

    #[test]
    fn transform_linearity() {
        let g = make_grid(1, 32, PI).unwrap();
        let u =
            make_test_function(&TestFunction::RandomBandLimited { seed: 1, band: 10 }, &g).unwrap();
        let v =
            make_test_function(&TestFunction::RandomBandLimited { seed: 2, band: 10 }, &g).unwrap();
        let a = Complex64::new(1.3, -0.4);
        let b = Complex64::new(-0.2, 2.2);
        let lhs = u.axpy(a, &v, b).unwrap().fft_forward().unwrap();
        let rhs = u
            .fft_forward()
            .unwrap()
            .axpy(a, &v.fft_forward().unwrap(), b)
            .unwrap();
        assert!(rel_sup(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn gaussian_is_symmetric_and_peaked_at_center() {
        let g = make_grid(1, 64, 2.0 * PI).unwrap();
        let u = make_test_function(
            &TestFunction::Gaussian {
                center: [0.0, 0.0],
                width: 0.5,
            },
            &g,
        )
        .unwrap();
        let center_idx = 32; // x = 0
        assert!((u.values[center_idx].re - 1.0).abs() < 1e-12);
        for off in 1..10 {
            let a = u.values[center_idx - off].re;
            let b = u.values[center_idx + off].re;
            assert!((a - b).abs() < 1e-12);
            assert!(a < u.values[center_idx].re);
        }
    }

    #[test]
    fn test_function_rejections() {
        let g = make_grid(1, 64, PI).unwrap();
        assert!(make_test_function(
            &TestFunction::Gaussian {
                center: [0.0, 0.0],
                width: 2.0
            },
            &g
        )
        .is_err());
        assert!(make_test_function(
            &TestFunction::Bump {
                center: [0.0, 0.0],
                width: PI
            },
            &g
        )
        .is_err());
        assert!(
            make_test_function(&TestFunction::RandomBandLimited { seed: 0, band: 32 }, &g).is_err()
        );
    }

    #[test]
    fn random_band_limited_support() {
        let g = make_grid(1, 64, PI).unwrap();
        let u =
            make_test_function(&TestFunction::RandomBandLimited { seed: 7, band: 8 }, &g).unwrap();
        assert!(u.band_limit_index() <= 8);
        let hat = u.fft_forward().unwrap();
        for i in 0..g.len() {
            let k = g.freq_index(i)[0];
            if k.abs() > 8 {
                assert!(hat.values[i].norm() < 1e-10);
            }
        }
    }

    #[test]
    fn dilate_identity_and_exact_doubling() {
        let g = make_grid(1, 64, PI).unwrap();
        let u =
            make_test_function(&TestFunction::RandomBandLimited { seed: 3, band: 8 }, &g).unwrap();
        let id = dilate_on_grid(&u, &Dilation::new(0, 1.0)).unwrap();
        assert_eq!(id.values, u.values);

        // ρ=1, j=1 doubles the frequency of a pure mode exactly.
        let mode = SampledField::from_fn(g, |x| Complex64::cis(x[0]));
        let doubled = dilate_on_grid(&mode, &Dilation::new(1, 1.0)).unwrap();
        let expect = SampledField::from_fn(g, |x| Complex64::cis(2.0 * x[0]));
        assert!(rel_sup(&doubled, &expect) < 1e-11);
    }

    #[test]
    fn dilate_rejects_aliasing() {
        let g = make_grid(1, 64, PI).unwrap();
        let u =
            make_test_function(&TestFunction::RandomBandLimited { seed: 3, band: 12 }, &g).unwrap();
        // band 12 × scale 4 = 48 > 32
        assert!(matches!(
            dilate_on_grid(&u, &Dilation::new(2, 1.0)),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn dilate_round_trip_power_of_two_same_grid() {
        let g = make_grid(1, 128, PI).unwrap();
        let u = make_test_function(&TestFunction::RandomBandLimited { seed: 11, band: 10 }, &g)
            .unwrap();
        let d = Dilation::new(1, 1.0);
        let up = dilate_on_grid(&u, &d).unwrap();
        let back = dilate_on_grid(&up, &Dilation::new(-1, 1.0)).unwrap();
        assert!(rel_sup(&back, &u) < tolerances::DILATION_ROUND_TRIP);
    }

    #[test]
    fn dilate_round_trip_rescaled_is_exact() {
        let g = make_grid(1, 64, PI).unwrap();
        let u = make_test_function(&TestFunction::RandomBandLimited { seed: 13, band: 14 }, &g)
            .unwrap();
        let d = Dilation::new(3, 0.5);
        let v = dilate_rescaled(&u, &d).unwrap();
        assert!((v.grid.half_period() - PI / d.scale()).abs() < 1e-12);
        let w = dilate_rescaled(&v, &Dilation::new(-3, 0.5)).unwrap();
        assert!(w.grid.compatible(&g));
        assert_eq!(w.values, u.values);
    }

    #[test]
    fn dilate_interpolation_round_trip_band_limited() {
        // Irrational scale √2 on a decaying band-limited field.
        let g = make_grid(1, 128, PI).unwrap();
        let base = make_test_function(
            &TestFunction::ModulatedGaussian {
                center: [0.0, 0.0],
                width: 0.35,
                modulation: [5.0, 0.0],
            },
            &g,
        )
        .unwrap();
        let d = Dilation::new(1, 0.5);
        let up = dilate_on_grid(&base, &d).unwrap();
        let back = dilate_on_grid(&up, &Dilation::new(-1, 0.5)).unwrap();
        assert!(rel_sup(&back, &base) < tolerances::DILATION_ROUND_TRIP);
    }

    #[test]
    fn side_mismatch_errors() {
        let g = make_grid(1, 32, PI).unwrap();
        let u = SampledField::from_fn(g, |_| Complex64::new(1.0, 0.0));
        let hat = u.fft_forward().unwrap();
        assert!(hat.fft_forward().is_err());
        assert!(u.fft_inverse().is_err());
    }
}

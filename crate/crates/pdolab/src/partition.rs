//! Dyadic partition of unity on frequency space.
//!
//! The construction telescopes a smooth radial cutoff χ: with
//! ψ₋₁(ξ) = χ(ξ/2) and ψ(ξ) = χ(ξ/2) − χ(ξ),
//!
//!   ψ₋₁(ξ) + Σ_{j=1}^{J} ψ(2^{-j}ξ) = χ(2^{-(J+1)}ξ),
//!
//! which is exactly 1 once 2^{-(J+1)}|ξ| falls inside χ's flat region. The
//! telescoping makes the lattice sum exact by construction instead of by
//! normalization.
//!
//! χ is 1 on |ξ| ≤ t₀ and 0 on |ξ| ≥ t₁ with t₀ = C⁻¹ and
//! t₁ = min(C, 2C⁻¹). Then supp ψ ⊂ {C⁻¹ ≤ |ξ| ≤ 2C}, supp ψ₋₁ ⊂ {|ξ| ≤ 2C},
//! and t₁ ≤ 2t₀ keeps more than two consecutive shells from overlapping at
//! any point.

use crate::error::{Error, Result};
use crate::grid::{norm2, GridSpec, Point, SampledField};
use crate::util::smooth_step;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LPPartition {
    shell_constant: f64,
    t0: f64,
    t1: f64,
}

/// Convenience alias for `LPPartition::new`.
pub fn make_partition(shell_constant: f64) -> Result<LPPartition> {
    LPPartition::new(shell_constant)
}

impl LPPartition {
    pub fn new(shell_constant: f64) -> Result<Self> {
        if !(shell_constant > 1.0) || !shell_constant.is_finite() {
            return Err(Error::InvalidPartition(format!(
                "shell constant must exceed 1, got {shell_constant}"
            )));
        }
        let t0 = 1.0 / shell_constant;
        let t1 = shell_constant.min(2.0 / shell_constant);
        Ok(LPPartition {
            shell_constant,
            t0,
            t1,
        })
    }

    pub fn shell_constant(&self) -> f64 {
        self.shell_constant
    }

    /// Radial cutoff: exactly 1 for r ≤ t₀, exactly 0 for r ≥ t₁.
    pub fn chi(&self, r: f64) -> f64 {
        smooth_step((self.t1 - r) / (self.t1 - self.t0))
    }

    pub fn psi_minus1(&self, xi: Point) -> f64 {
        self.chi(norm2(xi) / 2.0)
    }

    pub fn psi(&self, xi: Point) -> f64 {
        let r = norm2(xi);
        self.chi(r / 2.0) - self.chi(r)
    }

    /// ψ(2^{-j}ξ) for j ≥ 1, or ψ₋₁(ξ) for j = -1.
    pub fn shell_weight(&self, j: i32, xi: Point) -> f64 {
        if j == -1 {
            return self.psi_minus1(xi);
        }
        let s = (-(j as f64)).exp2();
        self.psi([xi[0] * s, xi[1] * s])
    }

    /// Support bounds of shell j in |ξ|: (t₀·2^j, 2t₁·2^j) for j ≥ 1.
    pub fn shell_support(&self, j: i32) -> (f64, f64) {
        let s = (j as f64).exp2();
        (self.t0 * s, 2.0 * self.t1 * s)
    }

    /// Largest shell index needed so the partition sums to one on the whole
    /// lattice of `grid`: the telescoped tail χ(2^{-(J+1)}ξ) must be 1 at the
    /// corner frequency.
    pub fn max_shell(&self, grid: &GridSpec) -> i32 {
        let target = grid.max_freq_norm() / self.t0;
        let mut j = 1;
        while (1u64 << (j + 1)) < target.ceil() as u64 {
            j += 1;
        }
        j as i32
    }

    /// Dyadic shells meeting the grid: `1..=max_shell(grid)`; the low block
    /// j = -1 is always available in addition.
    pub fn active_range(&self, grid: &GridSpec) -> std::ops::RangeInclusive<i32> {
        1..=self.max_shell(grid)
    }

    /// Frequency projection onto shell j. Accepts either side; returns the
    /// side it was given.
    pub fn shell_project(
        &self,
        u: &SampledField,
        j: i32,
        grid_for_range: &GridSpec,
    ) -> Result<SampledField> {
        let max = self.max_shell(grid_for_range);
        if j != -1 && !(1..=max).contains(&j) {
            return Err(Error::ShellOutOfRange { j, max });
        }
        let input_side = u.side;
        let mut hat = u.to_frequency()?;
        for i in 0..hat.grid.len() {
            let w = self.shell_weight(j, hat.grid.freq(i));
            hat.values[i] *= w;
        }
        match input_side {
            crate::grid::Side::Frequency => Ok(hat),
            crate::grid::Side::Physical => hat.fft_inverse(),
        }
    }
}

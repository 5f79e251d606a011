//! Application of the quantized symbol: full operator, dyadic pieces,
//! frozen-coefficient multipliers, discrete kernels with decay diagnostics,
//! and the rescaled pieces behind the dilation identity.
//!
//! The direct quadrature (2π)^{-n} Σ_ξ e^{i⟨x,ξ⟩} a(x,ξ) û(ξ) Δξ^n over the
//! whole frequency lattice is the ground-truth path: for band-limited inputs
//! it is the exact operator on the torus, at O(N^{2n}) cost. The multiplier
//! path is the O(N^n log N) shortcut available when the symbol does not
//! depend on x; the two agree to quadrature rounding. Symbol values off the
//! lattice never enter — that is the central discretization assumption.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{dilate_rescaled, Dilation, GridSpec, SampledField, Side};
use crate::maximal::{bmo_norm, CubeFamily};
use crate::partition::LPPartition;
use crate::symbol::{SymbolEval, SymbolSpec};
use crate::util::{linear_fit, map_indices};
use crate::weights::{weighted_norm, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApplyPath {
    DirectQuadrature,
    MultiplierFastPath,
}

/// A symbol bound to a grid and a dyadic partition.
#[derive(Debug, Clone)]
pub struct OperatorHandle {
    pub symbol: SymbolSpec,
    pub grid: GridSpec,
    pub partition: LPPartition,
    pub path: ApplyPath,
}

impl OperatorHandle {
    pub fn new(
        symbol: SymbolSpec,
        grid: GridSpec,
        partition: LPPartition,
        path: ApplyPath,
    ) -> Result<Self> {
        if path == ApplyPath::MultiplierFastPath && !symbol.x_independent {
            return Err(Error::InvalidParameter(
                "multiplier fast path requires an x-independent symbol".into(),
            ));
        }
        Ok(OperatorHandle {
            symbol,
            grid,
            partition,
            path,
        })
    }

    /// Fast path when the symbol allows it, direct quadrature otherwise.
    pub fn auto(symbol: SymbolSpec, grid: GridSpec, partition: LPPartition) -> Self {
        let path = if symbol.x_independent {
            ApplyPath::MultiplierFastPath
        } else {
            ApplyPath::DirectQuadrature
        };
        OperatorHandle {
            symbol,
            grid,
            partition,
            path,
        }
    }

    fn check_input(&self, u: &SampledField) -> Result<()> {
        if u.side != Side::Physical {
            return Err(Error::SideMismatch {
                expected: "physical",
                got: "frequency",
            });
        }
        if !u.grid.compatible(&self.grid) {
            return Err(Error::GridMismatch(
                "input field lives on a different grid".into(),
            ));
        }
        Ok(())
    }

    /// T_a u on the operator's grid.
    pub fn apply(&self, u: &SampledField) -> Result<SampledField> {
        self.check_input(u)?;
        let hat = u.fft_forward()?;
        apply_symbol_to_hat(&self.symbol, &hat, self.path)
    }

    /// Dyadic piece T_j (symbol a(x,ξ)ψ(2^{-j}ξ)); j = -1 is the low block.
    pub fn apply_dyadic(&self, u: &SampledField, j: i32) -> Result<SampledField> {
        self.check_input(u)?;
        let max = self.partition.max_shell(&self.grid);
        if j != -1 && !(1..=max).contains(&j) {
            return Err(Error::ShellOutOfRange { j, max });
        }
        let mut hat = u.fft_forward()?;
        for i in 0..hat.grid.len() {
            hat.values[i] *= self.partition.shell_weight(j, hat.grid.freq(i));
        }
        apply_symbol_to_hat(&self.symbol, &hat, self.path)
    }

    /// Frozen-coefficient piece: the multiplier a(x_i, ξ)ψ(2^{-j}ξ). Always
    /// eligible for the fast path regardless of the symbol's x-dependence.
    pub fn apply_frozen(&self, u: &SampledField, j: i32, x_index: usize) -> Result<SampledField> {
        self.check_input(u)?;
        let max = self.partition.max_shell(&self.grid);
        if j != -1 && !(1..=max).contains(&j) {
            return Err(Error::ShellOutOfRange { j, max });
        }
        if x_index >= self.grid.len() {
            return Err(Error::InvalidParameter(format!(
                "x_index {x_index} out of range"
            )));
        }
        let xi_point = self.grid.point(x_index);
        let mut hat = u.fft_forward()?;
        for i in 0..hat.grid.len() {
            let xi = hat.grid.freq(i);
            hat.values[i] *= self.symbol.eval(xi_point, xi) * self.partition.shell_weight(j, xi);
        }
        hat.fft_inverse()
    }

    /// Discrete shell kernel rows K_j(x, ·) for each requested x: the
    /// normalized inverse transform of ξ ↦ a(x,ξ)ψ(2^{-j}ξ). With this
    /// normalization apply_frozen(u, j, i) = K_j(x_i, ·) ∗ u exactly.
    pub fn kernel(&self, j: i32, x_indices: &[usize]) -> Result<DyadicKernel> {
        if x_indices.is_empty() {
            return Err(Error::InvalidParameter(
                "kernel needs at least one x point".into(),
            ));
        }
        let max = self.partition.max_shell(&self.grid);
        if j != -1 && !(1..=max).contains(&j) {
            return Err(Error::ShellOutOfRange { j, max });
        }
        let rows: Vec<Vec<Complex64>> = x_indices
            .iter()
            .map(|&xi_idx| {
                let x = self.grid.point(xi_idx);
                let hat = SampledField::from_freq_fn(self.grid, |xi| {
                    self.symbol.eval(x, xi) * self.partition.shell_weight(j, xi)
                });
                hat.fft_inverse().map(|f| f.values)
            })
            .collect::<Result<_>>()?;
        Ok(DyadicKernel {
            j,
            x_indices: x_indices.to_vec(),
            rows,
            grid: self.grid,
        })
    }

    /// Weighted second moments of the shell kernels and their growth in j.
    ///
    /// For each moment order N ≤ `moment_order`, computes
    /// μ_N(j) = Σ_w |w|^{2N} |K_j(x,w)|² Δw^n (max over the stored x) for
    /// j in `j_min..=j_max` and fits the slope of log₂ μ_N against j. For a
    /// symbol of order m the fitted slope tracks 2(m + n/2 − ρN).
    ///
    /// `certified_xi_order` is the ξ-derivative order the symbol has been
    /// certified to; each moment order consumes two derivatives.
    pub fn kernel_decay_profile(
        &self,
        j_min: i32,
        j_max: i32,
        moment_order: usize,
        certified_xi_order: usize,
        x_indices: &[usize],
    ) -> Result<KernelDecayProfile> {
        if 2 * moment_order > certified_xi_order {
            return Err(Error::InsufficientCertification {
                needed: 2 * moment_order,
                have: certified_xi_order,
            });
        }
        if j_min < 1 || j_min > j_max {
            return Err(Error::InvalidParameter(format!(
                "bad shell range {j_min}..={j_max}"
            )));
        }
        let max = self.partition.max_shell(&self.grid);
        if j_max > max {
            return Err(Error::ShellOutOfRange { j: j_max, max });
        }
        let vol = self.grid.cell_volume();
        let mut moments = Vec::new();
        for j in j_min..=j_max {
            let kernel = self.kernel(j, x_indices)?;
            let mut per_n = vec![0.0f64; moment_order + 1];
            for row in &kernel.rows {
                for (n_m, slot) in per_n.iter_mut().enumerate() {
                    let mut s = 0.0;
                    for (widx, v) in row.iter().enumerate() {
                        let w = self.grid.point(widx);
                        let w2 = w[0] * w[0] + w[1] * w[1];
                        s += w2.powi(n_m as i32) * v.norm_sqr();
                    }
                    *slot = slot.max(s * vol);
                }
            }
            moments.push(per_n);
        }
        let js: Vec<f64> = (j_min..=j_max).map(|j| j as f64).collect();
        let slopes: Vec<f64> = (0..=moment_order)
            .map(|n_m| {
                let ys: Vec<f64> = moments
                    .iter()
                    .map(|row| row[n_m].max(1e-300).log2())
                    .collect();
                linear_fit(&js, &ys).0
            })
            .collect();
        Ok(KernelDecayProfile {
            j_min,
            j_max,
            moments,
            slopes,
        })
    }

    /// The rescaled piece behind T_j = τ_j T̃_j τ_{-j}: the symbol
    /// a_j(x,ξ) = a(2^{-jρ}x, 2^{jρ}ξ) ψ(2^{-j(1-ρ)}ξ) on the grid with
    /// half-period 2^{jρ}L. The two lattices are in exact bijection, so the
    /// sandwich reproduces T_j term by term.
    pub fn rescaled_piece(&self, j: i32) -> Result<RescaledPiece> {
        let max = self.partition.max_shell(&self.grid);
        if !(1..=max).contains(&j) {
            return Err(Error::ShellOutOfRange { j, max });
        }
        let rho = self.symbol.rho;
        let scale = (rho * j as f64).exp2();
        let inner_grid = GridSpec::new(
            self.grid.dim(),
            self.grid.points_per_axis(),
            self.grid.half_period() * scale,
        )?;
        let base = self.symbol.evaluator();
        let part = self.partition;
        let shell_scale = (-(j as f64) * (1.0 - rho)).exp2();
        let eval: SymbolEval = std::sync::Arc::new(move |x, xi| {
            let xs = [x[0] / scale, x[1] / scale];
            let xis = [xi[0] * scale, xi[1] * scale];
            let w = part.psi([xi[0] * shell_scale, xi[1] * shell_scale]);
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            base(xs, xis) * w
        });
        let symbol = SymbolSpec::new(
            eval,
            self.symbol.m,
            self.symbol.rho,
            self.symbol.delta,
            self.symbol.x_independent,
            format!("rescaled(j={j}) of {}", self.symbol.description),
        )?;
        // supp a_j in |ξ|: the shell-j annulus contracted by 2^{-jρ}
        let (lo, hi) = self.partition.shell_support(j);
        let contraction = (-(rho * j as f64)).exp2();
        Ok(RescaledPiece {
            j,
            rho,
            symbol,
            inner_grid,
            outer_grid: self.grid,
            path: self.path,
            support: (lo * contraction, hi * contraction),
        })
    }

    /// Lower bound for the operator norm on `space`: the largest output/input
    /// norm ratio over a battery of test fields.
    pub fn estimate_operator_norm(
        &self,
        space: &SpaceSpec,
        battery: &[SampledField],
    ) -> Result<NormWitness> {
        if battery.is_empty() {
            return Err(Error::InvalidParameter("empty test battery".into()));
        }
        let mut per_member = Vec::with_capacity(battery.len());
        for (i, u) in battery.iter().enumerate() {
            let input = space.input_norm(u)?;
            if input == 0.0 {
                return Err(Error::ZeroField(i));
            }
            let tu = self.apply(u)?;
            let output = space.output_norm(&tu)?;
            per_member.push(output / input);
        }
        let (argmax, max_ratio) = per_member.iter().cloned().enumerate().fold(
            (0usize, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );
        Ok(NormWitness {
            max_ratio,
            argmax_member: argmax,
            per_member,
        })
    }
}

/// Apply a full symbol to a frequency-side field, returning a physical field.
pub fn apply_symbol_to_hat(
    symbol: &SymbolSpec,
    hat: &SampledField,
    path: ApplyPath,
) -> Result<SampledField> {
    if hat.side != Side::Frequency {
        return Err(Error::SideMismatch {
            expected: "frequency",
            got: "physical",
        });
    }
    let grid = hat.grid;
    match path {
        ApplyPath::MultiplierFastPath => {
            if !symbol.x_independent {
                return Err(Error::InvalidParameter(
                    "multiplier fast path requires an x-independent symbol".into(),
                ));
            }
            let mut out = hat.clone();
            for i in 0..grid.len() {
                let v = symbol.eval([0.0, 0.0], grid.freq(i));
                if !v.is_finite() {
                    return Err(Error::InvalidSymbol(format!(
                        "symbol not finite at ξ={:?}",
                        grid.freq(i)
                    )));
                }
                out.values[i] *= v;
            }
            out.fft_inverse()
        }
        ApplyPath::DirectQuadrature => {
            let norm =
                grid.freq_cell_volume() / (2.0 * std::f64::consts::PI).powi(grid.dim() as i32);
            // cache lattice points once; the x-loop is the parallel axis
            let freqs: Vec<[f64; 2]> = (0..grid.len()).map(|i| grid.freq(i)).collect();
            let values = map_indices(grid.len(), |xi_idx| {
                let x = grid.point(xi_idx);
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, c) in hat.values.iter().enumerate() {
                    if c.re == 0.0 && c.im == 0.0 {
                        continue;
                    }
                    let xi = freqs[i];
                    acc += symbol.eval(x, xi) * c * Complex64::cis(x[0] * xi[0] + x[1] * xi[1]);
                }
                acc * norm
            });
            for v in &values {
                if !v.is_finite() {
                    return Err(Error::InvalidSymbol(
                        "non-finite value in direct quadrature".into(),
                    ));
                }
            }
            SampledField::new(grid, Side::Physical, values)
        }
    }
}

/// Default x-sample for kernel storage: every grid point in one dimension,
/// a 16-point strided subset in two (full (x, w) arrays would not fit).
pub fn default_kernel_centers(grid: &GridSpec) -> Vec<usize> {
    if grid.dim() == 1 {
        (0..grid.len()).collect()
    } else {
        let stride = (grid.len() / 16).max(1);
        (0..grid.len()).step_by(stride).take(16).collect()
    }
}

/// Kernel rows of one dyadic piece.
#[derive(Debug, Clone)]
pub struct DyadicKernel {
    pub j: i32,
    pub x_indices: Vec<usize>,
    pub rows: Vec<Vec<Complex64>>,
    pub grid: GridSpec,
}

#[derive(Debug, Clone)]
pub struct KernelDecayProfile {
    pub j_min: i32,
    pub j_max: i32,
    /// moments[j - j_min][N]
    pub moments: Vec<Vec<f64>>,
    /// fitted log₂ slope of μ_N vs j, indexed by N
    pub slopes: Vec<f64>,
}

/// T̃_j with its grids; `apply` computes τ_j T̃_j τ_{-j} u.
#[derive(Debug, Clone)]
pub struct RescaledPiece {
    pub j: i32,
    pub rho: f64,
    /// a_j, frequency-supported in an annulus around 2^{j(1-ρ)}.
    pub symbol: SymbolSpec,
    pub inner_grid: GridSpec,
    pub outer_grid: GridSpec,
    path: ApplyPath,
    /// (lo, hi) bounds of the |ξ|-support of a_j.
    pub support: (f64, f64),
}

impl RescaledPiece {
    pub fn apply(&self, u: &SampledField) -> Result<SampledField> {
        if !u.grid.compatible(&self.outer_grid) {
            return Err(Error::GridMismatch(
                "rescaled piece expects the outer grid".into(),
            ));
        }
        let inner = dilate_rescaled(u, &Dilation::new(-self.j, self.rho))?;
        // relabeled grid equals inner_grid up to rounding; use the stored one
        let inner = SampledField::new(self.inner_grid, Side::Physical, inner.values)?;
        let hat = inner.fft_forward()?;
        let tilde = apply_symbol_to_hat(&self.symbol, &hat, self.path)?;
        let back = dilate_rescaled(&tilde, &Dilation::new(self.j, self.rho))?;
        SampledField::new(self.outer_grid, Side::Physical, back.values)
    }
}

/// Norm pairs for operator-norm witnesses.
#[derive(Debug, Clone)]
pub enum SpaceSpec {
    L2,
    Lp(f64),
    WeightedLp { p: f64, weight: Weight },
    LInfToBmo { family: CubeFamily },
}

impl SpaceSpec {
    fn input_norm(&self, u: &SampledField) -> Result<f64> {
        match self {
            SpaceSpec::L2 => Ok(u.norm_l2()),
            SpaceSpec::Lp(p) => u.norm_lp(*p),
            SpaceSpec::WeightedLp { p, weight } => weighted_norm(u, weight, *p),
            SpaceSpec::LInfToBmo { .. } => Ok(u.norm_sup()),
        }
    }

    fn output_norm(&self, tu: &SampledField) -> Result<f64> {
        match self {
            SpaceSpec::L2 => Ok(tu.norm_l2()),
            SpaceSpec::Lp(p) => tu.norm_lp(*p),
            SpaceSpec::WeightedLp { p, weight } => weighted_norm(tu, weight, *p),
            SpaceSpec::LInfToBmo { family } => Ok(bmo_norm(tu, family)?.median_based),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NormWitness {
    pub max_ratio: f64,
    pub argmax_member: usize,
    pub per_member: Vec<f64>,
}

//! Discrete Hardy-Littlewood maximal function, its p-power generalization,
//! the Fefferman-Stein sharp function, and the BMO seminorm, all over an
//! explicit finite family of axis-parallel cubes.
//!
//! Cube statistics are computed once per (field, scale) with prefix sums,
//! then the supremum over cubes containing each point is a sliding maximum
//! over centers. Medians are exact (selection), so the sharp function's inner
//! infimum is exact on real data.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, SampledField, Side};
use crate::util::map_indices;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryPolicy {
    /// Cubes are intersected with the domain (default; matches compactly
    /// supported test functions better than wraparound).
    Clip,
    Periodic,
}

/// Finite family of discrete cubes: every grid point is a center, one cube
/// per center and scale, where scale k has half-width `radii[k]` in index
/// units.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeFamily {
    grid: GridSpec,
    radii: Vec<usize>,
    policy: BoundaryPolicy,
}

impl CubeFamily {
    /// Dyadic side lengths 2L·2^{-k} down to the single-point cube.
    pub fn dyadic(grid: &GridSpec, policy: BoundaryPolicy) -> CubeFamily {
        let mut radii = Vec::new();
        let mut r = grid.points_per_axis() / 2;
        loop {
            radii.push(r);
            if r == 0 {
                break;
            }
            r /= 2;
        }
        CubeFamily {
            grid: *grid,
            radii,
            policy,
        }
    }

    /// A denser scale ladder with `per_octave` radii per factor of two;
    /// contains the dyadic ladder as a subset.
    pub fn dense(grid: &GridSpec, policy: BoundaryPolicy, per_octave: usize) -> CubeFamily {
        let mut radii: Vec<usize> = Vec::new();
        let top = grid.points_per_axis() / 2;
        let mut x = top as f64;
        let step = 0.5f64.powf(1.0 / per_octave.max(1) as f64);
        while x >= 1.0 {
            radii.push(x.round() as usize);
            x *= step;
        }
        radii.push(0);
        radii.dedup();
        CubeFamily {
            grid: *grid,
            radii,
            policy,
        }
    }

    pub fn with_radii(
        grid: &GridSpec,
        mut radii: Vec<usize>,
        policy: BoundaryPolicy,
    ) -> Result<CubeFamily> {
        radii.sort_unstable_by(|a, b| b.cmp(a));
        radii.dedup();
        if radii.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(CubeFamily {
            grid: *grid,
            radii,
            policy,
        })
    }

    pub fn radii(&self) -> &[usize] {
        &self.radii
    }

    pub fn policy(&self) -> BoundaryPolicy {
        self.policy
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Physical side lengths of the scales, (2r+1)·Δx.
    pub fn side_lengths(&self) -> Vec<f64> {
        self.radii
            .iter()
            .map(|&r| (2 * r + 1) as f64 * self.grid.spacing())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaximalKind {
    /// M_p: sup of (cube average of |u|^p)^{1/p}.
    Mp,
    /// Sharp function: sup of the best-constant mean absolute oscillation.
    Sharp,
}

#[derive(Debug, Clone)]
pub struct MaximalResult {
    pub values: Vec<f64>,
    pub family: CubeFamily,
    pub kind: MaximalKind,
    pub exponent: f64,
}

fn check_physical(u: &SampledField, family: &CubeFamily) -> Result<()> {
    if u.side != Side::Physical {
        return Err(Error::SideMismatch {
            expected: "physical",
            got: "frequency",
        });
    }
    if family.radii.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !u.grid.compatible(&family.grid) {
        return Err(Error::GridMismatch(
            "cube family built for a different grid".into(),
        ));
    }
    Ok(())
}

/// Window bounds along one axis for a center c and radius r.
#[inline]
fn clip_bounds(c: usize, r: usize, n: usize) -> (usize, usize) {
    (c.saturating_sub(r), (c + r).min(n - 1))
}

/// Per-scale cube averages of `vals` (any nonnegative data), one per center.
fn cube_averages(grid: &GridSpec, vals: &[f64], r: usize, policy: BoundaryPolicy) -> Vec<f64> {
    let n = grid.points_per_axis();
    match (grid.dim(), policy) {
        (1, BoundaryPolicy::Clip) => {
            let mut prefix = vec![0.0f64; n + 1];
            for i in 0..n {
                prefix[i + 1] = prefix[i] + vals[i];
            }
            (0..n)
                .map(|c| {
                    let (lo, hi) = clip_bounds(c, r, n);
                    (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1) as f64
                })
                .collect()
        }
        (1, BoundaryPolicy::Periodic) => {
            let w = (2 * r + 1).min(n);
            let r_eff = r.min(n - 1);
            let mut prefix = vec![0.0f64; 2 * n + 1];
            for i in 0..2 * n {
                prefix[i + 1] = prefix[i] + vals[i % n];
            }
            (0..n)
                .map(|c| {
                    // window [c-r, c+r] wrapped into a start in [0, n)
                    let lo = (c + n - r_eff) % n;
                    (prefix[lo + w] - prefix[lo]) / w as f64
                })
                .collect()
        }
        (2, BoundaryPolicy::Clip) => {
            // summed-area table
            let mut sat = vec![0.0f64; (n + 1) * (n + 1)];
            for i in 0..n {
                for j in 0..n {
                    sat[(i + 1) * (n + 1) + (j + 1)] =
                        vals[i * n + j] + sat[i * (n + 1) + (j + 1)] + sat[(i + 1) * (n + 1) + j]
                            - sat[i * (n + 1) + j];
                }
            }
            let mut out = vec![0.0f64; n * n];
            for ci in 0..n {
                let (ilo, ihi) = clip_bounds(ci, r, n);
                for cj in 0..n {
                    let (jlo, jhi) = clip_bounds(cj, r, n);
                    let s = sat[(ihi + 1) * (n + 1) + (jhi + 1)]
                        - sat[ilo * (n + 1) + (jhi + 1)]
                        - sat[(ihi + 1) * (n + 1) + jlo]
                        + sat[ilo * (n + 1) + jlo];
                    out[ci * n + cj] = s / ((ihi - ilo + 1) * (jhi - jlo + 1)) as f64;
                }
            }
            out
        }
        (2, BoundaryPolicy::Periodic) => {
            let w = (2 * r + 1).min(n);
            let mut out = vec![0.0f64; n * n];
            for ci in 0..n {
                for cj in 0..n {
                    let mut s = 0.0;
                    for di in 0..w {
                        let i = (ci + n + di - r.min(n - 1)) % n;
                        for dj in 0..w {
                            let j = (cj + n + dj - r.min(n - 1)) % n;
                            s += vals[i * n + j];
                        }
                    }
                    out[ci * n + cj] = s / (w * w) as f64;
                }
            }
            out
        }
        _ => unreachable!("grid dims are validated"),
    }
}

/// Cube averages of arbitrary nonnegative samples; shared with the weights
/// module so A_p products and maximal functions use one cube universe.
pub(crate) fn cube_averages_for(
    grid: &GridSpec,
    vals: &[f64],
    r: usize,
    policy: BoundaryPolicy,
) -> Vec<f64> {
    cube_averages(grid, vals, r, policy)
}

/// max over centers within radius r of each point (same containment relation
/// as the cube averages).
fn sliding_max(grid: &GridSpec, stat: &[f64], r: usize, policy: BoundaryPolicy) -> Vec<f64> {
    let n = grid.points_per_axis();
    let pass_1d = |row: &[f64]| -> Vec<f64> {
        let len = row.len();
        (0..len)
            .map(|i| match policy {
                BoundaryPolicy::Clip => {
                    let (lo, hi) = clip_bounds(i, r, len);
                    row[lo..=hi]
                        .iter()
                        .cloned()
                        .fold(f64::NEG_INFINITY, f64::max)
                }
                BoundaryPolicy::Periodic => {
                    let w = (2 * r + 1).min(len);
                    let r_eff = r.min(len - 1);
                    let mut m = f64::NEG_INFINITY;
                    for d in 0..w {
                        m = m.max(row[(i + len + d - r_eff) % len]);
                    }
                    m
                }
            })
            .collect()
    };
    if grid.dim() == 1 {
        return pass_1d(stat);
    }
    // separable: rows then columns
    let mut tmp = vec![0.0f64; n * n];
    for i in 0..n {
        let row = pass_1d(&stat[i * n..(i + 1) * n]);
        tmp[i * n..(i + 1) * n].copy_from_slice(&row);
    }
    let mut out = vec![0.0f64; n * n];
    let mut col = vec![0.0f64; n];
    for j in 0..n {
        for i in 0..n {
            col[i] = tmp[i * n + j];
        }
        let cm = pass_1d(&col);
        for i in 0..n {
            out[i * n + j] = cm[i];
        }
    }
    out
}

/// Generalized Hardy-Littlewood maximal function M_p u over the family.
pub fn hl_maximal(u: &SampledField, family: &CubeFamily, p: f64) -> Result<MaximalResult> {
    check_physical(u, family)?;
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "maximal exponent must be >= 1, got {p}"
        )));
    }
    let powered: Vec<f64> = u.values.iter().map(|z| z.norm().powf(p)).collect();
    let mut best = vec![f64::NEG_INFINITY; u.grid.len()];
    for &r in &family.radii {
        let stat = cube_averages(&u.grid, &powered, r, family.policy);
        let reach = sliding_max(&u.grid, &stat, r, family.policy);
        for (b, v) in best.iter_mut().zip(reach) {
            *b = b.max(v);
        }
    }
    let values = best.into_iter().map(|v| v.powf(1.0 / p)).collect();
    Ok(MaximalResult {
        values,
        family: family.clone(),
        kind: MaximalKind::Mp,
        exponent: p,
    })
}

fn median(buf: &mut [f64]) -> f64 {
    let k = (buf.len() - 1) / 2; // lower median on even cardinality
    let (_, m, _) = buf.select_nth_unstable_by(k, |a, b| a.partial_cmp(b).unwrap());
    *m
}

/// Per-center mean absolute deviation from the componentwise median, plus the
/// mean-oscillation variant avg|u - avg u|, for one scale.
fn cube_oscillations(
    grid: &GridSpec,
    u: &[Complex64],
    r: usize,
    policy: BoundaryPolicy,
) -> (Vec<f64>, Vec<f64>) {
    let n = grid.points_per_axis();
    let window_1d = |c: usize| -> Vec<usize> {
        match policy {
            BoundaryPolicy::Clip => {
                let (lo, hi) = clip_bounds(c, r, n);
                (lo..=hi).collect()
            }
            BoundaryPolicy::Periodic => {
                let w = (2 * r + 1).min(n);
                (0..w).map(|d| (c + n + d - r.min(n - 1)) % n).collect()
            }
        }
    };
    let centers = grid.len();
    let pairs: Vec<(f64, f64)> = map_indices(centers, |center| {
        let ax = grid.axes(center);
        let idx: Vec<usize> = if grid.dim() == 1 {
            window_1d(ax[0])
        } else {
            let rows = window_1d(ax[0]);
            let cols = window_1d(ax[1]);
            rows.iter()
                .flat_map(|&i| cols.iter().map(move |&j| i * n + j))
                .collect()
        };
        let m = idx.len() as f64;
        let mut re: Vec<f64> = idx.iter().map(|&i| u[i].re).collect();
        let mut im: Vec<f64> = idx.iter().map(|&i| u[i].im).collect();
        let med = Complex64::new(median(&mut re), median(&mut im));
        let mut mean = Complex64::new(0.0, 0.0);
        for &i in &idx {
            mean += u[i];
        }
        mean /= m;
        let mut dev_med = 0.0;
        let mut dev_mean = 0.0;
        for &i in &idx {
            dev_med += (u[i] - med).norm();
            dev_mean += (u[i] - mean).norm();
        }
        (dev_med / m, dev_mean / m)
    });
    let med: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mean: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    (med, mean)
}

/// Sharp function u♯: the sup over containing cubes of the best-constant mean
/// absolute oscillation. The inner infimum is attained at the median, exactly
/// so for real inputs; complex inputs use the componentwise median surrogate.
pub fn sharp_function(u: &SampledField, family: &CubeFamily) -> Result<MaximalResult> {
    check_physical(u, family)?;
    let mut best = vec![f64::NEG_INFINITY; u.grid.len()];
    for &r in &family.radii {
        let (stat, _) = cube_oscillations(&u.grid, &u.values, r, family.policy);
        let reach = sliding_max(&u.grid, &stat, r, family.policy);
        for (b, v) in best.iter_mut().zip(reach) {
            *b = b.max(v);
        }
    }
    Ok(MaximalResult {
        values: best,
        family: family.clone(),
        kind: MaximalKind::Sharp,
        exponent: 1.0,
    })
}

/// Both flavors of the discrete BMO seminorm over the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BmoNorm {
    /// sup over cubes of the median-centered mean absolute oscillation
    /// (equals the sup of the sharp function).
    pub median_based: f64,
    /// sup over cubes of avg|u − avg_Q u|, the conventional seminorm.
    pub mean_based: f64,
}

pub fn bmo_norm(u: &SampledField, family: &CubeFamily) -> Result<BmoNorm> {
    check_physical(u, family)?;
    let mut median_based = 0.0f64;
    let mut mean_based = 0.0f64;
    for &r in &family.radii {
        let (med, mean) = cube_oscillations(&u.grid, &u.values, r, family.policy);
        median_based = med.into_iter().fold(median_based, f64::max);
        mean_based = mean.into_iter().fold(mean_based, f64::max);
    }
    Ok(BmoNorm {
        median_based,
        mean_based,
    })
}

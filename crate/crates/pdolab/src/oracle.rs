//! Brute-force reference implementations used by the test suite.
//!
//! Everything here is written as plain double loops straight from the
//! definitions, sharing no code with the fast paths it checks. If a fast path
//! and an oracle disagree, the oracle is right.

use num_complex::Complex64;

use crate::grid::{GridSpec, SampledField, Side};
use crate::maximal::{BoundaryPolicy, CubeFamily};
use crate::weights::Weight;

/// Direct O(N^{2n}) evaluation of the forward transform.
pub fn dft_forward(u: &SampledField) -> SampledField {
    assert_eq!(u.side, Side::Physical);
    let g = u.grid;
    let mut out = SampledField::zeros(g, Side::Frequency);
    for i in 0..g.len() {
        let xi = g.freq(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, v) in u.values.iter().enumerate() {
            let x = g.point(j);
            acc += v * Complex64::cis(-(x[0] * xi[0] + x[1] * xi[1]));
        }
        out.values[i] = acc * g.cell_volume();
    }
    out
}

/// Direct evaluation of the inverse transform.
pub fn dft_inverse(hat: &SampledField) -> SampledField {
    assert_eq!(hat.side, Side::Frequency);
    let g = hat.grid;
    let norm = g.freq_cell_volume() / (2.0 * std::f64::consts::PI).powi(g.dim() as i32);
    let mut out = SampledField::zeros(g, Side::Physical);
    for j in 0..g.len() {
        let x = g.point(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in hat.values.iter().enumerate() {
            let xi = g.freq(i);
            acc += c * Complex64::cis(x[0] * xi[0] + x[1] * xi[1]);
        }
        out.values[j] = acc * norm;
    }
    out
}

fn cube_indices(
    grid: &GridSpec,
    center: usize,
    radius: usize,
    policy: BoundaryPolicy,
) -> Vec<usize> {
    let n = grid.points_per_axis() as i64;
    let r = radius as i64;
    let c = grid.axes(center);
    let mut out = Vec::new();
    let ranges: Vec<Vec<i64>> = (0..grid.dim())
        .map(|d| {
            let cd = c[d] as i64;
            match policy {
                BoundaryPolicy::Clip => ((cd - r).max(0)..=(cd + r).min(n - 1)).collect(),
                BoundaryPolicy::Periodic => {
                    if 2 * r + 1 >= n {
                        (0..n).collect()
                    } else {
                        (cd - r..=cd + r).map(|i| i.rem_euclid(n)).collect()
                    }
                }
            }
        })
        .collect();
    if grid.dim() == 1 {
        for &i in &ranges[0] {
            out.push(i as usize);
        }
    } else {
        for &i in &ranges[0] {
            for &j in &ranges[1] {
                out.push(grid.linear([i as usize, j as usize]));
            }
        }
    }
    out
}

/// Generalized maximal function straight from the definition: for every grid
/// point, scan every cube in the family containing it.
pub fn maximal_brute(u: &SampledField, family: &CubeFamily, p: f64) -> Vec<f64> {
    let g = u.grid;
    let n = g.len();
    let mut best = vec![0.0f64; n];
    for &r in family.radii() {
        for center in 0..n {
            let idx = cube_indices(&g, center, r, family.policy());
            let mut s = 0.0;
            for &i in &idx {
                s += u.values[i].norm().powf(p);
            }
            let avg = (s / idx.len() as f64).powf(1.0 / p);
            // the cube contributes to every point it contains
            for &i in &idx {
                if contains(&g, center, r, i, family.policy()) && avg > best[i] {
                    best[i] = avg;
                }
            }
        }
    }
    best
}

fn contains(
    grid: &GridSpec,
    center: usize,
    radius: usize,
    point: usize,
    policy: BoundaryPolicy,
) -> bool {
    let n = grid.points_per_axis() as i64;
    let c = grid.axes(center);
    let p = grid.axes(point);
    (0..grid.dim()).all(|d| {
        let diff = (p[d] as i64 - c[d] as i64).abs();
        match policy {
            BoundaryPolicy::Clip => diff <= radius as i64,
            BoundaryPolicy::Periodic => diff.min(n - diff) <= radius as i64,
        }
    })
}

/// Sharp function by exhaustive search: for real inputs the inner infimum is
/// scanned over every sample value in the cube as a candidate constant, which
/// contains the median and therefore the exact minimizer.
pub fn sharp_brute_real(u: &SampledField, family: &CubeFamily) -> Vec<f64> {
    let g = u.grid;
    let n = g.len();
    let mut best = vec![0.0f64; n];
    for &r in family.radii() {
        for center in 0..n {
            let idx = cube_indices(&g, center, r, family.policy());
            let vals: Vec<f64> = idx.iter().map(|&i| u.values[i].re).collect();
            let mut min_dev = f64::INFINITY;
            for &c in &vals {
                let dev: f64 = vals.iter().map(|v| (v - c).abs()).sum::<f64>() / vals.len() as f64;
                if dev < min_dev {
                    min_dev = dev;
                }
            }
            for &i in &idx {
                if contains(&g, center, r, i, family.policy()) && min_dev > best[i] {
                    best[i] = min_dev;
                }
            }
        }
    }
    best
}

/// Muckenhoupt product over every cube; returns the supremum.
pub fn ap_constant_brute(w: &Weight, p: f64, family: &CubeFamily) -> f64 {
    let g = w.grid;
    let peak = w.values.iter().cloned().fold(0.0f64, f64::max);
    let mut best = 0.0f64;
    for &r in family.radii() {
        for center in 0..g.len() {
            let idx = cube_indices(&g, center, r, family.policy());
            let m = idx.len() as f64;
            let mut a = 0.0;
            let mut b = 0.0;
            for &i in &idx {
                let v = w.values[i] / peak;
                a += v;
                b += v.powf(1.0 / (1.0 - p));
            }
            let prod = (a / m) * (b / m).powf(p - 1.0);
            if prod > best {
                best = prod;
            }
        }
    }
    best
}

/// Direct operator quadrature at a single output point:
/// (2π)^{-n} Σ_ξ e^{i⟨x,ξ⟩} a(x,ξ) û(ξ) Δξ^n.
pub fn apply_at_point(
    symbol: &dyn Fn([f64; 2], [f64; 2]) -> Complex64,
    hat: &SampledField,
    x: [f64; 2],
) -> Complex64 {
    assert_eq!(hat.side, Side::Frequency);
    let g = hat.grid;
    let norm = g.freq_cell_volume() / (2.0 * std::f64::consts::PI).powi(g.dim() as i32);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, c) in hat.values.iter().enumerate() {
        let xi = g.freq(i);
        acc += symbol(x, xi) * c * Complex64::cis(x[0] * xi[0] + x[1] * xi[1]);
    }
    acc * norm
}

//! Test-field batteries.
//!
//! The standard battery holds eight deterministic members of the four
//! built-in kinds. Members whose parameters track the grid resolution, and
//! the two symbol-adapted probes below, carry the `Probe` role: stability
//! verdicts are read off the fixed-parameter core, growth verdicts off the
//! full battery. The probes realize the classical extremizer structure, which
//! generic smooth inputs cannot reach:
//!
//! * `matched_chirp` — frequency-side phase conjugate to the symbol's
//!   oscillation, so the operator refocuses an entire band at one point;
//! * `kernel_sign` — physical-side phase conjugate to the full kernel, the
//!   extremal input for sup-norm targets.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{make_test_function, norm2, GridSpec, SampledField, Side, TestFunction};
use crate::symbol::SymbolSpec;
use crate::util::smooth_step;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Fixed physical parameters; ratios converge under refinement.
    Core,
    /// Standard kinds with resolution-coupled parameters.
    Coupled,
    /// Symbol-adapted extremizer structure; witnesses the sharpness
    /// direction.
    Adapted,
}

#[derive(Debug, Clone)]
pub struct BatteryMember {
    pub name: String,
    pub role: Role,
    pub field: SampledField,
}

/// Knobs for battery construction; every field mirrors a config key.
#[derive(Debug, Clone)]
pub struct BatterySpec {
    pub seed_a: u64,
    pub seed_b: u64,
    /// which probe groups to append: "chirp", "kernel_sign"
    pub probes: Vec<String>,
    pub chirp_lo_frac: f64,
    pub chirp_hi_frac: f64,
    /// support radius of the kernel-sign probe, as a fraction of L
    pub sign_support_frac: f64,
    /// inner radius of the sign probe's annulus, in grid cells; skipping the
    /// first cells keeps the kernel's lattice-saturated core out of the sum
    pub sign_inner_skip: usize,
    /// wave-packet probe geometry
    pub packet_center: f64,
    pub packet_freq_frac: f64,
    pub packet_cells: usize,
    /// pad with extra seeded members up to this count (0 = just the 8)
    pub count: usize,
}

impl Default for BatterySpec {
    fn default() -> Self {
        BatterySpec {
            seed_a: 7,
            seed_b: 11,
            probes: Vec::new(),
            chirp_lo_frac: 0.10,
            chirp_hi_frac: 0.45,
            sign_support_frac: 0.35,
            sign_inner_skip: 3,
            packet_center: 1.0,
            packet_freq_frac: 0.35,
            packet_cells: 4,
            count: 0,
        }
    }
}

fn normalized(mut f: SampledField) -> SampledField {
    let peak = f.norm_sup();
    if peak > 0.0 {
        for v in &mut f.values {
            *v /= peak;
        }
    }
    f
}

fn push(out: &mut Vec<BatteryMember>, name: &str, role: Role, field: SampledField) {
    out.push(BatteryMember {
        name: name.to_string(),
        role,
        field: normalized(field),
    });
}

/// The eight standard members: two gaussians, two modulated gaussians, two
/// bumps, two seeded random band-limited fields. One modulated gaussian and
/// one random field couple their frequency content to the lattice extent
/// (role Probe); everything else is fixed in physical units (role Core).
pub fn standard_battery(grid: &GridSpec, spec: &BatterySpec) -> Result<Vec<BatteryMember>> {
    let l = grid.half_period();
    let dxi = grid.freq_spacing();
    let nyq = grid.nyquist();
    let n = grid.points_per_axis();
    let second = |v: f64| if grid.dim() == 2 { v } else { 0.0 };

    let mut out = Vec::new();
    push(
        &mut out,
        "gaussian_1",
        Role::Core,
        make_test_function(
            &TestFunction::Gaussian {
                center: [0.0, 0.0],
                width: 0.12 * l,
            },
            grid,
        )?,
    );
    push(
        &mut out,
        "gaussian_2",
        Role::Core,
        make_test_function(
            &TestFunction::Gaussian {
                center: [0.2 * l, second(0.1 * l)],
                width: 0.08 * l,
            },
            grid,
        )?,
    );
    push(
        &mut out,
        "mod_gaussian_fixed",
        Role::Core,
        make_test_function(
            &TestFunction::ModulatedGaussian {
                center: [-0.15 * l, 0.0],
                width: 0.1 * l,
                modulation: [10.0 * dxi, second(4.0 * dxi)],
            },
            grid,
        )?,
    );
    push(
        &mut out,
        "mod_gaussian_scaled",
        Role::Coupled,
        make_test_function(
            &TestFunction::ModulatedGaussian {
                center: [0.1 * l, second(-0.1 * l)],
                width: 0.09 * l,
                modulation: [0.2 * nyq, 0.0],
            },
            grid,
        )?,
    );
    push(
        &mut out,
        "bump_1",
        Role::Core,
        make_test_function(
            &TestFunction::Bump {
                center: [0.0, 0.0],
                width: 0.45 * l,
            },
            grid,
        )?,
    );
    push(
        &mut out,
        "bump_2",
        Role::Core,
        make_test_function(
            &TestFunction::Bump {
                center: [0.25 * l, second(-0.2 * l)],
                width: 0.3 * l,
            },
            grid,
        )?,
    );
    push(
        &mut out,
        "random_fixed",
        Role::Core,
        make_test_function(
            &TestFunction::RandomBandLimited {
                seed: spec.seed_a,
                band: 10,
            },
            grid,
        )?,
    );
    push(
        &mut out,
        "random_scaled",
        Role::Coupled,
        make_test_function(
            &TestFunction::RandomBandLimited {
                seed: spec.seed_b,
                band: n / 4,
            },
            grid,
        )?,
    );
    Ok(out)
}

/// Battery for one experiment run: the standard eight, the requested probes
/// adapted to `symbol`, and optional seeded padding up to `spec.count`.
pub fn build_battery(
    grid: &GridSpec,
    symbol: &SymbolSpec,
    spec: &BatterySpec,
) -> Result<Vec<BatteryMember>> {
    let mut out = standard_battery(grid, spec)?;
    for probe in &spec.probes {
        match probe.as_str() {
            "chirp" => out.push(matched_chirp_probe(
                grid,
                symbol,
                spec.chirp_lo_frac,
                spec.chirp_hi_frac,
            )?),
            "kernel_sign" => out.push(kernel_sign_probe(
                grid,
                symbol,
                spec.sign_support_frac,
                spec.sign_inner_skip,
            )?),
            "wave_packet" => out.push(wave_packet_probe(
                grid,
                spec.packet_center,
                spec.packet_freq_frac,
                spec.packet_cells,
            )?),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown probe '{other}' (expected chirp or kernel_sign)"
                )))
            }
        }
    }
    let mut extra = 0u64;
    while out.len() < spec.count {
        let f = make_test_function(
            &TestFunction::RandomBandLimited {
                seed: spec.seed_b.wrapping_add(101 + extra),
                band: (grid.points_per_axis() / 4).max(4),
            },
            grid,
        )?;
        push(&mut out, &format!("random_pad_{extra}"), Role::Coupled, f);
        extra += 1;
    }
    Ok(out)
}

/// Frequency-side band with phase e^{-i|ξ|^{1-ρ}}, conjugate to the
/// oscillating symbol family: the operator cancels the phase and stacks the
/// whole band at the origin.
pub fn matched_chirp_probe(
    grid: &GridSpec,
    symbol: &SymbolSpec,
    lo_frac: f64,
    hi_frac: f64,
) -> Result<BatteryMember> {
    let nyq = grid.nyquist();
    let lo = (lo_frac * nyq).max(3.0);
    let hi = hi_frac * nyq;
    if hi <= 1.5 * lo {
        return Err(Error::InvalidParameter(format!(
            "chirp band [{lo:.2}, {hi:.2}] too narrow; raise the grid size or widen the fractions"
        )));
    }
    let a = 1.0 - symbol.rho;
    let ramp = 0.38 * (hi - lo);
    let hat = SampledField::from_freq_fn(*grid, move |xi| {
        let r = norm2(xi);
        let env = smooth_step((r - lo) / ramp) * smooth_step((hi - r) / ramp);
        if env == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(env, -r.powf(a))
        }
    });
    let field = hat.fft_inverse()?;
    Ok(BatteryMember {
        name: "matched_chirp".into(),
        role: Role::Adapted,
        field: normalized(field),
    })
}

/// Narrow wave packet whose geometry is tied to the lattice: width is a
/// fixed number of cells and the carrier frequency a fixed fraction of the
/// Nyquist frequency, so its sampled shape is identical across the
/// refinement ladder. Placed one unit from the origin, it rides the exact
/// unit translation of the ρ = 0 oscillation onto x = 0, where the input
/// mass is thin.
pub fn wave_packet_probe(
    grid: &GridSpec,
    center: f64,
    freq_frac: f64,
    width_cells: usize,
) -> Result<BatteryMember> {
    if center.abs() + 0.2 * grid.half_period() >= grid.half_period() {
        return Err(Error::InvalidParameter(format!(
            "packet center {center} too close to the boundary of [-{l}, {l})",
            l = grid.half_period()
        )));
    }
    if !(0.0 < freq_frac && freq_frac < 0.5) {
        return Err(Error::InvalidParameter(
            "packet frequency fraction must lie in (0, 0.5)".into(),
        ));
    }
    let sigma = width_cells.max(2) as f64 * grid.spacing();
    let f = freq_frac * grid.nyquist();
    let field = SampledField::from_fn(*grid, move |x| {
        let d = x[0] - center;
        Complex64::from_polar((-d * d / (2.0 * sigma * sigma)).exp(), f * d)
    });
    Ok(BatteryMember {
        name: "wave_packet".into(),
        role: Role::Adapted,
        field: normalized(field),
    })
}

/// Physical-side unimodular pattern carrying the conjugate phase of the full
/// kernel on a compact annulus around the origin. The inner edge sits
/// `inner_skip` grid cells out so the sum over the pattern rides the kernel's
/// power-law range rather than its lattice-saturated core.
pub fn kernel_sign_probe(
    grid: &GridSpec,
    symbol: &SymbolSpec,
    support_frac: f64,
    inner_skip: usize,
) -> Result<BatteryMember> {
    if !(0.0 < support_frac && support_frac <= 1.0) {
        return Err(Error::InvalidParameter(
            "sign probe support must lie in (0,1]".into(),
        ));
    }
    let hat = SampledField::from_freq_fn(*grid, |xi| symbol.eval([0.0, 0.0], xi));
    let kernel = hat.fft_inverse()?;
    let peak = kernel.norm_sup();
    let c0 = support_frac * grid.half_period();
    let r_in = inner_skip as f64 * grid.spacing();
    let ramp_in = 2.0 * grid.spacing();
    let n = grid.points_per_axis();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (i, v) in values.iter_mut().enumerate() {
        let y = grid.point(i);
        let r = norm2(y);
        let env = smooth_step((c0 - r) / (0.4 * c0)) * smooth_step((r - r_in) / ramp_in);
        if env == 0.0 {
            continue;
        }
        // K(-y): negate per-axis indices modulo N
        let ax = grid.axes(i);
        let mut neg = [0usize; 2];
        for d in 0..grid.dim() {
            neg[d] = (n - ax[d]) % n;
        }
        let k = kernel.values[grid.linear(neg)];
        if k.norm() <= 1e-13 * peak {
            continue;
        }
        *v = Complex64::from_polar(env, -k.arg());
    }
    let field = SampledField::new(*grid, Side::Physical, values)?;
    Ok(BatteryMember {
        name: "kernel_sign".into(),
        role: Role::Adapted,
        field,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn standard_battery_shape() {
        let g = make_grid(1, 64, std::f64::consts::FRAC_PI_2).unwrap();
        let batt = standard_battery(&g, &BatterySpec::default()).unwrap();
        assert_eq!(batt.len(), 8);
        assert_eq!(batt.iter().filter(|m| m.role == Role::Core).count(), 6);
        for m in &batt {
            assert!(
                (m.field.norm_sup() - 1.0).abs() < 1e-12,
                "{} not normalized",
                m.name
            );
        }
    }

    #[test]
    fn battery_is_deterministic() {
        let g = make_grid(1, 64, std::f64::consts::FRAC_PI_2).unwrap();
        let a = standard_battery(&g, &BatterySpec::default()).unwrap();
        let b = standard_battery(&g, &BatterySpec::default()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.field.values, y.field.values);
        }
    }

    #[test]
    fn probes_build_and_focus() {
        let g = make_grid(1, 128, std::f64::consts::FRAC_PI_2).unwrap();
        let sym = SymbolSpec::miyachi(-0.25, 0.5, 1.0).unwrap();
        let chirp = matched_chirp_probe(&g, &sym, 0.1, 0.45).unwrap().field;
        assert!(chirp.norm_sup() > 0.0);
        // applying the symbol must concentrate the chirp at the origin
        let part = crate::partition::LPPartition::new(2.0).unwrap();
        let op = crate::operator::OperatorHandle::auto(sym.clone(), g, part);
        let tu = op.apply(&chirp).unwrap();
        let center = g.len() / 2;
        let peak_idx = (0..g.len()).max_by(|&i, &j| {
            tu.values[i]
                .norm()
                .partial_cmp(&tu.values[j].norm())
                .unwrap()
        });
        assert_eq!(peak_idx, Some(center), "refocused peak should sit at x = 0");

        let sign = kernel_sign_probe(&g, &sym, 0.35, 3).unwrap().field;
        assert!(sign.norm_sup() <= 1.0 + 1e-12);
        let t_sign = op.apply(&sign).unwrap();
        // phase alignment makes T u(0) essentially real and positive
        assert!(t_sign.values[center].re > 0.0);
        assert!(t_sign.values[center].re > 0.9 * t_sign.values[center].norm());
    }

    #[test]
    fn battery_padding_reaches_count() {
        let g = make_grid(1, 64, std::f64::consts::FRAC_PI_2).unwrap();
        let sym = SymbolSpec::bessel(-1.0);
        let mut spec = BatterySpec {
            count: 20,
            ..Default::default()
        };
        spec.probes.push("chirp".into());
        let batt = build_battery(&g, &sym, &spec).unwrap();
        assert!(batt.len() >= 20);
    }

    #[test]
    fn chirp_needs_room() {
        // nyquist 4: the band [3, 1.8] is empty
        let g = make_grid(1, 8, std::f64::consts::PI).unwrap();
        let sym = SymbolSpec::miyachi(-0.25, 0.5, 1.0).unwrap();
        assert!(matched_chirp_probe(&g, &sym, 0.1, 0.45).is_err());
    }
}

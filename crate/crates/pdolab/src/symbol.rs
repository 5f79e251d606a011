//! Symbols a(x,ξ), the built-in families, and sampling-based certification of
//! membership in the anisotropic derivative-bound classes.
//!
//! The certifier is a falsifier: it estimates mixed derivatives by central
//! finite differences on a sample set and reports violations there. Passing
//! certifies nothing off the sample set.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{norm2, GridSpec, Point};
use crate::partition::LPPartition;
use crate::tolerances;
use crate::util::{linear_fit, map_indices, smooth_step};

pub type SymbolEval = Arc<dyn Fn(Point, Point) -> Complex64 + Send + Sync>;

/// ⟨ξ⟩ = (1 + |ξ|²)^{1/2}.
pub fn bracket(xi: Point) -> f64 {
    (1.0 + xi[0] * xi[0] + xi[1] * xi[1]).sqrt()
}

/// A symbol evaluator together with its claimed order parameters.
#[derive(Clone)]
pub struct SymbolSpec {
    eval: SymbolEval,
    pub m: f64,
    pub rho: f64,
    pub delta: f64,
    pub x_independent: bool,
    pub description: String,
}

impl std::fmt::Debug for SymbolSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymbolSpec")
            .field("m", &self.m)
            .field("rho", &self.rho)
            .field("delta", &self.delta)
            .field("x_independent", &self.x_independent)
            .field("description", &self.description)
            .finish()
    }
}

impl SymbolSpec {
    pub fn new(
        eval: SymbolEval,
        m: f64,
        rho: f64,
        delta: f64,
        x_independent: bool,
        description: impl Into<String>,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::InvalidSymbol(format!(
                "rho must lie in [0,1], got {rho}"
            )));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::InvalidSymbol(format!(
                "delta must lie in [0,1), got {delta}"
            )));
        }
        Ok(SymbolSpec {
            eval: eval.clone(),
            m,
            rho,
            delta,
            x_independent,
            description: description.into(),
        })
    }

    pub fn eval(&self, x: Point, xi: Point) -> Complex64 {
        (self.eval)(x, xi)
    }

    pub fn evaluator(&self) -> SymbolEval {
        self.eval.clone()
    }

    /// Same evaluator under a different claimed order; lets tests exercise
    /// the certifier against deliberate mis-claims.
    pub fn with_claimed_order(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn with_claimed_rho(mut self, rho: f64) -> Self {
        self.rho = rho;
        self
    }

    /// a ≡ 1.
    pub fn identity() -> SymbolSpec {
        SymbolSpec {
            eval: Arc::new(|_, _| Complex64::new(1.0, 0.0)),
            m: 0.0,
            rho: 1.0,
            delta: 0.0,
            x_independent: true,
            description: "identity".into(),
        }
    }

    /// Bessel-bracket multiplier ⟨ξ⟩^m; the model symbol of exact order m.
    pub fn bessel(m: f64) -> SymbolSpec {
        SymbolSpec {
            eval: Arc::new(move |_, xi| Complex64::new(bracket(xi).powf(m), 0.0)),
            m,
            rho: 1.0,
            delta: 0.0,
            x_independent: true,
            description: format!("bessel(m={m})"),
        }
    }

    /// Oscillating cutoff multiplier φ(ξ)|ξ|^m e^{i|ξ|^{1-ρ}}: the classical
    /// extremizer for the critical-order estimates. Needs 0 ≤ ρ < 1 so the
    /// oscillation exponent stays positive; φ vanishes for |ξ| ≤ R and is 1
    /// for |ξ| ≥ 2R.
    pub fn miyachi(m: f64, rho: f64, cutoff_radius: f64) -> Result<SymbolSpec> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::InvalidSymbol(format!(
                "oscillating symbol needs 0 <= rho < 1, got {rho}"
            )));
        }
        if !(cutoff_radius > 0.0) {
            return Err(Error::InvalidSymbol(
                "cutoff radius must be positive".into(),
            ));
        }
        let r0 = cutoff_radius;
        let a = 1.0 - rho;
        let eval: SymbolEval = Arc::new(move |_, xi| {
            let r = norm2(xi);
            let phi = smooth_step((r - r0) / r0);
            if phi == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            Complex64::from_polar(phi * r.powf(m), r.powf(a))
        });
        Ok(SymbolSpec {
            eval,
            m,
            rho,
            delta: 0.0,
            x_independent: true,
            description: format!("miyachi(m={m}, rho={rho}, cutoff={cutoff_radius})"),
        })
    }
}

/// Parameters for the x-dependent modulation wrapper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Modulation {
    /// Perturbation amplitude; must stay below 1.
    pub epsilon: f64,
    /// Claimed x-derivative growth exponent.
    pub delta: f64,
}

/// Multiply a base symbol by 1 + ε·M(x,ξ), where M oscillates in x at
/// frequency 2^{jδ} on the dyadic shell |ξ| ~ 2^j. Within each shell the
/// phase is constant in ξ, so the ξ-derivative gains of the base symbol are
/// untouched while x-derivatives pick up exactly ⟨ξ⟩^{δ|β|}.
pub fn make_x_dependent_symbol(base: &SymbolSpec, params: Modulation) -> Result<SymbolSpec> {
    if params.epsilon < 0.0 || params.epsilon >= 1.0 {
        return Err(Error::InvalidSymbol(format!(
            "modulation amplitude must lie in [0,1), got {}",
            params.epsilon
        )));
    }
    if !(0.0..1.0).contains(&params.delta) {
        return Err(Error::InvalidSymbol(format!(
            "delta must lie in [0,1), got {}",
            params.delta
        )));
    }
    if params.epsilon == 0.0 {
        return Ok(base.clone());
    }
    let part = LPPartition::new(2.0).expect("fixed internal constant");
    let base_eval = base.evaluator();
    let (eps, delta) = (params.epsilon, params.delta);
    let eval: SymbolEval = Arc::new(move |x, xi| {
        let g = (x[0] + 0.37).sin() + (x[1] + 0.11).sin();
        let r = norm2(xi);
        // at most two shells are active at any ξ
        let mut mod_term = part.psi_minus1(xi) * g.sin();
        if r > 0.0 {
            let jc = r.log2().floor() as i32;
            for j in (jc - 1).max(1)..=(jc + 2) {
                let w = part.shell_weight(j, xi);
                if w > 0.0 {
                    let freq = (j as f64 * delta).exp2();
                    mod_term += w * (freq * g).sin();
                }
            }
        }
        base_eval(x, xi) * (1.0 + eps * mod_term)
    });
    SymbolSpec::new(
        eval,
        base.m,
        base.rho,
        delta,
        false,
        format!("{} * (1 + {}·osc(delta={}))", base.description, eps, delta),
    )
}

/// Where the certifier samples: x-points crossed with dyadically spaced
/// ξ-magnitudes along a set of directions.
#[derive(Debug, Clone)]
pub struct SampleSpec {
    pub x_points: Vec<Point>,
    pub xi_magnitudes: Vec<f64>,
    pub directions: Vec<Point>,
}

impl SampleSpec {
    /// Dyadic magnitudes base·2^o for o = 0..octaves, a small x cross, and
    /// axis/diagonal directions.
    pub fn standard(dim: usize, base: f64, octaves: usize) -> SampleSpec {
        let xi_magnitudes = (0..=octaves).map(|o| base * (o as f64).exp2()).collect();
        let x_points = if dim == 1 {
            vec![[0.0, 0.0], [0.7, 0.0], [-1.3, 0.0], [2.9, 0.0]]
        } else {
            vec![[0.0, 0.0], [0.7, -0.4], [-1.3, 0.8], [2.9, 1.7]]
        };
        let directions = if dim == 1 {
            vec![[1.0, 0.0], [-1.0, 0.0]]
        } else {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            vec![
                [1.0, 0.0],
                [0.0, 1.0],
                [s, s],
                [-s, s],
                [-1.0, 0.0],
                [s, -s],
            ]
        };
        SampleSpec {
            x_points,
            xi_magnitudes,
            directions,
        }
    }

    /// Octaves from 2 up to half the grid's Nyquist frequency.
    pub fn for_grid(grid: &GridSpec) -> SampleSpec {
        let mut octaves = 0;
        while 2.0 * ((octaves + 1) as f64).exp2() <= grid.nyquist() / 2.0 {
            octaves += 1;
        }
        SampleSpec::standard(grid.dim(), 2.0, octaves.max(4))
    }

    fn validate(&self) -> Result<()> {
        if self.xi_magnitudes.len() < 5 {
            return Err(Error::InvalidParameter(
                "sample spec needs at least 4 octaves of xi magnitudes".into(),
            ));
        }
        for w in self.xi_magnitudes.windows(2) {
            let ratio = w[1] / w[0];
            if !(1.9..=2.1).contains(&ratio) {
                return Err(Error::InvalidParameter(
                    "xi magnitudes must be dyadically spaced".into(),
                ));
            }
        }
        if self.x_points.is_empty() || self.directions.is_empty() {
            return Err(Error::InvalidParameter(
                "sample spec needs x points and directions".into(),
            ));
        }
        Ok(())
    }
}

pub type MultiIndex = [usize; 2];

/// Result of sampling the derivative bounds of one symbol.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassCertificate {
    pub max_order: usize,
    /// Estimated constants C_{α,β} = sup |∂^β_x ∂^α_ξ a| / ⟨ξ⟩^{m-ρ|α|+δ|β|}.
    pub constants: BTreeMap<String, f64>,
    /// log2-growth per octave of the normalized derivative sup.
    pub octave_slopes: BTreeMap<String, f64>,
    pub pass: bool,
    pub tolerance: f64,
    pub sample_description: String,
    pub diagnostics: Vec<String>,
}

impl ClassCertificate {
    pub fn constant(&self, alpha: MultiIndex, beta: MultiIndex) -> Option<f64> {
        self.constants.get(&key(alpha, beta)).copied()
    }
}

fn key(alpha: MultiIndex, beta: MultiIndex) -> String {
    format!("a{}{}_b{}{}", alpha[0], alpha[1], beta[0], beta[1])
}

fn stencil(order: usize) -> Vec<(i32, f64)> {
    match order {
        0 => vec![(0, 1.0)],
        1 => vec![(-1, -0.5), (1, 0.5)],
        2 => vec![(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => vec![(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => vec![(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => panic!("central differences beyond order 4 are not supported"),
    }
}

/// Mixed central difference ∂^β_x ∂^α_ξ a at (x, ξ) with per-variable steps.
fn mixed_difference(
    sym: &SymbolSpec,
    x: Point,
    xi: Point,
    alpha: MultiIndex,
    beta: MultiIndex,
    h_xi: f64,
    h_x: f64,
) -> Complex64 {
    let sa0 = stencil(alpha[0]);
    let sa1 = stencil(alpha[1]);
    let sb0 = stencil(beta[0]);
    let sb1 = stencil(beta[1]);
    let mut acc = Complex64::new(0.0, 0.0);
    for (oa0, ca0) in &sa0 {
        for (oa1, ca1) in &sa1 {
            for (ob0, cb0) in &sb0 {
                for (ob1, cb1) in &sb1 {
                    let xs = [x[0] + *ob0 as f64 * h_x, x[1] + *ob1 as f64 * h_x];
                    let xis = [xi[0] + *oa0 as f64 * h_xi, xi[1] + *oa1 as f64 * h_xi];
                    acc += sym.eval(xs, xis) * (ca0 * ca1 * cb0 * cb1);
                }
            }
        }
    }
    let denom = h_xi.powi((alpha[0] + alpha[1]) as i32) * h_x.powi((beta[0] + beta[1]) as i32);
    acc / denom
}

fn index_pairs(dim: usize, max_order: usize) -> Vec<(MultiIndex, MultiIndex)> {
    let axis_max = |d: usize| if d < dim { max_order } else { 0 };
    let mut out = Vec::new();
    for a0 in 0..=axis_max(0) {
        for a1 in 0..=axis_max(1) {
            for b0 in 0..=axis_max(0) {
                for b1 in 0..=axis_max(1) {
                    if a0 + a1 + b0 + b1 <= max_order {
                        out.push(([a0, a1], [b0, b1]));
                    }
                }
            }
        }
    }
    out
}

const XI_STEP_FRACTION: f64 = 0.04;
const X_STEP: f64 = 0.04;
/// Constants below this are reported but exempt from growth checks.
const NEGLIGIBLE: f64 = 1e-7;

/// Estimate the class constants of `sym` for all |α|+|β| ≤ max_order and
/// check (i) stability of each estimate under halving the difference steps
/// and (ii) absence of growth of the normalized sup across octaves.
///
/// The ξ-step scales like ⟨ξ⟩^ρ and the x-step like ⟨ξ⟩^{-δ}, matching the
/// class anisotropy so relative truncation error is uniform across octaves.
pub fn certify_class(
    sym: &SymbolSpec,
    max_order: usize,
    samples: &SampleSpec,
    tolerance: f64,
) -> Result<ClassCertificate> {
    if max_order > 4 {
        return Err(Error::InvalidParameter(
            "certify_class supports derivative orders up to 4".into(),
        ));
    }
    samples.validate()?;
    let dim = if samples.directions.iter().any(|d| d[1] != 0.0) {
        2
    } else {
        1
    };
    let pairs = index_pairs(dim, max_order);
    let n_oct = samples.xi_magnitudes.len();

    // (pair, octave) → sup over x-points and directions, for full and half steps
    let jobs: Vec<(usize, usize)> = (0..pairs.len())
        .flat_map(|p| (0..n_oct).map(move |o| (p, o)))
        .collect();
    let sups: Vec<(f64, f64)> = map_indices(jobs.len(), |ji| {
        let (pi, oi) = jobs[ji];
        let (alpha, beta) = pairs[pi];
        let mag = samples.xi_magnitudes[oi];
        let mut sup_full = 0.0f64;
        let mut sup_half = 0.0f64;
        for dir in &samples.directions {
            let xi = [mag * dir[0], mag * dir[1]];
            let br = bracket(xi);
            let weight = br.powf(
                sym.m - sym.rho * (alpha[0] + alpha[1]) as f64
                    + sym.delta * (beta[0] + beta[1]) as f64,
            );
            let h_xi = XI_STEP_FRACTION * br.powf(sym.rho);
            let h_x = X_STEP * br.powf(-sym.delta);
            for x in &samples.x_points {
                let d_full = mixed_difference(sym, *x, xi, alpha, beta, h_xi, h_x).norm();
                let d_half =
                    mixed_difference(sym, *x, xi, alpha, beta, h_xi / 2.0, h_x / 2.0).norm();
                sup_full = sup_full.max(d_full / weight);
                sup_half = sup_half.max(d_half / weight);
            }
        }
        (sup_full, sup_half)
    });

    let mut constants = BTreeMap::new();
    let mut octave_slopes = BTreeMap::new();
    let mut diagnostics = Vec::new();
    let mut pass = true;

    for (pi, (alpha, beta)) in pairs.iter().enumerate() {
        // jobs were laid out as pi * n_oct + oi
        let per_octave: Vec<(f64, f64)> = (0..n_oct).map(|oi| sups[pi * n_oct + oi]).collect();
        let c_full = per_octave.iter().map(|v| v.0).fold(0.0, f64::max);
        let c_half = per_octave.iter().map(|v| v.1).fold(0.0, f64::max);
        let k = key(*alpha, *beta);
        constants.insert(k.clone(), c_half);

        if !c_half.is_finite() || !c_full.is_finite() {
            pass = false;
            diagnostics.push(format!("{k}: non-finite derivative estimate"));
            continue;
        }
        if c_half > NEGLIGIBLE {
            let rel = (c_full - c_half).abs() / c_half.max(1.0);
            if rel > tolerance {
                pass = false;
                diagnostics.push(format!(
                    "{k}: unstable under step refinement (rel change {rel:.3e} > {tolerance:.1e})"
                ));
            }
            let xs: Vec<f64> = (0..n_oct).map(|o| o as f64).collect();
            let ys: Vec<f64> = per_octave
                .iter()
                .map(|v| (v.1.max(1e-300)).log2())
                .collect();
            let (slope, _) = linear_fit(&xs, &ys);
            octave_slopes.insert(k.clone(), slope);
            if slope > tolerances::CERTIFY_OCTAVE_SLOPE_TOL {
                pass = false;
                diagnostics.push(format!(
                    "{k}: normalized sup grows across octaves (log2 slope {slope:.3})"
                ));
            }
        } else {
            octave_slopes.insert(k.clone(), 0.0);
        }
    }

    Ok(ClassCertificate {
        max_order,
        constants,
        octave_slopes,
        pass,
        tolerance,
        sample_description: format!(
            "{} x-points × {} directions × {} dyadic magnitudes [{:.3}, {:.3}]",
            samples.x_points.len(),
            samples.directions.len(),
            n_oct,
            samples.xi_magnitudes[0],
            samples.xi_magnitudes[n_oct - 1]
        ),
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec1d() -> SampleSpec {
        SampleSpec::standard(1, 2.0, 6)
    }

    #[test]
    fn bessel_values() {
        let a = SymbolSpec::bessel(0.0);
        assert!((a.eval([0.0, 0.0], [0.0, 0.0]).re - 1.0).abs() < 1e-15);
        let b = SymbolSpec::bessel(-2.0);
        // ⟨ξ⟩^{-2} at |ξ|=1 is 1/2
        assert!((b.eval([0.0, 0.0], [1.0, 0.0]).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constant_symbol_certificate() {
        let a = SymbolSpec::identity();
        let cert = certify_class(&a, 3, &spec1d(), tolerances::CERTIFY_STEP_TOL).unwrap();
        assert!(cert.pass, "{:?}", cert.diagnostics);
        assert!((cert.constant([0, 0], [0, 0]).unwrap() - 1.0).abs() < 1e-12);
        for (alpha, beta) in index_pairs(1, 3) {
            if alpha[0] + beta[0] > 0 {
                assert!(cert.constant(alpha, beta).unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn bessel_certifies_at_its_order() {
        let a = SymbolSpec::bessel(-1.0);
        let cert = certify_class(&a, 3, &spec1d(), tolerances::CERTIFY_STEP_TOL).unwrap();
        assert!(cert.pass, "{:?}", cert.diagnostics);
    }

    #[test]
    fn miyachi_certifies_at_critical_order() {
        // n = 1, ρ = 1/2: m = -n(1-ρ)/2 = -1/4
        let a = SymbolSpec::miyachi(-0.25, 0.5, 1.0).unwrap();
        let spec = SampleSpec::standard(1, 4.0, 6); // stay above the cutoff
        let cert = certify_class(&a, 2, &spec, tolerances::CERTIFY_STEP_TOL).unwrap();
        assert!(cert.pass, "{:?}", cert.diagnostics);
    }

    #[test]
    fn miyachi_rejects_inflated_claims() {
        // order claimed half an order too optimistic (symbol larger than claim)
        let a = SymbolSpec::miyachi(-0.25, 0.5, 1.0)
            .unwrap()
            .with_claimed_order(-0.75);
        let spec = SampleSpec::standard(1, 4.0, 6);
        let cert = certify_class(&a, 2, &spec, tolerances::CERTIFY_STEP_TOL).unwrap();
        assert!(!cert.pass);

        // claimed ξ-derivative gain ρ = 1 against a true gain of 1/2
        let b = SymbolSpec::miyachi(-0.25, 0.5, 1.0)
            .unwrap()
            .with_claimed_rho(1.0);
        let cert = certify_class(&b, 2, &spec, tolerances::CERTIFY_STEP_TOL).unwrap();
        assert!(!cert.pass);
    }

    #[test]
    fn certifier_monotone_in_claimed_order() {
        let a = SymbolSpec::miyachi(-0.25, 0.5, 1.0).unwrap();
        let spec = SampleSpec::standard(1, 4.0, 6);
        for dm in [0.25, 0.5, 1.0] {
            let relaxed = a.clone().with_claimed_order(a.m + dm);
            let cert = certify_class(&relaxed, 2, &spec, tolerances::CERTIFY_STEP_TOL).unwrap();
            assert!(
                cert.pass,
                "claim m={} should pass: {:?}",
                a.m + dm,
                cert.diagnostics
            );
        }
    }

    #[test]
    fn miyachi_rejects_rho_one() {
        assert!(SymbolSpec::miyachi(-0.25, 1.0, 1.0).is_err());
    }

    #[test]
    fn miyachi_cutoff_and_modulus() {
        let a = SymbolSpec::miyachi(0.0, 0.5, 1.0).unwrap();
        assert_eq!(a.eval([0.0, 0.0], [0.5, 0.0]).norm(), 0.0);
        assert!((a.eval([0.0, 0.0], [50.0, 0.0]).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x_dependent_wrapper() {
        let base = SymbolSpec::bessel(-1.0);
        // ε = 0 returns the base unchanged
        let same = make_x_dependent_symbol(
            &base,
            Modulation {
                epsilon: 0.0,
                delta: 0.5,
            },
        )
        .unwrap();
        let (x, xi) = ([0.9, 0.0], [7.0, 0.0]);
        assert_eq!(same.eval(x, xi), base.eval(x, xi));

        assert!(make_x_dependent_symbol(
            &base,
            Modulation {
                epsilon: 1.0,
                delta: 0.5
            }
        )
        .is_err());

        let pert = make_x_dependent_symbol(
            &base,
            Modulation {
                epsilon: 0.4,
                delta: 0.5,
            },
        )
        .unwrap();
        assert!(!pert.x_independent);
        // still certifies at the base order with the claimed delta
        let cert = certify_class(&pert, 2, &spec1d(), tolerances::CERTIFY_STEP_TOL).unwrap();
        assert!(cert.pass, "{:?}", cert.diagnostics);
    }

    #[test]
    fn delta_zero_modulation_has_band_independent_x_constants() {
        let base = SymbolSpec::bessel(0.0);
        let pert = make_x_dependent_symbol(
            &base,
            Modulation {
                epsilon: 0.5,
                delta: 0.0,
            },
        )
        .unwrap();
        let cert = certify_class(&pert, 2, &spec1d(), tolerances::CERTIFY_STEP_TOL).unwrap();
        assert!(cert.pass, "{:?}", cert.diagnostics);
        // ∂_x constants flat across octaves
        let slope = cert
            .octave_slopes
            .get(&key([0, 0], [1, 0]))
            .copied()
            .unwrap();
        assert!(slope.abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn x_independent_certificate_ignores_x_set() {
        let a = SymbolSpec::bessel(-0.5);
        let mut s1 = spec1d();
        let c1 = certify_class(&a, 2, &s1, tolerances::CERTIFY_STEP_TOL).unwrap();
        s1.x_points = vec![[5.0, 0.0], [-2.2, 0.0]];
        let c2 = certify_class(&a, 2, &s1, tolerances::CERTIFY_STEP_TOL).unwrap();
        for (k, v) in &c1.constants {
            let w = c2.constants.get(k).unwrap();
            assert!((v - w).abs() <= 1e-12 * v.abs().max(1.0), "{k}: {v} vs {w}");
        }
    }

    #[test]
    fn rejects_bad_sample_specs() {
        let a = SymbolSpec::bessel(0.0);
        let mut s = spec1d();
        s.xi_magnitudes.truncate(3);
        assert!(certify_class(&a, 2, &s, 0.08).is_err());
        let mut s2 = spec1d();
        s2.xi_magnitudes = vec![1.0, 3.0, 9.0, 27.0, 81.0];
        assert!(certify_class(&a, 2, &s2, 0.08).is_err());
        assert!(certify_class(&a, 5, &spec1d(), 0.08).is_err());
    }
}

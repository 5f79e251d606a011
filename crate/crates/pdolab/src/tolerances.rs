//! Central tolerance and threshold constants.
//!
//! Every numeric gate used by the library and the acceptance suite is defined
//! here once. Experiment reports embed these so no run has unreported knobs.

/// DFT round trip: ‖ifft(fft(u)) − u‖∞ / ‖u‖∞.
pub const DFT_ROUND_TRIP: f64 = 1e-12;

/// Parseval identity, relative.
pub const PARSEVAL_REL: f64 = 1e-12;

/// Identity symbol: ‖T₁u − u‖∞ / ‖u‖∞.
pub const IDENTITY_REL: f64 = 1e-12;

/// Partition-of-unity pointwise exactness on the frequency lattice.
pub const PARTITION_EXACT: f64 = 1e-12;

/// Shell reconstruction: ‖Σⱼ Pⱼu − u‖∞ / ‖u‖∞.
pub const RECONSTRUCTION_REL: f64 = 1e-10;

/// Dyadic decomposition of the operator: ‖Σⱼ Tⱼu − Tu‖∞ / ‖u‖∞.
pub const DECOMPOSITION_REL: f64 = 1e-10;

/// Fast multiplier path vs direct quadrature, relative sup norm.
pub const PATH_EQUIVALENCE_REL: f64 = 1e-10;

/// Rescaling identity τⱼ T̃ⱼ τ₋ⱼ = Tⱼ on band-limited inputs.
pub const SCALING_IDENTITY_REL: f64 = 1e-8;

/// Dilation round trip at non-representable scales (band-limited inputs).
pub const DILATION_ROUND_TRIP: f64 = 1e-8;

/// Kernel Parseval cross-check and convolution consistency.
pub const KERNEL_PARSEVAL_REL: f64 = 1e-10;

/// Boundary decay required of gaussian/bump test functions, relative to peak.
pub const BOUNDARY_DECAY: f64 = 1e-10;

/// Fast-path maximal/sharp/A_p vs brute-force double loops, relative.
pub const ORACLE_REL: f64 = 1e-13;

/// Pointwise-ratio denominator floor, relative to ‖u‖∞.
pub const EPS_FLOOR_REL: f64 = 1e-8;

/// Refinement-stability verdict: max ratio may drift by less than this
/// fraction across the grid ladder to count as BOUNDED.
pub const DRIFT_THRESHOLD: f64 = 0.25;

/// Growth verdict: last/first ratio at or above this factor across the
/// ladder counts as UNBOUNDED-TREND.
pub const GROWTH_THRESHOLD: f64 = 1.5;

/// Kernel moment slope: |fitted slope − (2m+n)| for the 0-th moment.
pub const MOMENT_SLOPE_TOL: f64 = 0.3;

/// Kernel moment slope decrement per unit moment order: |Δslope − 2ρ|.
pub const MOMENT_SLOPE_DROP_TOL: f64 = 0.4;

/// Certifier: relative change allowed between full- and half-step constant
/// estimates before a derivative estimate is declared unstable.
pub const CERTIFY_STEP_TOL: f64 = 0.08;

/// Certifier: allowed log2-growth per octave of the normalized constants.
pub const CERTIFY_OCTAVE_SLOPE_TOL: f64 = 0.25;

/// Weight pre-check: A_p estimate growth factor across the refinement ladder
/// above which the claimed membership is rejected.
pub const AP_PRECHECK_GROWTH: f64 = 1.25;

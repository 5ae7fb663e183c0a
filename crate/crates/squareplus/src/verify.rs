//! Executable checks for the crate's mathematical claims.
//!
//! Every closed-form identity, bound, and stability statement made in
//! [`crate::activations`] has a check here that evaluates it over a dense
//! grid and reports the worst deviation against an explicit tolerance. The
//! checks are honest: they compare against independent evaluations (finite
//! differences, a separately coded density formula, ulp distances), never
//! against the implementation itself.
//!
//! [`CHECKS`] is the registry the CLI runs; [`CORE_CLAIMS`] names each
//! documented claim, and a test pins that every claim is covered by some
//! check, so a new claim cannot land without a check.

use std::fmt;

use crate::activations::{
    relu, rescale_b, sigmoid, softplus_naive, softplus_stable, squareplus, squareplus_d1,
    squareplus_d2, B_SOFTPLUS_MATCH, B_UNIT,
};
use crate::real::{Precision, Real};

/// Grid point placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    /// Evenly spaced from `start` to `stop` inclusive.
    Linear,
    /// Log-spaced magnitudes mirrored around zero: `count/2` points from
    /// `-stop` up to `-start`, then `count/2` from `start` to `stop`. Zero
    /// itself is excluded. Covers many decades without drowning the tails.
    LogSymmetric,
}

/// A validated 1-D evaluation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    start: f64,
    stop: f64,
    count: usize,
    spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
}

impl GridSpec {
    /// `count` evenly spaced points from `start` to `stop` inclusive.
    pub fn linear(start: f64, stop: f64, count: usize) -> Result<Self, VerifyError> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(VerifyError::InvalidGrid("endpoints must be finite".into()));
        }
        if start >= stop {
            return Err(VerifyError::InvalidGrid(format!(
                "start {start} must be below stop {stop}"
            )));
        }
        if count < 2 {
            return Err(VerifyError::InvalidGrid("count must be >= 2".into()));
        }
        Ok(GridSpec {
            start,
            stop,
            count,
            spacing: Spacing::Linear,
        })
    }

    /// Log-spaced magnitudes in `[start, stop]` mirrored to both signs;
    /// `count` must be even and `start` strictly positive.
    pub fn log_symmetric(start: f64, stop: f64, count: usize) -> Result<Self, VerifyError> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(VerifyError::InvalidGrid("endpoints must be finite".into()));
        }
        if start <= 0.0 {
            return Err(VerifyError::InvalidGrid(format!(
                "log-symmetric start must be > 0, got {start}"
            )));
        }
        if start >= stop {
            return Err(VerifyError::InvalidGrid(format!(
                "start {start} must be below stop {stop}"
            )));
        }
        if count < 4 || count % 2 != 0 {
            return Err(VerifyError::InvalidGrid(format!(
                "log-symmetric count must be even and >= 4, got {count}"
            )));
        }
        Ok(GridSpec {
            start,
            stop,
            count,
            spacing: Spacing::LogSymmetric,
        })
    }

    /// Default grid for the claim checks: 2001 points on `[-20, 20]`, which
    /// puts a point exactly at the origin.
    pub fn default_verification() -> Self {
        GridSpec::linear(-20.0, 20.0, 2001).expect("static grid is valid")
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Materializes the grid, ascending. Endpoints land exactly on
    /// `start`/`stop` (and their mirrors for log grids).
    pub fn points(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => {
                let span = self.stop - self.start;
                let last = self.count - 1;
                (0..self.count)
                    .map(|i| {
                        if i == last {
                            // The lerp form can miss the endpoint by an ulp.
                            self.stop
                        } else {
                            self.start + span * (i as f64 / last as f64)
                        }
                    })
                    .collect()
            }
            Spacing::LogSymmetric => {
                let half = self.count / 2;
                let (la, lb) = (self.start.ln(), self.stop.ln());
                let last = half - 1;
                let mags: Vec<f64> = (0..half)
                    .map(|i| match i {
                        0 => self.start,
                        i if i == last => self.stop,
                        i => (la + (lb - la) * (i as f64 / last as f64)).exp(),
                    })
                    .collect();
                let mut pts: Vec<f64> = mags.iter().rev().map(|&m| -m).collect();
                pts.extend(&mags);
                pts
            }
        }
    }
}

/// Outcome of one check: the worst deviation found, where it happened, and
/// the tolerance it was held to. `passed` is exactly
/// `worst_error <= tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub check_name: String,
    pub passed: bool,
    /// Grid point at which the worst deviation occurred.
    pub worst_x: f64,
    /// Squareplus parameter in play at the worst point, if the check sweeps b.
    pub worst_b: Option<f64>,
    pub worst_error: f64,
    pub tolerance: f64,
}

impl VerifyReport {
    fn new(
        name: &str,
        worst_x: f64,
        worst_b: Option<f64>,
        worst_error: f64,
        tolerance: f64,
    ) -> Self {
        VerifyReport {
            check_name: name.to_string(),
            passed: worst_error <= tolerance,
            worst_x,
            worst_b,
            worst_error,
            tolerance,
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<24} worst {:.3e} at x={:.6}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check_name,
            self.worst_error,
            self.worst_x,
        )?;
        if let Some(b) = self.worst_b {
            write!(f, " b={b}")?;
        }
        write!(f, " (tol {:.1e})", self.tolerance)
    }
}

/// Tracks the worst (largest) error seen and where.
struct Worst {
    error: f64,
    x: f64,
    b: Option<f64>,
}

impl Worst {
    fn new() -> Self {
        Worst {
            error: f64::NEG_INFINITY,
            x: f64::NAN,
            b: None,
        }
    }

    fn update(&mut self, error: f64, x: f64, b: Option<f64>) {
        // NaN error means a computation escaped its domain; treat it as
        // infinitely wrong rather than letting max() ignore it.
        let error = if error.is_nan() { f64::INFINITY } else { error };
        if error > self.error {
            self.error = error;
            self.x = x;
            self.b = b;
        }
    }
}

/// softplus(x) <= squareplus(x, b) for every x when `b >= 4 ln^2 2`.
///
/// The worst error is the largest value of `softplus(x) - squareplus(x, b)`
/// over the grid (signed: a healthy margin shows up negative). Run with a
/// `b` below the threshold — say 1.0 — this fails with the violation peaking
/// near the origin, which is the negative control for the check itself.
pub fn check_bound_vs_softplus(b: f64, grid: &GridSpec) -> VerifyReport {
    let mut worst = Worst::new();
    for x in grid.points() {
        let gap = softplus_stable(x) - squareplus(x, b);
        worst.update(gap, x, Some(b));
    }
    VerifyReport::new("bound", worst.x, worst.b, worst.error, 1e-12)
}

/// The origin identities, each exact in IEEE double up to one rounding:
/// value `ln 2` at the matched b, value 1 and curvature 1/4 at `b = 4`, and
/// slope 1/2 for every listed b.
pub fn check_origin_identities(bs: &[f64]) -> Vec<VerifyReport> {
    let tol = 1e-12;
    let mut reports = vec![
        VerifyReport::new(
            "origin_value_softplus_match",
            0.0,
            Some(B_SOFTPLUS_MATCH),
            (squareplus(0.0, B_SOFTPLUS_MATCH) - std::f64::consts::LN_2).abs(),
            tol,
        ),
        VerifyReport::new(
            "origin_value_unit",
            0.0,
            Some(B_UNIT),
            (squareplus(0.0, B_UNIT) - 1.0).abs(),
            tol,
        ),
        VerifyReport::new(
            "origin_curvature_unit",
            0.0,
            Some(B_UNIT),
            (squareplus_d2(0.0, B_UNIT) - 0.25).abs(),
            tol,
        ),
    ];
    let mut worst = Worst::new();
    for &b in bs {
        worst.update((squareplus_d1(0.0, b) - 0.5).abs(), 0.0, Some(b));
    }
    reports.push(VerifyReport::new(
        "origin_slope_half",
        0.0,
        worst.b,
        worst.error,
        tol,
    ));
    reports
}

/// `squareplus(a*x, b)/a == squareplus(x, b/a^2)` for every scale `a != 0`.
///
/// Deviations are normalized by `max(1, |value|)`, so the check is absolute
/// near the origin and relative out on the linear tail where values grow.
pub fn check_scale_identity(a_values: &[f64], b_values: &[f64], grid: &GridSpec) -> VerifyReport {
    let mut worst = Worst::new();
    let points = grid.points();
    for &a in a_values {
        for &b in b_values {
            let b_rescaled = rescale_b(a, b);
            for &x in &points {
                let lhs = squareplus(a * x, b) / a;
                let rhs = squareplus(x, b_rescaled);
                let err = (lhs - rhs).abs() / lhs.abs().max(1.0);
                worst.update(err, x, Some(b));
            }
        }
    }
    VerifyReport::new("scale", worst.x, worst.b, worst.error, 1e-9)
}

/// Closed-form derivatives against central finite differences of one order
/// lower: d1 against differences of the value, d2 against differences of d1.
///
/// The step is `max(1, |x|) * cbrt(eps)`, the classic balance between
/// truncation and cancellation for a central difference. Errors are relative
/// with an absolute floor (`max(|exact|, 1e-12)` in the denominator).
/// Because d1 and d2 carry different tolerances (1e-6 and 1e-5: one more
/// derivative costs one more digit), the reported worst error is normalized
/// to units of tolerance — the report passes iff it is <= 1.
pub fn check_gradients(b: f64, grid: &GridSpec) -> VerifyReport {
    const TOL_D1: f64 = 1e-6;
    const TOL_D2: f64 = 1e-5;
    let h0 = f64::EPSILON.cbrt();
    let mut worst = Worst::new();
    for x in grid.points() {
        let h = x.abs().max(1.0) * h0;
        let (xp, xm) = (x + h, x - h);
        // The realized step can differ from h by rounding; divide by what
        // actually separates the sample points.
        let width = xp - xm;

        let fd1 = (squareplus(xp, b) - squareplus(xm, b)) / width;
        let d1 = squareplus_d1(x, b);
        let err1 = (fd1 - d1).abs() / d1.abs().max(1e-12);
        worst.update(err1 / TOL_D1, x, Some(b));

        let fd2 = (squareplus_d1(xp, b) - squareplus_d1(xm, b)) / width;
        let d2 = squareplus_d2(x, b);
        let err2 = (fd2 - d2).abs() / d2.abs().max(1e-12);
        worst.update(err2 / TOL_D2, x, Some(b));
    }
    VerifyReport::new("gradients", worst.x, worst.b, worst.error, 1.0)
}

/// At `b = 2` the second derivative is the Student's t density with two
/// degrees of freedom. The reference is coded from the density formula
/// `(1 + x^2/2)^(-3/2) / (2 sqrt 2)`, a different arithmetic route than the
/// derivative's `b/(2 r sqrt r)`.
pub fn check_student_t_pdf(grid: &GridSpec) -> VerifyReport {
    let norm = 2.0 * std::f64::consts::SQRT_2;
    let mut worst = Worst::new();
    for x in grid.points() {
        let reference = (1.0 + 0.5 * x * x).powf(-1.5) / norm;
        let got = squareplus_d2(x, 2.0);
        worst.update((got - reference).abs(), x, Some(2.0));
    }
    VerifyReport::new("student_t", worst.x, worst.b, worst.error, 1e-12)
}

/// `squareplus(x, 0) == relu(x)` to the bit (tolerance: one ulp, observed
/// zero), checked in both precisions over the grid.
pub fn check_relu_reduction(grid: &GridSpec) -> VerifyReport {
    let mut worst = Worst::new();
    for x in grid.points() {
        let ulps = squareplus(x, 0.0).ulps_between(relu(x)) as f64;
        worst.update(ulps, x, Some(0.0));
        let xs = x as f32;
        let ulps32 = squareplus(xs, 0.0f32).ulps_between(relu(xs)) as f64;
        worst.update(ulps32, x, Some(0.0));
    }
    VerifyReport::new("relu_reduction", worst.x, worst.b, worst.error, 1.0)
}

/// Scans `[0, 40]` in steps of 0.01 for the first x at which the naive
/// softplus evaluates to exactly `x`: the point where `exp(x) + 1` has
/// absorbed the 1 and the log runs the exp in reverse. Returns the first
/// such grid point, or `None` if the identity never collapses in range.
///
/// In single precision this lands near 15 — softplus(15) - 15 is about
/// 3e-7, far above f32 resolution at 15, so real information is lost. In
/// double precision the collapse still happens in range, in the low 30s.
pub fn find_naive_breakdown(precision: Precision) -> Option<f64> {
    find_naive_breakdown_in(precision, 0.0, 40.0)
}

/// [`find_naive_breakdown`] over a caller-chosen interval (same 0.01 step).
pub fn find_naive_breakdown_in(precision: Precision, lo: f64, hi: f64) -> Option<f64> {
    fn collapses<T: Real>(x: f64) -> bool {
        let xt = T::from_f64(x);
        softplus_naive(xt) == xt
    }
    let steps = ((hi - lo) / 0.01).round() as usize;
    for i in 0..=steps {
        let x = lo + 0.01 * i as f64;
        let hit = match precision {
            Precision::Single => collapses::<f32>(x),
            Precision::Double => collapses::<f64>(x),
        };
        if hit {
            return Some(x);
        }
    }
    None
}

/// Strict tail ordering at a probe distance from the origin,
/// `x_probe > 0`: squareplus sits above softplus, softplus sits above relu,
/// on both tails, and the derivative orderings match — d1 above sigmoid on
/// the left tail, below it on the right. Squareplus pays for its cheap
/// evaluation with polynomially slow tails; this check pins that the gap is
/// real and has the right sign everywhere.
///
/// The worst error is the negated smallest margin, against tolerance 0: any
/// ordering violation turns it positive and fails the check.
pub fn check_slow_tail(b: f64, x_probe: f64) -> VerifyReport {
    let x = x_probe.abs();
    let margins = [
        // Left tail: everything decays to 0, squareplus slowest.
        squareplus(-x, b) - softplus_stable(-x),
        softplus_stable(-x) - relu(-x),
        squareplus_d1(-x, b) - sigmoid(-x),
        // Right tail: everything approaches the identity, squareplus slowest.
        (squareplus(x, b) - relu(x)) - (softplus_stable(x) - relu(x)),
        softplus_stable(x) - relu(x),
        sigmoid(x) - squareplus_d1(x, b),
    ];
    let mut worst = Worst::new();
    for m in margins {
        worst.update(-m, x, Some(b));
    }
    VerifyReport::new("slow_tail", worst.x, worst.b, worst.error, 0.0)
}

/// Breakdown scan wrapped as a pass/fail report: the single-precision
/// collapse point must land in `[13, 18]`, the window around the expected
/// 15. (The double-precision scan is informational: where it lands depends
/// on the libm's correct rounding, so it carries no pass/fail contract.)
pub fn check_breakdown_single() -> VerifyReport {
    match find_naive_breakdown(Precision::Single) {
        Some(bp) => VerifyReport::new("breakdown", bp, None, (bp - 15.5).abs(), 2.5),
        None => VerifyReport::new("breakdown", f64::NAN, None, f64::INFINITY, 2.5),
    }
}

/// One registry entry: a runnable check and the documented claims it covers.
pub struct CheckEntry {
    pub name: &'static str,
    pub claims: &'static [&'static str],
}

/// Every check the CLI can run, with the claims each one covers.
pub const CHECKS: &[CheckEntry] = &[
    CheckEntry {
        name: "origin",
        claims: &[
            "origin_matches_softplus",
            "origin_value_one",
            "origin_slope_half",
            "origin_curvature_quarter",
        ],
    },
    CheckEntry {
        name: "relu_reduction",
        claims: &["relu_reduction_exact"],
    },
    CheckEntry {
        name: "bound",
        claims: &["softplus_upper_bound"],
    },
    CheckEntry {
        name: "scale",
        claims: &["scale_reparameterization"],
    },
    CheckEntry {
        name: "gradients",
        claims: &["closed_form_derivatives"],
    },
    CheckEntry {
        name: "student_t",
        claims: &["student_t_curvature"],
    },
    CheckEntry {
        name: "slow_tail",
        claims: &["slow_tail_ordering"],
    },
    CheckEntry {
        name: "breakdown",
        claims: &["naive_softplus_single_collapse"],
    },
];

/// The closed-form and stability claims this crate documents. The registry
/// test requires each to be covered by a check in [`CHECKS`].
pub const CORE_CLAIMS: &[&str] = &[
    "origin_matches_softplus",
    "origin_value_one",
    "origin_slope_half",
    "origin_curvature_quarter",
    "relu_reduction_exact",
    "softplus_upper_bound",
    "scale_reparameterization",
    "closed_form_derivatives",
    "student_t_curvature",
    "slow_tail_ordering",
    "naive_softplus_single_collapse",
];

/// Runs one registry check by name with its default parameters.
pub fn run_check(name: &str) -> Result<Vec<VerifyReport>, VerifyError> {
    let grid = GridSpec::default_verification();
    match name {
        "origin" => Ok(check_origin_identities(&[
            0.5,
            B_SOFTPLUS_MATCH,
            B_UNIT,
            100.0,
        ])),
        "relu_reduction" => Ok(vec![check_relu_reduction(&grid)]),
        "bound" => Ok(vec![
            check_bound_vs_softplus(B_SOFTPLUS_MATCH, &grid),
            check_bound_vs_softplus(B_UNIT, &grid),
        ]),
        "scale" => Ok(vec![check_scale_identity(
            &[0.5, 2.0, 3.0, 10.0],
            &[B_SOFTPLUS_MATCH, B_UNIT],
            &grid,
        )]),
        "gradients" => {
            let grid = GridSpec::linear(-10.0, 10.0, 401).expect("static grid is valid");
            Ok([0.5, B_SOFTPLUS_MATCH, B_UNIT]
                .iter()
                .map(|&b| check_gradients(b, &grid))
                .collect())
        }
        "student_t" => {
            let grid = GridSpec::linear(-8.0, 8.0, 1601).expect("static grid is valid");
            Ok(vec![check_student_t_pdf(&grid)])
        }
        "slow_tail" => Ok(vec![
            check_slow_tail(B_UNIT, 10.0),
            check_slow_tail(B_SOFTPLUS_MATCH, 10.0),
        ]),
        "breakdown" => Ok(vec![check_breakdown_single()]),
        other => Err(VerifyError::UnknownCheck(other.to_string())),
    }
}

/// Names of all registry checks, in run order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_hits_origin_and_endpoints() {
        let pts = GridSpec::default_verification().points();
        assert_eq!(pts.len(), 2001);
        assert_eq!(pts[0], -20.0);
        assert_eq!(pts[2000], 20.0);
        assert_eq!(pts[1000], 0.0, "midpoint must be exactly zero");
        assert!(pts.windows(2).all(|w| w[0] < w[1]), "strictly ascending");
    }

    #[test]
    fn linear_grid_validation() {
        assert!(GridSpec::linear(0.0, 1.0, 2).is_ok());
        assert!(matches!(
            GridSpec::linear(1.0, 0.0, 10),
            Err(VerifyError::InvalidGrid(_))
        ));
        assert!(GridSpec::linear(0.0, 0.0, 10).is_err());
        assert!(GridSpec::linear(0.0, 1.0, 1).is_err());
        assert!(GridSpec::linear(f64::NAN, 1.0, 10).is_err());
        assert!(GridSpec::linear(f64::NEG_INFINITY, 1.0, 10).is_err());
    }

    #[test]
    fn log_symmetric_grid_shape() {
        let grid = GridSpec::log_symmetric(1e-3, 1e3, 40).unwrap();
        let pts = grid.points();
        assert_eq!(pts.len(), 40);
        assert!(pts.windows(2).all(|w| w[0] < w[1]), "strictly ascending");
        assert!(!pts.contains(&0.0), "log grid must exclude zero");
        // Mirrored pairs, exact.
        for (lo, hi) in pts.iter().zip(pts.iter().rev()) {
            assert_eq!(*lo, -*hi);
        }
        assert_eq!(pts[0], -1e3);
        assert_eq!(pts[39], 1e3);
        assert_eq!(pts[19], -1e-3);
        assert_eq!(pts[20], 1e-3);
    }

    #[test]
    fn log_symmetric_validation() {
        assert!(GridSpec::log_symmetric(0.0, 1.0, 10).is_err(), "zero start");
        assert!(GridSpec::log_symmetric(-1.0, 1.0, 10).is_err());
        assert!(GridSpec::log_symmetric(0.1, 1.0, 7).is_err(), "odd count");
        assert!(GridSpec::log_symmetric(0.1, 1.0, 2).is_err(), "degenerate");
        assert!(GridSpec::log_symmetric(1.0, 0.1, 10).is_err());
    }

    #[test]
    fn report_passed_tracks_tolerance() {
        let r = VerifyReport::new("x", 0.0, None, 1e-13, 1e-12);
        assert!(r.passed);
        let r = VerifyReport::new("x", 0.0, None, 2e-12, 1e-12);
        assert!(!r.passed);
        // Boundary counts as passing: the contract is <=.
        let r = VerifyReport::new("x", 0.0, None, 1e-12, 1e-12);
        assert!(r.passed);
        let r = VerifyReport::new("x", 0.0, None, f64::INFINITY, 1e-12);
        assert!(!r.passed);
    }

    #[test]
    fn report_display_is_one_line() {
        let r = VerifyReport::new("bound", 0.25, Some(4.0), 1e-16, 1e-12);
        let line = format!("{r}");
        assert!(line.starts_with("PASS bound"));
        assert!(line.contains("b=4"));
        assert!(!line.contains('\n'));
    }

    #[test]
    fn bound_holds_at_and_above_matched_b() {
        let grid = GridSpec::default_verification();
        for b in [B_SOFTPLUS_MATCH, B_UNIT, 10.0] {
            let r = check_bound_vs_softplus(b, &grid);
            assert!(r.passed, "b = {b}: {r}");
        }
    }

    #[test]
    fn bound_fails_below_matched_b_near_origin() {
        // Negative control: at b = 1 softplus pokes above squareplus around
        // the origin by about 0.19 at x = 0, so the check must fail there.
        let r = check_bound_vs_softplus(1.0, &GridSpec::default_verification());
        assert!(!r.passed);
        assert!(r.worst_error > 0.1, "violation should be macroscopic: {r}");
        assert!(r.worst_x.abs() < 0.5, "violation peaks near origin: {r}");
    }

    #[test]
    fn origin_identities_all_pass_and_are_exact() {
        let reports = check_origin_identities(&[0.5, B_SOFTPLUS_MATCH, B_UNIT, 100.0, 1e12]);
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert!(r.passed, "{r}");
            assert_eq!(r.worst_error, 0.0, "identity should be exact: {r}");
        }
        let names: Vec<&str> = reports.iter().map(|r| r.check_name.as_str()).collect();
        assert!(names.contains(&"origin_value_softplus_match"));
        assert!(names.contains(&"origin_slope_half"));
    }

    #[test]
    fn scale_identity_passes_spec_parameters() {
        let r = check_scale_identity(
            &[0.5, 2.0, 3.0, 10.0],
            &[B_SOFTPLUS_MATCH, B_UNIT],
            &GridSpec::default_verification(),
        );
        assert!(r.passed, "{r}");
        assert!(r.worst_error < 1e-12, "observed errors are ulp-level: {r}");
    }

    #[test]
    fn gradients_match_finite_differences() {
        let grid = GridSpec::linear(-10.0, 10.0, 401).unwrap();
        for b in [0.5, B_SOFTPLUS_MATCH, B_UNIT] {
            let r = check_gradients(b, &grid);
            assert!(r.passed, "{r}");
            // Observed margins are around 1e-4 of tolerance; require some
            // real headroom so a regression is loud.
            assert!(r.worst_error < 0.5, "{r}");
        }
    }

    #[test]
    fn student_t_density_matches() {
        let grid = GridSpec::linear(-8.0, 8.0, 1601).unwrap();
        let r = check_student_t_pdf(&grid);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn relu_reduction_is_bit_exact_on_default_grid() {
        let r = check_relu_reduction(&GridSpec::default_verification());
        assert!(r.passed, "{r}");
        assert_eq!(r.worst_error, 0.0, "reduction is exact, not just close");
    }

    #[test]
    fn breakdown_single_lands_near_fifteen() {
        let bp = find_naive_breakdown(Precision::Single).expect("must collapse in range");
        assert!((14.0..=16.0).contains(&bp), "breakdown at {bp}");
        // Collapse starts where the true softplus(x) - x slips under the f32
        // rounding radius at x (half an ulp), so at the first collapsed
        // point the lost gap sits just below one ulp — still a real,
        // nonzero quantity that double precision resolves with ease.
        let true_gap = softplus_stable(bp) - bp;
        let ulp32 = (bp as f32).ulp() as f64;
        assert!(
            true_gap > 0.1 * ulp32 && true_gap < ulp32,
            "gap {true_gap} vs ulp {ulp32}"
        );
        let r = check_breakdown_single();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn breakdown_double_collapses_in_the_low_thirties() {
        // With a correctly rounded exp/log pair, double precision holds the
        // identity apart into the low 30s: log1p(exp(-33)) is about 4.7e-15,
        // a hair above double resolution at 33 (ulp 3.6e-15, half-ulp
        // threshold 1.8e-15 at the rounding boundary).
        let bp = find_naive_breakdown(Precision::Double).expect("must collapse in range");
        assert!(
            (31.0..=36.0).contains(&bp),
            "double breakdown at {bp}, expected low 30s"
        );
    }

    #[test]
    fn breakdown_scan_reports_none_when_range_is_clean() {
        assert_eq!(find_naive_breakdown_in(Precision::Double, 0.0, 10.0), None);
        assert_eq!(find_naive_breakdown_in(Precision::Single, 0.0, 10.0), None);
    }

    #[test]
    fn breakdown_stays_collapsed_above_the_point() {
        // A short flicker band above the first collapse is real (a few grid
        // points where rounding briefly resurrects a difference); past half
        // a unit it must be gone for good.
        let bp = find_naive_breakdown(Precision::Single).unwrap();
        let mut x = bp + 0.5;
        while x <= 40.0 {
            let xs = x as f32;
            assert_eq!(softplus_naive(xs), xs, "x = {x}");
            x += 0.01;
        }
    }

    #[test]
    fn slow_tail_orderings_hold() {
        for b in [B_UNIT, B_SOFTPLUS_MATCH] {
            for probe in [5.0, 10.0, 15.0] {
                let r = check_slow_tail(b, probe);
                assert!(r.passed, "b = {b}, probe = {probe}: {r}");
                assert!(
                    r.worst_error < 0.0,
                    "margins must be strictly positive: {r}"
                );
            }
        }
    }

    #[test]
    fn slow_tail_golden_margins() {
        // At x = 10, b = 4: squareplus - relu is about 0.099 while softplus
        // - relu is 4.5e-5, and d1(-10) is about 0.0097 vs sigmoid 4.5e-5.
        // d1's magnitude is what matters here; on the tail the 1 - x/sqrt
        // cancellation costs it a dozen ulps of fine precision.
        let d1 = squareplus_d1(-10.0, B_UNIT);
        assert!((d1 - 9.709_662_154_539_92e-3).abs() < 1e-12, "d1 = {d1:?}");
        let gap = squareplus(10.0, B_UNIT) - relu(10.0);
        assert!((gap - 0.099).abs() < 1e-3, "gap = {gap}");
    }

    #[test]
    fn registry_names_are_unique_and_runnable() {
        let names = check_names();
        for (i, name) in names.iter().enumerate() {
            assert!(!names[..i].contains(name), "duplicate check '{name}'");
            let reports = run_check(name).unwrap();
            assert!(!reports.is_empty(), "check '{name}' produced no reports");
        }
        assert!(matches!(
            run_check("no_such_check"),
            Err(VerifyError::UnknownCheck(_))
        ));
    }

    #[test]
    fn registry_covers_every_core_claim() {
        for claim in CORE_CLAIMS {
            let covered = CHECKS.iter().any(|c| c.claims.contains(claim));
            assert!(covered, "claim '{claim}' has no covering check");
        }
        // And no check advertises a claim that is not in the core list.
        for check in CHECKS {
            for claim in check.claims {
                assert!(
                    CORE_CLAIMS.contains(claim),
                    "check '{}' covers undocumented claim '{claim}'",
                    check.name
                );
            }
        }
    }

    #[test]
    fn all_registry_checks_pass_with_defaults() {
        for name in check_names() {
            for report in run_check(name).unwrap() {
                assert!(report.passed, "{name}: {report}");
            }
        }
    }
}

//! Scalar rectifier activations and their exact derivatives.
//!
//! The centerpiece is squareplus, `(x + sqrt(x^2 + b))/2`: a smooth rectifier
//! built from one multiply, one add, and one square root — no transcendental
//! calls. It upper-bounds relu for every `b >= 0`, collapses to relu exactly
//! at `b = 0`, and for `b = 4 ln^2 2` agrees with softplus at the origin in
//! value and slope, while `b = 4` reproduces softplus's origin curvature of
//! `1/4`. The hyperparameter trades smoothness for tightness: growing `b`
//! widens the curved region around zero.
//!
//! Softplus appears in two forms. [`softplus_stable`] is the shifted-`log1p`
//! evaluation that is safe over the whole real line. [`softplus_naive`] is
//! the textbook `ln(exp(x) + 1)`, kept on purpose: it overflows for large
//! inputs and, in single precision, silently degrades to `x` long before
//! that. The scan in [`crate::verify::find_naive_breakdown`] locates the
//! degradation point.

use std::fmt;

use crate::real::Real;

/// `b` for which squareplus matches softplus at the origin in value (`ln 2`)
/// and slope (`1/2`). Equals `4 (ln 2)^2`.
pub const B_SOFTPLUS_MATCH: f64 = 4.0 * std::f64::consts::LN_2 * std::f64::consts::LN_2;

/// `b` for which squareplus(0) is exactly 1, and the origin curvature
/// `1/(2 sqrt b) = 1/4` coincides with softplus's.
pub const B_UNIT: f64 = 4.0;

/// `(x + sqrt(x^2 + b))/2`.
///
/// Requires `b >= 0`. Finite for all finite `x` with `x^2 + b` below
/// `MAX`; in double precision that means `|x|` up to about `1.3e154`. The
/// direct formula loses a few ulps to cancellation for large negative `x`
/// (where the true value decays like `b/(4|x|)`), and that is accepted: the
/// point of the function is the three-instruction evaluation.
#[inline]
pub fn squareplus<T: Real>(x: T, b: T) -> T {
    assert!(b >= T::ZERO, "squareplus: b must be >= 0, got {b}");
    squareplus_raw(x, b)
}

#[inline(always)]
pub(crate) fn squareplus_raw<T: Real>(x: T, b: T) -> T {
    T::HALF * (x + (x * x + b).sqrt())
}

/// First derivative of squareplus: `(1 + x/sqrt(x^2 + b))/2`.
///
/// Strictly inside `(0, 1)` for `b > 0`; equals `1/2` at `x = 0` for every
/// `b`. For `b = 0` this is the step function, undefined (NaN) at the origin.
#[inline]
pub fn squareplus_d1<T: Real>(x: T, b: T) -> T {
    assert!(b >= T::ZERO, "squareplus_d1: b must be >= 0, got {b}");
    squareplus_d1_raw(x, b)
}

#[inline(always)]
pub(crate) fn squareplus_d1_raw<T: Real>(x: T, b: T) -> T {
    T::HALF * (T::ONE + x / (x * x + b).sqrt())
}

/// Second derivative of squareplus: `b / (2 (x^2 + b)^(3/2))`.
///
/// A bell curve with unit integral for every `b > 0`; at `b = 2` it is the
/// probability density of a Student's t distribution with two degrees of
/// freedom.
#[inline]
pub fn squareplus_d2<T: Real>(x: T, b: T) -> T {
    assert!(b >= T::ZERO, "squareplus_d2: b must be >= 0, got {b}");
    squareplus_d2_raw(x, b)
}

#[inline(always)]
pub(crate) fn squareplus_d2_raw<T: Real>(x: T, b: T) -> T {
    let r = x * x + b;
    T::HALF * b / (r * r.sqrt())
}

/// Rescales the squareplus hyperparameter under input scaling:
/// `squareplus(a*x, b)/a == squareplus(x, rescale_b(a, b))`, i.e. `b / a^2`.
///
/// Requires `a != 0`.
#[inline]
pub fn rescale_b<T: Real>(a: T, b: T) -> T {
    assert!(a != T::ZERO, "rescale_b: a must be nonzero");
    b / (a * a)
}

/// Softplus `ln(1 + exp(x))` via `max(x, 0) + log1p(exp(-|x|))`.
///
/// The shift keeps the exponent non-positive, so `exp` cannot overflow, and
/// `log1p` keeps precision where `exp(-|x|)` is tiny. Accurate over the whole
/// real line in both precisions.
#[inline]
pub fn softplus_stable<T: Real>(x: T) -> T {
    x.max(T::ZERO) + (-x.abs()).exp().ln_1p()
}

/// Softplus evaluated literally as `ln(exp(x) + 1)`.
///
/// Kept as a measurable bad example: `exp` overflows to infinity near
/// `x = 89` in single precision (`x = 710` in double), and well before that
/// the `+ 1` is absorbed and the result collapses to exactly `x` — in single
/// precision near `x = 15`, where softplus still differs from `x` by about
/// `3e-7`. Prefer [`softplus_stable`] everywhere.
#[inline]
pub fn softplus_naive<T: Real>(x: T) -> T {
    (x.exp() + T::ONE).ln()
}

/// `max(x, 0)`.
#[inline]
pub fn relu<T: Real>(x: T) -> T {
    x.max(T::ZERO)
}

/// `x` for `x > 0`, `alpha * (exp(x) - 1)` otherwise. Requires `alpha > 0`.
#[inline]
pub fn elu<T: Real>(x: T, alpha: T) -> T {
    assert!(alpha > T::ZERO, "elu: alpha must be > 0, got {alpha}");
    if x > T::ZERO {
        x
    } else {
        alpha * x.exp_m1()
    }
}

/// Logistic function `1 / (1 + exp(-x))`, branched on sign so the exponent
/// never goes positive: no overflow at either tail.
#[inline]
pub fn sigmoid<T: Real>(x: T) -> T {
    if x >= T::ZERO {
        T::ONE / (T::ONE + (-x).exp())
    } else {
        let e = x.exp();
        e / (T::ONE + e)
    }
}

/// Swish (SiLU): `x * sigmoid(x)`.
#[inline]
pub fn swish<T: Real>(x: T) -> T {
    x * sigmoid(x)
}

/// Parameter errors for [`Activation`] construction and validation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ActivationError {
    #[error("squareplus requires finite b >= 0, got {b}")]
    InvalidB { b: f64 },
    #[error("elu requires finite alpha > 0, got {alpha}")]
    InvalidAlpha { alpha: f64 },
}

/// Activation selector shared by the scalar API, the batch kernels, the
/// benchmark harness, and the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Activation {
    /// `(x + sqrt(x^2 + b))/2`, `b >= 0`.
    Squareplus { b: f64 },
    /// Shifted-`log1p` softplus, safe over the whole line.
    SoftplusStable,
    /// Literal `ln(exp(x) + 1)`; overflows and loses the tail on purpose.
    SoftplusNaive,
    /// `max(x, 0)`.
    Relu,
    /// `x` for `x > 0`, else `alpha * (exp(x) - 1)`, `alpha > 0`.
    Elu { alpha: f64 },
    /// `x * sigmoid(x)`.
    Swish,
}

impl Activation {
    /// Validated squareplus constructor.
    pub fn squareplus(b: f64) -> Result<Self, ActivationError> {
        let act = Activation::Squareplus { b };
        act.validate()?;
        Ok(act)
    }

    /// Validated elu constructor.
    pub fn elu(alpha: f64) -> Result<Self, ActivationError> {
        let act = Activation::Elu { alpha };
        act.validate()?;
        Ok(act)
    }

    /// Checks parameter domains; the variants are plain data, so a hand-built
    /// value can carry an out-of-domain parameter until this is called.
    pub fn validate(&self) -> Result<(), ActivationError> {
        match *self {
            Activation::Squareplus { b } if !(b.is_finite() && b >= 0.0) => {
                Err(ActivationError::InvalidB { b })
            }
            Activation::Elu { alpha } if !(alpha.is_finite() && alpha > 0.0) => {
                Err(ActivationError::InvalidAlpha { alpha })
            }
            _ => Ok(()),
        }
    }

    /// Stable display name; parameters use the shortest exact decimal, and
    /// the result never contains a comma (report rows rely on that).
    pub fn name(&self) -> String {
        match *self {
            Activation::Squareplus { b } => format!("squareplus(b={b})"),
            Activation::SoftplusStable => "softplus_stable".to_string(),
            Activation::SoftplusNaive => "softplus_naive".to_string(),
            Activation::Relu => "relu".to_string(),
            Activation::Elu { alpha } => format!("elu(alpha={alpha})"),
            Activation::Swish => "swish".to_string(),
        }
    }

    /// Scalar evaluation in the precision of `x`. Parameters round once into
    /// that precision, exactly as the batch kernels do.
    #[inline]
    pub fn eval<T: Real>(&self, x: T) -> T {
        match *self {
            Activation::Squareplus { b } => squareplus(x, T::from_f64(b)),
            Activation::SoftplusStable => softplus_stable(x),
            Activation::SoftplusNaive => softplus_naive(x),
            Activation::Relu => relu(x),
            Activation::Elu { alpha } => elu(x, T::from_f64(alpha)),
            Activation::Swish => swish(x),
        }
    }

    /// First derivative where a closed form is shipped (squareplus only).
    #[inline]
    pub fn d1<T: Real>(&self, x: T) -> Option<T> {
        match *self {
            Activation::Squareplus { b } => Some(squareplus_d1(x, T::from_f64(b))),
            _ => None,
        }
    }

    /// Second derivative where a closed form is shipped (squareplus only).
    #[inline]
    pub fn d2<T: Real>(&self, x: T) -> Option<T> {
        match *self {
            Activation::Squareplus { b } => Some(squareplus_d2(x, T::from_f64(b))),
            _ => None,
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

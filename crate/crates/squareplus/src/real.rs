//! Float abstraction shared by the scalar ops, kernels, and scans.
//!
//! Everything generic in this crate is written against [`Real`] so the same
//! code runs in `f32` and `f64`. The single-precision path stays in `f32`
//! end to end — no silent widening — which is what makes the naive-softplus
//! failure modes observable.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which float width an operation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// `f32` end to end.
    Single,
    /// `f64` end to end.
    Double,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Single => "single",
            Precision::Double => "double",
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" | "f32" => Ok(Precision::Single),
            "double" | "f64" => Ok(Precision::Double),
            other => Err(format!(
                "unknown precision '{other}' (expected single|double)"
            )),
        }
    }
}

/// The float operations the activations need, implemented for `f32`/`f64`.
///
/// Deliberately minimal: conversions, arithmetic via the `std::ops` bounds,
/// and the handful of libm calls the activations use. `ulps_between` is the
/// unit in which we state bit-level accuracy claims.
pub trait Real:
    Copy
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;
    const HALF: Self;
    const PRECISION: Precision;

    /// Rounds to the nearest representable value; the only entry point for
    /// constants and parameters into a generic computation.
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;

    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn max(self, other: Self) -> Self;
    fn is_finite(self) -> bool;

    /// Distance in representable values between two finite floats, treating
    /// the line as ordered (so values straddling zero count the steps through
    /// it). 0 means bit-identical up to the sign of zero.
    fn ulps_between(self, other: Self) -> u64;

    /// Size of one ulp at `self`'s magnitude (finite, non-max input).
    fn ulp(self) -> Self;
}

/// Maps float bits to a monotone integer line: adjacent floats differ by 1,
/// and both zeros land on 0.
macro_rules! impl_real {
    ($t:ty, $sbits:ty, $wide:ty, $precision:expr, $half:expr) => {
        impl Real for $t {
            const ZERO: Self = 0.0;
            const ONE: Self = 1.0;
            const HALF: Self = $half;
            const PRECISION: Precision = $precision;

            #[inline(always)]
            fn from_f64(x: f64) -> Self {
                x as $t
            }

            #[inline(always)]
            fn to_f64(self) -> f64 {
                self as f64
            }

            #[inline(always)]
            fn exp(self) -> Self {
                self.exp()
            }

            #[inline(always)]
            fn exp_m1(self) -> Self {
                self.exp_m1()
            }

            #[inline(always)]
            fn ln(self) -> Self {
                self.ln()
            }

            #[inline(always)]
            fn ln_1p(self) -> Self {
                self.ln_1p()
            }

            #[inline(always)]
            fn sqrt(self) -> Self {
                self.sqrt()
            }

            #[inline(always)]
            fn abs(self) -> Self {
                self.abs()
            }

            #[inline(always)]
            fn max(self, other: Self) -> Self {
                self.max(other)
            }

            #[inline(always)]
            fn is_finite(self) -> bool {
                self.is_finite()
            }

            fn ulps_between(self, other: Self) -> u64 {
                fn ordered(x: $t) -> $sbits {
                    let b = x.to_bits() as $sbits;
                    if b < 0 {
                        <$sbits>::MIN - b
                    } else {
                        b
                    }
                }
                (ordered(self) as $wide - ordered(other) as $wide).unsigned_abs() as u64
            }

            fn ulp(self) -> Self {
                let a = self.abs();
                <$t>::from_bits(a.to_bits() + 1) - a
            }
        }
    };
}

impl_real!(f32, i32, i64, Precision::Single, 0.5f32);
impl_real!(f64, i64, i128, Precision::Double, 0.5f64);

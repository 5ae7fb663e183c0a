//! Text round-trip helpers for report files.
//!
//! CSV cells written by this crate must parse back to the exact same bits,
//! so floats are printed with enough digits to pin every value: 17
//! significant digits for `f64`, 9 for `f32`.

/// `f64` to decimal text that parses back bit-exactly.
pub fn f64_lossless(x: f64) -> String {
    format!("{x:.16e}")
}

/// `f32` to decimal text that parses back bit-exactly.
pub fn f32_lossless(x: f32) -> String {
    format!("{x:.8e}")
}

//! Number formatting shared by the CSV and JSON emitters.
//!
//! Rationals render as decimals with at most 12 significant digits, `.` as
//! the decimal separator and no thousands separators. Undefined values
//! render as `undefined` (quoted in JSON).

use num::ToPrimitive;

use crate::metrics::Rational;

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exponent = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - exponent);
    if !scale.is_finite() || scale == 0.0 {
        return x;
    }
    (x * scale).round() / scale
}

/// Shortest decimal form of `x` after rounding to 12 significant digits.
pub fn format_sig12(x: f64) -> String {
    format!("{}", sig12(x))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| *r.numer() as f64 / *r.denom() as f64)
}

pub fn csv_rational(r: Option<&Rational>) -> String {
    match r {
        Some(r) => format_sig12(rational_to_f64(r)),
        None => "undefined".to_string(),
    }
}

pub fn json_rational(r: Option<&Rational>) -> String {
    match r {
        Some(r) => format_sig12(rational_to_f64(r)),
        None => "\"undefined\"".to_string(),
    }
}

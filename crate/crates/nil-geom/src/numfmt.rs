//! Deterministic decimal formatting at a fixed number of significant digits.
//!
//! Mesh exports and CLI reports must be byte-identical across runs, so every
//! number goes through one formatter: round to the requested significant
//! digits, then print the shortest decimal form of the rounded value. Rust's
//! f64 Display never switches to exponent notation, which keeps the output
//! grammar trivial for downstream parsers.

/// Formats a finite `x` rounded to `sig` significant digits.
///
/// Values that round to fewer digits print fewer; trailing zeros are never
/// padded. Negative zero normalizes to "0".
pub fn fmt_sig(x: f64, sig: i32) -> String {
    assert!(x.is_finite(), "formatting requires a finite value");
    assert!(sig > 0);
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(sig - 1 - exponent);
    let rounded = (x * factor).round() / factor;
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

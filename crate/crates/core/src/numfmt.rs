//! Fixed-precision number rendering for JSON and CSV output.

/// Round to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

/// Shortest rendering of `x` rounded to `digits` significant digits;
/// magnitudes outside `[1e-4, 1e9)` use exponent notation.
pub fn sig(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r != 0.0 && r.is_finite() && !(1e-4..1e9).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Shortest round-trip decimal of `x` after rounding to 12 significant
/// digits. Negative zero prints as `0`.
pub fn number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    rounded.to_string()
}

/// Human-readable form: rounded to 12 decimal places, always showing a
/// decimal point for finite values.
pub fn decimal(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.12}").parse().expect("formatted float parses");
    let s = number(rounded);
    if x.is_finite() && !s.contains('.') {
        format!("{s}.0")
    } else {
        s
    }
}

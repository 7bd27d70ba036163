//! Fixed-width float rendering for CSV output.

/// Formats `x` with 17 significant digits.
///
/// Values with `|x|` in `[1e-4, 1e6)` are written in positional notation,
/// everything else in lowercase scientific notation. Zero is `0`, and the
/// non-finite values are `nan`, `inf` and `-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent marker") + 1..]
        .parse()
        .expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (16 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

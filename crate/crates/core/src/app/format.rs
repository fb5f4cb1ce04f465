//! Number formatting for text outputs.

/// `%.9g`-style: nine significant digits, trailing zeros trimmed,
/// scientific notation outside `[1e-5, 1e9)`. Always `.` as decimal point.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(sig9(std::f64::consts::FRAC_1_SQRT_2), "0.707106781");
        assert_eq!(sig9(0.5), "0.5");
        assert_eq!(sig9(2.0), "2");
        assert_eq!(sig9(123456.789), "123456.789");
        assert_eq!(sig9(1.5e-7), "1.5e-7");
        assert_eq!(sig9(-0.25), "-0.25");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(0.99999999999), "1");
    }
}

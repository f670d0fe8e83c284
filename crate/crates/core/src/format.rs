//! Decimal formatting shared by the CSV writers.

/// Formats `x` with `digits` significant digits, `%g` style: fixed notation
/// for decimal exponents in `-5..digits`, scientific otherwise, trailing
/// zeros removed. Infinities print as `inf`/`-inf`.
pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits > 0);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // exponent after rounding to `digits` places
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Twelve significant digits, the precision used in every CSV output.
pub fn csv_num(x: f64) -> String {
    sig(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (123456.789, "123456.789"),
            (1e-7, "1e-7"),
            (0.00012345, "0.00012345"),
            (999999999999.9, "1e12"),
            (1.6e-2, "0.016"),
            (2.0 / 3.0 * 1e-6, "6.66666666667e-7"),
            (f64::INFINITY, "inf"),
        ];
        for (x, want) in cases {
            assert_eq!(csv_num(x), want, "{x}");
        }
    }

    #[test]
    fn parses_back_within_precision() {
        for x in [0.123456789012345, 37.4712345678901, 1.0e-9 / 7.0] {
            let back: f64 = csv_num(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 5e-12);
        }
    }
}

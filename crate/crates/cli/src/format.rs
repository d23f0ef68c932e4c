/// Significant digits in every emitted number.
pub const SIG_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits: fixed notation for moderate
/// magnitudes, scientific otherwise, trailing zeros dropped.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

/// Blank cell for a missing value.
pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `x` rounded to 12 significant digits, for round-trip comparisons.
pub fn round_sig(x: f64) -> f64 {
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().expect("float")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(num(0.0), "0");
        assert_eq!(num(1e7), "10000000");
        assert_eq!(num(100.0), "100");
        assert_eq!(num(0.5614594835668851), "0.561459483567");
        assert_eq!(num(-1.5), "-1.5");
        assert_eq!(num(316.22776601683796), "316.227766017");
        assert_eq!(num(1.234e-9), "1.234e-9");
        assert_eq!(num(6.02214076e23), "6.02214076e23");
        assert_eq!(num(123456789012.0), "123456789012");
        assert_eq!(num(0.000012345), "0.000012345");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        assert_eq!(num(9.9999999999996), "10");
        assert_eq!(num(999999999999.7), "1e12");
    }

    #[test]
    fn parses_back_at_twelve_digits() {
        let mut x = 1.0e-12_f64;
        while x < 1e15 {
            for v in [x, -x, x * std::f64::consts::PI] {
                let back: f64 = num(v).parse().unwrap();
                assert_eq!(back, round_sig(v), "{v}");
            }
            x *= 7.3;
        }
    }
}

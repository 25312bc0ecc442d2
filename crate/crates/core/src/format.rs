// SPDX-License-Identifier: Apache-2.0

//! Fixed-precision number formatting for CSV output.

/// Formats `v` with 12 significant digits, `%.12g` style: trailing zeros
/// dropped, exponent notation outside `1e-4 <= |v| < 1e12`.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(10.000000000000002), "10");
        assert_eq!(sig12(0.1 + 0.2), "0.3");
        assert_eq!(sig12(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(sig12(-1234.5), "-1234.5");
        assert_eq!(sig12(3.4e-17), "3.4e-17");
        assert_eq!(sig12(9.9999999999996), "10");
        assert_eq!(sig12(1.5e12), "1.5e12");
        assert_eq!(sig12(0.00012345678901234), "0.000123456789012");
        assert_eq!(sig12(5.34375e-5), "5.34375e-5");
    }
}

//! Numeric formatting for CLI output: twelve significant digits, no
//! scientific notation, exact zero printed as `0`.

/// Formats a value with twelve significant digits in plain decimal
/// notation, so outputs are stable across runs and platforms.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    let decimals = (11 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits_regardless_of_magnitude() {
        assert_eq!(format_value(2.011), "2.01100000000");
        assert_eq!(format_value(0.405), "0.405000000000");
        assert_eq!(format_value(1234.5), "1234.50000000");
        assert_eq!(format_value(-0.5), "-0.500000000000");
    }

    #[test]
    fn zero_and_large_values_stay_plain() {
        assert_eq!(format_value(0.0), "0");
        assert_eq!(format_value(1e12), "1000000000000");
        assert_eq!(format_value(1e15), "1000000000000000");
    }
}

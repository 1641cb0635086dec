//! Locale-independent number formatting for CSV output.

/// `%g`-style rendering with `digits` significant digits and trailing zeros removed.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    // rounding to `digits` first fixes the exponent used to pick the notation
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
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

/// Formats floats either at 6 significant digits or as the shortest
/// representation that round-trips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NumberFormat {
    pub full_precision: bool,
}

impl NumberFormat {
    pub fn new(full_precision: bool) -> Self {
        Self { full_precision }
    }

    pub fn fmt(&self, x: f64) -> String {
        if self.full_precision {
            format!("{x:?}")
        } else {
            significant(x, 6)
        }
    }
}

//! Numeric flag values: plain floats or products and quotients involving `pi`,
//! e.g. `0.25`, `pi/3`, `-3*pi/4`, `2pi`, `1e-3`.

use std::f64::consts::PI;

pub fn parse_value(text: &str) -> Result<f64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty value".into());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(s)),
    };
    let mut value = 1.0;
    let mut divide = false;
    let mut rest = body;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let factor = parse_factor(&rest[..end]).ok_or_else(|| format!("cannot parse '{text}'"))?;
        if divide {
            value /= factor;
        } else {
            value *= factor;
        }
        if end == rest.len() {
            break;
        }
        divide = rest.as_bytes()[end] == b'/';
        rest = &rest[end + 1..];
    }
    let value = sign * value;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("'{text}' is not finite"))
    }
}

fn parse_factor(token: &str) -> Option<f64> {
    let t = token.trim();
    if t.eq_ignore_ascii_case("pi") || t == "π" {
        return Some(PI);
    }
    if let Some(coef) = t.strip_suffix("pi").or_else(|| t.strip_suffix('π')) {
        return coef.trim().parse::<f64>().ok().map(|c| c * PI);
    }
    // Reject "inf"/"nan" spellings that f64::from_str accepts.
    if t.chars()
        .any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E')
    {
        return None;
    }
    t.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_pi_forms() {
        assert_eq!(parse_value("pi").unwrap(), PI);
        assert_eq!(parse_value("pi/3").unwrap(), PI / 3.0);
        assert_eq!(parse_value("-3*pi/4").unwrap(), -3.0 * PI / 4.0);
        assert_eq!(parse_value("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_value("5*pi/6").unwrap(), 5.0 * PI / 6.0);
        assert_eq!(parse_value(" 1e-3 ").unwrap(), 1e-3);
        assert_eq!(parse_value("0.5").unwrap(), 0.5);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "pi/", "1/0", "nan", "inf", "2**3"] {
            assert!(parse_value(bad).is_err(), "{bad}");
        }
    }
}

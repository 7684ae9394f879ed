//! Complex literals of the form `a`, `bi`, `a+bi`, `a-bi`.

use num_complex::Complex64;

fn parse_real(text: &str, literal: &str) -> Result<f64, String> {
    let v: f64 = text
        .parse()
        .map_err(|_| format!("invalid complex literal '{literal}'"))?;
    if !v.is_finite() {
        return Err(format!("complex literal '{literal}' is not finite"));
    }
    Ok(v)
}

/// Index of the sign that separates the real and imaginary parts, skipping
/// a leading sign and exponent signs.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

pub fn parse_complex(literal: &str) -> Result<Complex64, String> {
    if literal.is_empty() || literal.chars().any(char::is_whitespace) {
        return Err(format!("invalid complex literal '{literal}'"));
    }
    let Some(body) = literal.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(literal, literal)?, 0.0));
    };
    let imag = |text: &str| match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => parse_real(t, literal),
    };
    match split_point(body) {
        Some(i) => Ok(Complex64::new(parse_real(&body[..i], literal)?, imag(&body[i..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Inverse of [`parse_complex`] for finite values.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("3i").unwrap(), c(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("0.5-0.25i").unwrap(), c(0.5, -0.25));
        assert_eq!(parse_complex("-1-i").unwrap(), c(-1.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("-1e-3i").unwrap(), c(0.0, -1e-3));
    }

    #[test]
    fn rejected_forms() {
        for bad in ["", "1 + 2i", "abc", "1+2j", "1+", "++1i", "inf", "1+nani", "2ii"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }
}

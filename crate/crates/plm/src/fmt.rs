//! Locale-independent numeric rendering shared by every output format.

/// Renders a finite number with six significant digits, trailing zeros
/// trimmed: `61.3909`, `0.00123456`, `-0.06`, `3.4`. Magnitudes outside a
/// readable decimal window fall back to exponent form (`1.23457e18`).
///
/// Always uses `.` as the decimal separator regardless of locale, and always
/// produces the same bytes for the same value.
pub fn sig6(value: f64) -> String {
    sig(value, 6)
}

pub fn sig(value: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if value == 0.0 {
        return String::from("0");
    }
    if !value.is_finite() {
        // the library never hands non-finite numbers to a serializer; keep
        // the debug form rather than inventing a convention
        return format!("{value}");
    }

    // round once via the exponent form, then reassemble as a plain decimal
    let exp_form = format!("{value:.*e}", digits - 1);
    let (mantissa, exp) = exp_form.split_once('e').expect("float exponent form");
    let exp: i32 = exp.parse().expect("float exponent");
    let negative = mantissa.starts_with('-');
    let all: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let trimmed = all.trim_end_matches('0');
    let body = if trimmed.is_empty() { "0" } else { trimmed };

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-4..=14).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if body.len() <= int_len {
                out.push_str(body);
                out.push_str(&"0".repeat(int_len - body.len()));
            } else {
                out.push_str(&body[..int_len]);
                out.push('.');
                out.push_str(&body[int_len..]);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-exp) as usize - 1));
            out.push_str(body);
        }
    } else {
        out.push_str(&body[..1]);
        if body.len() > 1 {
            out.push('.');
            out.push_str(&body[1..]);
        }
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}

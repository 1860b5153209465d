use serde_json::Value;

/// Significant digits kept in text output.
pub const DIGITS: usize = 10;

/// Formats `x` with [`DIGITS`] significant digits, truncating rather than
/// rounding, in positional notation. The value is first rounded to 15
/// significant digits so decimal inputs such as `0.325947` survive.
pub fn sig(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("0.{}", "0".repeat(DIGITS - 1));
    }
    let sci = format!("{:.14e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).take(DIGITS).collect();
    let sign = if x < 0.0 { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        let int_len = exp as usize + 1;
        if int_len >= DIGITS {
            format!("{digits}{}", "0".repeat(int_len - DIGITS))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    };
    format!("{sign}{body}")
}

/// Renders a JSON number with [`sig`], other values verbatim.
pub fn num(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// `[2,4,5]` as `(2,4,5)`.
pub fn triple(v: &Value) -> String {
    match v.as_array() {
        Some(items) => {
            let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
            format!("({})", parts.join(","))
        }
        None => v.to_string(),
    }
}

/// `[2,3,5]` as `{2,3,5}`.
pub fn set(v: &Value) -> String {
    match v.as_array() {
        Some(items) => {
            let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        }
        None => v.to_string(),
    }
}

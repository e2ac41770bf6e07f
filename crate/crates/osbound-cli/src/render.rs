//! Output rendering: 8-significant-digit cells for CSV, full-precision
//! JSON.

/// Formats with 8 significant digits and trailing zeros trimmed,
/// switching to scientific notation outside the 1e-4..1e8 magnitude
/// window.
pub fn sig8(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.7e}");
    let (mantissa, exponent) = sci.split_once('e').expect("scientific form");
    let exponent: i32 = exponent.parse().expect("exponent digits");
    if (-4..8).contains(&exponent) {
        let decimals = (7 - exponent).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exponent}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Prints a CSV table. Cells never contain commas or quotes, so no
/// escaping is involved.
pub fn print_csv(header: &[&str], rows: &[Vec<String>]) {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    print!("{out}");
}

pub fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

use std::io::Write;

use crate::experiments::ResultRow;

pub const CSV_HEADER: &str = "engine,t,eta,n,m,p_suc,r_x,r_z,c1,s1,lower_bound,upper_bound";

/// Formats `x` with `digits` significant digits, `%g` style: plain decimal
/// for moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // the exponent after rounding decides the layout
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
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

pub fn write_rows<W: Write>(
    out: &mut W,
    rows: &[ResultRow],
    precision: usize,
) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        let f = |x: f64| format_sig(x, precision);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.engine,
            r.t,
            f(r.eta),
            r.n,
            r.m,
            f(r.p_suc),
            f(r.r_x),
            f(r.r_z),
            f(r.c1),
            f(r.s1),
            f(r.lower_bound),
            f(r.upper_bound)
        )?;
    }
    Ok(())
}

//! Fixed number formatting so that identical runs print identical bytes.

use num_complex::Complex64;

/// Values below this print as `~0` in amplitude tables.
pub const ZERO_MARK: f64 = 1e-12;

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// C-style `%.{prec}e`: mantissa with `prec` decimals, signed two-digit exponent.
pub fn c_exp(x: f64, prec: usize) -> String {
    let s = format!("{:.*e}", prec, clean(x));
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

/// `%.12e%+.12ei`.
pub fn complex_exp(z: Complex64) -> String {
    let im = c_exp(z.im, 12);
    let im = if im.starts_with('-') { im } else { format!("+{im}") };
    format!("{}{im}i", c_exp(z.re, 12))
}

/// A real with 12 significant digits, fixed notation for moderate magnitudes.
pub fn sig12(x: f64) -> String {
    let x = clean(x);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci.split_once('e').expect("exponent form").1.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        let fixed = if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        };
        if fixed == "-0" {
            "0".into()
        } else {
            fixed
        }
    } else {
        let (mant, e) = sci.split_once('e').expect("exponent form");
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    }
}

/// `re+imi` with 12 significant digits; parts below [`ZERO_MARK`] print as 0,
/// and a value whose modulus is below it prints as `~0`.
pub fn amplitude(z: Complex64) -> String {
    if z.norm() < ZERO_MARK {
        return "~0".into();
    }
    let part = |x: f64| if x.abs() < ZERO_MARK { 0.0 } else { x };
    let (re, im) = (part(z.re), part(z.im));
    let im_s = sig12(im);
    let im_s = if im_s.starts_with('-') { im_s } else { format!("+{im_s}") };
    format!("{}{im_s}i", sig12(re))
}

/// Short scientific form for residuals.
pub fn residual(x: f64) -> String {
    c_exp(x, 3)
}

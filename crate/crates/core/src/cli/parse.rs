//! Parsers for the textual argument forms: complex literals, omega, coins and inflows.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coin::Coin;
use crate::error::{Error, Result};
use crate::rotation_graph::RotationTailedGraph;

fn bad(what: &str, text: &str) -> Error {
    Error::Domain(format!("cannot parse {what} from {text:?}"))
}

fn real(text: &str, what: &str) -> Result<f64> {
    text.trim().parse::<f64>().map_err(|_| bad(what, text))
}

/// Parses `x`, `yi`, `x+yi`, `x-yi`, `i`, `-i` (exponents allowed in both parts).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("complex number", text));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s, "complex number")?, 0.0));
    };
    // split before the last sign that is not the leading one and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => real(x, "complex number")?,
    };
    Ok(Complex64::new(real(re, "complex number")?, im))
}

/// Parses `exp(i*pi*p/q)`, `exp(i*pi/q)`, `exp(i*pi)`, `<x>deg`, or a complex literal.
pub fn parse_omega(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(deg) = s.strip_suffix("deg") {
        return Ok(Complex64::from_polar(1.0, real(deg, "omega")?.to_radians()));
    }
    if let Some(inner) = s.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        let rest = inner.strip_prefix("i*pi").ok_or_else(|| bad("omega", text))?;
        let (num, den) = match rest.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (rest, None),
        };
        let num = match num {
            "" => 1.0,
            n => real(n.strip_prefix('*').ok_or_else(|| bad("omega", text))?, "omega")?,
        };
        let den = match den {
            Some(d) => real(d, "omega")?,
            None => 1.0,
        };
        if den == 0.0 {
            return Err(bad("omega", text));
        }
        return Ok(Complex64::from_polar(1.0, PI * num / den));
    }
    parse_complex(&s).map_err(|_| bad("omega", text))
}

/// Parses `d=<real>,omega=<omega>,phi=<real>`; omega defaults to 1 and phi to 0.
pub fn parse_coin(text: &str) -> Result<Coin> {
    let mut d = None;
    let mut omega = Complex64::new(1.0, 0.0);
    let mut phi = 0.0;
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| bad("coin", text))?;
        match key.trim() {
            "d" => d = Some(real(value, "d")?),
            "omega" => omega = parse_omega(value)?,
            "phi" => phi = real(value, "phi")?,
            k => return Err(Error::Domain(format!("unknown coin key {k:?}"))),
        }
    }
    let d = d.ok_or_else(|| Error::Domain("coin needs d=<real>".into()))?;
    Ok(Coin::new(d, omega, phi)?)
}

/// Parses `a,b,c,d` as complex literals.
pub fn parse_coin_matrix(text: &str) -> Result<Coin> {
    let parts = text.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
    let [a, b, c, d] = parts[..] else {
        return Err(Error::Domain(format!("coin matrix needs four entries, got {}", parts.len())));
    };
    Ok(Coin::from_matrix(a, b, c, d)?)
}

/// Parses `ones`, `zeros`, `e:<vertex>` or a comma-separated list in boundary order.
pub fn parse_inflow(text: &str, g: &RotationTailedGraph) -> Result<Vec<Complex64>> {
    let n = g.boundary().len();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match text.trim() {
        "ones" => Ok(vec![one; n]),
        "zeros" => Ok(vec![zero; n]),
        t => {
            if let Some(label) = t.strip_prefix("e:") {
                let v = vertex(g, label)?;
                let k = g
                    .boundary_index(v)
                    .ok_or_else(|| Error::NotBoundary(label.to_string()))?;
                let mut alpha = vec![zero; n];
                alpha[k] = one;
                return Ok(alpha);
            }
            let alpha = t.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
            if alpha.len() != n {
                return Err(Error::Mismatch {
                    what: "inflow",
                    expected: n,
                    got: alpha.len(),
                });
            }
            Ok(alpha)
        }
    }
}

pub fn vertex(g: &RotationTailedGraph, label: &str) -> Result<usize> {
    g.vertex_by_label(label)
        .ok_or_else(|| Error::Domain(format!("no vertex labelled {label:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("3i").unwrap(), c(0.0, 3.0));
        assert_eq!(parse_complex("0.5-0.25i").unwrap(), c(0.5, -0.25));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("-1-i").unwrap(), c(-1.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn omega_forms() {
        let close = |x: Complex64, y: Complex64| (x - y).norm() < 1e-15;
        assert!(close(parse_omega("1").unwrap(), c(1.0, 0.0)));
        assert!(close(parse_omega("exp(i*pi)").unwrap(), c(-1.0, 0.0)));
        assert!(close(parse_omega("exp(i*pi/2)").unwrap(), c(0.0, 1.0)));
        assert!(close(parse_omega("exp(i*pi*2/5)").unwrap(), Complex64::from_polar(1.0, 0.4 * PI)));
        assert!(close(parse_omega("exp(i*pi*-1/3)").unwrap(), Complex64::from_polar(1.0, -PI / 3.0)));
        assert!(close(parse_omega("60deg").unwrap(), Complex64::from_polar(1.0, PI / 3.0)));
        assert!(parse_omega("exp(pi)").is_err());
        assert!(parse_omega("exp(i*pi/0)").is_err());
    }

    #[test]
    fn coin_specs() {
        let h = parse_coin("d=0.5,omega=1,phi=0").unwrap();
        assert!((h.a() + 0.5).norm() < 1e-15);
        assert!(parse_coin("omega=1").is_err());
        assert!(parse_coin("d=0.5,x=1").is_err());
        assert!(parse_coin("d=1").is_err());
        let r = 0.5f64.sqrt();
        let h = parse_coin_matrix(&format!("{r},{r},{r},{}", -r)).unwrap();
        assert!((h.omega() - 1.0).norm() < 1e-12);
        assert!(parse_coin_matrix("1,0,0").is_err());
    }

    #[test]
    fn inflow_specs() {
        let g = crate::builtin::builtin("tetrahedron").unwrap();
        assert_eq!(parse_inflow("ones", &g).unwrap().len(), 3);
        let e = parse_inflow("e:1", &g).unwrap();
        assert_eq!(e[1], c(1.0, 0.0));
        assert_eq!(e[0], c(0.0, 0.0));
        assert!(matches!(parse_inflow("e:3", &g), Err(Error::NotBoundary(_))));
        assert_eq!(parse_inflow("1,i,-1", &g).unwrap()[1], c(0.0, 1.0));
        assert!(matches!(parse_inflow("1,2", &g), Err(Error::Mismatch { .. })));
    }
}

//! The 2x2 coin applied at every blow-up vertex.

use num_complex::Complex64;

use crate::error::CoinError;

/// Tolerance for unitarity, realness of `d` and nonzero entries.
pub const COIN_TOL: f64 = 1e-12;

/// A unitary `H = [[a, b], [c, d]]` with real `d` and no zero entry.
///
/// `omega = -det H`. Unitarity together with real `d` forces `a = -omega d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coin {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    omega: Complex64,
}

impl Coin {
    /// Coin with `a = -omega d`, `b = e^{i phi} sqrt(1-d^2)`, `c = omega e^{-i phi} sqrt(1-d^2)`.
    pub fn new(d: f64, omega: Complex64, phi: f64) -> Result<Self, CoinError> {
        if !(d.abs() > 0.0 && d.abs() < 1.0) {
            return Err(CoinError::DOutOfRange(d));
        }
        if !((omega.norm() - 1.0).abs() <= COIN_TOL) {
            return Err(CoinError::OmegaNotUnit(omega.norm()));
        }
        let s = (1.0 - d * d).sqrt();
        let phase = Complex64::from_polar(1.0, phi);
        Self::from_matrix(
            -omega * d,
            phase * s,
            omega * phase.conj() * s,
            Complex64::new(d, 0.0),
        )
    }

    /// Accepts the four entries iff every coin invariant holds.
    pub fn from_matrix(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Result<Self, CoinError> {
        // rows of H H^* minus the identity
        let r00 = a.norm_sqr() + b.norm_sqr() - 1.0;
        let r11 = c.norm_sqr() + d.norm_sqr() - 1.0;
        let r01 = a * c.conj() + b * d.conj();
        let residual = r00.abs().max(r11.abs()).max(r01.norm());
        if !(residual <= COIN_TOL) {
            return Err(CoinError::NotUnitary(residual));
        }
        if !(d.im.abs() <= COIN_TOL) {
            return Err(CoinError::DNotReal(d.im));
        }
        for (name, x) in [('a', a), ('b', b), ('c', c), ('d', d)] {
            if !(x.norm() > COIN_TOL) {
                return Err(CoinError::ZeroEntry(name));
            }
        }
        let d = Complex64::new(d.re, 0.0);
        let omega = -(a * d - b * c);
        Ok(Self { a, b, c, d, omega })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    pub fn d_real(&self) -> f64 {
        self.d.re
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// `H [x, y]^T`.
    pub fn apply(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    /// Whether `omega^n = 1` within `tol`.
    pub fn omega_power_is_one(&self, n: usize, tol: f64) -> bool {
        (self.omega.powu(n as u32) - 1.0).norm() < tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_reflection() {
        let theta = PI / 3.0;
        let h = Coin::new(-theta.cos(), c(1.0, 0.0), 0.0).unwrap();
        let s = 3f64.sqrt() / 2.0;
        assert!((h.a() - c(0.5, 0.0)).norm() < 1e-15);
        assert!((h.b() - c(s, 0.0)).norm() < 1e-15);
        assert!((h.c() - c(s, 0.0)).norm() < 1e-15);
        assert!((h.d() - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((h.omega() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn half_coin_is_unitary() {
        let h = Coin::new(0.5, c(1.0, 0.0), 0.0).unwrap();
        let m = h.matrix();
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).norm() < 1e-15);
            }
        }
        assert!((h.a() - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn omega_is_minus_det() {
        let w = Complex64::from_polar(1.0, PI / 3.0);
        let h = Coin::new(0.5, w, 0.0).unwrap();
        let det = h.a() * h.d() - h.b() * h.c();
        assert!((det + w).norm() < 1e-15);
        assert!((h.a() + w * 0.5).norm() < 1e-15);
    }

    #[test]
    fn identity_rejected_for_zero_entry() {
        let err = Coin::from_matrix(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap_err();
        assert_eq!(err, CoinError::ZeroEntry('b'));
    }

    #[test]
    fn hadamard_accepted() {
        let r = 0.5f64.sqrt();
        let h = Coin::from_matrix(c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)).unwrap();
        assert!((h.omega() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn non_unitary_and_complex_d_rejected() {
        assert!(matches!(
            Coin::from_matrix(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)),
            Err(CoinError::NotUnitary(_))
        ));
        let r = 0.5f64.sqrt();
        // diag(1, i) rotated: unitary with complex d
        assert!(matches!(
            Coin::from_matrix(c(r, 0.0), c(0.0, r), c(r, 0.0), c(0.0, -r)),
            Err(CoinError::DNotReal(_))
        ));
    }

    #[test]
    fn constructor_domain() {
        for d in [0.0, 1.0, -1.0, 2.0, f64::NAN] {
            assert!(matches!(Coin::new(d, c(1.0, 0.0), 0.0), Err(CoinError::DOutOfRange(_))));
        }
        assert!(matches!(
            Coin::new(0.5, c(2.0, 0.0), 0.0),
            Err(CoinError::OmegaNotUnit(_))
        ));
    }
}

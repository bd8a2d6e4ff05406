//! Small dense helpers shared by the solvers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivots of the column-pivoted QR below this count as zero.
///
/// On the kernel directions of `I - E` they come out below 1e-14, while the
/// smallest genuine pivots stay above 1e-4 on every graph we solve.
pub const SINGULAR_THRESHOLD: f64 = 1e-9;

pub fn sup_norm(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.norm()))
}

pub fn sup_distance(x: &[Complex64], y: &[Complex64]) -> f64 {
    assert_eq!(x.len(), y.len(), "sup_distance of vectors with different lengths");
    x.iter().zip(y).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
}

/// Largest entry modulus of a complex matrix or vector.
pub fn max_modulus<R: nalgebra::Dim, C: nalgebra::Dim, S: nalgebra::RawStorage<Complex64, R, C>>(
    m: &nalgebra::Matrix<Complex64, R, C, S>,
) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.norm()))
}

pub fn two_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `sum conj(x) y`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len(), "inner product of vectors with different lengths");
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Minimum-norm solution of a consistent system `a x = b`.
///
/// Uses a complete orthogonal decomposition: a column-pivoted QR
/// `a P = Q R` fixes the numerical rank, and a second QR of the leading rows
/// of `R` (transposed) picks the solution orthogonal to the kernel. Both
/// factorizations are Householder based; the SVD in nalgebra loses accuracy
/// on some of these systems.
///
/// Fails when `b` has a component outside the column space of `a`.
pub fn min_norm_solve(a: DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let check = a.clone();
    let n = a.ncols();
    let qr = a.col_piv_qr();
    let r = qr.r();
    let rank = (0..r.nrows().min(n))
        .take_while(|&i| r[(i, i)].norm() > SINGULAR_THRESHOLD)
        .count();
    let mut x = if rank == 0 {
        DVector::zeros(n)
    } else {
        let qtb = qr.q().adjoint() * b;
        let lead = r.rows(0, rank).adjoint();
        let lq = lead.qr();
        let w = lq
            .r()
            .adjoint()
            .solve_lower_triangular(&qtb.rows(0, rank).into_owned())
            .ok_or_else(|| Error::Internal("triangular factor is singular".into()))?;
        lq.q() * w
    };
    qr.p().inv_permute_rows(&mut x);
    let residual = max_modulus(&(&check * &x - b));
    let scale = max_modulus(b).max(1.0);
    if residual > 1e-8 * scale {
        return Err(Error::Internal(format!(
            "right-hand side leaves the range of the system (residual {residual:.3e})"
        )));
    }
    Ok(x)
}

/// Solves a square nonsingular system by LU.
pub fn lu_solve(a: DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    a.lu()
        .solve(b)
        .ok_or_else(|| Error::Internal("LU solve hit a singular matrix".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn min_norm_drops_kernel_component() {
        // [[1,1],[1,1]] x = [2,2] has min-norm solution [1,1]
        let a = DMatrix::from_element(2, 2, c(1.0));
        let b = DVector::from_element(2, c(2.0));
        let x = min_norm_solve(a, &b).unwrap();
        assert!((x[0] - c(1.0)).norm() < 1e-12);
        assert!((x[1] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn inconsistent_system_is_reported() {
        let a = DMatrix::from_element(2, 2, c(1.0));
        let b = DVector::from_vec(vec![c(1.0), c(-1.0)]);
        assert!(min_norm_solve(a, &b).is_err());
    }

    #[test]
    fn inner_conjugates_first_slot() {
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(inner(&[i], &[i]), c(1.0));
    }
}

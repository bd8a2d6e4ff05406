//! Scattering matrix from tail inflow to tail outflow, one block per
//! external face.
//!
//! Within a block the quays are listed in the order the facial walk meets
//! them. With `P h(j) = omega^{gap(j-1)} h(j-1)` the block is
//! `bc P (I - aP)^{-1} + d I`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blowup::BlowUpGraph;
use crate::coin::Coin;
use crate::error::{Error, Result};
use crate::linalg::max_modulus;
use crate::rotation_graph::FacialWalk;

/// Amplitudes at or below this are treated as zero in support sets.
pub const SUPPORT_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringBlock {
    /// Index of the external face in the face list.
    pub face: usize,
    /// Boundary indices of the quays, in walk order.
    pub quays: Vec<usize>,
    pub matrix: DMatrix<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringMatrix {
    blocks: Vec<ScatteringBlock>,
    quay_order: Vec<usize>,
}

fn shift_operator(gaps: &[usize], omega: Complex64) -> DMatrix<Complex64> {
    let k = gaps.len();
    let mut p = DMatrix::zeros(k, k);
    for j in 0..k {
        let prev = (j + k - 1) % k;
        p[(j, prev)] = omega.powu(gaps[prev] as u32);
    }
    p
}

/// The block for a face whose consecutive quays are `gaps` arcs apart.
pub fn scattering_block_from_gaps(gaps: &[usize], coin: &Coin) -> Result<DMatrix<Complex64>> {
    let k = gaps.len();
    if k == 0 {
        return Err(Error::Precondition("a scattering block needs at least one quay".into()));
    }
    let p = shift_operator(gaps, coin.omega());
    let id = DMatrix::<Complex64>::identity(k, k);
    let resolvent = (&id - &p * coin.a())
        .try_inverse()
        .ok_or_else(|| Error::Internal("I - aP is singular".into()))?;
    Ok(p * resolvent * (coin.b() * coin.c()) + id * coin.d())
}

/// The same block through the finite geometric expansion
/// `bc / (1 - a^k D) * P * sum_{m<k} (aP)^m + d I`, where `D` is the product
/// of the cycle weights of `P`.
pub fn scattering_block_series(gaps: &[usize], coin: &Coin) -> Result<DMatrix<Complex64>> {
    let k = gaps.len();
    if k == 0 {
        return Err(Error::Precondition("a scattering block needs at least one quay".into()));
    }
    let p = shift_operator(gaps, coin.omega());
    let total: usize = gaps.iter().sum();
    let cycle = coin.a().powu(k as u32) * coin.omega().powu(total as u32);
    let mut sum = DMatrix::<Complex64>::zeros(k, k);
    let mut term = DMatrix::<Complex64>::identity(k, k);
    for _ in 0..k {
        sum += &term;
        term = &term * &p * coin.a();
    }
    let id = DMatrix::<Complex64>::identity(k, k);
    Ok(p * sum * (coin.b() * coin.c() / (1.0 - cycle)) + id * coin.d())
}

/// The block of an external facial walk.
pub fn scattering_block(face: &FacialWalk, coin: &Coin) -> Result<DMatrix<Complex64>> {
    if !face.is_external() {
        return Err(Error::Precondition("internal face has no scattering block".into()));
    }
    scattering_block_from_gaps(&face.gaps(), coin)
}

/// Assembles the blocks of all external faces in face order.
pub fn scattering_matrix(bu: &BlowUpGraph, faces: &[FacialWalk], coin: &Coin) -> Result<ScatteringMatrix> {
    let g = bu.graph();
    let mut blocks = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if !f.is_external() {
            continue;
        }
        if !f.is_walk_of(g) {
            return Err(Error::Precondition("facial walk does not belong to this graph".into()));
        }
        let quays = f
            .quays()
            .iter()
            .map(|q| g.boundary_index(q.vertex).expect("quays sit on boundary vertices"))
            .collect();
        blocks.push(ScatteringBlock {
            face: i,
            quays,
            matrix: scattering_block(f, coin)?,
        });
    }
    if blocks.is_empty() {
        return Err(Error::NoExternalFace);
    }
    let quay_order = blocks.iter().flat_map(|b| b.quays.iter().copied()).collect();
    Ok(ScatteringMatrix { blocks, quay_order })
}

impl ScatteringMatrix {
    pub fn blocks(&self) -> &[ScatteringBlock] {
        &self.blocks
    }

    /// Boundary indices in block order.
    pub fn quay_order(&self) -> &[usize] {
        &self.quay_order
    }

    pub fn size(&self) -> usize {
        self.quay_order.len()
    }

    /// The full matrix with rows and columns in boundary order.
    pub fn to_boundary_order(&self) -> DMatrix<Complex64> {
        let n = self.size();
        let mut s = DMatrix::zeros(n, n);
        for b in &self.blocks {
            for (i, &qi) in b.quays.iter().enumerate() {
                for (j, &qj) in b.quays.iter().enumerate() {
                    s[(qi, qj)] = b.matrix[(i, j)];
                }
            }
        }
        s
    }

    /// Outflow for the given inflow, both in boundary order.
    pub fn apply(&self, alpha: &[Complex64]) -> Result<Vec<Complex64>> {
        if alpha.len() != self.size() {
            return Err(Error::Mismatch {
                what: "inflow",
                expected: self.size(),
                got: alpha.len(),
            });
        }
        let mut beta = vec![Complex64::new(0.0, 0.0); alpha.len()];
        for b in &self.blocks {
            for (i, &qi) in b.quays.iter().enumerate() {
                beta[qi] = b.quays.iter().enumerate().map(|(j, &qj)| b.matrix[(i, j)] * alpha[qj]).sum();
            }
        }
        Ok(beta)
    }

    /// `max |S S^* - I|` over the assembled matrix.
    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.to_boundary_order())
    }
}

pub fn unitarity_residual(s: &DMatrix<Complex64>) -> f64 {
    let n = s.nrows();
    max_modulus(&(s * s.adjoint() - DMatrix::<Complex64>::identity(n, n)))
}

/// Boundary vertices reached by a unit inflow at `source`, in vertex order.
pub fn detect_embedding(bu: &BlowUpGraph, faces: &[FacialWalk], coin: &Coin, source: usize) -> Result<Vec<usize>> {
    let g = bu.graph();
    let k = g
        .boundary_index(source)
        .ok_or_else(|| Error::NotBoundary(g.label(source).to_string()))?;
    let s = scattering_matrix(bu, faces, coin)?;
    let mut alpha = vec![Complex64::new(0.0, 0.0); s.size()];
    alpha[k] = Complex64::new(1.0, 0.0);
    let beta = s.apply(&alpha)?;
    Ok(g.boundary()
        .iter()
        .enumerate()
        .filter(|&(i, _)| beta[i].norm() > SUPPORT_THRESHOLD)
        .map(|(_, &v)| v)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> f64 {
        max_modulus(&(x - y))
    }

    #[test]
    fn single_quay_is_a_phase() {
        let coin = Coin::new(0.3, Complex64::from_polar(1.0, 0.4), 1.0).unwrap();
        let s = scattering_block_from_gaps(&[5], &coin).unwrap();
        let w5 = coin.omega().powu(5);
        let want = coin.b() * coin.c() * w5 / (1.0 - coin.a() * w5) + coin.d();
        assert!((s[(0, 0)] - want).norm() < 1e-14);
        assert!((s[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn triangle_display_at_half_coin() {
        let coin = Coin::new(0.5, Complex64::new(1.0, 0.0), 0.0).unwrap();
        let s = scattering_block_from_gaps(&[1, 1, 1], &coin).unwrap();
        let a = -0.5;
        let bc = 0.75;
        let pre = bc / (1.0 - a * a * a);
        // circulant rows (a^2, a, 1) plus d on the diagonal
        for j in 0..3 {
            assert!((s[(j, j)] - (pre * a * a + 0.5)).norm() < 1e-14);
            assert!((s[(j, (j + 1) % 3)] - pre * a).norm() < 1e-14);
            assert!((s[(j, (j + 2) % 3)] - pre).norm() < 1e-14);
        }
    }

    #[test]
    fn gaps_of_three_on_six_quays() {
        let w = Complex64::from_polar(1.0, PI / 7.0);
        let coin = Coin::new(0.6, w, 0.3).unwrap();
        let s = scattering_block_from_gaps(&[3; 6], &coin).unwrap();
        let (a, bc) = (coin.a(), coin.b() * coin.c());
        let cyc = 1.0 - a.powu(6) * w.powu(18);
        for j in 0..6 {
            for m in 1..=6 {
                let i = (j + m) % 6;
                let mut want = bc * a.powu(m as u32 - 1) * w.powu(3 * m as u32) / cyc;
                if i == j {
                    want += coin.d();
                }
                assert!((s[(i, j)] - want).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn series_matches_resolvent() {
        let coin = Coin::new(-0.7, Complex64::from_polar(1.0, 2.0), -0.4).unwrap();
        for gaps in [vec![4], vec![1, 2], vec![3, 1, 5, 2], vec![1; 6]] {
            let s = scattering_block_from_gaps(&gaps, &coin).unwrap();
            let t = scattering_block_series(&gaps, &coin).unwrap();
            assert!(close(&s, &t) < 1e-12);
            assert!(unitarity_residual(&s) < 1e-12);
        }
    }

    #[test]
    fn no_quays_is_rejected() {
        let coin = Coin::new(0.5, Complex64::new(1.0, 0.0), 0.0).unwrap();
        assert!(scattering_block_from_gaps(&[], &coin).is_err());
    }
}

//! Stationary state assembled from facial functions.
//!
//! Every external face carries a function fixed by the tail data. Internal
//! faces with `omega^|f| = 1` carry functions spanning the kernel of
//! `1 - E`; the stationary state is the sum of the external functions with
//! its projection onto that kernel removed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::blowup::{BlowUpGraph, BuArc};
use crate::coin::Coin;
use crate::dynamics::WalkOperator;
use crate::error::{Error, Result};
use crate::linalg::{inner, lu_solve, sup_distance};
use crate::rotation_graph::{DualGraph, FaceKind, FacialWalk};
use crate::scattering::scattering_matrix;

/// Tolerance on `|omega^|f| - 1|` when deciding resonance.
pub const RESONANCE_TOL: f64 = 1e-10;

/// Amplitudes over the internal arcs supported on one face.
#[derive(Clone, Debug, PartialEq)]
pub struct FacialFunction {
    pub face: FacialWalk,
    pub kind: FaceKind,
    /// Dense over [`BlowUpGraph::state_index`].
    pub values: Vec<Complex64>,
}

impl FacialFunction {
    pub fn value(&self, bu: &BlowUpGraph, arc: BuArc) -> Complex64 {
        self.values[bu.state_index(arc)]
    }

    /// State indices with a nonzero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != Complex64::new(0.0, 0.0)).collect()
    }
}

fn check_face(bu: &BlowUpGraph, f: &FacialWalk) -> Result<()> {
    if !f.is_walk_of(bu.graph()) {
        return Err(Error::Precondition("facial walk does not belong to this graph".into()));
    }
    Ok(())
}

/// Function of an internal face: along the walk the j-th bridge gets
/// `omega^j`, its reverse `d omega^j` and the island after it `b omega^j`.
pub fn internal_facial_function(bu: &BlowUpGraph, f: &FacialWalk, coin: &Coin) -> Result<FacialFunction> {
    if f.is_external() {
        return Err(Error::Precondition("external face passed as internal".into()));
    }
    check_face(bu, f)?;
    let g = bu.graph();
    let mut values = vec![Complex64::new(0.0, 0.0); bu.arc_count()];
    let mut w = Complex64::new(1.0, 0.0);
    for &a in f.arcs() {
        values[bu.state_index(BuArc::Bridge(a))] += w;
        values[bu.state_index(BuArc::Bridge(g.reverse(a)))] += coin.d() * w;
        values[bu.island_after_bridge(a)] += coin.b() * w;
        w *= coin.omega();
    }
    Ok(FacialFunction {
        face: f.clone(),
        kind: FaceKind::Internal,
        values,
    })
}

/// Function of an external face for inflow `alpha` and outflow `beta`,
/// both in boundary order.
///
/// The segment from quay `m` to quay `m+1` is scaled by
/// `eta_m = omega^{-gap} (beta(next) - d alpha(next)) / (bc)`.
pub fn external_facial_function(
    bu: &BlowUpGraph,
    f: &FacialWalk,
    coin: &Coin,
    alpha: &[Complex64],
    beta: &[Complex64],
) -> Result<FacialFunction> {
    if !f.is_external() {
        return Err(Error::Precondition("internal face passed as external".into()));
    }
    check_face(bu, f)?;
    let g = bu.graph();
    let tails = g.boundary().len();
    for (what, v) in [("inflow", alpha), ("outflow", beta)] {
        if v.len() != tails {
            return Err(Error::Mismatch {
                what,
                expected: tails,
                got: v.len(),
            });
        }
    }
    let etas = external_etas(bu, f, coin, alpha, beta);
    let mut values = vec![Complex64::new(0.0, 0.0); bu.arc_count()];
    let quays = f.quays();
    let gaps = f.gaps();
    let s = f.len();
    for (m, q) in quays.iter().enumerate() {
        let eta = etas[m];
        let pair = bu.quays()[g.boundary_index(q.vertex).expect("quay on boundary")];
        values[pair.leaving] += coin.b() * eta;
        let mut w = Complex64::new(1.0, 0.0);
        for j in 1..=gaps[m] {
            w *= coin.omega();
            let a = f.arcs()[(q.after + j) % s];
            values[bu.state_index(BuArc::Bridge(a))] += w * eta;
            values[bu.state_index(BuArc::Bridge(g.reverse(a)))] += coin.d() * w * eta;
            values[bu.island_after_bridge(a)] += coin.b() * w * eta;
        }
    }
    Ok(FacialFunction {
        face: f.clone(),
        kind: FaceKind::External,
        values,
    })
}

/// The segment amplitudes of an external face, one per quay in walk order.
pub fn external_etas(
    bu: &BlowUpGraph,
    f: &FacialWalk,
    coin: &Coin,
    alpha: &[Complex64],
    beta: &[Complex64],
) -> Vec<Complex64> {
    let g = bu.graph();
    let quays = f.quays();
    let gaps = f.gaps();
    let k = quays.len();
    (0..k)
        .map(|m| {
            let next = g.boundary_index(quays[(m + 1) % k].vertex).expect("quay on boundary");
            coin.omega().powu(gaps[m] as u32).inv() / (coin.b() * coin.c())
                * (beta[next] - coin.d() * alpha[next])
        })
        .collect()
}

/// Gram matrix of the internal facial functions from face data alone:
/// `2d m(i,j) + 2|f_i| [i = j]`, indexed by internal faces in face order.
///
/// Valid for `omega = 1` and a single external face.
pub fn gram_matrix(dual: &DualGraph, coin: &Coin) -> Result<DMatrix<f64>> {
    if (coin.omega() - 1.0).norm() > RESONANCE_TOL {
        return Err(Error::Precondition("the face-data Gram matrix needs omega = 1".into()));
    }
    if dual.external_faces().len() != 1 {
        return Err(Error::Precondition(format!(
            "the face-data Gram matrix needs one external face, found {}",
            dual.external_faces().len()
        )));
    }
    let internal = dual.internal_faces();
    let d = coin.d_real();
    Ok(DMatrix::from_fn(internal.len(), internal.len(), |i, j| {
        let (fi, fj) = (internal[i], internal[j]);
        let mut m = 2.0 * d * dual.multiplicity(fi, fj) as f64;
        if i == j {
            m += 2.0 * dual.faces()[fi].len() as f64;
        }
        m
    }))
}

/// Gram matrix `<x_i, x_j>` of the given functions.
pub fn gram_matrix_direct(functions: &[FacialFunction]) -> DMatrix<Complex64> {
    let n = functions.len();
    DMatrix::from_fn(n, n, |i, j| inner(&functions[i].values, &functions[j].values))
}

/// How [`stationary_state`] obtains the kernel coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StationaryMethod {
    /// Face-data Gram matrix; `omega = 1` and one external face only.
    Gram,
    /// Gram matrix of the constructed resonant functions; any `omega`.
    Project,
}

#[derive(Clone, Debug)]
pub struct StationaryDecomposition {
    pub psi: Vec<Complex64>,
    pub inflow: Vec<Complex64>,
    pub outflow: Vec<Complex64>,
    pub external_parts: Vec<FacialFunction>,
    /// Face indices of the external parts.
    pub external_faces: Vec<usize>,
    /// Resonant internal functions with their face indices.
    pub resonant_parts: Vec<(usize, FacialFunction)>,
    /// One coefficient per face; zero unless the face is internal and resonant.
    pub coefficients: Vec<Complex64>,
}

impl StationaryDecomposition {
    /// Largest `|<x, psi>|` over resonant internal functions `x`.
    pub fn orthogonality_residual(&self) -> f64 {
        self.resonant_parts
            .iter()
            .map(|(_, x)| inner(&x.values, &self.psi).norm())
            .fold(0.0, f64::max)
    }

    /// Sum of the external parts minus the weighted resonant parts, recomputed.
    pub fn reassemble(&self) -> Vec<Complex64> {
        let mut psi = vec![Complex64::new(0.0, 0.0); self.psi.len()];
        for x in &self.external_parts {
            for (p, v) in psi.iter_mut().zip(&x.values) {
                *p += v;
            }
        }
        for (f, x) in &self.resonant_parts {
            for (p, v) in psi.iter_mut().zip(&x.values) {
                *p -= self.coefficients[*f] * v;
            }
        }
        psi
    }
}

/// Stationary state for a constant inflow `alpha` in boundary order.
pub fn stationary_state(
    bu: &BlowUpGraph,
    faces: &[FacialWalk],
    coin: &Coin,
    alpha: &[Complex64],
    method: StationaryMethod,
) -> Result<StationaryDecomposition> {
    let g = bu.graph();
    if alpha.len() != g.boundary().len() {
        return Err(Error::Mismatch {
            what: "inflow",
            expected: g.boundary().len(),
            got: alpha.len(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let beta = if g.boundary().is_empty() {
        Vec::new()
    } else {
        scattering_matrix(bu, faces, coin)?.apply(alpha)?
    };

    let mut external_parts = Vec::new();
    let mut external_faces = Vec::new();
    let mut resonant_parts = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if f.is_external() {
            external_parts.push(external_facial_function(bu, f, coin, alpha, &beta)?);
            external_faces.push(i);
        } else if coin.omega_power_is_one(f.len(), RESONANCE_TOL) {
            resonant_parts.push((i, internal_facial_function(bu, f, coin)?));
        }
    }
    let mut psi_ex = vec![zero; bu.arc_count()];
    for x in &external_parts {
        for (p, v) in psi_ex.iter_mut().zip(&x.values) {
            *p += v;
        }
    }

    let rhs = DVector::from_iterator(
        resonant_parts.len(),
        resonant_parts.iter().map(|(_, x)| inner(&x.values, &psi_ex)),
    );
    let gram = match method {
        StationaryMethod::Gram => {
            let dual = crate::rotation_graph::dual_graph(g, faces);
            let gram = gram_matrix(&dual, coin)?;
            if resonant_parts.len() != dual.internal_faces().len() {
                return Err(Error::Internal("every internal face must be resonant at omega = 1".into()));
            }
            gram.map(|x| Complex64::new(x, 0.0))
        }
        StationaryMethod::Project => {
            let parts: Vec<FacialFunction> = resonant_parts.iter().map(|(_, x)| x.clone()).collect();
            gram_matrix_direct(&parts)
        }
    };
    let c = if resonant_parts.is_empty() {
        DVector::zeros(0)
    } else {
        lu_solve(gram, &rhs)?
    };

    let mut coefficients = vec![zero; faces.len()];
    for (k, (f, _)) in resonant_parts.iter().enumerate() {
        coefficients[*f] = c[k];
    }
    let mut dec = StationaryDecomposition {
        psi: psi_ex,
        inflow: alpha.to_vec(),
        outflow: beta,
        external_parts,
        external_faces,
        resonant_parts,
        coefficients,
    };
    dec.psi = dec.reassemble();
    Ok(dec)
}

/// External faces plus internal faces whose coefficient exceeds `tol`.
pub fn luminous_faces(dec: &StationaryDecomposition, tol: f64) -> Vec<usize> {
    let mut out: Vec<usize> = dec.external_faces.clone();
    out.extend(
        dec.resonant_parts
            .iter()
            .map(|(f, _)| *f)
            .filter(|&f| dec.coefficients[f].norm() > tol),
    );
    out.sort_unstable();
    out
}

/// External faces plus internal faces with an island arc above `tol` in `psi`.
pub fn luminous_by_support(bu: &BlowUpGraph, faces: &[FacialWalk], psi: &[Complex64], tol: f64) -> Vec<usize> {
    (0..faces.len())
        .filter(|&i| {
            faces[i].is_external()
                || faces[i]
                    .arcs()
                    .iter()
                    .any(|&a| psi[bu.island_after_bridge(a)].norm() > tol)
        })
        .collect()
}

/// `max |E x - x|` for an internal-state vector `x`.
pub fn kernel_residual(bu: &BlowUpGraph, coin: &Coin, x: &[Complex64]) -> Result<f64> {
    let op = WalkOperator::new(bu, coin);
    let alpha = vec![Complex64::new(0.0, 0.0); bu.quays().len()];
    let (next, _) = op.apply(x, &alpha)?;
    Ok(sup_distance(&next, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blow_up;
    use crate::dynamics::fixed_point_solve;
    use crate::rotation_graph::{dual_graph, parse_rotation_graph, trace_faces};
    use std::f64::consts::PI;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    const TETRA: &str = "vertex 0 : 1 * 2 3\nvertex 1 : 2 * 0 3\nvertex 2 : 0 * 1 3\nvertex 3 : 0 2 1\n";

    #[test]
    fn triangle_function_at_omega_one() {
        let g = parse_rotation_graph(TETRA).unwrap();
        let bu = blow_up(&g);
        let faces = trace_faces(&g);
        let coin = Coin::new(0.5, one(), 0.2).unwrap();
        let f = faces.iter().find(|f| !f.is_external()).unwrap();
        let x = internal_facial_function(&bu, f, &coin).unwrap();
        for &a in f.arcs() {
            assert!((x.value(&bu, BuArc::Bridge(a)) - one()).norm() < 1e-15);
            assert!((x.value(&bu, BuArc::Bridge(g.reverse(a))) - coin.d()).norm() < 1e-15);
            assert!((x.value(&bu, BuArc::Island(bu.island_after_bridge(a))) - coin.b()).norm() < 1e-15);
        }
        assert_eq!(x.support().len(), 9);
        assert!(kernel_residual(&bu, &coin, &x.values).unwrap() < 1e-12);
    }

    #[test]
    fn non_resonant_function_is_not_fixed() {
        let g = parse_rotation_graph(TETRA).unwrap();
        let bu = blow_up(&g);
        let faces = trace_faces(&g);
        let w = Complex64::from_polar(1.0, PI / 4.0);
        let coin = Coin::new(0.5, w, 0.0).unwrap();
        let f = faces.iter().find(|f| !f.is_external()).unwrap();
        let x = internal_facial_function(&bu, f, &coin).unwrap();
        let gap = (w.powu(3) - 1.0).norm();
        // the wrap-around bridge breaks the relation by |b| |omega^3 - 1|
        let rel = crate::dynamics::bridge_relation_residual(&bu, &coin, &x.values).unwrap();
        assert!(rel >= gap * coin.b().norm() - 1e-12);
        // one step moves the wrap-around bridge by |b|^2 |omega^3 - 1|
        let r = kernel_residual(&bu, &coin, &x.values).unwrap();
        assert!((r - gap * coin.b().norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn external_function_rejects_internal_face_and_bad_lengths() {
        let g = parse_rotation_graph(TETRA).unwrap();
        let bu = blow_up(&g);
        let faces = trace_faces(&g);
        let coin = Coin::new(0.5, one(), 0.0).unwrap();
        let inner_face = faces.iter().find(|f| !f.is_external()).unwrap();
        let outer = faces.iter().find(|f| f.is_external()).unwrap();
        assert!(external_facial_function(&bu, inner_face, &coin, &[one(); 3], &[one(); 3]).is_err());
        assert!(matches!(
            external_facial_function(&bu, outer, &coin, &[one(); 2], &[one(); 3]),
            Err(Error::Mismatch { .. })
        ));
        assert!(internal_facial_function(&bu, outer, &coin).is_err());
    }

    #[test]
    fn zero_inflow_gives_zero_function() {
        let g = parse_rotation_graph(TETRA).unwrap();
        let bu = blow_up(&g);
        let faces = trace_faces(&g);
        let coin = Coin::new(0.5, one(), 0.0).unwrap();
        let outer = faces.iter().find(|f| f.is_external()).unwrap();
        let z = [Complex64::new(0.0, 0.0); 3];
        let x = external_facial_function(&bu, outer, &coin, &z, &z).unwrap();
        assert!(x.support().is_empty());
    }

    #[test]
    fn tetrahedron_gram_matrix() {
        let g = parse_rotation_graph(TETRA).unwrap();
        let bu = blow_up(&g);
        let faces = trace_faces(&g);
        let dual = dual_graph(&g, &faces);
        let coin = Coin::new(0.5, one(), 0.0).unwrap();
        let m = gram_matrix(&dual, &coin).unwrap();
        let want = DMatrix::from_row_slice(3, 3, &[6.0, 1.0, 1.0, 1.0, 6.0, 1.0, 1.0, 1.0, 6.0]);
        assert!((&m - &want).amax() < 1e-12);
        let parts: Vec<_> = dual
            .internal_faces()
            .iter()
            .map(|&i| internal_facial_function(&bu, &faces[i], &coin).unwrap())
            .collect();
        let direct = gram_matrix_direct(&parts);
        assert!(crate::linalg::max_modulus(&(direct - m.map(|x| Complex64::new(x, 0.0)))) < 1e-12);
    }

    #[test]
    fn gram_needs_omega_one() {
        let g = parse_rotation_graph(TETRA).unwrap();
        let dual = dual_graph(&g, &trace_faces(&g));
        let coin = Coin::new(0.5, Complex64::from_polar(1.0, 0.1), 0.0).unwrap();
        assert!(matches!(gram_matrix(&dual, &coin), Err(Error::Precondition(_))));
    }

    #[test]
    fn both_routes_match_the_fixed_point() {
        let g = parse_rotation_graph(TETRA).unwrap();
        let bu = blow_up(&g);
        let faces = trace_faces(&g);
        let coin = Coin::new(0.5, one(), 0.0).unwrap();
        let alpha = [one(); 3];
        let fp = fixed_point_solve(&bu, &coin, &alpha).unwrap();
        for method in [StationaryMethod::Gram, StationaryMethod::Project] {
            let dec = stationary_state(&bu, &faces, &coin, &alpha, method).unwrap();
            assert!(sup_distance(&dec.psi, &fp.internal) < 1e-10);
            assert!(dec.orthogonality_residual() < 1e-10);
            assert_eq!(luminous_faces(&dec, 1e-10).len(), 4);
        }
    }

    #[test]
    fn graph_without_tails_is_dark() {
        let g = parse_rotation_graph("vertex 0 : 1 2\nvertex 1 : 2 0\nvertex 2 : 0 1\n").unwrap();
        let bu = blow_up(&g);
        let faces = trace_faces(&g);
        let coin = Coin::new(0.5, one(), 0.0).unwrap();
        let dec = stationary_state(&bu, &faces, &coin, &[], StationaryMethod::Project).unwrap();
        assert!(dec.psi.iter().all(|x| x.norm() == 0.0));
        assert!(luminous_faces(&dec, 1e-10).is_empty());
    }
}

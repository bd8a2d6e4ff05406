//! Time evolution of the walk with a constant inflow on the tails.
//!
//! Tails are folded away: every step feeds `b * alpha` into the island arc
//! leaving each pier and emits `c * psi(entering) + d * alpha` into the tail.
//! The internal state therefore follows the affine map `psi -> E psi + s`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::blowup::{BlowUpGraph, BuArc};
use crate::coin::Coin;
use crate::error::{Error, Result};
use crate::linalg::{min_norm_solve, sup_distance, sup_norm, two_norm};

/// Default convergence tolerance of [`evolve`].
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default step budget of [`evolve`].
pub const DEFAULT_MAX_STEPS: u64 = 100_000;

/// Internal amplitudes together with the tail inflow and outflow.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcState {
    /// Indexed by [`BlowUpGraph::state_index`].
    pub internal: Vec<Complex64>,
    /// Indexed by boundary order.
    pub inflow: Vec<Complex64>,
    /// Indexed by boundary order.
    pub outflow: Vec<Complex64>,
}

impl ArcState {
    /// Empty internal state with the given inflow.
    pub fn zero(bu: &BlowUpGraph, inflow: Vec<Complex64>) -> Result<Self> {
        check_len("inflow", bu.quays().len(), inflow.len())?;
        Ok(Self {
            internal: vec![Complex64::new(0.0, 0.0); bu.arc_count()],
            outflow: vec![Complex64::new(0.0, 0.0); inflow.len()],
            inflow,
        })
    }

    pub fn amplitude(&self, bu: &BlowUpGraph, arc: BuArc) -> Complex64 {
        self.internal[bu.state_index(arc)]
    }
}

fn check_len(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Mismatch { what, expected, got });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
enum Port {
    Arc(usize),
    Tail(usize),
}

#[derive(Clone, Copy, Debug)]
struct VertexRule {
    in_island: usize,
    in_other: Port,
    out_island: usize,
    out_other: Port,
}

/// The one-step evolution compiled for a blow-up graph and a coin.
#[derive(Clone, Debug)]
pub struct WalkOperator {
    rules: Vec<VertexRule>,
    arcs: usize,
    tails: usize,
    coin: Coin,
}

impl WalkOperator {
    pub fn new(bu: &BlowUpGraph, coin: &Coin) -> Self {
        let g = bu.graph();
        let mut rules = Vec::with_capacity(bu.vertex_count());
        for k in 0..bu.vertex_count() {
            let v = bu.vertex(k);
            let len = bu.island(v.vertex).len();
            let in_island = bu.island_arc(v.vertex, v.position + len - 1);
            let (in_other, out_other) = match bu.bridge_at(k) {
                Some(a) => (
                    Port::Arc(bu.state_index(BuArc::Bridge(g.reverse(a)))),
                    Port::Arc(bu.state_index(BuArc::Bridge(a))),
                ),
                None => {
                    let t = g.boundary_index(v.vertex).expect("pier on a boundary vertex");
                    (Port::Tail(t), Port::Tail(t))
                }
            };
            rules.push(VertexRule {
                in_island,
                in_other,
                out_island: k,
                out_other,
            });
        }
        Self {
            rules,
            arcs: bu.arc_count(),
            tails: bu.quays().len(),
            coin: *coin,
        }
    }

    pub fn coin(&self) -> &Coin {
        &self.coin
    }

    /// One step: returns the new internal state and the emitted outflow.
    pub fn apply(&self, psi: &[Complex64], alpha: &[Complex64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        check_len("internal state", self.arcs, psi.len())?;
        check_len("inflow", self.tails, alpha.len())?;
        let zero = Complex64::new(0.0, 0.0);
        let mut next = vec![zero; self.arcs];
        let mut beta = vec![zero; self.tails];
        for r in &self.rules {
            let y = match r.in_other {
                Port::Arc(i) => psi[i],
                Port::Tail(t) => alpha[t],
            };
            let (island, other) = self.coin.apply(psi[r.in_island], y);
            next[r.out_island] = island;
            match r.out_other {
                Port::Arc(i) => next[i] = other,
                Port::Tail(t) => beta[t] = other,
            }
        }
        Ok((next, beta))
    }

    /// The internal part `E` of the evolution and the inflow injection `B`,
    /// so that one step maps `psi` to `E psi + B alpha`.
    pub fn dense(&self) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
        let mut e = DMatrix::zeros(self.arcs, self.arcs);
        let mut b = DMatrix::zeros(self.arcs, self.tails);
        let [[ca, cb], [cc, cd]] = self.coin.matrix();
        for r in &self.rules {
            e[(r.out_island, r.in_island)] += ca;
            match r.in_other {
                Port::Arc(i) => {
                    e[(r.out_island, i)] += cb;
                    if let Port::Arc(o) = r.out_other {
                        e[(o, r.in_island)] += cc;
                        e[(o, i)] += cd;
                    }
                }
                Port::Tail(t) => b[(r.out_island, t)] += cb,
            }
        }
        (e, b)
    }

    /// Outflow `c psi(entering) + d alpha` produced from the state `psi`.
    pub fn outflow(&self, psi: &[Complex64], alpha: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(self.apply(psi, alpha)?.1)
    }
}

/// One step of the walk. The inflow is carried over unchanged.
pub fn step(bu: &BlowUpGraph, coin: &Coin, state: &ArcState) -> Result<ArcState> {
    let op = WalkOperator::new(bu, coin);
    let (internal, outflow) = op.apply(&state.internal, &state.inflow)?;
    Ok(ArcState {
        internal,
        inflow: state.inflow.clone(),
        outflow,
    })
}

/// How [`evolve_with`] advances the iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Apply the step map once per iteration.
    Stepwise,
    /// Jump to `psi_{2n} = psi_n + E^n psi_n` by repeated squaring of `E`,
    /// testing the step difference `E^n s` at each checkpoint.
    Doubling,
}

#[derive(Clone, Copy, Debug)]
pub struct EvolveOptions {
    pub tol: f64,
    pub max_steps: u64,
    pub strategy: Strategy,
    pub record_history: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_steps: DEFAULT_MAX_STEPS,
            strategy: Strategy::Stepwise,
            record_history: false,
        }
    }
}

/// Diagnostics of one evaluated iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub step: u64,
    pub sup_diff: f64,
    pub outflow_norm: f64,
}

#[derive(Clone, Debug)]
pub struct Evolution {
    pub state: ArcState,
    pub steps: u64,
    pub converged: bool,
    pub history: Vec<StepRecord>,
}

/// Iterates from the empty state until the sup-norm step difference drops
/// below `tol` or `max_steps` is used up.
pub fn evolve(bu: &BlowUpGraph, coin: &Coin, alpha: &[Complex64], tol: f64, max_steps: u64) -> Result<Evolution> {
    evolve_with(
        bu,
        coin,
        alpha,
        &EvolveOptions {
            tol,
            max_steps,
            ..Default::default()
        },
    )
}

pub fn evolve_with(bu: &BlowUpGraph, coin: &Coin, alpha: &[Complex64], opts: &EvolveOptions) -> Result<Evolution> {
    if !(opts.tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let start = ArcState::zero(bu, alpha.to_vec())?;
    let op = WalkOperator::new(bu, coin);
    let mut run = Run {
        op: &op,
        alpha,
        history: Vec::new(),
        record: opts.record_history,
    };
    let (psi, beta, steps, converged) = match opts.strategy {
        Strategy::Stepwise => run.stepwise(start.internal, 0, opts)?,
        Strategy::Doubling => run.doubling(start.internal, opts)?,
    };
    Ok(Evolution {
        state: ArcState {
            internal: psi,
            inflow: alpha.to_vec(),
            outflow: beta,
        },
        steps,
        converged,
        history: run.history,
    })
}

struct Run<'a> {
    op: &'a WalkOperator,
    alpha: &'a [Complex64],
    history: Vec<StepRecord>,
    record: bool,
}

type RunResult = (Vec<Complex64>, Vec<Complex64>, u64, bool);

impl Run<'_> {
    fn log(&mut self, step: u64, sup_diff: f64, beta: &[Complex64]) {
        if self.record {
            self.history.push(StepRecord {
                step,
                sup_diff,
                outflow_norm: two_norm(beta),
            });
        }
    }

    fn stepwise(&mut self, mut psi: Vec<Complex64>, done: u64, opts: &EvolveOptions) -> Result<RunResult> {
        let mut beta = vec![Complex64::new(0.0, 0.0); self.alpha.len()];
        let mut n = done;
        while n < opts.max_steps {
            let (next, out) = self.op.apply(&psi, self.alpha)?;
            n += 1;
            let diff = sup_distance(&next, &psi);
            psi = next;
            beta = out;
            self.log(n, diff, &beta);
            if diff < opts.tol {
                return Ok((psi, beta, n, true));
            }
        }
        if done > 0 && n == done {
            beta = self.op.outflow(&psi, self.alpha)?;
        }
        Ok((psi, beta, n, false))
    }

    fn doubling(&mut self, zero: Vec<Complex64>, opts: &EvolveOptions) -> Result<RunResult> {
        if opts.max_steps == 0 {
            let beta = vec![Complex64::new(0.0, 0.0); self.alpha.len()];
            return Ok((zero, beta, 0, false));
        }
        let (e, inject) = self.op.dense();
        let alpha = DVector::from_column_slice(self.alpha);
        let s = &inject * alpha;
        // psi_1 = s, and psi_1 - psi_0 = s
        let mut psi = s.clone();
        let mut n: u64 = 1;
        let diff = sup_norm(s.as_slice());
        let beta = self.op.outflow(zero.as_slice(), self.alpha)?;
        self.log(1, diff, &beta);
        if diff < opts.tol {
            return Ok((psi.as_slice().to_vec(), beta, 1, true));
        }
        let mut power = e.clone();
        loop {
            // psi_{n+1} - psi_n = E^n s
            let diff = sup_norm((&power * &s).as_slice());
            if n + 1 <= opts.max_steps && diff < opts.tol {
                // rounding in the squared powers can hide a slow mode, so
                // the estimate is confirmed with one true step
                let (next, beta) = self.op.apply(psi.as_slice(), self.alpha)?;
                let actual = sup_distance(&next, psi.as_slice());
                if actual < opts.tol {
                    self.log(n + 1, actual, &beta);
                    return Ok((next, beta, n + 1, true));
                }
            }
            if self.record {
                let beta = self.op.outflow(psi.as_slice(), self.alpha)?;
                self.log(n + 1, diff, &beta);
            }
            if n.saturating_mul(2) > opts.max_steps {
                return self.stepwise(psi.as_slice().to_vec(), n, opts);
            }
            psi = &psi + &power * &psi;
            power = &power * &power;
            n *= 2;
        }
    }
}

/// Solves `psi = E psi + s` directly.
///
/// `I - E` is singular whenever some internal face `f` has `omega^|f| = 1`.
/// The inflow never excites those directions, and the limit of the iteration
/// is the solution orthogonal to them, which is the minimum-norm solution.
pub fn fixed_point_solve(bu: &BlowUpGraph, coin: &Coin, alpha: &[Complex64]) -> Result<ArcState> {
    check_len("inflow", bu.quays().len(), alpha.len())?;
    let op = WalkOperator::new(bu, coin);
    let (e, inject) = op.dense();
    let n = e.nrows();
    let s = inject * DVector::from_column_slice(alpha);
    let system = DMatrix::<Complex64>::identity(n, n) - e;
    let psi = min_norm_solve(system, &s)?;
    let internal = psi.as_slice().to_vec();
    let outflow = op.outflow(&internal, alpha)?;
    Ok(ArcState {
        internal,
        inflow: alpha.to_vec(),
        outflow,
    })
}

/// Largest violation of the bridge relations satisfied by every stationary state:
/// with `e`, `e'` the island arcs entering both ends of a bridge and `x`, `x'`
/// the island arcs leaving them, `psi(x) = omega psi(e')`, `psi(x') = omega psi(e)`
/// and `psi(bridge) = (omega / b)(psi(e) + d psi(e'))`.
pub fn bridge_relation_residual(bu: &BlowUpGraph, coin: &Coin, psi: &[Complex64]) -> Result<f64> {
    check_len("internal state", bu.arc_count(), psi.len())?;
    let g = bu.graph();
    let w = coin.omega();
    let mut worst: f64 = 0.0;
    for a in 0..g.arc_count() {
        let (from, to) = bu.endpoints(BuArc::Bridge(a));
        let z1 = psi[bu.island_before_bridge(a)];
        let z1p = psi[bu.island_before_bridge(g.reverse(a))];
        let z2 = psi[from];
        let z2p = psi[to];
        let x = psi[bu.state_index(BuArc::Bridge(a))];
        worst = worst
            .max((z2 - w * z1p).norm())
            .max((z2p - w * z1).norm())
            .max((x - w / coin.b() * (z1 + coin.d() * z1p)).norm());
    }
    Ok(worst)
}

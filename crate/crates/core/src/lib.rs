//! Facial quantum walks on graphs with a rotation system.
//!
//! A rotation at every vertex fixes an embedding of the graph in a closed
//! orientable surface. Blowing each vertex up into a directed cycle that
//! follows its rotation gives a walk whose amplitudes travel along the facial
//! walks of that embedding. Tails attached to some vertices feed a constant
//! inflow into the walk and collect the outflow.
//!
//! Modules, bottom up:
//!
//! - [`rotation_graph`]: parsing, facial walks, genus, dual multiplicities
//! - [`blowup`]: the blow-up digraph and its arc indexing
//! - [`coin`]: the 2x2 unitary applied at every blow-up vertex
//! - [`dynamics`]: time evolution, iteration and the direct fixed-point solve
//! - [`scattering`]: per-face scattering blocks and the support experiment
//! - [`stationary`]: facial functions and the projected stationary state
//! - [`forest_oracle`]: the inverse Gram matrix from weighted spanning subgraphs
//! - [`cli`]: the `fqw` command line

pub mod blowup;
pub mod builtin;
pub mod cli;
pub mod coin;
pub mod dynamics;
pub mod error;
pub mod forest_oracle;
pub mod linalg;
pub mod rotation_graph;
pub mod scattering;
pub mod stationary;

pub use blowup::{blow_up, BlowUpGraph, BuArc};
pub use builtin::builtin;
pub use coin::Coin;
pub use dynamics::{evolve, fixed_point_solve, step, ArcState};
pub use error::{CoinError, Error, Result};
pub use rotation_graph::{dual_graph, genus, parse_rotation_graph, trace_faces, FacialWalk, RotationTailedGraph};
pub use scattering::{detect_embedding, scattering_matrix, ScatteringMatrix};
pub use stationary::{stationary_state, StationaryDecomposition, StationaryMethod};

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

//! Distance spectra and the distance Estrada index of connected graphs.
//!
//! The distance Estrada index of a connected graph is
//! `DEE(G) = sum_i e^{lambda_i(D)}` over the eigenvalues of its distance
//! matrix. This crate computes it with an in-tree symmetric eigensolver,
//! evaluates a catalog of lower and upper bounds on it, and checks them
//! over every connected labeled graph of small order.
//!
//! ```
//! use distance_estrada::{bounds::Analysis, graph::GraphFamily};
//!
//! let k3 = GraphFamily::Complete(3).generate().unwrap();
//! let a = Analysis::new(&k3).unwrap();
//! let closed = 2f64.exp() + 2.0 * (-1f64).exp();
//! assert!((a.dee.value - closed).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod eigen;
pub mod error;
pub mod estrada;
pub mod graph;
pub mod harness;
pub mod io;
pub mod metric;
pub mod rng;
pub mod spectra;

pub use error::{Error, Result};

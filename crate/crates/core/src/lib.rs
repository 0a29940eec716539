//! Compiles raster images into NEQR preparation circuits.
//!
//! Each bitplane of the image becomes an XOR-of-products cover over the
//! position bits, which a ternary-tree minimizer shrinks by repeatedly
//! merging `x·0 ⊕ x·1` pairs into `x·-` and rotating the variable order.
//! The surviving cubes become multi-controlled NOTs on the color lines;
//! negative controls are then turned into X-bracketed positive ones and
//! wide gates are split into two-control Toffolis over ancillas.
//!
//! ```
//! use qimg::esop::{minimize, EsopCover};
//!
//! let cover = EsopCover::parse_cubes(2, &["00", "01", "10"]).unwrap();
//! assert_eq!(minimize(&cover).cube_strings(), ["0-", "10"]);
//! ```
//!
//! Modules:
//! * [`esop`]: cubes, covers and the minimizer.
//! * [`neqr`]: image loading and bitplane extraction.
//! * [`circuit`]: gate IR, synthesis, X-gate lowering, decomposition.
//! * [`qasm`]: OpenQASM 2.0 output.
//! * [`verify`]: brute-force oracles and simulators.
//! * [`pipeline`]: the end-to-end run and its report.

pub mod circuit;
pub mod error;
pub mod esop;
pub mod neqr;
pub mod pipeline;
pub mod qasm;
pub mod verify;

pub use error::{Error, Result};

//! Companion crate to `cremona-core`: the numerical pluripotential lab, text
//! formats (config, CSV, deterministic JSON), reproduction reports, and the
//! command-line interface.
//!
//! The core crate keeps the exact lattice calculus `no_std`; everything that
//! needs floats, files, or a terminal lives here.

pub mod cli;
pub mod config;
pub mod csvio;
pub mod diag;
pub mod jsonfmt;
pub mod lab;
pub mod report;

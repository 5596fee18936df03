//! Circuit files, simulation backends, cross-validation and benchmarks built
//! on [`cl2n_core`].
//!
//! ```
//! use cl2n::{circuit::parse, run::{run, RunOptions}, backend::Backend};
//!
//! let c = parse("qubits 2\nh 0\ncnot 0 1\nmeasure 0\nmeasure 1\n").unwrap();
//! let report = run(&c, &RunOptions::new(Backend::Stabilizer, 100, 7)).unwrap();
//! assert!(report.counts.keys().all(|k| k == "00" || k == "11"));
//! ```

pub mod backend;
pub mod bench;
pub mod circuit;
pub mod error;
pub mod generate;
pub mod run;
pub mod stats;
pub mod validate;

pub use cl2n_core as core;
pub use error::{Error, Result};

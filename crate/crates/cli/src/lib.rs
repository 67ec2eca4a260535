//! Verification suites and the operation-counting bench behind the `recsum`
//! command line tool.

pub mod bench;
pub mod rng;
pub mod verify;

pub use bench::{run_bench, BenchRecord, BenchStatus};
pub use verify::{run_verify, Suite, VerifyConfig, VerifyReport};

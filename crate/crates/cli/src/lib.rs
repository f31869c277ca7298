//! Library side of the `gof` command: table reproduction, sample-file tests
//! and curve dumps.

pub mod curves;
pub mod guard;
pub mod table;
pub mod test_cmd;

pub use curves::emit_curves;
pub use guard::{check_work, WorkRefused};
pub use table::{run_table, Summary, Table, TableRow, TrialStats};
pub use test_cmd::{parse_stats, run_test, StatKind};

/// Process exit code for an error: 2 for numerical failures, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    use gof_core::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::NonFinite { .. }
                | E::NoConvergence { .. }
                | E::InvalidTolerance(_)
                | E::NotMonotone { .. }
                | E::LevelOutOfRange { .. }
                | E::OutOfDomain { .. }
                | E::NonFiniteTerm { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

//! Session scripts, reports and the `negset` command line on top of
//! [`negset_core`].

pub mod cli;
pub mod report;
pub mod session;

pub use session::{parse_session, run_session, SessionError, SessionReport, SessionScript};

//! Session language and command front end for gorsum.
//!
//! A session file declares a field, presented rings, maps, modules and
//! constructions, followed by `check` items comparing computed invariants
//! with expected values. [`parse_session`] turns text into a [`Session`];
//! [`run`] evaluates it and produces a [`Report`].

pub mod ast;
pub mod eval;
pub mod parser;
pub mod report;
pub mod run;
pub mod suite;

pub use ast::{Decl, FieldSpec, Session};
pub use eval::{Env, EvalError, Limits, Val};
pub use parser::{parse_session, SessionError};
pub use report::{Record, Report, Status};
pub use run::{run, Command};

/// Environment variable overriding the seed of `random-suite`.
pub const SEED_VAR: &str = "GORSUM_SEED";

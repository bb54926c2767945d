//! Exact composita tables of truncated generating functions, composition of
//! exponential generating functions through the composita, and the
//! integrality congruences that every prime index must satisfy.
//!
//! All coefficient arithmetic is exact ([`ExactRational`] is an
//! arbitrary-precision reduced fraction). Nothing here rounds.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated power series and their ring operations.
//! * [`numbers`]: Stirling, Bell, Euler zigzag, binomial and multinomial numbers.
//! * [`composita`]: the composita table `F^Δ(n,k)` by power-raising,
//!   by enumeration of integer compositions, and by per-family closed forms.
//! * [`composition`]: `R(F(x))` through the composita.
//! * [`congruence`]: prime-only integrality expressions, scans and
//!   compositeness witnesses.
//! * [`builtins`] and [`text`]: named series and the shared text formats.
//!
//! Data-parallel loops go through [`Execution`]; with the `parallel` feature
//! (on by default) they run on rayon, otherwise sequentially. Results are
//! identical either way.

pub mod builtins;
pub mod composita;
pub mod composition;
pub mod congruence;
mod error;
mod exec;
pub mod numbers;
pub mod series;
pub mod text;

pub use builtins::Builtin;
pub use composita::CompositaTable;
pub use congruence::{CongruenceFamily, CongruenceReport, ScanResult, Verdict, WitnessCertificate};
pub use error::{Error, Result};
pub use exec::Execution;
pub use series::{ExactRational, Series, SeriesKind};

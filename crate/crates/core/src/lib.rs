//! Power-series solutions of p-adic differential equations with separation of
//! variables, `y' = g·h(y)`, `y(0) = 0`, by Newton iteration at fixed precision.
//!
//! Working in `Z/p^λ` with `λ = κ + ⌊log_p n⌋` yields the solution mod
//! `(p^κ, t^{n+1})`; see [`dsol::plan`] and [`dsol::dsol`].
//!
//! Modules, bottom-up:
//! - [`zpfixed`]: `Z/p^λ` with the fixed-precision division rule.
//! - [`pseries`]: truncated series, fast multiplication, inverse, square root, `h(f)`.
//! - [`dsol`]: Newton operator, solver, precision planner, and the precision harness.
//! - [`apps`]: Newton sums, composed products over `F_p`, the square-root equation.

pub mod apps;
pub mod dsol;
pub mod error;
pub mod par;
pub mod pseries;
pub mod stats;
pub mod zpfixed;

pub use error::{Error, Result};
pub use par::Exec;
pub use pseries::{RhsSpec, TruncSeries};
pub use zpfixed::{PadicContext, Valuation, ZpElt};

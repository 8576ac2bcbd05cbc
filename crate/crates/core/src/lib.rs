//! Extremal sumset and difference-set sizes over finite abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: finite abelian groups in mixed-radix coordinates, divisors,
//!   invariant factors, subgroups of a given order, isomorphism classes.
//! * [`subset`]: subsets as bit vectors, with `A+B`, `A-B`, `-A`, `2±A`.
//! * [`formulas`]: closed-form values of `μ_G(r,s)`, `ρ⁺_G(r)` and the
//!   predicted `ρ⁻_G(r)`.
//! * [`constructions`]: explicit witness sets meeting the upper bounds.
//! * [`search`]: exact minima by exhaustive and branch-and-bound search,
//!   and the conjecture verifier built on top of it.
//! * [`lemmas`]: executable checks of the auxiliary combinatorial lemmas.

pub mod constructions;
pub mod error;
pub mod formulas;
pub mod group;
pub mod lemmas;
pub mod search;
pub mod subset;

pub use error::{Error, Result};
pub use group::{Element, GroupSpec};
pub use subset::{GroupSubset, Objective};

//! Change actions, differential maps and their derivative models over finite
//! carriers.
//!
//! Every carrier is a finite set `{0, …, n-1}` and every law is decided by
//! enumeration (or seeded sampling past a size bound), so definitions double
//! as executable checks.

pub mod action;
pub mod boolean;
pub mod error;
pub mod finite;
pub mod group;
pub mod incremental;
pub mod intpoly;
pub mod kleene;
pub mod limits;
pub mod map;
pub mod model;
pub mod monoid;
pub mod preorder;
pub mod tower;

pub use action::{make_monoidal, make_trivial, FiniteChangeAction};
pub use error::{Error, Result};
pub use finite::{forall_check, CheckConfig, CheckMode, CheckReport, ProductIndex, TabFun};
pub use map::{compose, identity_map, DifferentialMap, RegularityReport};
pub use model::ChangeActionModel;
pub use monoid::FiniteMonoid;

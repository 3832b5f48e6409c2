//! Truncated ω-change actions and ω-differential maps.
//!
//! A tower of depth `N` keeps the stages `A₀, …, A_N` and the change actions
//! `Δ(A, j)` between neighbours. A map keeps `f₀, …, f_N` with
//! `fⱼ : prⱼ D A → Bⱼ`, where `prⱼ₊₁ D A = prⱼ D A × prⱼ D(Π A)`. Components
//! are tables or closures, so deep towers over large carriers are only ever
//! evaluated pointwise.

mod checks;
mod iterate;
mod map;
mod product;
mod space;

pub use checks::{
    check_eps_shift, check_kappa_eps, check_kappa_eps_with, check_omega_change_action, check_omega_differential,
    LevelReport, OmegaReport, TowerReport,
};
pub use iterate::{
    canonical_shift, check_canonical_derivative, iterate_model, model_tower, pi_map, CanonicalShift, TABLE_LIMIT,
};
pub use map::{
    compose_omega, derivative_sequence, identity_omega, omega_maps_agree, tmap, Component, DerivativeSequence, OmegaMap,
};
pub use product::{pair_omega, product_omega, terminal_map_omega, OmegaProduct};
pub use space::{OmegaTower, Structure, TOWER_SPACE_LIMIT};

use crate::action::FiniteChangeAction;
use crate::error::Result;

/// `D(A, j)`, the change action on `prⱼ D A` whose changes are `prⱼ D(Π A)`.
pub fn derivative_space(t: &OmegaTower, j: usize) -> Result<FiniteChangeAction> {
    t.space(0, j).cloned()
}

/// `εʲ : prₘ₊₁ D A → prₘ D A` as a component; requires `j ≤ m < N`.
pub fn epsilon(t: &OmegaTower, j: usize, m: usize) -> Result<Component> {
    check_levels(t, j, m + 1)?;
    let t2 = t.clone();
    Ok(Component::lazy(t.size(0, m + 1), t.size(0, m), move |x| t2.eps(0, j, m, x)))
}

/// `κʲ : prₘ D A → prₘ₋ⱼ D(Πʲ A)` as a component; requires `j ≤ m ≤ N`.
pub fn kappa(t: &OmegaTower, j: usize, m: usize) -> Result<Component> {
    check_levels(t, j, m)?;
    let t2 = t.clone();
    Ok(Component::lazy(t.size(0, m), t.size(j, m - j), move |x| t2.kappa(0, j, m, x)))
}

fn check_levels(t: &OmegaTower, j: usize, m: usize) -> Result<()> {
    if m > t.depth() {
        return Err(crate::error::Error::DepthExceeded { requested: m, available: t.depth() });
    }
    if j > m {
        return Err(crate::error::Error::IndexOutOfRange { value: j, bound: m + 1 });
    }
    Ok(())
}

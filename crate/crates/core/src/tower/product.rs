use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};

use super::map::{compose_omega, OmegaMap};
use super::space::{OmegaTower, Structure};

/// `A × B` with its projections.
#[derive(Clone, Debug)]
pub struct OmegaProduct {
    pub tower: OmegaTower,
    pub proj1: OmegaMap,
    pub proj2: OmegaMap,
}

fn product_tower(a: &OmegaTower, b: &OmegaTower) -> Result<OmegaTower> {
    if a.depth() != b.depth() {
        return Err(Error::DepthMismatch(a.depth(), b.depth()));
    }
    let levels = a.levels().iter().zip(b.levels()).map(|(x, y)| FiniteChangeAction::product(x, y)).collect();
    OmegaTower::from_levels_with_limit(a.carrier(0) * b.carrier(0), levels, u128::MAX)
}

fn projections(t: &OmegaTower, a: &OmegaTower, b: &OmegaTower) -> (OmegaMap, OmegaMap) {
    let (t1, t2) = (t.clone(), t.clone());
    let (b1, b2) = (b.clone(), b.clone());
    let p1 = OmegaMap::from_fns(t.clone(), a.clone(), move |j, x| t1.kappa(0, j, j, x) / b1.carrier(j));
    let p2 = OmegaMap::from_fns(t.clone(), b.clone(), move |j, x| t2.kappa(0, j, j, x) % b2.carrier(j));
    (p1.expect("projection shapes"), p2.expect("projection shapes"))
}

/// Product without structure maps.
pub(crate) fn product_pre(a: &OmegaTower, b: &OmegaTower) -> Result<OmegaProduct> {
    let tower = product_tower(a, b)?;
    let (proj1, proj2) = projections(&tower, a, b);
    Ok(OmegaProduct { tower, proj1, proj2 })
}

/// Carriers `Aᵢ × Bᵢ`, projections `prⱼ π_𝟏 = π₁ ∘ κʲ`, and when both factors
/// carry structure maps, `⊕ⱼ` and `+ⱼ` taken componentwise after regrouping
/// `(A × B) × (A′ × B′)` as `(A × A′) × (B × B′)`.
pub fn product_omega(a: &OmegaTower, b: &OmegaTower) -> Result<OmegaProduct> {
    let pre = product_pre(a, b)?;
    let (Some(sa), Some(sb)) = (a.structure(), b.structure()) else {
        return Ok(pre);
    };
    let mut oplus = Vec::new();
    let mut plus = Vec::new();
    for j in 0..a.depth() {
        let d = a.depth() - j - 1;
        let (aj, aj1) = (a.shift_by(j)?.truncate(d)?, a.shift_by(j + 1)?);
        let (bj, bj1) = (b.shift_by(j)?.truncate(d)?, b.shift_by(j + 1)?);
        oplus.push(componentwise(&sa.oplus[j], &sb.oplus[j], (&aj, &aj1), (&bj, &bj1))?);
        plus.push(componentwise(&sa.plus[j], &sb.plus[j], (&aj1, &aj1), (&bj1, &bj1))?);
    }
    let tower = pre.tower.with_structure(Structure { oplus, plus });
    let (proj1, proj2) = projections(&tower, a, b);
    Ok(OmegaProduct { tower, proj1, proj2 })
}

/// From `u : X × X′ → Y` and `v : Z × Z′ → W`, the map
/// `(X × Z) × (X′ × Z′) → Y × W`.
fn componentwise(
    u: &OmegaMap,
    v: &OmegaMap,
    (x, x1): (&OmegaTower, &OmegaTower),
    (z, z1): (&OmegaTower, &OmegaTower),
) -> Result<OmegaMap> {
    let left = product_pre(x, z)?;
    let right = product_pre(x1, z1)?;
    let outer = product_pre(&left.tower, &right.tower)?;
    let (l, r) = (&outer.proj1, &outer.proj2);
    let xa = compose_omega(&left.proj1, l)?;
    let xb = compose_omega(&right.proj1, r)?;
    let za = compose_omega(&left.proj2, l)?;
    let zb = compose_omega(&right.proj2, r)?;
    let to_u = pair_omega(&xa, &xb)?;
    let to_v = pair_omega(&za, &zb)?;
    pair_omega(&compose_omega(u, &to_u)?, &compose_omega(v, &to_v)?)
}

/// `prⱼ ⟨f, g⟩ = ⟨fⱼ, gⱼ⟩`.
pub fn pair_omega(f: &OmegaMap, g: &OmegaMap) -> Result<OmegaMap> {
    if f.dom() != g.dom() {
        return Err(Error::DomainMismatch);
    }
    if f.depth() != g.depth() {
        return Err(Error::DepthMismatch(f.depth(), g.depth()));
    }
    let cod = product_tower(f.cod(), g.cod())?;
    let (f2, g2) = (f.clone(), g.clone());
    let m = g.cod().carriers().to_vec();
    OmegaMap::from_fns(f.dom().clone(), cod, move |j, x| f2.apply(j, x) * m[j] + g2.apply(j, x))
}

/// The unique map to the one-point tower.
pub fn terminal_map_omega(t: &OmegaTower) -> OmegaMap {
    OmegaMap::from_fns(t.clone(), OmegaTower::terminal(t.depth()), |_, _| 0).expect("constant maps fit")
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::{CheckConfig, CheckReport};
use crate::model::ChangeActionModel;

use super::checks::{check_omega_differential, OmegaReport};
use super::map::{compose_omega, omega_maps_agree, Component, OmegaMap};
use super::product::{pair_omega, product_pre};
use super::space::{OmegaTower, Structure};

fn objects<M: ChangeActionModel>(model: &M, obj: &M::Object, depth: usize) -> Result<Vec<M::Object>> {
    let mut objs = vec![obj.clone()];
    for _ in 0..depth {
        let next = model.delta(objs.last().expect("non-empty"))?;
        objs.push(next);
    }
    Ok(objs)
}

fn bare_tower<M: ChangeActionModel>(model: &M, obj: &M::Object, depth: usize, limit: u128) -> Result<OmegaTower> {
    let objs = objects(model, obj, depth)?;
    let levels: Vec<_> = objs[..depth].iter().map(|o| model.change_action(o)).collect();
    for (j, l) in levels.iter().enumerate() {
        let next = model.size(&objs[j + 1]);
        if l.changes().size() != next {
            return Err(Error::NotClosedUnderDelta(format!(
                "level {j} has {} changes but Δ of the object has {next} points",
                l.changes().size()
            )));
        }
    }
    OmegaTower::from_levels_with_limit(model.size(obj), levels, limit)
}

fn bare_map<M>(model: &Arc<M>, f: &M::Morphism, depth: usize, limit: u128) -> Result<OmegaMap>
where
    M: ChangeActionModel + Send + Sync + 'static,
    M::Morphism: Send + Sync + 'static,
{
    let dom = bare_tower(model.as_ref(), &model.dom(f), depth, limit)?;
    let cod = bare_tower(model.as_ref(), &model.cod(f), depth, limit)?;
    let mut comps = Vec::with_capacity(depth + 1);
    let mut fn_ = f.clone();
    for n in 0..=depth {
        let size = model.size(&model.dom(&fn_));
        if size != dom.size(0, n) {
            return Err(Error::NotClosedUnderDelta(format!(
                "the {n}th derivative has {size} inputs, expected {}",
                dom.size(0, n)
            )));
        }
        let (m, g) = (model.clone(), fn_.clone());
        comps.push(Component::lazy(size, cod.carrier(n), move |x| m.apply(&g, x)));
        if n < depth {
            fn_ = model.derivative(&fn_)?;
        }
    }
    OmegaMap::new(dom, cod, comps)
}

/// Components of [`iterate_model`] with at most this many inputs are tabulated.
pub const TABLE_LIMIT: usize = 1 << 16;

/// The ω-change action `α_ω(A)`: carriers `Δⁱ A`, with `⊕ⱼ = α_ω(⊕)` and
/// `+ⱼ = α_ω(+)` for the action and sum of `Δʲ A`.
pub fn model_tower<M>(model: &Arc<M>, obj: &M::Object, depth: usize, limit: u128) -> Result<OmegaTower>
where
    M: ChangeActionModel + Send + Sync + 'static,
    M::Morphism: Send + Sync + 'static,
{
    let bare = bare_tower(model.as_ref(), obj, depth, limit)?;
    let objs = objects(model.as_ref(), obj, depth)?;
    let mut oplus = Vec::with_capacity(depth);
    let mut plus = Vec::with_capacity(depth);
    for (j, o) in objs[..depth].iter().enumerate() {
        let d = depth - j - 1;
        oplus.push(bare_map(model, &model.action_map(o)?, d, u128::MAX)?);
        plus.push(bare_map(model, &model.sum_map(o)?, d, u128::MAX)?);
    }
    Ok(bare.with_structure(Structure { oplus, plus }))
}

/// `α_ω(f)`: `f₀ = f` and `fₙ₊₁ = ∂fₙ`, between the towers of its domain and
/// codomain. Fails with `SpaceTooLarge` when `|prₙ D A| > limit`.
pub fn iterate_model<M>(
    model: M,
    obj: &M::Object,
    f: &M::Morphism,
    depth: usize,
    limit: u128,
) -> Result<(OmegaTower, OmegaMap)>
where
    M: ChangeActionModel + Send + Sync + 'static,
    M::Morphism: Send + Sync + 'static,
{
    if &model.dom(f) != obj {
        return Err(Error::DimensionMismatch(format!("map is not defined on {obj:?}")));
    }
    let model = Arc::new(model);
    let dom = model_tower(&model, obj, depth, limit)?;
    let cod = model_tower(&model, &model.cod(f), depth, limit)?;
    let bare = bare_map(&model, f, depth, limit)?.materialise(TABLE_LIMIT);
    let map = OmegaMap::new(dom.clone(), cod, bare.components().to_vec())?;
    Ok((dom, map))
}

/// `Π f : A × Π A → Π B` with `prⱼ Π f = fⱼ₊₁`, using `prⱼ D(A × Π A) =
/// prⱼ₊₁ D A`.
pub fn pi_map(f: &OmegaMap) -> Result<OmegaMap> {
    let n = f.depth();
    if n == 0 {
        return Err(Error::DepthExceeded { requested: 1, available: 0 });
    }
    let dom = product_pre(&f.dom().truncate(n - 1)?, &f.dom().shift()?)?.tower;
    OmegaMap::new(dom, f.cod().shift()?, f.components()[1..].to_vec())
}

/// The shifted tower `Π A` and the structure maps `⊕₀ : A × Π A → A` and
/// `+₀ : Π A × Π A → Π A`, with their ω-differentiability reports.
#[derive(Clone, Debug)]
pub struct CanonicalShift {
    pub shifted: OmegaTower,
    pub oplus: OmegaMap,
    pub plus: OmegaMap,
    pub oplus_report: OmegaReport,
    pub plus_report: OmegaReport,
}

pub fn canonical_shift(t: &OmegaTower, cfg: &CheckConfig) -> Result<CanonicalShift> {
    let s = t.structure().ok_or(Error::NoStructureMaps)?;
    if t.depth() == 0 {
        return Err(Error::DepthExceeded { requested: 1, available: 0 });
    }
    let (oplus, plus) = (s.oplus[0].clone(), s.plus[0].clone());
    let shape = product_pre(&t.truncate(t.depth() - 1)?, &t.shift()?)?.tower;
    if oplus.dom() != &shape || oplus.cod() != &t.truncate(t.depth() - 1)? {
        return Err(Error::DimensionMismatch("⊕₀ is not a map A × Π A → A".into()));
    }
    let (oplus_report, plus_report) = (check_omega_differential(&oplus, cfg)?, check_omega_differential(&plus, cfg)?);
    Ok(CanonicalShift { shifted: t.shift()?, oplus, plus, oplus_report, plus_report })
}

/// `f ∘ ⊕_A = ⊕_B ∘ ⟨f ∘ π_𝟏, Π f⟩`, the derivative condition for `Π f` in
/// the canonical model, at depth `N − 1`; witness `[j, x]`.
pub fn check_canonical_derivative(f: &OmegaMap, cfg: &CheckConfig) -> Result<CheckReport> {
    let n = f.depth();
    if n == 0 {
        return Err(Error::DepthExceeded { requested: 1, available: 0 });
    }
    let oplus_a = f.dom().structure().ok_or(Error::NoStructureMaps)?.oplus[0].clone();
    let oplus_b = f.cod().structure().ok_or(Error::NoStructureMaps)?.oplus[0].clone();
    let f_low = f.truncate(n - 1)?;
    let lhs = compose_omega(&f_low, &oplus_a)?;
    let p = product_pre(&f.dom().truncate(n - 1)?, &f.dom().shift()?)?;
    let tangent = pair_omega(&compose_omega(&f_low, &p.proj1)?, &pi_map(f)?)?;
    let rhs = compose_omega(&oplus_b, &tangent)?;
    omega_maps_agree(&lhs, &rhs, cfg)
}

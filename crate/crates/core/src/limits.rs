//! Finite products, coproducts and the terminal object.

use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};
use crate::finite::{forall_check, CheckReport};
use crate::map::{compose, DifferentialMap};

#[derive(Debug, Clone)]
pub struct Product {
    pub object: FiniteChangeAction,
    pub proj1: DifferentialMap,
    pub proj2: DifferentialMap,
}

#[derive(Debug, Clone)]
pub struct Coproduct {
    pub object: FiniteChangeAction,
    pub inj1: DifferentialMap,
    pub inj2: DifferentialMap,
}

/// `A × B` with `π̄₁ = (π₁, π₁ ∘ π₂)` and `π̄₂ = (π₂, π₂ ∘ π₂)`.
pub fn product(a: &FiniteChangeAction, b: &FiniteChangeAction) -> Product {
    let object = FiniteChangeAction::product(a, b);
    let (nb, ndb) = (b.base_size(), b.changes().size());
    let proj1 =
        DifferentialMap::from_fns(object.clone(), a.clone(), |x| x / nb, |_, d| d / ndb).expect("projection shapes");
    let proj2 =
        DifferentialMap::from_fns(object.clone(), b.clone(), |x| x % nb, |_, d| d % ndb).expect("projection shapes");
    Product { object, proj1, proj2 }
}

/// `⟨f, g⟩ : A → B × C`.
pub fn pairing(f: &DifferentialMap, g: &DifferentialMap) -> Result<DifferentialMap> {
    if f.dom() != g.dom() {
        return Err(Error::DomainMismatch);
    }
    let object = FiniteChangeAction::product(f.cod(), g.cod());
    let (nc, ndc) = (g.cod().base_size(), g.cod().changes().size());
    DifferentialMap::from_fns(
        f.dom().clone(),
        object,
        |x| f.apply(x) * nc + g.apply(x),
        |x, d| f.derivative(x, d) * ndc + g.derivative(x, d),
    )
}

/// `f × g = ⟨f ∘ π̄₁, g ∘ π̄₂⟩`.
pub fn product_map(f: &DifferentialMap, g: &DifferentialMap) -> Result<DifferentialMap> {
    let p = product(f.dom(), g.dom());
    pairing(&compose(f, &p.proj1)?, &compose(g, &p.proj2)?)
}

/// `A + B` with `ῑ₁ = (ι₁, ⟨π₂, 0⟩)` and `ῑ₂ = (ι₂, ⟨0, π₂⟩)`.
pub fn coproduct(a: &FiniteChangeAction, b: &FiniteChangeAction) -> Coproduct {
    let object = FiniteChangeAction::coproduct(a, b);
    let na = a.base_size();
    let ndb = b.changes().size();
    let (za, zb) = (a.zero(), b.zero());
    let inj1 =
        DifferentialMap::from_fns(a.clone(), object.clone(), |x| x, |_, d| d * ndb + zb).expect("injection shapes");
    let inj2 = DifferentialMap::from_fns(b.clone(), object.clone(), |x| na + x, |_, d| za * ndb + d)
        .expect("injection shapes");
    Coproduct { object, inj1, inj2 }
}

/// `[f, g] : A + B → C`.
pub fn copairing(f: &DifferentialMap, g: &DifferentialMap) -> Result<DifferentialMap> {
    if f.cod() != g.cod() {
        return Err(Error::CompositionMismatch);
    }
    let object = FiniteChangeAction::coproduct(f.dom(), g.dom());
    let na = f.dom().base_size();
    let ndb = g.dom().changes().size();
    DifferentialMap::from_fns(
        object,
        f.cod().clone(),
        |x| if x < na { f.apply(x) } else { g.apply(x - na) },
        |x, d| if x < na { f.derivative(x, d / ndb) } else { g.derivative(x - na, d % ndb) },
    )
}

/// The one-point change action.
pub fn terminal() -> FiniteChangeAction {
    crate::action::make_trivial(1)
}

/// The unique differential map `A → ⊤`.
pub fn terminal_map(a: &FiniteChangeAction) -> DifferentialMap {
    DifferentialMap::from_fns(a.clone(), terminal(), |_| 0, |_, _| 0).expect("terminal shapes")
}

/// The point `⊤ → A` at `x`, whose only derivative is `0`.
pub fn point(a: &FiniteChangeAction, x: usize) -> Result<DifferentialMap> {
    crate::map::constant_map(&terminal(), a, x)
}

/// `∂f((a,b),(δa,δb)) = ∂f((a,b),(δa,0)) + ∂f((a⊕δa,b),(0,δb))`;
/// witness `[a, b, δa, δb]`.
pub fn partial_derivative_check(dm: &DifferentialMap) -> Result<CheckReport> {
    let (l, r) = dm.dom().product_factors().ok_or(Error::NotAProductDomain)?;
    let (na, nb) = (l.base_size(), r.base_size());
    let (nda, ndb) = (l.changes().size(), r.changes().size());
    let (za, zb) = (l.zero(), r.zero());
    let cod = dm.cod();
    Ok(forall_check(&[na, nb, nda, ndb], |t| {
        let (a, b, da, db) = (t[0], t[1], t[2], t[3]);
        let whole = dm.derivative(a * nb + b, da * ndb + db);
        let first = dm.derivative(a * nb + b, da * ndb + zb);
        let second = dm.derivative(l.act(a, da) * nb + b, za * ndb + db);
        whole == cod.plus(first, second)
    }))
}

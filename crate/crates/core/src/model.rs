//! Change action models and the tangent bundle functor.

use std::fmt;

use serde::Serialize;

use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};
use crate::finite::{forall_check, CheckReport, TabFun, EXHAUSTIVE_LIMIT};
use crate::map::{compose, identity_map, DifferentialMap};

/// A category whose objects carry change actions and whose morphisms carry
/// derivatives that are again morphisms.
///
/// Objects are finite sets addressed by index; products flatten row-major.
/// Implementations must satisfy `change_action(product(a, b)) =
/// change_action(a) × change_action(b)` and `delta(product(a, b)) =
/// product(delta(a), delta(b))`, which is what lets iterated derivatives
/// share the derivative-space indexing of towers.
pub trait ChangeActionModel: Sync {
    type Object: Clone + PartialEq + fmt::Debug;
    type Morphism: Clone + Sync;

    fn change_action(&self, obj: &Self::Object) -> FiniteChangeAction;

    /// The object whose points are the changes of `obj`.
    fn delta(&self, obj: &Self::Object) -> Result<Self::Object>;

    fn product(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;

    fn dom(&self, f: &Self::Morphism) -> Self::Object;

    fn cod(&self, f: &Self::Morphism) -> Self::Object;

    fn apply(&self, f: &Self::Morphism, x: usize) -> usize;

    /// `∂f : A × ΔA → ΔB` as a morphism of the model.
    fn derivative(&self, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn identity(&self, obj: &Self::Object) -> Self::Morphism;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn pair(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    fn proj1(&self, a: &Self::Object, b: &Self::Object) -> Self::Morphism;

    fn proj2(&self, a: &Self::Object, b: &Self::Object) -> Self::Morphism;

    /// The constant map `dom → Δtarget` at the zero change.
    fn zero(&self, dom: &Self::Object, target: &Self::Object) -> Result<Self::Morphism>;

    /// `⊕ : A × ΔA → A`.
    fn action_map(&self, obj: &Self::Object) -> Result<Self::Morphism>;

    /// `+ : ΔA × ΔA → ΔA`.
    fn sum_map(&self, obj: &Self::Object) -> Result<Self::Morphism>;

    fn size(&self, obj: &Self::Object) -> usize {
        self.change_action(obj).base_size()
    }

    fn tabulate(&self, f: &Self::Morphism) -> Result<TabFun> {
        let (n, m) = (self.size(&self.dom(f)), self.size(&self.cod(f)));
        if n as u128 > EXHAUSTIVE_LIMIT {
            return Err(Error::SpaceTooLarge { size: n as u128, bound: EXHAUSTIVE_LIMIT });
        }
        TabFun::from_fn(n, m, |x| self.apply(f, x))
    }

    /// The differential map the model assigns to `f`.
    fn differentiate(&self, f: &Self::Morphism) -> Result<DifferentialMap> {
        let df = self.derivative(f)?;
        DifferentialMap::from_parts(
            self.change_action(&self.dom(f)),
            self.change_action(&self.cod(f)),
            self.tabulate(f)?,
            self.tabulate(&df)?,
        )
    }
}

/// Extensional equality of two parallel morphisms; witness `[x]`.
pub fn morphisms_agree<M: ChangeActionModel>(model: &M, f: &M::Morphism, g: &M::Morphism) -> Result<CheckReport> {
    let (df, dg) = (model.dom(f), model.dom(g));
    if df != dg || model.cod(f) != model.cod(g) {
        return Err(Error::DimensionMismatch(format!("morphisms are not parallel: {df:?} vs {dg:?}")));
    }
    Ok(forall_check(&[model.size(&df)], |t| model.apply(f, t[0]) == model.apply(g, t[0])))
}

/// The trivial model: every set acted on by the one-point monoid, every
/// function with derivative `⋆`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialMorphism {
    pub dom: usize,
    pub table: TabFun,
}

impl TrivialMorphism {
    pub fn new(table: TabFun) -> Self {
        Self { dom: table.dom_size(), table }
    }
}

impl ChangeActionModel for TrivialModel {
    type Object = usize;
    type Morphism = TrivialMorphism;

    fn change_action(&self, obj: &usize) -> FiniteChangeAction {
        FiniteChangeAction::trivial(*obj)
    }

    fn delta(&self, _: &usize) -> Result<usize> {
        Ok(1)
    }

    fn product(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn dom(&self, f: &TrivialMorphism) -> usize {
        f.dom
    }

    fn cod(&self, f: &TrivialMorphism) -> usize {
        f.table.cod_size()
    }

    fn apply(&self, f: &TrivialMorphism, x: usize) -> usize {
        f.table.apply(x)
    }

    fn derivative(&self, f: &TrivialMorphism) -> Result<TrivialMorphism> {
        Ok(TrivialMorphism::new(TabFun::constant(f.dom, 1, 0)?))
    }

    fn identity(&self, obj: &usize) -> TrivialMorphism {
        TrivialMorphism::new(TabFun::identity(*obj))
    }

    fn compose(&self, g: &TrivialMorphism, f: &TrivialMorphism) -> Result<TrivialMorphism> {
        Ok(TrivialMorphism::new(f.table.then(&g.table)?))
    }

    fn pair(&self, f: &TrivialMorphism, g: &TrivialMorphism) -> Result<TrivialMorphism> {
        if f.dom != g.dom {
            return Err(Error::DomainMismatch);
        }
        let m = g.table.cod_size();
        Ok(TrivialMorphism::new(TabFun::from_fn(f.dom, f.table.cod_size() * m, |x| {
            f.table.apply(x) * m + g.table.apply(x)
        })?))
    }

    fn proj1(&self, a: &usize, b: &usize) -> TrivialMorphism {
        TrivialMorphism::new(TabFun::from_fn(a * b, *a, |x| x / b).expect("projection shape"))
    }

    fn proj2(&self, a: &usize, b: &usize) -> TrivialMorphism {
        TrivialMorphism::new(TabFun::from_fn(a * b, *b, |x| x % b).expect("projection shape"))
    }

    fn zero(&self, dom: &usize, _: &usize) -> Result<TrivialMorphism> {
        Ok(TrivialMorphism::new(TabFun::constant(*dom, 1, 0)?))
    }

    fn action_map(&self, obj: &usize) -> Result<TrivialMorphism> {
        Ok(self.proj1(obj, &1))
    }

    fn sum_map(&self, _: &usize) -> Result<TrivialMorphism> {
        Ok(TrivialMorphism::new(TabFun::constant(1, 1, 0)?))
    }
}

/// `TA = A × ΔA` as an object of the model.
pub fn tangent_object_id<M: ChangeActionModel>(model: &M, obj: &M::Object) -> Result<M::Object> {
    Ok(model.product(obj, &model.delta(obj)?))
}

/// The change action on `TA`.
pub fn tangent_object<M: ChangeActionModel>(model: &M, obj: &M::Object) -> Result<FiniteChangeAction> {
    Ok(model.change_action(&tangent_object_id(model, obj)?))
}

/// `Tf = ⟨f ∘ π₁, ∂f⟩` as a morphism of the model.
pub fn tangent_morphism<M: ChangeActionModel>(model: &M, f: &M::Morphism) -> Result<M::Morphism> {
    let a = model.dom(f);
    let p1 = model.proj1(&a, &model.delta(&a)?);
    model.pair(&model.compose(f, &p1)?, &model.derivative(f)?)
}

/// `Tf` tabulated on `A × ΔA`.
pub fn tangent_map<M: ChangeActionModel>(model: &M, f: &M::Morphism) -> Result<TabFun> {
    model.tabulate(&tangent_morphism(model, f)?)
}

/// `z = ⟨Id, 0⟩ : A → TA`.
pub fn tangent_unit<M: ChangeActionModel>(model: &M, obj: &M::Object) -> Result<M::Morphism> {
    model.pair(&model.identity(obj), &model.zero(obj, obj)?)
}

/// `l = ⟨⟨π₁, 0⟩, ⟨π₂, 0⟩⟩ : TA → T²A`.
pub fn tangent_lift<M: ChangeActionModel>(model: &M, obj: &M::Object) -> Result<M::Morphism> {
    let d = model.delta(obj)?;
    let t = model.product(obj, &d);
    let first = model.pair(&model.proj1(obj, &d), &model.zero(&t, obj)?)?;
    let second = model.pair(&model.proj2(obj, &d), &model.zero(&t, &d)?)?;
    model.pair(&first, &second)
}

/// A named law with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub report: CheckReport,
}

/// Outcomes of the tangent bundle monad and naturality checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonadReport {
    pub laws: Vec<LawReport>,
}

impl MonadReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.report.passed)
    }

    pub fn get(&self, law: &str) -> Option<&CheckReport> {
        self.laws.iter().find(|l| l.law == law).map(|l| &l.report)
    }

    fn push(&mut self, law: impl Into<String>, report: CheckReport) {
        self.laws.push(LawReport { law: law.into(), report });
    }
}

/// Monad laws for `(T, z, T⊕)` on `obj`, plus naturality of `π₁`, `⊕`, `z`
/// and `l` along each supplied morphism out of `obj`.
///
/// Also reports the two algebra equations `⊕_{TA} ∘ Tz = z ∘ ⊕` and
/// `⊕ ∘ T⊕ = ⊕ ∘ ⊕_{TA}`.
pub fn tangent_monad_check<M: ChangeActionModel>(
    model: &M,
    obj: &M::Object,
    morphisms: &[M::Morphism],
) -> Result<MonadReport> {
    let d = model.delta(obj)?;
    let t = model.product(obj, &d);
    let t2 = tangent_object_id(model, &t)?;
    if t2 != model.product(&t, &model.product(&d, &model.delta(&d)?)) {
        return Err(Error::NotClosedUnderDelta(format!("Δ(TA) is not ΔA × Δ²A for {obj:?}")));
    }

    let oplus = model.action_map(obj)?;
    let z = tangent_unit(model, obj)?;
    let mu = tangent_morphism(model, &oplus)?;
    let mu_t = tangent_morphism(model, &model.action_map(&t)?)?;
    let z_t = tangent_unit(model, &t)?;
    let tz = tangent_morphism(model, &z)?;
    let id_t = model.identity(&t);

    let mut out = MonadReport { laws: Vec::new() };
    out.push("left unit μ∘Tz = id", morphisms_agree(model, &model.compose(&mu, &tz)?, &id_t)?);
    out.push("right unit μ∘z_T = id", morphisms_agree(model, &model.compose(&mu, &z_t)?, &id_t)?);
    let t_mu = tangent_morphism(model, &mu)?;
    out.push(
        "associativity μ∘Tμ = μ∘μ_T",
        morphisms_agree(model, &model.compose(&mu, &t_mu)?, &model.compose(&mu, &mu_t)?)?,
    );
    let oplus_t = model.action_map(&t)?;
    out.push(
        "algebra unit ⊕∘Tz = z∘⊕",
        morphisms_agree(model, &model.compose(&oplus_t, &tz)?, &model.compose(&z, &oplus)?)?,
    );
    out.push(
        "algebra associativity ⊕∘T⊕ = ⊕∘⊕",
        morphisms_agree(model, &model.compose(&oplus, &mu)?, &model.compose(&oplus, &oplus_t)?)?,
    );

    let l_a = tangent_lift(model, obj)?;
    for (i, f) in morphisms.iter().enumerate() {
        if model.dom(f) != *obj {
            return Err(Error::DomainMismatch);
        }
        let b = model.cod(f);
        let db = model.delta(&b)?;
        let tf = tangent_morphism(model, f)?;
        let p1_a = model.proj1(obj, &d);
        let p1_b = model.proj1(&b, &db);
        out.push(
            format!("naturality of π₁ along f{i}"),
            morphisms_agree(model, &model.compose(f, &p1_a)?, &model.compose(&p1_b, &tf)?)?,
        );
        let oplus_b = model.action_map(&b)?;
        out.push(
            format!("naturality of ⊕ along f{i}"),
            morphisms_agree(model, &model.compose(f, &oplus)?, &model.compose(&oplus_b, &tf)?)?,
        );
        let z_b = tangent_unit(model, &b)?;
        out.push(
            format!("naturality of z along f{i}"),
            morphisms_agree(model, &model.compose(&tf, &z)?, &model.compose(&z_b, f)?)?,
        );
        let ttf = tangent_morphism(model, &tf)?;
        let l_b = tangent_lift(model, &b)?;
        out.push(
            format!("naturality of l along f{i}"),
            morphisms_agree(model, &model.compose(&ttf, &l_a)?, &model.compose(&l_b, &tf)?)?,
        );
    }
    Ok(out)
}

/// `φ : TA × TB → T(A × B)`, `((a, δa), (b, δb)) ↦ ((a, b), (δa, δb))`, tabulated.
pub fn tangent_product_iso<M: ChangeActionModel>(model: &M, a: &M::Object, b: &M::Object) -> Result<TabFun> {
    let (na, nda) = (model.size(a), model.size(&model.delta(a)?));
    let (nb, ndb) = (model.size(b), model.size(&model.delta(b)?));
    let n = na * nda * nb * ndb;
    TabFun::from_fn(n, n, |x| {
        let (ta, tb) = (x / (nb * ndb), x % (nb * ndb));
        let (xa, da) = (ta / nda, ta % nda);
        let (xb, db) = (tb / ndb, tb % ndb);
        (xa * nb + xb) * (nda * ndb) + da * ndb + db
    })
}

/// `φ` is a bijection and `⊕_{A×B} ∘ φ = ⊕_A × ⊕_B`.
pub fn check_tangent_products<M: ChangeActionModel>(model: &M, a: &M::Object, b: &M::Object) -> Result<MonadReport> {
    let phi = tangent_product_iso(model, a, b)?;
    let ab = model.change_action(&model.product(a, b));
    let (ca, cb) = (model.change_action(a), model.change_action(b));
    let (nb, ndb) = (cb.base_size(), cb.changes().size());
    let nda = ca.changes().size();
    let mut out = MonadReport { laws: Vec::new() };
    let bij = phi.is_permutation();
    out.push(
        "φ is a bijection",
        CheckReport {
            passed: bij,
            witness: None,
            checked: phi.dom_size() as u64,
            mode: crate::finite::CheckMode::Exhaustive,
        },
    );
    let nab_d = ab.changes().size();
    out.push(
        "⊕_{A×B} ∘ φ = ⊕_A × ⊕_B",
        forall_check(&[phi.dom_size()], |t| {
            let x = t[0];
            let (ta, tb) = (x / (nb * ndb), x % (nb * ndb));
            let lhs = {
                let y = phi.apply(x);
                ab.act(y / nab_d, y % nab_d)
            };
            let rhs = ca.act(ta / nda, ta % nda) * nb + cb.act(tb / ndb, tb % ndb);
            lhs == rhs
        }),
    );
    Ok(out)
}

/// `T(id) = id`, `T(g ∘ f) = Tg ∘ Tf`, and the same two laws for the
/// assigned differential maps.
pub fn check_functoriality<M: ChangeActionModel>(model: &M, f: &M::Morphism, g: &M::Morphism) -> Result<MonadReport> {
    let mut out = MonadReport { laws: Vec::new() };
    let a = model.dom(f);
    let id = model.identity(&a);
    out.push(
        "T(id) = id",
        morphisms_agree(model, &tangent_morphism(model, &id)?, &model.identity(&tangent_object_id(model, &a)?))?,
    );
    let gf = model.compose(g, f)?;
    let lhs = tangent_morphism(model, &gf)?;
    let rhs = model.compose(&tangent_morphism(model, g)?, &tangent_morphism(model, f)?)?;
    out.push("T(g∘f) = Tg∘Tf", morphisms_agree(model, &lhs, &rhs)?);

    let same = |x: &DifferentialMap, y: &DifferentialMap| CheckReport {
        passed: x == y,
        witness: None,
        checked: x.df().dom_size() as u64,
        mode: crate::finite::CheckMode::Exhaustive,
    };
    let did = model.differentiate(&id)?;
    out.push("α(id) = id", same(&did, &identity_map(&model.change_action(&a))));
    let dgf = model.differentiate(&gf)?;
    let chained = compose(&model.differentiate(g)?, &model.differentiate(f)?)?;
    out.push("α(g∘f) = α(g)∘α(f)", same(&dgf, &chained));
    Ok(out)
}

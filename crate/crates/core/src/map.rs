use serde::Serialize;

use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};
use crate::finite::{forall_check_with, CheckConfig, CheckReport, TabFun};

/// A function `f : A → B` with a chosen derivative `∂f : A × ΔA → ΔB`.
///
/// The derivative table is indexed `a * |ΔA| + δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialMap {
    dom: FiniteChangeAction,
    cod: FiniteChangeAction,
    f: TabFun,
    df: TabFun,
}

/// The two halves of regularity, reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// `∂f(a, 0) = 0`, witness `[a]`.
    pub zero: CheckReport,
    /// `∂f(a, δa + δb) = ∂f(a, δa) + ∂f(a ⊕ δa, δb)`, witness `[a, δa, δb]`.
    pub additive: CheckReport,
}

impl RegularityReport {
    pub fn passed(&self) -> bool {
        self.zero.passed && self.additive.passed
    }

    pub fn witness(&self) -> Option<&[usize]> {
        self.zero.witness.as_deref().or(self.additive.witness.as_deref())
    }
}

impl DifferentialMap {
    /// Bundles `f` and `∂f` after checking the derivative condition and regularity.
    pub fn new(dom: FiniteChangeAction, cod: FiniteChangeAction, f: TabFun, df: TabFun) -> Result<Self> {
        let dm = Self::from_parts(dom, cod, f, df)?;
        if let Some(w) = dm.check_derivative_condition().witness {
            return Err(Error::NotADerivative { witness: w });
        }
        if let Some(w) = dm.check_regularity().witness() {
            return Err(Error::NotRegular { witness: w.to_vec() });
        }
        Ok(dm)
    }

    /// Bundles `f` and `∂f` after shape checks only.
    pub fn from_parts(dom: FiniteChangeAction, cod: FiniteChangeAction, f: TabFun, df: TabFun) -> Result<Self> {
        let (na, nda) = (dom.base_size(), dom.changes().size());
        let (nb, ndb) = (cod.base_size(), cod.changes().size());
        if f.dom_size() != na || f.cod_size() != nb {
            return Err(Error::DimensionMismatch(format!(
                "f is {}→{}, expected {na}→{nb}",
                f.dom_size(),
                f.cod_size()
            )));
        }
        if df.dom_size() != na * nda || df.cod_size() != ndb {
            return Err(Error::DimensionMismatch(format!(
                "df is {}→{}, expected {}→{ndb}",
                df.dom_size(),
                df.cod_size(),
                na * nda
            )));
        }
        Ok(Self { dom, cod, f, df })
    }

    /// Tabulates `f` and `∂f` from closures; shape checks only.
    pub fn from_fns(
        dom: FiniteChangeAction,
        cod: FiniteChangeAction,
        f: impl Fn(usize) -> usize,
        df: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let nda = dom.changes().size();
        let f = TabFun::from_fn(dom.base_size(), cod.base_size(), f)?;
        let df = TabFun::from_fn(dom.base_size() * nda, cod.changes().size(), |i| df(i / nda, i % nda))?;
        Self::from_parts(dom, cod, f, df)
    }

    pub fn dom(&self) -> &FiniteChangeAction {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteChangeAction {
        &self.cod
    }

    pub fn f(&self) -> &TabFun {
        &self.f
    }

    pub fn df(&self) -> &TabFun {
        &self.df
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.f.apply(a)
    }

    #[inline]
    pub fn derivative(&self, a: usize, delta: usize) -> usize {
        self.df.apply(a * self.dom.changes().size() + delta)
    }

    pub fn check_derivative_condition(&self) -> CheckReport {
        self.check_derivative_condition_with(&CheckConfig::default())
    }

    pub fn check_derivative_condition_with(&self, cfg: &CheckConfig) -> CheckReport {
        derivative_condition_report(cfg, &self.dom, &self.cod, |a| self.apply(a), |a, d| self.derivative(a, d))
    }

    pub fn check_regularity(&self) -> RegularityReport {
        self.check_regularity_with(&CheckConfig::default())
    }

    pub fn check_regularity_with(&self, cfg: &CheckConfig) -> RegularityReport {
        regularity_report(cfg, &self.dom, &self.cod, |a, d| self.derivative(a, d))
    }
}

/// `∀a, δ. f(a ⊕ δ) = f(a) ⊕ ∂f(a, δ)` for closures; witness `[a, δ]`.
pub fn derivative_condition_report<F, D>(
    cfg: &CheckConfig,
    dom: &FiniteChangeAction,
    cod: &FiniteChangeAction,
    f: F,
    df: D,
) -> CheckReport
where
    F: Fn(usize) -> usize + Sync,
    D: Fn(usize, usize) -> usize + Sync,
{
    forall_check_with(cfg, &[dom.base_size(), dom.changes().size()], |t| {
        f(dom.act(t[0], t[1])) == cod.act(f(t[0]), df(t[0], t[1]))
    })
}

/// Both regularity conditions for a closure derivative.
pub fn regularity_report<D>(
    cfg: &CheckConfig,
    dom: &FiniteChangeAction,
    cod: &FiniteChangeAction,
    df: D,
) -> RegularityReport
where
    D: Fn(usize, usize) -> usize + Sync,
{
    let (na, nd) = (dom.base_size(), dom.changes().size());
    let (z_dom, z_cod) = (dom.zero(), cod.zero());
    RegularityReport {
        zero: forall_check_with(cfg, &[na], |t| df(t[0], z_dom) == z_cod),
        additive: forall_check_with(cfg, &[na, nd, nd], |t| {
            let (a, da, db) = (t[0], t[1], t[2]);
            df(a, dom.plus(da, db)) == cod.plus(df(a, da), df(dom.act(a, da), db))
        }),
    }
}

/// Checks the derivative condition for raw tables.
pub fn check_derivative_condition(
    f: &TabFun,
    df: &TabFun,
    dom: &FiniteChangeAction,
    cod: &FiniteChangeAction,
) -> Result<CheckReport> {
    let dm = DifferentialMap::from_parts(dom.clone(), cod.clone(), f.clone(), df.clone())?;
    Ok(dm.check_derivative_condition())
}

pub fn check_regularity(dm: &DifferentialMap) -> RegularityReport {
    dm.check_regularity()
}

/// `(Id_A, π₂)`.
pub fn identity_map(a: &FiniteChangeAction) -> DifferentialMap {
    DifferentialMap::from_fns(a.clone(), a.clone(), |x| x, |_, d| d).expect("identity has matching shapes")
}

/// The constant map at `value` with derivative `0`.
pub fn constant_map(dom: &FiniteChangeAction, cod: &FiniteChangeAction, value: usize) -> Result<DifferentialMap> {
    if value >= cod.base_size() {
        return Err(Error::IndexOutOfRange { value, bound: cod.base_size() });
    }
    let zero = cod.zero();
    DifferentialMap::from_fns(dom.clone(), cod.clone(), |_| value, |_, _| zero)
}

/// Chain rule: `g ∘ f` with derivative `∂g(f(a), ∂f(a, δ))`.
pub fn compose(g: &DifferentialMap, f: &DifferentialMap) -> Result<DifferentialMap> {
    if f.cod != g.dom {
        return Err(Error::CompositionMismatch);
    }
    DifferentialMap::from_fns(
        f.dom.clone(),
        g.cod.clone(),
        |a| g.apply(f.apply(a)),
        |a, d| g.derivative(f.apply(a), f.derivative(a, d)),
    )
}

/// `∀a, δ', δ. ∂f(a ⊕ δ', δ) = ∂f(a, δ)`; witness `[a, δ', δ]`.
pub fn check_stability(dm: &DifferentialMap) -> CheckReport {
    check_stability_with(dm, &CheckConfig::default())
}

pub fn check_stability_with(dm: &DifferentialMap, cfg: &CheckConfig) -> CheckReport {
    let (na, nd) = (dm.dom.base_size(), dm.dom.changes().size());
    forall_check_with(cfg, &[na, nd, nd], |t| dm.derivative(dm.dom.act(t[0], t[1]), t[2]) == dm.derivative(t[0], t[2]))
}

/// Stability of an arbitrary `u : A × B → C`, tabulated as `u[a * b_size + b]`:
/// `∀a, δ, b. u(a ⊕ δ, b) = u(a, b)`; witness `[a, δ, b]`.
pub fn check_stable_morphism(u: &TabFun, a: &FiniteChangeAction, b_size: usize) -> Result<CheckReport> {
    if u.dom_size() != a.base_size() * b_size {
        return Err(Error::DimensionMismatch(format!(
            "u has {} inputs, expected {}×{b_size}",
            u.dom_size(),
            a.base_size()
        )));
    }
    let nd = a.changes().size();
    Ok(forall_check_with(&CheckConfig::default(), &[a.base_size(), nd, b_size], |t| {
        u.apply(a.act(t[0], t[1]) * b_size + t[2]) == u.apply(t[0] * b_size + t[2])
    }))
}

/// Additivity in the change argument: `∂f(a, δa + δb) = ∂f(a, δa) + ∂f(a, δb)`.
pub fn check_additivity(dm: &DifferentialMap) -> CheckReport {
    let (na, nd) = (dm.dom.base_size(), dm.dom.changes().size());
    forall_check_with(&CheckConfig::default(), &[na, nd, nd], |t| {
        dm.derivative(t[0], dm.dom.plus(t[1], t[2]))
            == dm.cod.plus(dm.derivative(t[0], t[1]), dm.derivative(t[0], t[2]))
    })
}

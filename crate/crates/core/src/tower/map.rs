use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::{forall_check_with, CheckConfig, CheckReport, TabFun, EXHAUSTIVE_LIMIT};

use super::space::OmegaTower;

type Eval = Arc<dyn Fn(usize) -> usize + Send + Sync>;

/// One level of an ω-map: a table, or a closure when the domain is too large
/// to tabulate.
#[derive(Clone)]
pub struct Component {
    dom: usize,
    cod: usize,
    kind: Kind,
}

#[derive(Clone)]
enum Kind {
    Table(TabFun),
    Lazy(Eval),
}

impl Component {
    pub fn table(t: TabFun) -> Self {
        Self { dom: t.dom_size(), cod: t.cod_size(), kind: Kind::Table(t) }
    }

    pub fn lazy(dom: usize, cod: usize, f: impl Fn(usize) -> usize + Send + Sync + 'static) -> Self {
        Self { dom, cod, kind: Kind::Lazy(Arc::new(f)) }
    }

    pub fn dom_size(&self) -> usize {
        self.dom
    }

    pub fn cod_size(&self) -> usize {
        self.cod
    }

    pub fn is_table(&self) -> bool {
        matches!(self.kind, Kind::Table(_))
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        match &self.kind {
            Kind::Table(t) => t.apply(x),
            Kind::Lazy(f) => f(x),
        }
    }

    pub fn to_table(&self) -> Result<TabFun> {
        match &self.kind {
            Kind::Table(t) => Ok(t.clone()),
            Kind::Lazy(f) => {
                if self.dom as u128 > EXHAUSTIVE_LIMIT {
                    return Err(Error::SpaceTooLarge { size: self.dom as u128, bound: EXHAUSTIVE_LIMIT });
                }
                TabFun::from_fn(self.dom, self.cod, |x| f(x))
            }
        }
    }

    /// Tabulates when the domain has at most `limit` points.
    pub fn materialise(&self, limit: usize) -> Component {
        match &self.kind {
            Kind::Lazy(f) if self.dom <= limit => {
                Component::table(TabFun::from_fn(self.dom, self.cod, |x| f(x)).expect("values stay in range"))
            }
            _ => self.clone(),
        }
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Table(t) => write!(f, "Component::Table({:?})", t.values()),
            Kind::Lazy(_) => write!(f, "Component::Lazy({} → {})", self.dom, self.cod),
        }
    }
}

/// A pre-ω-differential map truncated at depth `N`: `fⱼ : prⱼ D A → Bⱼ` for
/// `j ≤ N`.
#[derive(Clone, Debug)]
pub struct OmegaMap {
    dom: OmegaTower,
    cod: OmegaTower,
    comps: Vec<Component>,
}

impl OmegaMap {
    pub fn new(dom: OmegaTower, cod: OmegaTower, comps: Vec<Component>) -> Result<Self> {
        if dom.depth() != cod.depth() {
            return Err(Error::DepthMismatch(dom.depth(), cod.depth()));
        }
        if comps.len() != dom.depth() + 1 {
            return Err(Error::DepthMismatch(comps.len().saturating_sub(1), dom.depth()));
        }
        for (j, c) in comps.iter().enumerate() {
            if c.dom_size() != dom.size(0, j) || c.cod_size() != cod.carrier(j) {
                return Err(Error::DimensionMismatch(format!(
                    "component {j} maps {} → {} points, expected {} → {}",
                    c.dom_size(),
                    c.cod_size(),
                    dom.size(0, j),
                    cod.carrier(j)
                )));
            }
        }
        Ok(Self { dom, cod, comps })
    }

    /// Components built from closures `fⱼ`.
    pub fn from_fns<F>(dom: OmegaTower, cod: OmegaTower, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize + Send + Sync + 'static,
    {
        let f = Arc::new(f);
        let comps = (0..=dom.depth())
            .map(|j| {
                let f = f.clone();
                Component::lazy(dom.size(0, j), cod.carrier(j), move |x| f(j, x))
            })
            .collect();
        Self::new(dom, cod, comps)
    }

    pub fn dom(&self) -> &OmegaTower {
        &self.dom
    }

    pub fn cod(&self) -> &OmegaTower {
        &self.cod
    }

    pub fn depth(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn components(&self) -> &[Component] {
        &self.comps
    }

    pub fn component(&self, j: usize) -> &Component {
        &self.comps[j]
    }

    #[inline]
    pub fn apply(&self, j: usize, x: usize) -> usize {
        self.comps[j].apply(x)
    }

    pub fn truncate(&self, n: usize) -> Result<Self> {
        Self::new(self.dom.truncate(n)?, self.cod.truncate(n)?, self.comps[..=n].to_vec())
    }

    /// Tabulates every component with at most `limit` domain points.
    pub fn materialise(&self, limit: usize) -> Self {
        Self { comps: self.comps.iter().map(|c| c.materialise(limit)).collect(), ..self.clone() }
    }

    /// `prⱼ Dⁿ f : prₙ₊ⱼ D A → prₙ D(Πʲ B)` at `x`.
    pub fn tmap(&self, n: usize, j: usize, x: usize) -> usize {
        if n == 0 {
            return self.comps[j].apply(x);
        }
        let a = self.tmap(n - 1, j, self.dom.eps(0, j, n - 1 + j, x));
        let b = self.tmap(n - 1, j + 1, x);
        a * self.cod.size(j + 1, n - 1) + b
    }
}

/// `prⱼ Dⁿ f` as a component; requires `n + j ≤ N`.
pub fn tmap(f: &OmegaMap, n: usize, j: usize) -> Result<Component> {
    if n + j > f.depth() {
        return Err(Error::DepthExceeded { requested: n + j, available: f.depth() });
    }
    let g = f.clone();
    Ok(Component::lazy(f.dom.size(0, n + j), f.cod.size(j, n), move |x| g.tmap(n, j, x)))
}

/// `prⱼ D f = ⟨fⱼ ∘ εʲ, fⱼ₊₁⟩ : prⱼ₊₁ D A → Bⱼ × Bⱼ₊₁` for `j < N`.
#[derive(Clone, Debug)]
pub struct DerivativeSequence {
    pub components: Vec<Component>,
}

pub fn derivative_sequence(f: &OmegaMap) -> Result<DerivativeSequence> {
    if f.depth() == 0 {
        return Err(Error::DepthExceeded { requested: 1, available: 0 });
    }
    let components = (0..f.depth()).map(|j| tmap(f, 1, j)).collect::<Result<_>>()?;
    Ok(DerivativeSequence { components })
}

/// `prⱼ (g ∘ f) = gⱼ ∘ pr₀ Dʲ f`; depth is preserved.
pub fn compose_omega(g: &OmegaMap, f: &OmegaMap) -> Result<OmegaMap> {
    if f.depth() != g.depth() {
        return Err(Error::DepthMismatch(g.depth(), f.depth()));
    }
    if f.cod != g.dom {
        return Err(Error::CompositionMismatch);
    }
    let comps = (0..=f.depth())
        .map(|j| {
            let (f, g) = (f.clone(), g.clone());
            Component::lazy(f.dom.size(0, j), g.cod.carrier(j), move |x| g.apply(j, f.tmap(j, 0, x)))
        })
        .collect();
    OmegaMap::new(f.dom.clone(), g.cod.clone(), comps)
}

/// `prⱼ Id = κʲ`.
pub fn identity_omega(t: &OmegaTower) -> OmegaMap {
    let t2 = t.clone();
    OmegaMap::from_fns(t.clone(), t.clone(), move |j, x| t2.kappa(0, j, j, x)).expect("κ has the right shape")
}

/// Component-wise equality; witness `[j, x]`.
pub fn omega_maps_agree(f: &OmegaMap, g: &OmegaMap, cfg: &CheckConfig) -> Result<CheckReport> {
    if f.depth() != g.depth() {
        return Err(Error::DepthMismatch(f.depth(), g.depth()));
    }
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::DimensionMismatch("ω-maps are not parallel".into()));
    }
    let mut report = CheckReport::vacuous();
    for j in 0..=f.depth() {
        let r = forall_check_with(cfg, &[f.dom.size(0, j)], |t| f.apply(j, t[0]) == g.apply(j, t[0]));
        report = report.and(CheckReport { witness: r.witness.map(|w| vec![j, w[0]]), ..r });
        if !report.passed {
            break;
        }
    }
    Ok(report)
}

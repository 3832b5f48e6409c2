use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{forall_check_with, CheckConfig, CheckReport};
use crate::map::{derivative_condition_report, regularity_report};

use super::map::OmegaMap;
use super::space::OmegaTower;

/// The derivative condition and both regularity clauses at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub derivative: CheckReport,
    pub regular_zero: CheckReport,
    pub regular_additive: CheckReport,
}

impl LevelReport {
    pub fn passed(&self) -> bool {
        self.derivative.passed && self.regular_zero.passed && self.regular_additive.passed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub levels: Vec<LevelReport>,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(LevelReport::passed)
    }

    pub fn first_failure(&self) -> Option<&LevelReport> {
        self.levels.iter().find(|l| !l.passed())
    }
}

fn level_report<F, D>(
    cfg: &CheckConfig,
    level: usize,
    dom: &crate::action::FiniteChangeAction,
    cod: &crate::action::FiniteChangeAction,
    f: F,
    df: D,
) -> LevelReport
where
    F: Fn(usize) -> usize + Sync,
    D: Fn(usize, usize) -> usize + Sync,
{
    let derivative = derivative_condition_report(cfg, dom, cod, &f, &df);
    let reg = regularity_report(cfg, dom, cod, &df);
    LevelReport { level, derivative, regular_zero: reg.zero, regular_additive: reg.additive }
}

/// For each `j < N`, `(fⱼ, fⱼ₊₁)` is a differential map `D(A, j) → Δ(B, j)`.
pub fn check_omega_differential(f: &OmegaMap, cfg: &CheckConfig) -> Result<OmegaReport> {
    let (a, b) = (f.dom(), f.cod());
    let levels = (0..f.depth())
        .map(|j| {
            let dom = a.space(0, j)?;
            let nd = a.size(1, j);
            Ok(level_report(cfg, j, dom, b.level(j)?, |x| f.apply(j, x), |x, d| f.apply(j + 1, x * nd + d)))
        })
        .collect::<Result<_>>()?;
    Ok(OmegaReport { levels })
}

/// For each `i` with `i + 2 ≤ N`, `fᵢ₊₁ ∘ εⁱ⁺¹` is a regular derivative of
/// `fᵢ ∘ εⁱ` from `D(A, i + 1)` to `Δ(B, i)`.
pub fn check_eps_shift(f: &OmegaMap, cfg: &CheckConfig) -> Result<OmegaReport> {
    let (a, b) = (f.dom(), f.cod());
    let levels = (0..f.depth().saturating_sub(1))
        .map(|i| {
            let dom = a.space(0, i + 1)?;
            let nd = a.size(1, i + 1);
            Ok(level_report(
                cfg,
                i,
                dom,
                b.level(i)?,
                |x| f.apply(i, a.eps(0, i, i, x)),
                |x, d| f.apply(i + 1, a.eps(0, i + 1, i + 1, x * nd + d)),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(OmegaReport { levels })
}

/// `κʲ ∘ εʲ = π₁ ∘ κʲ` on `prⱼ₊₁ D A`; witness `[x]`.
pub fn check_kappa_eps(t: &OmegaTower, j: usize) -> Result<CheckReport> {
    check_kappa_eps_with(t, j, &CheckConfig::default())
}

pub fn check_kappa_eps_with(t: &OmegaTower, j: usize, cfg: &CheckConfig) -> Result<CheckReport> {
    if j + 1 > t.depth() {
        return Err(Error::DepthExceeded { requested: j + 1, available: t.depth() });
    }
    let next = t.carrier(j + 1);
    Ok(forall_check_with(cfg, &[t.size(0, j + 1)], |x| {
        t.kappa(0, j, j, t.eps(0, j, j, x[0])) == t.kappa(0, j, j + 1, x[0]) / next
    }))
}

/// Every level and every structure map of a tower: the levels are change
/// actions, and each `⊕ⱼ` and `+ⱼ` is ω-differential with `pr₀` matching
/// `Δ(A, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub oplus: Vec<OmegaReport>,
    pub plus: Vec<OmegaReport>,
    /// `pr₀ ⊕ⱼ` and `pr₀ +ⱼ` agree with the action and sum of `Δ(A, j)`.
    pub consistent: Vec<CheckReport>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.oplus.iter().chain(&self.plus).all(OmegaReport::passed) && self.consistent.iter().all(|r| r.passed)
    }
}

pub fn check_omega_change_action(t: &OmegaTower, cfg: &CheckConfig) -> Result<TowerReport> {
    let s = t.structure().ok_or(Error::NoStructureMaps)?;
    let mut report = TowerReport { oplus: Vec::new(), plus: Vec::new(), consistent: Vec::new() };
    for j in 0..t.depth() {
        let (o, p) = (&s.oplus[j], &s.plus[j]);
        report.oplus.push(check_omega_differential(o, cfg)?);
        report.plus.push(check_omega_differential(p, cfg)?);
        let level = t.level(j)?;
        let (na, nd) = (level.base_size(), level.changes().size());
        let act = forall_check_with(cfg, &[na, nd], |x| o.apply(0, x[0] * nd + x[1]) == level.act(x[0], x[1]));
        let sum = forall_check_with(cfg, &[nd, nd], |x| p.apply(0, x[0] * nd + x[1]) == level.plus(x[0], x[1]));
        report.consistent.push(act.and(sum));
    }
    Ok(report)
}

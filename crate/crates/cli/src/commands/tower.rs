use std::path::Path;

use change_actions::group::{FiniteGroup, GroupModel, GroupMorphism};
use change_actions::kleene::{parse_poly, KleeneModel};
use change_actions::tower::{
    check_canonical_derivative, check_eps_shift, check_kappa_eps_with, check_omega_change_action,
    check_omega_differential, compose_omega, identity_omega, iterate_model, omega_maps_agree, LevelReport, OmegaMap,
    OmegaReport, TABLE_LIMIT,
};
use change_actions::{CheckReport, TabFun};

use super::{all, calculus};
use crate::doc::{load, TowerMapDoc};
use crate::error::{CliError, Result};
use crate::{Context, Report};

#[derive(Debug, Clone, Copy)]
pub struct TowerChecks {
    pub assoc: bool,
    pub id: bool,
}

/// `|prⱼ D A| = c^(2^j)` for `j ≤ depth`, saturating.
fn sizes(carrier: usize, depth: usize) -> Vec<u128> {
    let mut out = vec![carrier as u128];
    for _ in 0..depth {
        let s = *out.last().unwrap();
        out.push(s.saturating_mul(s));
    }
    out
}

fn build(model: &str, doc: TowerMapDoc, depth: usize, ctx: &Context) -> Result<OmegaMap> {
    let carrier = |c: usize| -> Result<()> {
        let s = sizes(c, depth);
        if s.iter().any(|&n| n > ctx.max_space) {
            let listed: Vec<_> = s.iter().map(u128::to_string).collect();
            return Err(CliError::Resource(format!(
                "derivative spaces of sizes {} exceed --max-space {}",
                listed.join(", "),
                ctx.max_space
            )));
        }
        Ok(())
    };
    if let Some(k) = model.strip_prefix("group:Z") {
        let k: usize =
            k.parse().ok().filter(|&k| k > 0).ok_or_else(|| CliError::Input(format!("bad group `{model}`")))?;
        let f = match doc {
            TowerMapDoc { f: Some(f), poly: None, .. } => f,
            _ => return Err(CliError::Input("a group map document needs `f` and no `poly`".into())),
        };
        if f.len() != k {
            return Err(CliError::Input(format!("`f` has {} entries; Z{k} has {k} elements", f.len())));
        }
        carrier(k)?;
        let g = FiniteGroup::cyclic(k);
        let m = GroupMorphism::from_table(g.clone(), g.clone(), TabFun::new(k, f)?)?;
        let (_, map) = iterate_model(GroupModel::new(vec![g.clone()])?, &g, &m, depth, ctx.max_space)?;
        Ok(map)
    } else if let Some(alg) = model.strip_prefix("kleene:") {
        let k = calculus::algebra(alg)?;
        let src = match doc {
            TowerMapDoc { poly: Some(p), f: None, .. } => p,
            _ => return Err(CliError::Input("a Kleene map document needs `poly` and no `f`".into())),
        };
        carrier(k.size())?;
        let model = KleeneModel::new(k);
        let m = model.morphism(1, vec![parse_poly(&src)?])?;
        let (_, map) = iterate_model(model, &1, &m, depth, ctx.max_space)?;
        Ok(map)
    } else {
        Err(CliError::Input(format!("unknown model `{model}`; expected group:Zk or kleene:ALGEBRA")))
    }
}

fn joint(l: &LevelReport) -> CheckReport {
    all([l.derivative.clone(), l.regular_zero.clone(), l.regular_additive.clone()])
}

fn levels(r: &mut Report, prefix: &str, report: &OmegaReport) {
    for l in &report.levels {
        r.check(format!("{prefix} {}", l.level), &joint(l));
    }
}

pub fn tower(model: &str, map: &Path, depth: usize, checks: TowerChecks, ctx: &Context) -> Result<Report> {
    let f = build(model, load::<TowerMapDoc>(map)?, depth, ctx)?;
    let mut r = Report::new("tower");
    let carriers: Vec<_> = f.components().iter().map(|c| c.dom_size()).collect();
    r.line("model", model);
    r.line("depth", depth.to_string());
    r.line("|prⱼ D A|", format!("{carriers:?}"));
    r.field("model", model);
    r.field("depth", depth);
    r.field("spaces", &carriers);

    levels(&mut r, "ω-differential at level", &check_omega_differential(&f, &ctx.cfg)?);
    levels(&mut r, "ε-shift at level", &check_eps_shift(&f, &ctx.cfg)?);
    let t = check_omega_change_action(f.dom(), &ctx.cfg)?;
    for j in 0..depth {
        let structure = t.oplus[j].levels.iter().chain(&t.plus[j].levels).map(joint);
        r.check(format!("⊕{j} and +{j} are ω-differential"), &all(structure.chain([t.consistent[j].clone()])));
        r.check(format!("κ{j} ∘ ε{j} = π₁ ∘ κ{j}"), &check_kappa_eps_with(f.dom(), j, &ctx.cfg)?);
    }
    if depth >= 1 {
        r.check("canonical derivative", &check_canonical_derivative(&f, &ctx.cfg)?);
    }
    if checks.id {
        let (ia, ib) = (identity_omega(f.dom()), identity_omega(f.cod()));
        r.check("id ∘ f = f", &omega_maps_agree(&compose_omega(&ib, &f)?, &f, &ctx.cfg)?);
        r.check("f ∘ id = f", &omega_maps_agree(&compose_omega(&f, &ia)?, &f, &ctx.cfg)?);
    }
    if checks.assoc {
        let ff = compose_omega(&f, &f)?.materialise(TABLE_LIMIT);
        let left = compose_omega(&ff, &f)?;
        let right = compose_omega(&f, &ff)?;
        r.check("(f ∘ f) ∘ f = f ∘ (f ∘ f)", &omega_maps_agree(&left, &right, &ctx.cfg)?);
        levels(&mut r, "f ∘ f ω-differential at level", &check_omega_differential(&ff, &ctx.cfg)?);
    }
    Ok(r)
}

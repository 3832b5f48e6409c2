use std::path::Path;

use change_actions::incremental::incremental_fold;
use change_actions::map::check_stability_with;
use change_actions::{DifferentialMap, FiniteChangeAction};

use crate::doc::{load, ActionDoc, MapDoc};
use crate::error::Result;
use crate::{Context, Report};

fn load_action(path: &Path, ctx: &Context, what: &str) -> Result<FiniteChangeAction> {
    load::<ActionDoc>(path)?.to_action(ctx.max_space, what)
}

fn load_map(dom: &Path, cod: &Path, map: &Path, ctx: &Context) -> Result<DifferentialMap> {
    let (a, b) = (load_action(dom, ctx, "domain")?, load_action(cod, ctx, "codomain")?);
    load::<MapDoc>(map)?.to_map(&a, &b)
}

pub fn check_action(path: &Path, ctx: &Context) -> Result<Report> {
    let a = load::<ActionDoc>(path)?.to_action_unchecked(ctx.max_space)?;
    let mut r = Report::new("check-action");
    r.line("points", a.base_size().to_string());
    r.line("changes", a.changes().size().to_string());
    r.field("points", a.base_size());
    r.field("changes", a.changes().size());
    for (law, report) in a.law_reports() {
        let name = if law.starts_with("action") { law.to_string() } else { format!("monoid {law}") };
        r.check(name, &report);
    }
    Ok(r)
}

pub fn check_map(dom: &Path, cod: &Path, map: &Path, require_stable: bool, ctx: &Context) -> Result<Report> {
    let dm = load_map(dom, cod, map, ctx)?;
    let mut r = Report::new("check-map");
    r.check("derivative condition", &dm.check_derivative_condition_with(&ctx.cfg));
    let reg = dm.check_regularity_with(&ctx.cfg);
    r.check("regularity: zero", &reg.zero);
    r.check("regularity: additive", &reg.additive);
    if require_stable {
        r.check("stability", &check_stability_with(&dm, &ctx.cfg));
    }
    Ok(r)
}

pub fn incr(dom: &Path, cod: &Path, map: &Path, start: usize, changes: &[usize], ctx: &Context) -> Result<Report> {
    let dm = load_map(dom, cod, map, ctx)?;
    let fold = incremental_fold(&dm, start, changes)?;
    let mut r = Report::new("incr");
    for (i, s) in fold.trace.iter().enumerate() {
        r.raw(format!("step {i}: a = {}, y = {}, δ = {}, dy = {}", s.a, s.y, s.delta, s.dy));
    }
    r.line("final input", fold.input.to_string());
    r.line("maintained output", fold.output.to_string());
    r.line("recomputed output", fold.recomputed.to_string());
    r.verdict("incremental = recomputed", fold.consistent());
    r.field("trace", &fold.trace);
    r.field("input", fold.input);
    r.field("output", fold.output);
    r.field("recomputed", fold.recomputed);
    Ok(r)
}

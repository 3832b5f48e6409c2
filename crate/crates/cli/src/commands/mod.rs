mod calculus;
mod maps;
mod tower;

use change_actions::CheckReport;

use crate::error::Result;
use crate::{Command, Context, Report};

pub fn dispatch(cmd: &Command, ctx: &Context) -> Result<Report> {
    match cmd {
        Command::CheckAction { path } => maps::check_action(path, ctx),
        Command::CheckMap { dom, cod, map, require_stable } => maps::check_map(dom, cod, map, *require_stable, ctx),
        Command::Incr { dom, cod, map, start, changes } => maps::incr(dom, cod, map, *start, changes, ctx),
        Command::Fd { expr, at, delta, table } => calculus::fd(expr, at.as_ref(), delta, table.as_deref(), ctx),
        Command::Bool { vars, table, dvar } => calculus::boolean(*vars, table, *dvar),
        Command::Kpoly { algebra, poly, dvar, taylor, regular, nonadd } => calculus::kpoly(
            algebra,
            poly.as_deref(),
            dvar.as_deref(),
            calculus::KpolyChecks { taylor: *taylor, regular: *regular, nonadd: *nonadd },
        ),
        Command::Tower { model, map, depth, check_assoc, check_id } => {
            tower::tower(model, map, *depth, tower::TowerChecks { assoc: *check_assoc, id: *check_id }, ctx)
        }
    }
}

/// Combines reports in order; the first failure wins.
fn all(reports: impl IntoIterator<Item = CheckReport>) -> CheckReport {
    reports.into_iter().fold(CheckReport::vacuous(), CheckReport::and)
}

use change_actions::boolean::{boolean_derivative, boolean_equivalence_check, BoolFn};
use change_actions::intpoly::{difference_table, finite_difference, IntExpr};
use change_actions::kleene::{
    kleene_regularity_check, make_boolean_ka, make_tropical_ka, make_unary_language_ka, nonadditivity_witness,
    parse_poly, taylor_check, KleeneAlgebra, KleenePoly,
};
use num_bigint::BigInt;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::{Context, Report};

pub fn fd(expr: &str, at: Option<&BigInt>, delta: &BigInt, table: Option<&[BigInt]>, ctx: &Context) -> Result<Report> {
    let e = IntExpr::parse(expr)?;
    if at.is_none() && table.is_none() {
        return Err(CliError::Input("one of --at or --table is required".into()));
    }
    let mut r = Report::new("fd");
    r.field("expr", expr);
    r.field("delta", delta.to_string());
    if let Some(x) = at {
        let v = finite_difference(&e, x, delta)?;
        r.line(&format!("∂f({x}, {delta})"), v.to_string());
        r.field("at", x.to_string());
        r.field("value", v.to_string());
    }
    if let Some([lo, hi]) = table {
        let width = hi - lo;
        if width > BigInt::from(ctx.max_space) {
            return Err(CliError::Resource(format!("table of {width} rows exceeds --max-space {}", ctx.max_space)));
        }
        let rows = difference_table(&e, lo, hi, delta)?;
        for (x, v) in &rows {
            r.line(&format!("∂f({x}, {delta})"), v.to_string());
        }
        let rows: Vec<_> = rows.iter().map(|(x, v)| [x.to_string(), v.to_string()]).collect();
        r.field("table", rows);
    }
    Ok(r)
}

pub fn boolean(vars: usize, table: &str, dvar: usize) -> Result<Report> {
    let f = BoolFn::from_bits(vars, table)?;
    if dvar == 0 || dvar > vars {
        return Err(CliError::Input(format!("--dvar must be between 1 and {vars}")));
    }
    let d = boolean_derivative(&f, dvar)?;
    let mut r = Report::new("bool");
    r.line(&format!("∂f/∂x{dvar}"), d.to_bits());
    r.field("derivative", d.to_bits());
    r.check(format!("agrees with ∂f(u, ⊤{dvar})"), &boolean_equivalence_check(&f, dvar)?);
    Ok(r)
}

pub(super) fn algebra(spec: &str) -> Result<KleeneAlgebra> {
    let bound = |s: &str| s.parse::<usize>().map_err(|_| CliError::Input(format!("bad algebra bound `{s}`")));
    match spec.split_once(':') {
        None if spec == "boolean" => Ok(make_boolean_ka()),
        Some(("tropical", b)) => Ok(make_tropical_ka(bound(b)?)?),
        Some(("unary", n)) => Ok(make_unary_language_ka(bound(n)?)?),
        _ => Err(CliError::Input(format!("unknown algebra `{spec}`; expected boolean, tropical:B or unary:N"))),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KpolyChecks {
    pub taylor: bool,
    pub regular: bool,
    pub nonadd: bool,
}

fn variable(src: &str) -> Result<usize> {
    match parse_poly(src)? {
        KleenePoly::Var(i) => Ok(i),
        _ => Err(CliError::Input(format!("`{src}` is not a variable"))),
    }
}

pub fn kpoly(spec: &str, poly: Option<&str>, dvar: Option<&str>, checks: KpolyChecks) -> Result<Report> {
    let k = algebra(spec)?;
    let mut r = Report::new("kpoly");
    r.line("algebra", k.name());
    r.field("algebra", k.name());
    match poly {
        Some(src) => {
            let p = parse_poly(src)?;
            p.resolve(&k)?;
            let i = dvar.map(variable).transpose()?.unwrap_or(0);
            let d = p.derivative(i);
            let var = KleenePoly::Var(i).to_string();
            r.line("poly", p.to_string());
            r.line(&format!("∂/∂{var}"), d.to_string());
            r.field("poly", p.to_string());
            r.field("variable", &var);
            r.field("derivative", d.to_string());
            if checks.taylor {
                r.check("taylor", &taylor_check(&p, &k)?);
            }
            if checks.regular {
                r.check("regularity", &kleene_regularity_check(&p, &k)?);
            }
        }
        None if checks.taylor || checks.regular || dvar.is_some() || !checks.nonadd => {
            return Err(CliError::Input("--poly is required".into()));
        }
        None => {}
    }
    if checks.nonadd {
        match nonadditivity_witness(&k)? {
            Some(w) => {
                let l = |x: usize| k.label(x).to_string();
                r.line(
                    "non-additive",
                    format!(
                        "p = {}, a = {}, b = {}, c = {}: ∂p(a, b + c) = {} > ∂p(a, b) + ∂p(a, c) = {}",
                        w.poly,
                        l(w.a),
                        l(w.b),
                        l(w.c),
                        l(w.joint),
                        l(w.split)
                    ),
                );
                r.field(
                    "nonadditivity",
                    json!({
                        "poly": w.poly, "a": l(w.a), "b": l(w.b), "c": l(w.c),
                        "joint": l(w.joint), "split": l(w.split),
                    }),
                );
            }
            None => {
                r.line("non-additive", "none among x.x and unary polynomials of at most 5 nodes");
                r.field("nonadditivity", serde_json::Value::Null);
            }
        }
    }
    Ok(r)
}

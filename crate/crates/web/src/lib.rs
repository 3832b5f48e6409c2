//! Browser bindings for three derivative calculators.
//!
//! Each export takes plain strings and returns a JSON object, either the
//! result or `{"error": "..."}`, so the page needs no glue beyond `JSON.parse`.

use change_actions::boolean::{boolean_derivative as bool_derivative, boolean_equivalence_check, BoolFn};
use change_actions::intpoly::{finite_difference as fd, IntExpr};
use change_actions::kleene::{
    kleene_regularity_check, make_boolean_ka, make_tropical_ka, make_unary_language_ka, parse_poly, taylor_check,
    KleeneAlgebra,
};
use change_actions::CheckReport;
use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn verdict(r: &CheckReport) -> Value {
    json!({ "passed": r.passed, "witness": r.witness, "checked": r.checked })
}

fn int(s: &str, what: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("{what} must be an integer"))
}

/// `f(x + δ) − f(x)` for an integer polynomial in `x`.
#[wasm_bindgen]
pub fn finite_difference(expr: &str, at: &str, delta: &str) -> String {
    respond((|| {
        let e = IntExpr::parse(expr).map_err(|e| e.to_string())?;
        let (x, d) = (int(at, "x")?, int(delta, "δ")?);
        let v = fd(&e, &x, &d).map_err(|e| e.to_string())?;
        let row = |x: &BigInt| fd(&e, x, &d).map(|v| json!([x.to_string(), v.to_string()]));
        let table: Vec<Value> =
            (-3..=3).map(|k| row(&(&x + k))).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        Ok(json!({ "value": v.to_string(), "table": table }))
    })())
}

/// `∂f/∂xᵢ` of a truth table with `x1` as the most significant bit.
#[wasm_bindgen]
pub fn boolean_derivative(vars: usize, bits: &str, dvar: usize) -> String {
    respond((|| {
        let f = BoolFn::from_bits(vars, bits.trim()).map_err(|e| e.to_string())?;
        if dvar == 0 || dvar > vars {
            return Err(format!("variable must be between 1 and {vars}"));
        }
        let d = bool_derivative(&f, dvar).map_err(|e| e.to_string())?;
        let check = boolean_equivalence_check(&f, dvar).map_err(|e| e.to_string())?;
        Ok(json!({ "derivative": d.to_bits(), "group": verdict(&check) }))
    })())
}

fn algebra(spec: &str) -> Result<KleeneAlgebra, String> {
    let bound = |s: &str| s.parse::<usize>().map_err(|_| format!("bad bound `{s}`"));
    match spec.split_once(':') {
        None if spec == "boolean" => Ok(make_boolean_ka()),
        Some(("tropical", b)) => make_tropical_ka(bound(b)?).map_err(|e| e.to_string()),
        Some(("unary", n)) => make_unary_language_ka(bound(n)?).map_err(|e| e.to_string()),
        _ => Err(format!("unknown algebra `{spec}`")),
    }
}

/// The formal derivative of a unary Kleene polynomial, with its Taylor and
/// regularity checks.
#[wasm_bindgen]
pub fn kleene_derivative(algebra_spec: &str, poly: &str) -> String {
    respond((|| {
        let k = algebra(algebra_spec.trim())?;
        let p = parse_poly(poly).map_err(|e| e.to_string())?;
        if p.arity() > 1 {
            return Err("only polynomials in x are supported here".into());
        }
        let taylor = taylor_check(&p, &k).map_err(|e| e.to_string())?;
        let regular = kleene_regularity_check(&p, &k).map_err(|e| e.to_string())?;
        let witness =
            |r: &CheckReport| r.witness.as_ref().map(|w| w.iter().map(|&i| k.label(i).to_string()).collect::<Vec<_>>());
        Ok(json!({
            "poly": p.to_string(),
            "derivative": p.derivative(0).to_string(),
            "taylor": { "passed": taylor.passed, "witness": witness(&taylor), "checked": taylor.checked },
            "regular": { "passed": regular.passed, "witness": witness(&regular), "checked": regular.checked },
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn differences() {
        let v = parse(finite_difference("x^3", "2", "3"));
        assert_eq!(v["value"], "117");
        assert_eq!(v["table"][3], json!(["2", "117"]));
        assert!(parse(finite_difference("x^", "0", "1"))["error"].is_string());
        assert!(parse(finite_difference("x", "two", "1"))["error"].is_string());
    }

    #[test]
    fn boolean() {
        let v = parse(boolean_derivative(2, "0001", 1));
        assert_eq!(v["derivative"], "0101");
        assert_eq!(v["group"]["passed"], true);
        assert!(parse(boolean_derivative(2, "0001", 3))["error"].is_string());
    }

    #[test]
    fn kleene() {
        let v = parse(kleene_derivative("boolean", "x.x"));
        assert_eq!(v["derivative"], "x.1 + x.1");
        assert_eq!(v["taylor"]["passed"], true);
        let v = parse(kleene_derivative("tropical:10", "x* + 3.x"));
        assert_eq!(v["regular"]["passed"], true);
        assert!(parse(kleene_derivative("boolean", "x.y"))["error"].is_string());
        assert!(parse(kleene_derivative("reals", "x"))["error"].is_string());
    }
}

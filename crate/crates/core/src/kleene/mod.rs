//! Polynomials over finite commutative Kleene algebras and their formal
//! derivatives.
//!
//! Not to be confused with Brzozowski derivatives of regular expressions:
//! here `∂/∂x` obeys the Leibniz rule and `∂p*/∂x = p*·∂p/∂x`.

mod algebra;
mod model;
mod parse;
mod poly;

pub use algebra::{make_boolean_ka, make_tropical_ka, make_unary_language_ka, KleeneAlgebra, KleeneTables};
pub use model::{KleeneModel, PolyMorphism};
pub use parse::parse_poly;
pub use poly::{enumerate_unary, KleenePoly};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{forall_check, CheckReport};

/// `∂p(a, b) = b · ∂p/∂x(a + b)` for unary `p`.
pub fn unary_model_derivative(p: &KleenePoly, k: &KleeneAlgebra, a: usize, b: usize) -> Result<usize> {
    let d = p.derivative(0).eval(&[k.plus(a, b)], k)?;
    Ok(k.times(b, d))
}

fn require_unary(p: &KleenePoly) -> Result<()> {
    if p.arity() > 1 {
        return Err(Error::DimensionMismatch(format!("`{p}` is not unary")));
    }
    Ok(())
}

/// `p(a + b) = p(a) + b·∂p/∂x(a + b)` for all `a`, `b`.
///
/// Unary polynomials report witnesses `[a, b]`. With `m > 1` variables each
/// `xᵢ` is checked with the others held at every value, and the witness is
/// `[i, x₁, …, xₘ, b]` with `xᵢ = a`.
pub fn taylor_check(p: &KleenePoly, k: &KleeneAlgebra) -> Result<CheckReport> {
    p.resolve(k)?;
    let n = k.size();
    let m = p.arity().max(1);
    let ev = |q: &KleenePoly, env: &[usize]| q.eval(env, k).expect("constants and variables are resolved");
    let mut report = CheckReport::vacuous();
    for i in 0..m {
        let d = p.derivative(i);
        let r = forall_check(&vec![n; m + 1], |t| {
            let (env, b) = (&t[..m], t[m]);
            let mut shifted = env.to_vec();
            shifted[i] = k.plus(env[i], b);
            ev(p, &shifted) == k.plus(ev(p, env), k.times(b, ev(&d, &shifted)))
        });
        let r = if m == 1 {
            r
        } else {
            CheckReport { witness: r.witness.map(|w| std::iter::once(i).chain(w).collect()), ..r }
        };
        report = report.and(r);
        if !report.passed {
            break;
        }
    }
    Ok(report)
}

/// `∂p(u+a+b)·(a+b) = ∂p(u+a)·a + ∂p(u+a+b)·b` over all `(u, a, b)`; witness
/// `[u, a, b]`.
pub fn kleene_regularity_check(p: &KleenePoly, k: &KleeneAlgebra) -> Result<CheckReport> {
    require_unary(p)?;
    p.resolve(k)?;
    let d = p.derivative(0);
    let dv = |x: usize| d.eval(&[x], k).expect("constants are resolved");
    let n = k.size();
    Ok(forall_check(&[n, n, n], |t| {
        let (u, a, b) = (t[0], t[1], t[2]);
        let (ua, uab) = (k.plus(u, a), k.plus(k.plus(u, a), b));
        k.times(dv(uab), k.plus(a, b)) == k.plus(k.times(dv(ua), a), k.times(dv(uab), b))
    }))
}

/// `∂p(a, b + c) > ∂p(a, b) + ∂p(a, c)`, strictly in the Kleene order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonAdditivity {
    pub poly: String,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `∂p(a, b + c)`.
    pub joint: usize,
    /// `∂p(a, b) + ∂p(a, c)`.
    pub split: usize,
}

/// Tries `x.x` first, then every unary polynomial of up to five nodes; returns
/// the first strict non-additivity found.
pub fn nonadditivity_witness(k: &KleeneAlgebra) -> Result<Option<NonAdditivity>> {
    let square = KleenePoly::times(KleenePoly::Var(0), KleenePoly::Var(0));
    let n = k.size();
    for p in std::iter::once(square).chain(enumerate_unary(5, &[])) {
        let table = (0..n * n).map(|i| unary_model_derivative(&p, k, i / n, i % n)).collect::<Result<Vec<_>>>()?;
        let dp = |a: usize, b: usize| table[a * n + b];
        let r = forall_check(&[n, n, n], |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            !k.lt(k.plus(dp(a, b), dp(a, c)), dp(a, k.plus(b, c)))
        });
        if let Some(w) = r.witness {
            let (a, b, c) = (w[0], w[1], w[2]);
            return Ok(Some(NonAdditivity {
                poly: p.to_string(),
                a,
                b,
                c,
                joint: dp(a, k.plus(b, c)),
                split: k.plus(dp(a, b), dp(a, c)),
            }));
        }
    }
    Ok(None)
}

/// `(a + b)* = a*·b*`, which holds in every commutative Kleene algebra;
/// witness `[a, b]`.
pub fn star_sum_check(k: &KleeneAlgebra) -> CheckReport {
    let n = k.size();
    forall_check(&[n, n], |t| k.star(k.plus(t[0], t[1])) == k.times(k.star(t[0]), k.star(t[1])))
}

use std::fmt;

use crate::error::{Error, Result};

use super::algebra::KleeneAlgebra;

/// A polynomial over a commutative Kleene algebra.
///
/// `Zero` and `One` are the algebra's units; `Lit` is any other constant,
/// resolved against an algebra at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KleenePoly {
    Zero,
    One,
    Lit(String),
    Var(usize),
    Plus(Box<KleenePoly>, Box<KleenePoly>),
    Times(Box<KleenePoly>, Box<KleenePoly>),
    Star(Box<KleenePoly>),
}

impl KleenePoly {
    pub fn var(i: usize) -> Self {
        KleenePoly::Var(i)
    }

    pub fn lit(s: impl Into<String>) -> Self {
        KleenePoly::Lit(s.into())
    }

    pub fn plus(l: KleenePoly, r: KleenePoly) -> Self {
        KleenePoly::Plus(Box::new(l), Box::new(r))
    }

    pub fn times(l: KleenePoly, r: KleenePoly) -> Self {
        KleenePoly::Times(Box::new(l), Box::new(r))
    }

    pub fn star(p: KleenePoly) -> Self {
        KleenePoly::Star(Box::new(p))
    }

    /// `Σ ps`, or `0` when empty.
    pub fn sum(ps: impl IntoIterator<Item = KleenePoly>) -> Self {
        ps.into_iter().reduce(KleenePoly::plus).unwrap_or(KleenePoly::Zero)
    }

    /// One more than the largest variable index, or 0 for a constant.
    pub fn arity(&self) -> usize {
        match self {
            KleenePoly::Zero | KleenePoly::One | KleenePoly::Lit(_) => 0,
            KleenePoly::Var(i) => i + 1,
            KleenePoly::Plus(l, r) | KleenePoly::Times(l, r) => l.arity().max(r.arity()),
            KleenePoly::Star(p) => p.arity(),
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            KleenePoly::Zero | KleenePoly::One | KleenePoly::Lit(_) | KleenePoly::Var(_) => 1,
            KleenePoly::Plus(l, r) | KleenePoly::Times(l, r) => 1 + l.nodes() + r.nodes(),
            KleenePoly::Star(p) => 1 + p.nodes(),
        }
    }

    pub fn eval(&self, env: &[usize], k: &KleeneAlgebra) -> Result<usize> {
        Ok(match self {
            KleenePoly::Zero => k.zero(),
            KleenePoly::One => k.one(),
            KleenePoly::Lit(s) => k.literal(s).ok_or_else(|| Error::UnknownConstant(s.clone()))?,
            KleenePoly::Var(i) => match env.get(*i) {
                Some(&v) if v < k.size() => v,
                Some(&v) => return Err(Error::IndexOutOfRange { value: v, bound: k.size() }),
                None => return Err(Error::UnboundVariable(*i)),
            },
            KleenePoly::Plus(l, r) => k.plus(l.eval(env, k)?, r.eval(env, k)?),
            KleenePoly::Times(l, r) => k.times(l.eval(env, k)?, r.eval(env, k)?),
            KleenePoly::Star(p) => k.star(p.eval(env, k)?),
        })
    }

    /// Checks that every constant names an element of `k`.
    pub fn resolve(&self, k: &KleeneAlgebra) -> Result<()> {
        match self {
            KleenePoly::Lit(s) if k.literal(s).is_none() => Err(Error::UnknownConstant(s.clone())),
            KleenePoly::Plus(l, r) | KleenePoly::Times(l, r) => {
                l.resolve(k)?;
                r.resolve(k)
            }
            KleenePoly::Star(p) => p.resolve(k),
            _ => Ok(()),
        }
    }

    /// `∂p/∂xᵢ`, unsimplified.
    pub fn derivative(&self, i: usize) -> KleenePoly {
        match self {
            KleenePoly::Zero | KleenePoly::One | KleenePoly::Lit(_) => KleenePoly::Zero,
            KleenePoly::Var(j) if *j == i => KleenePoly::One,
            KleenePoly::Var(_) => KleenePoly::Zero,
            KleenePoly::Plus(l, r) => KleenePoly::plus(l.derivative(i), r.derivative(i)),
            KleenePoly::Times(p, q) => KleenePoly::plus(
                KleenePoly::times((**p).clone(), q.derivative(i)),
                KleenePoly::times((**q).clone(), p.derivative(i)),
            ),
            KleenePoly::Star(p) => KleenePoly::times(self.clone(), p.derivative(i)),
        }
    }

    /// Replaces `xᵢ` by `args[i]`.
    pub fn substitute(&self, args: &[KleenePoly]) -> Result<KleenePoly> {
        Ok(match self {
            KleenePoly::Var(i) => args.get(*i).cloned().ok_or(Error::UnboundVariable(*i))?,
            KleenePoly::Plus(l, r) => KleenePoly::plus(l.substitute(args)?, r.substitute(args)?),
            KleenePoly::Times(l, r) => KleenePoly::times(l.substitute(args)?, r.substitute(args)?),
            KleenePoly::Star(p) => KleenePoly::star(p.substitute(args)?),
            c => c.clone(),
        })
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        let own = match self {
            KleenePoly::Plus(..) => 0,
            KleenePoly::Times(..) => 1,
            _ => 2,
        };
        if own < prec {
            write!(f, "(")?;
        }
        match self {
            KleenePoly::Zero => write!(f, "0")?,
            KleenePoly::One => write!(f, "1")?,
            KleenePoly::Lit(s) => write!(f, "{s}")?,
            KleenePoly::Var(0) => write!(f, "x")?,
            KleenePoly::Var(1) => write!(f, "y")?,
            KleenePoly::Var(i) => write!(f, "x{}", i + 1)?,
            KleenePoly::Plus(l, r) => {
                l.fmt_prec(f, 0)?;
                write!(f, " + ")?;
                r.fmt_prec(f, 1)?;
            }
            KleenePoly::Times(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, ".")?;
                r.fmt_prec(f, 2)?;
            }
            KleenePoly::Star(p) => {
                p.fmt_prec(f, 2)?;
                write!(f, "*")?;
            }
        }
        if own < prec {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for KleenePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// All unary polynomials with at most `max_nodes` nodes over the leaves
/// `x`, `0`, `1` and `constants`.
pub fn enumerate_unary(max_nodes: usize, constants: &[KleenePoly]) -> Vec<KleenePoly> {
    let mut by_size: Vec<Vec<KleenePoly>> = vec![Vec::new()];
    for n in 1..=max_nodes {
        let mut here = Vec::new();
        if n == 1 {
            here.extend([KleenePoly::Var(0), KleenePoly::Zero, KleenePoly::One]);
            here.extend(constants.iter().cloned());
        } else {
            here.extend(by_size[n - 1].iter().map(|p| KleenePoly::star(p.clone())));
            for l in 1..n - 1 {
                for a in &by_size[l] {
                    for b in &by_size[n - 1 - l] {
                        here.push(KleenePoly::plus(a.clone(), b.clone()));
                        here.push(KleenePoly::times(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(here);
    }
    by_size.into_iter().flatten().collect()
}

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::{forall_check, CheckReport};

/// A finite commutative Kleene algebra given by tables.
///
/// Elements are indices `0..size`. `leq(a, b)` is `a + b = b`.
#[derive(Clone)]
pub struct KleeneAlgebra(Arc<Inner>);

struct Inner {
    name: String,
    size: usize,
    plus: Vec<usize>,
    times: Vec<usize>,
    star: Vec<usize>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
    literals: Vec<(String, usize)>,
}

/// The raw tables of a Kleene algebra, before validation.
pub struct KleeneTables {
    pub name: String,
    pub size: usize,
    pub plus: Vec<usize>,
    pub times: Vec<usize>,
    pub star: Vec<usize>,
    pub zero: usize,
    pub one: usize,
    /// Display names, one per element.
    pub labels: Vec<String>,
    /// Extra spellings accepted by the polynomial parser.
    pub literals: Vec<(String, usize)>,
}

impl KleeneAlgebra {
    /// Validates every axiom, including the two star induction rules.
    pub fn from_tables(t: KleeneTables) -> Result<Self> {
        let n = t.size;
        let shape_ok = t.plus.len() == n * n
            && t.times.len() == n * n
            && t.star.len() == n
            && t.labels.len() == n
            && t.zero < n
            && t.one < n;
        if !shape_ok {
            return Err(Error::DimensionMismatch(format!("Kleene algebra tables do not match size {n}")));
        }
        let all = t.plus.iter().chain(&t.times).chain(&t.star).chain(t.literals.iter().map(|(_, v)| v));
        if let Some(&v) = all.into_iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { value: v, bound: n });
        }
        let k = KleeneAlgebra(Arc::new(Inner {
            name: t.name,
            size: n,
            plus: t.plus,
            times: t.times,
            star: t.star,
            zero: t.zero,
            one: t.one,
            labels: t.labels,
            literals: t.literals,
        }));
        for (axiom, r) in k.axiom_reports() {
            if let Some(witness) = r.witness {
                return Err(Error::KleeneAxiomViolation { axiom, witness });
            }
        }
        Ok(k)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.0.plus[a * self.0.size + b]
    }

    pub fn times(&self, a: usize, b: usize) -> usize {
        self.0.times[a * self.0.size + b]
    }

    pub fn star(&self, a: usize) -> usize {
        self.0.star[a]
    }

    pub fn zero(&self) -> usize {
        self.0.zero
    }

    pub fn one(&self) -> usize {
        self.0.one
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.plus(a, b) == b
    }

    /// Strict order: `a ≤ b` and `a ≠ b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.0.labels[a]
    }

    /// Resolves a constant as written in polynomial syntax.
    pub fn literal(&self, s: &str) -> Option<usize> {
        self.0
            .labels
            .iter()
            .position(|l| l == s)
            .or_else(|| self.0.literals.iter().find(|(l, _)| l == s).map(|&(_, v)| v))
    }

    /// One report per axiom; witnesses are element tuples.
    pub fn axiom_reports(&self) -> Vec<(&'static str, CheckReport)> {
        let n = self.size();
        let (p, t) = (|a, b| self.plus(a, b), |a, b| self.times(a, b));
        let (zero, one) = (self.zero(), self.one());
        vec![
            ("+ associative", forall_check(&[n, n, n], |x| p(p(x[0], x[1]), x[2]) == p(x[0], p(x[1], x[2])))),
            ("+ commutative", forall_check(&[n, n], |x| p(x[0], x[1]) == p(x[1], x[0]))),
            ("+ idempotent", forall_check(&[n], |x| p(x[0], x[0]) == x[0])),
            ("0 unit of +", forall_check(&[n], |x| p(zero, x[0]) == x[0])),
            ("· associative", forall_check(&[n, n, n], |x| t(t(x[0], x[1]), x[2]) == t(x[0], t(x[1], x[2])))),
            ("· commutative", forall_check(&[n, n], |x| t(x[0], x[1]) == t(x[1], x[0]))),
            ("1 unit of ·", forall_check(&[n], |x| t(one, x[0]) == x[0])),
            ("0 annihilates", forall_check(&[n], |x| t(zero, x[0]) == zero)),
            ("distributivity", forall_check(&[n, n, n], |x| t(x[0], p(x[1], x[2])) == p(t(x[0], x[1]), t(x[0], x[2])))),
            ("star unfold left", forall_check(&[n], |x| p(one, t(x[0], self.star(x[0]))) == self.star(x[0]))),
            ("star unfold right", forall_check(&[n], |x| p(one, t(self.star(x[0]), x[0])) == self.star(x[0]))),
            (
                "star induction left",
                forall_check(&[n, n, n], |x| {
                    let (a, b, c) = (x[0], x[1], x[2]);
                    !self.leq(p(b, t(a, c)), c) || self.leq(t(self.star(a), b), c)
                }),
            ),
            (
                "star induction right",
                forall_check(&[n, n, n], |x| {
                    let (a, b, c) = (x[0], x[1], x[2]);
                    !self.leq(p(b, t(c, a)), c) || self.leq(t(b, self.star(a)), c)
                }),
            ),
        ]
    }
}

impl fmt::Debug for KleeneAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KleeneAlgebra({}, {} elements)", self.0.name, self.0.size)
    }
}

impl PartialEq for KleeneAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.size == other.0.size
                && self.0.plus == other.0.plus
                && self.0.times == other.0.times
                && self.0.star == other.0.star
                && self.0.zero == other.0.zero
                && self.0.one == other.0.one)
    }
}

fn tables(size: usize, op: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..size * size).map(|i| op(i / size, i % size)).collect()
}

/// `{0, 1}` with `∨`, `∧` and `a* = 1`.
pub fn make_boolean_ka() -> KleeneAlgebra {
    KleeneAlgebra::from_tables(KleeneTables {
        name: "boolean".into(),
        size: 2,
        plus: tables(2, |a, b| a | b),
        times: tables(2, |a, b| a & b),
        star: vec![1, 1],
        zero: 0,
        one: 1,
        labels: vec!["0".into(), "1".into()],
        literals: Vec::new(),
    })
    .expect("the two-element Kleene algebra satisfies its axioms")
}

/// Min-plus over `{∞, 0, 1, …, B}` with addition saturating at `B`.
///
/// Index 0 is `∞` (the Kleene zero) and index `i + 1` is the number `i`, so the
/// Kleene one is index 1. Integers parse as numbers and `inf` as `∞`.
pub fn make_tropical_ka(bound: usize) -> Result<KleeneAlgebra> {
    if bound == 0 {
        return Err(Error::DomainError("tropical bound must be at least 1".into()));
    }
    let size = bound + 2;
    let value = |a: usize| if a == 0 { None } else { Some(a - 1) };
    let index = |v: Option<usize>| v.map_or(0, |v| v + 1);
    let min = |a: usize, b: usize| match (value(a), value(b)) {
        (None, _) => b,
        (_, None) => a,
        (Some(x), Some(y)) => index(Some(x.min(y))),
    };
    let add = |a: usize, b: usize| match (value(a), value(b)) {
        (Some(x), Some(y)) => index(Some((x + y).min(bound))),
        _ => 0,
    };
    let mut labels = vec!["inf".to_string()];
    labels.extend((0..=bound).map(|i| i.to_string()));
    KleeneAlgebra::from_tables(KleeneTables {
        name: format!("tropical:{bound}"),
        size,
        plus: tables(size, min),
        times: tables(size, add),
        star: vec![1; size],
        zero: 0,
        one: 1,
        labels,
        literals: vec![("∞".into(), 0)],
    })
}

/// Sets of `{0, …, N}` under union and saturating Minkowski sum; `a*` is the
/// submonoid generated by `a`.
///
/// Elements are bit masks. `u3` names the singleton `{3}`; `0` and `1` name
/// `∅` and `{0}`.
pub fn make_unary_language_ka(n: usize) -> Result<KleeneAlgebra> {
    if !(1..=5).contains(&n) {
        return Err(Error::DomainError(format!("unary language bound {n} must lie in 1..=5")));
    }
    let size = 1usize << (n + 1);
    let sum = |a: usize, b: usize| {
        let mut out = 0;
        for i in (0..=n).filter(|i| a >> i & 1 == 1) {
            for j in (0..=n).filter(|j| b >> j & 1 == 1) {
                out |= 1 << (i + j).min(n);
            }
        }
        out
    };
    let star = (0..size)
        .map(|a| {
            let mut acc = 1;
            loop {
                let next = acc | sum(acc, a);
                if next == acc {
                    return acc;
                }
                acc = next;
            }
        })
        .collect();
    let labels = (0..size)
        .map(|a| {
            let elems: Vec<String> = (0..=n).filter(|i| a >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("{{{}}}", elems.join(","))
        })
        .collect();
    let mut literals: Vec<(String, usize)> = (0..=n).map(|i| (format!("u{i}"), 1 << i)).collect();
    literals.push(("0".into(), 0));
    literals.push(("1".into(), 1));
    KleeneAlgebra::from_tables(KleeneTables {
        name: format!("unary:{n}"),
        size,
        plus: tables(size, |a, b| a | b),
        times: tables(size, sum),
        star,
        zero: 0,
        one: 1,
        labels,
        literals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_basics() {
        let k = make_boolean_ka();
        assert_eq!(k.plus(1, 1), 1);
        assert!(k.leq(0, 1) && !k.leq(1, 0));
        assert_eq!(k.star(0), 1);
    }

    #[test]
    fn tropical_saturates_and_orders() {
        let k = make_tropical_ka(5).unwrap();
        let num = |i: usize| k.literal(&i.to_string()).unwrap();
        assert_eq!(k.times(num(3), num(4)), num(5));
        assert!(k.leq(num(2), num(1)));
        assert!(!k.leq(num(1), num(2)));
        assert_eq!(k.literal("inf"), Some(k.zero()));
        assert_eq!(num(0), k.one());
        assert!(make_tropical_ka(0).is_err());
        assert!(make_tropical_ka(10).is_ok());
    }

    #[test]
    fn unary_language_star() {
        let k = make_unary_language_ka(4).unwrap();
        let u2 = k.literal("u2").unwrap();
        // {2}* = {0, 2, 4} once 4 saturates
        assert_eq!(k.label(k.star(u2)), "{0,2,4}");
        assert_eq!(k.label(k.times(u2, u2)), "{4}");
        assert_eq!(k.literal("0"), Some(0));
    }

    #[test]
    fn broken_tables_are_rejected() {
        // ∧ as + is not idempotent-with-unit-0 on {0, 1}
        let r = KleeneAlgebra::from_tables(KleeneTables {
            name: "bad".into(),
            size: 2,
            plus: vec![0, 0, 0, 1],
            times: vec![0, 0, 0, 1],
            star: vec![1, 1],
            zero: 0,
            one: 1,
            labels: vec!["0".into(), "1".into()],
            literals: Vec::new(),
        });
        assert!(matches!(r, Err(Error::KleeneAxiomViolation { axiom: "0 unit of +", .. })));
    }

    #[test]
    fn star_must_be_least() {
        // a* = 1 is wrong on the unary algebra: {1}* must contain 1
        let k = make_unary_language_ka(2).unwrap();
        let n = k.size();
        let r = KleeneAlgebra::from_tables(KleeneTables {
            name: "bad-star".into(),
            size: n,
            plus: tables(n, |a, b| k.plus(a, b)),
            times: tables(n, |a, b| k.times(a, b)),
            star: vec![1; n],
            zero: 0,
            one: 1,
            labels: (0..n).map(|a| k.label(a).to_string()).collect(),
            literals: Vec::new(),
        });
        assert!(matches!(r, Err(Error::KleeneAxiomViolation { axiom: "star unfold left", .. })));
    }
}

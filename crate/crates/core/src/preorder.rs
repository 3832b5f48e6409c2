//! Reachability preorders, monotonicity and the quotient by reachability.

use petgraph::unionfind::UnionFind;

use crate::action::FiniteChangeAction;
use crate::finite::{forall_check, CheckReport, TabFun};

/// A relation on `{0, …, n-1}` stored as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    n: usize,
    leq: Vec<bool>,
}

impl Preorder {
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.leq(x, x))
    }

    pub fn is_transitive(&self) -> CheckReport {
        let n = self.n;
        forall_check(&[n, n, n], |t| !(self.leq(t[0], t[1]) && self.leq(t[1], t[2])) || self.leq(t[0], t[2]))
    }

    /// Every pair is related.
    pub fn is_total_relation(&self) -> bool {
        self.leq.iter().all(|&b| b)
    }

    /// Only the diagonal is related.
    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) == (x == y)))
    }
}

/// `x ≤ y` iff `x ⊕ δ = y` for some change `δ`.
pub fn reachability_preorder(a: &FiniteChangeAction) -> Preorder {
    let n = a.base_size();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for d in 0..a.changes().size() {
            leq[x * n + a.act(x, d)] = true;
        }
    }
    Preorder { n, leq }
}

/// `x ≤ y ⇒ f(x) ≤ f(y)`; witness `[x, y]`.
pub fn monotone(f: &TabFun, pa: &Preorder, pb: &Preorder) -> CheckReport {
    let n = pa.size();
    forall_check(&[n, n], |t| !pa.leq(t[0], t[1]) || pb.leq(f.apply(t[0]), f.apply(t[1])))
}

/// A map has a derivative exactly when it is monotone for reachability.
pub fn differentiable_by_monotonicity(f: &TabFun, a: &FiniteChangeAction, b: &FiniteChangeAction) -> bool {
    monotone(f, &reachability_preorder(a), &reachability_preorder(b)).passed
}

/// Classes of the equivalence generated by reachability, labelled `0, 1, …`
/// in order of their least element.
pub fn quotient(a: &FiniteChangeAction) -> Vec<usize> {
    let n = a.base_size();
    let mut uf = UnionFind::<usize>::new(n);
    for x in 0..n {
        for d in 0..a.changes().size() {
            uf.union(x, a.act(x, d));
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|x| {
            let root = uf.find(x);
            if label[root] == usize::MAX {
                label[root] = next;
                next += 1;
            }
            label[root]
        })
        .collect()
}

/// The action of the quotient functor on a map: class of `x` to class of `f(x)`.
///
/// Returns `None` when `f` does not respect the classes.
pub fn quotient_map(f: &TabFun, a: &FiniteChangeAction, b: &FiniteChangeAction) -> Option<Vec<usize>> {
    let (qa, qb) = (quotient(a), quotient(b));
    let classes = qa.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![None; classes];
    for (x, &c) in qa.iter().enumerate() {
        let image = qb[f.apply(x)];
        match out[c] {
            None => out[c] = Some(image),
            Some(prev) if prev != image => return None,
            Some(_) => {}
        }
    }
    out.into_iter().collect()
}

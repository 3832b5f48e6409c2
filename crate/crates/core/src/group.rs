//! The change action model on finite groups: `α(A) = (A, A, +, +, 0)` and
//! `∂f(x, δ) = −f(x) + f(x + δ)`.

use std::fmt;
use std::sync::Arc;

use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};
use crate::finite::{forall_check, TabFun};
use crate::model::ChangeActionModel;
use crate::monoid::FiniteMonoid;

/// A finite group on `{0, …, size-1}`.
#[derive(Clone)]
pub struct FiniteGroup {
    repr: Arc<Repr>,
    monoid: FiniteMonoid,
}

enum Repr {
    Cyclic(usize),
    Xor,
    Table(Vec<usize>),
    Product(FiniteGroup, FiniteGroup),
}

impl FiniteGroup {
    /// `(Z_n, +, 0, −)`.
    pub fn cyclic(n: usize) -> Self {
        Self { repr: Arc::new(Repr::Cyclic(n)), monoid: FiniteMonoid::cyclic(n) }
    }

    /// Bit vectors of width `bits` under exclusive or; every element is its own inverse.
    pub fn xor(bits: u32) -> Self {
        Self { repr: Arc::new(Repr::Xor), monoid: FiniteMonoid::xor(bits) }
    }

    /// A monoid together with an inverse table; checks both inverse laws.
    pub fn from_monoid(monoid: FiniteMonoid, inverse: Vec<usize>) -> Result<Self> {
        let n = monoid.size();
        if inverse.len() != n {
            return Err(Error::DimensionMismatch(format!("inverse table has {} entries, expected {n}", inverse.len())));
        }
        if let Some(&v) = inverse.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { value: v, bound: n });
        }
        let e = monoid.unit();
        let r = forall_check(&[n], |t| monoid.op(t[0], inverse[t[0]]) == e && monoid.op(inverse[t[0]], t[0]) == e);
        if let Some(witness) = r.witness {
            return Err(Error::GroupLawViolation { law: "inverse", witness });
        }
        Ok(Self { repr: Arc::new(Repr::Table(inverse)), monoid })
    }

    /// Looks up inverses in a monoid table; fails when some element has none.
    pub fn from_monoid_table(monoid: FiniteMonoid) -> Result<Self> {
        let n = monoid.size();
        let e = monoid.unit();
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| monoid.op(a, b) == e) {
                Some(b) => inverse.push(b),
                None => return Err(Error::GroupLawViolation { law: "inverse", witness: vec![a] }),
            }
        }
        Self::from_monoid(monoid, inverse)
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        Self {
            monoid: FiniteMonoid::product(&a.monoid, &b.monoid),
            repr: Arc::new(Repr::Product(a.clone(), b.clone())),
        }
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.monoid.op(a, b)
    }

    #[inline]
    pub fn unit(&self) -> usize {
        self.monoid.unit()
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        match &*self.repr {
            Repr::Cyclic(n) => (n - a) % n,
            Repr::Xor => a,
            Repr::Table(inv) => inv[a],
            Repr::Product(l, r) => {
                let n = r.size();
                l.inv(a / n) * n + r.inv(a % n)
            }
        }
    }

    /// Monoid laws plus both inverse laws.
    pub fn check_laws(&self) -> Result<()> {
        for (law, report) in self.monoid.law_reports() {
            if let Some(witness) = report.witness {
                return Err(Error::GroupLawViolation { law, witness });
            }
        }
        let e = self.unit();
        let r =
            forall_check(&[self.size()], |t| self.op(t[0], self.inv(t[0])) == e && self.op(self.inv(t[0]), t[0]) == e);
        match r.witness {
            Some(witness) => Err(Error::GroupLawViolation { law: "inverse", witness }),
            None => Ok(()),
        }
    }

    pub fn change_action(&self) -> FiniteChangeAction {
        FiniteChangeAction::monoidal(&self.monoid)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.monoid == other.monoid
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.monoid.fmt(f)
    }
}

type Eval = Arc<dyn Fn(usize) -> usize + Send + Sync>;

/// An arbitrary function between finite groups, evaluated on demand.
#[derive(Clone)]
pub struct GroupMorphism {
    dom: FiniteGroup,
    cod: FiniteGroup,
    eval: Eval,
}

impl GroupMorphism {
    pub fn from_fn(dom: FiniteGroup, cod: FiniteGroup, f: impl Fn(usize) -> usize + Send + Sync + 'static) -> Self {
        Self { dom, cod, eval: Arc::new(f) }
    }

    pub fn from_table(dom: FiniteGroup, cod: FiniteGroup, table: TabFun) -> Result<Self> {
        if table.dom_size() != dom.size() || table.cod_size() != cod.size() {
            return Err(Error::DimensionMismatch(format!(
                "table is {}→{}, groups have orders {} and {}",
                table.dom_size(),
                table.cod_size(),
                dom.size(),
                cod.size()
            )));
        }
        Ok(Self::from_fn(dom, cod, move |x| table.apply(x)))
    }

    pub fn dom(&self) -> &FiniteGroup {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteGroup {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        (self.eval)(x)
    }

    /// `∂f(x, δ) = −f(x) + f(x + δ)` on `G × G`.
    pub fn derivative(&self) -> GroupMorphism {
        let f = self.clone();
        let n = self.dom.size();
        GroupMorphism::from_fn(FiniteGroup::product(&self.dom, &self.dom), self.cod.clone(), move |i| {
            let (x, d) = (i / n, i % n);
            f.cod.op(f.cod.inv(f.apply(x)), f.apply(f.dom.op(x, d)))
        })
    }
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupMorphism({:?} → {:?})", self.dom, self.cod)
    }
}

/// The group change action model over a validated family of groups.
///
/// The family is used for validation only; products of groups are objects too.
#[derive(Debug, Clone)]
pub struct GroupModel {
    groups: Vec<FiniteGroup>,
}

impl GroupModel {
    pub fn new(groups: Vec<FiniteGroup>) -> Result<Self> {
        for g in &groups {
            g.check_laws()?;
        }
        Ok(Self { groups })
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }
}

/// `−f(x) + f(x + δ)` tabulated on `A × A`, for a table `f` between groups.
pub fn group_derivative_table(f: &TabFun, dom: &FiniteGroup, cod: &FiniteGroup) -> Result<TabFun> {
    let n = dom.size();
    if f.dom_size() != n || f.cod_size() != cod.size() {
        return Err(Error::DimensionMismatch("table does not match the groups".into()));
    }
    TabFun::from_fn(n * n, cod.size(), |i| cod.op(cod.inv(f.apply(i / n)), f.apply(dom.op(i / n, i % n))))
}

impl ChangeActionModel for GroupModel {
    type Object = FiniteGroup;
    type Morphism = GroupMorphism;

    fn change_action(&self, obj: &FiniteGroup) -> FiniteChangeAction {
        obj.change_action()
    }

    fn delta(&self, obj: &FiniteGroup) -> Result<FiniteGroup> {
        Ok(obj.clone())
    }

    fn product(&self, a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        FiniteGroup::product(a, b)
    }

    fn dom(&self, f: &GroupMorphism) -> FiniteGroup {
        f.dom.clone()
    }

    fn cod(&self, f: &GroupMorphism) -> FiniteGroup {
        f.cod.clone()
    }

    fn apply(&self, f: &GroupMorphism, x: usize) -> usize {
        f.apply(x)
    }

    fn derivative(&self, f: &GroupMorphism) -> Result<GroupMorphism> {
        Ok(f.derivative())
    }

    fn identity(&self, obj: &FiniteGroup) -> GroupMorphism {
        GroupMorphism::from_fn(obj.clone(), obj.clone(), |x| x)
    }

    fn compose(&self, g: &GroupMorphism, f: &GroupMorphism) -> Result<GroupMorphism> {
        if f.cod != g.dom {
            return Err(Error::CompositionMismatch);
        }
        let (f, g) = (f.clone(), g.clone());
        Ok(GroupMorphism::from_fn(f.dom.clone(), g.cod.clone(), move |x| g.apply(f.apply(x))))
    }

    fn pair(&self, f: &GroupMorphism, g: &GroupMorphism) -> Result<GroupMorphism> {
        if f.dom != g.dom {
            return Err(Error::DomainMismatch);
        }
        let (f, g) = (f.clone(), g.clone());
        let m = g.cod.size();
        Ok(GroupMorphism::from_fn(f.dom.clone(), FiniteGroup::product(&f.cod, &g.cod), move |x| {
            f.apply(x) * m + g.apply(x)
        }))
    }

    fn proj1(&self, a: &FiniteGroup, b: &FiniteGroup) -> GroupMorphism {
        let m = b.size();
        GroupMorphism::from_fn(FiniteGroup::product(a, b), a.clone(), move |x| x / m)
    }

    fn proj2(&self, a: &FiniteGroup, b: &FiniteGroup) -> GroupMorphism {
        let m = b.size();
        GroupMorphism::from_fn(FiniteGroup::product(a, b), b.clone(), move |x| x % m)
    }

    fn zero(&self, dom: &FiniteGroup, target: &FiniteGroup) -> Result<GroupMorphism> {
        let e = target.unit();
        Ok(GroupMorphism::from_fn(dom.clone(), target.clone(), move |_| e))
    }

    fn action_map(&self, obj: &FiniteGroup) -> Result<GroupMorphism> {
        let g = obj.clone();
        let n = g.size();
        Ok(GroupMorphism::from_fn(FiniteGroup::product(obj, obj), obj.clone(), move |x| g.op(x / n, x % n)))
    }

    fn sum_map(&self, obj: &FiniteGroup) -> Result<GroupMorphism> {
        self.action_map(obj)
    }
}

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::{forall_check, CheckReport, EXHAUSTIVE_LIMIT};
use crate::monoid::FiniteMonoid;

/// A change action `(A, ΔA, ⊕, +, 0)` on a finite base `{0, …, base-1}`.
///
/// Products and coproducts are stored in terms of their factors, so the
/// action on a product is evaluated componentwise without a table.
#[derive(Clone)]
pub struct FiniteChangeAction(Arc<Repr>);

enum Repr {
    Table { base: usize, changes: FiniteMonoid, act: Vec<usize> },
    Monoidal(FiniteMonoid),
    Product { left: FiniteChangeAction, right: FiniteChangeAction, changes: FiniteMonoid },
    Coproduct { left: FiniteChangeAction, right: FiniteChangeAction, changes: FiniteMonoid },
}

/// How a change action was assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    Table,
    Monoidal,
    Product,
    Coproduct,
}

impl FiniteChangeAction {
    /// Builds a change action from a dense action table `act[a * |ΔA| + δ]`
    /// and checks both action laws.
    pub fn from_table(base: usize, changes: FiniteMonoid, act: Vec<usize>) -> Result<Self> {
        let a = Self::from_table_unchecked(base, changes, act)?;
        for (law, report) in a.law_reports() {
            if let Some(witness) = report.witness {
                return Err(Error::ActionLawViolation { law, witness });
            }
        }
        Ok(a)
    }

    /// Range and shape checks only; see [`Self::law_reports`].
    pub fn from_table_unchecked(base: usize, changes: FiniteMonoid, act: Vec<usize>) -> Result<Self> {
        let expected = base * changes.size();
        if act.len() != expected {
            return Err(Error::DimensionMismatch(format!("action table has {} cells, expected {expected}", act.len())));
        }
        if let Some(&v) = act.iter().find(|&&v| v >= base) {
            return Err(Error::IndexOutOfRange { value: v, bound: base });
        }
        Ok(Self(Arc::new(Repr::Table { base, changes, act })))
    }

    /// The monoid acting on itself by its own operation.
    pub fn monoidal(m: &FiniteMonoid) -> Self {
        Self(Arc::new(Repr::Monoidal(m.clone())))
    }

    /// `base` points acted on by the one-element monoid.
    pub fn trivial(base: usize) -> Self {
        let act = (0..base).collect();
        Self(Arc::new(Repr::Table { base, changes: FiniteMonoid::trivial(), act }))
    }

    /// Componentwise product. Base points and changes are flattened row-major.
    pub fn product(left: &FiniteChangeAction, right: &FiniteChangeAction) -> Self {
        let changes = FiniteMonoid::product(left.changes(), right.changes());
        Self(Arc::new(Repr::Product { left: left.clone(), right: right.clone(), changes }))
    }

    /// Disjoint union of bases with changes `ΔA × ΔB`. Points `0..|A|` are the
    /// left summand; each side is moved by its own component of the change.
    pub fn coproduct(left: &FiniteChangeAction, right: &FiniteChangeAction) -> Self {
        let changes = FiniteMonoid::product(left.changes(), right.changes());
        Self(Arc::new(Repr::Coproduct { left: left.clone(), right: right.clone(), changes }))
    }

    pub fn kind(&self) -> ActionKind {
        match &*self.0 {
            Repr::Table { .. } => ActionKind::Table,
            Repr::Monoidal(_) => ActionKind::Monoidal,
            Repr::Product { .. } => ActionKind::Product,
            Repr::Coproduct { .. } => ActionKind::Coproduct,
        }
    }

    pub fn base_size(&self) -> usize {
        match &*self.0 {
            Repr::Table { base, .. } => *base,
            Repr::Monoidal(m) => m.size(),
            Repr::Product { left, right, .. } => left.base_size() * right.base_size(),
            Repr::Coproduct { left, right, .. } => left.base_size() + right.base_size(),
        }
    }

    pub fn changes(&self) -> &FiniteMonoid {
        match &*self.0 {
            Repr::Table { changes, .. } | Repr::Product { changes, .. } | Repr::Coproduct { changes, .. } => changes,
            Repr::Monoidal(m) => m,
        }
    }

    /// `a ⊕ δ`.
    #[inline]
    pub fn act(&self, a: usize, delta: usize) -> usize {
        match &*self.0 {
            Repr::Table { changes, act, .. } => act[a * changes.size() + delta],
            Repr::Monoidal(m) => m.op(a, delta),
            Repr::Product { left, right, .. } => {
                let (nb, nd) = (right.base_size(), right.changes().size());
                left.act(a / nb, delta / nd) * nb + right.act(a % nb, delta % nd)
            }
            Repr::Coproduct { left, right, .. } => {
                let na = left.base_size();
                let nd = right.changes().size();
                if a < na {
                    left.act(a, delta / nd)
                } else {
                    na + right.act(a - na, delta % nd)
                }
            }
        }
    }

    /// `δ₁ + δ₂` in the change monoid.
    #[inline]
    pub fn plus(&self, d1: usize, d2: usize) -> usize {
        self.changes().op(d1, d2)
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.changes().unit()
    }

    /// The factors of a product change action.
    pub fn product_factors(&self) -> Option<(&FiniteChangeAction, &FiniteChangeAction)> {
        match &*self.0 {
            Repr::Product { left, right, .. } => Some((left, right)),
            _ => None,
        }
    }

    /// The summands of a coproduct change action.
    pub fn coproduct_summands(&self) -> Option<(&FiniteChangeAction, &FiniteChangeAction)> {
        match &*self.0 {
            Repr::Coproduct { left, right, .. } => Some((left, right)),
            _ => None,
        }
    }

    /// Dense action table, row = base point, column = change.
    pub fn action_table(&self) -> Vec<usize> {
        let nd = self.changes().size();
        (0..self.base_size() * nd).map(|i| self.act(i / nd, i % nd)).collect()
    }

    /// Reports for the monoid laws of `ΔA` followed by the two action laws.
    pub fn law_reports(&self) -> Vec<(&'static str, CheckReport)> {
        let mut out = self.changes().law_reports();
        let (na, nd) = (self.base_size(), self.changes().size());
        let zero = self.zero();
        out.push(("action unit", forall_check(&[na], |t| self.act(t[0], zero) == t[0])));
        out.push((
            "action compatibility",
            forall_check(&[na, nd, nd], |t| {
                self.act(self.act(t[0], t[1]), t[2]) == self.act(t[0], self.plus(t[1], t[2]))
            }),
        ));
        out
    }

    fn small_enough_to_compare(&self) -> bool {
        let cells = self.base_size() as u128 * self.changes().size() as u128;
        cells <= EXHAUSTIVE_LIMIT
    }

    fn structural_eq(&self, other: &Self) -> bool {
        match (&*self.0, &*other.0) {
            (Repr::Table { act: a, .. }, Repr::Table { act: b, .. }) => a == b,
            (Repr::Monoidal(_), Repr::Monoidal(_)) => true,
            (Repr::Product { left: l1, right: r1, .. }, Repr::Product { left: l2, right: r2, .. })
            | (Repr::Coproduct { left: l1, right: r1, .. }, Repr::Coproduct { left: l2, right: r2, .. }) => {
                l1 == l2 && r1 == r2
            }
            _ => false,
        }
    }
}

impl PartialEq for FiniteChangeAction {
    /// Extensional on small carriers, structural otherwise.
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.base_size() != other.base_size() || self.changes() != other.changes() {
            return false;
        }
        if self.small_enough_to_compare() {
            let nd = self.changes().size();
            (0..self.base_size()).all(|a| (0..nd).all(|d| self.act(a, d) == other.act(a, d)))
        } else {
            self.structural_eq(other)
        }
    }
}

impl Eq for FiniteChangeAction {}

impl fmt::Debug for FiniteChangeAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Table { base, changes, .. } => write!(f, "Action(|A|={base}, Δ={changes:?})"),
            Repr::Monoidal(m) => write!(f, "Monoidal({m:?})"),
            Repr::Product { left, right, .. } => write!(f, "({left:?} × {right:?})"),
            Repr::Coproduct { left, right, .. } => write!(f, "({left:?} + {right:?})"),
        }
    }
}

/// `(M, M, +, +, 0)` for a monoid given by its table, checking the monoid laws.
pub fn make_monoidal(size: usize, op: Vec<usize>, unit: usize) -> Result<FiniteChangeAction> {
    Ok(FiniteChangeAction::monoidal(&FiniteMonoid::from_table(size, op, unit)?))
}

/// `(A, {⋆}, π₁, π₁, ⋆)`.
pub fn make_trivial(base: usize) -> FiniteChangeAction {
    FiniteChangeAction::trivial(base)
}

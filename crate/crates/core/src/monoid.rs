use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::{forall_check, CheckReport};

/// A finite monoid on `{0, …, size-1}`.
///
/// Small monoids are stored as dense tables. Products are kept structural so
/// that large product carriers never need a materialised table.
#[derive(Clone)]
pub struct FiniteMonoid(Arc<Repr>);

#[derive(PartialEq, Eq)]
enum Repr {
    Table {
        size: usize,
        op: Vec<usize>,
        unit: usize,
    },
    /// Addition modulo `n`.
    Cyclic(usize),
    /// Bit vectors of the given width under exclusive or.
    Xor(u32),
    Product {
        left: FiniteMonoid,
        right: FiniteMonoid,
        size: usize,
    },
}

impl FiniteMonoid {
    /// Builds a monoid from its multiplication table and checks the laws.
    pub fn from_table(size: usize, op: Vec<usize>, unit: usize) -> Result<Self> {
        let m = Self::from_table_unchecked(size, op, unit)?;
        for (law, report) in m.law_reports() {
            if let Some(witness) = report.witness {
                return Err(Error::MonoidLawViolation { law, witness });
            }
        }
        Ok(m)
    }

    /// Builds a monoid table after range checks only; see [`Self::law_reports`].
    pub fn from_table_unchecked(size: usize, op: Vec<usize>, unit: usize) -> Result<Self> {
        if op.len() != size * size {
            return Err(Error::DimensionMismatch(format!(
                "monoid table has {} cells, expected {}",
                op.len(),
                size * size
            )));
        }
        if unit >= size {
            return Err(Error::IndexOutOfRange { value: unit, bound: size });
        }
        if let Some(&v) = op.iter().find(|&&v| v >= size) {
            return Err(Error::IndexOutOfRange { value: v, bound: size });
        }
        Ok(Self(Arc::new(Repr::Table { size, op, unit })))
    }

    pub fn from_fn(size: usize, unit: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..size * size).map(|i| op(i / size, i % size)).collect();
        Self::from_table(size, table, unit)
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `(Z_n, +, 0)`. Requires `n ≥ 1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic monoid needs a nonempty carrier");
        Self(Arc::new(Repr::Cyclic(n)))
    }

    /// `({0,1}^bits, xor, 0)`.
    pub fn xor(bits: u32) -> Self {
        assert!(bits < usize::BITS, "xor monoid too wide");
        Self(Arc::new(Repr::Xor(bits)))
    }

    /// Componentwise product; elements are flattened as `l * |right| + r`.
    pub fn product(left: &FiniteMonoid, right: &FiniteMonoid) -> Self {
        let size = left.size() * right.size();
        Self(Arc::new(Repr::Product { left: left.clone(), right: right.clone(), size }))
    }

    /// `({0,1}, ∨, 0)`.
    pub fn boolean_or() -> Self {
        Self::from_fn(2, 0, |a, b| a | b).expect("or is a monoid")
    }

    pub fn size(&self) -> usize {
        match &*self.0 {
            Repr::Table { size, .. } | Repr::Product { size, .. } => *size,
            Repr::Cyclic(n) => *n,
            Repr::Xor(bits) => 1 << bits,
        }
    }

    pub fn unit(&self) -> usize {
        match &*self.0 {
            Repr::Table { unit, .. } => *unit,
            Repr::Cyclic(_) | Repr::Xor(_) => 0,
            Repr::Product { left, right, .. } => left.unit() * right.size() + right.unit(),
        }
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        match &*self.0 {
            Repr::Table { size, op, .. } => op[a * size + b],
            Repr::Cyclic(n) => (a + b) % n,
            Repr::Xor(_) => a ^ b,
            Repr::Product { left, right, .. } => {
                let n = right.size();
                left.op(a / n, b / n) * n + right.op(a % n, b % n)
            }
        }
    }

    /// The factors, when this is a product monoid.
    pub fn factors(&self) -> Option<(&FiniteMonoid, &FiniteMonoid)> {
        match &*self.0 {
            Repr::Product { left, right, .. } => Some((left, right)),
            _ => None,
        }
    }

    /// Dense multiplication table. Only sensible for small carriers.
    pub fn table(&self) -> Vec<usize> {
        let n = self.size();
        (0..n * n).map(|i| self.op(i / n, i % n)).collect()
    }

    /// Associativity and both unit laws, checked exhaustively.
    pub fn law_reports(&self) -> Vec<(&'static str, CheckReport)> {
        let n = self.size();
        let e = self.unit();
        vec![
            (
                "associativity",
                forall_check(&[n, n, n], |t| self.op(self.op(t[0], t[1]), t[2]) == self.op(t[0], self.op(t[1], t[2]))),
            ),
            ("left unit", forall_check(&[n], |t| self.op(e, t[0]) == t[0])),
            ("right unit", forall_check(&[n], |t| self.op(t[0], e) == t[0])),
        ]
    }

    fn small_enough_to_compare(&self) -> bool {
        (self.size() as u128).pow(2) <= crate::finite::EXHAUSTIVE_LIMIT
    }
}

impl PartialEq for FiniteMonoid {
    /// Extensional on small carriers, structural otherwise.
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.size() != other.size() || self.unit() != other.unit() {
            return false;
        }
        if self.small_enough_to_compare() {
            let n = self.size();
            (0..n).all(|a| (0..n).all(|b| self.op(a, b) == other.op(a, b)))
        } else {
            self.0 == other.0
        }
    }
}

impl Eq for FiniteMonoid {}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Table { size, unit, .. } => write!(f, "Monoid(table, |M|={size}, unit={unit})"),
            Repr::Cyclic(n) => write!(f, "Z{n}"),
            Repr::Xor(bits) => write!(f, "Xor{bits}"),
            Repr::Product { left, right, .. } => write!(f, "({left:?} × {right:?})"),
        }
    }
}

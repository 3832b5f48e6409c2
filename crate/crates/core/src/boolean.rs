//! Boolean differential calculus over powerset Boolean algebras.
//!
//! With `k` atoms an element of 𝔹 is a `k`-bit mask and a vector in 𝔹ⁿ is a
//! `k·n`-bit index. Component `x₁` occupies the most significant `k` bits, so
//! truth tables read in row-major input order with the last variable fastest
//! (AND of two variables is `0001`).

use crate::error::{Error, Result};
use crate::finite::{forall_check, CheckReport, TabFun};
use crate::group::{FiniteGroup, GroupMorphism};

/// The powerset algebra on `atoms` atoms. `atoms = 1` is `{⊥, ⊤}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoolAlgebra {
    atoms: u32,
}

impl BoolAlgebra {
    pub const TWO: BoolAlgebra = BoolAlgebra { atoms: 1 };

    pub fn powerset(atoms: u32) -> Result<Self> {
        if !(1..=3).contains(&atoms) {
            return Err(Error::IndexOutOfRange { value: atoms as usize, bound: 4 });
        }
        let b = Self { atoms };
        b.check_laws()?;
        Ok(b)
    }

    pub fn atoms(&self) -> u32 {
        self.atoms
    }

    pub fn size(&self) -> usize {
        1 << self.atoms
    }

    pub fn top(&self) -> usize {
        self.size() - 1
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        a & b
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        a | b
    }

    pub fn not(&self, a: usize) -> usize {
        self.top() ^ a
    }

    /// `a ↮ b = (a ∧ ¬b) ∨ (¬a ∧ b)`.
    pub fn xor(&self, a: usize, b: usize) -> usize {
        self.join(self.meet(a, self.not(b)), self.meet(self.not(a), b))
    }

    /// Distributive lattice with complements.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.size();
        let laws: [(&'static str, CheckReport); 4] = [
            (
                "commutativity",
                forall_check(&[n, n], |t| {
                    self.meet(t[0], t[1]) == self.meet(t[1], t[0]) && self.join(t[0], t[1]) == self.join(t[1], t[0])
                }),
            ),
            (
                "absorption",
                forall_check(&[n, n], |t| {
                    self.join(t[0], self.meet(t[0], t[1])) == t[0] && self.meet(t[0], self.join(t[0], t[1])) == t[0]
                }),
            ),
            (
                "distributivity",
                forall_check(&[n, n, n], |t| {
                    self.meet(t[0], self.join(t[1], t[2])) == self.join(self.meet(t[0], t[1]), self.meet(t[0], t[2]))
                }),
            ),
            (
                "complement",
                forall_check(&[n], |t| {
                    self.meet(t[0], self.not(t[0])) == 0 && self.join(t[0], self.not(t[0])) == self.top()
                }),
            ),
        ];
        for (law, r) in laws {
            if let Some(witness) = r.witness {
                return Err(Error::LatticeLawViolation { law, witness });
            }
        }
        Ok(())
    }
}

/// A vector in 𝔹ⁿ packed into an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoolVec {
    pub width: usize,
    pub algebra: BoolAlgebra,
    pub bits: usize,
}

impl BoolVec {
    /// Component `i` (1-based).
    pub fn get(&self, i: usize) -> usize {
        let k = self.algebra.atoms as usize;
        (self.bits >> (k * (self.width - i))) & self.algebra.top()
    }
}

/// `⊤ᵢ`: `⊤` in position `i` (1-based), `⊥` elsewhere.
pub fn top_i(n: usize, i: usize, algebra: BoolAlgebra) -> Result<BoolVec> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { value: i, bound: n + 1 });
    }
    let k = algebra.atoms as usize;
    Ok(BoolVec { width: n, algebra, bits: algebra.top() << (k * (n - i)) })
}

/// A function `𝔹ⁿ → 𝔹ᵐ` as a table over packed indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolFn {
    n: usize,
    m: usize,
    algebra: BoolAlgebra,
    table: Vec<usize>,
}

impl BoolFn {
    pub fn new(n: usize, m: usize, algebra: BoolAlgebra, table: Vec<usize>) -> Result<Self> {
        let k = algebra.atoms as usize;
        if k * n >= 24 || k * m >= usize::BITS as usize {
            return Err(Error::DimensionMismatch(format!("𝔹^{n} → 𝔹^{m} is too wide")));
        }
        let inputs = 1usize << (k * n);
        if table.len() != inputs {
            return Err(Error::DimensionMismatch(format!("truth table has {} rows, expected {inputs}", table.len())));
        }
        let outputs = 1usize << (k * m);
        if let Some(&v) = table.iter().find(|&&v| v >= outputs) {
            return Err(Error::IndexOutOfRange { value: v, bound: outputs });
        }
        Ok(Self { n, m, algebra, table })
    }

    /// A single-output function over `{⊥, ⊤}` from a 0/1 string of length `2ⁿ`.
    pub fn from_bits(n: usize, bits: &str) -> Result<Self> {
        let table = bits
            .chars()
            .enumerate()
            .map(|(pos, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse { line: 1, column: pos + 1, message: format!("expected 0 or 1, found {c:?}") }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, 1, BoolAlgebra::TWO, table)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> usize {
        self.m
    }

    pub fn algebra(&self) -> BoolAlgebra {
        self.algebra
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, u: usize) -> usize {
        self.table[u]
    }

    /// Outputs as binary strings of width `k·m`, concatenated when that width is 1.
    pub fn to_bits(&self) -> String {
        let w = self.algebra.atoms as usize * self.m;
        let cells: Vec<String> = self.table.iter().map(|v| format!("{v:0w$b}")).collect();
        cells.join(if w == 1 { "" } else { " " })
    }

    fn input_group(&self) -> FiniteGroup {
        FiniteGroup::xor(self.algebra.atoms * self.n as u32)
    }

    fn output_group(&self) -> FiniteGroup {
        FiniteGroup::xor(self.algebra.atoms * self.m as u32)
    }
}

// Componentwise ↮ on packed vectors, built from the lattice operations.
fn packed_xor(algebra: BoolAlgebra, width: usize, u: usize, v: usize) -> usize {
    let k = algebra.atoms as usize;
    (0..width).fold(0, |acc, j| {
        let shift = k * (width - 1 - j);
        let (a, b) = ((u >> shift) & algebra.top(), (v >> shift) & algebra.top());
        acc | (algebra.xor(a, b) << shift)
    })
}

/// `∂f/∂xᵢ(u) = f(u) ↮ f(u with uᵢ negated)`.
pub fn boolean_derivative(f: &BoolFn, i: usize) -> Result<BoolFn> {
    let t = top_i(f.n, i, f.algebra)?;
    let table = (0..f.table.len())
        .map(|u| {
            let flipped = packed_xor(f.algebra, f.n, u, t.bits);
            packed_xor(f.algebra, f.m, f.apply(u), f.apply(flipped))
        })
        .collect();
    Ok(BoolFn { table, ..f.clone() })
}

/// `∂f/∂xᵢ(u) = ∂f(u, ⊤ᵢ)` for the group-model derivative over `(𝔹ⁿ, ↮)`;
/// witness `[u]`.
pub fn boolean_equivalence_check(f: &BoolFn, i: usize) -> Result<CheckReport> {
    let lhs = boolean_derivative(f, i)?;
    let t = top_i(f.n, i, f.algebra)?.bits;
    let (g_in, g_out) = (f.input_group(), f.output_group());
    let table = TabFun::new(g_out.size(), f.table.clone())?;
    let df = GroupMorphism::from_table(g_in.clone(), g_out, table)?.derivative();
    let n = g_in.size();
    Ok(forall_check(&[n], |u| lhs.apply(u[0]) == df.apply(u[0] * n + t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn and_derivative_is_second_variable() {
        let and = BoolFn::from_bits(2, "0001").unwrap();
        let d = boolean_derivative(&and, 1).unwrap();
        assert_eq!(d.to_bits(), "0101");
        assert_eq!(d.apply(0b01), 1);
    }

    #[test]
    fn xor_derivatives_are_one() {
        let xor = BoolFn::from_bits(2, "0110").unwrap();
        for i in 1..=2 {
            assert_eq!(boolean_derivative(&xor, i).unwrap().to_bits(), "1111");
        }
    }

    #[test]
    fn constant_derivative_is_zero() {
        let c = BoolFn::from_bits(3, "11111111").unwrap();
        assert_eq!(boolean_derivative(&c, 2).unwrap().to_bits(), "00000000");
        assert!(boolean_equivalence_check(&c, 2).unwrap().passed);
    }

    #[test]
    fn top_i_positions() {
        let t = top_i(3, 2, BoolAlgebra::TWO).unwrap();
        assert_eq!(t.bits, 0b010);
        assert_eq!((t.get(1), t.get(2), t.get(3)), (0, 1, 0));
        assert_eq!(top_i(1, 1, BoolAlgebra::TWO).unwrap().bits, 1);
        assert!(top_i(2, 0, BoolAlgebra::TWO).is_err());
        assert!(top_i(2, 3, BoolAlgebra::TWO).is_err());
    }

    #[test]
    fn xor_by_top_i_flips_exactly_bit_i() {
        for i in 1..=3 {
            let t = top_i(3, i, BoolAlgebra::TWO).unwrap();
            for u in 0..8 {
                let v = packed_xor(BoolAlgebra::TWO, 3, u, t.bits);
                let diff: Vec<usize> =
                    (1..=3).filter(|&j| BoolVec { bits: u, ..t }.get(j) != BoolVec { bits: v, ..t }.get(j)).collect();
                assert_eq!(diff, vec![i]);
            }
        }
    }

    #[test]
    fn every_binary_function_agrees() {
        for code in 0..16 {
            let table = (0..4).map(|u| (code >> u) & 1).collect();
            let f = BoolFn::new(2, 1, BoolAlgebra::TWO, table).unwrap();
            for i in 1..=2 {
                assert!(boolean_equivalence_check(&f, i).unwrap().passed);
            }
        }
    }

    #[test]
    fn larger_algebra() {
        let b4 = BoolAlgebra::powerset(2).unwrap();
        // f(x₁, x₂) = x₁ ∧ x₂ over the four-element algebra
        let table = (0..16).map(|u| (u >> 2) & u & 3).collect();
        let f = BoolFn::new(2, 1, b4, table).unwrap();
        let d = boolean_derivative(&f, 1).unwrap();
        // ∂(x₁ ∧ x₂)/∂x₁ = x₂ holds in any Boolean algebra
        assert!((0..16).all(|u| d.apply(u) == u & 3));
        assert!(boolean_equivalence_check(&f, 1).unwrap().passed);
        assert!(BoolAlgebra::powerset(4).is_err());
    }

    #[test]
    fn malformed_tables() {
        assert!(BoolFn::from_bits(2, "000").is_err());
        assert!(matches!(BoolFn::from_bits(2, "00x1"), Err(Error::Parse { column: 3, .. })));
    }
}

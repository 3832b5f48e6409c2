use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};
use crate::model::ChangeActionModel;
use crate::monoid::FiniteMonoid;

use super::algebra::KleeneAlgebra;
use super::poly::KleenePoly;

/// An `n`-tuple of polynomials in `m` variables, a map `Kᵐ → Kⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMorphism {
    arity: usize,
    polys: Vec<KleenePoly>,
}

impl PolyMorphism {
    pub fn new(arity: usize, polys: Vec<KleenePoly>) -> Result<Self> {
        if let Some(p) = polys.iter().find(|p| p.arity() > arity) {
            return Err(Error::UnboundVariable(p.arity() - 1));
        }
        Ok(Self { arity, polys })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn polys(&self) -> &[KleenePoly] {
        &self.polys
    }
}

/// The Kleene model on finite powers of `K`: objects are exponents `n`, and
/// `Kⁿ` is packed row-major with `x₁` most significant.
#[derive(Debug, Clone)]
pub struct KleeneModel {
    k: KleeneAlgebra,
    max_arity: usize,
}

impl KleeneModel {
    /// Objects `Kⁿ` are available while `|K|ⁿ ≤ 10⁶`.
    pub fn new(k: KleeneAlgebra) -> Self {
        let mut max_arity = 0;
        while (k.size() as u128).pow(max_arity as u32 + 1) <= crate::finite::EXHAUSTIVE_LIMIT {
            max_arity += 1;
        }
        Self { k, max_arity }
    }

    pub fn algebra(&self) -> &KleeneAlgebra {
        &self.k
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// A morphism whose constants all resolve in this algebra.
    pub fn morphism(&self, arity: usize, polys: Vec<KleenePoly>) -> Result<PolyMorphism> {
        self.object(arity)?;
        self.object(polys.len())?;
        for p in &polys {
            p.resolve(&self.k)?;
        }
        PolyMorphism::new(arity, polys)
    }

    fn object(&self, n: usize) -> Result<usize> {
        if n > self.max_arity {
            return Err(Error::UnknownObject(format!("K^{n} exceeds the largest power K^{}", self.max_arity)));
        }
        Ok(n)
    }

    pub fn unpack(&self, n: usize, mut x: usize) -> Vec<usize> {
        let s = self.k.size();
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = x % s;
            x /= s;
        }
        out
    }

    pub fn pack(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &v| acc * self.k.size() + v)
    }

    fn plus_monoid(&self) -> FiniteMonoid {
        let k = self.k.clone();
        FiniteMonoid::from_fn(k.size(), k.zero(), move |a, b| k.plus(a, b)).expect("tables are in range")
    }

    fn vars(range: std::ops::Range<usize>) -> Vec<KleenePoly> {
        range.map(KleenePoly::Var).collect()
    }
}

impl ChangeActionModel for KleeneModel {
    type Object = usize;
    type Morphism = PolyMorphism;

    fn change_action(&self, obj: &usize) -> FiniteChangeAction {
        let k = FiniteChangeAction::monoidal(&self.plus_monoid());
        match *obj {
            0 => FiniteChangeAction::monoidal(&FiniteMonoid::trivial()),
            n => (1..n).fold(k.clone(), |acc, _| FiniteChangeAction::product(&k, &acc)),
        }
    }

    fn delta(&self, obj: &usize) -> Result<usize> {
        self.object(*obj)
    }

    fn product(&self, a: &usize, b: &usize) -> usize {
        a + b
    }

    fn dom(&self, f: &PolyMorphism) -> usize {
        f.arity
    }

    fn cod(&self, f: &PolyMorphism) -> usize {
        f.polys.len()
    }

    fn apply(&self, f: &PolyMorphism, x: usize) -> usize {
        let env = self.unpack(f.arity, x);
        let out: Vec<usize> = f
            .polys
            .iter()
            .map(|p| p.eval(&env, &self.k).expect("constants were resolved when the morphism was built"))
            .collect();
        self.pack(&out)
    }

    /// `pᵢ′ = Σⱼ yⱼ · ∂pᵢ/∂xⱼ(x + y)` in the variables `x₁…xₘ, y₁…yₘ`.
    fn derivative(&self, f: &PolyMorphism) -> Result<PolyMorphism> {
        let m = f.arity;
        self.object(2 * m)?;
        let shifted: Vec<KleenePoly> =
            (0..m).map(|j| KleenePoly::plus(KleenePoly::Var(j), KleenePoly::Var(m + j))).collect();
        let polys = f
            .polys
            .iter()
            .map(|p| {
                let terms = (0..m)
                    .map(|j| Ok(KleenePoly::times(KleenePoly::Var(m + j), p.derivative(j).substitute(&shifted)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(KleenePoly::sum(terms))
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMorphism::new(2 * m, polys)
    }

    fn identity(&self, obj: &usize) -> PolyMorphism {
        PolyMorphism { arity: *obj, polys: Self::vars(0..*obj) }
    }

    fn compose(&self, g: &PolyMorphism, f: &PolyMorphism) -> Result<PolyMorphism> {
        if g.arity != f.polys.len() {
            return Err(Error::CompositionMismatch);
        }
        let polys = g.polys.iter().map(|p| p.substitute(&f.polys)).collect::<Result<_>>()?;
        PolyMorphism::new(f.arity, polys)
    }

    fn pair(&self, f: &PolyMorphism, g: &PolyMorphism) -> Result<PolyMorphism> {
        if f.arity != g.arity {
            return Err(Error::DomainMismatch);
        }
        self.object(f.polys.len() + g.polys.len())?;
        PolyMorphism::new(f.arity, f.polys.iter().chain(&g.polys).cloned().collect())
    }

    fn proj1(&self, a: &usize, b: &usize) -> PolyMorphism {
        PolyMorphism { arity: a + b, polys: Self::vars(0..*a) }
    }

    fn proj2(&self, a: &usize, b: &usize) -> PolyMorphism {
        PolyMorphism { arity: a + b, polys: Self::vars(*a..a + b) }
    }

    fn zero(&self, dom: &usize, target: &usize) -> Result<PolyMorphism> {
        PolyMorphism::new(*dom, vec![KleenePoly::Zero; *target])
    }

    fn action_map(&self, obj: &usize) -> Result<PolyMorphism> {
        let n = *obj;
        self.object(2 * n)?;
        let polys = (0..n).map(|i| KleenePoly::plus(KleenePoly::Var(i), KleenePoly::Var(n + i))).collect();
        PolyMorphism::new(2 * n, polys)
    }

    fn sum_map(&self, obj: &usize) -> Result<PolyMorphism> {
        self.action_map(obj)
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::DifferentialMap;

/// One update of [`incremental_fold`]: input `a`, output `y`, the applied
/// change `delta` and the output change `dy = ∂f(a, δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub a: usize,
    pub y: usize,
    pub delta: usize,
    pub dy: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fold {
    /// Output maintained through derivatives.
    pub output: usize,
    /// Final input `a₀ ⊕ δ₁ ⊕ … ⊕ δₙ`.
    pub input: usize,
    /// `f` applied to the final input.
    pub recomputed: usize,
    pub trace: Vec<Step>,
}

impl Fold {
    pub fn consistent(&self) -> bool {
        self.output == self.recomputed
    }
}

/// Maintains `y = f(a)` through a sequence of changes using only `∂f`.
pub fn incremental_fold(dm: &DifferentialMap, a0: usize, changes: &[usize]) -> Result<Fold> {
    let (na, nd) = (dm.dom().base_size(), dm.dom().changes().size());
    if a0 >= na {
        return Err(Error::IndexOutOfRange { value: a0, bound: na });
    }
    if let Some(&d) = changes.iter().find(|&&d| d >= nd) {
        return Err(Error::IndexOutOfRange { value: d, bound: nd });
    }
    let (mut a, mut y) = (a0, dm.apply(a0));
    let mut trace = Vec::with_capacity(changes.len());
    for &delta in changes {
        let dy = dm.derivative(a, delta);
        trace.push(Step { a, y, delta, dy });
        y = dm.cod().act(y, dy);
        a = dm.dom().act(a, delta);
    }
    Ok(Fold { output: y, input: a, recomputed: dm.apply(a), trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::FiniteChangeAction;
    use crate::monoid::FiniteMonoid;
    use proptest::prelude::*;

    fn square5() -> DifferentialMap {
        let z5 = FiniteChangeAction::monoidal(&FiniteMonoid::cyclic(5));
        DifferentialMap::from_fns(z5.clone(), z5, |x| x * x % 5, |x, d| (2 * x * d + d * d) % 5).unwrap()
    }

    #[test]
    fn empty_sequence() {
        let fold = incremental_fold(&square5(), 3, &[]).unwrap();
        assert_eq!(fold.output, 4);
        assert!(fold.trace.is_empty());
        assert!(fold.consistent());
    }

    #[test]
    fn squaring_from_one() {
        let fold = incremental_fold(&square5(), 1, &[1, 2]).unwrap();
        assert_eq!(fold.output, 1);
        assert_eq!(fold.input, 4);
        assert_eq!(fold.trace[0], Step { a: 1, y: 1, delta: 1, dy: 3 });
        assert!(fold.consistent());
    }

    #[test]
    fn out_of_range() {
        assert!(incremental_fold(&square5(), 5, &[]).is_err());
        assert!(incremental_fold(&square5(), 0, &[7]).is_err());
    }

    proptest! {
        #[test]
        fn matches_recomputation(a0 in 0usize..5, changes in proptest::collection::vec(0usize..5, 0..20)) {
            let fold = incremental_fold(&square5(), a0, &changes).unwrap();
            let end = changes.iter().fold(a0, |a, d| (a + d) % 5);
            prop_assert_eq!(fold.output, end * end % 5);
        }
    }
}

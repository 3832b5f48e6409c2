use std::fmt;
use std::sync::Arc;

use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

use super::map::OmegaMap;

/// Default bound on `|prₙ D A|` for a depth-`n` tower.
pub const TOWER_SPACE_LIMIT: u128 = 1_000_000;

/// The structure maps `⊕ⱼ : Πʲ A × Πʲ⁺¹ A → Πʲ A` and
/// `+ⱼ : Πʲ⁺¹ A × Πʲ⁺¹ A → Πʲ⁺¹ A`, each truncated at depth `N − j − 1`.
#[derive(Clone)]
pub struct Structure {
    pub oplus: Vec<OmegaMap>,
    pub plus: Vec<OmegaMap>,
}

/// A tower of change actions `Δ(A, j) = (Aⱼ, Aⱼ₊₁, ⊕, +, 0)` for `j < N`,
/// truncated at depth `N`.
///
/// `size(k, m)` is `|prₘ D(Πᵏ A)|` for `k + m ≤ N`. Derivative spaces are
/// packed row-major, so `prₘ₊₁ D(Πᵏ A) = prₘ D(Πᵏ A) × prₘ D(Πᵏ⁺¹ A)` has
/// the left factor in the high digits.
#[derive(Clone)]
pub struct OmegaTower(Arc<Tower>);

struct Tower {
    carriers: Vec<usize>,
    levels: Vec<FiniteChangeAction>,
    sizes: Vec<Vec<usize>>,
    spaces: Vec<Vec<FiniteChangeAction>>,
    structure: Option<Structure>,
}

fn checked_sizes(carriers: &[usize], limit: u128) -> Result<Vec<Vec<usize>>> {
    let n = carriers.len() - 1;
    let mut sizes: Vec<Vec<u128>> = carriers.iter().map(|&c| vec![c as u128]).collect();
    for m in 1..=n {
        for k in 0..=n - m {
            let s = sizes[k][m - 1].saturating_mul(sizes[k + 1][m - 1]);
            sizes[k].push(s);
        }
    }
    let top = sizes[0][n];
    let bound = limit.min(u64::MAX as u128 >> 1);
    if top > bound {
        return Err(Error::SpaceTooLarge { size: top, bound });
    }
    Ok(sizes.into_iter().map(|row| row.into_iter().map(|s| s as usize).collect()).collect())
}

impl OmegaTower {
    /// A tower from its levels; `base` is `|A₀|` (only used when there are
    /// no levels). Rejects towers with `|prₙ D A| > 10⁶`.
    pub fn from_levels(base: usize, levels: Vec<FiniteChangeAction>) -> Result<Self> {
        Self::from_levels_with_limit(base, levels, TOWER_SPACE_LIMIT)
    }

    pub fn from_levels_with_limit(base: usize, levels: Vec<FiniteChangeAction>, limit: u128) -> Result<Self> {
        let mut carriers = vec![levels.first().map_or(base, |l| l.base_size())];
        for (j, l) in levels.iter().enumerate() {
            if l.base_size() != carriers[j] {
                return Err(Error::DimensionMismatch(format!(
                    "level {j} acts on {} points but level {} has {} changes",
                    l.base_size(),
                    j.saturating_sub(1),
                    carriers[j]
                )));
            }
            for (law, r) in l.law_reports() {
                if let Some(witness) = r.witness {
                    return Err(Error::ActionLawViolation { law, witness });
                }
            }
            carriers.push(l.changes().size());
        }
        let sizes = checked_sizes(&carriers, limit)?;
        let n = levels.len();
        let mut spaces: Vec<Vec<FiniteChangeAction>> = levels.iter().map(|l| vec![l.clone()]).collect();
        for j in 1..n {
            for k in 0..n - j {
                let d = FiniteChangeAction::product(&spaces[k][j - 1], &spaces[k + 1][j - 1]);
                spaces[k].push(d);
            }
        }
        Ok(Self(Arc::new(Tower { carriers, levels, sizes, spaces, structure: None })))
    }

    /// Every level is the monoid acting on itself.
    pub fn monoidal(m: &FiniteMonoid, depth: usize) -> Result<Self> {
        Self::from_levels(m.size(), vec![FiniteChangeAction::monoidal(m); depth])
    }

    /// All carriers are one point.
    pub fn terminal(depth: usize) -> Self {
        Self::monoidal(&FiniteMonoid::trivial(), depth).expect("one-point towers are tiny")
    }

    pub(crate) fn with_structure(self, structure: Structure) -> Self {
        let t = Arc::try_unwrap(self.0).unwrap_or_else(|arc| Tower {
            carriers: arc.carriers.clone(),
            levels: arc.levels.clone(),
            sizes: arc.sizes.clone(),
            spaces: arc.spaces.clone(),
            structure: None,
        });
        Self(Arc::new(Tower { structure: Some(structure), ..t }))
    }

    pub fn depth(&self) -> usize {
        self.0.levels.len()
    }

    pub fn carriers(&self) -> &[usize] {
        &self.0.carriers
    }

    pub fn carrier(&self, i: usize) -> usize {
        self.0.carriers[i]
    }

    /// `Δ(A, j)`.
    pub fn level(&self, j: usize) -> Result<&FiniteChangeAction> {
        self.0.levels.get(j).ok_or(Error::DepthExceeded { requested: j + 1, available: self.depth() })
    }

    pub fn levels(&self) -> &[FiniteChangeAction] {
        &self.0.levels
    }

    /// `|prₘ D(Πᵏ A)|`; requires `k + m ≤ N`.
    pub fn size(&self, k: usize, m: usize) -> usize {
        self.0.sizes[k][m]
    }

    /// `D(Πᵏ A, j)`, a change action on `prⱼ D(Πᵏ A)`; requires `k + j < N`.
    pub fn space(&self, k: usize, j: usize) -> Result<&FiniteChangeAction> {
        self.0
            .spaces
            .get(k)
            .and_then(|row| row.get(j))
            .ok_or(Error::DepthExceeded { requested: k + j + 1, available: self.depth() })
    }

    pub fn structure(&self) -> Option<&Structure> {
        self.0.structure.as_ref()
    }

    /// `Π A`, one level shorter; structure maps move down by one.
    pub fn shift(&self) -> Result<Self> {
        if self.depth() == 0 {
            return Err(Error::DepthExceeded { requested: 1, available: 0 });
        }
        let t = Self::from_levels_with_limit(self.carrier(1), self.0.levels[1..].to_vec(), u128::MAX)?;
        Ok(match self.structure() {
            Some(s) => t.with_structure(Structure { oplus: s.oplus[1..].to_vec(), plus: s.plus[1..].to_vec() }),
            None => t,
        })
    }

    pub fn shift_by(&self, k: usize) -> Result<Self> {
        (0..k).try_fold(self.clone(), |t, _| t.shift())
    }

    /// The first `n + 1` stages.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.depth() {
            return Err(Error::DepthExceeded { requested: n, available: self.depth() });
        }
        if n == self.depth() {
            return Ok(self.clone());
        }
        let t = Self::from_levels_with_limit(self.carrier(0), self.0.levels[..n].to_vec(), u128::MAX)?;
        Ok(match self.structure() {
            Some(s) => {
                let cut = |maps: &[OmegaMap]| -> Result<Vec<OmegaMap>> {
                    maps[..n].iter().enumerate().map(|(j, m)| m.truncate(n - j - 1)).collect()
                };
                t.with_structure(Structure { oplus: cut(&s.oplus)?, plus: cut(&s.plus)? })
            }
            None => t,
        })
    }

    /// `εʲ : prₘ₊₁ D(Πᵏ A) → prₘ D(Πᵏ A)`, with `ε⁰ = π₁` and
    /// `εʲ⁺¹ = εʲ × εʲ`; requires `j ≤ m` and `k + m < N`.
    pub fn eps(&self, k: usize, j: usize, m: usize, x: usize) -> usize {
        let right = self.size(k + 1, m);
        if j == 0 {
            return x / right;
        }
        let (l, r) = (x / right, x % right);
        self.eps(k, j - 1, m - 1, l) * self.size(k + 1, m - 1) + self.eps(k + 1, j - 1, m - 1, r)
    }

    /// `κʲ : prₘ D(Πᵏ A) → prₘ₋ⱼ D(Πᵏ⁺ʲ A)`, with `κ⁰ = Id` and
    /// `κʲ⁺¹ = π₂ ∘ κʲ`; requires `j ≤ m`.
    pub fn kappa(&self, k: usize, j: usize, m: usize, mut x: usize) -> usize {
        for i in 0..j {
            x %= self.size(k + i + 1, m - i - 1);
        }
        x
    }
}

impl PartialEq for OmegaTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.carriers == other.0.carriers && self.0.levels == other.0.levels)
    }
}

impl fmt::Debug for OmegaTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OmegaTower")
            .field("carriers", &self.0.carriers)
            .field("structure", &self.0.structure.is_some())
            .finish()
    }
}

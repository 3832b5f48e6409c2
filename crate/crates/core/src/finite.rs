//! Enumeration machinery shared by every law check in the crate.
//!
//! Carriers are finite and addressed by index. Tuple spaces are flattened
//! row-major (the last coordinate varies fastest), which is the single
//! indexing convention used everywhere: product carriers, derivative tables
//! `df[a * |ΔA| + δ]`, truth tables, and derivative spaces of towers.
//!
//! [`forall_check`] decides a predicate over a tuple space. Spaces of at most
//! [`CheckConfig::exhaustive_limit`] points are enumerated completely and
//! report the lexicographically least counterexample; larger spaces are
//! sampled from a seeded ChaCha stream so that equal seeds give equal reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::FiniteChangeAction;
use crate::error::{Error, Result};

/// Default bound on the number of points enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
/// Default number of draws for sampled checks.
pub const DEFAULT_SAMPLES: u64 = 100_000;

/// A total function between finite carriers, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TabFun {
    cod_size: usize,
    values: Vec<usize>,
}

impl TabFun {
    pub fn new(cod_size: usize, values: Vec<usize>) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v >= cod_size) {
            return Err(Error::IndexOutOfRange { value: v, bound: cod_size });
        }
        Ok(Self { cod_size, values })
    }

    pub fn from_fn(dom_size: usize, cod_size: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(cod_size, (0..dom_size).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self { cod_size: n, values: (0..n).collect() }
    }

    pub fn constant(dom_size: usize, cod_size: usize, value: usize) -> Result<Self> {
        Self::new(cod_size, vec![value; dom_size])
    }

    pub fn dom_size(&self) -> usize {
        self.values.len()
    }

    pub fn cod_size(&self) -> usize {
        self.cod_size
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &TabFun) -> Result<TabFun> {
        if self.cod_size != then.dom_size() {
            return Err(Error::CompositionMismatch);
        }
        Ok(TabFun { cod_size: then.cod_size, values: self.values.iter().map(|&v| then.values[v]).collect() })
    }

    /// True iff the table is a bijection onto its codomain.
    pub fn is_permutation(&self) -> bool {
        if self.dom_size() != self.cod_size {
            return false;
        }
        let mut seen = vec![false; self.cod_size];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

/// Row-major bijection between a tuple space and flat indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIndex {
    sizes: Vec<usize>,
    total: usize,
}

impl ProductIndex {
    pub fn new(sizes: &[usize]) -> Result<Self> {
        Self::with_bound(sizes, EXHAUSTIVE_LIMIT)
    }

    pub fn with_bound(sizes: &[usize], bound: u128) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::DimensionMismatch("empty size list".into()));
        }
        let size = space_size(sizes);
        if size > bound || size > usize::MAX as u128 {
            return Err(Error::SpaceTooLarge { size, bound });
        }
        Ok(Self { sizes: sizes.to_vec(), total: size as usize })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn flatten(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.sizes.len());
        tuple.iter().zip(&self.sizes).fold(0, |acc, (&t, &s)| acc * s + t)
    }

    pub fn unflatten(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        unflatten_into(&self.sizes, index as u128, &mut out);
        out
    }
}

/// Number of points in the product of `sizes`, saturating at `u128::MAX`.
pub fn space_size(sizes: &[usize]) -> u128 {
    sizes.iter().fold(1u128, |acc, &s| acc.saturating_mul(s as u128))
}

fn unflatten_into(sizes: &[usize], mut index: u128, out: &mut [usize]) {
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        *slot = (index % s as u128) as usize;
        index /= s as u128;
    }
}

// Odometer step; returns false after the last tuple.
fn increment(tuple: &mut [usize], sizes: &[usize]) -> bool {
    for (t, &s) in tuple.iter_mut().zip(sizes).rev() {
        *t += 1;
        if *t < s {
            return true;
        }
        *t = 0;
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, n: u64 },
}

/// Outcome of a universally quantified check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
    pub checked: u64,
    pub mode: CheckMode,
}

impl CheckReport {
    /// A vacuous pass over an empty space.
    pub fn vacuous() -> Self {
        Self { passed: true, witness: None, checked: 0, mode: CheckMode::Exhaustive }
    }

    /// Combines reports of checks run in sequence; the first failure wins.
    pub fn and(self, other: CheckReport) -> CheckReport {
        if !self.passed {
            return self;
        }
        let mode = match (self.mode, other.mode) {
            (CheckMode::Exhaustive, m) => m,
            (m, _) => m,
        };
        CheckReport { passed: other.passed, witness: other.witness, checked: self.checked + other.checked, mode }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub exhaustive_limit: u128,
    pub samples: u64,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self { exhaustive_limit: EXHAUSTIVE_LIMIT, samples: DEFAULT_SAMPLES, seed: 0 }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

/// Checks `pred` over the tuple space `sizes` with the default configuration.
pub fn forall_check<P>(sizes: &[usize], pred: P) -> CheckReport
where
    P: Fn(&[usize]) -> bool + Sync,
{
    forall_check_with(&CheckConfig::default(), sizes, pred)
}

pub fn forall_check_with<P>(cfg: &CheckConfig, sizes: &[usize], pred: P) -> CheckReport
where
    P: Fn(&[usize]) -> bool + Sync,
{
    let total = space_size(sizes);
    if total == 0 {
        return CheckReport::vacuous();
    }
    if total <= cfg.exhaustive_limit {
        let witness = exhaustive_search(sizes, total as u64, &pred);
        CheckReport { passed: witness.is_none(), witness, checked: total as u64, mode: CheckMode::Exhaustive }
    } else {
        let draws = sample_tuples(sizes, cfg.seed, cfg.samples);
        let witness = first_failure(&draws, sizes.len(), &pred);
        CheckReport {
            passed: witness.is_none(),
            witness,
            checked: cfg.samples,
            mode: CheckMode::Sampled { seed: cfg.seed, n: cfg.samples },
        }
    }
}

const CHUNK: u64 = 1 << 12;

fn exhaustive_search<P>(sizes: &[usize], total: u64, pred: &P) -> Option<Vec<usize>>
where
    P: Fn(&[usize]) -> bool + Sync,
{
    let scan = |chunk: u64| -> Option<Vec<usize>> {
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut tuple = vec![0; sizes.len()];
        unflatten_into(sizes, start as u128, &mut tuple);
        for _ in start..end {
            if !pred(&tuple) {
                return Some(tuple);
            }
            increment(&mut tuple, sizes);
        }
        None
    };
    let chunks = total.div_ceil(CHUNK);
    #[cfg(feature = "parallel")]
    {
        if chunks > 1 {
            use rayon::prelude::*;
            return (0..chunks).into_par_iter().find_map_first(scan);
        }
    }
    (0..chunks).find_map(scan)
}

/// Draws `n` uniform tuples from the space; deterministic in `seed`.
pub fn sample_tuples(sizes: &[usize], seed: u64, n: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n as usize * sizes.len());
    for _ in 0..n {
        for &s in sizes {
            out.push(rng.random_range(0..s));
        }
    }
    out
}

fn first_failure<P>(draws: &[usize], arity: usize, pred: &P) -> Option<Vec<usize>>
where
    P: Fn(&[usize]) -> bool + Sync,
{
    if arity == 0 {
        return if pred(&[]) { None } else { Some(Vec::new()) };
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        draws.par_chunks(arity).find_first(|t| !pred(t)).map(|t| t.to_vec())
    }
    #[cfg(not(feature = "parallel"))]
    {
        draws.chunks(arity).find(|t| !pred(t)).map(|t| t.to_vec())
    }
}

/// Per-point candidate sets of a derivative search.
///
/// The set of derivatives of `f` is the cartesian product of the candidate
/// sets, one per domain point `(a, δa)` in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeSolutions {
    cod_changes: usize,
    choices: Vec<Vec<usize>>,
}

impl DerivativeSolutions {
    pub fn choices(&self) -> &[Vec<usize>] {
        &self.choices
    }

    /// Number of derivative tables.
    pub fn count(&self) -> u128 {
        self.choices.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    pub fn is_empty(&self) -> bool {
        self.choices.iter().any(Vec::is_empty)
    }

    /// The derivative, when there is exactly one.
    pub fn unique(&self) -> Option<TabFun> {
        if self.choices.iter().all(|c| c.len() == 1) {
            Some(TabFun { cod_size: self.cod_changes, values: self.choices.iter().map(|c| c[0]).collect() })
        } else {
            None
        }
    }

    /// Enumerates every derivative table in row-major order of choices.
    pub fn iter(&self) -> impl Iterator<Item = TabFun> + '_ {
        let sizes: Vec<usize> = self.choices.iter().map(Vec::len).collect();
        let mut cursor = if self.is_empty() { None } else { Some(vec![0usize; sizes.len()]) };
        std::iter::from_fn(move || {
            let current = cursor.as_mut()?;
            let table = TabFun {
                cod_size: self.cod_changes,
                values: current.iter().zip(&self.choices).map(|(&i, c)| c[i]).collect(),
            };
            if !increment(current, &sizes) {
                cursor = None;
            }
            Some(table)
        })
    }
}

/// Maximum `|A|·|ΔA|` accepted by [`solve_derivative`].
pub const SOLVE_MAX_POINTS: usize = 16;
/// Maximum `|ΔB|` accepted by [`solve_derivative`].
pub const SOLVE_MAX_CHANGES: usize = 4;

/// Inverts the derivative condition pointwise.
///
/// For every `(a, δa)` collects `{δb : f(a) ⊕ δb = f(a ⊕ δa)}`. No regularity
/// filter is applied.
pub fn solve_derivative(f: &TabFun, dom: &FiniteChangeAction, cod: &FiniteChangeAction) -> Result<DerivativeSolutions> {
    if f.dom_size() != dom.base_size() || f.cod_size() != cod.base_size() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}→{}, change actions have bases {} and {}",
            f.dom_size(),
            f.cod_size(),
            dom.base_size(),
            cod.base_size()
        )));
    }
    let points = dom.base_size() * dom.changes().size();
    let cod_changes = cod.changes().size();
    if points > SOLVE_MAX_POINTS || cod_changes > SOLVE_MAX_CHANGES {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{points} domain points (max {SOLVE_MAX_POINTS}), {cod_changes} codomain changes (max {SOLVE_MAX_CHANGES})"
        )));
    }
    let n_changes = dom.changes().size();
    let choices = (0..points)
        .map(|p| {
            let (a, da) = (p / n_changes, p % n_changes);
            let target = f.apply(dom.act(a, da));
            let fa = f.apply(a);
            (0..cod_changes).filter(|&db| cod.act(fa, db) == target).collect()
        })
        .collect();
    Ok(DerivativeSolutions { cod_changes, choices })
}

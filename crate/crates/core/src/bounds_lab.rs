//! Exhaustive experiments over staircase ideals: the least `k` needed to
//! compute the mld, the set of attained mld values, and an ACC probe.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::discrepancy::{mld_terms, MldValue, Term, WeightVector};
use crate::newton_geometry::{Monomial, MonomialIdeal, NewtonPolygon};
use crate::scalars::{ExactScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("at least one exponent is required")]
    NoExponents,
    #[error("exponent {0} is not positive")]
    NonPositiveExponent(ExactScalar),
    #[error("{boxes} box bounds given for {slots} exponents")]
    BoxCount { boxes: usize, slots: usize },
    #[error("closed form is only known for e >= 1, got {0}")]
    UnsupportedRange(ExactScalar),
    #[error("the exponent set is empty")]
    EmptySet,
}

/// All monomial ideals whose minimal generators lie in `[0..M]^2`, in
/// lexicographic order of their generators (sorted by `x`-degree).
pub fn enumerate_staircases(m: u32, include_trivial: bool) -> Vec<MonomialIdeal> {
    fn extend(m: u32, chain: &mut Vec<Monomial>, out: &mut Vec<MonomialIdeal>) {
        let last = *chain.last().expect("chain is nonempty");
        for ex in last.ex + 1..=m {
            for ey in 0..last.ey {
                chain.push(Monomial::new(ex, ey));
                out.push(MonomialIdeal::from_sorted_antichain(chain.clone()));
                extend(m, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut chain = Vec::new();
    for ex in 0..=m {
        for ey in 0..=m {
            let first = Monomial::new(ex, ey);
            chain.push(first);
            if include_trivial || first != Monomial::ONE {
                out.push(MonomialIdeal::from_sorted_antichain(chain.clone()));
            }
            extend(m, &mut chain, &mut out);
            chain.pop();
        }
    }
    out
}

/// Settings for [`ell_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllConfig {
    /// Generator box per exponent slot; a single entry applies to all.
    pub boxes: Vec<u32>,
    /// Also count the tuple whose ideals are all trivial.
    pub include_trivial: bool,
    /// Largest `p1 + p2` the witness scan may reach; tuples needing more are
    /// counted in `over_budget` and otherwise skipped.
    pub per_ideal_budget: Option<i64>,
    /// Number of tuples attaining the maximum kept as witnesses.
    pub witness_limit: usize,
}

impl EllConfig {
    pub fn new(m: u32) -> Self {
        EllConfig { boxes: vec![m], include_trivial: false, per_ideal_budget: None, witness_limit: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllWitness {
    pub ideals: Vec<MonomialIdeal>,
    pub value: MldValue,
    pub divisor: WeightVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllReport {
    pub exponents: Vec<ExactScalar>,
    pub boxes: Vec<u32>,
    pub include_trivial: bool,
    pub examined: usize,
    pub over_budget: usize,
    /// Largest `k` of a least-`k` computing divisor; `None` if nothing was examined.
    pub max_min_k: Option<i64>,
    /// First tuples (in enumeration order) attaining `max_min_k`.
    pub witnesses: Vec<EllWitness>,
    pub value_set: BTreeSet<MldValue>,
}

fn check_exponents(e: &[ExactScalar]) -> Result<(), LabError> {
    if e.is_empty() {
        return Err(LabError::NoExponents);
    }
    match e.iter().find(|x| !x.is_positive()) {
        Some(bad) => Err(LabError::NonPositiveExponent(bad.clone())),
        None => Ok(()),
    }
}

fn slot_boxes(boxes: &[u32], slots: usize) -> Result<Vec<u32>, LabError> {
    match boxes.len() {
        1 => Ok(vec![boxes[0]; slots]),
        n if n == slots => Ok(boxes.to_vec()),
        n => Err(LabError::BoxCount { boxes: n, slots }),
    }
}

/// Staircases of one slot with their polygons.
struct Slot {
    ideals: Vec<MonomialIdeal>,
    polygons: Vec<NewtonPolygon>,
}

impl Slot {
    fn new(m: u32) -> Self {
        let ideals = enumerate_staircases(m, true);
        let polygons = ideals.iter().map(MonomialIdeal::polygon).collect();
        Slot { ideals, polygons }
    }
}

/// Cartesian product of slots, last slot varying fastest.
struct Product<'a> {
    slots: Vec<Slot>,
    exponents: &'a [ExactScalar],
}

impl<'a> Product<'a> {
    fn new(exponents: &'a [ExactScalar], boxes: &[u32]) -> Self {
        Product { slots: boxes.iter().map(|&m| Slot::new(m)).collect(), exponents }
    }

    fn len(&self) -> usize {
        self.slots.iter().map(|s| s.ideals.len()).product()
    }

    fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.slots.len()];
        for (i, slot) in self.slots.iter().enumerate().rev() {
            out[i] = index % slot.ideals.len();
            index /= slot.ideals.len();
        }
        out
    }

    fn terms(&self, picks: &[usize]) -> Vec<Term<'_>> {
        picks.iter().zip(&self.slots).zip(self.exponents).map(|((&i, s), e)| (&s.polygons[i], e)).collect()
    }

    fn all_trivial(&self, picks: &[usize]) -> bool {
        picks.iter().zip(&self.slots).all(|(&i, s)| s.ideals[i].is_trivial())
    }

    fn level(&self, picks: &[usize]) -> u32 {
        picks.iter().zip(&self.slots).map(|(&i, s)| s.ideals[i].max_exponent()).max().unwrap_or(0)
    }

    fn ideals(&self, picks: &[usize]) -> Vec<MonomialIdeal> {
        picks.iter().zip(&self.slots).map(|(&i, s)| s.ideals[i].clone()).collect()
    }
}

/// Folds `0..total` with an associative merge, in parallel when enabled.
fn fold_indices<A, I, F, M>(total: usize, identity: I, step: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..total).into_par_iter().fold(&identity, &step).reduce(&identity, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = merge;
        (0..total).fold(identity(), step)
    }
}

#[derive(Default)]
struct EllAcc {
    examined: usize,
    over_budget: usize,
    max_k: Option<i64>,
    /// `(index, value, divisor)` attaining `max_k`, smallest indices first.
    witnesses: Vec<(usize, MldValue, WeightVector)>,
    values: BTreeSet<MldValue>,
}

impl EllAcc {
    fn offer(&mut self, index: usize, value: MldValue, divisor: WeightVector, limit: usize) {
        let k = divisor.k();
        match self.max_k {
            Some(best) if k < best => {}
            Some(best) if k == best => self.witnesses.push((index, value, divisor)),
            _ => {
                self.max_k = Some(k);
                self.witnesses = vec![(index, value, divisor)];
            }
        }
        self.trim(limit);
    }

    fn trim(&mut self, limit: usize) {
        if self.witnesses.len() > limit {
            self.witnesses.sort_by_key(|w| w.0);
            self.witnesses.truncate(limit);
        }
    }

    fn merge(mut self, other: EllAcc, limit: usize) -> EllAcc {
        self.examined += other.examined;
        self.over_budget += other.over_budget;
        self.values.extend(other.values);
        match (self.max_k, other.max_k) {
            (_, None) => {}
            (None, _) => {
                self.max_k = other.max_k;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if b > a => {
                self.max_k = other.max_k;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if a == b => self.witnesses.extend(other.witnesses),
            _ => {}
        }
        self.trim(limit);
        self
    }
}

/// Largest least-`k` computing divisor over all tuples of staircases, one
/// per exponent, together with every mld value seen.
pub fn ell_search(e: &[ExactScalar], config: &EllConfig) -> Result<EllReport, LabError> {
    check_exponents(e)?;
    let boxes = slot_boxes(&config.boxes, e.len())?;
    let product = Product::new(e, &boxes);
    let limit = config.witness_limit;

    let acc = fold_indices(
        product.len(),
        EllAcc::default,
        |mut acc, index| {
            let picks = product.decode(index);
            if !config.include_trivial && product.all_trivial(&picks) {
                return acc;
            }
            acc.examined += 1;
            match mld_terms(&product.terms(&picks), config.per_ideal_budget) {
                Ok(r) => {
                    acc.values.insert(r.value.clone());
                    acc.offer(index, r.value, r.divisor, limit);
                }
                Err(_) => acc.over_budget += 1,
            }
            acc
        },
        |a, b| a.merge(b, limit),
    );

    let mut witnesses = acc.witnesses;
    witnesses.sort_by_key(|w| w.0);
    Ok(EllReport {
        exponents: e.to_vec(),
        boxes,
        include_trivial: config.include_trivial,
        examined: acc.examined,
        over_budget: acc.over_budget,
        max_min_k: acc.max_k,
        witnesses: witnesses
            .into_iter()
            .map(|(i, value, divisor)| EllWitness { ideals: product.ideals(&product.decode(i)), value, divisor })
            .collect(),
        value_set: acc.values,
    })
}

/// Least `n >= 1` with `n * x >= 1`, for `x > 0`.
fn ceil_recip(x: &ExactScalar) -> i64 {
    let one = ExactScalar::one();
    let mut hi: i64 = 1;
    while x.scale_int(hi) < one {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // lo * x < 1 <= hi * x, with lo = 0 meaning "none below".
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if x.scale_int(mid) >= one {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Stated values of `ell` for one exponent `e1 >= 1`: 1 for `e1 > 2`,
/// `ceil(1/(e1-1)) + 1` for `1 < e1 <= 2`, and 4 for `e1 = 1`.
pub fn closed_form_ell(e1: &ExactScalar) -> Result<i64, LabError> {
    let one = ExactScalar::one();
    let two = ExactScalar::from_integer(2);
    if e1 < &one {
        return Err(LabError::UnsupportedRange(e1.clone()));
    }
    if e1 == &one {
        Ok(4)
    } else if e1 > &two {
        Ok(1)
    } else {
        Ok(ceil_recip(&(e1 - &one)) + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSetReport {
    pub values: BTreeSet<MldValue>,
    /// Least box bound at which every value had already appeared.
    pub stabilized_at: u32,
    /// Least box bound at which each value first appears.
    pub first_seen: BTreeMap<MldValue, u32>,
}

/// Every mld value over tuples of staircases in `[0..M]^2`, trivial ideals
/// included.
pub fn value_set(e: &[ExactScalar], m: u32) -> Result<ValueSetReport, LabError> {
    check_exponents(e)?;
    let boxes = vec![m; e.len()];
    let product = Product::new(e, &boxes);
    let first_seen = fold_indices(
        product.len(),
        BTreeMap::<MldValue, u32>::new,
        |mut seen, index| {
            let picks = product.decode(index);
            let level = product.level(&picks);
            let value = mld_terms(&product.terms(&picks), None).expect("unbudgeted").value;
            let entry = seen.entry(value).or_insert(level);
            *entry = (*entry).min(level);
            seen
        },
        |mut a, b| {
            for (v, l) in b {
                let entry = a.entry(v).or_insert(l);
                *entry = (*entry).min(l);
            }
            a
        },
    );
    Ok(ValueSetReport {
        values: first_seen.keys().cloned().collect(),
        stabilized_at: first_seen.values().copied().max().unwrap_or(0),
        first_seen,
    })
}

/// Finite description of a set of exponents satisfying DCC: isolated points
/// and limit points, each limit `L` contributing `L (1 - 1/(n+1))` for
/// `n = 1..=terms_per_limit` (an increasing sequence below `L`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DccSet {
    pub points: Vec<Rational>,
    pub limit_points: Vec<Rational>,
    pub terms_per_limit: u32,
}

impl DccSet {
    pub fn finite(points: Vec<Rational>) -> Self {
        DccSet { points, limit_points: Vec::new(), terms_per_limit: 0 }
    }

    /// The finite truncation, sorted and without duplicates or non-positive entries.
    pub fn elements(&self) -> Vec<Rational> {
        let zero = Rational::from_integer(0.into());
        let mut out: BTreeSet<Rational> = self.points.iter().filter(|q| *q > &zero).cloned().collect();
        for l in self.limit_points.iter().filter(|q| *q > &zero) {
            for n in 1..=self.terms_per_limit as i64 {
                out.insert(l * (Rational::from_integer(1.into()) - Rational::new(1.into(), (n + 1).into())));
            }
        }
        out.into_iter().collect()
    }
}

pub const ACC_CAVEAT: &str =
    "Empirical illustration at a fixed generator box over finitely many sampled exponent tuples; it is not a proof.";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccReport {
    pub box_bound: u32,
    pub samples: usize,
    /// Distinct exponent tuples drawn, sorted.
    pub exponent_tuples: Vec<Vec<ExactScalar>>,
    /// Attained values, largest first.
    pub values_descending: Vec<MldValue>,
    /// Longest strictly ascending chain among the attained values.
    pub longest_ascending_chain: Vec<MldValue>,
    pub caveat: &'static str,
}

/// Draws `samples` exponent tuples of length `1..=max_arity` from `set`
/// with a seeded generator and collects the mld values of all staircase
/// tuples in `[0..M]^2` for each.
pub fn acc_probe(set: &DccSet, m: u32, samples: usize, max_arity: usize, seed: u64) -> Result<AccReport, LabError> {
    let elements = set.elements();
    if elements.is_empty() {
        return Err(LabError::EmptySet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuples = BTreeSet::new();
    for _ in 0..samples {
        let arity = rng.gen_range(1..=max_arity.max(1));
        let mut tuple: Vec<Rational> = (0..arity).map(|_| elements[rng.gen_range(0..elements.len())].clone()).collect();
        // Exponent order does not change the value set.
        tuple.sort();
        tuples.insert(tuple);
    }
    let exponent_tuples: Vec<Vec<ExactScalar>> =
        tuples.into_iter().map(|t| t.into_iter().map(ExactScalar::from_rational).collect()).collect();
    let mut values = BTreeSet::new();
    for e in &exponent_tuples {
        values.extend(value_set(e, m)?.values);
    }
    Ok(AccReport {
        box_bound: m,
        samples,
        exponent_tuples,
        values_descending: values.iter().rev().cloned().collect(),
        longest_ascending_chain: values.into_iter().collect(),
        caveat: ACC_CAVEAT,
    })
}

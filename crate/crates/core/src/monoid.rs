//! Numerical monoids: membership, Frobenius numbers, Apéry sets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{overflow, Error, Result};

/// A numerical monoid `S = <n_1, ..., n_k>` given by its minimal generators.
///
/// Construction validates the generators, drops redundant ones and
/// precomputes a membership table over `[0, F(S)]`, so [`contains`] is O(1)
/// everywhere on the integers.
///
/// [`contains`]: NumericalMonoid::contains
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalMonoid {
    generators: Vec<i64>,
    redundant: Vec<i64>,
    frobenius: i64,
    /// `membership[m]` for `m` in `[0, F(S)]`.
    membership: Vec<bool>,
    /// Smallest element of `S` in each residue class modulo `n_1`.
    residue_minima: Vec<i64>,
    period_hint: i64,
}

impl NumericalMonoid {
    /// Builds the monoid generated by `raw`.
    ///
    /// The input may be unsorted and may contain redundant generators; the
    /// stored generating set is the unique minimal one, sorted ascending.
    pub fn new(raw: &[u64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if raw.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let mut sorted = raw
            .iter()
            .map(|&g| i64::try_from(g).map_err(|_| overflow("generator conversion")))
            .collect::<Result<Vec<_>>>()?;
        sorted.sort_unstable();
        sorted.dedup();

        let g = sorted.iter().copied().fold(0, gcd);
        if g > 1 {
            return Err(Error::NonCoprime { gcd: g });
        }

        let n1 = sorted[0];
        let mut generators = vec![n1];
        let mut redundant = Vec::new();
        let mut minima = residue_minima(n1, &generators)?;
        for &candidate in &sorted[1..] {
            let r = (candidate % n1) as usize;
            if minima[r].is_some_and(|least| least <= candidate) {
                redundant.push(candidate);
            } else {
                generators.push(candidate);
                minima = residue_minima(n1, &generators)?;
            }
        }
        // gcd = 1 guarantees every residue class is reached.
        let residue_minima: Vec<i64> = minima.into_iter().map(|m| m.unwrap()).collect();
        let frobenius = residue_minima.iter().copied().max().unwrap_or(0) - n1;

        let membership = (0..=frobenius.max(-1))
            .map(|m| m >= residue_minima[(m % n1) as usize])
            .collect();

        let nk = *generators.last().unwrap();
        let period_hint = (n1 / gcd(n1, nk))
            .checked_mul(nk)
            .ok_or_else(|| overflow("lcm(n_1, n_k)"))?;

        Ok(Self {
            generators,
            redundant,
            frobenius,
            membership,
            residue_minima,
            period_hint,
        })
    }

    /// Minimal generators `n_1 < ... < n_k`.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    /// Input generators that were dropped because the others already produce them.
    pub fn redundant_generators(&self) -> &[i64] {
        &self.redundant
    }

    /// Embedding dimension `k`.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// The multiplicity `n_1`.
    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    /// The largest generator `n_k`.
    pub fn max_generator(&self) -> i64 {
        *self.generators.last().unwrap()
    }

    /// `F(S)`, the largest integer outside `S`; `-1` when `S` is all of `N`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// `lcm(n_1, n_k)`.
    pub fn period_hint(&self) -> i64 {
        self.period_hint
    }

    /// `true` when `S = N` (that is, `n_1 = 1`).
    pub fn is_trivial(&self) -> bool {
        self.generators[0] == 1
    }

    /// Index of `g` among the minimal generators.
    pub fn generator_index(&self, g: i64) -> Option<usize> {
        self.generators.binary_search(&g).ok()
    }

    #[inline]
    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            false
        } else if m > self.frobenius {
            true
        } else {
            self.membership[m as usize]
        }
    }

    /// The integers in `[0, F(S)]` that are not in `S`.
    pub fn gaps(&self) -> Vec<i64> {
        (0..=self.frobenius).filter(|&m| !self.contains(m)).collect()
    }

    /// `Ap(S; s) = { m in S : m - s not in S }`.
    pub fn apery_set(&self, s: i64) -> Result<AperySet> {
        if s <= 0 {
            return Err(Error::NonPositiveBase(s));
        }
        if !self.contains(s) {
            return Err(Error::NotInMonoid(s));
        }
        // Every Apéry element m has m - s <= F(S).
        let top = self
            .frobenius
            .checked_add(s)
            .ok_or_else(|| overflow("Apéry scan bound"))?;
        let elements = (0..=top)
            .filter(|&m| self.contains(m) && !self.contains(m - s))
            .collect();
        Ok(AperySet { base: s, elements })
    }

    /// `Ap(S; n_i)` intersected over every generator `n_i` in `subset`.
    pub fn apery_intersection(&self, subset: &[i64]) -> Result<Vec<i64>> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = subset.iter().find(|&&g| self.generator_index(g).is_none()) {
            return Err(Error::NotAGenerator(bad));
        }
        let top = self
            .frobenius
            .checked_add(subset.iter().copied().min().unwrap())
            .ok_or_else(|| overflow("Apéry scan bound"))?;
        Ok((0..=top)
            .filter(|&m| self.contains(m) && subset.iter().all(|&g| !self.contains(m - g)))
            .collect())
    }

    /// Pseudo-Frobenius numbers: `n` outside `S` with `n + n_i` in `S` for every generator.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        // n + n_1 in S forces n >= -n_1; the only negative candidate that can
        // qualify is -1, and only when S = N.
        (-self.multiplicity()..=self.frobenius)
            .filter(|&n| !self.contains(n) && self.generators.iter().all(|&g| self.contains(n + g)))
            .collect()
    }

    /// Smallest element of `S` congruent to `r` modulo `n_1`, for each `r`.
    pub fn residue_minima(&self) -> &[i64] {
        &self.residue_minima
    }
}

/// The Apéry set of `S` with respect to a single element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperySet {
    pub base: i64,
    /// Sorted ascending; always starts with 0.
    pub elements: Vec<i64>,
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Shortest-path relaxation over the residues modulo `n1`: the least
/// representable value in each class, or `None` when the class is unreachable.
fn residue_minima(n1: i64, generators: &[i64]) -> Result<Vec<Option<i64>>> {
    let modulus = n1 as usize;
    let mut best: Vec<Option<i64>> = vec![None; modulus];
    best[0] = Some(0);
    let mut heap = BinaryHeap::from([Reverse((0i64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if best[r] != Some(d) {
            continue;
        }
        for &g in &generators[1..] {
            let nd = d.checked_add(g).ok_or_else(|| overflow("residue minima"))?;
            let nr = (r + (g % n1) as usize) % modulus;
            if best[nr].map_or(true, |cur| nd < cur) {
                best[nr] = Some(nd);
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    Ok(best)
}

//! Delta sets of elements and of the whole monoid, plus detection of the
//! point where `m ↦ Δ(m)` becomes periodic.

use std::collections::HashMap;

use crate::error::{filled, overflow, Error, Result};
use crate::factorization::{length_sets_up_to, LengthSet};
use crate::monoid::NumericalMonoid;

/// Distinct successive differences of a length set, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaSet(Vec<u64>);

impl DeltaSet {
    pub fn from_gaps<I: IntoIterator<Item = u64>>(gaps: I) -> Self {
        let mut v: Vec<u64> = gaps.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn gaps(&self) -> &[u64] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.0.binary_search(&d).is_ok()
    }

    pub fn is_subset(&self, other: &DeltaSet) -> bool {
        self.0.iter().all(|&d| other.contains(d))
    }

    fn absorb(&mut self, other: &[u64]) {
        for &d in other {
            if let Err(pos) = self.0.binary_search(&d) {
                self.0.insert(pos, d);
            }
        }
    }
}

pub fn delta_of_lengths(lengths: &LengthSet) -> DeltaSet {
    DeltaSet(lengths.successive_gaps())
}

/// Streams `(m, Δ(m))` for every nonzero `m` in `[1, n] ∩ S`.
pub fn deltas_up_to<F>(s: &NumericalMonoid, n: i64, mut sink: F) -> Result<()>
where
    F: FnMut(i64, &DeltaSet),
{
    if n < 1 {
        return Ok(());
    }
    length_sets_up_to(s, n, |m, l| {
        if m > 0 {
            sink(m, &delta_of_lengths(l));
        }
    })
}

/// `2k·n_2·n_k² + n_1·n_k`: past this element every `Δ(m)` already appears
/// below it, so `Δ(S)` is the union of `Δ(m)` for `m` up to this bound.
pub fn periodicity_bound(s: &NumericalMonoid) -> Result<i64> {
    let g = s.generators();
    if g.len() < 2 {
        return Err(Error::TooFewGenerators);
    }
    let (n1, n2, nk) = (g[0], g[1], *g.last().unwrap());
    let k = g.len() as i64;
    let err = || overflow("delta periodicity bound");
    let head = (2 * k)
        .checked_mul(n2)
        .and_then(|x| x.checked_mul(nk))
        .and_then(|x| x.checked_mul(nk))
        .ok_or_else(err)?;
    head.checked_add(n1.checked_mul(nk).ok_or_else(err)?).ok_or_else(err)
}

/// The last element scanned by [`delta_set`].
pub fn delta_scan_limit(s: &NumericalMonoid, bound_override: Option<i64>) -> Result<i64> {
    match bound_override {
        Some(start) => start
            .checked_add(s.period_hint())
            .ok_or_else(|| overflow("delta scan limit")),
        None => periodicity_bound(s),
    }
}

/// `Δ(S)`, the union of `Δ(m)` over the nonzero elements of `S`.
///
/// Without an override the scan covers `(0, B]` for the bound `B` of
/// [`periodicity_bound`]. With `bound_override = Some(N)`, where `N` is any
/// known start of periodic behaviour, the scan covers `(0, N + lcm(n_1, n_k)]`.
/// `S = N` has an empty delta set.
pub fn delta_set(s: &NumericalMonoid, bound_override: Option<i64>) -> Result<DeltaSet> {
    if s.is_trivial() {
        return Ok(DeltaSet::default());
    }
    let limit = delta_scan_limit(s, bound_override)?;
    let mut out = DeltaSet::default();
    length_sets_up_to(s, limit, |m, l| {
        if m > 0 {
            out.absorb(&l.successive_gaps());
        }
    })?;
    Ok(out)
}

/// Where and with what period `Δ(m)` settles down on a scanned range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaPeriodicityReport {
    /// Largest `m ∈ S` with `Δ(m) ≠ Δ(m + period)`, or 0 if there is none:
    /// `Δ(m) = Δ(m + period)` for every `m ∈ S` with
    /// `dissonance_start < m ≤ verified_up_to - period`.
    pub dissonance_start: i64,
    /// Least divisor of `lcm(n_1, n_k)` that is a period past `dissonance_start`.
    pub period: i64,
    pub verified_up_to: i64,
}

/// Computes `Δ(m)` for `m ∈ (0, horizon]` and finds the eventual period and
/// the last element that breaks it.
///
/// Only the divisors of `lcm(n_1, n_k)` are candidate periods. The result is
/// exact when `horizon` exceeds a proven start of periodicity by at least
/// `lcm(n_1, n_k)`, e.g. [`periodicity_bound`]` + lcm`; below that it is
/// what the scanned data shows.
pub fn delta_periodicity(s: &NumericalMonoid, horizon: i64) -> Result<DeltaPeriodicityReport> {
    let lcm = s.period_hint();
    let minimum = lcm
        .checked_add(s.max_generator())
        .ok_or_else(|| overflow("periodicity horizon"))?;
    if horizon < minimum {
        return Err(Error::HorizonTooSmall { horizon, minimum });
    }

    // Intern each distinct delta set so comparisons are integer compares.
    let mut ids: HashMap<DeltaSet, u32> = HashMap::new();
    let mut profile: Vec<Option<u32>> = filled(horizon.saturating_add(1), None, "delta profile")?;
    deltas_up_to(s, horizon, |m, d| {
        let next = ids.len() as u32;
        let id = *ids.entry(d.clone()).or_insert(next);
        profile[m as usize] = Some(id);
    })?;

    // A non-element m + p never matches an element m.
    let last_break = |p: i64| -> i64 {
        (1..=horizon - p)
            .rev()
            .find(|&m| {
                let here = profile[m as usize];
                here.is_some() && here != profile[(m + p) as usize]
            })
            .unwrap_or(0)
    };

    let full = last_break(lcm);
    let period = divisors(lcm)
        .into_iter()
        .find(|&p| last_break(p) <= full)
        .unwrap_or(lcm);

    Ok(DeltaPeriodicityReport {
        dissonance_start: last_break(period),
        period,
        verified_up_to: horizon,
    })
}

fn divisors(n: i64) -> Vec<i64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

//! ω-primality on `S` and on its quotient group `Z`.
//!
//! The dynamic algorithm tracks, for every integer `m ≥ -F(S)`, the set of
//! maximal *dynamic bullets* `(value, length)` of `m`. An element below
//! `-F(S)` has the single bullet `0`, and the bullets of `m` are the images
//! of the bullets of `m - n_i` under the cover maps
//!
//! ```text
//! (v, l) ↦ (v, l)            if v - m ∈ S
//! (v, l) ↦ (v + n_i, l + 1)  otherwise
//! ```
//!
//! `ω(m)` is the largest length present. Every bullet value of `m` has the
//! form `m + y` with `y` in an Apéry set of some generator, so the number of
//! stored bullets per element is bounded independently of `m` and the scan
//! is linear in the target.

use std::collections::BTreeSet;

pub use num_rational::Ratio;

use crate::error::{filled, overflow, Error, Result};
use crate::factorization::brute_force_factorizations;
use crate::monoid::{gcd, NumericalMonoid};
use crate::window::Window;

/// Which elements an ω listing covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Domain {
    /// Only elements of `S`.
    #[default]
    Monoid,
    /// Every integer from `-F(S)` up.
    Quotient,
}

/// An exponent vector `b` that is a bullet for `target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bullet {
    pub exponents: Vec<u32>,
    pub target: i64,
}

impl Bullet {
    pub fn length(&self) -> u64 {
        self.exponents.iter().map(|&b| u64::from(b)).sum()
    }

    pub fn value(&self, s: &NumericalMonoid) -> i64 {
        vector_value(s, &self.exponents)
    }

    /// The `(value, length)` compression of this bullet.
    pub fn compress(&self, s: &NumericalMonoid) -> DynamicBullet {
        DynamicBullet {
            value: self.value(s),
            length: self.length(),
        }
    }
}

/// `(value, length)` of some bullet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DynamicBullet {
    pub value: i64,
    pub length: u64,
}

fn vector_value(s: &NumericalMonoid, b: &[u32]) -> i64 {
    b.iter().zip(s.generators()).map(|(&c, &g)| i64::from(c) * g).sum()
}

/// One stored dynamic bullet, keyed by `excess = value - element`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    excess: i64,
    length: u64,
}

/// The ω value and maximal dynamic bullets of one element, as produced by [`OmegaScan`].
#[derive(Debug, Clone, Copy)]
pub struct OmegaStep<'a> {
    pub element: i64,
    pub omega: u64,
    slots: &'a [Slot],
}

impl OmegaStep<'_> {
    /// Number of distinct bullet values stored for this element.
    pub fn distinct_values(&self) -> usize {
        self.slots.len()
    }

    /// Maximal dynamic bullets, sorted by value.
    pub fn dynamic_bullets(&self) -> Vec<DynamicBullet> {
        let mut out: Vec<DynamicBullet> = self
            .slots
            .iter()
            .map(|s| DynamicBullet {
                value: self.element + s.excess,
                length: s.length,
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Incremental ω computation starting at `-F(S)`.
///
/// Each call to [`advance`](OmegaScan::advance) handles the next integer.
/// Only the last `n_k` bullet sets are retained.
pub struct OmegaScan<'a> {
    s: &'a NumericalMonoid,
    window: Window<Vec<Slot>>,
    best: Vec<Option<u64>>,
    touched: Vec<usize>,
    next: i64,
}

impl<'a> OmegaScan<'a> {
    pub fn new(s: &'a NumericalMonoid) -> Result<Self> {
        let start = -s.frobenius();
        let width = s
            .frobenius()
            .checked_add(s.max_generator())
            .and_then(|w| w.checked_add(1))
            .and_then(|w| usize::try_from(w).ok())
            .ok_or_else(|| overflow("bullet excess range"))?;
        Ok(Self {
            s,
            window: Window::new(s.max_generator() as usize, start),
            best: vec![None; width],
            touched: Vec::new(),
            next: start,
        })
    }

    /// The element the next call to `advance` will compute.
    pub fn next_element(&self) -> i64 {
        self.next
    }

    pub fn advance(&mut self) -> Result<OmegaStep<'_>> {
        let s = self.s;
        let m = self.next;
        let base = -s.frobenius();
        for &g in s.generators() {
            let source = m.checked_sub(g).ok_or_else(|| overflow("omega scan"))?;
            if source < base {
                // Below -F(S) the only bullet is 0, with excess -source.
                let (excess, length) = if s.contains(-m) { (-m, 0) } else { (g - m, 1) };
                self.offer(excess, length);
            } else {
                let entry = self.window.get(source).expect("window holds the last n_k elements");
                for i in 0..entry.len() {
                    let slot = self.window.get(source).unwrap()[i];
                    let shifted = slot.excess - g;
                    if s.contains(shifted) {
                        self.offer(shifted, slot.length);
                    } else {
                        self.offer(slot.excess, slot.length + 1);
                    }
                }
            }
        }

        let mut slots = Vec::with_capacity(self.touched.len());
        let mut omega = 0;
        for &e in &self.touched {
            let length = self.best[e].take().unwrap();
            omega = omega.max(length);
            slots.push(Slot {
                excess: e as i64,
                length,
            });
        }
        self.touched.clear();

        let _ = self.window.push(Some(slots));
        self.next = m.checked_add(1).ok_or_else(|| overflow("omega scan"))?;
        Ok(OmegaStep {
            element: m,
            omega,
            slots: self.window.get(m).unwrap(),
        })
    }

    #[inline]
    fn offer(&mut self, excess: i64, length: u64) {
        let e = excess as usize;
        match &mut self.best[e] {
            Some(cur) => *cur = (*cur).max(length),
            slot @ None => {
                *slot = Some(length);
                self.touched.push(e);
            }
        }
    }
}

/// ω values on `[-F(S), top]`; everything below `-F(S)` is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    start: i64,
    values: Vec<u64>,
}

impl OmegaTable {
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn top(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    /// `ω(m)`, or `None` above the computed range.
    pub fn get(&self, m: i64) -> Option<u64> {
        if m < self.start {
            Some(0)
        } else {
            self.values.get((m - self.start) as usize).copied()
        }
    }

    /// `(m, ω(m))` pairs over the computed range.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.values.iter().enumerate().map(|(i, &w)| (self.start + i as i64, w))
    }
}

/// Runs the dynamic algorithm from `-F(S)` to `n`.
pub fn omega_table(s: &NumericalMonoid, n: i64) -> Result<OmegaTable> {
    let base = -s.frobenius();
    if n < base {
        return Err(Error::TargetBelowBase { target: n, base });
    }
    let mut scan = OmegaScan::new(s)?;
    let mut values = filled(n.saturating_sub(base).saturating_add(1), 0, "omega table")?;
    for v in &mut values {
        *v = scan.advance()?.omega;
    }
    Ok(OmegaTable { start: base, values })
}

/// `(m, ω(m))` for `m ≤ n`: over `[0, n] ∩ S` or over all of `[-F(S), n]`.
pub fn omega_up_to(s: &NumericalMonoid, n: i64, domain: Domain) -> Result<Vec<(i64, u64)>> {
    let table = omega_table(s, n)?;
    Ok(table
        .iter()
        .filter(|&(m, _)| domain == Domain::Quotient || s.contains(m))
        .collect())
}

/// `ω(n)` for any integer `n`.
pub fn omega(s: &NumericalMonoid, n: i64) -> Result<u64> {
    if n < -s.frobenius() {
        return Ok(0);
    }
    let mut scan = OmegaScan::new(s)?;
    loop {
        let step = scan.advance()?;
        if step.element == n {
            return Ok(step.omega);
        }
    }
}

/// Maximal dynamic bullets of `x`, sorted by value.
pub fn dynamic_bullets(s: &NumericalMonoid, x: i64) -> Result<Vec<DynamicBullet>> {
    if x < -s.frobenius() {
        return Ok(vec![DynamicBullet { value: 0, length: 0 }]);
    }
    let mut scan = OmegaScan::new(s)?;
    loop {
        let step = scan.advance()?;
        if step.element == x {
            return Ok(step.dynamic_bullets());
        }
    }
}

/// All bullets of `x` by exhaustive search over exponent vectors whose
/// value is at most `x + F(S) + n_k`.
pub fn bullets_brute_force(s: &NumericalMonoid, x: i64) -> Result<Vec<Bullet>> {
    let limit = x
        .checked_add(s.frobenius())
        .and_then(|v| v.checked_add(s.max_generator()))
        .ok_or_else(|| overflow("bullet value bound"))?;
    let mut found = Vec::new();
    let mut current = vec![0u32; s.k()];
    search_bullets(s, x, 0, limit.max(0), 0, &mut current, &mut found);
    let mut out: Vec<Bullet> = found
        .into_iter()
        .map(|exponents| Bullet { exponents, target: x })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

fn search_bullets(
    s: &NumericalMonoid,
    x: i64,
    i: usize,
    limit: i64,
    value: i64,
    current: &mut [u32],
    found: &mut Vec<Vec<u32>>,
) {
    let gens = s.generators();
    if i == gens.len() {
        let excess = value - x;
        let is_bullet = s.contains(excess)
            && current
                .iter()
                .zip(gens)
                .all(|(&b, &g)| b == 0 || !s.contains(excess - g));
        if is_bullet {
            found.push(current.to_vec());
        }
        return;
    }
    let mut c = 0u32;
    let mut v = value;
    while v <= limit {
        current[i] = c;
        search_bullets(s, x, i + 1, limit, v, current, found);
        c += 1;
        v += gens[i];
    }
    current[i] = 0;
}

/// Bullets of `x` assembled from restricted factorizations: the union of
/// `Z_A(x + y)` over nonempty generator subsets `A` and `y` in the
/// intersection of the Apéry sets `Ap(S; n_i)`, `n_i ∈ A`.
///
/// When `-x ∈ S` the answer is `{0}` and no factorizations are computed.
pub fn bullets_via_apery(s: &NumericalMonoid, x: i64) -> Result<Vec<Bullet>> {
    let k = s.k();
    if s.contains(-x) {
        return Ok(vec![Bullet {
            exponents: vec![0; k],
            target: x,
        }]);
    }
    let gens = s.generators();
    let mut all: BTreeSet<Vec<u32>> = BTreeSet::new();
    for mask in 1u32..(1 << k) {
        let support: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let subset: Vec<i64> = support.iter().map(|&i| gens[i]).collect();
        let g = subset.iter().copied().fold(0, gcd);
        for y in s.apery_intersection(&subset)? {
            let t = y.checked_add(x).ok_or_else(|| overflow("Apéry bullet target"))?;
            if t < 0 || t % g != 0 {
                continue;
            }
            let z = brute_force_factorizations(s, t, Some(&support))?;
            all.extend(z.iter().map(<[u32]>::to_vec));
        }
    }
    Ok(all
        .into_iter()
        .rev()
        .map(|exponents| Bullet { exponents, target: x })
        .collect())
}

/// The `n_i`-cover map `bul(x) → bul(x + n_i)` on a full bullet.
pub fn cover_map(s: &NumericalMonoid, bullet: &Bullet, i: usize) -> Bullet {
    let g = s.generators()[i];
    let target = bullet.target + g;
    let mut exponents = bullet.exponents.clone();
    if !s.contains(bullet.value(s) - target) {
        exponents[i] += 1;
    }
    Bullet { exponents, target }
}

/// The cover map on dynamic bullets of `x`: `bul*(x) → bul*(x + n_i)`.
pub fn dynamic_cover_map(s: &NumericalMonoid, x: i64, b: DynamicBullet, i: usize) -> DynamicBullet {
    let g = s.generators()[i];
    if s.contains(b.value - (g + x)) {
        b
    } else {
        DynamicBullet {
            value: b.value + g,
            length: b.length + 1,
        }
    }
}

/// Eventual behaviour of ω: `ω(n) = n / n_1 + a(n mod n_1)` for every `n > threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasilinearModel {
    pub n1: i64,
    /// `⌈(F(S) + n_2) · n_1 / (n_2 - n_1)⌉`.
    pub threshold: i64,
    /// `a(r)` for `r = 0, ..., n_1 - 1`.
    pub offsets: Vec<Ratio<i64>>,
    /// Least nonzero `D ∈ S` such that every `n ∈ S` above `D` follows the model.
    pub dissonance: i64,
    /// Least `D ≥ -F(S)` such that every integer above `D` follows the model.
    pub quotient_dissonance: i64,
}

impl QuasilinearModel {
    /// `n / n_1 + a(n mod n_1)`. Only meaningful above the threshold.
    pub fn evaluate(&self, n: i64) -> Ratio<i64> {
        Ratio::new(n, self.n1) + self.offsets[n.rem_euclid(self.n1) as usize]
    }
}

/// `⌈(F(S) + n_2) · n_1 / (n_2 - n_1)⌉`, past which `ω(n) = ω(n - n_1) + 1`.
pub fn quasilinear_threshold(s: &NumericalMonoid) -> Result<i64> {
    let g = s.generators();
    if g.len() < 2 {
        return Err(Error::TooFewGenerators);
    }
    let (n1, n2) = (g[0], g[1]);
    let num = s
        .frobenius()
        .checked_add(n2)
        .and_then(|x| x.checked_mul(n1))
        .ok_or_else(|| overflow("quasilinear threshold"))?;
    let den = n2 - n1;
    Ok(num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0))
}

/// Fits the quasilinear model and returns it with the ω table it was read from,
/// which covers `[-F(S), threshold + n_1]`.
pub fn quasilinear_model_with_table(s: &NumericalMonoid) -> Result<(QuasilinearModel, OmegaTable)> {
    let threshold = quasilinear_threshold(s)?;
    let n1 = s.multiplicity();
    let top = threshold
        .checked_add(n1)
        .ok_or_else(|| overflow("quasilinear window"))?;
    let table = omega_table(s, top)?;

    let mut offsets = vec![Ratio::from_integer(0); n1 as usize];
    for n in threshold + 1..=top {
        let w = table.get(n).unwrap() as i64;
        offsets[n.rem_euclid(n1) as usize] = Ratio::from_integer(w) - Ratio::new(n, n1);
    }

    let model = QuasilinearModel {
        n1,
        threshold,
        offsets,
        dissonance: dissonance(s, &table, Domain::Monoid),
        quotient_dissonance: dissonance(s, &table, Domain::Quotient),
    };
    Ok((model, table))
}

pub fn quasilinear_model(s: &NumericalMonoid) -> Result<QuasilinearModel> {
    quasilinear_model_with_table(s).map(|(model, _)| model)
}

/// The point past which `ω(n + n_1) = ω(n) + 1` holds, read off `table`.
///
/// For [`Domain::Quotient`] this is the largest integer `n ≥ -F(S)` where the
/// step fails (or `-F(S)`). For [`Domain::Monoid`] only elements of `S` are
/// checked and the answer is the least nonzero element of `S` past which
/// nothing fails, so it is never below `n_1`.
///
/// The verdict is final when the table reaches the quasilinear threshold
/// plus `n_1`, since every step landing above the threshold holds.
pub fn dissonance(s: &NumericalMonoid, table: &OmegaTable, domain: Domain) -> i64 {
    let n1 = s.multiplicity();
    let breaks = |n: i64| table.get(n + n1).unwrap() != table.get(n).unwrap() + 1;
    match domain {
        Domain::Quotient => (table.start()..=table.top() - n1)
            .rev()
            .find(|&n| breaks(n))
            .unwrap_or(table.start()),
        Domain::Monoid => (0..=table.top() - n1)
            .rev()
            .find(|&n| s.contains(n) && breaks(n))
            .unwrap_or(0)
            .max(n1),
    }
}

/// `ω(n)` for `n` above the model threshold, read off the stored table:
/// `ω(n) = ω(n_0) + (n - n_0) / n_1` where `n_0 ≡ n (mod n_1)` is the
/// largest stored element.
pub fn omega_extrapolate(model: &QuasilinearModel, stored: &OmegaTable, n: i64) -> Result<u64> {
    if n <= model.threshold {
        return Err(Error::BelowThreshold {
            n,
            threshold: model.threshold,
        });
    }
    let top = stored.top();
    let n0 = top - (top - n).rem_euclid(model.n1);
    let base = stored
        .get(n0)
        .filter(|_| n0 > model.threshold)
        .ok_or(Error::BelowThreshold {
            n: n0,
            threshold: model.threshold,
        })?;
    Ok(base + ((n - n0) / model.n1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::max_length;

    fn monoid(gens: &[u64]) -> NumericalMonoid {
        NumericalMonoid::new(gens).unwrap()
    }

    fn vectors(bullets: &[Bullet]) -> BTreeSet<Vec<u32>> {
        bullets.iter().map(|b| b.exponents.clone()).collect()
    }

    fn set(vs: &[[u32; 3]]) -> BTreeSet<Vec<u32>> {
        vs.iter().map(|v| v.to_vec()).collect()
    }

    #[test]
    fn worked_example_bullet_sets() {
        let s = monoid(&[6, 9, 20]);
        let cases: [(i64, &[[u32; 3]]); 4] = [
            (40, &[[0, 0, 2], [4, 4, 0], [7, 2, 0], [10, 0, 0], [1, 6, 0], [0, 8, 0]]),
            (51, &[[0, 7, 0], [10, 0, 0], [4, 3, 0], [1, 5, 0], [0, 0, 3], [7, 1, 0]]),
            (54, &[[9, 0, 0], [6, 2, 0], [0, 6, 0], [3, 4, 0], [0, 0, 3]]),
            (60, &[[4, 4, 0], [7, 2, 0], [10, 0, 0], [1, 6, 0], [0, 8, 0], [0, 0, 3]]),
        ];
        for (x, expected) in cases {
            assert_eq!(vectors(&bullets_brute_force(&s, x).unwrap()), set(expected), "bul({x})");
            assert_eq!(vectors(&bullets_via_apery(&s, x).unwrap()), set(expected), "bul({x})");
        }
    }

    #[test]
    fn bullets_of_divisible_targets_are_trivial() {
        let s = monoid(&[6, 9, 20]);
        for x in [0, -6, -15, -44, -100] {
            assert_eq!(vectors(&bullets_brute_force(&s, x).unwrap()), set(&[[0, 0, 0]]));
            assert_eq!(vectors(&bullets_via_apery(&s, x).unwrap()), set(&[[0, 0, 0]]));
            assert_eq!(omega(&s, x), Ok(0));
        }
    }

    #[test]
    fn omega_at_negated_frobenius_is_one() {
        let s = monoid(&[6, 9, 20]);
        assert_eq!(omega(&s, -43), Ok(1));
        for x in -300..-43 {
            assert_eq!(omega(&s, x), Ok(0));
        }
    }

    #[test]
    fn small_table_values() {
        assert_eq!(omega(&monoid(&[6, 9, 20]), 1000), Ok(170));
        assert_eq!(omega(&monoid(&[11, 13, 15]), 1000), Ok(97));
    }

    #[test]
    fn two_generator_bullets_match_oracle() {
        let s = monoid(&[2, 3]);
        let brute = bullets_brute_force(&s, 1).unwrap();
        assert_eq!(vectors(&bullets_via_apery(&s, 1).unwrap()), vectors(&brute));
        // 4 - 1 = 3 and 3 - 1 = 2 lie in S while 1 and -1 do not.
        assert_eq!(vectors(&brute), [vec![2, 0], vec![0, 1]].into_iter().collect());
        // 1 = F(S) is pseudo-Frobenius, so bul(-1) = {e_1, e_2}.
        let at_minus_one = bullets_brute_force(&s, -1).unwrap();
        assert_eq!(vectors(&at_minus_one), [vec![1, 0], vec![0, 1]].into_iter().collect());
    }

    #[test]
    fn dynamic_bullets_compress_full_bullets() {
        let s = monoid(&[6, 9, 20]);
        for x in -43..=120 {
            let full = bullets_brute_force(&s, x).unwrap();
            let mut best: std::collections::BTreeMap<i64, u64> = Default::default();
            for b in &full {
                let d = b.compress(&s);
                let e = best.entry(d.value).or_default();
                *e = (*e).max(d.length);
            }
            let expected: Vec<DynamicBullet> = best
                .into_iter()
                .map(|(value, length)| DynamicBullet { value, length })
                .collect();
            assert_eq!(dynamic_bullets(&s, x).unwrap(), expected, "x = {x}");
        }
    }

    #[test]
    fn cover_maps_commute_with_compression() {
        let s = monoid(&[6, 9, 20]);
        for x in -43..=80 {
            let full = bullets_brute_force(&s, x).unwrap();
            for i in 0..s.k() {
                let via_full: BTreeSet<DynamicBullet> = full.iter().map(|b| cover_map(&s, b, i).compress(&s)).collect();
                let via_dyn: BTreeSet<DynamicBullet> = full
                    .iter()
                    .map(|b| dynamic_cover_map(&s, x, b.compress(&s), i))
                    .collect();
                assert_eq!(via_full, via_dyn, "x = {x}, i = {i}");
                let image = vectors(&bullets_brute_force(&s, x + s.generators()[i]).unwrap());
                for b in &full {
                    assert!(image.contains(&cover_map(&s, b, i).exponents));
                }
            }
        }
    }

    #[test]
    fn mcnugget_model() {
        let s = monoid(&[6, 9, 20]);
        let (model, table) = quasilinear_model_with_table(&s).unwrap();
        assert_eq!(model.threshold, 104);
        assert_eq!(table.top(), 110);
        for n in 105..=110 {
            assert_eq!(model.evaluate(n), Ratio::from_integer(table.get(n).unwrap() as i64));
        }
        assert_eq!(omega_extrapolate(&model, &table, 1000), Ok(170));
        assert_eq!(omega_extrapolate(&model, &table, 110), Ok(table.get(110).unwrap()));
        assert_eq!(
            omega_extrapolate(&model, &table, 104),
            Err(Error::BelowThreshold { n: 104, threshold: 104 })
        );
    }

    #[test]
    fn sandwich_bound() {
        let s = monoid(&[6, 9, 20]);
        let table = omega_table(&s, 200).unwrap();
        for n in (1..=200).filter(|&n| s.contains(n)) {
            let big_m = max_length(&s, n).unwrap() as i64;
            let w = table.get(n).unwrap() as i64;
            assert!(big_m * 6 <= n && n <= w * 6, "n = {n}");
        }
    }

    #[test]
    fn target_below_base() {
        let s = monoid(&[6, 9, 20]);
        assert_eq!(
            omega_up_to(&s, -50, Domain::Monoid),
            Err(Error::TargetBelowBase { target: -50, base: -43 })
        );
        let q = omega_up_to(&s, 10, Domain::Quotient).unwrap();
        assert_eq!(q.first(), Some(&(-43, 1)));
        assert_eq!(q.len(), 54);
        let m = omega_up_to(&s, 10, Domain::Monoid).unwrap();
        assert_eq!(m.iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 6, 9]);
    }

    #[test]
    fn naturals_have_prime_generator() {
        let s = monoid(&[1]);
        assert_eq!(omega(&s, 1), Ok(1));
        assert_eq!(omega(&s, 7), Ok(7));
        assert_eq!(omega(&s, 0), Ok(0));
    }
}

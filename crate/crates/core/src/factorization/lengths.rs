use std::fmt;

use super::check_target;
use crate::error::{Error, Result};
use crate::monoid::NumericalMonoid;
use crate::window::Window;

/// A finite set of factorization lengths, stored as a bitset anchored at its minimum.
///
/// Bit `j` of `words` stands for the length `min + j`. The first and last
/// bits of the span are always set and padding bits are always clear, so
/// structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LengthSet {
    min: u64,
    span: usize,
    words: Vec<u64>,
}

impl LengthSet {
    pub fn singleton(l: u64) -> Self {
        Self {
            min: l,
            span: 1,
            words: vec![1],
        }
    }

    /// Builds a set from arbitrary lengths; `None` when `lengths` is empty.
    pub fn from_lengths<I: IntoIterator<Item = u64>>(lengths: I) -> Option<Self> {
        let mut ls: Vec<u64> = lengths.into_iter().collect();
        ls.sort_unstable();
        ls.dedup();
        let (&min, &max) = (ls.first()?, ls.last()?);
        let span = (max - min) as usize + 1;
        let mut words = vec![0u64; span.div_ceil(64)];
        for l in ls {
            let j = (l - min) as usize;
            words[j / 64] |= 1 << (j % 64);
        }
        Some(Self { min, span, words })
    }

    /// `∪ (L_j + 1)` over the given sources.
    fn union_plus_one(sources: &[&LengthSet]) -> Option<Self> {
        let lo = sources.iter().map(|l| l.min).min()? + 1;
        let hi = sources.iter().map(|l| l.max()).max()? + 1;
        let span = (hi - lo) as usize + 1;
        let mut words = vec![0u64; span.div_ceil(64)];
        for src in sources {
            or_shifted(&mut words, &src.words, (src.min + 1 - lo) as usize);
        }
        Some(Self { min: lo, span, words })
    }

    pub fn min(&self) -> u64 {
        self.min
    }

    pub fn max(&self) -> u64 {
        self.min + self.span as u64 - 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, l: u64) -> bool {
        if l < self.min || l > self.max() {
            return false;
        }
        let j = (l - self.min) as usize;
        self.words[j / 64] >> (j % 64) & 1 == 1
    }

    /// Lengths in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let base = self.min + 64 * wi as u64;
            BitIter(w).map(move |b| base + b)
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Distinct successive differences, ascending.
    ///
    /// Walks runs of consecutive lengths instead of single bits, so the cost
    /// is proportional to the number of runs.
    pub fn successive_gaps(&self) -> Vec<u64> {
        let mut gaps: Vec<u64> = Vec::new();
        let mut insert = |g: u64| {
            if let Err(pos) = gaps.binary_search(&g) {
                gaps.insert(pos, g);
            }
        };
        let mut prev: Option<u64> = None;
        for (wi, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let start = w.trailing_zeros();
                let run = (!(w >> start)).trailing_zeros().min(64 - start);
                let pos = 64 * wi as u64 + u64::from(start);
                if let Some(p) = prev {
                    insert(pos - p);
                }
                if run > 1 {
                    insert(1);
                }
                prev = Some(pos + u64::from(run) - 1);
                let end = start + run;
                w = if end >= 64 { 0 } else { w & (!0u64 << end) };
            }
        }
        gaps
    }
}

impl fmt::Debug for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(u64::from(b))
    }
}

/// `dst |= src << shift`, treating both as little-endian bit strings.
/// The caller guarantees the shifted source fits inside `dst`.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    if bs == 0 {
        for (d, s) in dst[ws..].iter_mut().zip(src) {
            *d |= s;
        }
        return;
    }
    for (j, &s) in src.iter().enumerate() {
        dst[ws + j] |= s << bs;
        let carry = s >> (64 - bs);
        if carry != 0 {
            dst[ws + j + 1] |= carry;
        }
    }
}

/// Streams `(m, L(m))` for every `m` in `[0, n] ∩ S`, in increasing order,
/// using `L(m) = ∪_i (L(m - n_i) + 1)`.
///
/// Only the last `n_k` length sets are kept; factorizations are never built.
pub fn length_sets_up_to<F>(s: &NumericalMonoid, n: i64, mut sink: F) -> Result<()>
where
    F: FnMut(i64, &LengthSet),
{
    check_target(s, n)?;
    let gens = s.generators();
    let mut window: Window<LengthSet> = Window::new(s.max_generator() as usize, 0);

    for m in 0..=n {
        if !s.contains(m) {
            window.push(None);
            continue;
        }
        let l = if m == 0 {
            LengthSet::singleton(0)
        } else {
            let sources: Vec<&LengthSet> = gens.iter().filter_map(|&g| window.get(m - g)).collect();
            LengthSet::union_plus_one(&sources).expect("every nonzero element has a divisor among its predecessors")
        };
        sink(m, &l);
        window.push(Some(l));
    }
    Ok(())
}

/// `L(n)` for a single element.
pub fn length_set(s: &NumericalMonoid, n: i64) -> Result<LengthSet> {
    if !s.contains(n) {
        return Err(Error::NotInMonoid(n));
    }
    let mut out = None;
    length_sets_up_to(s, n, |m, l| {
        if m == n {
            out = Some(l.clone());
        }
    })?;
    Ok(out.expect("n is in S"))
}

/// `M(n) = max L(n)`, the longest factorization length of `n`.
pub fn max_length(s: &NumericalMonoid, n: i64) -> Result<u64> {
    length_set(s, n).map(|l| l.max())
}

//! Factorization sets `Z(m)` and length sets `L(m)` computed dynamically.
//!
//! Both recurrences walk the elements of `S` in increasing order and only
//! ever look back `n_k` elements, so results are pushed to a caller-supplied
//! sink and only a [`Window`] of depth `n_k` is retained.
//!
//! [`Window`]: crate::window::Window

mod lengths;

use std::fmt;

pub use lengths::{length_set, length_sets_up_to, max_length, LengthSet};

use crate::error::{overflow, Error, Result};
use crate::monoid::NumericalMonoid;
use crate::window::Window;

/// An exponent vector `(a_1, ..., a_k)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization(pub Vec<u32>);

impl Factorization {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|a| = a_1 + ... + a_k`.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    /// `a_1 n_1 + ... + a_k n_k`.
    pub fn value(&self, s: &NumericalMonoid) -> Option<i64> {
        self.0
            .iter()
            .zip(s.generators())
            .try_fold(0i64, |acc, (&a, &g)| acc.checked_add(i64::from(a).checked_mul(g)?))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All factorizations of one element, stored as a flat `len * k` array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    k: usize,
    data: Vec<u32>,
}

impl FactorizationSet {
    pub fn empty(k: usize) -> Self {
        Self { k, data: Vec::new() }
    }

    /// `Z(0) = {0}`.
    pub fn identity(k: usize) -> Self {
        Self { k, data: vec![0; k] }
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Exponent vectors in generation order.
    pub fn iter(&self) -> std::slice::ChunksExact<'_, u32> {
        self.data.chunks_exact(self.k)
    }

    pub fn contains(&self, exponents: &[u32]) -> bool {
        self.iter().any(|a| a == exponents)
    }

    pub fn to_vec(&self) -> Vec<Factorization> {
        self.iter().map(|a| Factorization(a.to_vec())).collect()
    }

    /// Lexicographically descending, the canonical order for serialized output.
    pub fn sorted_desc(&self) -> Vec<Factorization> {
        let mut v = self.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn lengths(&self) -> Vec<u64> {
        let mut ls: Vec<u64> = self.iter().map(|a| a.iter().map(|&x| u64::from(x)).sum()).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    fn push(&mut self, exponents: &[u32]) {
        self.data.extend_from_slice(exponents);
    }
}

/// Checks the target and that every exponent fits in a `u32`.
fn check_target(s: &NumericalMonoid, n: i64) -> Result<()> {
    if n < 0 {
        return Err(Error::NegativeTarget(n));
    }
    if n / s.multiplicity() > i64::from(u32::MAX) {
        return Err(overflow("factorization exponents"));
    }
    Ok(())
}

/// Streams `(m, Z(m))` for every `m` in `[0, n] ∩ S`, in increasing order.
///
/// Each factorization is produced exactly once: `a ∈ Z(m - n_i)` is extended
/// by `e_i` only when `a_j = 0` for all `j < i`, so no deduplication is needed.
/// Within `Z(m)` vectors appear grouped by ascending `i`, each group in the
/// stored order of `Z(m - n_i)`.
pub fn factorizations_up_to<F>(s: &NumericalMonoid, n: i64, mut sink: F) -> Result<()>
where
    F: FnMut(i64, &FactorizationSet),
{
    check_target(s, n)?;
    let k = s.k();
    let gens = s.generators();
    let mut window: Window<FactorizationSet> = Window::new(s.max_generator() as usize, 0);
    let mut scratch = FactorizationSet::empty(k);
    let mut buf = vec![0u32; k];

    for m in 0..=n {
        if !s.contains(m) {
            window.push(None);
            continue;
        }
        let mut z = std::mem::replace(&mut scratch, FactorizationSet::empty(k));
        z.data.clear();
        if m == 0 {
            z.push(&buf);
        } else {
            for (i, &g) in gens.iter().enumerate() {
                let Some(prev) = window.get(m - g) else { continue };
                for a in prev.iter() {
                    if a[..i].iter().any(|&x| x != 0) {
                        continue;
                    }
                    buf.copy_from_slice(a);
                    buf[i] += 1;
                    z.data.extend_from_slice(&buf);
                }
            }
            buf.fill(0);
        }
        sink(m, &z);
        if let Some(old) = window.push(Some(z)) {
            scratch = old;
        }
    }
    Ok(())
}

/// `Z(n)`; empty exactly when `n` is not in `S`.
pub fn factorizations(s: &NumericalMonoid, n: i64) -> Result<FactorizationSet> {
    let mut out = FactorizationSet::empty(s.k());
    factorizations_up_to(s, n, |m, z| {
        if m == n {
            out = z.clone();
        }
    })?;
    Ok(out)
}

/// Every `(m, Z(m))` for `m` in `[0, n] ∩ S`, kept in memory.
pub fn factorization_table(s: &NumericalMonoid, n: i64) -> Result<Vec<(i64, FactorizationSet)>> {
    let mut out = Vec::new();
    factorizations_up_to(s, n, |m, z| out.push((m, z.clone())))?;
    Ok(out)
}

/// Exhaustive search over all `a` with `a_i <= n / n_i`.
///
/// With `support`, coordinates outside the given generator indices are
/// forced to zero. This is the independent oracle for the dynamic path and
/// is exponential in `k`.
pub fn brute_force_factorizations(s: &NumericalMonoid, n: i64, support: Option<&[usize]>) -> Result<FactorizationSet> {
    check_target(s, n)?;
    let k = s.k();
    let allowed: Vec<bool> = match support {
        Some(idx) => (0..k).map(|i| idx.contains(&i)).collect(),
        None => vec![true; k],
    };
    let mut out = FactorizationSet::empty(k);
    let mut current = vec![0u32; k];
    enumerate(s.generators(), &allowed, 0, n, &mut current, &mut out);
    Ok(out)
}

fn enumerate(
    gens: &[i64],
    allowed: &[bool],
    i: usize,
    remaining: i64,
    current: &mut [u32],
    out: &mut FactorizationSet,
) {
    if i == gens.len() {
        if remaining == 0 {
            out.push(current);
        }
        return;
    }
    let top = if allowed[i] { remaining / gens[i] } else { 0 };
    for c in 0..=top {
        current[i] = c as u32;
        enumerate(gens, allowed, i + 1, remaining - c * gens[i], current, out);
    }
    current[i] = 0;
}

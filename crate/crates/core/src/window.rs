//! Fixed-depth ring buffer indexed by monoid element.
//!
//! Every recurrence in this crate reads entries at most `n_k` below the
//! element being computed, so a window of depth `n_k` is all that is ever
//! kept alive.

#[derive(Debug, Clone)]
pub struct Window<T> {
    slots: Vec<Option<T>>,
    /// One past the newest stored element.
    frontier: i64,
}

impl<T> Window<T> {
    /// An empty window of the given depth whose first stored element will be `start`.
    pub fn new(depth: usize, start: i64) -> Self {
        assert!(depth > 0, "window depth must be positive");
        Self {
            slots: (0..depth).map(|_| None).collect(),
            frontier: start,
        }
    }

    pub fn depth(&self) -> usize {
        self.slots.len()
    }

    /// The next element `push` will store.
    pub fn frontier(&self) -> i64 {
        self.frontier
    }

    fn slot(&self, m: i64) -> usize {
        m.rem_euclid(self.slots.len() as i64) as usize
    }

    /// Entry for `m`, if `m` is inside the window and an entry was stored.
    pub fn get(&self, m: i64) -> Option<&T> {
        let depth = self.slots.len() as i64;
        if m >= self.frontier || m < self.frontier - depth {
            return None;
        }
        self.slots[self.slot(m)].as_ref()
    }

    /// Stores the entry for the frontier element and hands back the evicted
    /// one (`depth` elements below), so callers can recycle its allocation.
    pub fn push(&mut self, entry: Option<T>) -> Option<T> {
        let slot = self.slot(self.frontier);
        self.frontier += 1;
        std::mem::replace(&mut self.slots[slot], entry)
    }
}

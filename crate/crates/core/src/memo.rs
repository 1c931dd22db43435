use std::sync::RwLock;

use crate::exactnum::ExactInt;

/// Append-only cache for a sequence defined by a recurrence on its prefix.
/// Readers share the lock; growth takes the write lock once per request.
pub(crate) struct Memo {
    values: RwLock<Vec<ExactInt>>,
    step: fn(&[ExactInt]) -> ExactInt,
}

impl Memo {
    pub(crate) fn new(seed: Vec<ExactInt>, step: fn(&[ExactInt]) -> ExactInt) -> Self {
        Self {
            values: RwLock::new(seed),
            step,
        }
    }

    fn ensure(&self, n: usize) {
        if self.values.read().expect("memo lock poisoned").len() > n {
            return;
        }
        let mut values = self.values.write().expect("memo lock poisoned");
        while values.len() <= n {
            let next = (self.step)(&values);
            values.push(next);
        }
    }

    pub(crate) fn get(&self, n: usize) -> ExactInt {
        self.ensure(n);
        self.values.read().expect("memo lock poisoned")[n].clone()
    }

    /// Runs `f` on the cached values `0..=n` without cloning them.
    pub(crate) fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[ExactInt]) -> R) -> R {
        self.ensure(n);
        let values = self.values.read().expect("memo lock poisoned");
        f(&values[..=n])
    }

    pub(crate) fn len(&self) -> usize {
        self.values.read().expect("memo lock poisoned").len()
    }
}

//! Fixed-size subsets of `0..n` in lexicographic order.

use alloc::vec::Vec;

/// Cursor over the k-subsets of `0..n` in lexicographic order, starting at
/// `{0,..,k-1}`.
///
/// The cursor reuses one buffer; call [`Subsets::advance`] and then read
/// [`Subsets::current`].
#[derive(Debug, Clone)]
pub struct Subsets {
    n: usize,
    c: Vec<usize>,
    started: bool,
    done: bool,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            c: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    /// Moves to the next subset; returns false once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let k = self.c.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.c[i] < self.n - k + i {
                self.c[i] += 1;
                for j in i + 1..k {
                    self.c[j] = self.c[j - 1] + 1;
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    pub fn current(&self) -> &[usize] {
        &self.c
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.advance() {
            Some(self.c.clone())
        } else {
            None
        }
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets::new(n, k)
}

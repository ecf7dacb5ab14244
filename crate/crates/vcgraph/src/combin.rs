//! Binomial coefficients and colexicographic subset ranking.
//!
//! Subsets are ranked colexicographically: for `a_0 < a_1 < .. < a_{k-1}`
//! (0-based ids) the rank is `sum_i C(a_i, i+1)`. Colex rank does not depend
//! on the universe size, which makes vertex ids of the generated graphs
//! stable under growing parameters. All exhaustive scans enumerate subsets in
//! ascending colex order, so "first witness found" is well defined.

/// Exact binomial coefficient `C(n, k)`; returns 0 when `k > n`.
///
/// # Panics
/// Panics if the result overflows `u64` (far beyond the desk scale this
/// crate operates at).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Colex rank of a strictly increasing 0-based id slice.
pub fn subset_rank_colex(ids: &[usize]) -> u64 {
    ids.iter()
        .enumerate()
        .map(|(i, &a)| binomial(a as u64, i as u64 + 1))
        .sum()
}

/// Inverse of [`subset_rank_colex`]: the `rank`-th `k`-subset in colex order.
pub fn subset_unrank_colex(mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = vec![0usize; k];
    for i in (0..k).rev() {
        // Largest c with C(c, i+1) <= rank.
        let mut c = i as u64;
        while binomial(c + 1, i as u64 + 1) <= rank {
            c += 1;
        }
        out[i] = c as usize;
        rank -= binomial(c, i as u64 + 1);
    }
    out
}

/// In-place enumerator of all `k`-subsets of `{0, .., n-1}` in colex order.
pub struct ColexSubsets {
    current: Vec<usize>,
    n: usize,
    fresh: bool,
    done: bool,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            current: (0..k).collect(),
            n,
            fresh: true,
            done: k > n,
        }
    }

    /// Starts the enumeration at a given colex rank.
    pub fn from_rank(n: usize, k: usize, rank: u64) -> Self {
        if rank >= binomial(n as u64, k as u64) {
            return Self {
                current: Vec::new(),
                n,
                fresh: false,
                done: true,
            };
        }
        Self {
            current: subset_unrank_colex(rank, k),
            n,
            fresh: true,
            done: false,
        }
    }

    /// Advances to the next subset; returns `false` once exhausted.
    /// The first call yields the starting subset itself.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if self.fresh {
            self.fresh = false;
            return true;
        }
        let k = self.current.len();
        for i in 0..k {
            let limit = if i + 1 < k {
                self.current[i + 1]
            } else {
                self.n
            };
            if self.current[i] + 1 < limit {
                self.current[i] += 1;
                for (j, slot) in self.current.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    pub fn current(&self) -> &[usize] {
        &self.current
    }
}

//! Shared budgets for enumerative and randomized search. Every check
//! that may fall back from exhaustive enumeration to seeded random
//! trials reads its limits from here, so runs are reproducible.

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Seed for all randomized fallbacks.
    pub seed: u64,
    /// Exhaustive enumeration is used iff the search space has at most
    /// this many elements.
    pub enumeration_cap: u64,
    /// Number of random trials once enumeration is off the table.
    pub trial_budget: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { seed: 0, enumeration_cap: 1 << 16, trial_budget: 200 }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget { seed, ..Budget::default() }
    }

    /// True iff GF(p)^dim fits under the enumeration cap.
    pub fn can_enumerate(&self, p: u64, dim: usize) -> bool {
        let mut total: u64 = 1;
        for _ in 0..dim {
            match total.checked_mul(p) {
                Some(t) if t <= self.enumeration_cap => total = t,
                _ => return false,
            }
        }
        true
    }
}

/// All vectors of GF(p)^d in lexicographic (counting) order, starting
/// from the zero vector. Callers check `can_enumerate` first.
pub fn enumerate_vectors(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut cur = vec![0u64; d];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        // increment base-p counter
        let mut i = 0;
        loop {
            if i == d {
                done = true;
                break;
            }
            cur[i] += 1;
            if cur[i] < p {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

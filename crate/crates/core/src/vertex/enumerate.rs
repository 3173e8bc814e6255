//! Enumeration of finite order ideals of `P = Z³_{≥0} \ π_min`.
//!
//! A 3D partition asymptotic to `(λ, μ, ν)` with `n` boxes outside the legs
//! is `π_min ∪ E` for a unique order ideal `E ⊂ P` of size `n`.
//!
//! Only elements whose down-set inside `P` has at most `N` elements can lie
//! in an ideal of size `≤ N`; these candidates are found with a prefix-sum
//! table over a box of side `N + extent`. Ideals are then generated by
//! include/exclude branching on the lexicographically smallest available
//! element (one whose lower covers are all included): each loop iteration
//! includes the next available element after excluding the earlier ones,
//! so every ideal is reached exactly once.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use super::legs::{LegConfig, Point};

const NONE: u32 = u32::MAX;

/// The candidate poset, flattened.
pub(crate) struct IdealPoset {
    max_size: usize,
    points: Vec<Point>,
    upper: Vec<[u32; 3]>,
    lower_count: Vec<u8>,
}

#[derive(Clone)]
struct State {
    missing: Vec<u8>,
    available: BTreeSet<u32>,
    size: usize,
}

impl IdealPoset {
    pub(crate) fn new(cfg: &LegConfig, max_size: usize) -> Self {
        let side = max_size + cfg.extent() + 1;
        let idx = |r: usize, s: usize, t: usize| (r * side + s) * side + t;

        // down[x] = #{ y ≤ x : y ∉ π_min } by inclusion–exclusion
        let mut down = vec![0i64; side * side * side];
        for r in 0..side {
            for s in 0..side {
                for t in 0..side {
                    let own = i64::from(!cfg.in_min([r, s, t]));
                    let g = |dr: usize, ds: usize, dt: usize| -> i64 {
                        if r < dr || s < ds || t < dt {
                            0
                        } else {
                            down[idx(r - dr, s - ds, t - dt)]
                        }
                    };
                    down[idx(r, s, t)] = own + g(1, 0, 0) + g(0, 1, 0) + g(0, 0, 1)
                        - g(1, 1, 0)
                        - g(1, 0, 1)
                        - g(0, 1, 1)
                        + g(1, 1, 1);
                }
            }
        }

        let mut id = vec![NONE; side * side * side];
        let mut points = Vec::new();
        for r in 0..side {
            for s in 0..side {
                for t in 0..side {
                    if !cfg.in_min([r, s, t]) && down[idx(r, s, t)] as usize <= max_size {
                        id[idx(r, s, t)] = points.len() as u32;
                        points.push([r, s, t]);
                    }
                }
            }
        }

        let mut upper = vec![[NONE; 3]; points.len()];
        let mut lower_count = vec![0u8; points.len()];
        for (i, &[r, s, t]) in points.iter().enumerate() {
            let up = [(r + 1, s, t), (r, s + 1, t), (r, s, t + 1)];
            for (k, &(a, b, c)) in up.iter().enumerate() {
                if a < side && b < side && c < side {
                    upper[i][k] = id[idx(a, b, c)];
                }
            }
            let below = [(r.wrapping_sub(1), s, t), (r, s.wrapping_sub(1), t), (r, s, t.wrapping_sub(1))];
            lower_count[i] = below
                .iter()
                .filter(|&&(a, b, c)| a < side && b < side && c < side && !cfg.in_min([a, b, c]))
                .count() as u8;
        }
        IdealPoset { max_size, points, upper, lower_count }
    }

    /// Minimal elements of `P`, i.e. the boxes addable to `π_min`.
    #[cfg(test)]
    pub(crate) fn minimal_elements(&self) -> Vec<Point> {
        (0..self.points.len()).filter(|&i| self.lower_count[i] == 0).map(|i| self.points[i]).collect()
    }

    fn root(&self) -> State {
        let available = (0..self.points.len() as u32).filter(|&i| self.lower_count[i as usize] == 0).collect();
        State { missing: self.lower_count.clone(), available, size: 0 }
    }

    fn include(&self, st: &mut State, x: u32) {
        st.size += 1;
        for &z in &self.upper[x as usize] {
            if z != NONE {
                let m = &mut st.missing[z as usize];
                *m -= 1;
                if *m == 0 {
                    st.available.insert(z);
                }
            }
        }
    }

    fn retract(&self, st: &mut State, x: u32) {
        st.size -= 1;
        for &z in &self.upper[x as usize] {
            if z != NONE {
                let m = &mut st.missing[z as usize];
                if *m == 0 {
                    st.available.remove(&z);
                }
                *m += 1;
            }
        }
    }

    fn descend(&self, st: &mut State, counts: &mut [u64]) {
        counts[st.size] += 1;
        if st.size == self.max_size {
            return;
        }
        let mut excluded = Vec::new();
        while let Some(x) = st.available.pop_first() {
            excluded.push(x);
            self.include(st, x);
            self.descend(st, counts);
            self.retract(st, x);
        }
        st.available.extend(excluded);
    }

    fn frontier(&self, st: &mut State, depth: usize, counts: &mut [u64], tasks: &mut Vec<State>) {
        if depth == 0 {
            tasks.push(st.clone());
            return;
        }
        counts[st.size] += 1;
        if st.size == self.max_size {
            return;
        }
        let mut excluded = Vec::new();
        while let Some(x) = st.available.pop_first() {
            excluded.push(x);
            self.include(st, x);
            self.frontier(st, depth - 1, counts, tasks);
            self.retract(st, x);
        }
        st.available.extend(excluded);
    }

    /// `counts[n]` = number of order ideals of size `n`, for `n ≤ max_size`.
    pub(crate) fn count(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.max_size + 1];
        let mut root = self.root();
        if self.max_size < 6 {
            self.descend(&mut root, &mut counts);
            return counts;
        }
        let mut tasks = Vec::new();
        self.frontier(&mut root, 3, &mut counts, &mut tasks);
        let partial = tasks
            .into_par_iter()
            .map(|mut st| {
                let mut c = vec![0u64; self.max_size + 1];
                self.descend(&mut st, &mut c);
                c
            })
            .reduce(
                || vec![0u64; self.max_size + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        counts.iter_mut().zip(partial).for_each(|(x, y)| *x += y);
        counts
    }

    /// Knuth's random-probe estimate of the number of search-tree nodes.
    pub(crate) fn estimate_nodes(&self, probes: usize, seed: u64) -> f64 {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut total = 0.0;
        for _ in 0..probes {
            let mut st = self.root();
            let mut weight = 1.0;
            let mut estimate = 1.0;
            while st.size < self.max_size && !st.available.is_empty() {
                let branches = st.available.len();
                let pick = rng.gen_range(0..branches);
                for _ in 0..pick {
                    st.available.pop_first();
                }
                let x = st.available.pop_first().expect("nonempty");
                self.include(&mut st, x);
                weight *= branches as f64;
                estimate += weight;
            }
            total += estimate;
        }
        total / probes as f64
    }
}

/// Number of 3D partitions asymptotic to `cfg` with `n` boxes outside the
/// legs, for `n = 0..=max_size`.
pub fn count_ideals(cfg: &LegConfig, max_size: usize) -> Vec<u64> {
    IdealPoset::new(cfg, max_size).count()
}

/// Estimated size of the enumeration tree for `cfg` through `max_size`.
pub fn estimate_search_nodes(cfg: &LegConfig, max_size: usize) -> f64 {
    IdealPoset::new(cfg, max_size).estimate_nodes(256, 0x5eed)
}

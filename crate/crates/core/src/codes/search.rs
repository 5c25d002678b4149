//! Backtracking search for injective homomorphisms from the source
//! neighborhood graph on a domain into a power of the Hamming cube, that is,
//! for lossless `(D, D')`-stable tables.

use std::collections::VecDeque;

use super::{check_stability, EncoderTable};
use crate::bits::{ball_masks, hamming, low_mask, weight_k_words};
use crate::{Error, Result};

/// Largest domain the search accepts.
pub const MAX_SEARCH_DOMAIN: usize = 1000;
pub const DEFAULT_SEARCH_NODES: u64 = 10_000_000;
const MAX_ELL: u32 = 24;
const MAX_BALL: usize = 1 << 22;

/// Search effort cap, in placement attempts. Node counts rather than wall
/// time keep the outcome reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_SEARCH_NODES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// A table was found and verified.
    Found,
    /// The search space was exhausted: no such table exists.
    Refuted,
    /// The budget ran out first; nothing is claimed.
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub table: Option<EncoderTable>,
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

/// Searches over the weight-`k` slice of `{0,1}^n`.
pub fn find_stable_code(
    n: u32,
    k: u32,
    d: u32,
    ell: u32,
    dp: u32,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    if k > n || n > 63 {
        return Err(Error::Domain(format!("need k <= n <= 63, got n = {n}, k = {k}")));
    }
    let slice_size = crate::exact::binom(n as u64, k as u64);
    if slice_size > (MAX_SEARCH_DOMAIN as u64).into() {
        return Err(Error::Resource(format!(
            "C({n},{k}) = {slice_size} exceeds the search cap {MAX_SEARCH_DOMAIN}"
        )));
    }
    find_stable_code_on(n, &weight_k_words(n, k), d, ell, dp, budget)
}

/// Searches for an injective table on `domain` (words of `n` bits) into
/// `ell`-bit codewords such that inputs within distance `d` get codewords
/// within distance `dp`.
///
/// Vertices are placed in breadth-first order. The first image is fixed to
/// `0^ell`, which loses nothing since XOR by a constant preserves every
/// codeword distance. Candidates for a vertex with placed neighbors are the
/// unused words within `dp` of every placed neighbor's image, tried in
/// increasing order. Placing a vertex narrows its later neighbors' candidate
/// sets and backtracks early when one empties or when they jointly hold
/// fewer words than there are neighbors to place. Codeword coordinates not
/// yet used by any placed image are interchangeable, so only the lowest
/// unused ones may be switched on. Both reductions are sound, so an
/// exhausted search is a proof of non-existence.
pub fn find_stable_code_on(
    n: u32,
    domain: &[u64],
    d: u32,
    ell: u32,
    dp: u32,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    let mut words = domain.to_vec();
    words.sort_unstable();
    words.dedup();
    if words.len() > MAX_SEARCH_DOMAIN {
        return Err(Error::Resource(format!(
            "domain of {} words exceeds the search cap {MAX_SEARCH_DOMAIN}",
            words.len()
        )));
    }
    if ell > MAX_ELL {
        return Err(Error::Resource(format!("codeword length capped at {MAX_ELL}, got {ell}")));
    }
    let mut masks = vec![0u64];
    masks.extend(ball_masks(ell, dp));
    if masks.len() > MAX_BALL {
        return Err(Error::Resource(format!("radius-{dp} ball in {ell} bits is too large")));
    }
    let v = words.len();
    if v as u64 > 1u64 << ell {
        return Ok(SearchOutcome {
            status: SearchStatus::Refuted,
            table: None,
            nodes: 0,
        });
    }

    let adj: Vec<Vec<usize>> = (0..v)
        .map(|i| (0..v).filter(|&j| j != i && hamming(words[i], words[j]) <= d).collect())
        .collect();

    // Breadth-first order, restarting at the smallest unvisited word.
    let mut order = Vec::with_capacity(v);
    let mut pos = vec![usize::MAX; v];
    for root in 0..v {
        if pos[root] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        pos[root] = order.len();
        order.push(root);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if pos[w] == usize::MAX {
                    pos[w] = order.len();
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    let later: Vec<Vec<usize>> = order
        .iter()
        .map(|&u| {
            let mut e: Vec<usize> = adj[u].iter().map(|&w| pos[w]).filter(|&t| t > pos[u]).collect();
            e.sort_unstable();
            e
        })
        .collect();

    let mut search = Search {
        ell,
        dp,
        masks,
        later,
        domains: vec![None; v],
        images: vec![0; v],
        used: vec![0; ((1u64 << ell) as usize).div_ceil(64)],
        touched: 0,
        nodes: 0,
        max_nodes: budget.max_nodes,
        out_of_budget: false,
    };
    let done = v == 0 || search.place(0);
    let status = if done {
        SearchStatus::Found
    } else if search.out_of_budget {
        SearchStatus::Unknown
    } else {
        SearchStatus::Refuted
    };
    let table = if done {
        let pairs = order.iter().zip(&search.images).map(|(&u, &y)| (words[u], y)).collect();
        let t = EncoderTable::from_pairs(n, ell, pairs)?;
        let check = check_stability(&t, d, dp)?;
        debug_assert!(check.stable && check.injective, "search returned an invalid table");
        if !(check.stable && check.injective) {
            return Err(Error::Precondition("search produced an unverifiable table".into()));
        }
        Some(t)
    } else {
        None
    };
    Ok(SearchOutcome {
        status,
        table,
        nodes: search.nodes,
    })
}

struct Search {
    ell: u32,
    dp: u32,
    masks: Vec<u64>,
    /// Search positions of the neighbors placed after each position.
    later: Vec<Vec<usize>>,
    /// Remaining images for unplaced positions that have a placed neighbor.
    domains: Vec<Option<Vec<u64>>>,
    images: Vec<u64>,
    used: Vec<u64>,
    /// Union of the supports of the placed images.
    touched: u64,
    nodes: u64,
    max_nodes: u64,
    out_of_budget: bool,
}

impl Search {
    fn is_used(&self, y: u64) -> bool {
        (self.used[(y / 64) as usize] >> (y % 64)) & 1 == 1
    }

    fn toggle(&mut self, y: u64) {
        self.used[(y / 64) as usize] ^= 1 << (y % 64);
    }

    /// Coordinates no placed image uses are interchangeable, so a candidate
    /// may only switch on the lowest of them.
    fn is_canonical(&self, y: u64) -> bool {
        let mut free = !self.touched & low_mask(self.ell);
        let extra = y & free;
        for _ in 0..extra.count_ones() {
            if extra & free & free.wrapping_neg() == 0 {
                return false;
            }
            free &= free - 1;
        }
        true
    }

    /// Narrows the domains of `t`'s later neighbors after placing `y` at `t`.
    /// Returns `false` as soon as the placement is shown to be a dead end;
    /// overwritten domains are pushed to `saved` either way.
    fn propagate(&mut self, t: usize, y: u64, saved: &mut Vec<(usize, Option<Vec<u64>>)>) -> bool {
        let later = std::mem::take(&mut self.later[t]);
        let mut ok = true;
        for &w in &later {
            let mut next: Vec<u64> = match &self.domains[w] {
                None => self.masks.iter().map(|&m| y ^ m).filter(|&z| !self.is_used(z)).collect(),
                Some(dom) => dom
                    .iter()
                    .copied()
                    .filter(|&z| !self.is_used(z) && hamming(y, z) <= self.dp)
                    .collect(),
            };
            next.sort_unstable();
            ok = !next.is_empty();
            saved.push((w, self.domains[w].replace(next)));
            if !ok {
                break;
            }
        }
        if ok {
            // The unplaced neighbors of `t` need distinct images among their domains.
            let mut union: Vec<u64> = later
                .iter()
                .flat_map(|&w| self.domains[w].as_deref().unwrap_or(&[]))
                .copied()
                .filter(|&z| !self.is_used(z))
                .collect();
            union.sort_unstable();
            union.dedup();
            ok = union.len() >= later.len();
        }
        self.later[t] = later;
        ok
    }

    /// Places positions `t..`; returns whether a full placement was found.
    fn place(&mut self, t: usize) -> bool {
        if t == self.images.len() {
            return true;
        }
        let listed = if t == 0 { Some(vec![0]) } else { self.domains[t].clone() };
        let total = listed.as_ref().map_or(1u64 << self.ell, |c| c.len() as u64);
        for idx in 0..total {
            let y = listed.as_ref().map_or(idx, |c| c[idx as usize]);
            if self.is_used(y) || !self.is_canonical(y) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.out_of_budget = true;
                return false;
            }
            self.images[t] = y;
            self.toggle(y);
            let touched = self.touched;
            self.touched |= y;
            let mut saved = Vec::new();
            if self.propagate(t, y, &mut saved) && self.place(t + 1) {
                return true;
            }
            for (w, dom) in saved.into_iter().rev() {
                self.domains[w] = dom;
            }
            self.touched = touched;
            self.toggle(y);
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

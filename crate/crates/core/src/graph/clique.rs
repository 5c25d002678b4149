//! Maximum clique by branch and bound with greedy-coloring bounds on
//! bitset adjacency (in the style of MCQ/BBMC).

use std::time::{Duration, Instant};

/// Default wall-clock budget per clique search.
pub const DEFAULT_CLIQUE_BUDGET: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub(crate) fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn subtract(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub(crate) fn intersection(&self, other: &Bitset) -> Bitset {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub size: usize,
    /// Vertices of a clique of that size, sorted.
    pub witness: Vec<usize>,
    /// `false` when the budget ran out; `size` is then only a lower bound.
    pub exact: bool,
    pub nodes: u64,
}

struct Search<'a> {
    adj: Vec<Bitset>,
    /// order[i] = original vertex at search position i.
    order: &'a [usize],
    best: Vec<usize>,
    current: Vec<usize>,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

/// Sequential greedy coloring of `cands`; returns vertices ordered by color
/// class together with their color numbers (1-based, nondecreasing).
pub(crate) fn greedy_color(adj: &[Bitset], cands: &Bitset) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = cands.clone();
    let mut verts = Vec::with_capacity(cands.count());
    let mut colors = Vec::with_capacity(verts.capacity());
    let mut k = 0;
    while !uncolored.is_empty() {
        k += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            uncolored.remove(v);
            avail.subtract(&adj[v]);
            verts.push(v);
            colors.push(k);
        }
    }
    (verts, colors)
}

impl Search<'_> {
    fn expand(&mut self, mut cands: Bitset) {
        self.nodes += 1;
        if self.nodes % 1024 == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let (verts, colors) = greedy_color(&self.adj, &cands);
        for i in (0..verts.len()).rev() {
            if self.current.len() + colors[i] <= self.best.len() {
                return;
            }
            let v = verts[i];
            self.current.push(v);
            let next = cands.intersection(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cands.remove(v);
            if self.timed_out {
                return;
            }
        }
    }
}

/// Maximum clique of the graph whose adjacency rows are `adj`.
///
/// Vertices are searched in nonincreasing-degree order with ties broken by
/// index, so witnesses are reproducible.
pub fn max_clique_bitsets(adj: &[Bitset], budget: Duration) -> CliqueResult {
    let n = adj.len();
    if n == 0 {
        return CliqueResult {
            size: 0,
            witness: Vec::new(),
            exact: true,
            nodes: 0,
        };
    }
    let mut order: Vec<usize> = (0..n).collect();
    let degrees: Vec<usize> = adj.iter().map(Bitset::count).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // Renumber so that bitset scan order is the search order.
    let renumbered: Vec<Bitset> = order
        .iter()
        .map(|&v| {
            let mut row = Bitset::new(n);
            for u in adj[v].iter() {
                row.insert(pos[u]);
            }
            row
        })
        .collect();

    let mut search = Search {
        adj: renumbered,
        order: &order,
        best: vec![0],
        current: Vec::new(),
        deadline: Instant::now() + budget,
        nodes: 0,
        timed_out: false,
    };
    search.expand(Bitset::full(n));
    let mut witness: Vec<usize> = search.best.iter().map(|&i| search.order[i]).collect();
    witness.sort_unstable();
    CliqueResult {
        size: witness.len(),
        witness,
        exact: !search.timed_out,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Bitset> {
        let mut adj = vec![Bitset::new(n); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    fn brute(adj: &[Bitset]) -> usize {
        let n = adj.len();
        (0u32..1 << n)
            .filter(|&s| {
                (0..n).all(|u| {
                    (s >> u) & 1 == 0 || (0..n).all(|v| v == u || (s >> v) & 1 == 0 || adj[u].contains(v))
                })
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn complete_graph() {
        let edges: Vec<_> = (0..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))).collect();
        let r = max_clique_bitsets(&from_edges(8, &edges), DEFAULT_CLIQUE_BUDGET);
        assert_eq!(r.size, 8);
        assert!(r.exact);
    }

    #[test]
    fn edgeless_graph() {
        let r = max_clique_bitsets(&from_edges(5, &[]), DEFAULT_CLIQUE_BUDGET);
        assert_eq!(r.size, 1);
        let r = max_clique_bitsets(&[], DEFAULT_CLIQUE_BUDGET);
        assert_eq!(r.size, 0);
    }

    #[test]
    fn random_graphs_match_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=14);
            let density: f64 = rng.gen();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
            let adj = from_edges(n, &edges);
            let r = max_clique_bitsets(&adj, DEFAULT_CLIQUE_BUDGET);
            assert_eq!(r.size, brute(&adj));
            for (i, &u) in r.witness.iter().enumerate() {
                for &v in &r.witness[i + 1..] {
                    assert!(adj[u].contains(v));
                }
            }
        }
    }

    #[test]
    fn zero_budget_reports_inexact() {
        // A large sparse-ish graph that needs more than 1024 nodes.
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let n = 300;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let r = max_clique_bitsets(&from_edges(n, &edges), Duration::ZERO);
        assert!(!r.exact);
        assert!(r.size >= 1);
    }
}

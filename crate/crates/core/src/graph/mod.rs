//! Explicit small graphs and brute-force oracles.
//!
//! Graphs are stored as sorted adjacency lists. Vertices of the source graph
//! and of Hamming powers carry their packed bitstring as a label.

mod clique;
mod dump;
mod lemma;
mod symmetric;

use std::sync::OnceLock;
use std::time::Duration;

pub use clique::{max_clique_bitsets, Bitset, CliqueResult, DEFAULT_CLIQUE_BUDGET};
pub use dump::{read_edge_list, write_edge_list};
pub use lemma::{lemma1_check, lemma1_check_with_budget, Lemma1Report, SubsetSelection};

use crate::bits::{ball_masks, weight_k_words};
use crate::{Error, Result};

/// Vertex cap for explicit constructions.
pub const MAX_VERTICES: usize = 1 << 17;
/// Cap on stored adjacency entries (twice the edge count).
pub const MAX_ADJACENCY: usize = 50_000_000;

#[derive(Debug)]
pub struct AdjacencyGraph {
    labels: Vec<u64>,
    /// Bit width of the labels when they are bitstrings.
    label_width: Option<u32>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    regular_degree: Option<usize>,
    vertex_transitive: bool,
    /// Vertex set closed under coordinate permutations of the labels, with
    /// adjacency a function of Hamming distance.
    coordinate_symmetric: bool,
    clique: OnceLock<CliqueResult>,
}

impl Clone for AdjacencyGraph {
    fn clone(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            label_width: self.label_width,
            offsets: self.offsets.clone(),
            neighbors: self.neighbors.clone(),
            regular_degree: self.regular_degree,
            vertex_transitive: self.vertex_transitive,
            coordinate_symmetric: self.coordinate_symmetric,
            clique: OnceLock::new(),
        }
    }
}

impl AdjacencyGraph {
    fn from_lists(
        labels: Vec<u64>,
        label_width: Option<u32>,
        mut lists: Vec<Vec<u32>>,
        vertex_transitive: bool,
    ) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut neighbors = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        offsets.push(0);
        for list in &mut lists {
            list.sort_unstable();
            list.dedup();
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let mut g = Self {
            labels,
            label_width,
            offsets,
            neighbors,
            regular_degree: None,
            vertex_transitive,
            coordinate_symmetric: false,
            clique: OnceLock::new(),
        };
        let first = g.order().checked_sub(1).map(|_| g.degree(0));
        if let Some(d) = first {
            if (0..g.order()).all(|v| g.degree(v) == d) {
                g.regular_degree = Some(d);
            }
        } else {
            g.regular_degree = Some(0);
        }
        g
    }

    /// Graph on vertices `0..n` from an undirected edge list.
    ///
    /// Loops are rejected; duplicate and reversed edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!("{n} vertices exceeds the cap {MAX_VERTICES}")));
        }
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            lists[u].push(v as u32);
            lists[v].push(u as u32);
        }
        Ok(Self::from_lists((0..n as u64).collect(), None, lists, false))
    }

    /// Declares (or retracts) vertex-transitivity, which [`lemma1_check`] requires.
    pub fn with_vertex_transitive(mut self, flag: bool) -> Self {
        self.vertex_transitive = flag;
        self.coordinate_symmetric &= flag;
        self
    }

    fn coordinate_symmetric(mut self) -> Self {
        self.coordinate_symmetric = true;
        self
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label_width(&self) -> Option<u32> {
        self.label_width
    }

    pub fn regular_degree(&self) -> Option<usize> {
        self.regular_degree
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.vertex_transitive
    }

    /// Exact maximum degree by scanning every vertex.
    pub fn brute_max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Adjacency rows as bitsets, restricted to `members` (renumbered `0..members.len()`).
    pub fn induced_bitsets(&self, members: &[usize]) -> Vec<Bitset> {
        let mut local = vec![u32::MAX; self.order()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i as u32;
        }
        members
            .iter()
            .map(|&v| {
                let mut row = Bitset::new(members.len());
                for &u in self.neighbors(v) {
                    let l = local[u as usize];
                    if l != u32::MAX {
                        row.insert(l as usize);
                    }
                }
                row
            })
            .collect()
    }

    /// Exact clique number and a witness via branch and bound within `budget`.
    pub fn brute_max_clique_with_budget(&self, budget: Duration) -> CliqueResult {
        if let (true, Some(width)) = (self.coordinate_symmetric, self.label_width) {
            return symmetric::max_clique_symmetric(self, width, budget);
        }
        let members: Vec<usize> = (0..self.order()).collect();
        max_clique_bitsets(&self.induced_bitsets(&members), budget)
    }

    /// [`Self::brute_max_clique_with_budget`] with the default budget; exact
    /// results are memoized.
    pub fn brute_max_clique(&self) -> CliqueResult {
        if let Some(c) = self.clique.get() {
            return c.clone();
        }
        let c = self.brute_max_clique_with_budget(DEFAULT_CLIQUE_BUDGET);
        if c.exact {
            let _ = self.clique.set(c.clone());
        }
        c
    }

    /// Maximum clique of the induced subgraph on `members`, reported in parent indices.
    pub fn induced_max_clique(&self, members: &[usize], budget: Duration) -> CliqueResult {
        let mut res = max_clique_bitsets(&self.induced_bitsets(members), budget);
        for v in &mut res.witness {
            *v = members[*v];
        }
        res.witness.sort_unstable();
        res
    }

    /// Whether `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

fn check_size(vertices: usize, per_vertex: usize) -> Result<()> {
    if vertices > MAX_VERTICES {
        return Err(Error::Resource(format!(
            "{vertices} vertices exceeds the cap {MAX_VERTICES}"
        )));
    }
    if vertices.saturating_mul(per_vertex) > MAX_ADJACENCY {
        return Err(Error::Resource(format!(
            "{vertices} vertices of degree {per_vertex} exceed the adjacency cap {MAX_ADJACENCY}"
        )));
    }
    Ok(())
}

/// Colex rank of a weight-`k` word among all weight-`k` words (increasing numeric order).
fn colex_rank(word: u64, pascal: &[Vec<u64>]) -> usize {
    let mut rank = 0u64;
    let mut rest = word;
    let mut i = 1;
    while rest != 0 {
        let pos = rest.trailing_zeros() as usize;
        rank += pascal[pos][i];
        rest &= rest - 1;
        i += 1;
    }
    rank as usize
}

/// Spreads the bits of `selector` over `positions`: bit `i` of the selector
/// picks `positions[i]`.
fn deposit(selector: u64, positions: &[u32]) -> u64 {
    let mut out = 0;
    let mut rest = selector;
    while rest != 0 {
        out |= 1u64 << positions[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    out
}

/// Source neighborhood graph: weight-`k` words of length `n`, adjacent when
/// their Hamming distance is at most `d`.
pub fn build_source_graph(n: u32, k: u32, d: u32) -> Result<AdjacencyGraph> {
    if !(0 < k && k < n) {
        return Err(Error::Domain(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    if n > 22 {
        return Err(Error::Resource(format!("source graphs are capped at n = 22, got {n}")));
    }
    let top = (d / 2).min(k).min(n - k);
    let size = crate::exact::binom(n as u64, k as u64);
    let size: usize = size.try_into().expect("n <= 22");
    let degree: usize = crate::exact::degree_gn(n as u64, k as u64, d as u64)
        .try_into()
        .expect("n <= 22");
    check_size(size, degree)?;

    let words = weight_k_words(n, k);
    let mut pascal = vec![vec![0u64; n as usize + 2]; n as usize + 1];
    for (a, row) in pascal.iter_mut().enumerate() {
        row[0] = 1;
        for b in 1..=a {
            row[b] = crate::exact::binom(a as u64, b as u64).try_into().expect("small");
        }
    }
    // selectors[j] = index sets of size j, for the ones and the zeros.
    let one_sel: Vec<Vec<u64>> = (0..=top).map(|j| weight_k_words(k, j)).collect();
    let zero_sel: Vec<Vec<u64>> = (0..=top).map(|j| weight_k_words(n - k, j)).collect();

    let lists = words
        .iter()
        .map(|&w| {
            let ones: Vec<u32> = (0..n).filter(|&i| (w >> i) & 1 == 1).collect();
            let zeros: Vec<u32> = (0..n).filter(|&i| (w >> i) & 1 == 0).collect();
            let mut list = Vec::with_capacity(degree);
            for j in 1..=top as usize {
                for &a in &one_sel[j] {
                    let drop = deposit(a, &ones);
                    for &b in &zero_sel[j] {
                        let add = deposit(b, &zeros);
                        list.push(colex_rank(w ^ drop ^ add, &pascal) as u32);
                    }
                }
            }
            list
        })
        .collect();
    Ok(AdjacencyGraph::from_lists(words, Some(n), lists, true).coordinate_symmetric())
}

/// `D'`-th power of the `ell`-cube: all `ell`-bit words, adjacent when at
/// Hamming distance `1..=dp`.
pub fn build_hamming_power_graph(ell: u32, dp: u32) -> Result<AdjacencyGraph> {
    if ell > 17 {
        return Err(Error::Resource(format!("Hamming powers are capped at ell = 17, got {ell}")));
    }
    let masks = ball_masks(ell, dp);
    let size = 1usize << ell;
    check_size(size, masks.len())?;
    let lists = (0..size as u64)
        .map(|v| masks.iter().map(|&m| (v ^ m) as u32).collect())
        .collect();
    Ok(AdjacencyGraph::from_lists((0..size as u64).collect(), Some(ell), lists, true).coordinate_symmetric())
}

/// Circulant graph on `Z_n`: `i ~ j` iff `i - j` is congruent to `+-s` for some offset `s`.
pub fn circulant(n: usize, offsets: &[i64]) -> Result<AdjacencyGraph> {
    if n == 0 || offsets.is_empty() {
        return Err(Error::Domain("circulant needs n >= 1 and a nonempty offset set".into()));
    }
    let mut steps = Vec::new();
    for &s in offsets {
        let s = s.rem_euclid(n as i64) as usize;
        if s == 0 {
            return Err(Error::Domain("offset congruent to 0 would create loops".into()));
        }
        steps.push(s);
        steps.push(n - s);
    }
    steps.sort_unstable();
    steps.dedup();
    check_size(n, steps.len())?;
    let lists = (0..n)
        .map(|i| steps.iter().map(|&s| ((i + s) % n) as u32).collect())
        .collect();
    Ok(AdjacencyGraph::from_lists((0..n as u64).collect(), None, lists, true))
}

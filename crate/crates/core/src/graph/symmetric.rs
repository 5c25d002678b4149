//! Clique search on graphs of bitstrings whose adjacency depends only on
//! Hamming distance and whose vertex set is closed under coordinate
//! permutations (constant-weight slices, whole cubes and their powers).
//!
//! Such a graph is vertex-transitive, so one vertex may be fixed in the
//! clique. After that, every coordinate permutation that maps each "atom"
//! (a maximal set of coordinates on which all clique labels agree) to itself
//! fixes the clique and permutes the candidates. Two candidates are in the
//! same orbit of that group exactly when they have the same number of ones
//! in every atom, and it suffices to branch on one vertex per orbit and then
//! discard the whole orbit.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use super::clique::{greedy_color, Bitset, CliqueResult};
use super::AdjacencyGraph;
use crate::bits::low_mask;

struct Search {
    adj: Vec<Bitset>,
    labels: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

/// Per-atom popcounts packed in mixed radix; the product of `|atom| + 1`
/// is at most `2^width`, so it fits.
fn signature(label: u64, atoms: &[u64]) -> u64 {
    atoms.iter().fold(0, |acc, &a| {
        acc * (a.count_ones() as u64 + 1) + (label & a).count_ones() as u64
    })
}

fn split(atoms: &[u64], label: u64) -> Vec<u64> {
    atoms
        .iter()
        .flat_map(|&a| [a & label, a & !label])
        .filter(|&a| a != 0)
        .collect()
}

impl Search {
    fn expand(&mut self, atoms: &[u64], mut cands: Bitset) {
        self.nodes += 1;
        if self.nodes % 256 == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let mut sigs = vec![0u64; self.labels.len()];
        for v in cands.iter() {
            sigs[v] = signature(self.labels[v], atoms);
        }
        let mut sizes: HashMap<u64, usize> = HashMap::new();
        for v in cands.iter() {
            *sizes.entry(sigs[v]).or_default() += 1;
        }
        loop {
            if cands.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
                return;
            }
            let (verts, colors) = greedy_color(&self.adj, &cands);
            if self.current.len() + colors[colors.len() - 1] <= self.best.len() {
                return;
            }
            // Some vertex coloured above `floor` lies in every improving
            // clique; branch on the one whose orbit is largest.
            let floor = self.best.len().saturating_sub(self.current.len());
            let v = verts
                .iter()
                .zip(&colors)
                .filter(|&(_, &c)| c > floor)
                .map(|(&v, _)| v)
                .max_by_key(|&v| sizes[&sigs[v]])
                .expect("bound exceeds floor");
            let key = sigs[v];
            self.current.push(v);
            let next = cands.intersection(&self.adj[v]);
            self.expand(&split(atoms, self.labels[v]), next);
            self.current.pop();
            let orbit: Vec<usize> = cands.iter().filter(|&u| sigs[u] == key).collect();
            for u in orbit {
                cands.remove(u);
            }
            sizes.remove(&key);
            if self.timed_out {
                return;
            }
        }
    }
}

/// Maximum clique by orbital branching. The caller guarantees the symmetry
/// described in the module documentation.
pub(crate) fn max_clique_symmetric(g: &AdjacencyGraph, width: u32, budget: Duration) -> CliqueResult {
    if g.order() == 0 {
        return CliqueResult {
            size: 0,
            witness: Vec::new(),
            exact: true,
            nodes: 0,
        };
    }
    let root = 0;
    let members: Vec<usize> = g.neighbors(root).iter().map(|&u| u as usize).collect();
    let adj = g.induced_bitsets(&members);
    let labels: Vec<u64> = members.iter().map(|&u| g.label(u)).collect();
    let root_label = g.label(root);
    let atoms = split(&[low_mask(width)], root_label);
    let mut search = Search {
        adj,
        labels,
        best: Vec::new(),
        current: Vec::new(),
        deadline: Instant::now() + budget,
        nodes: 0,
        timed_out: false,
    };
    search.expand(&atoms, Bitset::full(members.len()));
    let mut witness: Vec<usize> = std::iter::once(root)
        .chain(search.best.iter().map(|&i| members[i]))
        .collect();
    witness.sort_unstable();
    CliqueResult {
        size: witness.len(),
        witness,
        exact: !search.timed_out,
        nodes: search.nodes,
    }
}

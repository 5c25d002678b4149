//! Degree and clique preservation in large induced subgraphs of
//! vertex-transitive graphs: for `|S| = M` out of `N` vertices of a
//! `d`-regular vertex-transitive graph,
//! `Delta(G[S]) >= d (2 - N/M)` when `M >= N/2`, and
//! `omega(G[S]) >= ceil(M omega(G) / N)`.

use std::time::Duration;

use super::{AdjacencyGraph, DEFAULT_CLIQUE_BUDGET};
use crate::{Error, Result};

/// A vertex subset of a parent graph.
#[derive(Debug, Clone)]
pub struct SubsetSelection<'g> {
    parent: &'g AdjacencyGraph,
    members: Vec<usize>,
}

impl<'g> SubsetSelection<'g> {
    pub fn new(parent: &'g AdjacencyGraph, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.last() {
            if v >= parent.order() {
                return Err(Error::Domain(format!(
                    "vertex {v} not in a graph of order {}",
                    parent.order()
                )));
            }
        }
        Ok(Self { parent, members })
    }

    pub fn parent(&self) -> &AdjacencyGraph {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// `N`.
    pub fn parent_order(&self) -> usize {
        self.parent.order()
    }

    /// `M`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Maximum degree of the induced subgraph.
    pub fn induced_max_degree(&self) -> usize {
        let mut inside = vec![false; self.parent.order()];
        for &v in &self.members {
            inside[v] = true;
        }
        self.members
            .iter()
            .map(|&v| {
                self.parent
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| inside[u as usize])
                    .count()
            })
            .max()
            .unwrap_or(0)
    }
}

/// Both sides of both induced-subgraph inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Report {
    pub parent_order: usize,
    pub subset_size: usize,
    pub degree: usize,
    pub parent_clique: usize,
    pub induced_max_degree: usize,
    /// `d (2 - N/M)`; `None` when `M < N/2`, where the bound is not asserted.
    pub degree_bound: Option<f64>,
    pub degree_holds: Option<bool>,
    pub induced_clique: usize,
    /// `ceil(M omega(G) / N)`.
    pub clique_bound: usize,
    pub clique_holds: bool,
    /// Both clique searches finished within budget.
    pub exact: bool,
}

impl Lemma1Report {
    /// No inequality that applies is violated.
    pub fn holds(&self) -> bool {
        self.clique_holds && self.degree_holds.unwrap_or(true)
    }
}

/// Evaluates both inequalities on `sel`; the parent must be flagged vertex-transitive.
pub fn lemma1_check(sel: &SubsetSelection<'_>) -> Result<Lemma1Report> {
    lemma1_check_with_budget(sel, DEFAULT_CLIQUE_BUDGET)
}

pub fn lemma1_check_with_budget(sel: &SubsetSelection<'_>, budget: Duration) -> Result<Lemma1Report> {
    let g = sel.parent();
    if !g.is_vertex_transitive() {
        return Err(Error::Precondition("parent graph is not flagged vertex-transitive".into()));
    }
    let d = g.regular_degree().ok_or_else(|| {
        Error::Precondition("parent graph flagged vertex-transitive but not regular".into())
    })?;
    let (n, m) = (sel.parent_order(), sel.size());
    if m == 0 {
        return Err(Error::Domain("empty subset".into()));
    }
    let parent = g.brute_max_clique();
    let induced = g.induced_max_clique(sel.members(), budget);
    let induced_max_degree = sel.induced_max_degree();

    let (degree_bound, degree_holds) = if 2 * m >= n {
        // Delta * M >= d (2M - N), in integers.
        let holds = induced_max_degree * m >= d * (2 * m - n);
        (Some(d as f64 * (2.0 - n as f64 / m as f64)), Some(holds))
    } else {
        (None, None)
    };
    let clique_bound = (m * parent.size).div_ceil(n);
    Ok(Lemma1Report {
        parent_order: n,
        subset_size: m,
        degree: d,
        parent_clique: parent.size,
        induced_max_degree,
        degree_bound,
        degree_holds,
        induced_clique: induced.size,
        clique_bound,
        clique_holds: induced.size >= clique_bound,
        exact: parent.exact && induced.exact,
    })
}

//! Exact maximum clique and maximum independent set by bitset branch and bound
//! with greedy-coloring bounds. Independence is solved as a clique problem on
//! the complement.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{words_for, BitIter, Graph, VertexId, WORD};

/// Limits for the exact solvers. The budget counts search-tree nodes, so runs
/// are reproducible regardless of machine speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub node_budget: u64,
    /// Largest graph order accepted.
    pub max_order: usize,
    /// Wall-clock ceiling; a run past it is reported like an exhausted budget.
    pub deadline: Option<Instant>,
}

pub const DEFAULT_MAX_ORDER: usize = 64;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            max_order: DEFAULT_MAX_ORDER,
            deadline: None,
        }
    }
}

impl ExactOptions {
    pub fn with_budget(node_budget: u64) -> Self {
        ExactOptions {
            node_budget,
            ..Self::default()
        }
    }

    pub fn max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exact {
    Value(usize),
    /// The budget ran out; the best set found so far has `lower_bound` vertices.
    Timeout { lower_bound: usize },
}

impl Exact {
    pub fn value(self) -> Option<usize> {
        match self {
            Exact::Value(v) => Some(v),
            Exact::Timeout { .. } => None,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            Exact::Value(v) | Exact::Timeout { lower_bound: v } => v,
        }
    }
}

/// Result of a clique search, with the best vertex set found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSearch {
    pub outcome: Exact,
    pub witness: Vec<VertexId>,
    pub nodes_expanded: u64,
}

pub fn clique_number_exact(g: &Graph, opts: &ExactOptions) -> Result<Exact> {
    max_clique(g, opts).map(|s| s.outcome)
}

pub fn independence_number_exact(g: &Graph, opts: &ExactOptions) -> Result<Exact> {
    max_independent_set(g, opts).map(|s| s.outcome)
}

pub fn max_independent_set(g: &Graph, opts: &ExactOptions) -> Result<CliqueSearch> {
    check_order(g, opts)?;
    max_clique(&g.complement(), opts)
}

pub fn max_clique(g: &Graph, opts: &ExactOptions) -> Result<CliqueSearch> {
    check_order(g, opts)?;
    let n = g.order();
    if n == 0 {
        return Ok(CliqueSearch {
            outcome: Exact::Value(0),
            witness: Vec::new(),
            nodes_expanded: 0,
        });
    }

    // Renumber by non-increasing degree so greedy coloring visits hubs first.
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(degrees[i]), i));
    let mut position = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }
    let words = words_for(n);
    let mut rows = vec![0u64; n * words];
    for (pos, &i) in order.iter().enumerate() {
        for j in BitIter::new(g.row(i)) {
            let q = position[j];
            rows[pos * words + q / WORD] |= 1 << (q % WORD);
        }
    }

    let mut search = Search {
        words,
        rows,
        budget: opts.node_budget,
        deadline: opts.deadline,
        nodes: 0,
        aborted: false,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.seed_greedy(n);
    let mut all = vec![0u64; words];
    for i in 0..n {
        all[i / WORD] |= 1 << (i % WORD);
    }
    search.expand(all);

    let mut witness: Vec<VertexId> = search.best.iter().map(|&p| order[p] + 1).collect();
    witness.sort_unstable();
    let outcome = if search.aborted {
        Exact::Timeout {
            lower_bound: witness.len(),
        }
    } else {
        Exact::Value(witness.len())
    };
    Ok(CliqueSearch {
        outcome,
        witness,
        nodes_expanded: search.nodes,
    })
}

fn check_order(g: &Graph, opts: &ExactOptions) -> Result<()> {
    if g.order() > opts.max_order {
        return Err(Error::Resource(format!(
            "graph order {} exceeds the exact-solver cap {}",
            g.order(),
            opts.max_order
        )));
    }
    Ok(())
}

/// Checks the clock only every few thousand nodes.
pub(crate) fn past_deadline(nodes: u64, deadline: Option<Instant>) -> bool {
    nodes.is_multiple_of(4096) && deadline.is_some_and(|d| Instant::now() >= d)
}

struct Search {
    words: usize,
    rows: Vec<u64>,
    budget: u64,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl Search {
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn seed_greedy(&mut self, n: usize) {
        // First-fit clique in degree order gives the initial incumbent.
        let mut clique: Vec<usize> = Vec::new();
        for v in 0..n {
            if clique
                .iter()
                .all(|&u| self.row(u)[v / WORD] >> (v % WORD) & 1 == 1)
            {
                clique.push(v);
            }
        }
        self.best = clique;
    }

    fn expand(&mut self, mut candidates: Vec<u64>) {
        let (list, colors) = self.color_sort(&candidates);
        for idx in (0..list.len()).rev() {
            if self.aborted || self.current.len() + colors[idx] <= self.best.len() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget || past_deadline(self.nodes, self.deadline) {
                self.aborted = true;
                return;
            }
            let v = list[idx];
            let next: Vec<u64> = candidates
                .iter()
                .zip(self.row(v))
                .map(|(c, r)| c & r)
                .collect();
            self.current.push(v);
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates[v / WORD] &= !(1 << (v % WORD));
        }
    }

    /// Greedy sequential coloring of the candidate set. Only vertices whose
    /// color could still beat the incumbent are returned, in color order.
    fn color_sort(&self, candidates: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let k_min = (self.best.len() + 1).saturating_sub(self.current.len()).max(1);
        let mut uncolored = candidates.to_vec();
        let mut list = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = BitIter::new(&q).next() {
                q[v / WORD] &= !(1 << (v % WORD));
                uncolored[v / WORD] &= !(1 << (v % WORD));
                for (qw, rw) in q.iter_mut().zip(self.row(v)) {
                    *qw &= !rw;
                }
                if color >= k_min {
                    list.push(v);
                    colors.push(color);
                }
            }
        }
        (list, colors)
    }
}

//! Simple undirected graphs on vertices `1..=n`, stored as packed adjacency rows.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// 1-based vertex identifier.
pub type VertexId = usize;

pub(crate) const WORD: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Finite simple undirected graph. Row `i` bit `j` is set iff vertices `i+1`
/// and `j+1` are adjacent; rows are symmetric and the diagonal is clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The null graph on `n` vertices.
    pub fn null(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::null(n);
        for i in 0..n {
            for j in i + 1..n {
                g.link(i, j);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Argument(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::null(n);
        for i in 0..n {
            g.link(i, (i + 1) % n);
        }
        Ok(g)
    }

    /// Disjoint union of `g` and `h` plus every edge between them. The vertices
    /// of `h` are renumbered to follow those of `g`.
    pub fn join(g: &Graph, h: &Graph) -> Graph {
        let mut out = Graph::null(g.n + h.n);
        for (u, v) in g.edges() {
            out.link(u - 1, v - 1);
        }
        for (u, v) in h.edges() {
            out.link(g.n + u - 1, g.n + v - 1);
        }
        for i in 0..g.n {
            for j in 0..h.n {
                out.link(i, g.n + j);
            }
        }
        out
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::null(n);
        for (u, v) in edges {
            g.check_pair(u, v)?;
            g.link(u - 1, v - 1);
        }
        Ok(g)
    }

    /// Builds the graph on `1..=n` whose edges are the pairs accepted by `adjacent`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(VertexId, VertexId) -> bool) -> Self {
        let mut g = Graph::null(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i + 1, j + 1) {
                    g.link(i, j);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.test(u - 1, v - 1)
    }

    /// Copy of this graph with `uv` added.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.link(u - 1, v - 1);
        Ok(g)
    }

    /// Copy of this graph with `uv` removed (a no-op if absent).
    pub fn without_edge(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.unlink(u - 1, v - 1);
        Ok(g)
    }

    /// Same order and `E(self) ⊆ E(other)`.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n
            && self
                .bits
                .iter()
                .zip(&other.bits)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v - 1]`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `1..=n`.
    pub fn permuted(&self, perm: &[VertexId]) -> Graph {
        assert!(is_permutation(perm, self.n), "not a permutation of 1..={}", self.n);
        let mut g = Graph::null(self.n);
        for (u, v) in self.edges() {
            g.link(perm[u - 1] - 1, perm[v - 1] - 1);
        }
        g
    }

    pub fn neighbors(&self, u: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        BitIter::new(self.row(u - 1)).map(|j| j + 1)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            out.extend(
                BitIter::new(self.row(i))
                    .filter(|&j| j > i)
                    .map(|j| (i + 1, j + 1)),
            );
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, u: VertexId) -> usize {
        popcount(self.row(u - 1))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| popcount(self.row(i))).collect()
    }

    /// `δ(G)`; zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Number of vertices of degree `n - 1`.
    pub fn full_degree_count(&self) -> usize {
        self.degrees()
            .into_iter()
            .filter(|&d| d + 1 == self.n)
            .count()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut counts = vec![0; self.n];
        for d in self.degrees() {
            counts[d] += 1;
        }
        DegreeSequence { counts }
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn test(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub(crate) fn link(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        self.bits[i * self.words + j / WORD] |= 1 << (j % WORD);
        self.bits[j * self.words + i / WORD] |= 1 << (i % WORD);
    }

    fn unlink(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / WORD] &= !(1 << (j % WORD));
        self.bits[j * self.words + i / WORD] &= !(1 << (i % WORD));
    }

    fn check_pair(&self, u: VertexId, v: VertexId) -> Result<()> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(Error::Argument(format!(
                    "vertex {w} is outside 1..={}",
                    self.n
                )));
            }
        }
        if u == v {
            return Err(Error::Argument(format!("self-loop at vertex {u}")));
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

pub(crate) fn is_permutation(perm: &[VertexId], n: usize) -> bool {
    let mut seen = vec![false; n];
    perm.len() == n
        && perm
            .iter()
            .all(|&p| p >= 1 && p <= n && !std::mem::replace(&mut seen[p - 1], true))
}

pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterates the set bit positions of a packed row.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

/// Vertex-degree counts `g_0..g_{n-1}`: `g_i` vertices have degree `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeSequence {
    counts: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(counts: Vec<usize>) -> Self {
        DegreeSequence { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `Σ g_i`, the vertex count.
    pub fn vertex_total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `Σ i·g_i`, twice the edge count.
    pub fn degree_total(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, g)| i * g).sum()
    }

    pub fn partial_sums(&self) -> Vec<usize> {
        self.counts
            .iter()
            .scan(0, |acc, &g| {
                *acc += g;
                Some(*acc)
            })
            .collect()
    }

    /// Smallest `k` with `Σ_{i≤k} self < Σ_{i≤k} reference`, or `None` when
    /// `self` dominates `reference` at every prefix.
    pub fn first_shortfall(&self, reference: &DegreeSequence) -> Option<usize> {
        let len = self.len().max(reference.len());
        let mut ours = 0;
        let mut theirs = 0;
        for k in 0..len {
            ours += self.counts.get(k).copied().unwrap_or(0);
            theirs += reference.counts.get(k).copied().unwrap_or(0);
            if ours < theirs {
                return Some(k);
            }
        }
        None
    }
}

/// Renders as `(g_0,g_1,...)`.
impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// A graph together with an injective vertex labeling; `labels[v - 1]` is the
/// label of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph<L = crate::Label> {
    graph: Graph,
    labels: Vec<L>,
}

impl<L: Clone + Eq + Hash> LabeledGraph<L> {
    pub fn new(graph: Graph, labels: Vec<L>) -> Result<Self> {
        if labels.len() != graph.order() {
            return Err(Error::Argument(format!(
                "{} labels for a graph of order {}",
                labels.len(),
                graph.order()
            )));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        if !labels.iter().all(|l| seen.insert(l)) {
            return Err(Error::Argument("labels are not injective".into()));
        }
        Ok(LabeledGraph { graph, labels })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &L {
        &self.labels[v - 1]
    }

    pub fn vertex_of(&self, label: &L) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(|i| i + 1)
    }

    /// Moves vertex `v` to `perm[v - 1]`, carrying its label along.
    pub fn permuted(&self, perm: &[VertexId]) -> Self {
        let graph = self.graph.permuted(perm);
        let mut labels = self.labels.clone();
        for (i, &p) in perm.iter().enumerate() {
            labels[p - 1] = self.labels[i].clone();
        }
        LabeledGraph { graph, labels }
    }

    pub fn into_parts(self) -> (Graph, Vec<L>) {
        (self.graph, self.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Graph::from_fn(n, |_, _| it.next().unwrap())
            })
        })
    }

    #[test]
    fn joins() {
        let g = Graph::join(&Graph::complete(3), &Graph::null(4));
        assert_eq!((g.order(), g.edge_count()), (7, 15));
        let g2 = Graph::join(&Graph::cycle(4).unwrap(), &Graph::null(3));
        assert_eq!(g2.edge_count(), 16);
        assert_eq!(g2.degree_sequence().counts(), &[0, 0, 0, 0, 3, 4, 0]);
        assert_eq!(Graph::join(&Graph::null(1), &Graph::null(1)), Graph::complete(2));
    }

    #[test]
    fn cycle_needs_three() {
        assert!(matches!(Graph::cycle(2), Err(Error::Argument(_))));
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3));
    }

    #[test]
    fn edge_mutation() {
        let g = Graph::null(3);
        assert!(matches!(g.with_edge(2, 2), Err(Error::Argument(_))));
        assert!(matches!(g.with_edge(0, 2), Err(Error::Argument(_))));
        assert!(matches!(g.with_edge(1, 4), Err(Error::Argument(_))));
        let h = g.with_edge(1, 3).unwrap();
        assert!(h.has_edge(3, 1) && h.has_edge(1, 3));
        assert_eq!(g.edge_count(), 0, "mutation must not touch the original");
        assert_eq!(h.without_edge(3, 1).unwrap(), g);
    }

    #[test]
    fn spanning_subgraphs() {
        let k4 = Graph::complete(4);
        assert!(k4.is_spanning_subgraph_of(&k4));
        assert!(Graph::cycle(4).unwrap().is_spanning_subgraph_of(&k4));
        assert!(!k4.is_spanning_subgraph_of(&Graph::cycle(4).unwrap()));
        assert!(!Graph::null(3).is_spanning_subgraph_of(&k4));
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(Graph::complete(4).degree_sequence().counts(), &[0, 0, 0, 4]);
        assert_eq!(Graph::null(3).degree_sequence().counts(), &[3, 0, 0]);
        assert_eq!(Graph::complete(4).degree_sequence().to_string(), "(0,0,0,4)");
        assert_eq!(Graph::complete(5).full_degree_count(), 5);
        assert_eq!(Graph::cycle(5).unwrap().min_degree(), 2);
    }

    #[test]
    fn shortfall_reports_first_k() {
        let g = DegreeSequence::new(vec![0, 0, 0, 0, 3, 4, 0]);
        let d = DegreeSequence::new(vec![0, 0, 0, 1, 2, 1, 3]);
        assert_eq!(g.first_shortfall(&d), Some(3));
        assert_eq!(d.first_shortfall(&d), None);
    }

    #[test]
    fn permutation_carries_labels() {
        let g = Graph::from_edges(3, [(1, 2)]).unwrap();
        let lg = LabeledGraph::new(g, vec![10u64, 20, 30]).unwrap();
        let p = lg.permuted(&[3, 1, 2]);
        assert!(p.graph().has_edge(3, 1));
        assert_eq!(p.labels(), &[20, 30, 10]);
        assert!(LabeledGraph::new(Graph::null(2), vec![1u64, 1]).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_and_irreflexive(g in arb_graph(40), u in 1usize..=40, v in 1usize..=40) {
            let n = g.order();
            let (u, v) = ((u - 1) % n + 1, (v - 1) % n + 1);
            prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            prop_assert!(!g.has_edge(u, u));
            if u != v {
                let h = g.with_edge(u, v).unwrap();
                prop_assert!(h.has_edge(v, u) && !h.has_edge(u, u));
                let k = h.without_edge(v, u).unwrap();
                prop_assert!(!k.has_edge(u, v) && !k.has_edge(v, u));
            }
        }

        #[test]
        fn degree_sequence_identities(g in arb_graph(40)) {
            let s = g.degree_sequence();
            prop_assert_eq!(s.vertex_total(), g.order());
            prop_assert_eq!(s.degree_total(), 2 * g.edge_count());
            prop_assert_eq!(g.edges().len(), g.edge_count());
        }

        #[test]
        fn complement_partitions_pairs(g in arb_graph(30)) {
            let n = g.order();
            prop_assert_eq!(g.edge_count() + g.complement().edge_count(), n * (n - 1) / 2);
            prop_assert_eq!(g.complement().complement(), g);
        }
    }
}

//! Exact search for labelings under a [`LabelRule`], labeling certificates,
//! and labeling isomorphism.
//!
//! A graph admits a labeling iff it embeds as a spanning subgraph of the
//! rule's maximal graph, so the search is a bijective subgraph embedding of
//! `G` into that graph.

use std::collections::HashMap;
use std::hash::Hash;
use std::time::Instant;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{popcount, BitIter, Graph, LabeledGraph, VertexId, WORD};
use crate::maximal::{build_maximal_gamma, LabelRule};
use crate::solver::past_deadline;

pub const DEFAULT_LABEL_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelVerdict {
    Labeled,
    /// The whole search space was exhausted: no labeling exists.
    None,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingOutcome<L = crate::Label> {
    pub verdict: LabelVerdict,
    /// `labeling[v - 1]` is the label of vertex `v`; present iff labeled.
    pub labeling: Option<Vec<L>>,
    pub nodes_expanded: u64,
    /// Deepest partial assignment reached, in vertices.
    pub best_depth: usize,
}

impl<L: Clone> LabelingOutcome<L> {
    /// `[(vertex, label), ...]` sorted by vertex.
    pub fn certificate(&self) -> Option<Vec<(VertexId, L)>> {
        self.labeling
            .as_ref()
            .map(|ls| ls.iter().cloned().enumerate().map(|(i, l)| (i + 1, l)).collect())
    }
}

impl<L: Clone + Serialize> Serialize for LabelingOutcome<L> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LabelingOutcome", 4)?;
        s.serialize_field("verdict", &self.verdict)?;
        s.serialize_field("labeling", &self.certificate())?;
        s.serialize_field("nodes_expanded", &self.nodes_expanded)?;
        s.serialize_field("best_depth", &self.best_depth)?;
        s.end()
    }
}

fn universe_index<L: Clone + Eq + Hash>(universe: &[L]) -> HashMap<&L, usize> {
    universe.iter().enumerate().map(|(i, l)| (l, i)).collect()
}

/// Checks that `labels` is a bijection onto the rule's universe.
fn label_indices<R: LabelRule>(g: &Graph, labels: &[R::Label], rule: &R) -> Result<Vec<usize>> {
    let universe = rule.universe();
    if labels.len() != g.order() || universe.len() != g.order() {
        return Err(Error::Argument(format!(
            "{} labels, {} vertices and a universe of {}",
            labels.len(),
            g.order(),
            universe.len()
        )));
    }
    let index = universe_index(universe);
    let mut seen = vec![false; universe.len()];
    labels
        .iter()
        .map(|l| match index.get(l) {
            None => Err(Error::Argument(format!("label {l:?} is not in the universe"))),
            Some(&i) if std::mem::replace(&mut seen[i], true) => {
                Err(Error::Argument(format!("label {l:?} is used twice")))
            }
            Some(&i) => Ok(i),
        })
        .collect()
}

/// Whether every edge of `g` joins a compatible label pair.
pub fn verify_labeling<R: LabelRule>(g: &Graph, labels: &[R::Label], rule: &R) -> Result<bool> {
    label_indices(g, labels, rule)?;
    Ok(g
        .edges()
        .into_iter()
        .all(|(u, v)| rule.compatible(&labels[u - 1], &labels[v - 1])))
}

/// Moves each vertex to the position of its label in the universe, so the
/// result can be compared with the rule's maximal graph vertex for vertex.
pub fn transport<R: LabelRule>(g: &Graph, labels: &[R::Label], rule: &R) -> Result<Graph> {
    let idx = label_indices(g, labels, rule)?;
    let perm: Vec<VertexId> = idx.into_iter().map(|i| i + 1).collect();
    Ok(g.permuted(&perm))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelOptions {
    pub node_budget: u64,
    /// Wall-clock ceiling; hitting it yields `Unknown` like an exhausted budget.
    pub deadline: Option<Instant>,
}

impl Default for LabelOptions {
    fn default() -> Self {
        LabelOptions {
            node_budget: DEFAULT_LABEL_BUDGET,
            deadline: None,
        }
    }
}

/// Searches for a labeling of `g` under `rule` by backtracking.
///
/// Vertices are placed in order of non-increasing degree (ties by id). A label
/// is a candidate for a vertex when its degree in the maximal graph is at least
/// the vertex degree and it is compatible with every already-labeled
/// neighbor. Labels with identical neighborhoods in the maximal graph are
/// interchangeable, so only the first unused label of each such class is
/// tried. After each placement the candidate sets of the unplaced neighbors
/// are narrowed and the branch is cut if one empties.
pub fn find_labeling<R: LabelRule>(g: &Graph, rule: &R, opts: &LabelOptions) -> Result<LabelingOutcome<R::Label>> {
    let n = g.order();
    if rule.order() != n {
        return Err(Error::Argument(format!(
            "graph of order {n} against a universe of {}",
            rule.order()
        )));
    }
    let gamma = build_maximal_gamma(rule);
    let host = gamma.graph();

    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));

    let words = n.div_ceil(WORD);
    let host_degrees = host.degrees();
    let mut domains = vec![0u64; n * words];
    for v in 0..n {
        for l in 0..n {
            if host_degrees[l] >= degrees[v] {
                domains[v * words + l / WORD] |= 1 << (l % WORD);
            }
        }
    }

    let mut search = Embedding {
        graph: g,
        host,
        words,
        order,
        classes: twin_classes(host),
        assignment: vec![usize::MAX; n],
        used: vec![0; words],
        budget: opts.node_budget,
        deadline: opts.deadline,
        nodes: 0,
        best_depth: 0,
        aborted: false,
    };
    let found = n == 0 || (domains_nonempty(&domains, words, n) && search.place(0, domains));

    let verdict = if found {
        LabelVerdict::Labeled
    } else if search.aborted {
        LabelVerdict::Unknown
    } else {
        LabelVerdict::None
    };
    let labeling = found.then(|| {
        search
            .assignment
            .iter()
            .map(|&l| rule.universe()[l].clone())
            .collect()
    });
    Ok(LabelingOutcome {
        verdict,
        labeling,
        nodes_expanded: search.nodes,
        best_depth: if found { n } else { search.best_depth },
    })
}

fn domains_nonempty(domains: &[u64], words: usize, n: usize) -> bool {
    (0..n).all(|v| domains[v * words..(v + 1) * words].iter().any(|&w| w != 0))
}

/// For each label, the ordered list of labels sharing its neighborhood
/// (closed neighborhoods for adjacent twins, open ones otherwise).
fn twin_classes(host: &Graph) -> Vec<std::rc::Rc<Vec<usize>>> {
    let n = host.order();
    let mut by_open: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut by_closed: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    for l in 0..n {
        let open = host.row(l).to_vec();
        let mut closed = open.clone();
        closed[l / WORD] |= 1 << (l % WORD);
        by_open.entry(open).or_default().push(l);
        by_closed.entry(closed).or_default().push(l);
    }
    let mut classes: Vec<Option<std::rc::Rc<Vec<usize>>>> = vec![None; n];
    for members in by_closed.into_values().chain(by_open.into_values()) {
        if members.len() > 1 {
            let shared = std::rc::Rc::new(members);
            for &l in shared.iter() {
                classes[l] = Some(shared.clone());
            }
        }
    }
    classes
        .into_iter()
        .enumerate()
        .map(|(l, c)| c.unwrap_or_else(|| std::rc::Rc::new(vec![l])))
        .collect()
}

struct Embedding<'a> {
    graph: &'a Graph,
    host: &'a Graph,
    words: usize,
    order: Vec<usize>,
    classes: Vec<std::rc::Rc<Vec<usize>>>,
    assignment: Vec<usize>,
    used: Vec<u64>,
    budget: u64,
    deadline: Option<Instant>,
    nodes: u64,
    best_depth: usize,
    aborted: bool,
}

impl Embedding<'_> {
    fn is_used(&self, l: usize) -> bool {
        self.used[l / WORD] >> (l % WORD) & 1 == 1
    }

    fn place(&mut self, depth: usize, domains: Vec<u64>) -> bool {
        let n = self.order.len();
        if depth == n {
            return true;
        }
        self.best_depth = self.best_depth.max(depth);
        let v = self.order[depth];
        let w = self.words;
        let candidates: Vec<u64> = domains[v * w..(v + 1) * w]
            .iter()
            .zip(&self.used)
            .map(|(d, u)| d & !u)
            .collect();

        for l in BitIter::new(&candidates).collect::<Vec<_>>() {
            let class = self.classes[l].clone();
            if class.iter().take_while(|&&m| m != l).any(|&m| !self.is_used(m)) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget || past_deadline(self.nodes, self.deadline) {
                self.aborted = true;
                return false;
            }

            let mut next = domains.clone();
            let row = self.host.row(l);
            let mut feasible = true;
            for u in self.graph.neighbors(v + 1).map(|u| u - 1) {
                if self.assignment[u] != usize::MAX {
                    continue;
                }
                let dom = &mut next[u * w..(u + 1) * w];
                for (d, r) in dom.iter_mut().zip(row) {
                    *d &= r;
                }
                let mut free = 0;
                for (i, d) in dom.iter().enumerate() {
                    let mut used = self.used[i];
                    if i == l / WORD {
                        used |= 1 << (l % WORD);
                    }
                    free += (d & !used).count_ones();
                }
                if free == 0 {
                    feasible = false;
                    break;
                }
            }
            if !feasible {
                continue;
            }

            self.assignment[v] = l;
            self.used[l / WORD] |= 1 << (l % WORD);
            if self.place(depth + 1, next) {
                return true;
            }
            self.used[l / WORD] &= !(1 << (l % WORD));
            self.assignment[v] = usize::MAX;
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Whether the label-respecting map `f2⁻¹ ∘ f1` is an isomorphism.
pub fn is_labeling_isomorphic<L: Clone + Eq + Hash>(a: &LabeledGraph<L>, b: &LabeledGraph<L>) -> Result<bool> {
    let n = a.graph().order();
    let index = universe_index(b.labels());
    if b.graph().order() != n || a.labels().iter().any(|l| !index.contains_key(l)) {
        return Err(Error::Argument("labelings are onto different universes".into()));
    }
    let phi: Vec<VertexId> = a.labels().iter().map(|l| index[l] + 1).collect();
    let (ga, gb) = (a.graph(), b.graph());
    if ga.edge_count() != gb.edge_count() {
        return Ok(false);
    }
    Ok((1..=n).all(|u| {
        popcount(ga.row(u - 1)) == gb.degree(phi[u - 1])
            && ga.neighbors(u).all(|v| gb.has_edge(phi[u - 1], phi[v - 1]))
    }))
}

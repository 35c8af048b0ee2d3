//! Sparsity patterns: simple undirected graphs on vertices `1..=n`,
//! recognition of homogeneous chordal (trivially perfect) graphs and their
//! trivially perfect elimination orderings.
//!
//! All public methods take and return 1-based vertex labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, ForbiddenKind, Result};
use crate::index_set::IndexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Builds a graph from 1-based edges `{i, j}`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::BadGraph("vertex count must be positive".into()));
        }
        let mut g = Graph::edgeless(n);
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::BadIndex { index: v, bound: n });
                }
            }
            if i == j {
                return Err(Error::BadGraph(format!("self-loop at vertex {i}")));
            }
            if g.has_edge(i, j) {
                return Err(Error::BadGraph(format!("duplicate edge {{{i},{j}}}")));
            }
            g.set(i - 1, j - 1);
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set(i, j);
            }
        }
        g
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for i in 1..n {
            g.set(i - 1, i);
        }
        g
    }

    /// Graph on `n` vertices whose edge set is the bitmask `mask` over the
    /// pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::edgeless(n);
        let mut bit = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if mask & (1 << bit) != 0 {
                    g.set(i, j);
                }
                bit += 1;
            }
        }
        g
    }

    fn set(&mut self, a: usize, b: usize) {
        self.adj[a * self.n + b] = true;
        self.adj[b * self.n + a] = true;
    }

    /// Zero-based adjacency.
    pub(crate) fn adjacent0(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `{i, j}` is an edge; `false` for `i == j` or labels out of range.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.adj[(i - 1) * self.n + (j - 1)]
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adjacent0(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        (1..=self.n).filter(|&w| self.has_edge(v, w)).count()
    }

    /// Relabels vertex `v` as `ord.new_label(v)`.
    pub fn relabel(&self, ord: &Ordering) -> Result<Graph> {
        if ord.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "ordering of length {} for a graph on {} vertices",
                ord.len(),
                self.n
            )));
        }
        let mut g = Graph::edgeless(self.n);
        for (i, j) in self.edges() {
            g.set(ord.new_label(i) - 1, ord.new_label(j) - 1);
        }
        Ok(g)
    }

    /// Subgraph induced by `keep`, relabeled `1..=|keep|` in increasing order.
    pub fn induced_subgraph(&self, keep: IndexSet) -> Result<Graph> {
        if keep.bound() > self.n {
            return Err(Error::BadIndex { index: keep.bound(), bound: self.n });
        }
        let kept: Vec<usize> = keep.positions().collect();
        if kept.is_empty() {
            return Err(Error::BadGraph("induced subgraph on no vertices".into()));
        }
        let mut g = Graph::edgeless(kept.len());
        for (a, &va) in kept.iter().enumerate() {
            for (b, &vb) in kept.iter().enumerate().skip(a + 1) {
                if self.adjacent0(va, vb) {
                    g.set(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Connected components of the subgraph induced by `vertices` (zero-based),
    /// each sorted, ordered by smallest vertex.
    fn components_of(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        let mut out = Vec::new();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in 0..self.n {
                    if inside[w] && !seen[w] && self.adjacent0(v, w) {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components as sets of 1-based labels.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        self.components_of(&all)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Whether every connected component is a clique.
    pub fn is_disjoint_union_of_cliques(&self) -> bool {
        self.components().iter().all(|comp| {
            comp.iter()
                .all(|&a| comp.iter().all(|&b| a == b || self.has_edge(a, b)))
        })
    }

    /// Classifies the subgraph induced by four 1-based vertices. Returns the
    /// vertices in path or cycle order when it is a P4 or C4.
    pub fn classify_quadruple(&self, quad: [usize; 4]) -> Option<(ForbiddenKind, [usize; 4])> {
        let deg = |v: usize| quad.iter().filter(|&&w| w != v && self.has_edge(v, w)).count();
        let degrees: Vec<usize> = quad.iter().map(|&v| deg(v)).collect();
        let edges: usize = degrees.iter().sum::<usize>() / 2;
        let walk = |start: usize| {
            let mut order = [start, 0, 0, 0];
            let mut prev = 0;
            for k in 1..4 {
                let cur = order[k - 1];
                let next = quad
                    .iter()
                    .copied()
                    .find(|&w| w != cur && w != prev && self.has_edge(cur, w) && !order[..k].contains(&w))
                    .expect("walk continues");
                prev = cur;
                order[k] = next;
            }
            order
        };
        if edges == 3 {
            let mut sorted = degrees.clone();
            sorted.sort_unstable();
            if sorted == [1, 1, 2, 2] {
                let end = quad.iter().zip(&degrees).filter(|(_, &d)| d == 1).map(|(&v, _)| v).min()?;
                return Some((ForbiddenKind::P4, walk(end)));
            }
        }
        if edges == 4 && degrees.iter().all(|&d| d == 2) {
            let start = *quad.iter().min()?;
            return Some((ForbiddenKind::C4, walk(start)));
        }
        None
    }

    /// Some induced P4 or C4 by exhaustive search over 4-subsets of `among`
    /// (1-based labels).
    fn forbidden_among(&self, among: &[usize]) -> Option<(ForbiddenKind, [usize; 4])> {
        let m = among.len();
        for a in 0..m {
            for b in (a + 1)..m {
                for c in (b + 1)..m {
                    for d in (c + 1)..m {
                        let quad = [among[a], among[b], among[c], among[d]];
                        if let Some(hit) = self.classify_quadruple(quad) {
                            return Some(hit);
                        }
                    }
                }
            }
        }
        None
    }

    /// Exhaustive scan over all 4-subsets for an induced P4 or C4.
    pub fn find_forbidden_subgraph(&self) -> Option<(ForbiddenKind, [usize; 4])> {
        let all: Vec<usize> = (1..=self.n).collect();
        self.forbidden_among(&all)
    }

    /// Universal-vertex peeling; on failure returns a component (1-based)
    /// without a universal vertex.
    fn peel(&self) -> std::result::Result<Ordering, Vec<usize>> {
        let mut perm = vec![0usize; self.n];
        let mut next = self.n;
        let mut pending: Vec<Vec<usize>> = self.components_of(&(0..self.n).collect::<Vec<_>>());
        // components with larger vertices receive larger labels, so the
        // stack is processed from its last element
        while let Some(comp) = pending.pop() {
            let universal = comp.iter().copied().find(|&v| {
                comp.iter().all(|&w| w == v || self.adjacent0(v, w))
            });
            let Some(top) = universal else {
                return Err(comp.into_iter().map(|v| v + 1).collect());
            };
            perm[top] = next;
            next -= 1;
            let rest: Vec<usize> = comp.into_iter().filter(|&v| v != top).collect();
            if !rest.is_empty() {
                pending.extend(self.components_of(&rest));
            }
        }
        Ok(Ordering { perm })
    }

    /// Whether the graph has no induced P4 or C4, decided by peeling.
    pub fn is_homogeneous_chordal(&self) -> bool {
        self.peel().is_ok()
    }

    /// A trivially perfect elimination ordering, built by giving a universal
    /// vertex of each component the largest free label. Among several
    /// universal vertices the smallest label goes first.
    pub fn trivially_perfect_ordering(&self) -> Result<Ordering> {
        match self.peel() {
            Ok(ord) => Ok(ord),
            Err(component) => {
                let (kind, witness) = self
                    .forbidden_among(&component)
                    .expect("a connected graph without universal vertex has an induced P4 or C4");
                Err(Error::NotHomogeneousChordal { witness, kind })
            }
        }
    }

    /// Exhaustive check of the two ordering conditions on the relabeled graph.
    pub fn verify_tpeo(&self, ord: &Ordering) -> bool {
        match self.relabel(ord) {
            Ok(g) => g.satisfies_tpeo_conditions(),
            Err(_) => false,
        }
    }

    /// Checks both conditions over all triples `i < j < k` of the current labels:
    /// `{i,j},{i,k}` edges imply `{j,k}`, and `{i,j},{j,k}` edges imply `{i,k}`.
    pub fn satisfies_tpeo_conditions(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let ij = self.adjacent0(i, j);
                    let ik = self.adjacent0(i, k);
                    let jk = self.adjacent0(j, k);
                    if ij && ik && !jk {
                        return false;
                    }
                    if ij && jk && !ik {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect() }
    }
}

/// `{"n": <int>, "edges": [[i, j], ...]}` with 1-based `i < j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        for e in &j.edges {
            if e[0] >= e[1] {
                return Err(Error::Parse(format!("edge [{}, {}] must satisfy i < j", e[0], e[1])));
            }
        }
        Graph::new(j.n, j.edges.into_iter().map(|e| (e[0], e[1])))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// A relabeling: `perm[old - 1] = new`, both 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    perm: Vec<usize>,
}

impl Ordering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p == 0 || p > n {
                return Err(Error::BadIndex { index: p, bound: n });
            }
            if seen[p - 1] {
                return Err(Error::Parse(format!("label {p} appears twice in permutation")));
            }
            seen[p - 1] = true;
        }
        Ok(Ordering { perm })
    }

    pub fn identity(n: usize) -> Self {
        Ordering { perm: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn new_label(&self, old: usize) -> usize {
        self.perm[old - 1]
    }

    pub fn inverse(&self) -> Ordering {
        let mut inv = vec![0; self.perm.len()];
        for (old, &new) in self.perm.iter().enumerate() {
            inv[new - 1] = old + 1;
        }
        Ordering { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| p == k + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct OrderingJson {
    perm: Vec<usize>,
}

impl Serialize for Ordering {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrderingJson { perm: self.perm.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ordering {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OrderingJson::deserialize(d)?;
        Ordering::new(j.perm).map_err(serde::de::Error::custom)
    }
}

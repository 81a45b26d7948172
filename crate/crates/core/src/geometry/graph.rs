//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices, stored as
//! fixed-width adjacency bit rows.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::GeometryError;

pub const MAX_VERTICES: usize = 256;
pub(crate) const WORDS: usize = MAX_VERTICES / 64;

/// A set of vertices as a 256-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub(crate) [u64; WORDS]);

impl VertexSet {
    pub fn empty() -> Self {
        Self([0; WORDS])
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty();
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter(items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty();
        for v in items {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    #[inline]
    pub fn or(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        out
    }

    #[inline]
    pub fn minus(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= !b;
        }
        out
    }

    pub fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(k * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

/// JSON form with 0-based vertex indices: `{ "vertices": 10, "edges": [[0,1], ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GeometryError> {
        if n > MAX_VERTICES {
            return Err(GeometryError::TooManyVertices { n, cap: MAX_VERTICES });
        }
        Ok(Self { n, adj: vec![VertexSet::empty(); n] })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GeometryError> {
        let mut g = Self::empty(n)?;
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Graph on `0..n` with `a ~ b` iff `adjacent(a, b)` (called for `a < b`).
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self, GeometryError> {
        let mut g = Self::empty(n)?;
        for a in 0..n {
            for b in a + 1..n {
                if adjacent(a, b) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GeometryError> {
        if a >= self.n || b >= self.n {
            return Err(GeometryError::VertexOutOfRange { vertex: a.max(b), n: self.n });
        }
        if a == b {
            return Err(GeometryError::Loop(a));
        }
        self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| self.adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b))).collect()
    }

    pub fn complement(&self) -> Self {
        let full = VertexSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut row = full.minus(&self.adj[v]);
                row.remove(v);
                row
            })
            .collect();
        Self { n: self.n, adj }
    }

    pub fn union(&self, other: &Self) -> Result<Self, GeometryError> {
        if self.n != other.n {
            return Err(GeometryError::SizeMismatch(self.n, other.n));
        }
        Ok(Self { n: self.n, adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a.or(b)).collect() })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Image under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut adj = vec![VertexSet::empty(); self.n];
        for (a, b) in self.edges() {
            adj[perm[a]].insert(perm[b]);
            adj[perm[b]].insert(perm[a]);
        }
        Self { n: self.n, adj }
    }

    /// Breadth-first distances from `source` (`None` if unreachable).
    pub fn distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have a distance");
            for w in self.adj[v].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances(0).iter().all(Option::is_some)
    }

    /// Largest eccentricity; `None` for a disconnected graph.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n {
            for d in self.distances(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Length of a shortest cycle; `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for w in self.adj[v].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.adj[v].iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { vertices: self.n, edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect() }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self, GeometryError> {
        Self::from_edges(j.vertices, j.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph g {\n");
        for v in 0..self.n {
            let label = labels.and_then(|l| l.get(v)).cloned().unwrap_or_else(|| v.to_string());
            out.push_str(&format!("  {v} [label=\"{label}\"];\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// One edge per line, `a b`, 0-based.
    pub fn to_edge_list(&self) -> String {
        self.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn basic_metrics() {
        let c6 = cycle(6);
        assert_eq!(c6.edge_count(), 6);
        assert_eq!(c6.diameter(), Some(3));
        assert_eq!(c6.girth(), Some(6));
        assert!(c6.is_bipartite());
        assert!(!cycle(5).is_bipartite());
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.diameter(), None);
        assert!(!split.is_connected());
    }

    #[test]
    fn complement_and_union() {
        let c5 = cycle(5);
        let comp = c5.complement();
        assert_eq!(comp.edge_count(), 5);
        assert!(c5.union(&comp).unwrap().is_complete());
    }

    #[test]
    fn edge_errors() {
        assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(GeometryError::Loop(0))));
        assert!(matches!(Graph::from_edges(2, [(0, 5)]), Err(GeometryError::VertexOutOfRange { .. })));
        assert!(matches!(Graph::empty(300), Err(GeometryError::TooManyVertices { .. })));
    }

    #[test]
    fn vertex_set_ops() {
        let a = VertexSet::from_iter([1, 70, 200]);
        assert_eq!(a.to_vec(), vec![1, 70, 200]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.first(), Some(1));
        let b = VertexSet::from_iter([70, 3]);
        assert_eq!(a.and(&b).to_vec(), vec![70]);
        assert_eq!(a.minus(&b).to_vec(), vec![1, 200]);
    }

    #[test]
    fn json_round_trip() {
        let g = cycle(4);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(g.to_edge_list().lines().count(), 4);
    }
}

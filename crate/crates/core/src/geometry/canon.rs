//! Canonical labeling by individualization-refinement.
//!
//! The search tree individualizes a vertex of the first non-singleton cell and
//! refines to the coarsest equitable partition. Automorphisms are found along
//! the first path (giving a stabilizer chain and |Aut|), then the whole tree is
//! searched for the least certificate, skipping children in the same orbit of
//! the known automorphisms that fix the current prefix.

use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::Serialize;

use super::graph::{Graph, VertexSet};

/// Canonical labeling of a graph together with its automorphism group order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical label of vertex `v`.
    pub labeling: Vec<usize>,
    /// Edges of the relabeled graph, sorted.
    pub certificate: Vec<(usize, usize)>,
    #[serde(serialize_with = "serialize_biguint")]
    pub automorphism_group_order: BigUint,
    /// Generators found during the search, as vertex images.
    pub generators: Vec<Vec<usize>>,
}

fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CanonicalForm {
    pub fn canonical_graph(&self) -> Graph {
        Graph::from_edges(self.labeling.len(), self.certificate.iter().copied()).expect("certificate is a graph")
    }
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a).certificate == canonical_form(b).certificate
}

#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    /// `cell_end[s]` for every cell start `s`; garbage elsewhere.
    cell_end: Vec<usize>,
    /// start of the cell holding position `i`
    start_of: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Self { lab: (0..n).collect(), cell_end: vec![n; n], start_of: vec![0; n] }
    }

    fn starts(&self) -> Vec<usize> {
        let mut s = Vec::new();
        let mut i = 0;
        while i < self.lab.len() {
            s.push(i);
            i = self.cell_end[i];
        }
        s
    }

    fn target_cell(&self) -> Option<(usize, usize)> {
        self.starts().into_iter().map(|s| (s, self.cell_end[s])).find(|&(s, e)| e - s > 1)
    }

    fn set_of(&self, start: usize) -> VertexSet {
        VertexSet::from_iter(self.lab[start..self.cell_end[start]].iter().copied())
    }

    /// Splits `v` off the front of its cell; returns the singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let pos = self.lab.iter().position(|&x| x == v).expect("vertex present");
        let s = self.start_of[pos];
        let e = self.cell_end[s];
        self.lab.swap(s, pos);
        self.cell_end[s] = s + 1;
        if s + 1 < e {
            self.cell_end[s + 1] = e;
            for i in s + 1..e {
                self.start_of[i] = s + 1;
            }
        }
        s
    }

    /// Equitable refinement driven by the splitter queue; returns an invariant trace.
    fn refine(&mut self, g: &Graph, initial: Vec<usize>) -> u64 {
        let n = self.lab.len();
        let mut trace = Trace::default();
        let mut queue: VecDeque<usize> = initial.into();
        let mut queued = vec![false; n];
        for &s in &queue {
            queued[s] = true;
        }
        let mut count = vec![0usize; n];
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            let splitter = self.set_of(w);
            trace.push(w as u64);
            for v in 0..n {
                count[v] = g.neighbors(v).and(&splitter).len();
            }
            for s in self.starts() {
                let e = self.cell_end[s];
                if e - s == 1 {
                    continue;
                }
                let first = count[self.lab[s]];
                if self.lab[s..e].iter().all(|&v| count[v] == first) {
                    continue;
                }
                self.lab[s..e].sort_by_key(|&v| (count[v], v));
                let mut pieces = Vec::new();
                let mut i = s;
                while i < e {
                    let c = count[self.lab[i]];
                    let mut j = i;
                    while j < e && count[self.lab[j]] == c {
                        j += 1;
                    }
                    pieces.push((i, j, c));
                    i = j;
                }
                for &(ps, pe, c) in &pieces {
                    self.cell_end[ps] = pe;
                    for k in ps..pe {
                        self.start_of[k] = ps;
                    }
                    trace.push(((ps as u64) << 32) | ((pe - ps) as u64) << 16 | c as u64);
                    if !queued[ps] {
                        queued[ps] = true;
                        queue.push_back(ps);
                    }
                }
            }
        }
        trace.0
    }
}

#[derive(Default)]
struct Trace(u64);

impl Trace {
    fn push(&mut self, x: u64) {
        self.0 = (self.0 ^ x).wrapping_mul(0x100_0000_01b3).rotate_left(7);
    }
}

type Certificate = Vec<VertexSet>;

fn certificate(g: &Graph, lab: &[usize]) -> Certificate {
    let n = lab.len();
    let mut new_label = vec![0; n];
    for (i, &v) in lab.iter().enumerate() {
        new_label[v] = i;
    }
    lab.iter().map(|&v| VertexSet::from_iter(g.neighbors(v).iter().map(|u| new_label[u]))).collect()
}

struct Node {
    part: Partition,
    trace: u64,
}

struct Search<'a> {
    g: &'a Graph,
    gens: Vec<Vec<usize>>,
    first_traces: Vec<u64>,
    first_cert: Certificate,
    first_lab: Vec<usize>,
}

fn child(g: &Graph, parent: &Partition, v: usize) -> Node {
    let mut part = parent.clone();
    let s = part.individualize(v);
    let trace = part.refine(g, vec![s]);
    Node { part, trace }
}

/// Orbits of the group generated by `gens` restricted to those fixing `prefix`.
fn orbit_ids(n: usize, gens: &[Vec<usize>], prefix: &[usize]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens.iter().filter(|g| prefix.iter().all(|&v| g[v] == v)) {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

impl Search<'_> {
    /// Looks below `node` (at `depth`) for a leaf whose certificate equals the first leaf's.
    fn find_equivalent(&self, node: &Node, depth: usize) -> Option<Vec<usize>> {
        if node.trace != self.first_traces[depth] {
            return None;
        }
        let Some((s, e)) = node.part.target_cell() else {
            return (certificate(self.g, &node.part.lab) == self.first_cert).then(|| {
                let mut map = vec![0; self.g.n()];
                for (a, b) in self.first_lab.iter().zip(&node.part.lab) {
                    map[*a] = *b;
                }
                map
            });
        };
        if depth + 1 >= self.first_traces.len() {
            return None;
        }
        for &v in &node.part.lab[s..e] {
            let c = child(self.g, &node.part, v);
            if let Some(found) = self.find_equivalent(&c, depth + 1) {
                return Some(found);
            }
        }
        None
    }

    fn best_leaf(&self, node: &Node, prefix: &mut Vec<usize>, best: &mut Option<(Certificate, Vec<usize>)>) {
        let Some((s, e)) = node.part.target_cell() else {
            let cert = certificate(self.g, &node.part.lab);
            if best.as_ref().is_none_or(|(b, _)| cert < *b) {
                *best = Some((cert, node.part.lab.clone()));
            }
            return;
        };
        let orbits = orbit_ids(self.g.n(), &self.gens, prefix);
        let mut seen = Vec::new();
        for &v in &node.part.lab[s..e] {
            if seen.contains(&orbits[v]) {
                continue;
            }
            seen.push(orbits[v]);
            let c = child(self.g, &node.part, v);
            prefix.push(v);
            self.best_leaf(&c, prefix, best);
            prefix.pop();
        }
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    if n == 0 {
        return CanonicalForm {
            labeling: vec![],
            certificate: vec![],
            automorphism_group_order: BigUint::from(1u8),
            generators: vec![],
        };
    }
    let mut root_part = Partition::unit(n);
    let root_trace = root_part.refine(g, vec![0]);
    let mut path = vec![Node { part: root_part, trace: root_trace }];
    let mut choices = Vec::new();
    while let Some((s, _)) = path.last().expect("nonempty").part.target_cell() {
        let parent = &path.last().expect("nonempty").part;
        let v = parent.lab[s];
        choices.push(v);
        let c = child(g, parent, v);
        path.push(c);
    }
    let leaf_lab = path.last().expect("nonempty").part.lab.clone();
    let mut search = Search {
        g,
        gens: Vec::new(),
        first_traces: path.iter().map(|node| node.trace).collect(),
        first_cert: certificate(g, &leaf_lab),
        first_lab: leaf_lab,
    };

    let mut order = BigUint::from(1u8);
    for depth in (0..choices.len()).rev() {
        let node = &path[depth];
        let (s, e) = node.part.target_cell().expect("internal node");
        let v0 = choices[depth];
        let prefix = &choices[..depth];
        for &w in &node.part.lab[s..e] {
            let orbits = orbit_ids(n, &search.gens, prefix);
            if orbits[w] == orbits[v0] {
                continue;
            }
            let c = child(g, &node.part, w);
            if let Some(gamma) = search.find_equivalent(&c, depth + 1) {
                search.gens.push(gamma);
            }
        }
        let orbits = orbit_ids(n, &search.gens, prefix);
        let size = node.part.lab[s..e].iter().filter(|&&w| orbits[w] == orbits[v0]).count();
        order *= BigUint::from(size);
    }

    let mut best = None;
    search.best_leaf(&path[0], &mut Vec::new(), &mut best);
    let (_, lab) = best.expect("at least one leaf");
    let mut labeling = vec![0; n];
    for (i, &v) in lab.iter().enumerate() {
        labeling[v] = i;
    }
    let mut certificate: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| (labeling[a].min(labeling[b]), labeling[a].max(labeling[b])))
        .collect();
    certificate.sort_unstable();
    CanonicalForm { labeling, certificate, automorphism_group_order: order, generators: search.gens }
}

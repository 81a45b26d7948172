use serde::Serialize;

use super::cliques::maximum_clique;
use super::{Graph, GeometryError, VertexSet};

pub const MAX_INDEPENDENCE_VERTICES: usize = 64;
pub const MAX_EDGE_COLORING_VERTICES: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphFacts {
    pub vertices: usize,
    pub edges: usize,
    pub independence_number: usize,
    /// `None` above the edge-coloring vertex cap.
    pub edge_chromatic_number: Option<usize>,
    pub bipartite: bool,
    pub planar: bool,
}

pub fn graph_facts(g: &Graph) -> Result<GraphFacts, GeometryError> {
    Ok(GraphFacts {
        vertices: g.n(),
        edges: g.edge_count(),
        independence_number: independence_number(g)?,
        edge_chromatic_number: edge_chromatic_number(g).ok(),
        bipartite: g.is_bipartite(),
        planar: is_planar(g),
    })
}

pub fn independence_number(g: &Graph) -> Result<usize, GeometryError> {
    if g.n() > MAX_INDEPENDENCE_VERTICES {
        return Err(GeometryError::Unsupported {
            what: "independence number",
            requirement: format!("at most {MAX_INDEPENDENCE_VERTICES} vertices"),
        });
    }
    Ok(maximum_clique(&g.complement()).len())
}

/// Chromatic index: the maximum degree Δ if a Δ-edge-coloring exists, else Δ+1.
pub fn edge_chromatic_number(g: &Graph) -> Result<usize, GeometryError> {
    if g.n() > MAX_EDGE_COLORING_VERTICES {
        return Err(GeometryError::Unsupported {
            what: "edge chromatic number",
            requirement: format!("at most {MAX_EDGE_COLORING_VERTICES} vertices"),
        });
    }
    let delta = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    if delta == 0 {
        return Ok(0);
    }
    let edges = g.edges();
    let mut used = vec![0u64; g.n()];
    let mut colors = vec![0usize; edges.len()];
    Ok(if color_edges(&edges, 0, delta, &mut used, &mut colors) { delta } else { delta + 1 })
}

fn color_edges(edges: &[(usize, usize)], i: usize, k: usize, used: &mut [u64], colors: &mut [usize]) -> bool {
    let Some(&(a, b)) = edges.get(i) else {
        return true;
    };
    let max_used = colors[..i].iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k.min(max_used + 1) {
        let bit = 1u64 << c;
        if (used[a] | used[b]) & bit != 0 {
            continue;
        }
        used[a] |= bit;
        used[b] |= bit;
        colors[i] = c;
        if color_edges(edges, i + 1, k, used, colors) {
            return true;
        }
        used[a] &= !bit;
        used[b] &= !bit;
    }
    false
}

/// Planarity by path embedding (Demoucron–Malgrange–Pertuiset) on each biconnected block.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    blocks(g).iter().all(|block| block.len() < 9 || block_is_planar(g, block))
}

/// Biconnected components as edge lists.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut State, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for v in s.g.neighbors(u).to_vec() {
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if Some(v) != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = g.n();
    let mut s = State { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

fn block_is_planar(g: &Graph, block: &[(usize, usize)]) -> bool {
    let n = g.n();
    let mut adj = vec![VertexSet::empty(); n];
    for &(a, b) in block {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let verts: VertexSet = block.iter().fold(VertexSet::empty(), |mut s, &(a, b)| {
        s.insert(a);
        s.insert(b);
        s
    });
    let vcount = verts.len();
    if block.len() > 3 * vcount - 6 {
        return false;
    }

    let cycle = find_cycle(&adj, verts.first().expect("block has vertices"));
    let mut embedded_v = VertexSet::from_iter(cycle.iter().copied());
    let mut embedded_e = vec![VertexSet::empty(); n];
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_e[a].insert(b);
        embedded_e[b].insert(a);
    }
    let mut embedded_count = cycle.len();
    let mut faces = vec![cycle.clone(), cycle];

    while embedded_count < block.len() {
        let fragments = fragments(&adj, &verts, &embedded_v, &embedded_e);
        let mut choice: Option<(usize, usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&k| frag.attachments.iter().all(|a| faces[k].contains(a)))
                .collect();
            match admissible.len() {
                0 => return false,
                count if choice.is_none_or(|(_, _, c)| count < c) => choice = Some((fi, admissible[0], count)),
                _ => {}
            }
        }
        let (fi, face_idx, _) = choice.expect("unembedded edges leave a fragment");
        let path = fragment_path(&adj, &fragments[fi], &embedded_v);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            embedded_e[w[0]].insert(w[1]);
            embedded_e[w[1]].insert(w[0]);
            embedded_count += 1;
        }
        for &v in &path {
            embedded_v.insert(v);
        }
    }
    true
}

fn find_cycle(adj: &[VertexSet], start: usize) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![start];
    depth[start] = 0;
    while let Some(u) = stack.pop() {
        for v in adj[u].iter() {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = u;
                stack.push(v);
            } else if v != parent[u] && parent[v] != u {
                let (mut a, mut b) = (u, v);
                let mut left = vec![a];
                let mut right = vec![b];
                while a != b {
                    if depth[a] >= depth[b] {
                        a = parent[a];
                        left.push(a);
                    } else {
                        b = parent[b];
                        right.push(b);
                    }
                }
                right.pop();
                left.extend(right.into_iter().rev());
                return left;
            }
        }
    }
    unreachable!("a block with at least three vertices contains a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior vertices; empty for a single chord.
    interior: VertexSet,
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[VertexSet], verts: &VertexSet, emb_v: &VertexSet, emb_e: &[VertexSet]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for a in emb_v.iter() {
        for b in adj[a].and(emb_v).minus(&emb_e[a]).iter().filter(|&b| b > a) {
            out.push(Fragment { attachments: vec![a, b], interior: VertexSet::empty(), chord: Some((a, b)) });
        }
    }
    let mut seen = *emb_v;
    for start in verts.minus(emb_v).iter() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = VertexSet::from_iter([start]);
        let mut stack = vec![start];
        seen.insert(start);
        let mut attach = VertexSet::empty();
        while let Some(u) = stack.pop() {
            attach = attach.or(&adj[u].and(emb_v));
            for w in adj[u].minus(&seen).iter() {
                seen.insert(w);
                comp.insert(w);
                stack.push(w);
            }
        }
        out.push(Fragment { attachments: attach.to_vec(), interior: comp, chord: None });
    }
    out
}

fn fragment_path(adj: &[VertexSet], frag: &Fragment, emb_v: &VertexSet) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let a1 = frag.attachments[0];
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for c in adj[a1].and(&frag.interior).iter() {
        parent[c] = a1;
        queue.push_back(c);
    }
    while let Some(u) = queue.pop_front() {
        if let Some(a2) = adj[u].and(emb_v).iter().find(|&x| x != a1) {
            let mut path = vec![a2, u];
            let mut x = u;
            while parent[x] != a1 {
                x = parent[x];
                path.push(x);
            }
            path.push(a1);
            path.reverse();
            return path;
        }
        for w in adj[u].and(&frag.interior).iter() {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a block have two attachments")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (path[0], *path.last().expect("path"));
    let len = face.len();
    let i = face.iter().position(|&v| v == a).expect("attachment on face");
    let j = face.iter().position(|&v| v == b).expect("attachment on face");
    let walk = |from: usize, to: usize| {
        let mut out = vec![face[from]];
        let mut k = from;
        while k != to {
            k = (k + 1) % len;
            out.push(face[k]);
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut f1 = walk(i, j);
    f1.extend(interior.iter().rev());
    let mut f2 = walk(j, i);
    f2.extend(interior.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true).unwrap()
    }

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn independence() {
        assert_eq!(independence_number(&complete(4)).unwrap(), 1);
        assert_eq!(independence_number(&petersen()).unwrap(), 4);
        assert_eq!(independence_number(&Graph::empty(5).unwrap()).unwrap(), 5);
    }

    #[test]
    fn chromatic_index() {
        assert_eq!(edge_chromatic_number(&petersen()).unwrap(), 4);
        assert_eq!(edge_chromatic_number(&complete(4)).unwrap(), 3);
        assert_eq!(edge_chromatic_number(&complete(5)).unwrap(), 5);
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(edge_chromatic_number(&c6).unwrap(), 2);
        assert!(edge_chromatic_number(&complete(31)).is_err());
    }

    #[test]
    fn planarity() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        let k33 = Graph::from_fn(6, |a, b| (a < 3) != (b < 3)).unwrap();
        assert!(!is_planar(&k33));
        assert!(!is_planar(&petersen()));
        let cube = Graph::from_fn(8, |a, b| (a ^ b).count_ones() == 1).unwrap();
        assert!(is_planar(&cube));
        let wheel = Graph::from_edges(7, (0..6).flat_map(|i| [(i, (i + 1) % 6), (i, 6)])).unwrap();
        assert!(is_planar(&wheel));
        let tree = Graph::from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert!(is_planar(&tree));
        let subdivided_k33 = {
            let mut edges: Vec<(usize, usize)> = Vec::new();
            let mut next = 6;
            for a in 0..3 {
                for b in 3..6 {
                    edges.push((a, next));
                    edges.push((next, b));
                    next += 1;
                }
            }
            Graph::from_edges(next, edges).unwrap()
        };
        assert!(!is_planar(&subdivided_k33));
        let facts = graph_facts(&petersen()).unwrap();
        assert!(!facts.bipartite && !facts.planar);
    }
}

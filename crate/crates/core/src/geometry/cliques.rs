use super::graph::{Graph, VertexSet};

/// All maximal cliques (Bron–Kerbosch with pivoting), each sorted, in
/// lexicographic order. Isolated vertices appear as singleton cliques.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    expand(g, VertexSet::empty(), VertexSet::full(g.n()), VertexSet::empty(), &mut out);
    out.sort();
    out
}

fn expand(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.to_vec());
        }
        return;
    }
    let pivot = p
        .or(&x)
        .iter()
        .max_by_key(|&u| (p.and(g.neighbors(u)).len(), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    for v in p.minus(g.neighbors(pivot)).to_vec() {
        let mut r2 = r;
        r2.insert(v);
        let nv = g.neighbors(v);
        expand(g, r2, p.and(nv), x.and(nv), out);
        p.remove(v);
        x.insert(v);
    }
}

/// A largest clique; the lexicographically first among those found first.
pub fn maximum_clique(g: &Graph) -> Vec<usize> {
    let mut best = VertexSet::empty();
    search_max(g, VertexSet::empty(), VertexSet::full(g.n()), &mut best);
    best.to_vec()
}

fn search_max(g: &Graph, r: VertexSet, mut p: VertexSet, best: &mut VertexSet) {
    if p.is_empty() {
        if r.len() > best.len() {
            *best = r;
        }
        return;
    }
    while let Some(v) = p.first() {
        if r.len() + p.len() <= best.len() {
            return;
        }
        let mut r2 = r;
        r2.insert(v);
        search_max(g, r2, p.and(g.neighbors(v)), best);
        p.remove(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rook_graph_cliques() {
        let g = Graph::from_fn(9, |a, b| a / 3 == b / 3 || a % 3 == b % 3).unwrap();
        let cliques = maximal_cliques(&g);
        assert_eq!(cliques.len(), 6);
        assert!(cliques.iter().all(|c| c.len() == 3));
        assert_eq!(cliques[0], vec![0, 1, 2]);
        assert_eq!(maximum_clique(&g).len(), 3);
    }

    #[test]
    fn isolated_and_complete() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(maximal_cliques(&g), vec![vec![0, 1], vec![2]]);
        let k5 = Graph::from_fn(5, |_, _| true).unwrap();
        assert_eq!(maximal_cliques(&k5), vec![vec![0, 1, 2, 3, 4]]);
    }
}

//! Point-line geometries induced by dessins, graph canonical forms and the
//! small catalog of reference geometries.

mod canon;
mod catalog;
mod cliques;
mod facts;
mod graph;
mod hyperplane;
mod polygon;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dessin::{identify, Dessin, DessinError, Fingerprint};
use crate::perm::Permutation;

pub use canon::{canonical_form, isomorphic, CanonicalForm};
pub use catalog::{catalog, catalog_names, hesse_union, CatalogItem};
pub use cliques::{maximal_cliques, maximum_clique};
pub use facts::{edge_chromatic_number, graph_facts, independence_number, is_planar, GraphFacts};
pub use graph::{Graph, GraphJson, VertexSet, MAX_VERTICES};
pub use hyperplane::{classify_hyperplane, hyperplane_add, hyperplane_closure, hyperplanes, Hyperplane, HyperplaneKind};
pub use polygon::{verify_generalized_polygon, PolygonReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("graph has {n} vertices; at most {cap} are supported")]
    TooManyVertices { n: usize, cap: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("line {line} references point {point}, but there are only {n} points")]
    PointOutOfRange { line: usize, point: usize, n: usize },
    #[error("line {0} has fewer than two points")]
    ShortLine(usize),
    #[error("line {0} repeats a point")]
    RepeatedPoint(usize),
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("geometry is disconnected")]
    Disconnected,
    #[error("{what} requires {requirement}")]
    Unsupported { what: &'static str, requirement: String },
    #[error("not a hyperplane: {0}")]
    NotHyperplane(String),
    #[error("hyperplane sum is the whole point set")]
    ImproperSum,
    #[error("class index {index} out of range ({count} classes)")]
    NoSuchClass { index: usize, count: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error(transparent)]
    Dessin(#[from] DessinError),
}

/// A finite point-line incidence structure with labeled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGeometry {
    points: Vec<String>,
    lines: Vec<Vec<usize>>,
}

/// JSON form: `{ "points": ["IX", ...], "lines": [[0,1,2], ...] }` with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceGeometryJson {
    pub points: Vec<String>,
    pub lines: Vec<Vec<usize>>,
}

impl IncidenceGeometry {
    /// Lines are stored sorted, in lexicographic order.
    pub fn new(points: Vec<String>, lines: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        if points.len() > MAX_VERTICES {
            return Err(GeometryError::TooManyVertices { n: points.len(), cap: MAX_VERTICES });
        }
        let mut sorted = Vec::with_capacity(lines.len());
        for (i, line) in lines.into_iter().enumerate() {
            if line.len() < 2 {
                return Err(GeometryError::ShortLine(i));
            }
            if let Some(&p) = line.iter().find(|&&p| p >= points.len()) {
                return Err(GeometryError::PointOutOfRange { line: i, point: p, n: points.len() });
            }
            let set: BTreeSet<usize> = line.iter().copied().collect();
            if set.len() != line.len() {
                return Err(GeometryError::RepeatedPoint(i));
            }
            sorted.push((set.into_iter().collect::<Vec<_>>(), i));
        }
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GeometryError::DuplicateLine(w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
            }
        }
        Ok(Self { points, lines: sorted.into_iter().map(|(l, _)| l).collect() })
    }

    /// Points labeled `0..n`.
    pub fn unlabeled(n: usize, lines: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), lines)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    /// Number of lines through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.points.len()];
        for line in &self.lines {
            for &p in line {
                deg[p] += 1;
            }
        }
        deg
    }

    /// The common point degree, if all points have the same one.
    pub fn uniform_point_degree(&self) -> Option<usize> {
        uniform(&self.point_degrees())
    }

    /// The common line size, if all lines have the same one.
    pub fn uniform_line_size(&self) -> Option<usize> {
        uniform(&self.lines.iter().map(Vec::len).collect::<Vec<_>>())
    }

    /// Points are adjacent when some line contains both.
    pub fn collinearity_graph(&self) -> Graph {
        let mut g = Graph::empty(self.points.len()).expect("point count already checked");
        for line in &self.lines {
            for (i, &a) in line.iter().enumerate() {
                for &b in &line[i + 1..] {
                    g.add_edge(a, b).expect("indices validated");
                }
            }
        }
        g
    }

    /// Bipartite point-line incidence graph: points first, then lines.
    pub fn levi_graph(&self) -> Result<Graph, GeometryError> {
        let n = self.points.len();
        let mut g = Graph::empty(n + self.lines.len())?;
        for (j, line) in self.lines.iter().enumerate() {
            for &p in line {
                g.add_edge(p, n + j)?;
            }
        }
        Ok(g)
    }

    /// Same points, lines of both geometries.
    pub fn union(&self, other: &Self) -> Result<Self, GeometryError> {
        if self.points.len() != other.points.len() {
            return Err(GeometryError::SizeMismatch(self.points.len(), other.points.len()));
        }
        let mut lines: BTreeSet<Vec<usize>> = self.lines.iter().cloned().collect();
        lines.extend(other.lines.iter().cloned());
        Self::new(self.points.clone(), lines.into_iter().collect())
    }

    pub fn to_json(&self) -> IncidenceGeometryJson {
        IncidenceGeometryJson { points: self.points.clone(), lines: self.lines.clone() }
    }

    pub fn from_json(j: &IncidenceGeometryJson) -> Result<Self, GeometryError> {
        Self::new(j.points.clone(), j.lines.clone())
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph geometry {\n");
        for (i, label) in self.points.iter().enumerate() {
            out.push_str(&format!("  p{i} [label=\"{label}\"];\n"));
        }
        for (j, line) in self.lines.iter().enumerate() {
            out.push_str(&format!("  l{j} [shape=point];\n"));
            for &p in line {
                out.push_str(&format!("  l{j} -- p{p};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn uniform(values: &[usize]) -> Option<usize> {
    let first = *values.first()?;
    values.iter().all(|&v| v == first).then_some(first)
}

impl fmt::Display for IncidenceGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, line) in self.lines.iter().enumerate() {
            if j > 0 {
                f.write_str("; ")?;
            }
            let labels: Vec<&str> = line.iter().map(|&p| self.points[p].as_str()).collect();
            f.write_str(&labels.join(" "))?;
        }
        Ok(())
    }
}

/// Unordered edge pairs sharing one two-point stabilizer fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerClass {
    pub fingerprint: Fingerprint,
    pub name: Option<String>,
    /// 0-based edge pairs `(i, j)`, `i < j`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
}

impl StabilizerClass {
    pub fn order(&self) -> usize {
        self.fingerprint.order
    }
}

/// Groups the unordered pairs of edges by the fingerprint of their pointwise
/// stabilizer in the monodromy group. Classes come in descending stabilizer
/// order, ties broken by histogram.
pub fn pair_stabilizer_classes(dessin: &Dessin, cap: usize) -> Result<Vec<StabilizerClass>, GeometryError> {
    let elements = dessin.group_elements(cap)?;
    stabilizer_classes_of(dessin.n_edges(), &elements)
}

pub(crate) fn stabilizer_classes_of(
    n: usize,
    elements: &[Permutation],
) -> Result<Vec<StabilizerClass>, GeometryError> {
    if n > MAX_VERTICES {
        return Err(GeometryError::TooManyVertices { n, cap: MAX_VERTICES });
    }
    let fixed: Vec<VertexSet> =
        elements.iter().map(|e| VertexSet::from_iter((0..n).filter(|&p| e.apply(p) == p))).collect();
    let mut groups: BTreeMap<(Fingerprint, bool), Vec<(usize, usize)>> = BTreeMap::new();
    let mut memo: BTreeMap<Vec<usize>, (Fingerprint, bool)> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let members: Vec<usize> =
                (0..elements.len()).filter(|&k| fixed[k].contains(i) && fixed[k].contains(j)).collect();
            let key = memo
                .entry(members.clone())
                .or_insert_with(|| {
                    let sub: Vec<&Permutation> = members.iter().map(|&k| &elements[k]).collect();
                    (Fingerprint::of(sub.iter().copied()), is_abelian(&sub))
                })
                .clone();
            groups.entry(key).or_default().push((i, j));
        }
    }
    let mut classes: Vec<StabilizerClass> = groups
        .into_iter()
        .map(|((fingerprint, abelian), pairs)| StabilizerClass {
            name: identify(&fingerprint, abelian),
            fingerprint,
            pairs,
        })
        .collect();
    classes.sort_by(|a, b| b.fingerprint.order.cmp(&a.fingerprint.order).then(a.fingerprint.histogram.cmp(&b.fingerprint.histogram)));
    Ok(classes)
}

fn is_abelian(elements: &[&Permutation]) -> bool {
    elements.iter().enumerate().all(|(i, a)| elements[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
}

/// Graph and clique geometry spanned by one stabilizer class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGeometry {
    pub graph: Graph,
    pub geometry: IncidenceGeometry,
}

/// Vertices are the dessin's edges (labeled `1..=n`), adjacent when the pair
/// lies in `class`; lines are the maximal cliques of that graph.
pub fn induce_geometry(dessin: &Dessin, class: &StabilizerClass) -> Result<InducedGeometry, GeometryError> {
    let n_edges = dessin.n_edges();
    let graph = Graph::from_edges(n_edges, class.pairs.iter().copied())?;
    let geometry = clique_geometry(&graph, (1..=n_edges).map(|i| i.to_string()).collect())?;
    Ok(InducedGeometry { graph, geometry })
}

/// Lines are the maximal cliques with at least two vertices.
pub fn clique_geometry(graph: &Graph, labels: Vec<String>) -> Result<IncidenceGeometry, GeometryError> {
    let lines = maximal_cliques(graph).into_iter().filter(|c| c.len() >= 2).collect();
    IncidenceGeometry::new(labels, lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessin::mermin_dessin;

    #[test]
    fn incidence_validation() {
        assert!(matches!(IncidenceGeometry::unlabeled(3, vec![vec![0]]), Err(GeometryError::ShortLine(0))));
        assert!(matches!(
            IncidenceGeometry::unlabeled(3, vec![vec![0, 3]]),
            Err(GeometryError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            IncidenceGeometry::unlabeled(3, vec![vec![0, 1], vec![1, 0]]),
            Err(GeometryError::DuplicateLine(0, 1))
        ));
        assert!(matches!(IncidenceGeometry::unlabeled(3, vec![vec![0, 0]]), Err(GeometryError::RepeatedPoint(0))));
    }

    #[test]
    fn grid_dessin_classes() {
        let d = mermin_dessin();
        let classes = pair_stabilizer_classes(&d, 1000).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].order(), 2);
        assert_eq!(classes[1].order(), 1);
        assert_eq!(classes[0].pairs.len() + classes[1].pairs.len(), 36);
        let first = induce_geometry(&d, &classes[0]).unwrap();
        assert_eq!(first.graph.edge_count(), 18);
        assert_eq!(first.geometry.n_lines(), 6);
        assert_eq!(first.geometry.uniform_line_size(), Some(3));
        assert_eq!(first.geometry.uniform_point_degree(), Some(2));
    }

    #[test]
    fn levi_and_collinearity() {
        let triangle = IncidenceGeometry::unlabeled(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(triangle.collinearity_graph().is_complete());
        let levi = triangle.levi_graph().unwrap();
        assert_eq!(levi.n(), 6);
        assert_eq!(levi.girth(), Some(6));
        assert!(triangle.to_dot().contains("l2 -- p2"));
    }
}

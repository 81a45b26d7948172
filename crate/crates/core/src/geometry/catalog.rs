//! Named reference structures, all built combinatorially.

use serde_json::Value;

use super::{induce_geometry, pair_stabilizer_classes, Graph, GeometryError, IncidenceGeometry, MAX_VERTICES};
use crate::contextuality::{mermin_pentagram, mermin_square, MagicConfiguration};
use crate::dessin::mermin_dessin;
use crate::pauli::enumerate_observables;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogItem {
    Graph(Graph),
    Geometry(IncidenceGeometry),
    Magic(MagicConfiguration),
}

impl CatalogItem {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Graph(_) => "graph",
            Self::Geometry(_) => "geometry",
            Self::Magic(_) => "magic_configuration",
        }
    }

    /// Collinearity graph for geometries and configurations.
    pub fn graph(&self) -> Graph {
        match self {
            Self::Graph(g) => g.clone(),
            Self::Geometry(geom) => geom.collinearity_graph(),
            Self::Magic(m) => {
                let labels = m.observables().iter().map(ToString::to_string).collect();
                IncidenceGeometry::new(labels, m.lines().to_vec()).expect("configuration lines").collinearity_graph()
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let body = match self {
            Self::Graph(g) => serde_json::to_value(g.to_json()),
            Self::Geometry(geom) => serde_json::to_value(geom.to_json()),
            Self::Magic(m) => serde_json::to_value(m.to_json()),
        };
        body.expect("plain data serializes")
    }
}

/// Catalog entry names; `n` and `k` are integer parameters.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "mermin_square",
        "pentagram_example",
        "petersen",
        "kneser(n,k)",
        "triangular(n)",
        "desargues_configuration",
        "gq22",
        "heptagram",
        "hesse",
        "hesse_union_check",
        "k(n)",
    ]
}

pub fn catalog(name: &str) -> Result<CatalogItem, GeometryError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let unknown = || GeometryError::UnknownCatalog(name.to_string());
    let item = match compact.as_str() {
        "mermin_square" => CatalogItem::Magic(mermin_square()),
        "pentagram_example" => CatalogItem::Magic(mermin_pentagram()),
        "petersen" => CatalogItem::Graph(kneser(5, 2)?),
        "desargues_configuration" => CatalogItem::Geometry(desargues()),
        "gq22" => CatalogItem::Geometry(gq22()),
        "heptagram" => CatalogItem::Geometry(heptagram()),
        "hesse" => CatalogItem::Geometry(hesse()),
        "hesse_union_check" => CatalogItem::Geometry(hesse_union()?),
        _ => {
            let (head, args) = compact.strip_suffix(')').and_then(|s| s.split_once('(')).ok_or_else(unknown)?;
            let args: Vec<usize> =
                args.split(',').map(|a| a.parse::<usize>()).collect::<Result<_, _>>().map_err(|_| unknown())?;
            match (head, args.as_slice()) {
                ("kneser", &[n, k]) => CatalogItem::Graph(kneser(n, k)?),
                ("triangular", &[n]) => CatalogItem::Graph(triangular(n)?),
                ("k", &[n]) => CatalogItem::Graph(Graph::from_fn(n, |_, _| true)?),
                _ => return Err(unknown()),
            }
        }
    };
    Ok(item)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    (0..k).try_fold(1usize, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

fn subset_label(s: &[usize]) -> String {
    s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("")
}

fn check_size(n: usize) -> Result<(), GeometryError> {
    if n > MAX_VERTICES {
        return Err(GeometryError::TooManyVertices { n, cap: MAX_VERTICES });
    }
    Ok(())
}

/// k-subsets of an n-set, adjacent when disjoint.
fn kneser(n: usize, k: usize) -> Result<Graph, GeometryError> {
    check_size(binomial(n, k).unwrap_or(usize::MAX))?;
    let sets = subsets(n, k);
    Graph::from_fn(sets.len(), |a, b| sets[a].iter().all(|x| !sets[b].contains(x)))
}

/// Line graph of K_n: 2-subsets adjacent when they meet.
fn triangular(n: usize) -> Result<Graph, GeometryError> {
    check_size(binomial(n, 2).unwrap_or(usize::MAX))?;
    let pairs = subsets(n, 2);
    Graph::from_fn(pairs.len(), |a, b| pairs[a].iter().any(|x| pairs[b].contains(x)))
}

/// Desargues configuration 10_3: pairs of a 5-set on the triples containing them.
fn desargues() -> IncidenceGeometry {
    let pairs = subsets(5, 2);
    let lines = subsets(5, 3)
        .into_iter()
        .map(|t| (0..pairs.len()).filter(|&p| pairs[p].iter().all(|x| t.contains(x))).collect())
        .collect();
    IncidenceGeometry::new(pairs.iter().map(|p| subset_label(p)).collect(), lines).expect("valid configuration")
}

/// Two-qubit observables; lines are the commuting triples `{a, b, ab}`.
fn gq22() -> IncidenceGeometry {
    let obs = enumerate_observables(2).expect("two qubits");
    let index_of = |bits: (u64, u64)| obs.iter().position(|o| o.bits() == bits).expect("closed under products");
    let mut lines = Vec::new();
    for a in 0..obs.len() {
        for b in a + 1..obs.len() {
            if !obs[a].commutes(&obs[b]).expect("same qubit count") {
                continue;
            }
            let (xa, za) = obs[a].bits();
            let (xb, zb) = obs[b].bits();
            let c = index_of((xa ^ xb, za ^ zb));
            if c > b {
                lines.push(vec![a, b, c]);
            }
        }
    }
    IncidenceGeometry::new(obs.iter().map(ToString::to_string).collect(), lines).expect("valid quadrangle")
}

/// Points are pairs of seven contexts; each context's hexad holds the six pairs containing it.
fn heptagram() -> IncidenceGeometry {
    let pairs = subsets(7, 2);
    let lines = (0..7).map(|c| (0..pairs.len()).filter(|&p| pairs[p].contains(&c)).collect()).collect();
    IncidenceGeometry::new(pairs.iter().map(|p| subset_label(p)).collect(), lines).expect("valid design")
}

/// The affine plane of order 3.
fn hesse() -> IncidenceGeometry {
    let point = |x: usize, y: usize| 3 * (x % 3) + y % 3;
    let mut lines = Vec::new();
    for (dx, dy) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
        let mut seen = Vec::new();
        for start in 0..9 {
            let line: Vec<usize> = {
                let mut l: Vec<usize> = (0..3).map(|t| point(start / 3 + t * dx, start % 3 + t * dy)).collect();
                l.sort_unstable();
                l
            };
            if !seen.contains(&line) {
                seen.push(line);
            }
        }
        lines.extend(seen);
    }
    let labels = (0..9).map(|p| format!("{}{}", p / 3, p % 3)).collect();
    IncidenceGeometry::new(labels, lines).expect("valid plane")
}

/// Union of the two clique geometries induced by the grid dessin's stabilizer classes.
pub fn hesse_union() -> Result<IncidenceGeometry, GeometryError> {
    let d = mermin_dessin();
    let classes = pair_stabilizer_classes(&d, 1000)?;
    let mut union: Option<IncidenceGeometry> = None;
    for class in &classes {
        let geom = induce_geometry(&d, class)?.geometry;
        union = Some(match union {
            None => geom,
            Some(u) => u.union(&geom)?,
        });
    }
    union.ok_or(GeometryError::NoSuchClass { index: 0, count: 0 })
}

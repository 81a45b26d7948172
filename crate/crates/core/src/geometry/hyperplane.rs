//! Geometric hyperplanes of geometries with three points per line.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{GeometryError, IncidenceGeometry, VertexSet};

pub const MAX_HYPERPLANE_POINTS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperplaneKind {
    /// All points collinear with (or equal to) one point.
    Perp,
    /// Every point on exactly two internal lines.
    Grid,
    /// No internal lines.
    Ovoid,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub points: Vec<usize>,
    pub internal_lines: Vec<usize>,
    pub kind: HyperplaneKind,
}

impl Hyperplane {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

fn check_shape(geom: &IncidenceGeometry) -> Result<(), GeometryError> {
    if geom.n_points() > MAX_HYPERPLANE_POINTS {
        return Err(GeometryError::Unsupported {
            what: "hyperplane enumeration",
            requirement: format!("at most {MAX_HYPERPLANE_POINTS} points"),
        });
    }
    if geom.lines().iter().any(|l| l.len() != 3) {
        return Err(GeometryError::Unsupported { what: "hyperplane enumeration", requirement: "three points on every line".into() });
    }
    Ok(())
}

fn check_hyperplane(geom: &IncidenceGeometry, set: &VertexSet) -> Result<(), GeometryError> {
    if set.len() == geom.n_points() {
        return Err(GeometryError::NotHyperplane("the whole point set is not proper".into()));
    }
    if let Some(&p) = set.to_vec().iter().find(|&&p| p >= geom.n_points()) {
        return Err(GeometryError::NotHyperplane(format!("point {p} out of range")));
    }
    for (j, line) in geom.lines().iter().enumerate() {
        let inside = line.iter().filter(|&&p| set.contains(p)).count();
        if inside != 1 && inside != line.len() {
            return Err(GeometryError::NotHyperplane(format!("line {j} meets it in {inside} points")));
        }
    }
    Ok(())
}

pub fn classify_hyperplane(geom: &IncidenceGeometry, points: &[usize]) -> Result<Hyperplane, GeometryError> {
    check_shape(geom)?;
    let set = VertexSet::from_iter(points.iter().copied());
    check_hyperplane(geom, &set)?;
    let internal_lines: Vec<usize> =
        (0..geom.n_lines()).filter(|&j| geom.lines()[j].iter().all(|&p| set.contains(p))).collect();
    let graph = geom.collinearity_graph();
    let mut on_lines = vec![0usize; geom.n_points()];
    for &j in &internal_lines {
        for &p in &geom.lines()[j] {
            on_lines[p] += 1;
        }
    }
    let kind = if internal_lines.is_empty() {
        HyperplaneKind::Ovoid
    } else if set.iter().any(|x| {
        let mut perp = *graph.neighbors(x);
        perp.insert(x);
        perp == set
    }) {
        HyperplaneKind::Perp
    } else if set.iter().all(|p| on_lines[p] == 2) {
        HyperplaneKind::Grid
    } else {
        HyperplaneKind::Other
    };
    Ok(Hyperplane { points: set.to_vec(), internal_lines, kind })
}

/// All geometric hyperplanes, by exhaustive search with line-constraint pruning,
/// sorted by point list.
pub fn hyperplanes(geom: &IncidenceGeometry) -> Result<Vec<Hyperplane>, GeometryError> {
    check_shape(geom)?;
    let n = geom.n_points();
    let mut lines_of = vec![Vec::new(); n];
    for (j, line) in geom.lines().iter().enumerate() {
        for &p in line {
            lines_of[p].push(j);
        }
    }
    let mut found = Vec::new();
    let mut inside = vec![false; n];
    search(geom, &lines_of, 0, &mut inside, &mut found);
    let mut out = found
        .into_iter()
        .filter(|pts: &Vec<usize>| pts.len() < n)
        .map(|pts| classify_hyperplane(geom, &pts))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(out)
}

fn search(geom: &IncidenceGeometry, lines_of: &[Vec<usize>], p: usize, inside: &mut Vec<bool>, found: &mut Vec<Vec<usize>>) {
    let n = inside.len();
    if p == n {
        found.push((0..n).filter(|&q| inside[q]).collect());
        return;
    }
    for choice in [false, true] {
        inside[p] = choice;
        let ok = lines_of[p].iter().all(|&j| {
            let line = &geom.lines()[j];
            if line.iter().any(|&q| q > p) {
                return true;
            }
            let count = line.iter().filter(|&&q| inside[q]).count();
            count == 1 || count == line.len()
        });
        if ok {
            search(geom, lines_of, p + 1, inside, found);
        }
    }
    inside[p] = false;
}

/// Complement of the symmetric difference of two hyperplanes.
pub fn hyperplane_add(h1: &[usize], h2: &[usize], geom: &IncidenceGeometry) -> Result<Vec<usize>, GeometryError> {
    check_shape(geom)?;
    let a = VertexSet::from_iter(h1.iter().copied());
    let b = VertexSet::from_iter(h2.iter().copied());
    check_hyperplane(geom, &a)?;
    check_hyperplane(geom, &b)?;
    let sym = a.minus(&b).or(&b.minus(&a));
    if sym.is_empty() {
        return Err(GeometryError::ImproperSum);
    }
    let sum = VertexSet::full(geom.n_points()).minus(&sym);
    check_hyperplane(geom, &sum)?;
    Ok(sum.to_vec())
}

/// The given hyperplanes together with all pairwise sums of distinct members.
pub fn hyperplane_closure(geom: &IncidenceGeometry, hs: &[Vec<usize>]) -> Result<BTreeSet<Vec<usize>>, GeometryError> {
    let mut out: BTreeSet<Vec<usize>> = hs.iter().cloned().collect();
    for (i, a) in hs.iter().enumerate() {
        for b in &hs[i + 1..] {
            out.insert(hyperplane_add(a, b, geom)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> IncidenceGeometry {
        let lines = vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6], vec![1, 3, 5], vec![1, 4, 6], vec![2, 3, 6], vec![2, 4, 5]];
        IncidenceGeometry::unlabeled(7, lines).unwrap()
    }

    #[test]
    fn fano_hyperplanes_are_its_lines() {
        let hs = hyperplanes(&fano()).unwrap();
        assert_eq!(hs.len(), 7);
        assert!(hs.iter().all(|h| h.size() == 3 && h.internal_lines.len() == 1 && h.kind == HyperplaneKind::Other));
    }

    #[test]
    fn sums() {
        let g = fano();
        assert_eq!(hyperplane_add(&[0, 1, 2], &[0, 3, 4], &g).unwrap(), vec![0, 5, 6]);
        assert_eq!(hyperplane_add(&[0, 1, 2], &[0, 1, 2], &g), Err(GeometryError::ImproperSum));
        assert!(matches!(hyperplane_add(&[0, 1], &[0, 3, 4], &g), Err(GeometryError::NotHyperplane(_))));
        let all: Vec<usize> = (0..7).collect();
        assert!(matches!(classify_hyperplane(&g, &all), Err(GeometryError::NotHyperplane(_))));
    }

    #[test]
    fn shape_precondition() {
        let g = IncidenceGeometry::unlabeled(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(matches!(hyperplanes(&g), Err(GeometryError::Unsupported { .. })));
    }
}

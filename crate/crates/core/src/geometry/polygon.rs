use serde::Serialize;

use super::{GeometryError, IncidenceGeometry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonReport {
    pub n: usize,
    /// Points per line minus one, when uniform.
    pub s: Option<usize>,
    /// Lines per point minus one, when uniform.
    pub t: Option<usize>,
    /// Levi-graph diameter.
    pub diameter: usize,
    /// Levi-graph girth; `None` when the Levi graph is a tree.
    pub girth: Option<usize>,
    pub pass: bool,
}

/// Generalized n-gon test: the Levi graph must have diameter `n` and girth `2n`.
pub fn verify_generalized_polygon(geom: &IncidenceGeometry, n: usize) -> Result<PolygonReport, GeometryError> {
    let levi = geom.levi_graph()?;
    if levi.n() == 0 {
        return Err(GeometryError::Disconnected);
    }
    let diameter = levi.diameter().ok_or(GeometryError::Disconnected)?;
    let girth = levi.girth();
    Ok(PolygonReport {
        n,
        s: geom.uniform_line_size().map(|k| k - 1),
        t: geom.uniform_point_degree().and_then(|k| k.checked_sub(1)),
        diameter,
        girth,
        pass: diameter == n && girth == Some(2 * n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_never_passes() {
        let line = IncidenceGeometry::unlabeled(3, vec![vec![0, 1, 2]]).unwrap();
        for n in 2..8 {
            let r = verify_generalized_polygon(&line, n).unwrap();
            assert!(!r.pass);
            assert_eq!((r.s, r.t, r.diameter, r.girth), (Some(2), Some(0), 2, None));
        }
    }

    #[test]
    fn triangle_is_a_generalized_3_gon() {
        let tri = IncidenceGeometry::unlabeled(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let r = verify_generalized_polygon(&tri, 3).unwrap();
        assert!(r.pass);
        assert_eq!((r.s, r.t), (Some(1), Some(1)));
    }

    #[test]
    fn fano_plane() {
        let lines = vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6], vec![1, 3, 5], vec![1, 4, 6], vec![2, 3, 6], vec![2, 4, 5]];
        let fano = IncidenceGeometry::unlabeled(7, lines).unwrap();
        let r = verify_generalized_polygon(&fano, 3).unwrap();
        assert!(r.pass);
        assert_eq!((r.s, r.t, r.diameter, r.girth), (Some(2), Some(2), 3, Some(6)));
    }

    #[test]
    fn disconnected_is_an_error() {
        let two = IncidenceGeometry::unlabeled(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(verify_generalized_polygon(&two, 2), Err(GeometryError::Disconnected));
    }
}

//! Writes the split Cayley hexagon of order 2 as geometry JSON on stdout.
//!
//! Points are the 63 points of the parabolic quadric
//! `x0 x4 + x1 x5 + x2 x6 = x3^2` in PG(6,2), labeled by their coordinate
//! bits `x0..x6`. Lines are the quadric lines whose Grassmann coordinates
//! satisfy `p12 = p34, p02 = p35, p01 = p36, p56 = p30, p46 = p31, p45 = p32`.
//!
//! Usage: `cargo run -p dessins-core --example gh22_fixture > data/gh22.json`

use dessins_core::geometry::IncidenceGeometry;

fn on_quadric(v: [u8; 7]) -> bool {
    (v[0] & v[4]) ^ (v[1] & v[5]) ^ (v[2] & v[6]) ^ v[3] == 0
}

fn grassmann(a: [u8; 7], b: [u8; 7], i: usize, j: usize) -> u8 {
    (a[i] & b[j]) ^ (a[j] & b[i])
}

fn main() {
    let points: Vec<[u8; 7]> = (1u8..128)
        .map(|m| std::array::from_fn(|k| (m >> (6 - k)) & 1))
        .filter(|&v| on_quadric(v))
        .collect();
    let index = |v: [u8; 7]| points.iter().position(|&p| p == v).expect("point on quadric");
    let equations = [((1, 2), (3, 4)), ((0, 2), (3, 5)), ((0, 1), (3, 6)), ((5, 6), (3, 0)), ((4, 6), (3, 1)), ((4, 5), (3, 2))];
    let mut lines = Vec::new();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let c: [u8; 7] = std::array::from_fn(|k| a[k] ^ b[k]);
            if !on_quadric(c) || index(c) < index(b) {
                continue;
            }
            if equations.iter().all(|&((p, q), (r, s))| grassmann(a, b, p, q) == grassmann(a, b, r, s)) {
                lines.push(vec![index(a), index(b), index(c)]);
            }
        }
    }
    let labels = points.iter().map(|v| v.iter().map(|b| char::from(b'0' + b)).collect()).collect();
    let geometry = IncidenceGeometry::new(labels, lines).expect("valid geometry");
    println!("{}", serde_json::to_string(&geometry.to_json()).expect("serializable"));
}

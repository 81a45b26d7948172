use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use dessins_core::contextuality::{
    census_pentagrams, census_squares, chsh_norm, chsh_operator, embedded_squares, is_magic, mermin_pentagram,
    mermin_square, ChshQuadruple, MagicConfiguration, MagicConfigurationJson,
};
use dessins_core::pauli::{enumerate_observables, parse};

/// Largest |eigenvalue| of a Hermitian matrix by power iteration on C².
fn power_norm(c: &DMatrix<Complex64>) -> f64 {
    let sq = c * c;
    let n = sq.nrows();
    let mut v = DVector::from_fn(n, |i, _| Complex64::new(1.0 + i as f64 * 0.37, 0.1 * i as f64));
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w = &sq * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm / v.norm();
        v = w / Complex64::new(norm, 0.0);
    }
    lambda.sqrt()
}

#[test]
fn chsh_norm_matches_power_iteration() {
    for q in census_squares(2, 1).unwrap().members.iter().take(30) {
        let oracle = power_norm(&chsh_operator(q.sigma()).unwrap());
        assert!((chsh_norm(q).unwrap() - oracle).abs() < 1e-9);
        assert!((oracle - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    }
}

#[test]
fn commuting_quadruple_stays_classical() {
    let m = chsh_operator(&["ZI", "IZ", "ZZ", "II"].map(|s| parse(s).unwrap())).unwrap();
    assert!(power_norm(&m) <= 2.0 + 1e-9);
}

/// Counts 4-sets of two-qubit observables admitting a square labeling by brute force.
#[test]
fn square_count_by_brute_force() {
    let obs = enumerate_observables(2).unwrap();
    let m = obs.len();
    let mut count = 0;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let s = [obs[a], obs[b], obs[c], obs[d]];
                    let orders = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]];
                    if orders.iter().any(|o| ChshQuadruple::new(o.map(|i| s[i])).is_ok()) {
                        count += 1;
                    }
                }
            }
        }
    }
    assert_eq!(count, 90);
    assert_eq!(census_squares(2, 1).unwrap().count, count);
}

#[test]
fn census_is_thread_independent() {
    let one = census_squares(3, 1).unwrap();
    for t in [2, 8] {
        assert_eq!(census_squares(3, t).unwrap(), one);
    }
    let p1 = census_pentagrams(1).unwrap();
    let p8 = census_pentagrams(8).unwrap();
    assert_eq!(p1.magic, p8.magic);
    assert_eq!(p1.shaped, p8.shaped);
}

#[test]
fn pentagram_members_are_distinct_and_shaped() {
    let c = census_pentagrams(0).unwrap();
    let mut keys: Vec<_> = c.magic.members.iter().map(|m| m.canonicalized()).collect();
    keys.sort_by_key(|m| format!("{:?}", m.to_json()));
    keys.dedup();
    assert_eq!(keys.len(), 12096);
    for m in c.magic.members.iter().step_by(97) {
        assert_eq!(m.observables().len(), 10);
        assert_eq!(m.lines().len(), 5);
        for (i, a) in m.lines().iter().enumerate() {
            assert_eq!(a.len(), 4);
            for b in &m.lines()[i + 1..] {
                assert_eq!(a.iter().filter(|x| b.contains(x)).count(), 1);
            }
        }
    }
}

#[test]
fn json_round_trip() {
    for m in [mermin_square(), mermin_pentagram()] {
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: MagicConfigurationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(MagicConfiguration::from_json(&back).unwrap(), m);
    }
}

#[test]
fn mermin_square_parity() {
    let m = mermin_square();
    let cert = is_magic(&m);
    assert!(cert.magic);
    assert_eq!(cert.line_signs.iter().filter(|&&s| s < 0).count(), 1);
    let squares = embedded_squares(&m).unwrap();
    assert_eq!(squares.len(), 9);
    for q in &squares {
        assert!((chsh_norm(q).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    }
}

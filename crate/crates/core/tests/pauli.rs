use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use dessins_core::pauli::{enumerate_observables, parse, PauliOperator};

const EPS: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Textbook matrices from the printed form, independent of the bit encoding.
fn oracle(op: &PauliOperator) -> DMatrix<Complex64> {
    let text = op.to_string();
    let (mut factor, mut rest) = (c(1.0, 0.0), text.as_str());
    if let Some(r) = rest.strip_prefix('-') {
        factor = -factor;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    if let Some(r) = rest.strip_prefix('i') {
        factor *= c(0.0, 1.0);
        rest = r;
    }
    let mut m = DMatrix::from_element(1, 1, factor);
    for ch in rest.chars() {
        let single = match ch {
            'I' => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            'X' => [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            'Y' => [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
            'Z' => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            other => panic!("unexpected {other}"),
        };
        m = m.kronecker(&DMatrix::from_row_slice(2, 2, &single));
    }
    m
}

fn close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < EPS)
}

fn operator(n: usize) -> impl Strategy<Value = PauliOperator> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>(), 0u8..4).prop_map(move |(x, z, k)| PauliOperator::from_parts(n, x & mask, z & mask, k))
}

#[test]
fn dense_matrix_matches_textbook_matrices() {
    for n in 1..=3 {
        for op in enumerate_observables(n).unwrap() {
            for k in 0..4u8 {
                let op = PauliOperator::from_parts(n, op.x_mask(), op.z_mask(), (op.phase_exponent() + k) % 4);
                assert!(close(&op.dense_matrix().unwrap(), &oracle(&op)), "{op}");
            }
        }
    }
}

#[test]
fn commutation_agrees_with_dense_commutator() {
    let obs = enumerate_observables(2).unwrap();
    for a in &obs {
        for b in &obs {
            let (ma, mb) = (oracle(a), oracle(b));
            let commutator = &ma * &mb - &mb * &ma;
            let zero = commutator.iter().all(|v| v.norm() < EPS);
            assert_eq!(a.commutes(b).unwrap(), zero, "{a} {b}");
        }
    }
}

#[test]
fn hermitian_and_unitary() {
    for n in 1..=2 {
        for op in enumerate_observables(n).unwrap() {
            for k in 0..4u8 {
                let op = PauliOperator::from_parts(n, op.x_mask(), op.z_mask(), k);
                let m = oracle(&op);
                let adj = m.adjoint();
                assert!(close(&(&m * &adj), &DMatrix::identity(m.nrows(), m.ncols())));
                assert_eq!(close(&m, &adj), op.is_hermitian(), "{op}");
            }
        }
    }
}

#[test]
fn observable_counts() {
    assert_eq!(enumerate_observables(1).unwrap().len(), 3);
    assert_eq!(enumerate_observables(2).unwrap().len(), 15);
    assert_eq!(enumerate_observables(3).unwrap().len(), 63);
    assert!(enumerate_observables(3).unwrap().iter().all(|o| o.is_hermitian()));
}

#[test]
fn reference_products() {
    let xx_yy = parse("XX").unwrap().multiply(&parse("YY").unwrap()).unwrap();
    assert_eq!(xx_yy.to_string(), "-ZZ");
    let all = xx_yy.multiply(&parse("ZZ").unwrap()).unwrap();
    assert_eq!(all, parse("-II").unwrap());
    assert_eq!(parse("X").unwrap().multiply(&parse("Z").unwrap()).unwrap(), parse("-iY").unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_matches_matrix_product(a in operator(2), b in operator(2)) {
        let ab = a.multiply(&b).unwrap();
        prop_assert!(close(&oracle(&ab), &(oracle(&a) * oracle(&b))));
    }

    #[test]
    fn associative_and_phase_exact(a in operator(3), b in operator(3), c in operator(3)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(close(&oracle(&left), &(oracle(&a) * oracle(&b) * oracle(&c))));
    }

    #[test]
    fn identity_is_neutral(a in operator(3)) {
        let id = PauliOperator::identity(3);
        prop_assert_eq!(a.multiply(&id).unwrap(), a);
        prop_assert_eq!(id.multiply(&a).unwrap(), a);
    }

    #[test]
    fn hermitian_squares_to_identity(a in operator(3)) {
        let sq = a.multiply(&a).unwrap();
        prop_assert!(sq.is_identity_up_to_phase());
        if a.is_hermitian() {
            prop_assert_eq!(sq, PauliOperator::identity(3));
        } else {
            prop_assert_eq!(sq, PauliOperator::identity(3).negate());
        }
    }

    #[test]
    fn text_round_trip(a in operator(4)) {
        prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
    }
}

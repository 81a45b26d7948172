use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dessins_core::dessin::{mermin_dessin, Dessin, DessinJson};
use dessins_core::fpgroup::{
    coset_enumerate, dessin_from_table, enumerate_dessins_direct, low_index_subgroups, DessinFilter,
    FinitePresentation,
};
use dessins_core::perm::Permutation;

fn all_perms(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    fn go(k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

fn transitive(a: &[u32], b: &[u32]) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in [a[x] as usize, b[x] as usize] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&i| q[i as usize]).collect()
}

fn inverse(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

/// Orbit-counting oracle: the isomorphism classes found must account for
/// every transitive pair (α, β) with β² = 1, each class contributing
/// n!/|centralizer|.
#[test]
fn direct_enumeration_accounts_for_all_pairs() {
    for n in 1..=5usize {
        let perms = all_perms(n);
        let involutions: Vec<&Vec<u32>> =
            perms.iter().filter(|p| compose(p, p).iter().enumerate().all(|(i, &j)| i as u32 == j)).collect();
        let mut pairs = 0usize;
        for a in &perms {
            for b in &involutions {
                if transitive(a, b) {
                    pairs += 1;
                }
            }
        }
        let found = enumerate_dessins_direct(n, &DessinFilter::default(), 1).unwrap();
        let factorial: usize = (1..=n).product();
        let mut total = 0;
        for d in &found {
            let (a, b) = (d.alpha().images(), d.beta().images());
            let centralizer = perms
                .iter()
                .filter(|c| {
                    let ci = inverse(c);
                    compose(&compose(&ci, a), c) == a && compose(&compose(&ci, b), c) == b
                })
                .count();
            total += factorial / centralizer;
        }
        assert_eq!(total, pairs, "n = {n}");
    }
}

#[test]
fn coset_enumeration_orders() {
    for m in 2..=10 {
        let p = FinitePresentation::parse(&format!("gens: a, b; rels: a^2, b^2, (a*b)^{m}")).unwrap();
        assert_eq!(coset_enumerate(&p, &[], 10_000).unwrap().index(), 2 * m);
    }
    let s4 = FinitePresentation::parse("gens: a, b; rels: a^2, b^3, (a*b)^4").unwrap();
    assert_eq!(coset_enumerate(&s4, &[], 10_000).unwrap().index(), 24);
    for (word, index) in [("a", 30), ("b", 20), ("a*b", 12), ("1", 60)] {
        let p = FinitePresentation::parse(&format!("gens: a, b; rels: a^2, b^3, (a*b)^5; sub: {word}")).unwrap();
        let t = coset_enumerate(&p, p.subgroup(), 10_000).unwrap();
        assert_eq!(t.index(), index, "<{word}>");
        assert!(t.verify(&p));
    }
}

#[test]
fn low_index_tables_are_valid_and_thread_independent() {
    let p = FinitePresentation::cartographic_face_quotient(4);
    let one = low_index_subgroups(&p, 8, 1).unwrap();
    for t in [2, 8] {
        assert_eq!(low_index_subgroups(&p, 8, t).unwrap(), one);
    }
    for t in &one {
        assert!(t.verify(&p));
        let d = dessin_from_table(t).unwrap();
        assert_eq!(d.n_edges(), t.index());
        assert!(d.gamma().order() <= 4 && 4 % d.gamma().order() == 0);
    }
    let direct1 = enumerate_dessins_direct(7, &DessinFilter::default(), 1).unwrap();
    assert_eq!(enumerate_dessins_direct(7, &DessinFilter::default(), 8).unwrap(), direct1);
}

#[test]
fn mermin_dessin_json_round_trip() {
    let d = mermin_dessin();
    let text = serde_json::to_string(&d.to_json()).unwrap();
    let back: DessinJson = serde_json::from_str(&text).unwrap();
    assert_eq!(Dessin::try_from(&back).unwrap(), d);
    assert_eq!(text, r#"{"edges":9,"alpha":[[1,2,4,8,7,3],[5,9,6]],"beta":[[2,5],[3,6],[4,7],[8,9]]}"#);
}

fn random_dessin() -> impl Strategy<Value = Dessin> {
    (2usize..9, any::<u64>()).prop_filter_map("intransitive", |(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a: Vec<u32> = (0..n as u32).collect();
        let mut b = a.clone();
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        Dessin::new(Permutation::from_images(a).unwrap(), Permutation::from_images(b).unwrap()).ok()
    })
}

proptest! {
    #[test]
    fn euler_relation(d in random_dessin()) {
        let s = d.signature().unwrap();
        let chi = (s.black + s.white + s.faces) as i64 - d.n_edges() as i64;
        prop_assert_eq!(chi, 2 - 2 * s.genus as i64);
        prop_assert!(d.alpha().then(d.beta()).then(d.gamma()).is_identity());
    }

    #[test]
    fn relabeling_invariants(d in random_dessin(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c: Vec<u32> = (0..d.n_edges() as u32).collect();
        c.shuffle(&mut rng);
        let e = d.relabel(&Permutation::from_images(c).unwrap());
        prop_assert_eq!(e.passport(), d.passport());
        prop_assert_eq!(e.genus().unwrap(), d.genus().unwrap());
        prop_assert_eq!(e.canonical_key(), d.canonical_key());
        let (g, h) = (d.monodromy_group(100_000).unwrap(), e.monodromy_group(100_000).unwrap());
        prop_assert_eq!(g.order, h.order);
        prop_assert_eq!(g.order_histogram, h.order_histogram);
    }

    #[test]
    fn json_round_trip(d in random_dessin()) {
        let back: DessinJson = serde_json::from_str(&serde_json::to_string(&d.to_json()).unwrap()).unwrap();
        prop_assert_eq!(Dessin::try_from(&back).unwrap(), d);
    }
}

#[test]
fn monodromy_histogram_sums_to_order() {
    let found = enumerate_dessins_direct(6, &DessinFilter::default(), 0).unwrap();
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    for d in &found {
        let g = d.monodromy_group(100_000).unwrap();
        assert_eq!(g.order_histogram.values().sum::<usize>(), g.order);
        assert_eq!(g.order % d.n_edges(), 0);
        *orders.entry(g.order).or_default() += 1;
    }
    assert!(orders.contains_key(&720));
}

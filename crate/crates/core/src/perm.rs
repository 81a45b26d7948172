//! Permutations on `{0, .., n-1}` with 1-based cycle notation for I/O.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("label {label} outside 1..={degree}")]
    LabelOutOfRange { label: usize, degree: usize },
    #[error("label {0} appears more than once")]
    RepeatedLabel(usize),
    #[error("image array is not a bijection")]
    NotBijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group has more than {0} elements")]
    GroupTooLarge(usize),
}

/// A bijection of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds from 1-based cycles; omitted labels are fixed points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &label in cycle {
                if label == 0 || label > degree {
                    return Err(PermError::LabelOutOfRange { label, degree });
                }
                if seen[label - 1] {
                    return Err(PermError::RepeatedLabel(label));
                }
                seen[label - 1] = true;
            }
            for (k, &label) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[label - 1] = (next - 1) as u32;
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` first, then `other`: `(self.then(other))(i) = other(self(i))`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Self { images: inv }
    }

    /// `c⁻¹ · self · c`, i.e. the relabeling of `self` by `c`.
    pub fn conjugate_by(&self, c: &Self) -> Self {
        c.inverse().then(self).then(c)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// All cycles, fixed points included, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// 1-based cycles of length > 1.
    pub fn nontrivial_cycles_one_based(&self) -> Vec<Vec<usize>> {
        self.cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|p| p + 1).collect())
            .collect()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycles().iter().map(Vec::len))
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.nontrivial_cycles_one_based();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Multiset of cycle lengths, stored as `(length, multiplicity)` with lengths
/// strictly decreasing. Fixed points are always present explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<(usize, usize)>);

impl CycleType {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for l in lengths {
            *counts.entry(l).or_default() += 1;
        }
        Self(counts.into_iter().rev().filter(|&(_, m)| m > 0).collect())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self::from_lengths(pairs.into_iter().flat_map(|(l, m)| std::iter::repeat_n(l, m)))
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Sum of `length · multiplicity`.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&(l, m)| l * m).sum()
    }

    /// Number of cycles.
    pub fn count(&self) -> usize {
        self.0.iter().map(|&(_, m)| m).sum()
    }

    /// Parses space-separated terms such as `6^1 3^1`; a bare length has
    /// multiplicity one.
    pub fn parse(text: &str) -> Option<Self> {
        let mut pairs = Vec::new();
        for term in text.split_whitespace() {
            let (l, m) = match term.split_once('^') {
                Some((l, m)) => (l.parse().ok()?, m.parse().ok()?),
                None => (term.parse().ok()?, 1),
            };
            if l == 0 {
                return None;
            }
            pairs.push((l, m));
        }
        if pairs.is_empty() {
            return None;
        }
        Some(Self::from_pairs(pairs))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(l, m)| format!("{l}^{m}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Orbits of the group generated by `gens`, each sorted, ordered by least point.
pub fn orbits(degree: usize, gens: &[&Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            k += 1;
            for g in gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Breadth-first closure of `⟨gens⟩`. Identity first, then in BFS order.
pub fn group_elements(degree: usize, gens: &[&Permutation], cap: usize) -> Result<Vec<Permutation>, PermError> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut elements = vec![id.clone()];
    seen.insert(id);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in gens {
            let next = elements[k].then(g);
            if !seen.contains(&next) {
                if elements.len() >= cap {
                    return Err(PermError::GroupTooLarge(cap));
                }
                seen.insert(next.clone());
                elements.push(next);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(elements)
}

/// Canonical representative of the pair `(a, b)` under simultaneous
/// relabeling, assuming `⟨a, b⟩` is transitive.
///
/// For each base point the points are relabeled in breadth-first order
/// (scanning `a` then `b` from each labeled point); the lexicographically
/// least relabeled pair is returned. Two transitive pairs are conjugate iff
/// their canonical forms coincide.
pub fn canonical_pair(a: &Permutation, b: &Permutation) -> (Vec<u32>, Vec<u32>) {
    let n = a.degree();
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    let mut label = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        label.fill(u32::MAX);
        order.clear();
        label[start] = 0;
        order.push(start);
        let mut k = 0;
        while k < order.len() {
            let p = order[k];
            k += 1;
            for g in [a, b] {
                let q = g.apply(p);
                if label[q] == u32::MAX {
                    label[q] = order.len() as u32;
                    order.push(q);
                }
            }
        }
        debug_assert_eq!(order.len(), n, "canonical_pair needs a transitive pair");
        let ra: Vec<u32> = order.iter().map(|&p| label[a.apply(p)]).collect();
        let rb: Vec<u32> = order.iter().map(|&p| label[b.apply(p)]).collect();
        let better = match &best {
            None => true,
            Some((ba, bb)) => (&ra, &rb) < (ba, bb),
        };
        if better {
            best = Some((ra, rb));
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_round_trip() {
        let p = Permutation::from_cycles(9, &[vec![1, 2, 4, 8, 7, 3], vec![5, 9, 6]]).unwrap();
        assert_eq!(p.nontrivial_cycles_one_based(), vec![vec![1, 2, 4, 8, 7, 3], vec![5, 9, 6]]);
        assert_eq!(p.to_string(), "(1,2,4,8,7,3)(5,9,6)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type().to_string(), "6^1 3^1");
    }

    #[test]
    fn bad_cycles() {
        assert_eq!(
            Permutation::from_cycles(3, &[vec![1, 4]]),
            Err(PermError::LabelOutOfRange { label: 4, degree: 3 })
        );
        assert_eq!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]), Err(PermError::RepeatedLabel(2)));
        assert_eq!(Permutation::from_images(vec![0, 0]), Err(PermError::NotBijection));
    }

    #[test]
    fn composition_order() {
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn cycle_type_parse() {
        let c = CycleType::parse("2^1 1^2").unwrap();
        assert_eq!(c.entries(), &[(2, 1), (1, 2)]);
        assert_eq!(c.total(), 4);
        assert_eq!(CycleType::parse("5 5").unwrap(), CycleType::from_pairs([(5, 2)]));
        assert!(CycleType::parse("").is_none());
        assert!(CycleType::parse("0^2").is_none());
    }

    #[test]
    fn symmetric_group_closure() {
        let a = Permutation::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert_eq!(group_elements(4, &[&a, &b], 1000).unwrap().len(), 24);
        assert_eq!(group_elements(4, &[&a, &b], 10), Err(PermError::GroupTooLarge(10)));
    }

    #[test]
    fn canonical_pair_is_conjugation_invariant() {
        let a = Permutation::from_cycles(5, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![3, 4]]).unwrap();
        let c = Permutation::from_cycles(5, &[vec![1, 5, 2], vec![3, 4]]).unwrap();
        assert_eq!(canonical_pair(&a, &b), canonical_pair(&a.conjugate_by(&c), &b.conjugate_by(&c)));
        assert_ne!(canonical_pair(&a, &b), canonical_pair(&b, &a));
    }
}

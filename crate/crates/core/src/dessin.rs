//! Dessins d'enfants as transitive permutation pairs.
//!
//! Edges are labeled `0..n` internally and `1..=n` in every external format.
//! `alpha` rotates edges around black vertices, `beta` around white vertices
//! and `gamma = (alpha·beta)⁻¹` around faces, with products read left to
//! right (`alpha` applied first).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{group_elements, orbits, CycleType, PermError, Permutation};

/// Default bound on the number of group elements enumerated by breadth-first closure.
pub const DEFAULT_GROUP_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DessinError {
    #[error("alpha has degree {0} but beta has degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("dessin must have at least one edge")]
    NoEdges,
    #[error("permutation pair is not transitive; orbits: {}", format_orbits(.0))]
    Intransitive(Vec<Vec<usize>>),
    #[error("invalid genus: B+W+F-n = {0} gives a negative or non-integral genus")]
    BadGenus(i64),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn format_orbits(orbits: &[Vec<usize>]) -> String {
    let parts: Vec<String> = orbits
        .iter()
        .map(|o| {
            let labels: Vec<String> = o.iter().map(usize::to_string).collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect();
    parts.join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dessin {
    alpha: Permutation,
    beta: Permutation,
    gamma: Permutation,
}

impl Dessin {
    pub fn new(alpha: Permutation, beta: Permutation) -> Result<Self, DessinError> {
        if alpha.degree() != beta.degree() {
            return Err(DessinError::DegreeMismatch(alpha.degree(), beta.degree()));
        }
        let n = alpha.degree();
        if n == 0 {
            return Err(DessinError::NoEdges);
        }
        let orbs = orbits(n, &[&alpha, &beta]);
        if orbs.len() > 1 {
            let one_based = orbs.into_iter().map(|o| o.into_iter().map(|p| p + 1).collect()).collect();
            return Err(DessinError::Intransitive(one_based));
        }
        let gamma = alpha.then(&beta).inverse();
        Ok(Self { alpha, beta, gamma })
    }

    /// Builds from 1-based cycle lists.
    pub fn from_cycles(n_edges: usize, alpha: &[Vec<usize>], beta: &[Vec<usize>]) -> Result<Self, DessinError> {
        Self::new(Permutation::from_cycles(n_edges, alpha)?, Permutation::from_cycles(n_edges, beta)?)
    }

    pub fn n_edges(&self) -> usize {
        self.alpha.degree()
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn gamma(&self) -> &Permutation {
        &self.gamma
    }

    /// White vertices have valency at most two.
    pub fn is_clean(&self) -> bool {
        self.beta.then(&self.beta).is_identity()
    }

    pub fn passport(&self) -> Passport {
        Passport {
            black: self.alpha.cycle_type(),
            white: self.beta.cycle_type(),
            faces: self.gamma.cycle_type(),
        }
    }

    pub fn signature(&self) -> Result<Signature, DessinError> {
        let b = self.alpha.cycle_count();
        let w = self.beta.cycle_count();
        let f = self.gamma.cycle_count();
        let euler = b as i64 + w as i64 + f as i64 - self.n_edges() as i64;
        let twice_genus = 2 - euler;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(DessinError::BadGenus(euler));
        }
        Ok(Signature { black: b, white: w, faces: f, genus: (twice_genus / 2) as usize })
    }

    pub fn genus(&self) -> Result<usize, DessinError> {
        Ok(self.signature()?.genus)
    }

    /// Relabels the edges by `c` (conjugates both generators).
    pub fn relabel(&self, c: &Permutation) -> Self {
        Self::new(self.alpha.conjugate_by(c), self.beta.conjugate_by(c)).expect("relabeling preserves transitivity")
    }

    /// Canonical form of the pair under relabeling; equal iff isomorphic dessins.
    pub fn canonical_key(&self) -> (Vec<u32>, Vec<u32>) {
        crate::perm::canonical_pair(&self.alpha, &self.beta)
    }

    /// All elements of `⟨alpha, beta⟩`, identity first.
    pub fn group_elements(&self, cap: usize) -> Result<Vec<Permutation>, DessinError> {
        Ok(group_elements(self.n_edges(), &[&self.alpha, &self.beta], cap)?)
    }

    pub fn monodromy_group(&self, cap: usize) -> Result<GroupSummary, DessinError> {
        let elements = self.group_elements(cap)?;
        let abelian = self.alpha.then(&self.beta) == self.beta.then(&self.alpha);
        Ok(GroupSummary::from_elements(&elements, abelian))
    }

    pub fn to_json(&self) -> DessinJson {
        DessinJson {
            edges: self.n_edges(),
            alpha: self.alpha.nontrivial_cycles_one_based(),
            beta: self.beta.nontrivial_cycles_one_based(),
        }
    }

    /// Graphviz drawing: black vertices are alpha-cycles, white vertices are
    /// beta-cycles, each edge label joins the two vertices containing it.
    pub fn to_dot(&self) -> String {
        let n = self.n_edges();
        let mut black_of = vec![0; n];
        let mut white_of = vec![0; n];
        let black = self.alpha.cycles();
        let white = self.beta.cycles();
        for (k, c) in black.iter().enumerate() {
            for &e in c {
                black_of[e] = k;
            }
        }
        for (k, c) in white.iter().enumerate() {
            for &e in c {
                white_of[e] = k;
            }
        }
        let mut out = String::from("graph dessin {\n");
        for k in 0..black.len() {
            out.push_str(&format!("  b{k} [shape=circle, style=filled, fillcolor=black, label=\"\"];\n"));
        }
        for k in 0..white.len() {
            out.push_str(&format!("  w{k} [shape=circle, style=filled, fillcolor=white, label=\"\"];\n"));
        }
        for e in 0..n {
            out.push_str(&format!("  b{} -- w{} [label=\"{}\"];\n", black_of[e], white_of[e], e + 1));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.alpha, self.beta)
    }
}

/// On-disk form: `{ "edges": 9, "alpha": [[1,2,4,8,7,3],[5,9,6]], "beta": [[2,5],...] }`.
/// Fixed points may be omitted on input and are omitted on output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinJson {
    pub edges: usize,
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
}

impl TryFrom<&DessinJson> for Dessin {
    type Error = DessinError;

    fn try_from(j: &DessinJson) -> Result<Self, Self::Error> {
        Dessin::from_cycles(j.edges, &j.alpha, &j.beta)
    }
}

/// Cycle structures `[C_alpha, C_beta, C_gamma]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passport {
    pub black: CycleType,
    pub white: CycleType,
    pub faces: CycleType,
}

impl Passport {
    pub fn new(black: CycleType, white: CycleType, faces: CycleType) -> Self {
        Self { black, white, faces }
    }

    /// Parses `"[6^1 3^1, 2^4 1^1, 6^1 3^1]"` (brackets optional).
    pub fn parse(text: &str) -> Option<Self> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return None;
        }
        Some(Self {
            black: CycleType::parse(parts[0])?,
            white: CycleType::parse(parts[1])?,
            faces: CycleType::parse(parts[2])?,
        })
    }

    /// `B + W + F - n` computed from the cycle counts, if all entries have
    /// the same total `n`.
    pub fn euler_characteristic(&self) -> Option<i64> {
        let n = self.black.total();
        if self.white.total() != n || self.faces.total() != n {
            return None;
        }
        Some(self.black.count() as i64 + self.white.count() as i64 + self.faces.count() as i64 - n as i64)
    }
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.black, self.white, self.faces)
    }
}

impl Serialize for Passport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub black: usize,
    pub white: usize,
    pub faces: usize,
    pub genus: usize,
}

/// Order statistics of a finite permutation group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub abelian: bool,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<usize, usize>,
    /// Best-effort name from the fingerprint table; not an isomorphism proof.
    pub name: Option<String>,
}

impl GroupSummary {
    pub fn from_elements(elements: &[Permutation], abelian: bool) -> Self {
        let fingerprint = Fingerprint::of(elements);
        let name = identify(&fingerprint, abelian);
        Self { order: fingerprint.order, abelian, order_histogram: fingerprint.histogram, name }
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint { order: self.order, histogram: self.order_histogram.clone() }
    }
}

/// Group order plus element-order histogram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub histogram: BTreeMap<usize, usize>,
}

impl Fingerprint {
    pub fn of<'a>(elements: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut histogram = BTreeMap::new();
        let mut order = 0;
        for e in elements {
            order += 1;
            *histogram.entry(e.order()).or_default() += 1;
        }
        Self { order, histogram }
    }
}

struct NamedGroup {
    name: &'static str,
    fingerprint: Fingerprint,
}

fn named_table() -> &'static [NamedGroup] {
    static TABLE: OnceLock<Vec<NamedGroup>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let build = |name: &'static str, degree: usize, gens: &[&[&[usize]]]| {
            let perms: Vec<Permutation> = gens
                .iter()
                .map(|cycles| {
                    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
                    Permutation::from_cycles(degree, &cycles).expect("table generator")
                })
                .collect();
            let refs: Vec<&Permutation> = perms.iter().collect();
            let elements = group_elements(degree, &refs, 10_000).expect("table group");
            NamedGroup { name, fingerprint: Fingerprint::of(&elements) }
        };
        vec![
            build("A5", 5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]]),
            build("S6", 6, &[&[&[1, 2, 3, 4, 5, 6]], &[&[1, 2]]]),
            build("Z3^2:Z2^2", 6, &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5, 6]], &[&[4, 5]]]),
            build(
                "S3 wr S3",
                9,
                &[&[&[1, 2, 3]], &[&[1, 2]], &[&[1, 4, 7], &[2, 5, 8], &[3, 6, 9]], &[&[1, 4], &[2, 5], &[3, 6]]],
            ),
        ]
    })
}

pub(crate) fn identify(fp: &Fingerprint, abelian: bool) -> Option<String> {
    let n = fp.order;
    let max_order = fp.histogram.keys().copied().max().unwrap_or(1);
    if max_order == n {
        return Some(format!("Z{n}"));
    }
    if !abelian && n.is_multiple_of(2) && n >= 6 {
        let m = n / 2;
        let involutions = fp.histogram.get(&2).copied().unwrap_or(0);
        let expected = if m.is_multiple_of(2) { m + 1 } else { m };
        if max_order == m && involutions == expected {
            return Some(format!("D{m}"));
        }
    }
    named_table().iter().find(|g| &g.fingerprint == fp).map(|g| g.name.to_string())
}

/// The torus dessin `(1,2,4,8,7,3)(5,9,6)`, `(2,5)(3,6)(4,7)(8,9)` whose
/// stabilizer geometries are the two Mermin squares.
pub fn mermin_dessin() -> Dessin {
    Dessin::from_cycles(
        9,
        &[vec![1, 2, 4, 8, 7, 3], vec![5, 9, 6]],
        &[vec![2, 5], vec![3, 6], vec![4, 7], vec![8, 9]],
    )
    .expect("valid dessin")
}

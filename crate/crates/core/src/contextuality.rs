//! Parity proofs of contextuality, CHSH squares and exhaustive censuses over
//! the phase-free Pauli observables.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{enumerate_observables, symplectic_commute, PauliError, PauliOperator};
use crate::parallel::with_threads;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("{0} and {1} do not commute")]
    NonCommuting(PauliOperator, PauliOperator),
    #[error("line product {0} is not proportional to the identity")]
    NotIdentity(PauliOperator),
    #[error("line product is an imaginary multiple of the identity ({0})")]
    ImaginaryProduct(PauliOperator),
    #[error("empty line")]
    EmptyLine,
    #[error("observable {0} must be written without a sign or phase")]
    SignedObservable(PauliOperator),
    #[error("observable {0} is listed twice")]
    DuplicateObservable(PauliOperator),
    #[error("observable {0} lies on no line")]
    UncoveredObservable(PauliOperator),
    #[error("line {line} refers to index {index}, but there are only {len} observables")]
    BadIndex { line: usize, index: usize, len: usize },
    #[error("line {0} repeats an observable")]
    RepeatedInLine(usize),
    #[error("CHSH quadruple violates the square geometry: {0}")]
    NotASquare(String),
    #[error("configuration is not a 3x3 grid: {0}")]
    NotAGrid(String),
    #[error("qubit count {0} is not supported here")]
    QubitRange(usize),
}

/// Sign of the product of a commuting line of observables.
///
/// The product is order-independent because the operators commute pairwise.
pub fn line_sign(line: &[PauliOperator]) -> Result<i8, ContextError> {
    let first = line.first().ok_or(ContextError::EmptyLine)?;
    for (k, a) in line.iter().enumerate() {
        for b in &line[k + 1..] {
            if !a.commutes(b)? {
                return Err(ContextError::NonCommuting(*a, *b));
            }
        }
    }
    let mut product = PauliOperator::identity(first.n_qubits());
    for op in line {
        product = product.multiply(op)?;
    }
    if !product.is_identity_up_to_phase() {
        return Err(ContextError::NotIdentity(product));
    }
    match product.phase_exponent() {
        0 => Ok(1),
        2 => Ok(-1),
        _ => Err(ContextError::ImaginaryProduct(product)),
    }
}

/// Observables arranged in contexts (lines) of commuting operators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MagicConfiguration {
    observables: Vec<PauliOperator>,
    lines: Vec<Vec<usize>>,
    line_signs: Vec<i8>,
}

/// JSON form: `{ "observables": ["XX","YY",...], "lines": [[0,1,2], ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagicConfigurationJson {
    pub observables: Vec<PauliOperator>,
    pub lines: Vec<Vec<usize>>,
}

impl MagicConfiguration {
    pub fn new(observables: Vec<PauliOperator>, lines: Vec<Vec<usize>>) -> Result<Self, ContextError> {
        let mut seen = BTreeSet::new();
        let n_qubits = observables.first().map(PauliOperator::n_qubits);
        for op in &observables {
            if op.display_phase() != 0 {
                return Err(ContextError::SignedObservable(*op));
            }
            if Some(op.n_qubits()) != n_qubits {
                return Err(PauliError::QubitMismatch(n_qubits.unwrap_or(0), op.n_qubits()).into());
            }
            if !seen.insert(op.bits()) {
                return Err(ContextError::DuplicateObservable(*op));
            }
        }
        let mut covered = vec![false; observables.len()];
        let mut line_signs = Vec::with_capacity(lines.len());
        for (k, line) in lines.iter().enumerate() {
            let mut in_line = BTreeSet::new();
            for &index in line {
                if index >= observables.len() {
                    return Err(ContextError::BadIndex { line: k, index, len: observables.len() });
                }
                if !in_line.insert(index) {
                    return Err(ContextError::RepeatedInLine(k));
                }
                covered[index] = true;
            }
            let ops: Vec<PauliOperator> = line.iter().map(|&i| observables[i]).collect();
            line_signs.push(line_sign(&ops)?);
        }
        if let Some(i) = covered.iter().position(|&c| !c) {
            return Err(ContextError::UncoveredObservable(observables[i]));
        }
        Ok(Self { observables, lines, line_signs })
    }

    pub fn from_json(j: &MagicConfigurationJson) -> Result<Self, ContextError> {
        Self::new(j.observables.clone(), j.lines.clone())
    }

    pub fn to_json(&self) -> MagicConfigurationJson {
        MagicConfigurationJson { observables: self.observables.clone(), lines: self.lines.clone() }
    }

    /// Parses rows of observable strings, e.g. `[["IX","XX","XI"], ...]`,
    /// registering observables in order of first appearance.
    pub fn from_named_lines(lines: &[&[&str]]) -> Result<Self, ContextError> {
        let mut observables: Vec<PauliOperator> = Vec::new();
        let mut index_lines = Vec::new();
        for line in lines {
            let mut idx = Vec::new();
            for name in *line {
                let op: PauliOperator = name.parse()?;
                let i = match observables.iter().position(|o| *o == op) {
                    Some(i) => i,
                    None => {
                        observables.push(op);
                        observables.len() - 1
                    }
                };
                idx.push(i);
            }
            index_lines.push(idx);
        }
        Self::new(observables, index_lines)
    }

    pub fn observables(&self) -> &[PauliOperator] {
        &self.observables
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line_signs(&self) -> &[i8] {
        &self.line_signs
    }

    pub fn line_observables(&self, line: usize) -> Vec<PauliOperator> {
        self.lines[line].iter().map(|&i| self.observables[i]).collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.observables.first().map_or(0, PauliOperator::n_qubits)
    }

    /// Same configuration with observables sorted canonically and lines
    /// (sorted internally) listed in lexicographic order.
    pub fn canonicalized(&self) -> Self {
        let mut order: Vec<usize> = (0..self.observables.len()).collect();
        order.sort_by_key(|&i| self.observables[i].bits());
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let observables = order.iter().map(|&i| self.observables[i]).collect();
        let mut lines: Vec<(Vec<usize>, i8)> = self
            .lines
            .iter()
            .zip(&self.line_signs)
            .map(|(l, &s)| {
                let mut l: Vec<usize> = l.iter().map(|&i| new_index[i]).collect();
                l.sort_unstable();
                (l, s)
            })
            .collect();
        lines.sort();
        let (lines, line_signs) = lines.into_iter().unzip();
        Self { observables, lines, line_signs }
    }
}

/// Outcome of the parity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagicCertificate {
    pub magic: bool,
    /// number of lines through each observable
    pub occurrences: Vec<usize>,
    pub all_even: bool,
    pub line_signs: Vec<i8>,
    pub sign_product: i8,
}

/// Magic iff every observable lies on an even number of lines and the line
/// signs multiply to −1: no assignment of ±1 values can then reproduce all
/// line products.
pub fn is_magic(config: &MagicConfiguration) -> MagicCertificate {
    let mut occurrences = vec![0; config.observables.len()];
    for line in &config.lines {
        for &i in line {
            occurrences[i] += 1;
        }
    }
    let all_even = occurrences.iter().all(|c| c % 2 == 0);
    let sign_product = config.line_signs.iter().product();
    MagicCertificate {
        magic: all_even && sign_product == -1,
        occurrences,
        all_even,
        line_signs: config.line_signs.clone(),
        sign_product,
    }
}

/// Four observables on the corners of a square: adjacent corners commute,
/// opposite corners anticommute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChshQuadruple {
    sigma: [PauliOperator; 4],
}

impl ChshQuadruple {
    pub fn new(sigma: [PauliOperator; 4]) -> Result<Self, ContextError> {
        for k in 0..4 {
            let (a, b) = (sigma[k], sigma[(k + 1) % 4]);
            if !a.commutes(&b)? {
                return Err(ContextError::NotASquare(format!("adjacent {a} and {b} anticommute")));
            }
        }
        for k in 0..2 {
            let (a, b) = (sigma[k], sigma[k + 2]);
            if a.commutes(&b)? {
                return Err(ContextError::NotASquare(format!("opposite {a} and {b} commute")));
            }
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> &[PauliOperator; 4] {
        &self.sigma
    }
}

/// Dense `C = σ1σ2 + σ2σ3 + σ3σ4 − σ4σ1`.
pub fn chsh_operator(sigma: &[PauliOperator; 4]) -> Result<DMatrix<Complex64>, ContextError> {
    let m: Vec<DMatrix<Complex64>> = sigma.iter().map(|s| s.dense_matrix()).collect::<Result<_, _>>()?;
    Ok(&m[0] * &m[1] + &m[1] * &m[2] + &m[2] * &m[3] - &m[3] * &m[0])
}

/// Operator norm of a Hermitian matrix (largest absolute eigenvalue).
pub fn hermitian_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().symmetric_eigenvalues().iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// `‖C‖` for the square. Limited to three qubits.
pub fn chsh_norm(q: &ChshQuadruple) -> Result<f64, ContextError> {
    let n = q.sigma[0].n_qubits();
    if n > 3 {
        return Err(ContextError::QubitRange(n));
    }
    Ok(hermitian_norm(&chsh_operator(&q.sigma)?))
}

/// Result of an exhaustive search, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census<T> {
    pub count: usize,
    pub members: Vec<T>,
}

/// All unordered 4-sets of distinct observables that form a CHSH square
/// under some cyclic labeling. Members are labeled with σ1 the least
/// observable, σ3 its anticommuting partner and σ2 < σ4.
pub fn census_squares(n: usize, threads: usize) -> Result<Census<ChshQuadruple>, ContextError> {
    if !(1..=3).contains(&n) {
        return Err(ContextError::QubitRange(n));
    }
    let obs = enumerate_observables(n)?;
    let m = obs.len();
    let comm: Vec<Vec<bool>> =
        obs.iter().map(|a| obs.iter().map(|b| symplectic_commute(a.bits(), b.bits())).collect()).collect();
    let per_first: Vec<Vec<ChshQuadruple>> = with_threads(threads, || {
        (0..m)
            .into_par_iter()
            .map(|i| {
                let mut found = Vec::new();
                for j in i + 1..m {
                    for k in j + 1..m {
                        for l in k + 1..m {
                            if let Some(order) = square_labeling(&comm, [i, j, k, l]) {
                                found.push(ChshQuadruple { sigma: order.map(|x| obs[x]) });
                            }
                        }
                    }
                }
                found
            })
            .collect()
    });
    let members: Vec<ChshQuadruple> = per_first.into_iter().flatten().collect();
    Ok(Census { count: members.len(), members })
}

/// Cyclic labeling of a sorted 4-set as a square, if one exists: the two
/// anticommuting pairs must form a perfect matching and every other pair
/// must commute.
fn square_labeling(comm: &[Vec<bool>], q: [usize; 4]) -> Option<[usize; 4]> {
    let [a, b, c, d] = q;
    let matchings = [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))];
    let anti = |(p, r): (usize, usize)| !comm[p][r];
    let mut diagonals = None;
    for (k, &(e, f)) in matchings.iter().enumerate() {
        match (anti(e), anti(f)) {
            (true, true) if diagonals.is_none() => diagonals = Some(k),
            (false, false) => {}
            _ => return None,
        }
    }
    let ((p, r), (s, t)) = matchings[diagonals?];
    // p is the least element; its partner r sits opposite.
    Some([p, s, r, t])
}

/// Pentagram census summary: every pentagram-shaped configuration found,
/// and the magic ones.
#[derive(Debug, Clone)]
pub struct PentagramCensus {
    /// 4-element commuting lines with product ±III
    pub line_count: usize,
    /// configurations with the pentagram incidence pattern
    pub shaped: usize,
    /// the magic ones, canonically sorted
    pub magic: Census<MagicConfiguration>,
}

/// Three-qubit Mermin pentagrams: ten observables on five lines of four, any
/// two lines meeting in exactly one observable, each observable on two lines.
pub fn census_pentagrams(threads: usize) -> Result<PentagramCensus, ContextError> {
    let obs = enumerate_observables(3)?;
    let lines = pentagram_lines(&obs);
    let masks: Vec<u64> = lines.iter().map(|(m, _)| *m).collect();
    let meets: Vec<Vec<usize>> = (0..masks.len())
        .map(|a| (a + 1..masks.len()).filter(|&b| (masks[a] & masks[b]).count_ones() == 1).collect())
        .collect();
    let per_first: Vec<(usize, Vec<MagicConfiguration>)> = with_threads(threads, || {
        (0..masks.len())
            .into_par_iter()
            .map(|first| {
                let mut shaped = 0;
                let mut magic = Vec::new();
                let mut chosen = vec![first];
                extend_pentagram(&masks, &meets, &mut chosen, &mut |ch| {
                    shaped += 1;
                    let sign: i8 = ch.iter().map(|&l| lines[l].1).product();
                    if sign == -1 {
                        magic.push(pentagram_config(&obs, &masks, ch));
                    }
                });
                (shaped, magic)
            })
            .collect()
    });
    let shaped = per_first.iter().map(|(s, _)| s).sum();
    let mut members: Vec<MagicConfiguration> = per_first.into_iter().flat_map(|(_, m)| m).collect();
    members.sort_by(|a, b| config_key(a).cmp(&config_key(b)));
    Ok(PentagramCensus { line_count: lines.len(), shaped, magic: Census { count: members.len(), members } })
}

fn config_key(c: &MagicConfiguration) -> (Vec<(u64, u64)>, &[Vec<usize>]) {
    (c.observables.iter().map(PauliOperator::bits).collect(), &c.lines)
}

/// Lines as bit masks over `obs` together with their signs.
fn pentagram_lines(obs: &[PauliOperator]) -> Vec<(u64, i8)> {
    let m = obs.len();
    let comm = |a: usize, b: usize| symplectic_commute(obs[a].bits(), obs[b].bits());
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !comm(a, b) {
                continue;
            }
            for c in b + 1..m {
                if !comm(a, c) || !comm(b, c) {
                    continue;
                }
                for d in c + 1..m {
                    if !comm(a, d) || !comm(b, d) || !comm(c, d) {
                        continue;
                    }
                    let (x, z) = [a, b, c, d]
                        .iter()
                        .fold((0, 0), |(x, z), &i| (x ^ obs[i].x_mask(), z ^ obs[i].z_mask()));
                    if x != 0 || z != 0 {
                        continue;
                    }
                    let ops = [obs[a], obs[b], obs[c], obs[d]];
                    let sign = line_sign(&ops).expect("commuting line with trivial symplectic sum");
                    out.push(((1u64 << a) | (1 << b) | (1 << c) | (1 << d), sign));
                }
            }
        }
    }
    out
}

fn extend_pentagram(
    masks: &[u64],
    meets: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == 5 {
        emit(chosen);
        return;
    }
    let last = *chosen.last().expect("non-empty");
    // Intersection points already used by earlier pairs.
    let mut used = 0u64;
    for (k, &a) in chosen.iter().enumerate() {
        for &b in &chosen[k + 1..] {
            used |= masks[a] & masks[b];
        }
    }
    'candidate: for &next in &meets[last] {
        let mut hits = 0u64;
        for &c in chosen.iter() {
            let meet = masks[c] & masks[next];
            if meet.count_ones() != 1 || meet & (used | hits) != 0 {
                continue 'candidate;
            }
            hits |= meet;
        }
        chosen.push(next);
        extend_pentagram(masks, meets, chosen, emit);
        chosen.pop();
    }
}

fn pentagram_config(obs: &[PauliOperator], masks: &[u64], chosen: &[usize]) -> MagicConfiguration {
    let union = chosen.iter().fold(0u64, |acc, &l| acc | masks[l]);
    let points: Vec<usize> = (0..obs.len()).filter(|&i| union >> i & 1 == 1).collect();
    let lines: Vec<Vec<usize>> = chosen
        .iter()
        .map(|&l| points.iter().enumerate().filter(|&(_, &p)| masks[l] >> p & 1 == 1).map(|(k, _)| k).collect())
        .collect();
    let observables = points.iter().map(|&p| obs[p]).collect();
    MagicConfiguration::new(observables, lines).expect("census lines are valid").canonicalized()
}

/// Rows and columns of a 3×3 grid configuration, as `(rows, columns)` line
/// indices with `cell(r, c)` the unique shared observable.
pub fn grid_structure(grid: &MagicConfiguration) -> Result<([usize; 3], [usize; 3], [[usize; 3]; 3]), ContextError> {
    let lines = grid.lines();
    if grid.observables().len() != 9 || lines.len() != 6 || lines.iter().any(|l| l.len() != 3) {
        return Err(ContextError::NotAGrid("need 9 observables and 6 lines of 3".into()));
    }
    let shared = |a: usize, b: usize| -> Vec<usize> {
        lines[a].iter().copied().filter(|p| lines[b].contains(p)).collect()
    };
    let rows: Vec<usize> = (0..6).filter(|&l| l == 0 || shared(0, l).is_empty()).collect();
    let cols: Vec<usize> = (0..6).filter(|l| !rows.contains(l)).collect();
    if rows.len() != 3 || cols.len() != 3 {
        return Err(ContextError::NotAGrid("lines do not split into three rows and three columns".into()));
    }
    let mut cells = [[0usize; 3]; 3];
    for (r, &row) in rows.iter().enumerate() {
        for (c, &col) in cols.iter().enumerate() {
            let s = shared(row, col);
            if s.len() != 1 {
                return Err(ContextError::NotAGrid(format!("row {row} and column {col} share {} points", s.len())));
            }
            cells[r][c] = s[0];
        }
    }
    for (k, &a) in rows.iter().enumerate() {
        for &b in &rows[k + 1..] {
            if !shared(a, b).is_empty() {
                return Err(ContextError::NotAGrid("two rows intersect".into()));
            }
        }
    }
    Ok(([rows[0], rows[1], rows[2]], [cols[0], cols[1], cols[2]], cells))
}

/// The nine squares obtained by picking two rows and two columns of a grid.
pub fn embedded_squares(grid: &MagicConfiguration) -> Result<Vec<ChshQuadruple>, ContextError> {
    let (_, _, cells) = grid_structure(grid)?;
    let obs = grid.observables();
    let mut out = Vec::with_capacity(9);
    for r1 in 0..3 {
        for r2 in r1 + 1..3 {
            for c1 in 0..3 {
                for c2 in c1 + 1..3 {
                    let corners = [cells[r1][c1], cells[r1][c2], cells[r2][c2], cells[r2][c1]];
                    out.push(ChshQuadruple::new(corners.map(|i| obs[i]))?);
                }
            }
        }
    }
    Ok(out)
}

/// A Mermin square whose middle column is `XX, YY, ZZ`.
pub fn mermin_square() -> MagicConfiguration {
    MagicConfiguration::from_named_lines(&[
        &["IX", "XX", "XI"],
        &["ZI", "ZZ", "IZ"],
        &["ZX", "YY", "XZ"],
        &["IX", "ZI", "ZX"],
        &["XX", "ZZ", "YY"],
        &["XI", "IZ", "XZ"],
    ])
    .expect("valid Mermin square")
}

/// The standard Mermin star on three qubits.
pub fn mermin_pentagram() -> MagicConfiguration {
    MagicConfiguration::from_named_lines(&[
        &["XXX", "XYY", "YXY", "YYX"],
        &["XII", "IXI", "IIX", "XXX"],
        &["XII", "IYI", "IIY", "XYY"],
        &["YII", "IXI", "IIY", "YXY"],
        &["YII", "IYI", "IIX", "YYX"],
    ])
    .expect("valid Mermin pentagram")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn line_signs() {
        assert_eq!(line_sign(&[p("IZ"), p("ZI"), p("ZZ")]), Ok(1));
        assert_eq!(line_sign(&[p("XX"), p("YY"), p("ZZ")]), Ok(-1));
        assert_eq!(line_sign(&[p("XX"), p("ZI")]), Err(ContextError::NonCommuting(p("XX"), p("ZI"))));
        assert!(matches!(line_sign(&[p("XX"), p("ZZ")]), Err(ContextError::NotIdentity(_))));
        assert_eq!(line_sign(&[]), Err(ContextError::EmptyLine));
        // iI·iI·... guarded even though Hermitian lines never produce it
        assert!(matches!(line_sign(&[p("iXX"), p("XX")]), Err(ContextError::ImaginaryProduct(_))));
    }

    #[test]
    fn mermin_square_is_magic_with_one_negative_line() {
        let sq = mermin_square();
        let cert = is_magic(&sq);
        assert!(cert.magic);
        assert_eq!(cert.line_signs.iter().filter(|&&s| s == -1).count(), 1);
        let squares = embedded_squares(&sq).unwrap();
        assert_eq!(squares.len(), 9);
        let (rows, cols, cells) = grid_structure(&sq).unwrap();
        assert_eq!((rows, cols), ([0, 1, 2], [3, 4, 5]));
        let corners: BTreeSet<usize> = [cells[0][0], cells[0][1], cells[1][1], cells[1][0]].into();
        let from_first: BTreeSet<usize> = squares[0].sigma().iter().map(|o| {
            sq.observables().iter().position(|x| x == o).unwrap()
        }).collect();
        assert_eq!(corners, from_first);
    }

    #[test]
    fn single_line_is_not_magic() {
        let c = MagicConfiguration::from_named_lines(&[&["IZ", "ZI", "ZZ"]]).unwrap();
        let cert = is_magic(&c);
        assert!(!cert.magic);
        assert!(!cert.all_even);
    }

    #[test]
    fn configuration_validation() {
        assert!(matches!(
            MagicConfiguration::new(vec![p("-XX")], vec![vec![0]]),
            Err(ContextError::SignedObservable(_))
        ));
        assert!(matches!(
            MagicConfiguration::new(vec![p("XX"), p("XX")], vec![vec![0, 1]]),
            Err(ContextError::DuplicateObservable(_))
        ));
        assert!(matches!(
            MagicConfiguration::new(vec![p("XX"), p("YY"), p("ZZ"), p("IZ")], vec![vec![0, 1, 2]]),
            Err(ContextError::UncoveredObservable(_))
        ));
        assert!(matches!(
            MagicConfiguration::new(vec![p("XX")], vec![vec![3]]),
            Err(ContextError::BadIndex { line: 0, index: 3, len: 1 })
        ));
    }

    #[test]
    fn standard_pentagram_is_magic() {
        let c = mermin_pentagram();
        assert_eq!(c.observables().len(), 10);
        let cert = is_magic(&c);
        assert!(cert.magic);
        assert!(cert.occurrences.iter().all(|&k| k == 2));
    }

    #[test]
    fn chsh_reference_square() {
        let q = ChshQuadruple::new([p("IX"), p("XI"), p("IZ"), p("ZI")]).unwrap();
        let norm = chsh_norm(&q).unwrap();
        assert!((norm - 2.0 * 2f64.sqrt()).abs() < 1e-9);
        assert!(ChshQuadruple::new([p("IX"), p("IZ"), p("XI"), p("ZI")]).is_err());
    }

    #[test]
    fn chsh_degenerate_repeated_operator() {
        let zz = p("ZZ");
        let c = chsh_operator(&[zz, zz, zz, zz]).unwrap();
        assert!((hermitian_norm(&c) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn squares_single_qubit() {
        assert_eq!(census_squares(1, 1).unwrap().count, 0);
        assert!(census_squares(4, 1).is_err());
    }

    #[test]
    fn grid_shape_errors() {
        assert!(matches!(embedded_squares(&mermin_pentagram()), Err(ContextError::NotAGrid(_))));
    }
}

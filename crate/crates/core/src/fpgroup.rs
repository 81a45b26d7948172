//! Finitely presented groups: Todd–Coxeter coset enumeration (HLT strategy),
//! low-index subgroup search, and the passage from coset actions to dessins.
//!
//! A letter is a column index: generator `g` is column `2g`, its inverse is
//! column `2g + 1`. Coset tables act on the right, so the action of a word is
//! read left to right, matching [`Permutation::then`].

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dessin::{Dessin, DessinError};
use crate::parallel::with_threads;
use crate::perm::{canonical_pair, group_elements, CycleType, PermError, Permutation};

/// Default upper bound for [`low_index_subgroups`].
pub const DEFAULT_MAX_INDEX: usize = 16;
/// Largest edge count for an unfiltered [`enumerate_dessins_direct`].
pub const MAX_DIRECT_UNFILTERED: usize = 8;
/// Largest edge count for a filtered [`enumerate_dessins_direct`].
pub const MAX_DIRECT_FILTERED: usize = 11;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("presentation syntax: {0}")]
    Syntax(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("coset enumeration exceeded {0} cosets without closing")]
    CosetCap(usize),
    #[error("max_cosets must be at least 1")]
    ZeroCap,
    #[error("requested index {requested} exceeds the configured cap {cap}")]
    IndexCap { requested: usize, cap: usize },
    #[error("coset table is not closed")]
    NotClosed,
    #[error("dessins need at least two generators")]
    TooFewGenerators,
    #[error("direct enumeration of {n} edges exceeds the cap of {cap}")]
    DirectCap { n: usize, cap: usize },
    #[error("white filter {0} is not an involution type")]
    NotInvolutionType(CycleType),
    #[error(transparent)]
    Dessin(#[from] DessinError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[inline]
fn inverse_letter(x: usize) -> usize {
    x ^ 1
}

/// A freely reduced word over columns.
pub type Word = Vec<usize>;

fn free_reduce(word: &[usize]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&inverse_letter(x)) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn invert_word(word: &[usize]) -> Word {
    word.iter().rev().map(|&x| inverse_letter(x)).collect()
}

/// Generators and relators. The first two generators play the roles of
/// `ρ0` (black vertices) and `ρ1` (white vertices) when tables are read as dessins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    subgroup: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let relators = relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        Self { generators, relators, subgroup: Vec::new() }
    }

    /// Parses `gens: r0,r1; rels: r1^2, (r0*r1)^4` with an optional
    /// `; subgroup: w1, w2` section.
    ///
    /// Words are products of factors joined by `*`; a factor is a generator
    /// name or a parenthesized word, optionally raised to an integer power
    /// (`^-1` inverts). `1` is the empty word and `u = v` stands for `u v⁻¹`.
    pub fn parse(text: &str) -> Result<Self, FpError> {
        let mut generators: Option<Vec<String>> = None;
        let mut rels_text = None;
        let mut sub_text = None;
        for section in text.split(';') {
            let section = section.trim();
            if section.is_empty() {
                continue;
            }
            let (key, body) = section
                .split_once(':')
                .ok_or_else(|| FpError::Syntax(format!("section {section:?} lacks a `key:` prefix")))?;
            match key.trim() {
                "gens" | "generators" => {
                    let names: Vec<String> =
                        body.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                    for n in &names {
                        if !n.chars().all(|c| c.is_alphanumeric() || c == '_') || n == "1" {
                            return Err(FpError::Syntax(format!("bad generator name {n:?}")));
                        }
                    }
                    generators = Some(names);
                }
                "rels" | "relators" | "relations" => rels_text = Some(body.to_string()),
                "subgroup" | "sub" => sub_text = Some(body.to_string()),
                other => return Err(FpError::Syntax(format!("unknown section {other:?}"))),
            }
        }
        let generators = generators.ok_or_else(|| FpError::Syntax("missing `gens:` section".into()))?;
        if generators.is_empty() {
            return Err(FpError::Syntax("no generators".into()));
        }
        let parse_list = |body: Option<String>| -> Result<Vec<Word>, FpError> {
            let Some(body) = body else { return Ok(Vec::new()) };
            split_top_level(&body)
                .into_iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_relation(&s, &generators))
                .collect()
        };
        let relators = parse_list(rels_text)?;
        let subgroup = parse_list(sub_text)?;
        let mut p = Self::new(generators, relators);
        p.subgroup = subgroup.iter().map(|w| free_reduce(w)).collect();
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Subgroup generators given in the text form, if any.
    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    pub fn n_columns(&self) -> usize {
        2 * self.generators.len()
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, FpError> {
        parse_relation(text, &self.generators)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = word
            .iter()
            .map(|&x| {
                let name = &self.generators[x / 2];
                if x % 2 == 0 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect();
        parts.join("*")
    }

    /// `C₂⁺ = ⟨ρ0, ρ1 | ρ1²⟩`, with `ρ2 = (ρ0ρ1)⁻¹` eliminated.
    pub fn cartographic() -> Self {
        Self::parse("gens: r0,r1; rels: r1^2").expect("static presentation")
    }

    /// `C₂⁺ / ⟨ρ2^k⟩ = ⟨ρ0, ρ1 | ρ1², (ρ0ρ1)^k⟩`.
    pub fn cartographic_face_quotient(k: usize) -> Self {
        Self::parse(&format!("gens: r0,r1; rels: r1^2, (r0*r1)^{k}")).expect("static presentation")
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "gens: {}; rels: {}", self.generators.join(","), rels.join(", "))?;
        if !self.subgroup.is_empty() {
            let sub: Vec<String> = self.subgroup.iter().map(|w| self.format_word(w)).collect();
            write!(f, "; subgroup: {}", sub.join(", "))?;
        }
        Ok(())
    }
}

fn split_top_level(body: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in body.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

fn parse_relation(text: &str, gens: &[String]) -> Result<Word, FpError> {
    match text.split_once('=') {
        Some((lhs, rhs)) => {
            let mut w = WordParser::new(lhs, gens).parse_all()?;
            w.extend(invert_word(&WordParser::new(rhs, gens).parse_all()?));
            Ok(free_reduce(&w))
        }
        None => Ok(free_reduce(&WordParser::new(text, gens).parse_all()?)),
    }
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    gens: &'a [String],
}

impl<'a> WordParser<'a> {
    fn new(text: &str, gens: &'a [String]) -> Self {
        Self { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, gens }
    }

    fn parse_all(mut self) -> Result<Word, FpError> {
        let w = self.word()?;
        if self.pos != self.chars.len() {
            return Err(FpError::Syntax(format!("unexpected {:?} at offset {}", self.chars[self.pos], self.pos)));
        }
        Ok(w)
    }

    fn word(&mut self) -> Result<Word, FpError> {
        let mut w = self.factor()?;
        while self.chars.get(self.pos) == Some(&'*') {
            self.pos += 1;
            w.extend(self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, FpError> {
        let base = match self.chars.get(self.pos) {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.chars.get(self.pos) != Some(&')') {
                    return Err(FpError::Syntax("missing `)`".into()));
                }
                self.pos += 1;
                w
            }
            Some(c) if c.is_alphanumeric() || *c == '_' => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "1" {
                    Vec::new()
                } else {
                    let g = self
                        .gens
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| FpError::UnknownGenerator(name.clone()))?;
                    vec![2 * g]
                }
            }
            Some(c) => return Err(FpError::Syntax(format!("unexpected {c:?} at offset {}", self.pos))),
            None => return Err(FpError::Syntax("unexpected end of word".into())),
        };
        if self.chars.get(self.pos) != Some(&'^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let exp_text: String = self.chars[start..self.pos].iter().collect();
        let exp: i64 = exp_text.parse().map_err(|_| FpError::Syntax(format!("bad exponent {exp_text:?}")))?;
        let unit = if exp < 0 { invert_word(&base) } else { base };
        let mut out = Vec::with_capacity(unit.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            out.extend_from_slice(&unit);
        }
        Ok(out)
    }
}

/// A closed coset table: `rows[c][x]` is the coset reached from `c` by column `x`.
/// Coset 0 is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetTable {
    rows: Vec<Vec<u32>>,
}

/// JSON export: generator names and one row per coset, with 1-based coset
/// numbers in column order `g1, g1^-1, g2, g2^-1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTableJson {
    pub generators: Vec<String>,
    pub columns: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn n_generators(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() / 2)
    }

    /// Right action of generator `g` on cosets.
    pub fn action(&self, g: usize) -> Permutation {
        Permutation::from_images(self.rows.iter().map(|r| r[2 * g]).collect()).expect("closed table column")
    }

    pub fn trace(&self, coset: usize, word: &[usize]) -> usize {
        word.iter().fold(coset, |c, &x| self.rows[c][x] as usize)
    }

    /// Every relator fixes every coset and each column pair is mutually inverse.
    pub fn verify(&self, p: &FinitePresentation) -> bool {
        let n = self.index();
        for c in 0..n {
            for x in 0..self.rows[c].len() {
                let d = self.rows[c][x] as usize;
                if d >= n || self.rows[d][inverse_letter(x)] as usize != c {
                    return false;
                }
            }
            if p.relators().iter().any(|r| self.trace(c, r) != c) {
                return false;
            }
        }
        p.subgroup().iter().all(|w| self.trace(0, w) == 0)
    }

    pub fn to_json(&self, p: &FinitePresentation) -> CosetTableJson {
        let columns = (0..p.n_columns())
            .map(|x| if x % 2 == 0 { p.generators[x / 2].clone() } else { format!("{}^-1", p.generators[x / 2]) })
            .collect();
        CosetTableJson {
            generators: p.generators.clone(),
            columns,
            table: self.rows.iter().map(|r| r.iter().map(|&c| c as usize + 1).collect()).collect(),
        }
    }

    /// Relabels cosets in order of first appearance scanning rows in order.
    fn standardized(&self) -> Self {
        let n = self.index();
        let mut label = vec![UNDEF; n];
        let mut order = vec![0usize];
        label[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for &d in &self.rows[c] {
                let d = d as usize;
                if label[d] == UNDEF {
                    label[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let rows = order.iter().map(|&c| self.rows[c].iter().map(|&d| label[d as usize]).collect()).collect();
        Self { rows }
    }
}

/// Todd–Coxeter enumeration of the cosets of `⟨subgroup_words⟩`, HLT style:
/// relators are traced from each live coset in turn, defining new cosets as
/// needed, with coincidences merged through a union–find queue.
pub fn coset_enumerate(
    p: &FinitePresentation,
    subgroup_words: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, FpError> {
    if max_cosets == 0 {
        return Err(FpError::ZeroCap);
    }
    let mut e = Enumerator::new(p.n_columns(), max_cosets);
    for w in subgroup_words {
        e.scan_and_fill(0, &free_reduce(w))?;
    }
    let mut c = 0;
    while c < e.table.len() {
        if e.is_live(c) {
            for r in p.relators() {
                e.scan_and_fill(c, r)?;
                if !e.is_live(c) {
                    break;
                }
            }
            if e.is_live(c) {
                for x in 0..p.n_columns() {
                    if e.table[c][x] == UNDEF {
                        e.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    let table = e.compact().standardized();
    debug_assert!(table.verify(&FinitePresentation { subgroup: subgroup_words.to_vec(), ..p.clone() }));
    Ok(table)
}

struct Enumerator {
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    cols: usize,
}

impl Enumerator {
    fn new(cols: usize, cap: usize) -> Self {
        Self { table: vec![vec![UNDEF; cols]], parent: vec![0], live: 1, cap, cols }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), FpError> {
        if self.live >= self.cap {
            return Err(FpError::CosetCap(self.cap));
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(d as u32);
        self.live += 1;
        self.table[c][x] = d as u32;
        self.table[d][inverse_letter(x)] = c as u32;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != root {
            let next = self.parent[k] as usize;
            self.parent[k] = root as u32;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
            self.live -= 1;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(dead) = queue.pop_front() {
            for x in 0..self.cols {
                let d = self.table[dead][x];
                if d == UNDEF {
                    continue;
                }
                let d = d as usize;
                let xi = inverse_letter(x);
                if self.table[d][xi] as usize == dead {
                    self.table[d][xi] = UNDEF;
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                if self.table[mu][x] != UNDEF {
                    let t = self.table[mu][x] as usize;
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][xi] != UNDEF {
                    let t = self.table[nu][xi] as usize;
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu as u32;
                    self.table[nu][xi] = mu as u32;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), FpError> {
        if word.is_empty() || !self.is_live(c) {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0;
        let mut j = word.len();
        loop {
            while i < j && self.table[f][word[i]] != UNDEF {
                f = self.table[f][word[i]] as usize;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.table[b][inverse_letter(word[j - 1])] != UNDEF {
                b = self.table[b][inverse_letter(word[j - 1])] as usize;
                j -= 1;
            }
            if i == j {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][word[i]] = b as u32;
                self.table[b][inverse_letter(word[i])] = f as u32;
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn compact(&mut self) -> CosetTable {
        let n = self.table.len();
        let mut new_index = vec![UNDEF; n];
        let mut k = 0u32;
        for c in 0..n {
            if self.is_live(c) {
                new_index[c] = k;
                k += 1;
            }
        }
        let mut rows = Vec::with_capacity(k as usize);
        for c in 0..n {
            if !self.is_live(c) {
                continue;
            }
            let mut row = Vec::with_capacity(self.cols);
            for x in 0..self.cols {
                let d = self.table[c][x];
                assert!(d != UNDEF, "closed table has no gaps");
                let r = self.rep(d as usize);
                row.push(new_index[r]);
            }
            rows.push(row);
        }
        CosetTable { rows }
    }
}

/// Permutation action of the first two generators, read as `(alpha, beta)`.
pub fn dessin_from_table(t: &CosetTable) -> Result<Dessin, FpError> {
    if t.n_generators() < 2 {
        return Err(FpError::TooFewGenerators);
    }
    if t.rows.iter().flatten().any(|&d| d == UNDEF) {
        return Err(FpError::NotClosed);
    }
    Ok(Dessin::new(t.action(0), t.action(1))?)
}

/// One coset table per conjugacy class of subgroups of index at most
/// `max_index`, ordered by index and then by table contents. Subgroup words
/// attached to the presentation are ignored.
///
/// Backtracking over partial tables in standard form: the first undefined
/// entry (row-major) is filled with each admissible existing coset or with
/// a fresh one, relator consequences are propagated, and branches whose
/// table is not minimal among its re-basings at other cosets are cut.
pub fn low_index_subgroups(
    p: &FinitePresentation,
    max_index: usize,
    threads: usize,
) -> Result<Vec<CosetTable>, FpError> {
    low_index_subgroups_capped(p, max_index, DEFAULT_MAX_INDEX, threads)
}

pub fn low_index_subgroups_capped(
    p: &FinitePresentation,
    max_index: usize,
    cap: usize,
    threads: usize,
) -> Result<Vec<CosetTable>, FpError> {
    if max_index > cap {
        return Err(FpError::IndexCap { requested: max_index, cap });
    }
    if max_index == 0 {
        return Ok(Vec::new());
    }
    let searcher = LowIndex::new(p, max_index);
    let root = Partial::new(p.n_columns(), max_index);
    let mut frontier = Vec::new();
    searcher.expand_to(&root, 64, &mut frontier);
    let mut found: Vec<CosetTable> = with_threads(threads, || {
        frontier
            .par_iter()
            .flat_map_iter(|node| {
                let mut out = Vec::new();
                searcher.search(node.clone(), &mut out);
                out
            })
            .collect()
    });
    found.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| a.cmp(b)));
    found.dedup();
    Ok(found)
}

#[derive(Clone)]
struct Partial {
    cols: usize,
    n: usize,
    table: Vec<u32>,
}

impl Partial {
    fn new(cols: usize, max: usize) -> Self {
        Self { cols, n: 1, table: vec![UNDEF; cols * max] }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.cols + x] = d as u32;
        self.table[d * self.cols + inverse_letter(x)] = c as u32;
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        (0..self.n * self.cols).find(|&k| self.table[k] == UNDEF).map(|k| (k / self.cols, k % self.cols))
    }

    fn to_table(&self) -> CosetTable {
        CosetTable { rows: (0..self.n).map(|c| self.table[c * self.cols..(c + 1) * self.cols].to_vec()).collect() }
    }
}

struct LowIndex {
    max: usize,
    cols: usize,
    /// `rotations[x]`: every cyclic rotation of every relator and its
    /// inverse that begins with letter `x`.
    rotations: Vec<Vec<Word>>,
    relators: Vec<Word>,
}

enum Scan {
    Closed,
    Open,
    Deduce(usize, usize, usize),
    Conflict,
}

impl LowIndex {
    fn new(p: &FinitePresentation, max: usize) -> Self {
        let cols = p.n_columns();
        let mut rotations = vec![Vec::new(); cols];
        let mut seen = HashSet::new();
        for r in p.relators() {
            for w in [r.clone(), invert_word(r)] {
                for k in 0..w.len() {
                    let rot: Word = w[k..].iter().chain(&w[..k]).copied().collect();
                    if seen.insert(rot.clone()) {
                        rotations[rot[0]].push(rot);
                    }
                }
            }
        }
        Self { max, cols, rotations, relators: p.relators().to_vec() }
    }

    fn scan(t: &Partial, c: usize, w: &[usize]) -> Scan {
        let mut f = c;
        let mut i = 0;
        while i < w.len() && t.get(f, w[i]) != UNDEF {
            f = t.get(f, w[i]) as usize;
            i += 1;
        }
        if i == w.len() {
            return if f == c { Scan::Closed } else { Scan::Conflict };
        }
        let mut b = c;
        let mut j = w.len();
        while j > i && t.get(b, inverse_letter(w[j - 1])) != UNDEF {
            b = t.get(b, inverse_letter(w[j - 1])) as usize;
            j -= 1;
        }
        if j == i {
            return Scan::Conflict;
        }
        if j == i + 1 {
            if t.get(b, inverse_letter(w[i])) != UNDEF {
                return Scan::Conflict;
            }
            return Scan::Deduce(f, w[i], b);
        }
        Scan::Open
    }

    /// Assigns `(c, x) = d` and propagates relator consequences.
    fn assign(&self, t: &mut Partial, c: usize, x: usize, d: usize) -> bool {
        let mut queue = VecDeque::from([(c, x, d)]);
        while let Some((c, x, d)) = queue.pop_front() {
            let cur = t.get(c, x);
            if cur != UNDEF {
                if cur as usize != d {
                    return false;
                }
                continue;
            }
            if t.get(d, inverse_letter(x)) != UNDEF {
                return false;
            }
            t.set(c, x, d);
            for (start, letter) in [(c, x), (d, inverse_letter(x))] {
                for w in &self.rotations[letter] {
                    match Self::scan(t, start, w) {
                        Scan::Conflict => return false,
                        Scan::Deduce(a, y, b) => queue.push_back((a, y, b)),
                        Scan::Closed | Scan::Open => {}
                    }
                }
            }
        }
        true
    }

    /// `false` if re-basing the table at some other coset gives a
    /// lexicographically smaller standard table on the entries known so far.
    fn is_canonical(&self, t: &Partial) -> bool {
        let mut map = vec![UNDEF; t.n];
        let mut inv = vec![UNDEF; t.n];
        'base: for s in 1..t.n {
            map.fill(UNDEF);
            inv.fill(UNDEF);
            map[s] = 0;
            inv[0] = s as u32;
            let mut next = 1u32;
            for new_c in 0..t.n {
                if new_c as u32 >= next {
                    continue 'base;
                }
                let old_c = inv[new_c] as usize;
                for x in 0..self.cols {
                    let orig = t.get(new_c, x);
                    let old_img = t.get(old_c, x);
                    if orig == UNDEF || old_img == UNDEF {
                        continue 'base;
                    }
                    let mut img = map[old_img as usize];
                    if img == UNDEF {
                        img = next;
                        map[old_img as usize] = next;
                        inv[next as usize] = old_img;
                        next += 1;
                    }
                    if img < orig {
                        return false;
                    }
                    if img > orig {
                        continue 'base;
                    }
                }
            }
        }
        true
    }

    fn children(&self, t: &Partial) -> Option<Vec<Partial>> {
        let (c, x) = t.first_undefined()?;
        let mut out = Vec::new();
        for d in 0..t.n {
            if t.get(d, inverse_letter(x)) != UNDEF {
                continue;
            }
            let mut child = t.clone();
            if self.assign(&mut child, c, x, d) && self.is_canonical(&child) {
                out.push(child);
            }
        }
        if t.n < self.max {
            let mut child = t.clone();
            child.n += 1;
            if self.assign(&mut child, c, x, t.n) && self.is_canonical(&child) {
                out.push(child);
            }
        }
        Some(out)
    }

    fn emit(&self, t: &Partial, out: &mut Vec<CosetTable>) {
        let table = t.to_table();
        if (0..t.n).all(|c| self.relators.iter().all(|r| table.trace(c, r) == c)) {
            out.push(table);
        }
    }

    fn search(&self, t: Partial, out: &mut Vec<CosetTable>) {
        match self.children(&t) {
            None => self.emit(&t, out),
            Some(children) => {
                for child in children {
                    self.search(child, out);
                }
            }
        }
    }

    /// Breadth-first expansion until the frontier holds `target` nodes, so the
    /// remaining subtrees can be searched in parallel. Completed tables are
    /// kept in the frontier as leaves.
    fn expand_to(&self, root: &Partial, target: usize, frontier: &mut Vec<Partial>) {
        let mut layer = vec![root.clone()];
        let mut leaves = Vec::new();
        while !layer.is_empty() && layer.len() < target {
            let mut next = Vec::new();
            for node in &layer {
                match self.children(node) {
                    None => leaves.push(node.clone()),
                    Some(children) => next.extend(children),
                }
            }
            layer = next;
        }
        frontier.extend(leaves);
        frontier.extend(layer);
    }
}

/// Passport and group-order constraints for [`enumerate_dessins_direct`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DessinFilter {
    pub black: Option<CycleType>,
    pub white: Option<CycleType>,
    pub faces: Option<CycleType>,
    pub group_order: Option<usize>,
}

impl DessinFilter {
    pub fn is_empty(&self) -> bool {
        self.black.is_none() && self.white.is_none() && self.faces.is_none() && self.group_order.is_none()
    }
}

/// All clean dessins with `n_edges` edges (β an involution, fixed points
/// allowed) up to relabeling, found by brute force over `α` for one
/// representative `β` of each involution class. Sorted by canonical form.
pub fn enumerate_dessins_direct(
    n_edges: usize,
    filter: &DessinFilter,
    threads: usize,
) -> Result<Vec<Dessin>, FpError> {
    let cap = if filter.is_empty() { MAX_DIRECT_UNFILTERED } else { MAX_DIRECT_FILTERED };
    if n_edges > cap {
        return Err(FpError::DirectCap { n: n_edges, cap });
    }
    if n_edges == 0 {
        return Ok(Vec::new());
    }
    let n = n_edges;
    let transpositions: Vec<usize> = match &filter.white {
        Some(w) => {
            if w.total() != n {
                return Ok(Vec::new());
            }
            if w.entries().iter().any(|&(l, _)| l > 2) {
                return Err(FpError::NotInvolutionType(w.clone()));
            }
            vec![w.entries().iter().find(|e| e.0 == 2).map_or(0, |e| e.1)]
        }
        None => (0..=n / 2).collect(),
    };
    let mut keys: Vec<(Vec<u32>, Vec<u32>)> = with_threads(threads, || {
        transpositions
            .par_iter()
            .flat_map(|&k| (0..n).into_par_iter().map(move |first| (k, first)))
            .flat_map_iter(|(k, first)| {
                let beta = standard_involution(n, k);
                let mut found = HashSet::new();
                for_each_permutation_with_first(n, first, |images| {
                    if let Some(key) = accept_pair(images, &beta, filter) {
                        found.insert(key);
                    }
                });
                found.into_iter()
            })
            .collect()
    });
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(a, b)| {
            Ok(Dessin::new(Permutation::from_images(a)?, Permutation::from_images(b)?)?)
        })
        .collect()
}

fn standard_involution(n: usize, transpositions: usize) -> Permutation {
    let cycles: Vec<Vec<usize>> = (0..transpositions).map(|t| vec![2 * t + 1, 2 * t + 2]).collect();
    Permutation::from_cycles(n, &cycles).expect("valid involution")
}

fn accept_pair(images: &[u32], beta: &Permutation, filter: &DessinFilter) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = images.len();
    let alpha = Permutation::from_images(images.to_vec()).ok()?;
    if let Some(black) = &filter.black {
        if &alpha.cycle_type() != black {
            return None;
        }
    }
    if let Some(faces) = &filter.faces {
        // gamma = (alpha beta)^-1 has the cycle type of alpha beta
        if &alpha.then(beta).cycle_type() != faces {
            return None;
        }
    }
    if crate::perm::orbits(n, &[&alpha, beta]).len() != 1 {
        return None;
    }
    if let Some(order) = filter.group_order {
        match group_elements(n, &[&alpha, beta], order + 1) {
            Ok(e) if e.len() == order => {}
            _ => return None,
        }
    }
    Some(canonical_pair(&alpha, beta))
}

/// Calls `f` on every permutation of `0..n` whose image of 0 is `first`
/// (Heap's algorithm on the remaining positions).
fn for_each_permutation_with_first(n: usize, first: usize, mut f: impl FnMut(&[u32])) {
    let mut images: Vec<u32> = Vec::with_capacity(n);
    images.push(first as u32);
    images.extend((0..n as u32).filter(|&v| v as usize != first));
    let m = n - 1;
    if m == 0 {
        f(&images);
        return;
    }
    let mut counters = vec![0usize; m];
    f(&images);
    let mut i = 1;
    while i < m {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            images.swap(1 + j, 1 + i);
            f(&images);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

//! Exact verification of Belyi functions `f = p/q` with coefficients in Q(√2).
//!
//! Convention: zeros of `f` are black vertices, zeros of `f − 1` white
//! vertices and poles face centers.

mod field;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dessin::{Dessin, Passport};
use crate::perm::CycleType;

pub use field::FieldElement;
pub use poly::Poly;

pub const MAX_COORDINATE_DEGREE: usize = 12;
const ROOT_TOLERANCE: f64 = 1e-12;
const MATCH_TOLERANCE: f64 = 1e-9;
const MAX_DENOMINATOR: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BelyiError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("numerator and denominator share the factor {0}")]
    NotCoprime(String),
    #[error("candidate is constant")]
    Constant,
    #[error("not a Belyi function: {0}")]
    NotBelyi(String),
    #[error("degree {degree} exceeds the coordinate cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("root iteration did not converge")]
    NoConvergence,
    #[error("invalid coefficient: {0}")]
    BadCoefficient(String),
}

/// A rational function `p/q` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BelyiCandidate {
    p: Poly,
    q: Poly,
}

impl BelyiCandidate {
    pub fn new(p: Poly, q: Poly) -> Result<Self, BelyiError> {
        if q.is_zero() {
            return Err(BelyiError::ZeroDenominator);
        }
        let g = p.gcd(&q);
        if !g.is_constant() {
            return Err(BelyiError::NotCoprime(g.to_string()));
        }
        let c = Self { p, q };
        if c.degree() == 0 || c.p.is_zero() {
            return Err(BelyiError::Constant);
        }
        Ok(c)
    }

    pub fn polynomial(p: Poly) -> Result<Self, BelyiError> {
        Self::new(p, Poly::one())
    }

    pub fn numerator(&self) -> &Poly {
        &self.p
    }

    pub fn denominator(&self) -> &Poly {
        &self.q
    }

    /// `max(deg p, deg q)`.
    pub fn degree(&self) -> usize {
        self.p.deg0().max(self.q.deg0())
    }

    /// Numerator of `f − 1`.
    pub fn p_minus_q(&self) -> Poly {
        self.p.sub(&self.q)
    }

    pub fn conj(&self) -> Self {
        Self { p: self.p.conj(), q: self.q.conj() }
    }

    pub fn to_json(&self) -> Result<CandidateJson, BelyiError> {
        let enc = |p: &Poly| p.coeffs().iter().map(coefficient_json).collect::<Result<Vec<_>, _>>();
        Ok(CandidateJson { num: enc(&self.p)?, den: enc(&self.q)? })
    }

    pub fn from_json(j: &CandidateJson) -> Result<Self, BelyiError> {
        let dec = |cs: &[[RationalJson; 2]]| -> Result<Poly, BelyiError> {
            Ok(Poly::new(cs.iter().map(|[a, b]| Ok(FieldElement::new(a.value()?, b.value()?))).collect::<Result<_, BelyiError>>()?))
        };
        let den = if j.den.is_empty() { Poly::one() } else { dec(&j.den)? };
        Self::new(dec(&j.num)?, den)
    }
}

impl fmt::Display for BelyiCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == Poly::one() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "({}) / ({})", self.p, self.q)
        }
    }
}

/// Candidate JSON: `{"num": [[a, b], ...], "den": [[a, b], ...]}`, lowest degree
/// first, each `[a, b]` meaning `a + b√2`. A rational is an integer, a
/// `[numerator, denominator]` pair or a `"n/d"` string; output uses pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub num: Vec<[RationalJson; 2]>,
    #[serde(default)]
    pub den: Vec<[RationalJson; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Integer(i64),
    Pair([i64; 2]),
    Text(String),
}

impl RationalJson {
    pub fn value(&self) -> Result<BigRational, BelyiError> {
        let make = |n: BigInt, d: BigInt| {
            if d.is_zero() {
                Err(BelyiError::BadCoefficient("zero denominator".into()))
            } else {
                Ok(BigRational::new(n, d))
            }
        };
        match self {
            Self::Integer(n) => Ok(BigRational::from_integer((*n).into())),
            Self::Pair([n, d]) => make((*n).into(), (*d).into()),
            Self::Text(s) => {
                let bad = || BelyiError::BadCoefficient(s.clone());
                let (n, d) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                make(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?)
            }
        }
    }
}

fn rational_json(r: &BigRational) -> Result<RationalJson, BelyiError> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(RationalJson::Pair([n, d])),
        _ => Ok(RationalJson::Text(r.to_string())),
    }
}

fn coefficient_json(c: &FieldElement) -> Result<[RationalJson; 2], BelyiError> {
    Ok([rational_json(c.a())?, rational_json(c.b())?])
}

/// Why a candidate fails the critical-value test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalWitness {
    /// Factor of `p'q − pq'` vanishing where `f ∉ {0, 1}` and `q ≠ 0`.
    Factor(String),
    /// `∞` is a critical point with finite value outside `{0, 1}`.
    Infinity { value: String, multiplicity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalCheck {
    pub ok: bool,
    pub witness: Option<CriticalWitness>,
}

/// Exact test that every critical value lies in `{0, 1, ∞}`: the numerator
/// of `f'` is stripped of all factors shared with `p·(p−q)·q` and must end up
/// constant. The point at infinity is checked by degree bookkeeping.
pub fn critical_values_ok(f: &BelyiCandidate) -> Result<CriticalCheck, BelyiError> {
    let (p, q) = (&f.p, &f.q);
    let n = p.derivative().mul(q).sub(&p.mul(&q.derivative()));
    if n.is_zero() {
        return Err(BelyiError::Constant);
    }
    let m = p.mul(&f.p_minus_q()).mul(q);
    let mut rest = n;
    loop {
        let g = rest.gcd(&m);
        if g.is_constant() {
            break;
        }
        rest = rest.exact_div(&g)?;
    }
    if !rest.is_constant() {
        return Ok(CriticalCheck { ok: false, witness: Some(CriticalWitness::Factor(rest.monic().to_string())) });
    }
    if p.deg0() == q.deg0() {
        let c = p.lead().expect("nonzero").checked_div(q.lead().expect("nonzero")).expect("nonzero");
        if !c.is_one() {
            let e = p.deg0() - p.sub(&q.scale(&c)).deg0();
            if e > 1 {
                return Ok(CriticalCheck {
                    ok: false,
                    witness: Some(CriticalWitness::Infinity { value: c.to_string(), multiplicity: e }),
                });
            }
        }
    }
    Ok(CriticalCheck { ok: true, witness: None })
}

fn profile(poly: &Poly, at_infinity: usize) -> Result<CycleType, BelyiError> {
    let mut lengths = poly.root_multiplicities()?;
    if at_infinity > 0 {
        lengths.push(at_infinity);
    }
    Ok(CycleType::from_lengths(lengths))
}

/// Ramification profiles over 0 (black), 1 (white) and ∞ (faces).
pub fn passport_of(f: &BelyiCandidate) -> Result<Passport, BelyiError> {
    let check = critical_values_ok(f)?;
    if !check.ok {
        return Err(BelyiError::NotBelyi(format!("{:?}", check.witness)));
    }
    let n = f.degree();
    let (dp, dq) = (f.p.deg0(), f.q.deg0());
    let pq = f.p_minus_q();
    Ok(Passport::new(
        profile(&f.p, dq.saturating_sub(dp))?,
        profile(&pq, n - pq.deg0())?,
        profile(&f.q, dp.saturating_sub(dq))?,
    ))
}

/// Passport equality; a necessary condition for `f` to realize `d`.
pub fn matches_dessin(f: &BelyiCandidate, d: &Dessin) -> Result<bool, BelyiError> {
    Ok(passport_of(f)? == d.passport())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootValue {
    Exact { value: String, a: String, b: String },
    Approximate { re: f64, im: f64 },
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Root {
    pub value: RootValue,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCoordinates {
    pub black: Vec<Root>,
    pub white: Vec<Root>,
    pub faces: Vec<Root>,
}

/// Roots of `p`, `p − q` and `q`, recognized in Q(√2) when possible.
pub fn vertex_coordinates(f: &BelyiCandidate) -> Result<VertexCoordinates, BelyiError> {
    let n = f.degree();
    if n > MAX_COORDINATE_DEGREE {
        return Err(BelyiError::DegreeTooLarge { degree: n, cap: MAX_COORDINATE_DEGREE });
    }
    let (dp, dq) = (f.p.deg0(), f.q.deg0());
    let pq = f.p_minus_q();
    Ok(VertexCoordinates {
        black: roots_of(&f.p, dq.saturating_sub(dp))?,
        white: roots_of(&pq, n - pq.deg0())?,
        faces: roots_of(&f.q, dp.saturating_sub(dq))?,
    })
}

fn roots_of(poly: &Poly, at_infinity: usize) -> Result<Vec<Root>, BelyiError> {
    let mut out = Vec::new();
    for (factor, mult) in poly.square_free_decomposition()? {
        let approx = poly::aberth_roots(&factor.to_complex(), ROOT_TOLERANCE * 1e-2, 2000).ok_or(BelyiError::NoConvergence)?;
        for z in approx {
            let value = match (z.im.abs() < MATCH_TOLERANCE).then(|| recognize(&factor, z.re)).flatten() {
                Some(e) => RootValue::Exact { value: e.to_string(), a: e.a().to_string(), b: e.b().to_string() },
                None => RootValue::Approximate { re: z.re, im: z.im },
            };
            out.push(Root { value, multiplicity: mult });
        }
    }
    out.sort_by(|x, y| {
        y.multiplicity.cmp(&x.multiplicity).then_with(|| approx_of(&x.value).total_cmp(&approx_of(&y.value)))
    });
    if at_infinity > 0 {
        out.push(Root { value: RootValue::Infinity, multiplicity: at_infinity });
    }
    Ok(out)
}

fn approx_of(v: &RootValue) -> f64 {
    match v {
        RootValue::Exact { a, b, .. } => {
            let parse = |s: &str| RationalJson::Text(s.to_string()).value().ok().and_then(|r| r.to_f64()).unwrap_or(0.0);
            parse(a) + parse(b) * std::f64::consts::SQRT_2
        }
        RootValue::Approximate { re, .. } => *re,
        RootValue::Infinity => f64::INFINITY,
    }
}

/// Bounded search for `a + b√2` near `x` with small denominators, confirmed
/// exactly as a root of `factor`.
fn recognize(factor: &Poly, x: f64) -> Option<FieldElement> {
    let sqrt2 = std::f64::consts::SQRT_2;
    let bound = ((x.abs() + 8.0) / sqrt2).ceil() as i64;
    let mut bs: Vec<(i64, i64)> = Vec::new();
    for d in 1..=MAX_DENOMINATOR {
        for k in -bound * d..=bound * d {
            if num_integer::gcd(k, d) == 1 || (k == 0 && d == 1) {
                bs.push((k, d));
            }
        }
    }
    bs.sort_by_key(|&(k, d)| (d, k.abs(), k < 0));
    for (kb, db) in bs {
        let a = x - kb as f64 / db as f64 * sqrt2;
        for da in 1..=MAX_DENOMINATOR {
            let ka = (a * da as f64).round();
            if (ka / da as f64 - a).abs() < MATCH_TOLERANCE {
                let e = FieldElement::from_fractions(ka as i64, da, kb, db);
                if factor.eval(&e).is_zero() {
                    return Some(e);
                }
                break;
            }
        }
    }
    None
}

/// The four degree-4 Belyi functions of the square dessins, in order
/// `x²(2−x²)`, `(x²−1)²`, `(x−1)⁴/(4x(x−2))`, `(x−1)⁴/(16x²)`.
pub fn square_dessin_functions() -> [BelyiCandidate; 4] {
    let x_minus_1_4 = Poly::from_ints(&[-1, 1]).pow(4);
    [
        BelyiCandidate::polynomial(Poly::from_ints(&[0, 0, 2, 0, -1])),
        BelyiCandidate::polynomial(Poly::from_ints(&[-1, 0, 1]).pow(2)),
        BelyiCandidate::new(x_minus_1_4.clone(), Poly::from_ints(&[0, -8, 4])),
        BelyiCandidate::new(x_minus_1_4, Poly::from_ints(&[0, 0, 16])),
    ]
    .map(|c| c.expect("valid candidate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessin::Passport;

    fn passport(s: &str) -> Passport {
        Passport::parse(s).unwrap()
    }

    #[test]
    fn square_functions_are_belyi() {
        let expected = [
            "[2^1 1^2, 2^2, 4^1]",
            "[2^2, 2^1 1^2, 4^1]",
            "[4^1, 2^2, 2^1 1^2]",
            "[4^1, 2^1 1^2, 2^2]",
        ];
        for (f, e) in square_dessin_functions().iter().zip(expected) {
            assert!(critical_values_ok(f).unwrap().ok, "{f}");
            assert_eq!(passport_of(f).unwrap(), passport(e), "{f}");
        }
    }

    #[test]
    fn p_minus_q_factorizations() {
        let [_, _, b3, b4] = square_dessin_functions();
        assert_eq!(b3.p_minus_q(), Poly::from_ints(&[-1, -2, 1]).pow(2));
        assert_eq!(b4.p_minus_q(), Poly::from_ints(&[1, -6, 1]).mul(&Poly::from_ints(&[1, 1]).pow(2)));
    }

    #[test]
    fn simple_cases() {
        let cube = BelyiCandidate::polynomial(Poly::from_ints(&[0, 0, 0, 1])).unwrap();
        assert!(critical_values_ok(&cube).unwrap().ok);
        assert_eq!(passport_of(&cube).unwrap(), passport("[3^1, 1^3, 3^1]"));
        let bad = BelyiCandidate::polynomial(Poly::from_ints(&[0, -1, 1])).unwrap();
        let check = critical_values_ok(&bad).unwrap();
        assert!(!check.ok);
        assert_eq!(check.witness, Some(CriticalWitness::Factor("x - 1/2".into())));
        assert!(matches!(passport_of(&bad), Err(BelyiError::NotBelyi(_))));
    }

    #[test]
    fn critical_point_at_infinity() {
        // (2x^2+1)/(x^2+1): f(∞) = 2 with ramification 2.
        let f = BelyiCandidate::new(Poly::from_ints(&[1, 0, 2]), Poly::from_ints(&[1, 0, 1])).unwrap();
        let check = critical_values_ok(&f).unwrap();
        assert!(!check.ok);
        assert!(matches!(check.witness, Some(CriticalWitness::Infinity { multiplicity: 2, .. })));
    }

    #[test]
    fn construction_errors() {
        let x = Poly::x();
        assert!(matches!(BelyiCandidate::new(x.clone(), x.mul(&x)), Err(BelyiError::NotCoprime(_))));
        assert_eq!(BelyiCandidate::new(x.clone(), Poly::zero()), Err(BelyiError::ZeroDenominator));
        assert_eq!(BelyiCandidate::polynomial(Poly::one()), Err(BelyiError::Constant));
    }

    #[test]
    fn coordinates() {
        let [b1, b2, ..] = square_dessin_functions();
        let c = vertex_coordinates(&b1).unwrap();
        let names = |roots: &[Root]| -> Vec<(String, usize)> {
            roots
                .iter()
                .map(|r| match &r.value {
                    RootValue::Exact { value, .. } => (value.clone(), r.multiplicity),
                    other => (format!("{other:?}"), r.multiplicity),
                })
                .collect()
        };
        assert_eq!(names(&c.black), vec![("0".into(), 2), ("-√2".into(), 1), ("√2".into(), 1)]);
        assert_eq!(names(&c.white), vec![("-1".into(), 2), ("1".into(), 2)]);
        assert_eq!(names(&c.faces), vec![("Infinity".into(), 4)]);
        let c2 = vertex_coordinates(&b2).unwrap();
        assert_eq!(names(&c2.black), vec![("-1".into(), 2), ("1".into(), 2)]);
        assert_eq!(names(&c2.white), vec![("0".into(), 2), ("-√2".into(), 1), ("√2".into(), 1)]);
        let cube = BelyiCandidate::polynomial(Poly::from_ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(names(&vertex_coordinates(&cube).unwrap().black), vec![("0".into(), 3)]);
    }

    #[test]
    fn json_round_trip() {
        for f in square_dessin_functions() {
            let j = f.to_json().unwrap();
            let text = serde_json::to_string(&j).unwrap();
            let back: CandidateJson = serde_json::from_str(&text).unwrap();
            assert_eq!(BelyiCandidate::from_json(&back).unwrap(), f);
        }
        let j: CandidateJson = serde_json::from_str(r#"{"num": [[0, 0], [0, 0], [2, 0], [0, 0], ["-1", "0/3"]]}"#).unwrap();
        assert_eq!(BelyiCandidate::from_json(&j).unwrap(), square_dessin_functions()[0]);
    }
}

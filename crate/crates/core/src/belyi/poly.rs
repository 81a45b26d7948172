//! Univariate polynomials over Q(√2), lowest degree first.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::{BelyiError, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| FieldElement::integer(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x − r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        Self::new(vec![-r, FieldElement::one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = FieldElement::zero();
        Self::new(
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero)).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &FieldElement::integer(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Coefficient-wise Galois conjugation.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(FieldElement::conj).collect())
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), BelyiError> {
        let lead_inv = d.lead().and_then(FieldElement::inv).ok_or(BelyiError::DivisionByZero)?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &Self) -> Result<Self, BelyiError> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(BelyiError::InexactDivision);
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead().and_then(FieldElement::inv) {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn square_free_part(&self) -> Result<Self, BelyiError> {
        if self.is_zero() {
            return Err(BelyiError::DivisionByZero);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g)?.monic())
    }

    /// Yun's decomposition: pairs `(a_i, i)` with `self = c · Π a_i^i`, each
    /// `a_i` monic, square-free, pairwise coprime and non-constant.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Poly, usize)>, BelyiError> {
        if self.is_zero() {
            return Err(BelyiError::DivisionByZero);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.exact_div(&a0)?;
        let mut c = d.exact_div(&a0)?;
        let mut i = 1;
        loop {
            let dd = c.sub(&b.derivative());
            if b.is_constant() {
                break;
            }
            let a = b.gcd(&dd);
            if !a.is_constant() {
                out.push((a.monic(), i));
            }
            b = b.exact_div(&a)?;
            c = dd.exact_div(&a)?;
            i += 1;
        }
        Ok(out)
    }

    /// Root multiplicities over C, one entry per distinct root, descending.
    pub fn root_multiplicities(&self) -> Result<Vec<usize>, BelyiError> {
        let mut out: Vec<usize> = self
            .square_free_decomposition()?
            .iter()
            .flat_map(|(a, i)| std::iter::repeat_n(*i, a.deg0()))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect()
    }
}

/// Simultaneous Newton (Aberth–Ehrlich) iteration; `coeffs` lowest degree first,
/// leading coefficient nonzero.
pub(crate) fn aberth_roots(coeffs: &[Complex64], tol: f64, max_iter: usize) -> Option<Vec<Complex64>> {
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return Some(vec![]);
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < tol {
            return Some(z);
        }
    }
    None
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = !c.is_rational() && !c.a().is_zero();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = if compound { format!("({body})") } else { body };
            let unit = body == "1";
            match i {
                0 => f.write_str(&body)?,
                _ => {
                    if !unit {
                        f.write_str(&body)?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_display() {
        let p = Poly::from_ints(&[0, 0, 2, 0, -1]);
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 4, 0, -4]));
        assert_eq!(p.to_string(), "-x^4 + 2x^2");
        let q = Poly::new(vec![FieldElement::from_ints(1, 1), FieldElement::one()]);
        assert_eq!(q.to_string(), "x + (1 + √2)");
    }

    #[test]
    fn gcd_extracts_factor() {
        let x2m2 = Poly::from_ints(&[-2, 0, 1]);
        let lin = Poly::linear_root(&FieldElement::sqrt2());
        assert_eq!(x2m2.gcd(&lin), lin);
        assert_eq!(x2m2.exact_div(&lin).unwrap(), Poly::linear_root(&-FieldElement::sqrt2()));
        assert!(Poly::one().div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn square_free_decomposition() {
        let p = Poly::from_ints(&[-1, 1]).pow(3).mul(&Poly::from_ints(&[0, 1])).mul(&Poly::from_ints(&[-2, 0, 1]));
        let dec = p.square_free_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0].1, 1);
        assert_eq!(dec[0].0.degree(), Some(3));
        assert_eq!(dec[1], (Poly::from_ints(&[-1, 1]), 3));
        assert_eq!(p.root_multiplicities().unwrap(), vec![3, 1, 1, 1]);
        assert_eq!(p.square_free_part().unwrap().degree(), Some(4));
    }

    #[test]
    fn aberth_finds_roots() {
        let p = Poly::from_ints(&[0, -2, 0, 1]);
        let mut roots: Vec<f64> = aberth_roots(&p.to_complex(), 1e-14, 500).unwrap().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        let s = 2f64.sqrt();
        for (r, e) in roots.iter().zip([-s, 0.0, s]) {
            assert!((r - e).abs() < 1e-12);
        }
    }
}

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::puiseux::PuiseuxCoeff;
use super::rational::{Rational, ZInt};
use super::trop::TropNum;
use super::ArithError;

pub type Exponent = Vec<BigInt>;

/// Multivariate Laurent polynomial `Σ c_α x^α` with [`PuiseuxCoeff`] coefficients.
///
/// Exponent vectors may contain negative entries. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, PuiseuxCoeff>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, PuiseuxCoeff::one())
    }

    pub fn constant(nvars: usize, c: PuiseuxCoeff) -> Self {
        Self::monomial(vec![BigInt::zero(); nvars], c)
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![BigInt::zero(); nvars];
        e[i] = BigInt::one();
        Self::monomial(e, PuiseuxCoeff::one())
    }

    pub fn monomial(exponent: Exponent, c: PuiseuxCoeff) -> Self {
        let mut out = LaurentPoly::zero(exponent.len());
        out.add_term(exponent, c);
        out
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; every exponent
    /// must have length `nvars`.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = (Exponent, PuiseuxCoeff)>,
    {
        let mut out = LaurentPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(ArithError::LengthMismatch { expected: nvars, got: e.len() });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Convenience constructor with small integer exponents.
    pub fn from_i64_terms(nvars: usize, terms: &[(&[i64], PuiseuxCoeff)]) -> Result<Self, ArithError> {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.iter().map(|&k| BigInt::from(k)).collect(), c.clone())))
    }

    fn add_term(&mut self, e: Exponent, c: PuiseuxCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &PuiseuxCoeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[BigInt]) -> Option<&PuiseuxCoeff> {
        self.terms.get(e)
    }

    /// Reinterprets a zero polynomial of unknown arity as one in `nvars` variables.
    pub fn with_nvars(self, nvars: usize) -> Result<Self, ArithError> {
        if self.nvars == nvars {
            Ok(self)
        } else if self.is_zero() {
            Ok(LaurentPoly::zero(nvars))
        } else {
            Err(ArithError::VarCountMismatch { left: self.nvars, right: nvars })
        }
    }

    fn check_same(&self, other: &LaurentPoly) -> Result<(), ArithError> {
        if self.nvars != other.nvars {
            return Err(ArithError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        self.check_same(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PuiseuxCoeff) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), d * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse in the Laurent ring; exists exactly for monomials with a
    /// single-term coefficient.
    pub fn inverse(&self) -> Result<LaurentPoly, ArithError> {
        if self.terms.len() != 1 {
            return Err(ArithError::NotInvertible);
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        let inv = c.unit_inverse().ok_or(ArithError::NotInvertible)?;
        Ok(LaurentPoly::monomial(e.iter().map(|a| -a).collect(), inv))
    }

    /// Total degree of every term if they all agree; `None` for the zero polynomial
    /// or a non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<BigInt> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<BigInt>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Per-variable minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponent {
        let mut mins = vec![BigInt::zero(); self.nvars];
        for e in self.terms.keys() {
            for (m, a) in mins.iter_mut().zip(e) {
                if a < m {
                    *m = a.clone();
                }
            }
        }
        mins
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|a| a.is_negative()))
    }

    /// Valuation at the Gauss point with log-radii given by `r`:
    /// `min_α (val(c_α) + Σ αᵢ·rᵢ)`, using `rᵢ = ∞` for coordinates that vanish.
    ///
    /// A term with a positive exponent against an infinite coordinate contributes
    /// `∞`; a negative exponent there is an error.
    pub fn gauss_eval(&self, r: &[TropNum]) -> Result<TropNum, ArithError> {
        if r.len() != self.nvars {
            return Err(ArithError::LengthMismatch { expected: self.nvars, got: r.len() });
        }
        let mut best = TropNum::Inf;
        for (e, c) in &self.terms {
            let mut acc = c.val();
            for (i, (a, ri)) in e.iter().zip(r).enumerate() {
                if a.is_zero() {
                    continue;
                }
                match ri {
                    TropNum::Finite(q) => acc = acc.otimes(&TropNum::Finite(q * Rational::from_integer(a.clone()))),
                    TropNum::Inf if a.is_negative() => {
                        return Err(ArithError::NegativeExponentAtInf { var: i });
                    }
                    TropNum::Inf => acc = TropNum::Inf,
                }
            }
            best = best.oplus(&acc);
        }
        Ok(best)
    }

    /// Substitutes `x_i ↦ images[i]`. Negative exponents require the image to be
    /// invertible (a unit monomial).
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly, ArithError> {
        if images.len() != self.nvars {
            return Err(ArithError::LengthMismatch { expected: self.nvars, got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        for img in images {
            if img.nvars != target {
                return Err(ArithError::VarCountMismatch { left: target, right: img.nvars });
            }
        }
        let mut cache: BTreeMap<(usize, BigInt), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(target, c.clone());
            for (i, a) in e.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let key = (i, a.clone());
                if !cache.contains_key(&key) {
                    let k = a.abs().to_u32().ok_or(ArithError::ExponentTooLarge)?;
                    let base = if a.is_negative() { images[i].inverse()? } else { images[i].clone() };
                    cache.insert(key.clone(), base.pow(k));
                }
                term = &term * &cache[&key];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a rational point. Coefficients must be free of `t`.
    pub fn eval_constant(&self, point: &[Rational]) -> Result<Rational, ArithError> {
        if point.len() != self.nvars {
            return Err(ArithError::LengthMismatch { expected: self.nvars, got: point.len() });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.as_constant().ok_or(ArithError::NonConstantCoefficient)?;
            for (a, p) in e.iter().zip(point) {
                if a.is_zero() {
                    continue;
                }
                if p.is_zero() && a.is_negative() {
                    return Err(ArithError::DivisionByZero);
                }
                let k = a.abs().to_i32().ok_or(ArithError::ExponentTooLarge)?;
                let pw = num_traits::pow(p.clone(), k as usize);
                v = if a.is_negative() { v / pw } else { v * pw };
            }
            total += v;
        }
        Ok(total)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    /// Panics when the variable counts differ; see [`LaurentPoly::try_add`].
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, a) in e.iter().enumerate() {
                if a.is_one() {
                    write!(f, "*x{}", i + 1)?;
                } else if !a.is_zero() {
                    write!(f, "*x{}^{}", i + 1, a)?;
                }
            }
        }
        Ok(())
    }
}

/// JSON term: `{exponents: [int], coeff: [{gamma, r}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LaurentTermDoc {
    pub exponents: Vec<ZInt>,
    pub coeff: PuiseuxCoeff,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let docs: Vec<LaurentTermDoc> = self
            .terms
            .iter()
            .map(|(e, c)| LaurentTermDoc { exponents: e.iter().cloned().map(ZInt).collect(), coeff: c.clone() })
            .collect();
        docs.serialize(s)
    }
}

/// The arity of an empty term list is unknown; it deserializes as a zero
/// polynomial in 0 variables, to be fixed up with [`LaurentPoly::with_nvars`].
impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let docs = Vec::<LaurentTermDoc>::deserialize(d)?;
        let nvars = docs.first().map(|t| t.exponents.len()).unwrap_or(0);
        LaurentPoly::from_terms(
            nvars,
            docs.into_iter().map(|t| (t.exponents.into_iter().map(|z| z.0).collect(), t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}

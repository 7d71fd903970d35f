use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, QStr, Rational};
use super::trop::TropNum;

/// A finite sum `Σ rᵢ·t^γᵢ` with `rᵢ, γᵢ ∈ Q`, standing in for an element of
/// the valued field. Zero coefficients are never stored, so the zero element
/// is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PuiseuxCoeff {
    terms: BTreeMap<Rational, Rational>,
}

impl PuiseuxCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::monomial(r, Rational::zero())
    }

    pub fn from_int(r: i64) -> Self {
        Self::constant(Rational::from_integer(r.into()))
    }

    /// `r·t^gamma`.
    pub fn monomial(r: Rational, gamma: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(gamma, r);
        }
        PuiseuxCoeff { terms }
    }

    /// Builds from `(gamma, r)` pairs, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Rational)>>(it: I) -> Self {
        let mut out = PuiseuxCoeff::zero();
        for (gamma, r) in it {
            out.add_term(gamma, r);
        }
        out
    }

    fn add_term(&mut self, gamma: Rational, r: Rational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(gamma) {
            Entry::Vacant(v) => {
                v.insert(r);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += r;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `(gamma, r)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The valuation: smallest exponent carrying a nonzero coefficient.
    pub fn val(&self) -> TropNum {
        match self.terms.keys().next() {
            Some(g) => TropNum::Finite(g.clone()),
            None => TropNum::Inf,
        }
    }

    /// The constant part if this is `r·t^0` (or zero), `None` when `t` occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Rational::zero()).cloned(),
            _ => None,
        }
    }

    /// Inverse of a single-term coefficient `r·t^γ`; `None` otherwise.
    pub fn unit_inverse(&self) -> Option<PuiseuxCoeff> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, r) = self.terms.iter().next()?;
        Some(PuiseuxCoeff::monomial(r.recip(), -g.clone()))
    }
}

impl Add for &PuiseuxCoeff {
    type Output = PuiseuxCoeff;
    fn add(self, rhs: &PuiseuxCoeff) -> PuiseuxCoeff {
        let mut out = self.clone();
        for (g, r) in &rhs.terms {
            out.add_term(g.clone(), r.clone());
        }
        out
    }
}

impl Neg for &PuiseuxCoeff {
    type Output = PuiseuxCoeff;
    fn neg(self) -> PuiseuxCoeff {
        PuiseuxCoeff { terms: self.terms.iter().map(|(g, r)| (g.clone(), -r)).collect() }
    }
}

impl Sub for &PuiseuxCoeff {
    type Output = PuiseuxCoeff;
    fn sub(self, rhs: &PuiseuxCoeff) -> PuiseuxCoeff {
        self + &(-rhs)
    }
}

impl Mul for &PuiseuxCoeff {
    type Output = PuiseuxCoeff;
    fn mul(self, rhs: &PuiseuxCoeff) -> PuiseuxCoeff {
        let mut out = PuiseuxCoeff::zero();
        for (g1, r1) in &self.terms {
            for (g2, r2) in &rhs.terms {
                out.add_term(g1 + g2, r1 * r2);
            }
        }
        out
    }
}

impl fmt::Display for PuiseuxCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (g, r)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if g.is_zero() {
                write!(f, "{}", format_rational(r))?;
            } else {
                write!(f, "{}*t^({})", format_rational(r), format_rational(g))?;
            }
        }
        Ok(())
    }
}

/// One `{gamma, r}` entry of the JSON coefficient list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeffTermDoc {
    pub gamma: QStr,
    pub r: QStr,
}

impl Serialize for PuiseuxCoeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let docs: Vec<CoeffTermDoc> =
            self.terms.iter().map(|(g, r)| CoeffTermDoc { gamma: QStr(g.clone()), r: QStr(r.clone()) }).collect();
        docs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxCoeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let docs = Vec::<CoeffTermDoc>::deserialize(d)?;
        Ok(PuiseuxCoeff::from_terms(docs.into_iter().map(|c| (c.gamma.0, c.r.0))))
    }
}

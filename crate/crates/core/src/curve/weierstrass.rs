use serde::Serialize;

use crate::arith::{LaurentPoly, PuiseuxCoeff, Rational};

/// The two shapes of the tropical Weierstrass cubic `y² = x³ + a x + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeierstrassCase {
    /// `3 v(a) ≥ 2 v(b)`: the `x`-term does not contribute, one vertex.
    A,
    B,
}

impl std::fmt::Display for WeierstrassCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WeierstrassCase::A => "A",
            WeierstrassCase::B => "B",
        })
    }
}

pub fn weierstrass_case(va: &Rational, vb: &Rational) -> WeierstrassCase {
    let three = Rational::from_integer(3.into());
    let two = Rational::from_integer(2.into());
    if three * va >= two * vb {
        WeierstrassCase::A
    } else {
        WeierstrassCase::B
    }
}

/// `y² − x³ − a x − b` with `a = t^{va}`, `b = t^{vb}`.
pub fn weierstrass_curve(va: &Rational, vb: &Rational) -> LaurentPoly {
    let one = Rational::from_integer(1.into());
    let terms = [
        (&[0, 2][..], PuiseuxCoeff::one()),
        (&[3, 0][..], PuiseuxCoeff::from_int(-1)),
        (&[1, 0][..], PuiseuxCoeff::monomial(-one.clone(), va.clone())),
        (&[0, 0][..], PuiseuxCoeff::monomial(-one, vb.clone())),
    ];
    LaurentPoly::from_i64_terms(2, &terms).expect("two variables")
}

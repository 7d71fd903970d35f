//! Fourier–Motzkin elimination over the rationals with strictness flags.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::Rational;

/// `a·x + c ≥ 0`, or `> 0` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Ineq {
    pub a: Vec<Rational>,
    pub c: Rational,
    pub strict: bool,
}

impl Ineq {
    /// Scales by a positive factor so the first nonzero coefficient is ±1.
    fn normalized(mut self) -> Ineq {
        if let Some(s) = self.a.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
            for x in &mut self.a {
                *x /= &s;
            }
            self.c /= &s;
        }
        self
    }

    fn trivial_ok(&self) -> bool {
        if self.strict {
            self.c.is_positive()
        } else {
            !self.c.is_negative()
        }
    }
}

/// Eliminates variable `k` from the system.
pub(crate) fn eliminate(sys: &[Ineq], k: usize) -> Vec<Ineq> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), BTreeSet::new());
    for q in sys {
        if q.a[k].is_positive() {
            pos.push(q);
        } else if q.a[k].is_negative() {
            neg.push(q);
        } else {
            out.insert(q.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let (sp, sq) = (-&q.a[k], p.a[k].clone());
            let a = p.a.iter().zip(&q.a).map(|(x, y)| x * &sp + y * &sq).collect();
            let c = &p.c * &sp + &q.c * &sq;
            out.insert(Ineq { a, c, strict: p.strict || q.strict }.normalized());
        }
    }
    out.into_iter().collect()
}

/// Whether the system has a real solution.
pub(crate) fn feasible(sys: &[Ineq]) -> bool {
    let Some(dim) = sys.first().map(|q| q.a.len()) else {
        return true;
    };
    let mut cur: Vec<Ineq> = sys.iter().cloned().map(Ineq::normalized).collect();
    for k in 0..dim {
        if cur.iter().any(|q| q.a.iter().all(Zero::is_zero) && !q.trivial_ok()) {
            return false;
        }
        cur = eliminate(&cur, k);
    }
    cur.iter().all(Ineq::trivial_ok)
}

use std::fmt;

use num_traits::Zero;

use crate::arith::Rational;

use super::PhyloError;

/// A symmetric vector `(x_ij)_{1 ≤ i < j ≤ n}` indexed by 1-based leaf labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistVector {
    n: usize,
    entries: Vec<Rational>,
}

/// Position of the pair `i < j` (1-based) in lexicographic order.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let i0 = i - 1;
    let j0 = j - 1;
    i0 * n - i0 * (i0 + 1) / 2 + (j0 - i0 - 1)
}

/// All pairs `(i, j)` with `1 ≤ i < j ≤ n` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

impl DistVector {
    /// Entries in lexicographic pair order `x_12, x_13, …, x_{n-1,n}`.
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self, PhyloError> {
        if n < 2 {
            return Err(PhyloError::TooFewLeaves(n));
        }
        let expected = n * (n - 1) / 2;
        if entries.len() != expected {
            return Err(PhyloError::BadLength { expected, got: entries.len() });
        }
        Ok(DistVector { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self, PhyloError> {
        Self::new(n, pairs(n).map(|(i, j)| f(i, j)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `x_ij` with `x_ji` as an alias and `x_ii = 0`.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n, "leaf label out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Rational::zero(),
            std::cmp::Ordering::Less => self.entries[pair_index(self.n, i, j)].clone(),
            std::cmp::Ordering::Greater => self.entries[pair_index(self.n, j, i)].clone(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        assert!(a >= 1 && a < b && b <= self.n, "bad pair");
        let k = pair_index(self.n, a, b);
        self.entries[k] = v;
    }

    /// Adds `c` to every entry.
    pub fn shifted(&self, c: &Rational) -> DistVector {
        DistVector { n: self.n, entries: self.entries.iter().map(|e| e + c).collect() }
    }
}

/// The three pairings of a quartet `{i,j,k,l}` in the order
/// `ij|kl`, `ik|jl`, `il|jk`.
fn pairings(q: [usize; 4]) -> [[[usize; 2]; 2]; 3] {
    let [i, j, k, l] = q;
    [[[i, j], [k, l]], [[i, k], [j, l]], [[i, l], [j, k]]]
}

/// Resolution of a quartet under the four-point condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuartetSplit {
    /// `ab|cd`: the pairing with strictly smallest sum, each side sorted.
    Split([usize; 2], [usize; 2]),
    /// All three pairings are equal.
    Degenerate,
}

impl QuartetSplit {
    fn normalized(mut a: [usize; 2], mut b: [usize; 2]) -> QuartetSplit {
        a.sort_unstable();
        b.sort_unstable();
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        QuartetSplit::Split(a, b)
    }

    /// True if `{a, b}` is one side of the split.
    pub fn pairs_together(&self, a: usize, b: usize) -> bool {
        let mut p = [a, b];
        p.sort_unstable();
        match self {
            QuartetSplit::Split(x, y) => *x == p || *y == p,
            QuartetSplit::Degenerate => false,
        }
    }
}

impl fmt::Display for QuartetSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuartetSplit::Split(a, b) => write!(f, "{},{}|{},{}", a[0], a[1], b[0], b[1]),
            QuartetSplit::Degenerate => f.write_str("degenerate"),
        }
    }
}

/// Splits the quartet by the four-point condition: the maximum of the three
/// pairing sums must be attained at least twice; the remaining strictly smaller
/// pairing names the cherries.
pub fn quartet_split(x: &DistVector, quartet: [usize; 4]) -> Result<QuartetSplit, PhyloError> {
    for (a, &p) in quartet.iter().enumerate() {
        if p == 0 || p > x.n() {
            return Err(PhyloError::UnknownLeaf(p));
        }
        if quartet[..a].contains(&p) {
            return Err(PhyloError::RepeatedLeaf(p));
        }
    }
    let ps = pairings(quartet);
    let sums: Vec<Rational> = ps.iter().map(|[[a, b], [c, d]]| x.get(*a, *b) + x.get(*c, *d)).collect();
    let max = sums.iter().max().expect("three sums");
    let at_max = sums.iter().filter(|s| *s == max).count();
    match at_max {
        3 => Ok(QuartetSplit::Degenerate),
        2 => {
            let k = sums.iter().position(|s| s != max).expect("one smaller pairing");
            let [a, b] = ps[k];
            Ok(QuartetSplit::normalized(a, b))
        }
        _ => Err(PhyloError::FourPointViolation { quartet }),
    }
}

/// All 4-subsets `i < j < k < l` of `{1..n}`.
pub fn quartets(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (1..=n).flat_map(move |i| {
        (i + 1..=n).flat_map(move |j| (j + 1..=n).flat_map(move |k| (k + 1..=n).map(move |l| [i, j, k, l])))
    })
}

/// The first quartet whose maximum pairing is attained only once.
pub fn first_four_point_violation(x: &DistVector) -> Option<[usize; 4]> {
    quartets(x.n()).find(|q| quartet_split(x, *q).is_err())
}

/// True iff every quartet's maximal pairing sum is attained at least twice.
/// Vacuously true for `n < 4`.
pub fn four_point_check(x: &DistVector) -> bool {
    first_four_point_violation(x).is_none()
}

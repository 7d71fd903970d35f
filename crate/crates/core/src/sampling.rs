//! Seeded random instances: weighted trees, Plücker forms, Laurent
//! polynomials. Used by the test suites and by the CLI's sampled checks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, LaurentPoly, PuiseuxCoeff, Rational};
use crate::phylo::{PhyloTree, TreeEdge};

/// The generator used everywhere a seed is accepted.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `p/den` with `p` uniform in `[lo·den, hi·den]`.
pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

/// A random nonzero integer in `[-bound, bound]`.
pub fn random_nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

/// A random binary tree shape on `n ≥ 3` leaves, built by attaching leaves
/// one at a time to a uniformly chosen edge. Leaves are nodes `0..n`; all
/// weights are zero.
pub fn random_binary_shape<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    assert!(n >= 3);
    let mut next = n;
    let mut edges = vec![(0, next), (1, next), (2, next)];
    next += 1;
    for leaf in 3..n {
        let k = rng.gen_range(0..edges.len());
        let (a, b) = edges[k];
        let m = next;
        next += 1;
        edges[k] = (a, m);
        edges.push((m, b));
        edges.push((leaf, m));
    }
    edges
}

/// A random weighted tree on `n` leaves. Internal weights are positive
/// multiples of `1/den` up to `max`; leaf weights range over `[-max, max]`.
/// Each internal edge is contracted with probability `contract`.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize, max: i64, den: i64, contract: f64) -> PhyloTree {
    let shape = random_binary_shape(rng, n);
    let num_nodes = shape.len() + 1;
    let edges = shape
        .into_iter()
        .map(|(a, b)| {
            let leaf = a < n || b < n;
            let w = if leaf {
                random_rational(rng, -max, max, den)
            } else if rng.gen_bool(contract) {
                rat(0, 1)
            } else {
                rat(rng.gen_range(1..=max * den), den)
            };
            TreeEdge { a, b, w }
        })
        .collect();
    PhyloTree::new(num_nodes, edges, (0..n).collect()).expect("valid shape").contracted()
}

/// A caterpillar: leaves `1, 2` at one end, `n−1, n` at the other, the rest
/// attached in order along the spine. Spine weights are given by `spine`
/// (length `n−3`); leaf weights are all 1.
pub fn caterpillar(n: usize, spine: &[Rational]) -> PhyloTree {
    assert!(n >= 4 && spine.len() == n - 3);
    // spine nodes n..n+n-2
    let s = |k: usize| n + k;
    let mut edges = vec![
        TreeEdge { a: 0, b: s(0), w: rat(1, 1) },
        TreeEdge { a: 1, b: s(0), w: rat(1, 1) },
        TreeEdge { a: n - 2, b: s(n - 3), w: rat(1, 1) },
        TreeEdge { a: n - 1, b: s(n - 3), w: rat(1, 1) },
    ];
    for (k, leaf) in (2..n - 2).enumerate() {
        edges.push(TreeEdge { a: leaf, b: s(k + 1), w: rat(1, 1) });
    }
    for (k, w) in spine.iter().enumerate() {
        edges.push(TreeEdge { a: s(k), b: s(k + 1), w: w.clone() });
    }
    PhyloTree::new(2 * n - 2, edges, (0..n).collect()).expect("caterpillar")
}

/// A coefficient `c·t^γ` with `c` a nonzero integer and `γ` a small rational.
pub fn random_coeff<R: Rng>(rng: &mut R, with_t: bool) -> PuiseuxCoeff {
    let c = Rational::from_integer(random_nonzero(rng, 5).into());
    let gamma = if with_t { random_rational(rng, -2, 2, 2) } else { rat(0, 1) };
    PuiseuxCoeff::monomial(c, gamma)
}

/// A Laurent polynomial with up to `terms` terms and exponents in
/// `[lo, hi]`.
pub fn random_laurent<R: Rng>(rng: &mut R, nvars: usize, terms: usize, lo: i64, hi: i64, with_t: bool) -> LaurentPoly {
    let mut f = LaurentPoly::zero(nvars);
    for _ in 0..terms {
        let e: Vec<BigInt> = (0..nvars).map(|_| rng.gen_range(lo..=hi).into()).collect();
        f = &f + &LaurentPoly::monomial(e, random_coeff(rng, with_t));
    }
    f
}

/// A homogeneous Laurent form of degree `deg` in the `C(n,2)` Plücker
/// coordinates, with `terms` terms, each involving at most `support`
/// coordinates with exponents in `[-1, 2]`.
pub fn random_pluecker_form<R: Rng>(rng: &mut R, n: usize, terms: usize, deg: i64, support: usize) -> LaurentPoly {
    let nv = n * (n - 1) / 2;
    let all: Vec<usize> = (0..nv).collect();
    let mut f = LaurentPoly::zero(nv);
    for _ in 0..terms {
        let vars: Vec<usize> = all.choose_multiple(rng, support.max(1)).copied().collect();
        let mut e = vec![0i64; nv];
        for &v in &vars[1..] {
            e[v] = rng.gen_range(-1..=2);
        }
        e[vars[0]] = deg - e.iter().sum::<i64>();
        f = &f + &LaurentPoly::monomial(e.into_iter().map(BigInt::from).collect(), random_coeff(rng, true));
    }
    f
}

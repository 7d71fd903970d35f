//! Integer linear algebra: saturated kernels and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[src] * q;
        row[dst] -= v;
    }
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Basis (as columns, returned as a list of vectors) of the integer kernel
/// `{z ∈ Zⁿ : E z = 0}`, which is automatically saturated.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut e: IntMatrix = rows.to_vec();
    let mut u = identity(n);
    let mut p = 0;
    for i in 0..e.len() {
        if p == n {
            break;
        }
        // Euclid on row i among columns p..n using unimodular column operations
        loop {
            let piv = (p..n).filter(|&j| !e[i][j].is_zero()).min_by_key(|&j| e[i][j].abs());
            let Some(piv) = piv else { break };
            col_swap(&mut e, p, piv);
            col_swap(&mut u, p, piv);
            let mut done = true;
            for j in p + 1..n {
                if !e[i][j].is_zero() {
                    let q = e[i][j].div_floor(&e[i][p]);
                    col_axpy(&mut e, j, p, &q);
                    col_axpy(&mut u, j, p, &q);
                    done &= e[i][j].is_zero();
                }
            }
            if done {
                p += 1;
                break;
            }
        }
    }
    (p..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    smith_invariants(m).len()
}

/// The nonzero diagonal entries `d₁ | d₂ | …` of the Smith normal form.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: IntMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let piv = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = piv else {
                return out;
            };
            a.swap(t, pi);
            col_swap(&mut a, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// `A · B` for integer matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> IntMatrix {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            smith_invariants(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            vec![2.into(), 6.into(), 12.into()]
        );
        assert_eq!(smith_invariants(&m(&[&[1, 1], &[1, 1]])), vec![BigInt::one()]);
        assert_eq!(smith_invariants(&m(&[&[2, 0], &[0, 3]])), vec![1.into(), 6.into()]);
        assert!(smith_invariants(&m(&[&[0, 0]])).is_empty());
    }

    #[test]
    fn kernel_saturated() {
        let k = integer_kernel(&m(&[&[2, -2]]), 2);
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec![BigInt::one(), BigInt::one()] || k[0] == vec![-BigInt::one(), -BigInt::one()]);
        let k = integer_kernel(&m(&[&[1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        for z in &k {
            assert_eq!(&z[0] + 2 * &z[1] + 3 * &z[2], BigInt::zero());
        }
        let cols: IntMatrix = (0..3).map(|i| k.iter().map(|z| z[i].clone()).collect()).collect();
        assert_eq!(smith_invariants(&cols), vec![BigInt::one(), BigInt::one()]);
        assert_eq!(integer_kernel(&[], 2).len(), 2);
    }
}

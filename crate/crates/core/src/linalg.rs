//! Dense exact linear algebra on small rational matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

pub(crate) fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}

pub(crate) fn is_zero(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Determinant by Gaussian elimination with exact pivots.
#[cfg(test)]
pub(crate) fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut result = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            result = -result;
        }
        let p = m[col][col].clone();
        result *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    result
}

/// The row times the least common multiple of its denominators, a positive
/// factor, so determinant signs are unchanged.
pub(crate) fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Sign of an integer determinant by fraction-free (Bareiss) elimination.
pub(crate) fn det_sign_int(mut m: Vec<Vec<BigInt>>) -> i8 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return 0;
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let last = &m[n - 1][n - 1];
    if last.is_zero() {
        0
    } else if last.is_positive() {
        sign
    } else {
        -sign
    }
}

pub(crate) fn det_sign(rows: &[Vec<Rational>]) -> i8 {
    det_sign_int(rows.iter().map(|r| integer_row(r)).collect())
}

/// Solves `m x = rhs` for square nonsingular `m`; `None` when singular.
pub(crate) fn solve(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        rhs.swap(pivot, col);
        let p = m[col][col].clone();
        for c in col..n {
            m[col][c] /= &p;
        }
        rhs[col] /= &p;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
            let delta = &f * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some(rhs)
}

/// Rank via row reduction.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for row in rows {
        let r = reduce_against(row, &basis);
        if !is_zero(&r) {
            basis.push(r);
        }
    }
    basis.len()
}

/// Gram-Schmidt residual of `v` against an orthogonal (not normalised) basis.
pub(crate) fn reduce_against(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    let mut r = v.to_vec();
    for b in basis {
        let bb = norm_sq(b);
        if bb.is_zero() {
            continue;
        }
        let f = dot(&r, b) / bb;
        r = sub(&r, &scale(b, &f));
    }
    r
}

/// Orthogonal basis of the complement of `span(vectors)` in dimension `dim`,
/// built from the standard basis in index order. Deterministic.
pub(crate) fn orthogonal_complement(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut span: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        let r = reduce_against(v, &span);
        if !is_zero(&r) {
            span.push(r);
        }
    }
    let mut complement = Vec::new();
    for i in 0..dim {
        let mut e = alloc::vec![Rational::zero(); dim];
        e[i] = Rational::from_integer(1.into());
        let r = reduce_against(&reduce_against(&e, &span), &complement);
        if !is_zero(&r) {
            complement.push(r);
        }
    }
    complement
}

/// Sign of a rational as -1, 0, +1.
pub(crate) fn sign(v: &Rational) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, vec_from_ints};
    use alloc::vec;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bareiss_sign_matches_rational_det(
            n in 1usize..5,
            entries in proptest::collection::vec((-6i64..=6, 1i64..=4), 16),
            dup in any::<bool>(),
        ) {
            let mut rows: Vec<Vec<Rational>> = (0..n)
                .map(|i| (0..n).map(|j| { let (p, q) = entries[i * 4 + j]; frac(p, q) }).collect())
                .collect();
            if dup && n > 1 {
                rows[n - 1] = scale(&rows[0], &frac(-3, 2));
            }
            prop_assert_eq!(det_sign(&rows), sign(&det(rows.clone())));
        }
    }

    #[test]
    fn det_of_small_matrices() {
        let m = vec![vec_from_ints(&[2, 1]), vec_from_ints(&[1, 3])];
        assert_eq!(det(m), int(5));
        let singular = vec![vec_from_ints(&[1, 2]), vec_from_ints(&[2, 4])];
        assert_eq!(det(singular), int(0));
        let swap = vec![vec_from_ints(&[0, 1]), vec_from_ints(&[1, 0])];
        assert_eq!(det(swap), int(-1));
    }

    #[test]
    fn solve_recovers_solution() {
        let m = vec![vec_from_ints(&[2, 1]), vec_from_ints(&[1, 3])];
        let x = solve(m, vec_from_ints(&[3, 5])).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
    }

    #[test]
    fn complement_is_orthogonal() {
        let dirs = vec![vec_from_ints(&[1, 1, 0])];
        let c = orthogonal_complement(&dirs, 3);
        assert_eq!(c.len(), 2);
        for v in &c {
            assert!(dot(v, &dirs[0]).is_zero());
        }
        assert!(dot(&c[0], &c[1]).is_zero());
        assert_eq!(rank(&[dirs[0].clone(), c[0].clone(), c[1].clone()]), 3);
    }
}

//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row echelon form by Bareiss elimination. Returns the reduced rows and the
/// pivot columns; every division is exact.
pub fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // largest absolute pivot, first on ties
        let mut best: Option<usize> = None;
        for i in r..rows {
            if !m[i][c].is_zero() && best.is_none_or(|b| m[i][c].abs() > m[b][c].abs()) {
                best = Some(i);
            }
        }
        let Some(b) = best else { continue };
        m.swap(r, b);
        let (top, rest) = m.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                let v = &prow[c] * &row[j] - &row[c] * &prow[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Scales a rational row to a primitive integer row with the same kernel.
pub fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Basis of the right nullspace, one vector per free column (that column set to one).
pub fn exact_nullspace(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigRational>> {
    let (u, pivots) = bareiss_echelon(m.to_vec(), cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (k, &p) in pivots.iter().enumerate().rev() {
                let mut acc = BigRational::zero();
                for j in p + 1..cols {
                    if !u[k][j].is_zero() && !x[j].is_zero() {
                        acc += BigRational::from_integer(u[k][j].clone()) * &x[j];
                    }
                }
                x[p] = -acc / BigRational::from_integer(u[k][p].clone());
            }
            x
        })
        .collect()
}

pub fn exact_nullspace_i64(m: &[Vec<i64>], cols: usize) -> Vec<Vec<BigRational>> {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    exact_nullspace(&big, cols)
}

pub fn exact_nullspace_rational(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| integer_row(r)).collect();
    exact_nullspace(&big, cols)
}

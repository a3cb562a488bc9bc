//! Exact linear algebra over the rationals via fraction-free (Bareiss)
//! elimination on integer rows.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{common_denominator, Rational};

/// Row echelon form of an integer matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Clears the denominators of each row independently.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = common_denominator(row);
            row.iter()
                .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Bareiss elimination. Every intermediate entry is a minor of the input, so
/// the divisions are exact.
pub fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..nrows {
            let factor = m[i][c].clone();
            for j in (c + 1)..ncols {
                let v = (&m[r][c] * &m[i][j] - &factor * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        // Columns left of c in rows below r are already zero.
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank_int(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    bareiss(rows.to_vec(), ncols).rank()
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rank_int(&integer_rows(rows), ncols)
}

/// A basis of `{v : rows * v = 0}`. Each basis vector has a one in its own
/// free coordinate and zeros in the other free coordinates.
pub fn null_space(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = bareiss(integer_rows(rows), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[r];
                let mut acc = Rational::zero();
                for j in (pc + 1)..ncols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc += Rational::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[pc] = -acc / Rational::from_integer(row[pc].clone());
            }
            v
        })
        .collect()
}

pub fn mat_vec(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

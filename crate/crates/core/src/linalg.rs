//! Exact linear algebra over the rationals.
//!
//! Rank uses fraction-free (Bareiss) elimination over big integers; the
//! reduced row echelon form is computed over `BigRational` and serves as a
//! canonical key for row spaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type RatMatrix = Vec<Vec<BigRational>>;

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_rank(m)
}

/// Rank of a small integer matrix with `i128` Bareiss elimination; falls
/// back to big integers if an intermediate value overflows.
pub fn rank_small(rows: &[Vec<i64>]) -> usize {
    fn go(rows: &[Vec<i64>]) -> Option<usize> {
        let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let nrows = m.len();
        if nrows == 0 {
            return Some(0);
        }
        let cols = m[0].len();
        let mut prev: i128 = 1;
        let mut r = 0;
        for c in 0..cols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            for i in (r + 1)..nrows {
                for j in (c + 1)..cols {
                    let v = m[r][c].checked_mul(m[i][j])?.checked_sub(m[i][c].checked_mul(m[r][j])?)?;
                    m[i][j] = v / prev;
                }
                m[i][c] = 0;
            }
            prev = m[r][c];
            r += 1;
        }
        Some(r)
    }
    go(rows).unwrap_or_else(|| rank_int(rows))
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v.div_floor(&prev);
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a rational matrix. Rows are cleared of denominators first.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    bareiss_rank(m)
}

/// Reduced row echelon form with zero rows removed.
pub fn rref(rows: &[Vec<BigRational>]) -> RatMatrix {
    let mut m: RatMatrix = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Columns holding the leading ones of an RREF matrix.
pub fn pivot_columns(rref: &RatMatrix) -> Vec<usize> {
    rref.iter()
        .filter_map(|row| row.iter().position(|x| !x.is_zero()))
        .collect()
}

/// Coordinates of `v` in the quotient by the row space of `rref`: reduce `v`
/// against the pivot rows, then keep the non-pivot entries.
pub fn quotient_coords(rref: &RatMatrix, v: &[BigRational]) -> Vec<BigRational> {
    let piv = pivot_columns(rref);
    let mut w = v.to_vec();
    for (row, &c) in rref.iter().zip(&piv) {
        if !w[c].is_zero() {
            let f = w[c].clone();
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    w.into_iter()
        .enumerate()
        .filter(|(i, _)| !piv.contains(i))
        .map(|(_, x)| x)
        .collect()
}

pub fn int_row(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// True iff every row of `b` lies in the row space of `a`.
pub fn row_space_contains(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> bool {
    let ra = rank(a);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(&both) == ra
}

pub fn is_zero_row(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Largest absolute entry, handy in debug output.
pub fn max_abs(m: &RatMatrix) -> BigRational {
    m.iter()
        .flatten()
        .map(|x| x.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

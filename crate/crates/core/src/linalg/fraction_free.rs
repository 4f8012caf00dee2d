//! Gauss-Jordan elimination over ℤ on primitive rows.
//!
//! Every row is kept as the primitive integer vector on its rational line, so after k pivot
//! steps each entry is bounded by a (k+1)-minor of the input: bit sizes stay polynomial, as
//! with Bareiss, without carrying a running divisor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Clears denominators and removes content; the zero row stays zero.
pub(crate) fn primitive_from_rationals(row: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for q in row {
        if !q.is_zero() {
            l = l.lcm(q.denom());
        }
    }
    let mut out: Vec<BigInt> = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for a in row.iter() {
        if !a.is_zero() {
            g = g.gcd(a);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for a in row.iter_mut() {
        if !a.is_zero() {
            *a = &*a / &g;
        }
    }
}

/// Reduced echelon form of integer rows.  Returns the nonzero rows scaled so each pivot is
/// positive (not yet normalized to 1) and the pivot columns.
pub(crate) fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|a| !a.is_zero()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        if rows[r][c].is_negative() {
            for a in rows[r].iter_mut() {
                *a = -&*a;
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let p = pivot_row[c].clone();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = p.gcd(&row[c]);
            let pm = &p / &g;
            let am = &row[c] / &g;
            for (j, a) in row.iter_mut().enumerate() {
                let scaled = if pm.is_one() { a.clone() } else { &*a * &pm };
                *a = if pivot_row[j].is_zero() { scaled } else { scaled - &am * &pivot_row[j] };
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Normalizes reduced integer rows so every pivot entry becomes 1.
pub(crate) fn normalize(rows: Vec<Vec<BigInt>>, pivots: &[usize]) -> Vec<Vec<BigRational>> {
    rows.into_iter()
        .zip(pivots)
        .map(|(row, &c)| {
            let p = row[c].clone();
            row.into_iter().map(|a| BigRational::new(a, p.clone())).collect()
        })
        .collect()
}

//! Dense Gauss-Jordan elimination over 𝔽_p on `u64` residues.

use crate::field::{inv_mod, mul_mod, sub_mod};

/// Reduced row echelon form; returns the nonzero rows (pivots equal to 1) and pivot columns.
pub(crate) fn reduce(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|&a| a != 0));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][c], p).expect("nonzero residue is invertible");
        if inv != 1 {
            for a in rows[r][c..].iter_mut() {
                *a = mul_mod(*a, inv, p);
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let support: Vec<usize> = (c..cols).filter(|&j| pivot_row[j] != 0).collect();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for &j in &support {
                row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

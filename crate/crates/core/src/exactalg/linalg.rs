//! Row reduction over a field.

use super::field::{Field, Scalar};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(k: &Field, rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = k.sub(x, &k.mul(&f, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of the right nullspace of the matrix given by `rows`.
pub fn nullspace(k: &Field, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(k, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); ncols];
            v[f] = k.one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = k.neg(&row[f]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let k = Field::Rational;
        let rows = vec![vec![k.from_int(1), k.from_int(2), k.from_int(3)], vec![k.from_int(2), k.from_int(4), k.from_int(6)]];
        let ns = nullspace(&k, &rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = (0..3).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&rows[0][i], &v[i])));
            assert!(dot.is_zero());
        }
    }
}

//! Integer matrices: Smith normal form with certificates, determinants,
//! integer linear systems and canonical bases of sublattices of Z².

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub type IMat = Vec<Vec<i64>>;

fn ck<T>(v: Option<T>) -> Result<T> {
    v.ok_or(Error::Overflow("integer matrix arithmetic"))
}

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> Result<IMat> {
    let (n, m) = (a.len(), b.first().map_or(0, Vec::len));
    let inner = b.len();
    if a.iter().any(|r| r.len() != inner) {
        return Err(Error::InvalidArgument("matrix dimensions do not match".into()));
    }
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = 0i64;
            for l in 0..inner {
                s = ck(s.checked_add(ck(a[i][l].checked_mul(b[l][j]))?))?;
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

fn mul_wide(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter().zip(b).try_fold(0i128, |s, (&x, brow)| ck(s.checked_add(ck(x.checked_mul(brow[j]))?)))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IMat, v: &[i64]) -> Result<Vec<i64>> {
    let col: IMat = v.iter().map(|&x| vec![x]).collect();
    Ok(mat_mul(a, &col)?.into_iter().map(|r| r[0]).collect())
}

pub fn transpose(a: &IMat) -> IMat {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Determinant by fraction-free elimination.
pub fn det(a: &IMat) -> Result<i64> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = ck(m[i][j].checked_mul(m[k][k]))?.checked_sub(ck(m[i][k].checked_mul(m[k][j]))?);
                m[i][j] = ck(v)? / prev;
            }
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).map_err(|_| Error::Overflow("determinant"))
}

/// U M V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Snf {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len))).map(|i| self.d[i][i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }

    /// Checks U M V = D, |det U| = |det V| = 1, diagonal shape and the
    /// divisibility chain.
    pub fn verify(&self, m: &IMat) -> Result<bool> {
        let wide = |a: &IMat| -> Vec<Vec<i128>> { a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect() };
        let ud = mul_wide(&mul_wide(&wide(&self.u), &wide(m))?, &wide(&self.v))?;
        if ud != wide(&self.d) {
            return Ok(false);
        }
        if det(&self.u)?.abs() != 1 || det(&self.v)?.abs() != 1 {
            return Ok(false);
        }
        for (i, row) in self.d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i != j && x != 0 {
                    return Ok(false);
                }
            }
        }
        let diag = self.diagonal();
        Ok(diag.iter().all(|&x| x >= 0) && diag.windows(2).all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 }))
    }
}

fn row_op(a: &mut [Vec<i64>], dst: usize, src: usize, q: i64) -> Result<()> {
    // row dst -= q * row src
    for j in 0..a[dst].len() {
        a[dst][j] = ck(a[dst][j].checked_sub(ck(q.checked_mul(a[src][j]))?))?;
    }
    Ok(())
}

fn col_op(a: &mut [Vec<i64>], dst: usize, src: usize, q: i64) -> Result<()> {
    for row in a.iter_mut() {
        row[dst] = ck(row[dst].checked_sub(ck(q.checked_mul(row[src]))?))?;
    }
    Ok(())
}

fn swap_cols(a: &mut [Vec<i64>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Quotient rounded to nearest, so remainders are at most |p|/2.
fn nearest_quotient(a: i64, p: i64) -> i64 {
    let (q, r) = a.div_mod_floor(&p);
    if 2 * r.abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

pub fn smith_normal_form(m: &IMat) -> Result<Snf> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidArgument("ragged matrix".into()));
    }
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                return Ok(Snf { u, d: a, v });
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = nearest_quotient(a[i][t], p);
                row_op(&mut a, i, t, q)?;
                row_op(&mut u, i, t, q)?;
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = nearest_quotient(a[t][j], p);
                col_op(&mut a, j, t, q)?;
                col_op(&mut v, j, t, q)?;
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    // row t += row i brings a non-multiple into row t
                    row_op(&mut a, t, i, -1)?;
                    row_op(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    Ok(Snf { u, d: a, v })
}

/// Solutions of A x = b over Z: a particular solution and a basis of the
/// kernel, or `None` if there is no integer solution.
pub fn solve_integer(a: &IMat, b: &[i64]) -> Result<Option<(Vec<i64>, Vec<Vec<i64>>)>> {
    let cols = a.first().map_or(0, Vec::len);
    let snf = smith_normal_form(a)?;
    let c = mat_vec(&snf.u, b)?;
    let diag = snf.diagonal();
    let r = snf.rank();
    let mut y = vec![0i64; cols];
    for (i, &ci) in c.iter().enumerate() {
        if i < r {
            if ci % diag[i] != 0 {
                return Ok(None);
            }
            y[i] = ci / diag[i];
        } else if ci != 0 {
            return Ok(None);
        }
    }
    let x = mat_vec(&snf.v, &y)?;
    let kernel = (r..cols).map(|j| snf.v.iter().map(|row| row[j]).collect()).collect();
    Ok(Some((x, kernel)))
}

/// Canonical (Hermite) basis of the subgroup of Z² spanned by `gens`:
/// empty, [(a, b)] with a > 0 or a = 0 < b, or [(a, b), (0, c)] with a, c > 0
/// and 0 <= b < c.
pub fn lattice_hnf(gens: &[[i64; 2]]) -> Result<Vec<[i64; 2]>> {
    let mut rows: Vec<[i64; 2]> = gens.iter().copied().filter(|g| *g != [0, 0]).collect();
    // first column: gcd into one row
    let mut top: Option<[i64; 2]> = None;
    let mut rest: Vec<[i64; 2]> = Vec::new();
    for r in rows.drain(..) {
        match top {
            None if r[0] != 0 => top = Some(r),
            None => rest.push(r),
            Some(t) if r[0] == 0 => {
                rest.push(r);
                top = Some(t);
            }
            Some(t) => {
                let eg = t[0].extended_gcd(&r[0]);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let new_top = [g, ck(ck(x.checked_mul(t[1]))?.checked_add(ck(y.checked_mul(r[1]))?))?];
                let (ft, fr) = (t[0] / g, r[0] / g);
                // fr*t - ft*r has zero first entry
                let other = ck(ck(fr.checked_mul(t[1]))?.checked_sub(ck(ft.checked_mul(r[1]))?))?;
                rest.push([0, other]);
                top = Some(new_top);
            }
        }
    }
    let c = rest.iter().fold(0i64, |acc, r| acc.gcd(&r[1]));
    let mut out = Vec::new();
    match top {
        Some(mut t) => {
            if t[0] < 0 {
                t = [-t[0], -t[1]];
            }
            if c != 0 {
                t[1] = t[1].mod_floor(&c);
                out.push(t);
                out.push([0, c]);
            } else {
                out.push(t);
            }
        }
        None => {
            if c != 0 {
                out.push([0, c]);
            }
        }
    }
    Ok(out)
}

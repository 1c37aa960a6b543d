//! Exact linear algebra over the rational-function field and fraction-free
//! determinants of polynomial matrices.

use super::poly::Poly;
use super::ratfunc::RatFunc;

/// Determinant of a square polynomial matrix by fraction-free elimination:
/// every division is an exact polynomial division by the previous pivot.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    if n == 0 {
        return Poly::one(0);
    }
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev = Poly::one(nvars);
    let mut negate = false;
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].num_terms());
        let Some(p) = pivot else {
            return Poly::zero(nvars);
        };
        if p != col {
            a.swap(col, p);
            negate = !negate;
        }
        if col == n - 1 {
            break;
        }
        for i in col + 1..n {
            for j in col + 1..n {
                let num = &(&a[col][col] * &a[i][j]) - &(&a[i][col] * &a[col][j]);
                a[i][j] = num.div_exact(&prev).expect("fraction-free step divides");
            }
            a[i][col] = Poly::zero(nvars);
        }
        prev = a[col][col].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Reduced row-echelon data for a matrix over the function field.
pub struct FuncRref {
    pub reduced: Vec<Vec<RatFunc>>,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination with exact rational-function arithmetic.
pub fn func_rref(mut m: Vec<Vec<RatFunc>>) -> FuncRref {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].num().num_terms() + m[i][col].den().num_terms());
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for e in m[r][col..cols].iter_mut() {
            *e = &*e * &inv;
        }
        let pivot_row: Vec<RatFunc> = m[r][col..cols].to_vec();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (e, pv) in row[col..cols].iter_mut().zip(&pivot_row) {
                let delta = &factor * pv;
                *e = &*e - &delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    let rank = pivots.len();
    FuncRref {
        reduced: m,
        pivot_cols: pivots,
        rank,
    }
}

/// Right-kernel basis over the function field, each vector scaled so its
/// first nonzero entry is 1.
pub fn func_nullspace(m: Vec<Vec<RatFunc>>, nvars: usize) -> Vec<Vec<RatFunc>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let r = func_rref(m);
    let mut out = Vec::new();
    for free in 0..cols {
        if r.pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![RatFunc::zero(nvars); cols];
        v[free] = RatFunc::one(nvars);
        for (i, &pc) in r.pivot_cols.iter().enumerate() {
            v[pc] = -&r.reduced[i][free];
        }
        let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
        let inv = lead.recip();
        for x in &mut v {
            *x = &*x * &inv;
        }
        out.push(v);
    }
    out
}

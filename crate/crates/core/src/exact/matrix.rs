//! Dense matrices over the rationals with exact rank computations.
//!
//! The reduced row-echelon form runs a fraction-free (Bareiss) elimination
//! on a denominator-cleared integer copy, dividing only in the final
//! normalization pass. All other operations build on `rref`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Outcome of the reduced row-echelon computation.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: QMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        QMatrix { rows: nrows, cols, data }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Vertically stack `other` below `self`. Panics on column mismatch.
    pub fn stack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontally concatenate. Panics on row mismatch.
    pub fn augment(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = QMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += &(a * b);
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Unique reduced row-echelon form, pivot columns, and rank.
    pub fn rref(&self) -> Rref {
        // clear denominators row by row; row scaling leaves the RREF unchanged
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut l = BigInt::one();
                for j in 0..self.cols {
                    l = l.lcm(self.get(i, j).denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let e = self.get(i, j);
                        e.numer() * (&l / e.denom())
                    })
                    .collect()
            })
            .collect();

        let mut pivots: Vec<usize> = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0usize;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            // smallest nonzero magnitude keeps Bareiss entries small
            let pivot = (r..self.rows)
                .filter(|&i| !m[i][col].is_zero())
                .min_by_key(|&i| m[i][col].magnitude().bits());
            let Some(p) = pivot else { continue };
            m.swap(r, p);
            for i in r + 1..self.rows {
                for j in col + 1..self.cols {
                    let num = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    assert!(rem.is_zero(), "fraction-free elimination stayed exact");
                    m[i][j] = q;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[r][col].clone();
            pivots.push(col);
            r += 1;
        }

        // normalization pass: unit pivots, then eliminate above
        let rank = pivots.len();
        let mut rows: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                let p = m[i][pivots[i]].clone();
                m[i].iter()
                    .map(|x| Rat::from_parts(x.clone(), p.clone()))
                    .collect()
            })
            .collect();
        for i in (0..rank).rev() {
            let pc = pivots[i];
            for upper in 0..i {
                let factor = rows[upper][pc].clone();
                if factor.is_zero() {
                    continue;
                }
                let lower = rows[i].clone();
                for (a, b) in rows[upper].iter_mut().zip(&lower) {
                    *a -= &(&factor * b);
                }
            }
        }

        let mut reduced = QMatrix::zeros(self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                reduced.set(i, j, v);
            }
        }
        Rref {
            reduced,
            pivot_cols: pivots,
            rank,
        }
    }

    /// Basis of the right kernel, each vector scaled so its first nonzero
    /// entry is 1. Empty exactly when the matrix has full column rank.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let r = self.rref();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if r.pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &pc) in r.pivot_cols.iter().enumerate() {
                v[pc] = -r.reduced.get(i, free);
            }
            let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero");
            let inv = lead.recip();
            for x in &mut v {
                *x = &*x * &inv;
            }
            out.push(v);
        }
        out
    }

    /// Whether the row span of `other` is contained in the row span of
    /// `self`, decided exactly by a rank comparison.
    pub fn span_contains(&self, other: &QMatrix) -> Result<bool> {
        if other.rows == 0 {
            return Ok(true);
        }
        if self.cols != other.cols {
            return Err(Error::Usage(format!(
                "span comparison needs equal column counts ({} vs {})",
                self.cols, other.cols
            )));
        }
        Ok(self.rank() == self.stack(other).rank())
    }
}

impl Rref {
    /// Reduce `v` modulo the row span: subtract pivot-row multiples so all
    /// pivot-column entries vanish.
    pub fn reduce_vector(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.reduced.cols());
        let mut out = v.to_vec();
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            let factor = out[pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(self.reduced.row(i)) {
                let delta = &factor * r;
                *o -= &delta;
            }
        }
        out
    }

    /// Columns that are not pivot columns, in ascending order.
    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.reduced.cols())
            .filter(|c| !self.pivot_cols.contains(c))
            .collect()
    }
}

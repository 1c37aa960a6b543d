//! Small self-contained integer-polynomial engine used as an independent
//! oracle by the acceptance tests. It shares no code with the library:
//! polynomials are exponent-map/i128 pairs, determinants are cofactor
//! expansions, and ranks come from fraction-free integer elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, i128>,
}

impl IPoly {
    pub fn zero(nvars: usize) -> Self {
        IPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = IPoly::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = IPoly::zero(nvars);
        p.terms.insert(exps, 1);
        p
    }

    /// Monomial c * prod x_i^{e_i}.
    pub fn term(nvars: usize, exps: &[u32], c: i128) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = IPoly::zero(nvars);
        if c != 0 {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    fn insert(&mut self, exps: Vec<u32>, c: i128) {
        if c == 0 {
            return;
        }
        let now_zero = {
            let e = self.terms.entry(exps.clone()).or_insert(0);
            *e += c;
            *e == 0
        };
        if now_zero {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &IPoly) -> IPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &IPoly) -> IPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i128) -> IPoly {
        if c == 0 {
            return IPoly::zero(self.nvars);
        }
        IPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &IPoly) -> IPoly {
        let mut out = IPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn diff(&self, var: usize) -> IPoly {
        let mut out = IPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[var] -= 1;
            out.insert(exps, c * e[var] as i128);
        }
        out
    }

    pub fn eval(&self, point: &[i128]) -> i128 {
        assert_eq!(point.len(), self.nvars);
        let mut acc = 0i128;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, &ex) in e.iter().enumerate() {
                for _ in 0..ex {
                    t *= point[i];
                }
            }
            acc += t;
        }
        acc
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<IPoly>]) -> IPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n));
    let nvars = m[0][0].nvars;
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = IPoly::zero(nvars);
    for j in 0..n {
        if m[0][j].terms.is_empty() {
            continue;
        }
        let minor: Vec<Vec<IPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}

/// Rank of an integer matrix by fraction-free elimination in i128.
pub fn rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0usize;
    let mut prev = 1i128;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
                assert_eq!(num % prev, 0, "fraction-free step must divide");
                m[i][j] = num / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}

/// All r-subsets of {0..n-1} in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Fiber dimension of the order-s Gauss map from hand-written frame rows:
/// k minus the rank of the Jacobian of the pivot-normalized Plücker chart,
/// evaluated exactly at an integer point.
pub fn gauss_fiber_dim_at(rows: &[Vec<IPoly>], k: usize, point: &[i128]) -> usize {
    let n1 = rows[0].len();
    let r = rows.len();
    let minors: Vec<IPoly> = combinations(n1, r)
        .iter()
        .map(|cols| {
            let sub: Vec<Vec<IPoly>> = rows
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            det(&sub)
        })
        .collect();
    let pivot = minors
        .iter()
        .position(|p| p.eval(point) != 0)
        .expect("some Plücker coordinate is nonzero at the oracle point");
    let g = minors[pivot].eval(point);
    let dg: Vec<i128> = (0..k).map(|i| minors[pivot].diff(i).eval(point)).collect();
    let mut jac = Vec::new();
    for (j, f) in minors.iter().enumerate() {
        if j == pivot {
            continue;
        }
        let fv = f.eval(point);
        jac.push(
            (0..k)
                .map(|i| f.diff(i).eval(point) * g - fv * dg[i])
                .collect(),
        );
    }
    k - rank(jac)
}

/// dim Tan^s from hand-written frame rows: rank of the Jacobian of the
/// joint (u, lambda) parametrization at an integer point, minus one.
pub fn osculating_dim_at(rows: &[Vec<IPoly>], k: usize, point: &[i128]) -> usize {
    let n1 = rows[0].len();
    let r = rows.len();
    let nvars = k + r;
    // embed rows into the extended ring and form Phi_c = sum lambda_j B_jc
    let phi: Vec<IPoly> = (0..n1)
        .map(|c| {
            let mut acc = IPoly::zero(nvars);
            for (j, row) in rows.iter().enumerate() {
                let mut lifted = IPoly::zero(nvars);
                for (e, v) in &row[c].terms {
                    let mut exps = e.clone();
                    exps.extend(std::iter::repeat_n(0, r));
                    lifted.insert(exps, *v);
                }
                acc = acc.add(&lifted.mul(&IPoly::var(nvars, k + j)));
            }
            acc
        })
        .collect();
    let jac: Vec<Vec<i128>> = phi
        .iter()
        .map(|f| (0..nvars).map(|i| f.diff(i).eval(point)).collect())
        .collect();
    rank(jac) - 1
}

/// Vertex dimension of a system of forms from integer coefficient rows
/// over the graded monomial basis: nvars minus the rank of the matrix of
/// directional-derivative coefficients.
pub fn vertex_dim(forms: &[IPoly], nvars: usize) -> usize {
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for f in forms {
        let partials: Vec<IPoly> = (0..nvars).map(|j| f.diff(j)).collect();
        let mut monos: Vec<Vec<u32>> = partials
            .iter()
            .flat_map(|p| p.terms.keys().cloned())
            .collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            rows.push(
                partials
                    .iter()
                    .map(|p| p.terms.get(&m).copied().unwrap_or(0))
                    .collect(),
            );
        }
    }
    if rows.is_empty() {
        return nvars;
    }
    nvars - rank(rows)
}

//! Fundamental forms as linear systems of degree-t forms on the
//! projectivized tangent space, plus Jacobian systems, containment, and
//! the dimension recursion check.
//!
//! The t-th form is built from the order-t jet rows reduced modulo the
//! span of the order-(t-1) jet matrix: the residues, read in the canonical
//! complement coordinates (non-pivot columns of the reduced span), are the
//! coefficients of degree-t forms in the k cotangent variables.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::exact::{multinomial, Mono, Poly, QMatrix, Rat};
use crate::jets::{adapted_frame, jet_matrix, DimProfile};
use crate::variety::{ParamVariety, SamplePoint};

/// Names for the cotangent variables, default w1..wk.
#[derive(Clone, Debug)]
pub struct FormVarLabels(pub Vec<String>);

impl FormVarLabels {
    pub fn default_for(k: usize) -> Self {
        FormVarLabels((1..=k).map(|i| format!("w{i}")).collect())
    }

    pub fn refs(&self) -> Vec<&str> {
        self.0.iter().map(|s| s.as_str()).collect()
    }
}

/// A linear system of degree-t forms in k variables, stored projectively:
/// the basis rows are coefficient vectors over the graded monomial basis,
/// kept in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinSys {
    pub degree: usize,
    pub nvars: usize,
    pub basis: QMatrix,
}

impl LinSys {
    /// Canonicalize arbitrary coefficient rows into a system.
    pub fn from_rows(degree: usize, nvars: usize, rows: Vec<Vec<Rat>>) -> LinSys {
        let cols = Mono::all_of_degree(nvars, degree as u32).len();
        let r = QMatrix::from_rows(rows, cols).rref();
        let basis = QMatrix::from_rows(
            (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect(),
            cols,
        );
        LinSys { degree, nvars, basis }
    }

    pub fn empty(degree: usize, nvars: usize) -> LinSys {
        LinSys::from_rows(degree, nvars, Vec::new())
    }

    pub fn from_polys(degree: usize, nvars: usize, polys: &[Poly]) -> LinSys {
        let monos = Mono::all_of_degree(nvars, degree as u32);
        let rows = polys
            .iter()
            .map(|p| {
                assert!(p.terms().all(|(m, _)| m.degree() as usize == degree));
                monos.iter().map(|m| p.coeff(m)).collect()
            })
            .collect();
        LinSys::from_rows(degree, nvars, rows)
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    /// The degree-t monomial basis indexing the columns.
    pub fn monomials(&self) -> Vec<Mono> {
        Mono::all_of_degree(self.nvars, self.degree as u32)
    }

    /// Basis rows as polynomials in the cotangent variables.
    pub fn forms_as_polys(&self) -> Vec<Poly> {
        let monos = self.monomials();
        (0..self.basis.rows())
            .map(|i| {
                Poly::from_terms(
                    self.nvars,
                    monos
                        .iter()
                        .enumerate()
                        .map(|(j, m)| (m.clone(), self.basis.get(i, j).clone()))
                        .collect(),
                )
            })
            .collect()
    }

    /// Basis forms rendered with primitive integer coefficients.
    pub fn render_forms(&self, labels: &FormVarLabels) -> Vec<String> {
        let names = labels.refs();
        self.forms_as_polys()
            .iter()
            .map(|p| p.canonical().render(&names))
            .collect()
    }
}

/// dim |I^t| = (number of basis forms) - 1; -1 for the empty system.
pub fn projective_dim(s: &LinSys) -> i64 {
    s.basis.rows() as i64 - 1
}

/// Construct |I^t| at the sample point `p`.
pub fn fundamental_form(
    v: &ParamVariety,
    p: &SamplePoint,
    t: usize,
    limits: &Limits,
) -> Result<LinSys> {
    if t < 2 {
        return Err(Error::Usage(
            "fundamental forms are defined for order at least 2".into(),
        ));
    }
    let k = v.k();
    let frame = adapted_frame(v, p, t - 1, limits)?;
    let span = &frame.reduced;
    let jm = jet_matrix(v, p, t, limits)?;
    let complement = span.free_cols();
    let alphas_t = Mono::all_of_degree(k, t as u32);
    let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::zero(); alphas_t.len()]; complement.len()];
    for (col_idx, alpha) in alphas_t.iter().enumerate() {
        let row = jm
            .row_of(alpha)
            .expect("order-t multi-index present in the jet matrix");
        let residue = span.reduce_vector(jm.rows.row(row));
        let weight = Rat::from_bigint(multinomial(alpha).into());
        for (ell, &c) in complement.iter().enumerate() {
            rows[ell][col_idx] = &residue[c] * &weight;
        }
    }
    Ok(LinSys::from_rows(t, k, rows))
}

/// The span of all first partials of the basis forms, one degree down.
pub fn jacobian_system(s: &LinSys) -> Result<LinSys> {
    if s.degree < 2 {
        return Err(Error::Usage(
            "the Jacobian system needs forms of degree at least 2".into(),
        ));
    }
    let mut partials = Vec::new();
    for f in s.forms_as_polys() {
        for j in 0..s.nvars {
            let d = f.diff(j);
            if !d.is_zero() {
                partials.push(d);
            }
        }
    }
    Ok(LinSys::from_polys(s.degree - 1, s.nvars, &partials))
}

/// Whether every form of `b` lies in the span of `a`. The empty system is
/// contained in anything; otherwise degree and variable count must match.
pub fn contains(a: &LinSys, b: &LinSys) -> Result<bool> {
    if b.is_empty() {
        return Ok(true);
    }
    if a.degree != b.degree || a.nvars != b.nvars {
        return Err(Error::Usage(format!(
            "containment needs matching systems (degree {} in {} vars vs degree {} in {} vars)",
            a.degree, a.nvars, b.degree, b.nvars
        )));
    }
    a.basis.span_contains(&b.basis)
}

/// d_t = d_{t-1} + dim|I^t| + 1 for every computed order; `forms[i]`
/// holds |I^{i+2}|.
pub fn check_dim_recursion(profile: &DimProfile, forms: &[LinSys]) -> bool {
    forms.iter().enumerate().all(|(i, f)| {
        let t = i + 2;
        if t > profile.max_order() {
            return true;
        }
        profile.d(t) as i64 == profile.d(t - 1) as i64 + projective_dim(f) + 1
    })
}

//! Cone vertices of linear systems of forms, perfect-power detection, and
//! the shared-linear-form test.
//!
//! In characteristic zero a homogeneous form is a cone with vertex
//! containing v exactly when the directional derivative D_v F vanishes
//! identically, so the common vertex of a system is the kernel of a matrix
//! whose rows collect the coefficients of the partials.

use crate::error::{Error, Result};
use crate::exact::{Mono, Poly, QMatrix, Rat};
use crate::fundforms::LinSys;

/// The maximal linear subspace of T_P along which every form of the
/// source system is translation-invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpace {
    /// Rows are independent k-vectors spanning the vertex.
    pub basis: QMatrix,
    pub dim: usize,
}

/// Common cone vertex of all forms of `s`; the full space for the empty
/// system.
pub fn vertex(s: &LinSys) -> VertexSpace {
    let k = s.nvars;
    if s.is_empty() {
        return VertexSpace {
            basis: QMatrix::identity(k),
            dim: k,
        };
    }
    // rows indexed by (form, monomial of degree t-1); v lies in the vertex
    // iff sum_j v_j dF/dw_j = 0 for every form, i.e. M v = 0
    let lower = Mono::all_of_degree(k, s.degree as u32 - 1);
    let mut rows = Vec::new();
    for f in s.forms_as_polys() {
        let partials: Vec<Poly> = (0..k).map(|j| f.diff(j)).collect();
        for m in &lower {
            rows.push(partials.iter().map(|p| p.coeff(m)).collect::<Vec<Rat>>());
        }
    }
    let m = QMatrix::from_rows(rows, k);
    let kernel = m.nullspace();
    let dim = kernel.len();
    VertexSpace {
        basis: QMatrix::from_rows(kernel, k),
        dim,
    }
}

/// Decompose a nonzero form as c * l^t for a linear form l (normalized
/// with first nonzero coefficient 1), when possible.
pub fn perfect_power(f: &Poly) -> Result<Option<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::Usage(
            "perfect-power test expects a nonzero form".into(),
        ));
    }
    let t = f.degree().expect("nonzero") as usize;
    if t == 0 {
        return Ok(None);
    }
    let candidate = match power_candidate(f, t) {
        Some(l) => l,
        None => return Ok(None),
    };
    // final verification: f must be a scalar multiple of candidate^t
    let power = candidate.pow(t as u32);
    let (lm, lc) = power.leading_term().expect("nonzero power");
    let scale = &f.coeff(lm) / lc;
    if scale.is_zero() {
        return Ok(None);
    }
    if power.scale(&scale) == *f {
        Ok(Some((candidate, t)))
    } else {
        Ok(None)
    }
}

fn power_candidate(f: &Poly, t: usize) -> Option<Poly> {
    if t == 1 {
        return Some(normalize_linear(f));
    }
    let partials: Vec<Poly> = (0..f.nvars())
        .map(|j| f.diff(j))
        .filter(|p| !p.is_zero())
        .collect();
    let sys = LinSys::from_polys(t - 1, f.nvars(), &partials);
    if sys.basis.rows() != 1 {
        return None;
    }
    power_candidate(&sys.forms_as_polys()[0], t - 1)
}

fn normalize_linear(l: &Poly) -> Poly {
    let monos = Mono::all_of_degree(l.nvars(), 1);
    let lead = monos
        .iter()
        .map(|m| l.coeff(m))
        .find(|c| !c.is_zero())
        .expect("nonzero linear form");
    l.scale(&lead.recip())
}

/// The shared linear form when two single-form systems of consecutive
/// degrees are both powers of it.
pub fn powers_of_common_linear(a: &LinSys, b: &LinSys) -> Result<Option<Poly>> {
    if a.basis.rows() != 1 || b.basis.rows() != 1 {
        return Err(Error::Usage(
            "the shared-linear-form test needs two systems of projective dimension 0".into(),
        ));
    }
    let la = perfect_power(&a.forms_as_polys()[0])?;
    let lb = perfect_power(&b.forms_as_polys()[0])?;
    Ok(match (la, lb) {
        (Some((la, _)), Some((lb, _))) if la == lb => Some(la),
        _ => None,
    })
}

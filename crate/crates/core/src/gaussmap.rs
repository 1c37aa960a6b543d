//! Higher Gauss maps through Plücker coordinates: fiber dimensions from
//! the rank of the differential, the cone-vertex cross-check, and the
//! dimension of the osculating variety.
//!
//! The s-th Gauss map sends a point to the span of its adapted jet rows,
//! a point of the Grassmannian with the maximal minors as coordinates.
//! Its fiber dimension is k minus the generic rank of the Jacobian of an
//! affine chart of that map; the cone theorem check compares this with the
//! vertex dimension of the next fundamental form, computed independently.

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{Config, Limits};
use crate::conegeom::vertex;
use crate::error::{Error, Result};
use crate::exact::funcfield::poly_det;
use crate::exact::{binomial, Mono, Poly, QMatrix, Rat};
use crate::fundforms::{fundamental_form, projective_dim};
use crate::jets::{adapted_frame, survey, symbolic_jet_rows, AdaptedFrame, Survey};
use crate::variety::{ParamVariety, SamplePoint};

/// Symbolic Plücker coordinates of the s-th Gauss map.
#[derive(Clone, Debug)]
pub struct PluckerChart {
    pub s: usize,
    /// Multi-indices of the adapted rows spanning the osculating space.
    pub selected: Vec<Mono>,
    /// One maximal minor per column subset, as polynomials in the
    /// parameters (subsets in lexicographic order).
    pub coords: Vec<Poly>,
    pub col_sets: Vec<Vec<usize>>,
    /// Index of the first coordinate nonzero at the chart's sample point.
    pub pivot: usize,
}

/// Verification record for one order of the Gauss map.
#[derive(Clone, Debug)]
pub struct GaussAnalysis {
    pub s: usize,
    /// Fiber dimension m from the Plücker route.
    pub fiber_dim: usize,
    /// k - m.
    pub image_dim: usize,
    /// Vertex dimension of |I^{s+1}| from the form route.
    pub vertex_dim: usize,
    /// Whether the two routes agree.
    pub theorem_pass: bool,
    /// dim Tan^s when the osculating space does not fill the ambient space.
    pub tan_dim: Option<usize>,
    /// C(k - m + s, s + 1).
    pub bound_rhs: usize,
    /// d_{s+1} <= d_s + bound_rhs.
    pub bound_pass: bool,
    /// Equality in the bound.
    pub bound_equality: bool,
    /// Whether |I^{s+1}| has the dimension of the complete cone system.
    pub complete_cone_match: bool,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Symbolic rows of the frame selection, looked up in the jet cache.
fn selected_symbolic_rows(v: &ParamVariety, frame: &AdaptedFrame, s: usize) -> Vec<Vec<Poly>> {
    let sym = symbolic_jet_rows(v, s);
    let selected: Vec<Mono> = frame
        .selected
        .iter()
        .take(s + 1)
        .flatten()
        .cloned()
        .collect();
    selected
        .iter()
        .map(|a| {
            sym.iter()
                .find(|(b, _)| b == a)
                .map(|(_, row)| row.clone())
                .expect("selected multi-index within jet order")
        })
        .collect()
}

struct Minors {
    selected: Vec<Mono>,
    col_sets: Vec<Vec<usize>>,
    coords: Vec<Poly>,
}

fn plucker_minors(
    v: &ParamVariety,
    frame: &AdaptedFrame,
    s: usize,
    limits: &Limits,
) -> Result<Minors> {
    let rows = selected_symbolic_rows(v, frame, s);
    let r = rows.len();
    let n1 = v.ambient_dim() + 1;
    let count = binomial(n1, r);
    if count > limits.max_plucker_coords as u128 {
        return Err(Error::Resource(format!(
            "the order-{s} Gauss map needs {count} Plücker coordinates, above the limit of {}",
            limits.max_plucker_coords
        )));
    }
    let col_sets = combinations(n1, r);
    let coords: Vec<Poly> = col_sets
        .iter()
        .map(|cols| {
            let minor: Vec<Vec<Poly>> = rows
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            poly_det(&minor)
        })
        .collect();
    let selected = frame
        .selected
        .iter()
        .take(s + 1)
        .flatten()
        .cloned()
        .collect();
    Ok(Minors {
        selected,
        col_sets,
        coords,
    })
}

/// Maximal minors of the adapted rows as functions of the parameters, with
/// the pivot chosen as the first coordinate nonzero at `p`.
pub fn plucker_chart(
    v: &ParamVariety,
    frame: &AdaptedFrame,
    s: usize,
    p: &SamplePoint,
    limits: &Limits,
) -> Result<PluckerChart> {
    let r = frame
        .selected
        .iter()
        .take(s + 1)
        .map(|g| g.len())
        .sum::<usize>();
    if r > v.ambient_dim() {
        return Err(Error::Usage(format!(
            "the order-{s} osculating space fills the ambient space; the Gauss map is constant"
        )));
    }
    let minors = plucker_minors(v, frame, s, limits)?;
    let pivot = minors
        .coords
        .iter()
        .position(|c| !c.eval(&p.coords).is_zero())
        .ok_or_else(|| {
            Error::Genericity("every Plücker coordinate vanishes at the sample point".into())
        })?;
    Ok(PluckerChart {
        s,
        selected: minors.selected,
        coords: minors.coords,
        col_sets: minors.col_sets,
        pivot,
    })
}

/// Rank of the Jacobian of the chart `coords_J / coords_pivot` at a point,
/// using the quotient rule with the denominators cleared row by row.
fn chart_jacobian_rank(
    coords: &[Poly],
    diffs: &[Vec<Poly>],
    pivot: usize,
    point: &[Rat],
    k: usize,
) -> usize {
    let g = coords[pivot].eval(point);
    debug_assert!(!g.is_zero());
    let dg: Vec<Rat> = (0..k).map(|i| diffs[pivot][i].eval(point)).collect();
    let mut rows = Vec::with_capacity(coords.len() - 1);
    for (j, f) in coords.iter().enumerate() {
        if j == pivot {
            continue;
        }
        let fv = f.eval(point);
        let row: Vec<Rat> = (0..k)
            .map(|i| &(&diffs[j][i].eval(point) * &g) - &(&fv * &dg[i]))
            .collect();
        rows.push(row);
    }
    QMatrix::from_rows(rows, k).rank()
}

/// Fiber dimension of the s-th Gauss map given a sampling survey that
/// covers order s+1. The frame is frozen at the survey's generic sample.
pub fn fiber_dim_with(v: &ParamVariety, sv: &Survey, s: usize, cfg: &Config) -> Result<usize> {
    if s < 1 {
        return Err(Error::Usage("the Gauss map order must be at least 1".into()));
    }
    assert!(sv.profile.max_order() > s, "survey too shallow");
    let k = v.k();
    let n = v.ambient_dim();
    let d_s = sv.profile.d(s);
    // degenerate dispatch: constant Gauss map
    if d_s == n || sv.profile.d(s + 1) == d_s {
        return Ok(k);
    }
    let frame = adapted_frame(v, &sv.generic, s, &cfg.limits)?;
    let coords = plucker_minors(v, &frame, s, &cfg.limits)?.coords;
    let diffs: Vec<Vec<Poly>> = coords
        .iter()
        .map(|c| (0..k).map(|i| c.diff(i)).collect())
        .collect();
    let mut best_rank = None;
    for p in &sv.samples {
        let pivot = coords.iter().position(|c| !c.eval(&p.coords).is_zero());
        let Some(pivot) = pivot else { continue };
        let r = chart_jacobian_rank(&coords, &diffs, pivot, &p.coords, k);
        best_rank = Some(best_rank.map_or(r, |b: usize| b.max(r)));
    }
    let rank = best_rank.ok_or_else(|| {
        Error::Genericity(format!(
            "all Plücker coordinates of '{}' vanish at every sample",
            v.name()
        ))
    })?;
    Ok(k - rank)
}

/// Fiber dimension of the s-th Gauss map (self-contained entry point).
pub fn gauss_fiber_dim(v: &ParamVariety, s: usize, cfg: &Config) -> Result<usize> {
    let sv = survey(v, s + 1, cfg)?;
    fiber_dim_with(v, &sv, s, cfg)
}

/// Dimension of the variety of osculating s-spaces, from the generic rank
/// of the Jacobian of the joint parametrization (u, lambda) ->
/// sum_j lambda_j B_j(u), minus one for the projective scaling.
pub fn osculating_variety_dim_with(
    v: &ParamVariety,
    sv: &Survey,
    s: usize,
    cfg: &Config,
) -> Result<usize> {
    let k = v.k();
    let n1 = v.ambient_dim() + 1;
    let frame = adapted_frame(v, &sv.generic, s, &cfg.limits)?;
    let rows = selected_symbolic_rows(v, &frame, s);
    let r = rows.len();
    let nvars = k + r;
    // Phi_c = sum_j lambda_j * B_{j,c} in the extended ring (lambdas last)
    let phi: Vec<Poly> = (0..n1)
        .map(|c| {
            let mut acc = Poly::zero(nvars);
            for (j, row) in rows.iter().enumerate() {
                let lam = Poly::var(nvars, k + j);
                acc = &acc + &(&lam * &row[c].extend_vars(r));
            }
            acc
        })
        .collect();
    let jac: Vec<Vec<Poly>> = phi
        .iter()
        .map(|f| (0..nvars).map(|i| f.diff(i)).collect())
        .collect();
    let mut best = 0usize;
    for p in &sv.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed_used ^ 0x9e37_79b9_7f4a_7c15);
        let bound = cfg.bound as i64;
        let mut lambda: Vec<Rat> = Vec::with_capacity(r);
        for j in 0..r {
            let mut num = rng.random_range(-bound..=bound);
            if j == 0 {
                while num == 0 {
                    num = rng.random_range(-bound..=bound);
                }
            }
            let den = rng.random_range(1..=bound);
            lambda.push(Rat::new(num, den));
        }
        let mut point = p.coords.clone();
        point.extend(lambda);
        let rows: Vec<Vec<Rat>> = jac
            .iter()
            .map(|row| row.iter().map(|q| q.eval(&point)).collect())
            .collect();
        best = best.max(QMatrix::from_rows(rows, nvars).rank());
    }
    Ok(best - 1)
}

/// Dimension of Tan^s (self-contained entry point).
pub fn osculating_variety_dim(v: &ParamVariety, s: usize, cfg: &Config) -> Result<usize> {
    let sv = survey(v, s, cfg)?;
    osculating_variety_dim_with(v, &sv, s, cfg)
}

/// Run both routes of the cone theorem at order s and check the dimension
/// bound d_{s+1} <= d_s + C(k-m+s, s+1).
pub fn verify_cone_theorem(v: &ParamVariety, s: usize, cfg: &Config) -> Result<GaussAnalysis> {
    let sv = survey(v, s + 1, cfg)?;
    let form = fundamental_form(v, &sv.generic, s + 1, &cfg.limits)?;
    analyze_with(v, &sv, &form, s, cfg)
}

/// Shared implementation; `form` must be |I^{s+1}| at the survey's generic
/// sample.
pub fn analyze_with(
    v: &ParamVariety,
    sv: &Survey,
    form: &crate::fundforms::LinSys,
    s: usize,
    cfg: &Config,
) -> Result<GaussAnalysis> {
    let k = v.k();
    let n = v.ambient_dim();
    let m = fiber_dim_with(v, sv, s, cfg)?;
    let vx = vertex(form);
    let d_s = sv.profile.d(s);
    let d_s1 = sv.profile.d(s + 1);
    let bound_rhs = binomial(k - m + s, s + 1) as usize;
    let bound_pass = d_s1 <= d_s + bound_rhs;
    let bound_equality = d_s1 == d_s + bound_rhs;
    let complete_cone_match = (projective_dim(form) + 1) as usize == bound_rhs;
    let tan_dim = if d_s < n {
        Some(osculating_variety_dim_with(v, sv, s, cfg)?)
    } else {
        None
    };
    Ok(GaussAnalysis {
        s,
        fiber_dim: m,
        image_dim: k - m,
        vertex_dim: vx.dim,
        theorem_pass: m == vx.dim,
        tan_dim,
        bound_rhs,
        bound_pass,
        bound_equality,
        complete_cone_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{catalog, catalog_entry, sample_point};

    fn chart_for(name: &str, s: usize) -> (ParamVariety, PluckerChart) {
        let cfg = Config::default();
        let v = catalog_entry(name).unwrap();
        let p = sample_point(&v, cfg.seed, cfg.bound).unwrap();
        let frame = adapted_frame(&v, &p, s, &cfg.limits).unwrap();
        let chart = plucker_chart(&v, &frame, s, &p, &cfg.limits).unwrap();
        (v, chart)
    }

    #[test]
    fn conic_tangent_chart() {
        let (v, chart) = chart_for("rnc2", 1);
        assert_eq!(chart.coords.len(), 3);
        // minors of (1, u, u^2) / (0, 1, 2u): 1, 2u, u^2 up to sign
        let names = v.var_refs();
        let printed: Vec<String> = chart
            .coords
            .iter()
            .map(|c| c.render(&names))
            .collect();
        assert_eq!(printed, vec!["1", "2*u", "u^2"]);
        assert_eq!(chart.pivot, 0);
    }

    #[test]
    fn chart_sizes() {
        let (_, chart) = chart_for("rnc4", 1);
        assert_eq!(chart.coords.len(), 10);
        assert!(chart
            .coords
            .iter()
            .all(|c| c.degree().unwrap_or(0) <= 7));

        let (_, chart) = chart_for("cone_rnc3", 1);
        assert_eq!(chart.coords.len(), 10);
    }

    #[test]
    fn fiber_dims() {
        let cfg = Config::default();
        // osculating conic fills the plane: constant map, m = k
        assert_eq!(
            gauss_fiber_dim(&catalog_entry("rnc2").unwrap(), 2, &cfg).unwrap(),
            1
        );
        // the Gauss image of a cone over a curve is a curve
        assert_eq!(
            gauss_fiber_dim(&catalog_entry("cone_rnc3").unwrap(), 1, &cfg).unwrap(),
            1
        );
        assert_eq!(
            gauss_fiber_dim(&catalog_entry("veronese").unwrap(), 1, &cfg).unwrap(),
            0
        );
    }

    #[test]
    fn cone_theorem_examples() {
        let cfg = Config::default();
        let a = verify_cone_theorem(&catalog_entry("cone_rnc3").unwrap(), 1, &cfg).unwrap();
        assert_eq!(a.fiber_dim, 1);
        assert_eq!(a.vertex_dim, 1);
        assert!(a.theorem_pass);

        let a = verify_cone_theorem(&catalog_entry("veronese").unwrap(), 1, &cfg).unwrap();
        assert_eq!(a.fiber_dim, 0);
        assert_eq!(a.vertex_dim, 0);
        assert!(a.theorem_pass);

        let a = verify_cone_theorem(&catalog_entry("rnc4").unwrap(), 2, &cfg).unwrap();
        assert_eq!(a.fiber_dim, 0);
        assert_eq!(a.vertex_dim, 0);
        assert!(a.theorem_pass);
    }

    #[test]
    fn two_route_agreement_across_catalog() {
        let cfg = Config::default();
        for v in catalog() {
            for s in 1..=3usize {
                let sv = survey(&v, s + 1, &cfg).unwrap();
                if sv.profile.d(s) >= v.ambient_dim() {
                    continue;
                }
                let form = fundamental_form(&v, &sv.generic, s + 1, &cfg.limits).unwrap();
                let a = analyze_with(&v, &sv, &form, s, &cfg).unwrap();
                assert!(
                    a.theorem_pass,
                    "{} at s={s}: fiber {} vs vertex {}",
                    v.name(),
                    a.fiber_dim,
                    a.vertex_dim
                );
            }
        }
    }

    #[test]
    fn osculating_variety_dims() {
        let cfg = Config::default();
        assert_eq!(
            osculating_variety_dim(&catalog_entry("rnc4").unwrap(), 1, &cfg).unwrap(),
            2
        );
        assert_eq!(
            osculating_variety_dim(&catalog_entry("cone_rnc3").unwrap(), 1, &cfg).unwrap(),
            3
        );
        // the osculating plane of a conic is the whole plane
        assert_eq!(
            osculating_variety_dim(&catalog_entry("rnc2").unwrap(), 2, &cfg).unwrap(),
            2
        );
    }

    #[test]
    fn chart_independence_of_pivot() {
        // the Jacobian rank is the same for every admissible pivot choice
        let cfg = Config::default();
        let v = catalog_entry("veronese").unwrap();
        let sv = survey(&v, 2, &cfg).unwrap();
        let frame = adapted_frame(&v, &sv.generic, 1, &cfg.limits).unwrap();
        let coords = plucker_minors(&v, &frame, 1, &cfg.limits).unwrap().coords;
        let k = v.k();
        let diffs: Vec<Vec<Poly>> = coords
            .iter()
            .map(|c| (0..k).map(|i| c.diff(i)).collect())
            .collect();
        let p = &sv.generic;
        let mut ranks = Vec::new();
        for (j, c) in coords.iter().enumerate() {
            if c.eval(&p.coords).is_zero() {
                continue;
            }
            ranks.push(chart_jacobian_rank(&coords, &diffs, j, &p.coords, k));
        }
        assert!(!ranks.is_empty());
        assert!(ranks.windows(2).all(|w| w[0] == w[1]), "{ranks:?}");
    }

    #[test]
    fn fiber_dim_seed_stable() {
        for name in ["togliatti", "cone_rnc3", "tangent_dev_rnc4"] {
            let v = catalog_entry(name).unwrap();
            let ms: Vec<usize> = (0..5u64)
                .map(|seed| gauss_fiber_dim(&v, 1, &Config::with_seed(seed)).unwrap())
                .collect();
            assert!(ms.windows(2).all(|w| w[0] == w[1]), "{name}: {ms:?}");
        }
    }

    #[test]
    fn plucker_guard_trips() {
        let cfg = Config::default();
        let v = catalog_entry("rnc4").unwrap();
        let p = sample_point(&v, cfg.seed, cfg.bound).unwrap();
        let frame = adapted_frame(&v, &p, 1, &cfg.limits).unwrap();
        let tight = Limits {
            max_plucker_coords: 5,
            ..Limits::default()
        };
        assert!(matches!(
            plucker_chart(&v, &frame, 1, &p, &tight),
            Err(Error::Resource(_))
        ));
    }
}

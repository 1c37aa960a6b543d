//! Jet matrices, osculating-space dimensions, adapted frames, and Laplace
//! relations.
//!
//! The order-t jet matrix stacks every partial derivative D^alpha of the
//! coordinate vector for |alpha| <= t, in the graded enumeration order of
//! the multi-indices. Its rank at a generic point is d_t + 1.

use std::collections::BTreeMap;

use crate::config::{Config, Limits};
use crate::error::{Error, Result};
use crate::exact::funcfield::func_nullspace;
use crate::exact::{binomial, Mono, Poly, QMatrix, Rat, RatFunc, Rref};
use crate::variety::{sample_point, ParamVariety, SamplePoint};

/// Jet rows evaluated at a sample point.
#[derive(Clone, Debug)]
pub struct JetMatrix {
    pub order: usize,
    pub rows: QMatrix,
    /// Multi-index labelling each row, in row order.
    pub alphas: Vec<Mono>,
}

impl JetMatrix {
    pub fn row_of(&self, alpha: &Mono) -> Option<usize> {
        self.alphas.iter().position(|a| a == alpha)
    }
}

/// The sequence d_1..d_tmax with expected values and increments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimProfile {
    /// `dims[i]` = d_(i+1).
    pub dims: Vec<usize>,
    /// `expected[i]` = min(N, C(k+t, k) - 1) at t = i+1.
    pub expected: Vec<usize>,
    /// `deltas[i]` = d_t - d_(t-1) - 1 at t = i+2.
    pub deltas: Vec<i64>,
}

impl DimProfile {
    /// d_t for 1 <= t <= max order (d_0 = 0 by convention).
    pub fn d(&self, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            self.dims[t - 1]
        }
    }

    pub fn max_order(&self) -> usize {
        self.dims.len()
    }
}

/// Per-order row selection forming a basis of each osculating space.
#[derive(Clone, Debug)]
pub struct AdaptedFrame {
    pub order: usize,
    /// `selected[s]` lists the multi-indices of order s whose jet rows extend
    /// the lower orders to a basis; the graded-lex earliest choice.
    pub selected: Vec<Vec<Mono>>,
    /// Reduced echelon form of the span of the selected rows.
    pub reduced: Rref,
    /// C with C * (selected rows) = reduced.
    pub change_of_basis: QMatrix,
}

impl AdaptedFrame {
    /// All selected multi-indices in row order.
    pub fn selected_flat(&self) -> Vec<Mono> {
        self.selected.iter().flatten().cloned().collect()
    }

    /// Cumulative selected-row counts per order; entry s equals d_s + 1
    /// at the sample point.
    pub fn cumulative_counts(&self) -> Vec<usize> {
        let mut acc = 0;
        self.selected
            .iter()
            .map(|g| {
                acc += g.len();
                acc
            })
            .collect()
    }
}

/// A linear relation among the jet rows, with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceRelation {
    /// One coefficient per jet row (orders <= t, row order), denominator-
    /// cleared, primitive and coprime; the first nonzero entry has a
    /// positive graded-lex leading coefficient.
    pub coefficients: Vec<Poly>,
}

fn check_jet_guard(k: usize, t: usize, limits: &Limits) -> Result<usize> {
    let rows = binomial(k + t, k);
    if rows > limits.max_jet_rows as u128 {
        return Err(Error::Resource(format!(
            "order-{t} jet matrix needs {rows} rows, above the limit of {}",
            limits.max_jet_rows
        )));
    }
    Ok(rows as usize)
}

/// Symbolic jet rows D^alpha of the coordinate vector, |alpha| <= t, in
/// graded enumeration order.
pub fn symbolic_jet_rows(v: &ParamVariety, t: usize) -> Vec<(Mono, Vec<Poly>)> {
    let k = v.k();
    let alphas = Mono::all_up_to(k, t as u32);
    let mut cache: BTreeMap<Mono, Vec<Poly>> = BTreeMap::new();
    cache.insert(Mono::one(k), v.coords().to_vec());
    for alpha in &alphas {
        if cache.contains_key(alpha) {
            continue;
        }
        let var = (0..k).find(|&i| alpha.exp(i) > 0).expect("nonzero alpha");
        let parent = alpha.step_down(var).expect("positive exponent");
        let row: Vec<Poly> = cache[&parent].iter().map(|p| p.diff(var)).collect();
        cache.insert(alpha.clone(), row);
    }
    alphas
        .into_iter()
        .map(|a| {
            let row = cache[&a].clone();
            (a, row)
        })
        .collect()
}

/// Evaluate the order-t jet matrix at a sample point.
pub fn jet_matrix(
    v: &ParamVariety,
    p: &SamplePoint,
    t: usize,
    limits: &Limits,
) -> Result<JetMatrix> {
    if t < 1 {
        return Err(Error::Usage("jet order must be at least 1".into()));
    }
    check_jet_guard(v.k(), t, limits)?;
    let sym = symbolic_jet_rows(v, t);
    let mut alphas = Vec::with_capacity(sym.len());
    let mut rows = Vec::with_capacity(sym.len());
    for (alpha, row) in sym {
        alphas.push(alpha);
        rows.push(row.iter().map(|q| q.eval(&p.coords)).collect());
    }
    Ok(JetMatrix {
        order: t,
        rows: QMatrix::from_rows(rows, v.ambient_dim() + 1),
        alphas,
    })
}

/// Sampling survey shared by the higher-level operations: the sample set,
/// the generic dimension profile over it, and one sample realizing every
/// generic rank.
#[derive(Clone, Debug)]
pub struct Survey {
    pub samples: Vec<SamplePoint>,
    pub profile: DimProfile,
    pub generic: SamplePoint,
}

/// Draw the configured samples for a variety: seeds `seed .. seed+samples`.
pub fn sample_points(v: &ParamVariety, cfg: &Config) -> Result<Vec<SamplePoint>> {
    (0..cfg.samples)
        .map(|i| sample_point(v, cfg.seed.wrapping_add(i as u64), cfg.bound))
        .collect()
}

/// Compute per-sample jet ranks up to `tmax` and aggregate the generic
/// profile (maximum over samples). Also picks the first sample attaining
/// every generic rank, extending the search deterministically if needed.
pub fn survey(v: &ParamVariety, tmax: usize, cfg: &Config) -> Result<Survey> {
    if tmax < 1 {
        return Err(Error::Usage("max order must be at least 1".into()));
    }
    check_jet_guard(v.k(), tmax, &cfg.limits)?;
    let samples = sample_points(v, cfg)?;
    let rank_vector = |p: &SamplePoint| -> Result<Vec<usize>> {
        (1..=tmax)
            .map(|t| Ok(jet_matrix(v, p, t, &cfg.limits)?.rows.rank()))
            .collect()
    };
    let mut per_sample = Vec::with_capacity(samples.len());
    for p in &samples {
        per_sample.push(rank_vector(p)?);
    }
    let generic_ranks: Vec<usize> = (0..tmax)
        .map(|i| per_sample.iter().map(|r| r[i]).max().expect("samples >= 1"))
        .collect();

    let mut generic = samples
        .iter()
        .zip(&per_sample)
        .find(|(_, r)| **r == generic_ranks)
        .map(|(p, _)| p.clone());
    if generic.is_none() {
        // no single sample was generic at every order; scan further seeds
        for extra in 0..32u64 {
            let p = sample_point(v, cfg.seed.wrapping_add(cfg.samples as u64 + extra), cfg.bound)?;
            let r = rank_vector(&p)?;
            if r.iter().zip(&generic_ranks).all(|(a, b)| a >= b) {
                generic = Some(p);
                break;
            }
        }
    }
    let generic = generic.ok_or_else(|| {
        Error::Genericity(format!(
            "no sample of '{}' realizes the generic jet ranks up to order {tmax}",
            v.name()
        ))
    })?;

    let k = v.k();
    let n = v.ambient_dim();
    let dims: Vec<usize> = generic_ranks.iter().map(|r| r - 1).collect();
    let expected: Vec<usize> = (1..=tmax)
        .map(|t| n.min(binomial(k + t, k) as usize - 1))
        .collect();
    let deltas: Vec<i64> = (1..tmax)
        .map(|i| dims[i] as i64 - dims[i - 1] as i64 - 1)
        .collect();
    Ok(Survey {
        samples,
        profile: DimProfile {
            dims,
            expected,
            deltas,
        },
        generic,
    })
}

/// Generic osculating dimensions d_1..d_tmax.
pub fn osculating_dims(v: &ParamVariety, tmax: usize, cfg: &Config) -> Result<DimProfile> {
    Ok(survey(v, tmax, cfg)?.profile)
}

/// Graded-lex-earliest row selection whose initial segments span the
/// successive osculating spaces at `p`.
pub fn adapted_frame(
    v: &ParamVariety,
    p: &SamplePoint,
    t: usize,
    limits: &Limits,
) -> Result<AdaptedFrame> {
    let jm = jet_matrix(v, p, t, limits)?;
    let n1 = v.ambient_dim() + 1;
    let mut selected: Vec<Vec<Mono>> = vec![Vec::new(); t + 1];
    let mut chosen_rows: Vec<Vec<Rat>> = Vec::new();
    let mut current = QMatrix::zeros(0, n1).rref();
    for (i, alpha) in jm.alphas.iter().enumerate() {
        let row = jm.rows.row(i);
        let residue = current.reduce_vector(row);
        if residue.iter().all(|x| x.is_zero()) {
            continue;
        }
        selected[alpha.degree() as usize].push(alpha.clone());
        chosen_rows.push(row.to_vec());
        current = QMatrix::from_rows(chosen_rows.clone(), n1).rref();
    }
    let sel_matrix = QMatrix::from_rows(chosen_rows, n1);
    // row-reducing [S | I] carries the elimination into the identity block
    let augmented = sel_matrix.augment(&QMatrix::identity(sel_matrix.rows())).rref();
    let mut change = QMatrix::zeros(sel_matrix.rows(), sel_matrix.rows());
    for i in 0..sel_matrix.rows() {
        for j in 0..sel_matrix.rows() {
            change.set(i, j, augmented.reduced.get(i, n1 + j).clone());
        }
    }
    Ok(AdaptedFrame {
        order: t,
        selected,
        reduced: current,
        change_of_basis: change,
    })
}

/// Basis of the relations with polynomial coefficients satisfied by the
/// order-t jet rows, computed exactly over the function field. Empty
/// exactly when the generic jet rank is full.
pub fn laplace_relations(
    v: &ParamVariety,
    t: usize,
    limits: &Limits,
) -> Result<Vec<LaplaceRelation>> {
    if t < 2 {
        return Err(Error::Usage(
            "relations are computed for order at least 2".into(),
        ));
    }
    check_jet_guard(v.k(), t, limits)?;
    let k = v.k();
    let sym = symbolic_jet_rows(v, t);
    let nrows = sym.len();
    let ncols = v.ambient_dim() + 1;
    // left kernel of the jet matrix = right kernel of its transpose
    let transpose: Vec<Vec<RatFunc>> = (0..ncols)
        .map(|c| {
            (0..nrows)
                .map(|r| RatFunc::from_poly(sym[r].1[c].clone()))
                .collect()
        })
        .collect();
    let kernel = func_nullspace(transpose, k);
    Ok(kernel
        .into_iter()
        .map(|vec| normalize_relation(vec, k))
        .collect())
}

/// Clear denominators, strip common factors, and fix the sign.
fn normalize_relation(vec: Vec<RatFunc>, nvars: usize) -> LaplaceRelation {
    let mut common_den = Poly::one(nvars);
    for f in &vec {
        common_den = Poly::lcm(&common_den, f.den());
    }
    let mut polys: Vec<Poly> = vec
        .iter()
        .map(|f| {
            let extra = common_den.div_exact(f.den()).expect("lcm divides");
            f.num() * &extra
        })
        .collect();
    let mut common = Poly::zero(nvars);
    for p in &polys {
        common = Poly::gcd(&common, p);
    }
    if !common.is_zero() && !(common.is_constant()) {
        polys = polys
            .iter()
            .map(|p| p.div_exact(&common).expect("gcd divides"))
            .collect();
    }
    // integer-normalize the whole vector by the joint rational content
    let mut content = Rat::zero();
    for p in &polys {
        content = Rat::content_gcd(&content, &p.rational_content());
        for (_, c) in p.terms() {
            content = Rat::content_gcd(&content, c);
        }
    }
    if content.is_zero() {
        content = Rat::one();
    }
    let lead_sign_neg = polys
        .iter()
        .find(|p| !p.is_zero())
        .map(|p| p.leading_coeff().is_negative())
        .unwrap_or(false);
    let scale = if lead_sign_neg { -content } else { content }.recip();
    LaplaceRelation {
        coefficients: polys.iter().map(|p| p.scale(&scale)).collect(),
    }
}

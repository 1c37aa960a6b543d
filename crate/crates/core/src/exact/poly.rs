//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a BTreeMap keyed by [`Mono`], so iteration follows the
//! graded enumeration order and equal polynomials have equal representations.
//! Zero coefficients are never stored; the zero polynomial has an empty map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::mono::Mono;
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(nvars), c);
        }
        Poly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(Mono::var(nvars, i), Rat::one())
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, entries: Vec<(Mono, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in entries {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Leading term under plain graded-lex (the display leader).
    pub fn leading_term(&self) -> Option<(&Mono, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| a.cmp_grlex(b))
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative. Panics if `var` is out of range.
    pub fn diff(&self, var: usize) -> Poly {
        assert!(
            var < self.nvars,
            "variable index {var} out of range for {} variables",
            self.nvars
        );
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(down) = m.step_down(var) {
                out.add_term(down, c * &Rat::from_int(m.exp(var) as i64));
            }
        }
        out
    }

    /// Exact evaluation. Panics when the point length disagrees with the
    /// variable count.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(
            point.len(),
            self.nvars,
            "evaluation point has {} coordinates, polynomial has {} variables",
            point.len(),
            self.nvars
        );
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term *= &point[i].pow(e);
                }
            }
            acc += &term;
        }
        acc
    }

    /// Substitute each variable by a polynomial (all images in a common ring).
    pub fn subst(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images
            .first()
            .map(|p| p.nvars())
            .unwrap_or(self.nvars);
        assert!(images.iter().all(|p| p.nvars() == target));
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = &term * &images[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Re-embed into a ring with `extra` additional trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend(extra), c.clone()))
                .collect(),
        }
    }

    /// Positive rational content (gcd of the coefficients); 1 for zero.
    pub fn rational_content(&self) -> Rat {
        let mut acc = Rat::zero();
        for c in self.terms.values() {
            acc = Rat::content_gcd(&acc, c);
        }
        if acc.is_zero() {
            Rat::one()
        } else {
            acc
        }
    }

    /// Canonical scalar multiple: integer coprime coefficients with a
    /// positive graded-lex leading coefficient.
    pub fn canonical(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        assert_eq!(self.nvars, d.nvars);
        let (dm, dc) = d.leading_term().expect("nonzero divisor");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term().expect("nonzero remainder");
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let qt = Poly::monomial(qm, qc);
            rem = &rem - &(&qt * d);
            quot = &quot + &qt;
        }
        Some(quot)
    }

    /// Collect coefficients with respect to one variable: index `i` holds
    /// the coefficient of `x_var^i` (with that variable's exponent cleared).
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            out[e].add_term(Mono::new(exps), c.clone());
        }
        out
    }

    fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut exps = m.exps().to_vec();
                exps[var] += e as u32;
                out.add_term(Mono::new(exps), v.clone());
            }
        }
        out
    }

    /// Greatest common divisor, canonicalized (primitive integer
    /// coefficients, positive graded-lex leading coefficient). Computed by
    /// a primitive pseudo-remainder sequence, recursing on the variables.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        assert_eq!(a.nvars, b.nvars);
        if a.is_zero() {
            return b.canonical();
        }
        if b.is_zero() {
            return a.canonical();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one(a.nvars);
        }
        // main variable: the highest-index variable present in either
        let var = (0..a.nvars)
            .rev()
            .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
            .expect("nonconstant polynomials have a variable");
        if a.degree_in(var) == 0 {
            let cont = content_in(b, var);
            return Poly::gcd(a, &cont);
        }
        if b.degree_in(var) == 0 {
            let cont = content_in(a, var);
            return Poly::gcd(&cont, b);
        }
        let cont_a = content_in(a, var);
        let cont_b = content_in(b, var);
        let g_cont = Poly::gcd(&cont_a, &cont_b);
        let mut p = a.div_exact(&cont_a).expect("content divides");
        let mut q = b.div_exact(&cont_b).expect("content divides");
        if p.degree_in(var) < q.degree_in(var) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = pseudo_rem(&p, &q, var);
            if r.is_zero() {
                break;
            }
            let r = r.div_exact(&content_in(&r, var)).expect("content divides");
            p = q;
            q = r;
        }
        (&g_cont * &q).canonical()
    }

    /// Least common multiple (canonicalized).
    pub fn lcm(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero(a.nvars());
        }
        let g = Poly::gcd(a, b);
        (&(a.div_exact(&g).expect("gcd divides")) * b).canonical()
    }

    /// Render with the given variable names, leading terms first.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Mono> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.cmp_grlex(a));
        let mut out = String::new();
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Content of `p` with respect to `var`: gcd of the `var`-coefficients.
fn content_in(p: &Poly, var: usize) -> Poly {
    let mut acc = Poly::zero(p.nvars());
    for c in p.coeffs_in(var) {
        acc = Poly::gcd(&acc, &c);
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    acc
}

/// Pseudo-remainder of `p` by `q` in the variable `var`.
fn pseudo_rem(p: &Poly, q: &Poly, var: usize) -> Poly {
    fn trim(rc: &mut Vec<Poly>) {
        while rc.last().is_some_and(|c| c.is_zero()) {
            rc.pop();
        }
    }
    let qc = q.coeffs_in(var);
    let dq = qc.len() - 1;
    let lc_q = qc[dq].clone();
    let mut rc = p.coeffs_in(var);
    trim(&mut rc);
    while rc.len() > dq {
        let dr = rc.len() - 1;
        let lead = rc[dr].clone();
        // rc = lc_q * rc - lead * y^(dr-dq) * qc
        for c in rc.iter_mut() {
            *c = &*c * &lc_q;
        }
        for (i, qi) in qc.iter().enumerate() {
            let idx = dr - dq + i;
            rc[idx] = &rc[idx] - &(&lead * qi);
        }
        debug_assert!(rc[dr].is_zero());
        rc.pop();
        trim(&mut rc);
    }
    Poly::from_coeffs_in(p.nvars(), var, &rc)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.render(&refs))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_uv(entries: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(
            2,
            entries
                .iter()
                .map(|(e, c)| (Mono::new(e.to_vec()), Rat::from_int(*c)))
                .collect(),
        )
    }

    #[test]
    fn diff_power_rule() {
        // d/dx (x^2*y) = 2*x*y
        let p = p_uv(&[(&[2, 1], 1)]);
        assert_eq!(p.diff(0), p_uv(&[(&[1, 1], 2)]));
        // d/dy (x^2) = 0
        let q = p_uv(&[(&[2, 0], 1)]);
        assert!(q.diff(1).is_zero());
        // d/du (u^2*v + u) = 2*u*v + 1
        let r = p_uv(&[(&[2, 1], 1), (&[1, 0], 1)]);
        assert_eq!(r.diff(0), p_uv(&[(&[1, 1], 2), (&[0, 0], 1)]));
    }

    #[test]
    #[should_panic(expected = "variable index")]
    fn diff_bad_index() {
        p_uv(&[(&[1, 0], 1)]).diff(2);
    }

    #[test]
    fn eval_examples() {
        let p = p_uv(&[(&[2, 1], 1)]);
        assert_eq!(
            p.eval(&[Rat::from_int(2), Rat::from_int(3)]),
            Rat::from_int(12)
        );
        assert_eq!(
            Poly::zero(2).eval(&[Rat::from_int(5), Rat::from_int(7)]),
            Rat::zero()
        );
        let q = p_uv(&[(&[2, 0], 1), (&[0, 2], 1)]);
        assert_eq!(q.eval(&[Rat::new(1, 2), Rat::new(1, 3)]), Rat::new(13, 36));
    }

    #[test]
    #[should_panic(expected = "evaluation point")]
    fn eval_bad_length() {
        p_uv(&[(&[1, 0], 1)]).eval(&[Rat::one()]);
    }

    #[test]
    fn div_exact_and_gcd() {
        let a = p_uv(&[(&[1, 0], 1), (&[0, 1], 1)]); // u + v
        let b = p_uv(&[(&[1, 0], 1), (&[0, 1], -1)]); // u - v
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(a.div_exact(&b), None);
        let g = Poly::gcd(&(&prod * &a), &(&a * &b));
        // gcd((u+v)^2 (u-v), (u+v)(u-v)) = (u+v)(u-v)
        assert_eq!(g, (&a * &b).canonical());
    }

    #[test]
    fn gcd_units() {
        let two = Poly::constant(2, Rat::from_int(2));
        let p = p_uv(&[(&[1, 0], 2)]);
        assert_eq!(Poly::gcd(&two, &p), Poly::one(2));
    }

    #[test]
    fn canonical_scaling() {
        let p = p_uv(&[(&[2, 0], -2), (&[0, 0], -4)]);
        let c = p.canonical();
        assert_eq!(c, p_uv(&[(&[2, 0], 1), (&[0, 0], 2)]));
    }

    #[test]
    fn render_orders_leading_first() {
        let p = p_uv(&[(&[0, 0], 2), (&[2, 0], 1), (&[1, 1], 3)]);
        assert_eq!(p.render(&["u", "v"]), "u^2 + 3*u*v + 2");
    }

    #[test]
    fn subst_composition() {
        // F(w1, w2) = w1^2, substitute w1 -> u + v gives (u+v)^2
        let f = Poly::monomial(Mono::new(vec![2, 0]), Rat::one());
        let img = vec![p_uv(&[(&[1, 0], 1), (&[0, 1], 1)]), Poly::var(2, 1)];
        let g = f.subst(&img);
        assert_eq!(g, p_uv(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
    }
}

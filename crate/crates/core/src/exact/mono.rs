//! Monomials as fixed-length exponent vectors.
//!
//! Two orderings matter here. The `Ord` impl is the enumeration order used
//! for term maps, jet rows, and matrix columns: total degree ascending,
//! and within a degree the first-variable-dominant monomial comes first
//! (for two variables: 1, u, v, u^2, u*v, v^2, ...). `cmp_grlex` is the
//! plain graded-lexicographic comparison whose maximum is the leading
//! monomial used for display and normalization.

use std::cmp::Ordering;

/// Exponent vector of a monomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    exps: Vec<u32>,
}

impl Mono {
    pub fn new(exps: Vec<u32>) -> Self {
        Mono { exps }
    }

    /// The constant monomial 1.
    pub fn one(nvars: usize) -> Self {
        Mono { exps: vec![0; nvars] }
    }

    /// The single variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Mono { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Mono {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, `None` when not divisible.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Mono { exps })
    }

    /// Decrement the exponent of variable `i`; `None` when it is zero.
    pub fn step_down(&self, i: usize) -> Option<Mono> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Mono { exps })
    }

    /// Append extra zero exponents (embedding into a larger ring).
    pub fn extend(&self, extra: usize) -> Mono {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Mono { exps }
    }

    /// Plain graded-lexicographic comparison (degree first, then
    /// lexicographic on exponents). Its maximum over a polynomial's
    /// support is the leading monomial.
    pub fn cmp_grlex(&self, other: &Mono) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }

    /// All monomials of the given total degree, first-variable-dominant
    /// first: for k=2, d=2 this yields u^2, u*v, v^2.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Mono> {
        assert!(nvars >= 1);
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(nvars);
        fill_degree(nvars, degree, &mut prefix, &mut out);
        out
    }

    /// All monomials of degree at most `t`, in enumeration order.
    pub fn all_up_to(nvars: usize, t: u32) -> Vec<Mono> {
        (0..=t)
            .flat_map(|d| Mono::all_of_degree(nvars, d))
            .collect()
    }
}

fn fill_degree(remaining: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Mono>) {
    if remaining == 1 {
        let mut exps = prefix.clone();
        exps.push(degree);
        out.push(Mono { exps });
        return;
    }
    for e in (0..=degree).rev() {
        prefix.push(e);
        fill_degree(remaining - 1, degree - e, prefix, out);
        prefix.pop();
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            // within a degree, lex-larger exponent vectors enumerate first
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Binomial coefficient, exact in u128 (desk-scale arguments).
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Multinomial coefficient t!/alpha! for |alpha| = t.
pub fn multinomial(alpha: &Mono) -> u128 {
    let mut acc: u128 = 1;
    let mut seen: usize = 0;
    for &e in alpha.exps() {
        for j in 1..=e as usize {
            seen += 1;
            acc = acc * seen as u128 / j as u128;
        }
    }
    acc
}

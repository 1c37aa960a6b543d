//! Parametrized projective varieties: the input grammar, load-time
//! validation, deterministic generic-point sampling, and the built-in
//! catalog.

use num_bigint::BigInt;
use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{Poly, QMatrix, Rat};

/// A projective variety given by N+1 polynomials in k affine parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamVariety {
    name: String,
    vars: Vec<String>,
    coords: Vec<Poly>,
}

impl ParamVariety {
    /// Intrinsic dimension (number of parameters).
    pub fn k(&self) -> usize {
        self.vars.len()
    }

    /// Ambient projective dimension N.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    /// Index of the first coordinate polynomial that is not identically
    /// zero; sampling requires it to be nonzero at the point.
    pub fn normalization_coord(&self) -> usize {
        self.coords
            .iter()
            .position(|p| !p.is_zero())
            .expect("validated varieties have a nonzero coordinate")
    }

    /// Render in the input grammar; `parse_variety` inverts this.
    pub fn render(&self) -> String {
        let names = self.var_refs();
        let mut out = format!("name={};\nvars={};\n", self.name, self.vars.join(","));
        for (i, p) in self.coords.iter().enumerate() {
            out.push_str(&format!("P{}={}", i, p.render(&names)));
            if i + 1 < self.coords.len() {
                out.push_str(";\n");
            }
        }
        out
    }

    /// Order-1 jet rows (the point and its first partials) evaluated at `p`.
    fn order1_rows(&self, point: &[Rat]) -> QMatrix {
        let n1 = self.coords.len();
        let mut rows = Vec::with_capacity(self.k() + 1);
        rows.push(self.coords.iter().map(|c| c.eval(point)).collect());
        for i in 0..self.k() {
            rows.push(self.coords.iter().map(|c| c.diff(i).eval(point)).collect());
        }
        QMatrix::from_rows(rows, n1)
    }
}

/// A sampled parameter point certified generic at order 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub coords: Vec<Rat>,
    pub seed_used: u64,
    pub attempts: u32,
}

const MAX_ATTEMPTS: u32 = 64;
const ATTEMPTS_PER_BOUND: u32 = 8;

/// Draw a generic point deterministically from the seeded stream.
///
/// Rejected points (order-1 jet rank below k+1, or vanishing normalization
/// coordinate) are redrawn with the bound doubling every eight failures.
pub fn sample_point(v: &ParamVariety, seed: u64, bound: u64) -> Result<SamplePoint> {
    if bound < 2 {
        return Err(Error::Usage("sampling bound must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let norm = v.normalization_coord();
    let k = v.k();
    for attempt in 1..=MAX_ATTEMPTS {
        let cur_bound = (bound as i64) << ((attempt - 1) / ATTEMPTS_PER_BOUND);
        let coords: Vec<Rat> = (0..k)
            .map(|_| {
                let num = rng.random_range(-cur_bound..=cur_bound);
                let den = rng.random_range(1..=cur_bound);
                Rat::new(num, den)
            })
            .collect();
        if v.coords[norm].eval(&coords).is_zero() {
            continue;
        }
        if v.order1_rows(&coords).rank() != k + 1 {
            continue;
        }
        return Ok(SamplePoint {
            coords,
            seed_used: seed,
            attempts: attempt,
        });
    }
    Err(Error::Genericity(format!(
        "no generic point for '{}' after {} attempts (seed {}); \
         the parametrization looks degenerate",
        v.name, MAX_ATTEMPTS, seed
    )))
}

// ---------------------------------------------------------------------------
// parsing

struct Token {
    kind: TokKind,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum TokKind {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eq,
    Semi,
    Comma,
    Eof,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut i = 0usize;
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        if chars[*i] == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        let kind = match c {
            '+' => TokKind::Plus,
            '-' => TokKind::Minus,
            '*' => TokKind::Star,
            '^' => TokKind::Caret,
            '/' => TokKind::Slash,
            '(' => TokKind::LParen,
            ')' => TokKind::RParen,
            '=' => TokKind::Eq,
            ';' => TokKind::Semi,
            ',' => TokKind::Comma,
            _ if c.is_ascii_digit() => {
                let mut s = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(chars[i]);
                    advance(&mut i, &mut line, &mut col);
                }
                out.push(Token {
                    kind: TokKind::Int(s.parse().expect("digits parse")),
                    line: tl,
                    col: tc,
                });
                continue;
            }
            _ if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    s.push(chars[i]);
                    advance(&mut i, &mut line, &mut col);
                }
                out.push(Token {
                    kind: TokKind::Ident(s),
                    line: tl,
                    col: tc,
                });
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    line: tl,
                    col: tc,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        advance(&mut i, &mut line, &mut col);
        out.push(Token {
            kind,
            line: tl,
            col: tc,
        });
    }
    out.push(Token {
        kind: TokKind::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        Error::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, kind: &TokKind, what: &str) -> Result<()> {
        if &self.peek().kind == kind {
            self.advance();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().kind {
                TokKind::Plus => {
                    self.advance();
                    acc = &acc + &self.term()?;
                }
                TokKind::Minus => {
                    self.advance();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek().kind == TokKind::Star {
            self.advance();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek().kind == TokKind::Caret {
            self.advance();
            match self.peek().kind.clone() {
                TokKind::Int(ref n) => {
                    self.advance();
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let nvars = self.vars.len();
        match self.peek().kind.clone() {
            TokKind::Int(n) => {
                self.advance();
                if self.peek().kind == TokKind::Slash {
                    self.advance();
                    match self.peek().kind.clone() {
                        TokKind::Int(d) => {
                            self.advance();
                            if d == BigInt::from(0) {
                                return Err(self.err("zero denominator in coefficient"));
                            }
                            Ok(Poly::constant(nvars, Rat::from_parts(n, d)))
                        }
                        _ => Err(self.err("expected integer after '/'")),
                    }
                } else {
                    Ok(Poly::constant(nvars, Rat::from_parts(n, BigInt::from(1))))
                }
            }
            TokKind::Ident(name) => {
                self.advance();
                match self.var_index(&name) {
                    Some(i) => Ok(Poly::var(nvars, i)),
                    None => Err(self.err(format!("unknown variable '{name}'"))),
                }
            }
            TokKind::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(&TokKind::RParen, "closing ')'")?;
                Ok(inner)
            }
            TokKind::Minus => {
                self.advance();
                Ok(-&self.factor()?)
            }
            TokKind::Plus => {
                self.advance();
                self.factor()
            }
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }
}

/// Parse the variety grammar and run load-time validation.
///
/// Grammar: optional `name=<id>;`, then `vars=<v1,...>;`, then
/// `P0=<poly>; ... PN=<poly>` with `+ - * ^`, parentheses, and
/// integer or rational coefficients. Whitespace is insignificant.
pub fn parse_variety(text: &str) -> Result<ParamVariety> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars: Vec::new(),
    };
    let mut name: Option<String> = None;
    let mut coords: Vec<Option<Poly>> = Vec::new();
    let mut seen_any_coord = false;
    loop {
        if p.peek().kind == TokKind::Eof {
            break;
        }
        let key = match p.peek().kind.clone() {
            TokKind::Ident(s) => {
                p.advance();
                s
            }
            _ => return Err(p.err("expected 'name', 'vars', or 'P<i>'")),
        };
        p.expect(&TokKind::Eq, "'='")?;
        match key.as_str() {
            "name" => {
                if name.is_some() {
                    return Err(p.err("duplicate 'name'"));
                }
                match p.peek().kind.clone() {
                    TokKind::Ident(s) => {
                        p.advance();
                        name = Some(s);
                    }
                    _ => return Err(p.err("expected an identifier after 'name='")),
                }
            }
            "vars" => {
                if !p.vars.is_empty() {
                    return Err(p.err("duplicate 'vars'"));
                }
                if seen_any_coord {
                    return Err(p.err("'vars' must come before the coordinates"));
                }
                loop {
                    match p.peek().kind.clone() {
                        TokKind::Ident(s) => {
                            p.advance();
                            if p.vars.contains(&s) {
                                return Err(p.err(format!("duplicate variable '{s}'")));
                            }
                            p.vars.push(s);
                        }
                        _ => return Err(p.err("expected a variable name")),
                    }
                    if p.peek().kind == TokKind::Comma {
                        p.advance();
                    } else {
                        break;
                    }
                }
            }
            _ => {
                let idx: usize = key
                    .strip_prefix('P')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| p.err(format!("unknown key '{key}'")))?;
                if p.vars.is_empty() {
                    return Err(p.err("'vars' must be declared before the coordinates"));
                }
                seen_any_coord = true;
                let poly = p.expr()?;
                if coords.len() <= idx {
                    coords.resize(idx + 1, None);
                }
                if coords[idx].is_some() {
                    return Err(p.err(format!("duplicate coordinate P{idx}")));
                }
                coords[idx] = Some(poly);
            }
        }
        match p.peek().kind {
            TokKind::Semi => {
                p.advance();
            }
            TokKind::Eof => break,
            _ => return Err(p.err("expected ';'")),
        }
    }

    // structural validation
    if p.vars.is_empty() {
        return Err(Error::Validation("no variables declared".into()));
    }
    if coords.is_empty() {
        return Err(Error::Validation("no coordinates declared".into()));
    }
    let mut filled = Vec::with_capacity(coords.len());
    for (i, c) in coords.into_iter().enumerate() {
        match c {
            Some(p) => filled.push(p),
            None => {
                return Err(Error::Validation(format!(
                    "coordinate P{i} is missing (indices must be contiguous from 0)"
                )))
            }
        }
    }
    let v = ParamVariety {
        name: name.unwrap_or_else(|| "unnamed".into()),
        vars: p.vars,
        coords: filled,
    };
    validate(&v)?;
    Ok(v)
}

fn validate(v: &ParamVariety) -> Result<()> {
    let k = v.k();
    let n = v.coords.len();
    if n < 2 {
        return Err(Error::Validation(
            "at least two coordinates (P0, P1) are required".into(),
        ));
    }
    if v.coords.iter().all(|p| p.is_zero()) {
        return Err(Error::Validation("all coordinates are zero".into()));
    }
    if k > n - 1 {
        return Err(Error::Validation(format!(
            "intrinsic dimension {} exceeds ambient dimension {}",
            k,
            n - 1
        )));
    }
    // generic immersion check: a sampled point must reach order-1 rank k+1
    match sample_point(v, 0, 10) {
        Ok(_) => Ok(()),
        Err(Error::Genericity(_)) => Err(Error::Validation(format!(
            "degenerate parametrization: the order-1 jet matrix never reaches rank {}",
            k + 1
        ))),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// built-in catalog

const CATALOG_TEXTS: &[&str] = &[
    "name=togliatti; vars=u,v; P0=u; P1=u^2; P2=v; P3=v^2; P4=u^2*v; P5=u*v^2",
    "name=veronese; vars=u,v; P0=1; P1=u; P2=v; P3=u^2; P4=u*v; P5=v^2",
    "name=rnc2; vars=u; P0=1; P1=u; P2=u^2",
    "name=rnc3; vars=u; P0=1; P1=u; P2=u^2; P3=u^3",
    "name=rnc4; vars=u; P0=1; P1=u; P2=u^2; P3=u^3; P4=u^4",
    "name=cone_rnc3; vars=u,v; P0=1; P1=u; P2=u^2; P3=u^3; P4=v",
    "name=tangent_dev_rnc4; vars=u,v; \
     P0=1; P1=u+v; P2=u^2+2*u*v; P3=u^3+3*u^2*v; P4=u^4+4*u^3*v",
];

/// The built-in test varieties, parsed and validated from the same grammar
/// the CLI accepts.
pub fn catalog() -> Vec<ParamVariety> {
    CATALOG_TEXTS
        .iter()
        .map(|t| parse_variety(t).expect("catalog entries are valid"))
        .collect()
}

/// Look up a catalog entry by name.
pub fn catalog_entry(name: &str) -> Option<ParamVariety> {
    catalog().into_iter().find(|v| v.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_conic() {
        let v = parse_variety("name=conic; vars=u; P0=1; P1=u; P2=u^2").unwrap();
        assert_eq!(v.k(), 1);
        assert_eq!(v.ambient_dim(), 2);
        assert_eq!(v.name(), "conic");
    }

    #[test]
    fn parse_togliatti_chart() {
        let text = "vars=u,v; P0=u; P1=u^2; P2=v; P3=v^2; P4=u^2*v; P5=u*v^2";
        let v = parse_variety(text).unwrap();
        assert_eq!(v.k(), 2);
        assert_eq!(v.ambient_dim(), 5);
    }

    #[test]
    fn degenerate_is_rejected() {
        let err = parse_variety("vars=u; P0=u; P1=u").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "got {err:?}");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_variety("vars=u;\nP0=u+; P1=1").unwrap_err();
        match err {
            Error::Syntax { line, col, .. } => {
                assert_eq!(line, 2);
                assert!(col >= 5);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_is_rejected() {
        let err = parse_variety("vars=u; P0=1; P1=w").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }

    #[test]
    fn rational_coefficients() {
        let v = parse_variety("vars=u; P0=1; P1=1/2*u + u^2").unwrap();
        let names = v.var_refs();
        assert_eq!(v.coords()[1].render(&names), "u^2 + 1/2*u");
    }

    #[test]
    fn catalog_round_trips() {
        for v in catalog() {
            let round = parse_variety(&v.render()).unwrap();
            assert_eq!(round, v, "round-trip failed for {}", v.name());
        }
    }

    #[test]
    fn catalog_shapes() {
        let cat = catalog();
        let find = |n: &str| cat.iter().find(|v| v.name() == n).unwrap();
        let tog = find("togliatti");
        assert_eq!((tog.k(), tog.ambient_dim()), (2, 5));
        let ver = find("veronese");
        assert_eq!((ver.k(), ver.ambient_dim()), (2, 5));
        let rnc4 = find("rnc4");
        assert_eq!((rnc4.k(), rnc4.ambient_dim()), (1, 4));
        assert!(cat.iter().any(|v| v.name() == "cone_rnc3"));
        assert!(cat.iter().any(|v| v.name() == "tangent_dev_rnc4"));
    }

    #[test]
    fn sampling_is_deterministic() {
        let v = catalog_entry("rnc2").unwrap();
        let a = sample_point(&v, 1, 10).unwrap();
        let b = sample_point(&v, 1, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.attempts, 1);
    }

    #[test]
    fn sampling_distinct_seeds_differ() {
        let v = catalog_entry("veronese").unwrap();
        let a = sample_point(&v, 0, 10).unwrap();
        let b = sample_point(&v, 1, 10).unwrap();
        assert_ne!(a.coords, b.coords);
    }
}

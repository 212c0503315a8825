//! Text grammars for fields, polynomials, rational functions, points,
//! Moebius maps and curve files.
//!
//! Field specifications read `p^n` or `p^n:c0,c1,...,cn` (modulus over F_p,
//! constant term first, monic). Polynomial expressions use `+`, `-`, `*`,
//! `^` and parentheses over integer literals and the variables `t` (the
//! field generator), `x`, `y` for affine data and `X`, `Y`, `Z` for
//! homogeneous data, e.g. `(2*t+1)*x^3 + x + 2`. Rational functions are
//! `num / den`. Errors carry the byte offset of the offending token.

use std::collections::BTreeMap;

use crate::bivar::{BiPoly, HomPoly};
use crate::curve::{PlaneCurve, ProjPlanePoint};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::moebius::MoebiusMap;
use crate::poly::{RatFunc, UniPoly, Var};

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

// ---- field specifications ----

/// `p^n` or `p^n:c0,...,cn`; the modulus list may also omit the leading 1.
pub fn parse_field_spec(s: &str) -> Result<FieldCtx> {
    let s = s.trim();
    let (head, modulus) = match s.split_once(':') {
        Some((h, m)) => (h, Some(m)),
        None => (s, None),
    };
    let (p_str, n_str) = match head.split_once('^') {
        Some(pair) => pair,
        None => (head, "1"),
    };
    let p: u64 = p_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("invalid characteristic `{p_str}`"),
        })?;
    let n: usize = n_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse {
            pos: head.len(),
            msg: format!("invalid extension degree `{n_str}`"),
        })?;
    let modulus = match modulus {
        None => None,
        Some(m) => {
            let mut coeffs: Vec<u64> = Vec::new();
            for part in m.split(',') {
                let c: u64 = part.trim().parse().map_err(|_| Error::Parse {
                    pos: head.len() + 1,
                    msg: format!("invalid modulus coefficient `{part}`"),
                })?;
                coeffs.push(c);
            }
            if coeffs.len() == n {
                coeffs.push(1); // monic leading coefficient implied
            }
            Some(coeffs)
        }
    };
    FieldCtx::new(p, n, modulus)
}

// ---- expression tokenizer and parser ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: u64 = s[start..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "integer literal too large".into(),
                })?;
                out.push((Tok::Int(v), start));
            }
            'a'..='z' | 'A'..='Z' => {
                out.push((Tok::Ident(c.to_string()), i));
                i += 1;
            }
            other => return perr(i, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Int(u64),
    Var(String, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u64),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some((Tok::Minus, _)) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some((Tok::Star, _)) => {
                    self.next();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(&(Tok::Slash, p)) => {
                    self.next();
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs), p);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some((Tok::Minus, _)) => {
                self.next();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.next();
            match self.next() {
                Some((Tok::Int(e), _)) => Ok(Expr::Pow(Box::new(base), e)),
                Some((_, p)) => perr(p, "expected a nonnegative integer exponent"),
                None => perr(self.end, "expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some((Tok::Int(v), _)) => Ok(Expr::Int(v)),
            Some((Tok::Ident(name), p)) => Ok(Expr::Var(name, p)),
            Some((Tok::LParen, open)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((_, p)) => perr(p, "expected `)`"),
                    None => perr(open, "unclosed `(`"),
                }
            }
            Some((t, p)) => perr(p, format!("unexpected token {t:?}")),
            None => perr(self.end, "unexpected end of input"),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
    };
    let e = p.expr()?;
    if let Some(&(_, pos)) = p.peek() {
        return perr(pos, "trailing input after expression");
    }
    Ok(e)
}

// ---- evaluation into sparse trivariate maps ----

/// Sparse polynomial in up to three slot variables with field coefficients.
type TriMap = BTreeMap<(usize, usize, usize), FieldElem>;

struct EvalCtx<'a> {
    ctx: &'a FieldCtx,
    /// variable name -> slot index
    slots: &'a [(&'static str, usize)],
}

impl EvalCtx<'_> {
    fn constant(&self, c: FieldElem) -> TriMap {
        let mut m = TriMap::new();
        if !c.is_zero() {
            m.insert((0, 0, 0), c);
        }
        m
    }

    fn add_into(&self, acc: &mut TriMap, key: (usize, usize, usize), c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match acc.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn add(&self, a: &TriMap, b: &TriMap, negate_b: bool) -> TriMap {
        let mut out = a.clone();
        for (&k, c) in b {
            let c = if negate_b { -c } else { c.clone() };
            self.add_into(&mut out, k, c);
        }
        out
    }

    fn mul(&self, a: &TriMap, b: &TriMap) -> TriMap {
        let mut out = TriMap::new();
        for (&(a0, a1, a2), ca) in a {
            for (&(b0, b1, b2), cb) in b {
                self.add_into(&mut out, (a0 + b0, a1 + b1, a2 + b2), ca * cb);
            }
        }
        out
    }

    fn eval(&self, e: &Expr) -> Result<TriMap> {
        Ok(match e {
            Expr::Int(v) => self.constant(self.ctx.from_int(*v)),
            Expr::Var(name, pos) => {
                if name == "t" {
                    self.constant(self.ctx.generator())
                } else if let Some(&(_, slot)) = self.slots.iter().find(|(n, _)| n == name) {
                    let mut key = [0usize; 3];
                    key[slot] = 1;
                    let mut m = TriMap::new();
                    m.insert((key[0], key[1], key[2]), self.ctx.one());
                    m
                } else {
                    return perr(*pos, format!("unknown variable `{name}` here"));
                }
            }
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?, false),
            Expr::Sub(a, b) => self.add(&self.eval(a)?, &self.eval(b)?, true),
            Expr::Neg(a) => self.add(&TriMap::new(), &self.eval(a)?, true),
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Div(_, _, pos) => {
                return perr(*pos, "division is only allowed between numerator and denominator")
            }
            Expr::Pow(a, e) => {
                let base = self.eval(a)?;
                let mut acc = self.constant(self.ctx.one());
                for _ in 0..*e {
                    acc = self.mul(&acc, &base);
                }
                acc
            }
        })
    }
}

// ---- public entry points ----

/// A field element: an expression in `t` alone.
pub fn parse_field_elem(ctx: &FieldCtx, s: &str) -> Result<FieldElem> {
    let e = parse_expr(s)?;
    let ev = EvalCtx { ctx, slots: &[] };
    let m = ev.eval(&e)?;
    Ok(m.get(&(0, 0, 0)).cloned().unwrap_or_else(|| ctx.zero()))
}

/// A univariate polynomial in the given variable (plus `t` constants).
pub fn parse_unipoly(ctx: &FieldCtx, s: &str, var: Var) -> Result<UniPoly> {
    let e = parse_expr(s)?;
    let name: &'static str = match var {
        Var::X => "x",
        Var::Y => "y",
    };
    let ev = EvalCtx {
        ctx,
        slots: &[(name, 0)],
    };
    let m = ev.eval(&e)?;
    let deg = m.keys().map(|&(i, _, _)| i).max().unwrap_or(0);
    let mut coeffs = vec![ctx.zero(); deg + 1];
    for (&(i, _, _), c) in &m {
        coeffs[i] = c.clone();
    }
    Ok(UniPoly::from_coeffs(ctx, coeffs, var))
}

/// A rational function `num / den` (or a plain polynomial) in `var`.
pub fn parse_ratfunc(ctx: &FieldCtx, s: &str, var: Var) -> Result<RatFunc> {
    let e = parse_expr(s)?;
    let name: &'static str = match var {
        Var::X => "x",
        Var::Y => "y",
    };
    let ev = EvalCtx {
        ctx,
        slots: &[(name, 0)],
    };
    let to_unipoly = |m: &TriMap| -> UniPoly {
        let deg = m.keys().map(|&(i, _, _)| i).max().unwrap_or(0);
        let mut coeffs = vec![ctx.zero(); deg + 1];
        for (&(i, _, _), c) in m {
            coeffs[i] = c.clone();
        }
        UniPoly::from_coeffs(ctx, coeffs, var)
    };
    match e {
        Expr::Div(num, den, _) => {
            let n = to_unipoly(&ev.eval(&num)?);
            let d = to_unipoly(&ev.eval(&den)?);
            RatFunc::new(n, d)
        }
        other => Ok(RatFunc::from_poly(to_unipoly(&ev.eval(&other)?))),
    }
}

/// A bivariate polynomial in `x`, `y`.
pub fn parse_bipoly(ctx: &FieldCtx, s: &str) -> Result<BiPoly> {
    let e = parse_expr(s)?;
    let ev = EvalCtx {
        ctx,
        slots: &[("x", 0), ("y", 1)],
    };
    let m = ev.eval(&e)?;
    Ok(BiPoly::from_terms(
        ctx,
        m.into_iter().map(|((i, j, _), c)| ((i, j), c)),
    ))
}

/// A homogeneous polynomial in `X`, `Y`, `Z`.
pub fn parse_hompoly(ctx: &FieldCtx, s: &str) -> Result<HomPoly> {
    let e = parse_expr(s)?;
    let ev = EvalCtx {
        ctx,
        slots: &[("X", 0), ("Y", 1), ("Z", 2)],
    };
    let m = ev.eval(&e)?;
    HomPoly::new(ctx, m)
}

/// A curve from either an affine `x`, `y` polynomial (homogenized at its
/// total degree) or a homogeneous `X`, `Y`, `Z` polynomial.
pub fn parse_curve(ctx: &FieldCtx, s: &str) -> Result<PlaneCurve> {
    if s.contains(['X', 'Y', 'Z']) {
        PlaneCurve::new(parse_hompoly(ctx, s)?)
    } else {
        PlaneCurve::from_affine(&parse_bipoly(ctx, s)?)
    }
}

/// A projective plane point `(a:b:c)` with field-element coordinates.
pub fn parse_point(ctx: &FieldCtx, s: &str) -> Result<ProjPlanePoint> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected a point of the form (a:b:c)".into(),
        })?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return perr(0, format!("expected 3 coordinates, got {}", parts.len()));
    }
    let coords = [
        parse_field_elem(ctx, parts[0])?,
        parse_field_elem(ctx, parts[1])?,
        parse_field_elem(ctx, parts[2])?,
    ];
    ProjPlanePoint::new(coords)
}

/// A Moebius map `[a,b;c,d]`.
pub fn parse_moebius(ctx: &FieldCtx, s: &str) -> Result<MoebiusMap> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected a map of the form [a,b;c,d]".into(),
        })?;
    let rows: Vec<&str> = inner.split(';').collect();
    if rows.len() != 2 {
        return perr(0, "expected two rows separated by `;`");
    }
    let mut entries = Vec::new();
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 2 {
            return perr(0, "expected two entries per row");
        }
        for c in cols {
            entries.push(parse_field_elem(ctx, c)?);
        }
    }
    let mut it = entries.into_iter();
    MoebiusMap::new(
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    )
}

/// A parsed curve file: field spec on line 1, homogeneous polynomial on
/// line 2, then optional named points `P1 = (a:b:c)`.
pub struct CurveFile {
    pub ctx: FieldCtx,
    pub curve: PlaneCurve,
    pub points: Vec<(String, ProjPlanePoint)>,
}

pub fn parse_curve_file(text: &str) -> Result<CurveFile> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let spec = lines
        .next()
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "empty curve file".into(),
        })?;
    let ctx = parse_field_spec(spec)?;
    let poly_line = lines.next().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "missing polynomial line".into(),
    })?;
    let curve = PlaneCurve::new(parse_hompoly(&ctx, poly_line)?)?;
    let mut points = Vec::new();
    for line in lines {
        let (name, rhs) = line.split_once('=').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected `NAME = (a:b:c)`, got `{line}`"),
        })?;
        points.push((name.trim().to_string(), parse_point(&ctx, rhs)?));
    }
    Ok(CurveFile { ctx, curve, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ValueMode;

    #[test]
    fn test_field_spec_forms() {
        let f9 = parse_field_spec("3^2").unwrap();
        assert_eq!(f9.q(), 9);
        let f9b = parse_field_spec("3^2:1,0,1").unwrap();
        assert_eq!(f9b.modulus(), &[1, 0, 1]);
        let f9c = parse_field_spec("3^2:1,0").unwrap(); // implied monic lead
        assert_eq!(f9c.modulus(), &[1, 0, 1]);
        let f5 = parse_field_spec("5").unwrap();
        assert_eq!(f5.q(), 5);
        assert!(parse_field_spec("4^1").is_err());
    }

    #[test]
    fn test_parse_fermat_fixture() {
        let ctx = parse_field_spec("3^2").unwrap();
        let curve = parse_curve(&ctx, "x^4+y^4+1").unwrap();
        assert_eq!(curve.degree(), 4);
        assert_eq!(curve.affine().total_degree(), 4);
    }

    #[test]
    fn test_parse_identity_poly() {
        let ctx = parse_field_spec("5^1").unwrap();
        let h = parse_ratfunc(&ctx, "x", Var::X).unwrap();
        assert_eq!(h, RatFunc::identity(&ctx, Var::X));
    }

    #[test]
    fn test_parse_error_offset() {
        let ctx = parse_field_spec("5^1").unwrap();
        let err = parse_ratfunc(&ctx, "x^", Var::X).unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn test_parse_coefficient_expressions() {
        let ctx = parse_field_spec("3^2").unwrap();
        let p = parse_unipoly(&ctx, "(2*t+1)*x^3 + x + 2", Var::X).unwrap();
        assert_eq!(p.degree(), Some(3));
        let t = ctx.generator();
        let c3 = &(&ctx.from_int(2) * &t) + &ctx.one();
        assert_eq!(p.coeff(3), c3);
        assert_eq!(p.coeff(1), ctx.one());
        assert_eq!(p.coeff(0), ctx.from_int(2));
        // round-trip through display
        let again = parse_unipoly(&ctx, &p.to_string(), Var::X).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn test_parse_ratfunc_with_denominator() {
        let ctx = parse_field_spec("5^1").unwrap();
        let h = parse_ratfunc(&ctx, "(x^2+1) / (x - 1)", Var::X).unwrap();
        assert_eq!(h.degree(), 2);
        assert!(!h.is_polynomial());
        // nested division is rejected
        assert!(parse_ratfunc(&ctx, "x / y / 2", Var::X).is_err());
    }

    #[test]
    fn test_parse_value_set_example() {
        let ctx = parse_field_spec("5^1").unwrap();
        let h = parse_ratfunc(&ctx, "x^2", Var::X).unwrap();
        assert_eq!(h.value_set(ValueMode::Projective).unwrap().len(), 4);
    }

    #[test]
    fn test_parse_point_and_moebius() {
        let ctx = parse_field_spec("3^2").unwrap();
        let p = parse_point(&ctx, "(1:0:0)").unwrap();
        assert_eq!(p, ProjPlanePoint::e1(&ctx));
        let p2 = parse_point(&ctx, "(2*t+1 : 1 : 0)").unwrap();
        assert_eq!(p2.to_string(), "(1:2*t+2:0)"); // canonical rescale
        let m = parse_moebius(&ctx, "[1,0;0,1]").unwrap();
        assert!(m.is_identity());
        assert!(parse_moebius(&ctx, "[1,0;0,0]").is_err());
    }

    #[test]
    fn test_parse_hompoly_homogeneity() {
        let ctx = parse_field_spec("3^2").unwrap();
        assert!(parse_hompoly(&ctx, "X^4+Y^4+Z^4").is_ok());
        assert!(parse_hompoly(&ctx, "X^4+Y^3").is_err());
    }

    #[test]
    fn test_parse_curve_file() {
        let text = "3^2:1,0,1\nX^4+Y^4+Z^4\nP1 = (1:0:0)\nP2 = (0:1:0)\n";
        let cf = parse_curve_file(text).unwrap();
        assert_eq!(cf.ctx.q(), 9);
        assert_eq!(cf.curve.degree(), 4);
        assert_eq!(cf.points.len(), 2);
        assert_eq!(cf.points[0].0, "P1");
    }

    #[test]
    fn test_unknown_variable_rejected() {
        let ctx = parse_field_spec("5^1").unwrap();
        let err = parse_unipoly(&ctx, "x + z", Var::X).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}

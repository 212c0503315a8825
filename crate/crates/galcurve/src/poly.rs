//! Univariate polynomials and rational functions over a field context.
//!
//! Rational functions are kept in canonical form throughout: numerator and
//! denominator coprime, denominator monic. The projective line P^1(F_q) is
//! modeled explicitly with [`ProjPoint`], and [`ValueSet`] holds images of
//! P^1 or of F_q under a rational function.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Variable tag for univariate data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::Y => write!(f, "y"),
        }
    }
}

// ---- UniPoly ----

/// Dense univariate polynomial; coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    ctx: FieldCtx,
    var: Var,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero(ctx: &FieldCtx, var: Var) -> UniPoly {
        UniPoly {
            ctx: ctx.clone(),
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &FieldCtx, var: Var) -> UniPoly {
        UniPoly::constant(ctx.one(), var)
    }

    pub fn constant(c: FieldElem, var: Var) -> UniPoly {
        let ctx = c.ctx().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        UniPoly { ctx, var, coeffs }
    }

    /// The monomial c * var^k.
    pub fn monomial(c: FieldElem, k: usize, var: Var) -> UniPoly {
        let ctx = c.ctx().clone();
        if c.is_zero() {
            return UniPoly::zero(&ctx, var);
        }
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c;
        UniPoly { ctx, var, coeffs }
    }

    /// The identity polynomial `var`.
    pub fn identity(ctx: &FieldCtx, var: Var) -> UniPoly {
        UniPoly::monomial(ctx.one(), 1, var)
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<FieldElem>, var: Var) -> UniPoly {
        let mut p = UniPoly {
            ctx: ctx.clone(),
            var,
            coeffs,
        };
        p.normalize();
        p
    }

    /// Convenience constructor with prime-subfield coefficients.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64], var: Var) -> UniPoly {
        let v = coeffs.iter().map(|&c| ctx.from_i64(c)).collect();
        UniPoly::from_coeffs(ctx, v, var)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Retag the variable without changing coefficients.
    pub fn with_var(&self, var: Var) -> UniPoly {
        UniPoly {
            ctx: self.ctx.clone(),
            var,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Option<FieldElem> {
        self.coeffs.last().cloned()
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(&self.ctx, self.var);
        }
        UniPoly {
            ctx: self.ctx.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(&lc.inv().expect("nonzero leading coefficient"))
                }
            }
        }
    }

    fn assert_compatible(&self, other: &UniPoly) {
        assert!(
            self.ctx.same_field(&other.ctx),
            "polynomial context mismatch"
        );
        assert_eq!(self.var, other.var, "polynomial variable mismatch");
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divmod(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.assert_compatible(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lead_inv = d.leading_coeff().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.ctx.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &lead_inv;
            if !c.is_zero() {
                quot[k] = c.clone();
                for (j, dj) in d.coeffs.iter().enumerate() {
                    let t = &rem[k + j] - &(&c * dj);
                    rem[k + j] = t;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Ok((
            UniPoly::from_coeffs(&self.ctx, quot, self.var),
            UniPoly::from_coeffs(&self.ctx, rem, self.var),
        ))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divmod(d)?.1)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.assert_compatible(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.ctx, self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.ctx.from_int(k as u64))
            .collect();
        UniPoly::from_coeffs(&self.ctx, coeffs, self.var)
    }

    pub fn eval(&self, a: &FieldElem) -> FieldElem {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    /// Substitution self(inner); the result carries inner's variable.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        assert!(self.ctx.same_field(&inner.ctx), "context mismatch");
        let mut acc = UniPoly::zero(&self.ctx, inner.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone(), inner.var);
        }
        acc
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one(&self.ctx, self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `a` as a root of self (0 when not a root).
    pub fn root_multiplicity(&self, a: &FieldElem) -> usize {
        if self.is_zero() {
            panic!("root multiplicity of the zero polynomial");
        }
        let lin = UniPoly::from_coeffs(&self.ctx, vec![-a, self.ctx.one()], self.var);
        let mut m = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.divmod(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                return m;
            }
            m += 1;
            f = q;
            if f.is_zero() {
                return m;
            }
        }
    }

    /// Exact irreducibility over the coefficient field, by checking that no
    /// irreducible factor of degree <= deg/2 exists (gcd with x^{q^k} - x).
    pub fn is_irreducible(&self) -> Result<bool> {
        let deg = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(d) => d,
        };
        if deg == 1 {
            return Ok(true);
        }
        let q = self.ctx.q() as u128;
        let x = UniPoly::identity(&self.ctx, self.var);
        let monic = self.monic();
        let mut frob = x.pow_mod(q, &monic)?; // x^q mod f
        for _k in 1..=deg / 2 {
            let g = monic.gcd(&(&frob - &x));
            if g.degree() != Some(0) {
                return Ok(false);
            }
            frob = frob.pow_mod(q, &monic)?;
        }
        Ok(true)
    }

    /// self^e mod m via square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> Result<UniPoly> {
        let mut base = self.rem(m)?;
        let mut acc = UniPoly::one(&self.ctx, self.var).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            base = (&base * &base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.assert_compatible(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::from_coeffs(&self.ctx, coeffs, self.var)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            ctx: self.ctx.clone(),
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.assert_compatible(rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.ctx, self.var);
        }
        let mut coeffs = vec![self.ctx.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = t;
            }
        }
        UniPoly::from_coeffs(&self.ctx, coeffs, self.var)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_single_term() {
                c.to_string()
            } else {
                format!("({c})")
            };
            let part = match (k, c.is_one()) {
                (0, _) => cs,
                (1, true) => format!("{}", self.var),
                (1, false) => format!("{cs}*{}", self.var),
                (k, true) => format!("{}^{k}", self.var),
                (k, false) => format!("{cs}*{}^{k}", self.var),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- ProjPoint ----

/// A point of P^1(F_q): an affine field element or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Affine(FieldElem),
    Infinity,
}

impl ProjPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn as_affine(&self) -> Option<&FieldElem> {
        match self {
            ProjPoint::Affine(a) => Some(a),
            ProjPoint::Infinity => None,
        }
    }

    /// All q + 1 points of P^1 over the given field, affine points first.
    pub fn all(ctx: &FieldCtx) -> Vec<ProjPoint> {
        let mut pts: Vec<ProjPoint> = ctx.enumerate().map(ProjPoint::Affine).collect();
        pts.push(ProjPoint::Infinity);
        pts
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ProjPoint::Affine(a), ProjPoint::Affine(b)) => a.cmp(b),
            (ProjPoint::Affine(_), ProjPoint::Infinity) => Ordering::Less,
            (ProjPoint::Infinity, ProjPoint::Affine(_)) => Ordering::Greater,
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Affine(a) => write!(f, "{a}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- ValueSet ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueMode {
    /// Image of P^1(F_q), q + 1 inputs.
    Projective,
    /// Image of F_q under a polynomial, q inputs.
    Affine,
}

/// The set of values attained by a rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSet {
    pub mode: ValueMode,
    points: BTreeSet<ProjPoint>,
}

impl ValueSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points.iter()
    }

    /// The affine elements of the set, in enumeration order.
    pub fn affine_elems(&self) -> Vec<FieldElem> {
        self.points
            .iter()
            .filter_map(|p| p.as_affine().cloned())
            .collect()
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

// ---- RatFunc ----

/// A rational function in canonical form: gcd(num, den) = 1, den monic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<RatFunc> {
        num.assert_compatible(&den);
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut num = num;
        let mut den = den;
        if num.is_zero() {
            den = UniPoly::one(num.ctx(), num.var());
            return Ok(RatFunc { num, den });
        }
        // fast path: constant denominator needs no gcd
        if den.degree() == Some(0) {
            let inv = den.leading_coeff().unwrap().inv()?;
            return Ok(RatFunc {
                num: num.scale(&inv),
                den: UniPoly::one(num.ctx(), num.var()),
            });
        }
        let g = num.gcd(&den);
        if g.degree() != Some(0) {
            num = num.divmod(&g)?.0;
            den = den.divmod(&g)?.0;
        }
        let lc = den.leading_coeff().unwrap();
        if !lc.is_one() {
            let inv = lc.inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: UniPoly) -> RatFunc {
        let den = UniPoly::one(p.ctx(), p.var());
        RatFunc { num: p, den }
    }

    pub fn constant(c: FieldElem, var: Var) -> RatFunc {
        RatFunc::from_poly(UniPoly::constant(c, var))
    }

    pub fn identity(ctx: &FieldCtx, var: Var) -> RatFunc {
        RatFunc::from_poly(UniPoly::identity(ctx, var))
    }

    pub fn zero(ctx: &FieldCtx, var: Var) -> RatFunc {
        RatFunc::from_poly(UniPoly::zero(ctx, var))
    }

    pub fn one(ctx: &FieldCtx, var: Var) -> RatFunc {
        RatFunc::from_poly(UniPoly::one(ctx, var))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.num.ctx()
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn with_var(&self, var: Var) -> RatFunc {
        RatFunc {
            num: self.num.with_var(var),
            den: self.den.with_var(var),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// deg h = max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.deg_or_zero().max(self.den.deg_or_zero())
    }

    pub fn is_one(&self) -> bool {
        self.num.degree() == Some(0)
            && self.den.degree() == Some(0)
            && self.num.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: usize) -> RatFunc {
        let mut acc = RatFunc::one(self.ctx(), self.var());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &FieldElem) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// Splits off the leading constant when deg num = deg den: returns
    /// (alpha, h') with self = alpha + h' and deg num(h') < deg den(h').
    /// The generated subfield F_q(h) is unchanged. `None` when degrees differ.
    pub fn split_leading_constant(&self) -> Option<(FieldElem, RatFunc)> {
        let (dn, dd) = (self.num.degree()?, self.den.deg_or_zero());
        if dn != dd || dd == 0 {
            return None;
        }
        let alpha = self
            .num
            .leading_coeff()
            .unwrap()
            .div(&self.den.leading_coeff().unwrap())
            .expect("monic denominator");
        let shifted = &self.num - &self.den.scale(&alpha);
        let h = RatFunc::new(shifted, self.den.clone()).expect("nonzero denominator");
        Some((alpha, h))
    }

    /// Evaluation on P^1 with the usual conventions at poles and at infinity.
    pub fn eval_proj(&self, a: &ProjPoint) -> ProjPoint {
        match a {
            ProjPoint::Affine(a) => {
                let d = self.den.eval(a);
                if d.is_zero() {
                    ProjPoint::Infinity
                } else {
                    let n = self.num.eval(a);
                    ProjPoint::Affine(n.div(&d).expect("nonzero denominator value"))
                }
            }
            ProjPoint::Infinity => {
                let dn = match self.num.degree() {
                    None => return ProjPoint::Affine(self.ctx().zero()),
                    Some(d) => d,
                };
                let dd = self.den.deg_or_zero();
                match dn.cmp(&dd) {
                    Ordering::Greater => ProjPoint::Infinity,
                    Ordering::Less => ProjPoint::Affine(self.ctx().zero()),
                    Ordering::Equal => ProjPoint::Affine(
                        self.num
                            .leading_coeff()
                            .unwrap()
                            .div(&self.den.leading_coeff().unwrap())
                            .expect("nonzero leading coefficient"),
                    ),
                }
            }
        }
    }

    /// Image of P^1(F_q) (projective mode) or of F_q (affine mode; requires
    /// a polynomial).
    pub fn value_set(&self, mode: ValueMode) -> Result<ValueSet> {
        let ctx = self.ctx();
        let mut points = BTreeSet::new();
        match mode {
            ValueMode::Projective => {
                for pt in ProjPoint::all(ctx) {
                    points.insert(self.eval_proj(&pt));
                }
            }
            ValueMode::Affine => {
                if !self.is_polynomial() {
                    return Err(Error::NonPolynomial(format!(
                        "affine value set requires a polynomial, got {self}"
                    )));
                }
                for a in ctx.enumerate() {
                    points.insert(ProjPoint::Affine(self.num.eval(&a)));
                }
            }
        }
        Ok(ValueSet { mode, points })
    }

    /// Multiplicity of `a` in the fiber of self over self(a).
    pub fn ramification_index(&self, a: &ProjPoint) -> Result<usize> {
        if self.is_constant() {
            return Err(Error::ConstantFunction(self.to_string()));
        }
        let v = self.eval_proj(a);
        Ok(match (a, &v) {
            (ProjPoint::Affine(a), ProjPoint::Affine(beta)) => {
                let shifted = &self.num - &self.den.scale(beta);
                shifted.root_multiplicity(a)
            }
            (ProjPoint::Affine(a), ProjPoint::Infinity) => self.den.root_multiplicity(a),
            (ProjPoint::Infinity, ProjPoint::Affine(beta)) => {
                let shifted = &self.num - &self.den.scale(beta);
                self.den.deg_or_zero() - shifted.deg_or_zero()
            }
            (ProjPoint::Infinity, ProjPoint::Infinity) => {
                self.num.deg_or_zero() - self.den.deg_or_zero()
            }
        })
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        // cross-cancel first to keep intermediate degrees small
        let g1 = if self.num.is_zero() || rhs.den.degree() == Some(0) {
            None
        } else {
            Some(self.num.gcd(&rhs.den))
        };
        let g2 = if rhs.num.is_zero() || self.den.degree() == Some(0) {
            None
        } else {
            Some(rhs.num.gcd(&self.den))
        };
        let reduce = |p: &UniPoly, g: &Option<UniPoly>| -> UniPoly {
            match g {
                Some(g) if g.degree() != Some(0) => p.divmod(g).expect("gcd divides").0,
                _ => p.clone(),
            }
        };
        let num = &reduce(&self.num, &g1) * &reduce(&rhs.num, &g2);
        let den = &reduce(&self.den, &g2) * &reduce(&rhs.den, &g1);
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

// ---- exhaustive enumeration ----

/// All polynomials of degree exactly d (nonzero leading coefficient), in
/// lexicographic order of coefficient indices, low coefficient fastest.
pub fn unipolys_of_degree(ctx: &FieldCtx, d: usize, var: Var) -> Vec<UniPoly> {
    let q = ctx.q();
    let total = q.pow((d + 1) as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut m = idx;
        let coeffs: Vec<FieldElem> = (0..=d)
            .map(|_| {
                let e = ctx.elem_from_index(m % q);
                m /= q;
                e
            })
            .collect();
        if coeffs[d].is_zero() {
            continue;
        }
        out.push(UniPoly::from_coeffs(ctx, coeffs, var));
    }
    out
}

/// All monic polynomials of degree exactly d.
pub fn monic_unipolys_of_degree(ctx: &FieldCtx, d: usize, var: Var) -> Vec<UniPoly> {
    let q = ctx.q();
    let total = q.pow(d as u32);
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut m = idx;
        let mut coeffs: Vec<FieldElem> = (0..d)
            .map(|_| {
                let e = ctx.elem_from_index(m % q);
                m /= q;
                e
            })
            .collect();
        coeffs.push(ctx.one());
        out.push(UniPoly::from_coeffs(ctx, coeffs, var));
    }
    out
}

/// Every canonical nonconstant rational function with lo <= deg h <= hi,
/// visited exactly once: coprime pairs with monic denominator, enumerated in
/// a fixed deterministic order. A pair is emitted only when it is already in
/// canonical form, so each function appears exactly once.
pub fn canonical_ratfuncs(ctx: &FieldCtx, lo: usize, hi: usize, var: Var) -> Vec<RatFunc> {
    let mut nums = Vec::new();
    for d in 0..=hi {
        nums.extend(unipolys_of_degree(ctx, d, var));
    }
    let mut dens = Vec::new();
    for d in 0..=hi {
        dens.extend(monic_unipolys_of_degree(ctx, d, var));
    }
    let mut out = Vec::new();
    for num in &nums {
        for den in &dens {
            let dmax = num.deg_or_zero().max(den.deg_or_zero());
            if dmax < lo.max(1) || dmax > hi {
                continue;
            }
            let h = RatFunc::new(num.clone(), den.clone()).expect("nonzero denominator");
            if h.num() != num || h.den() != den {
                continue; // not coprime or not normalized as written
            }
            if h.is_constant() {
                continue;
            }
            out.push(h);
        }
    }
    out
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

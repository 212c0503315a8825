//! Arithmetic in the function field of a plane curve, presented as
//! F_q(base)[reduced] / (f_0): one affine coordinate is transcendental (the
//! base), the other algebraic of degree n over it. Both orientations are
//! supported; the y-based one matches the projection from (1:0:0), whose
//! fibers are the lines y = const.
//!
//! On top of the arithmetic sit the pieces the decomposition needs: the
//! action of curve-stabilizing collineations on functions, and the
//! symmetric-function ladder that produces a generator of the fixed field
//! of a collineation group in the base variable alone.

use std::fmt;

use crate::curve::{Collineation, CollineationGroup, PlaneCurve};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{RatFunc, UniPoly, Var};

// ---- polynomials with rational-function coefficients ----

/// Dense polynomial in the reduced variable over F_q(base).
#[derive(Clone, PartialEq, Eq)]
struct RcPoly {
    coeffs: Vec<RatFunc>,
}

impl RcPoly {
    fn zero() -> RcPoly {
        RcPoly { coeffs: Vec::new() }
    }

    fn from_coeffs(coeffs: Vec<RatFunc>) -> RcPoly {
        let mut p = RcPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn add(&self, rhs: &RcPoly) -> RcPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        RcPoly::from_coeffs(coeffs)
    }

    fn sub(&self, rhs: &RcPoly) -> RcPoly {
        self.add(&rhs.neg())
    }

    fn neg(&self) -> RcPoly {
        RcPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, rhs: &RcPoly) -> RcPoly {
        if self.is_zero() || rhs.is_zero() {
            return RcPoly::zero();
        }
        let zero = {
            let c = &self.coeffs[0];
            RatFunc::zero(c.ctx(), c.var())
        };
        let mut coeffs = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        RcPoly::from_coeffs(coeffs)
    }

    fn scale(&self, c: &RatFunc) -> RcPoly {
        RcPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn divmod(&self, d: &RcPoly) -> Result<(RcPoly, RcPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lead_inv = d.coeffs[dd].inv()?;
        let mut rem = self.clone();
        let mut quot = RcPoly::zero();
        while rem.degree().is_some_and(|dr| dr >= dd) {
            let dr = rem.degree().unwrap();
            let c = &rem.coeffs[dr] * &lead_inv;
            let mut shift = vec![
                {
                    let z = &c;
                    RatFunc::zero(z.ctx(), z.var())
                };
                dr - dd
            ];
            shift.push(c);
            let q1 = RcPoly::from_coeffs(shift);
            rem = rem.sub(&q1.mul(d));
            quot = quot.add(&q1);
        }
        Ok((quot, rem))
    }

    /// Extended gcd: (g, u, v) with u*self + v*rhs = g.
    fn ext_gcd(&self, rhs: &RcPoly, ctx: &FieldCtx, base: Var) -> Result<(RcPoly, RcPoly, RcPoly)> {
        let one = RcPoly::from_coeffs(vec![RatFunc::one(ctx, base)]);
        let zero = RcPoly::zero();
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut u0, mut u1) = (one.clone(), zero.clone());
        let (mut v0, mut v1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let nu = u0.sub(&q.mul(&u1));
            let nv = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
            v0 = v1;
            v1 = nv;
        }
        Ok((r0, u0, v0))
    }
}

// ---- function field ----

/// F_q(base)[reduced] / (f_0) for a plane curve with affine polynomial f_0.
pub struct FunctionField {
    ctx: FieldCtx,
    base: Var,
    reduced: Var,
    modulus: RcPoly,
    n: usize,
}

/// An element in reduced coordinates: a vector of length n of rational
/// functions in the base variable.
#[derive(Clone, PartialEq, Eq)]
pub struct FFElem {
    coeffs: Vec<RatFunc>,
}

impl FFElem {
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format!("({c})")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FunctionField {
    /// Present the curve's function field with the chosen transcendental
    /// variable. `base = Var::Y` reduces x modulo f_0 and matches the
    /// projection from (1:0:0).
    pub fn new(curve: &PlaneCurve, base: Var) -> Result<FunctionField> {
        let ctx = curve.ctx().clone();
        let affine = match base {
            Var::Y => curve.affine().clone(),
            Var::X => curve.affine().swap_vars(),
        };
        let rows = affine.x_coefficients();
        let n = rows.len().saturating_sub(1);
        if n == 0 {
            return Err(Error::Domain(
                "curve polynomial has degree 0 in the reduced variable".into(),
            ));
        }
        let modulus = RcPoly::from_coeffs(
            rows.into_iter()
                .map(|p| RatFunc::from_poly(p.with_var(base)))
                .collect(),
        );
        let reduced = match base {
            Var::Y => Var::X,
            Var::X => Var::Y,
        };
        Ok(FunctionField {
            ctx,
            base,
            reduced,
            modulus,
            n,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn base_var(&self) -> Var {
        self.base
    }

    pub fn reduced_var(&self) -> Var {
        self.reduced
    }

    /// Degree of the reduced variable over F_q(base).
    pub fn extension_degree(&self) -> usize {
        self.n
    }

    fn elem(&self, raw: RcPoly) -> FFElem {
        let reduced = if raw.degree().is_some_and(|d| d >= self.n) {
            raw.divmod(&self.modulus).expect("monic-ish modulus").1
        } else {
            raw
        };
        let mut coeffs = reduced.coeffs;
        coeffs.resize(self.n, RatFunc::zero(&self.ctx, self.base));
        FFElem { coeffs }
    }

    pub fn zero(&self) -> FFElem {
        self.elem(RcPoly::zero())
    }

    pub fn one(&self) -> FFElem {
        self.from_ratfunc(&RatFunc::one(&self.ctx, self.base))
    }

    pub fn scalar(&self, c: &FieldElem) -> FFElem {
        self.from_ratfunc(&RatFunc::constant(c.clone(), self.base))
    }

    /// Image of a rational function of the base variable.
    pub fn from_ratfunc(&self, h: &RatFunc) -> FFElem {
        self.elem(RcPoly::from_coeffs(vec![h.with_var(self.base)]))
    }

    /// The reduced (algebraic) coordinate function.
    pub fn gen_reduced(&self) -> FFElem {
        self.elem(RcPoly::from_coeffs(vec![
            RatFunc::zero(&self.ctx, self.base),
            RatFunc::one(&self.ctx, self.base),
        ]))
    }

    /// The base (transcendental) coordinate function.
    pub fn gen_base(&self) -> FFElem {
        self.from_ratfunc(&RatFunc::identity(&self.ctx, self.base))
    }

    pub fn is_zero(&self, u: &FFElem) -> bool {
        u.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, u: &FFElem, v: &FFElem) -> FFElem {
        FFElem {
            coeffs: u
                .coeffs
                .iter()
                .zip(&v.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, u: &FFElem, v: &FFElem) -> FFElem {
        FFElem {
            coeffs: u
                .coeffs
                .iter()
                .zip(&v.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self, u: &FFElem) -> FFElem {
        FFElem {
            coeffs: u.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, u: &FFElem, v: &FFElem) -> FFElem {
        self.elem(RcPoly::from_coeffs(u.coeffs.clone()).mul(&RcPoly::from_coeffs(v.coeffs.clone())))
    }

    pub fn pow(&self, u: &FFElem, e: usize) -> FFElem {
        let mut acc = self.one();
        let mut base = u.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm against the curve
    /// polynomial. A nonzero non-invertible element signals a reducible
    /// curve polynomial.
    pub fn inv(&self, u: &FFElem) -> Result<FFElem> {
        if self.is_zero(u) {
            return Err(Error::DivisionByZero);
        }
        let up = RcPoly::from_coeffs(u.coeffs.clone());
        let (g, coef, _) = up.ext_gcd(&self.modulus, &self.ctx, self.base)?;
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible(format!(
                "gcd with the curve polynomial has degree {:?}",
                g.degree()
            )));
        }
        let ginv = g.coeffs[0].inv()?;
        Ok(self.elem(coef.scale(&ginv)))
    }

    pub fn div(&self, u: &FFElem, v: &FFElem) -> Result<FFElem> {
        Ok(self.mul(u, &self.inv(v)?))
    }

    /// When the element lies in F_q(base), its rational-function form.
    pub fn as_base_ratfunc(&self, u: &FFElem) -> Option<RatFunc> {
        if u.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(u.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Evaluate a univariate polynomial at a field element (Horner).
    pub fn eval_unipoly(&self, p: &UniPoly, at: &FFElem) -> FFElem {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, at), &self.scalar(c));
        }
        acc
    }

    /// Evaluate a rational function at a field element.
    pub fn eval_ratfunc(&self, h: &RatFunc, at: &FFElem) -> Result<FFElem> {
        let num = self.eval_unipoly(h.num(), at);
        let den = self.eval_unipoly(h.den(), at);
        self.div(&num, &den)
    }

    /// Images of the two coordinate functions (x, y) under a collineation
    /// acting on the Z = 1 chart.
    pub fn coordinate_images(
        &self,
        curve: &PlaneCurve,
        s: &Collineation,
    ) -> Result<(FFElem, FFElem)> {
        if curve.stabilizing_scalar(s).is_none() {
            return Err(Error::NotStabilizing(s.to_string()));
        }
        let (x_elem, y_elem) = match self.base {
            Var::Y => (self.gen_reduced(), self.gen_base()),
            Var::X => (self.gen_base(), self.gen_reduced()),
        };
        let m = s.matrix();
        let linear = |row: &[FieldElem; 3]| -> FFElem {
            let mut acc = self.scalar(&row[2]);
            acc = self.add(&acc, &self.mul(&self.scalar(&row[0]), &x_elem));
            self.add(&acc, &self.mul(&self.scalar(&row[1]), &y_elem))
        };
        let den = linear(&m[2]);
        let den_inv = self.inv(&den).map_err(|_| {
            Error::Domain("collineation denominator vanishes on the curve".into())
        })?;
        let x_img = self.mul(&linear(&m[0]), &den_inv);
        let y_img = self.mul(&linear(&m[1]), &den_inv);
        Ok((x_img, y_img))
    }

    /// The pullback of a function along a curve-stabilizing collineation:
    /// substitutes the coordinate images into the reduced representation.
    pub fn apply_automorphism(
        &self,
        curve: &PlaneCurve,
        s: &Collineation,
        u: &FFElem,
    ) -> Result<FFElem> {
        let (x_img, y_img) = self.coordinate_images(curve, s)?;
        let (base_img, red_img) = match self.base {
            Var::Y => (y_img, x_img),
            Var::X => (x_img, y_img),
        };
        let mut acc = self.zero();
        let mut red_pow = self.one();
        for (i, c) in u.coeffs.iter().enumerate() {
            if i > 0 {
                red_pow = self.mul(&red_pow, &red_img);
            }
            if c.is_zero() {
                continue;
            }
            let cv = self.eval_ratfunc(c, &base_img)?;
            acc = self.add(&acc, &self.mul(&cv, &red_pow));
        }
        Ok(acc)
    }
}

// ---- the invariant-generator ladder ----

/// A generator of the fixed field of G inside F_q(axis): a rational function
/// h of the axis variable whose image in the function field is G-invariant
/// and whose degree equals |G| / |Gamma_axis|, the orbit length of the axis
/// coordinate. Candidates are power sums and elementary symmetric functions
/// of the distinct orbit of the axis coordinate; the degree test certifies
/// that F_q(h) is the whole fixed field.
pub fn invariant_generator(
    curve: &PlaneCurve,
    group: &CollineationGroup,
    axis: Var,
) -> Result<RatFunc> {
    let field = FunctionField::new(curve, axis)?;
    let base = field.gen_base();
    let mut orbit: Vec<FFElem> = Vec::new();
    for g in group.iter() {
        let img = field.apply_automorphism(curve, g, &base)?;
        if !orbit.contains(&img) {
            orbit.push(img);
        }
    }
    if !group.order().is_multiple_of(orbit.len()) {
        return Err(Error::Domain(format!(
            "orbit length {} does not divide the group order {}",
            orbit.len(),
            group.order()
        )));
    }
    let target = orbit.len();
    let mut rejected: Vec<(String, usize)> = Vec::new();

    let mut consider = |name: String, cand: &FFElem| -> Result<Option<RatFunc>> {
        let Some(h) = field.as_base_ratfunc(cand) else {
            rejected.push((name, usize::MAX));
            return Ok(None);
        };
        if h.is_constant() || h.degree() != target {
            rejected.push((name, h.degree()));
            return Ok(None);
        }
        // normalize the numerator monic; the generated subfield is unchanged
        let lc = h.num().leading_coeff().expect("nonconstant");
        let h = h.scale(&lc.inv()?);
        // invariance re-check on the normalized candidate
        let img = field.from_ratfunc(&h);
        for g in group.iter() {
            if field.apply_automorphism(curve, g, &img)? != img {
                return Err(Error::Domain(format!(
                    "ladder produced a non-invariant candidate {h}"
                )));
            }
        }
        Ok(Some(h))
    };

    // power sums of the distinct orbit
    let mut powers: Vec<FFElem> = vec![field.one(); orbit.len()];
    for k in 1..=group.order() {
        for (pw, r) in powers.iter_mut().zip(&orbit) {
            *pw = field.mul(pw, r);
        }
        let mut sum = field.zero();
        for pw in &powers {
            sum = field.add(&sum, pw);
        }
        if let Some(h) = consider(format!("p_{k}"), &sum)? {
            return Ok(h);
        }
    }

    // elementary symmetric functions via prod (T - r)
    let mut elem: Vec<FFElem> = vec![field.one()];
    for r in &orbit {
        let mut next = vec![field.zero(); elem.len() + 1];
        for (i, c) in elem.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            next[i] = field.sub(&next[i], &field.mul(c, r));
        }
        elem = next;
    }
    for k in 1..=orbit.len() {
        let cand = elem[orbit.len() - k].clone();
        if let Some(h) = consider(format!("e_{k}"), &cand)? {
            return Ok(h);
        }
    }
    Err(Error::LadderExhausted(rejected))
}

/// The subgroup of G fixing the axis coordinate function.
pub fn axis_stabilizer(
    curve: &PlaneCurve,
    group: &CollineationGroup,
    axis: Var,
) -> Result<CollineationGroup> {
    let field = FunctionField::new(curve, axis)?;
    let base = field.gen_base();
    let mut elements = std::collections::BTreeSet::new();
    for g in group.iter() {
        if field.apply_automorphism(curve, g, &base)? == base {
            elements.insert(g.clone());
        }
    }
    Ok(CollineationGroup::from_elements(elements))
}

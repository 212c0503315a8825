//! The constructive decomposition of a plane curve with two Galois points
//! into a pair of rational functions, and the verification of the structure
//! statements tied to it.
//!
//! For a curve C with Galois points P1 = (1:0:0) and P2 = (0:1:0) whose
//! stabilizer groups generate a finite group G, a single generator t of the
//! fixed field F_q(C)^G can be written both as h2(y) = f2/g2 and as
//! h1(x) = f1/g1. The defining polynomial of C then divides the separated
//! relation S = f1(x) g2(y) - g1(x) f2(y). The functions here compute one
//! shared t (found in y, re-expressed in x by reduction modulo the curve),
//! verify every claimed property before returning, and post-compose with a
//! Moebius map to reach polynomial form when both points are outer.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bivar::{factor_over_base, BiPoly, Irreducibility, SearchCap};
use crate::curve::{
    group_closure, structure_report, Collineation, CollineationGroup, GaloisPointReport,
    PlaneCurve, ProjPlanePoint, StructureReport,
};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::funcfield::{invariant_generator, FFElem, FunctionField};
use crate::moebius::{is_galois_cover, postcompose, MoebiusMap};
use crate::poly::{ProjPoint, RatFunc, UniPoly, Var};

/// Default closure cap: generous for desk-scale fixtures.
pub fn default_closure_cap(degree: usize) -> usize {
    10 * degree.pow(4)
}

/// The (f1, g1, f2, g2) tuple with its invariant witness and group orders.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub f1: UniPoly,
    pub g1: UniPoly,
    pub f2: UniPoly,
    pub g2: UniPoly,
    pub h1: RatFunc,
    pub h2: RatFunc,
    /// |Gamma_P1|, |Gamma_P2|, |G|.
    pub orders: (usize, usize, usize),
    /// Degree of S / f_0; zero exactly when S is a scalar multiple of f_0.
    pub s_quotient_degree: usize,
    /// The scalar with S = lambda * f_0, when the quotient is constant.
    pub lambda: Option<FieldElem>,
    /// The invariant t as an element of F_q(y)[x]/(f_0).
    pub t_witness: FFElem,
    /// Set when the input points were moved to (1:0:0), (0:1:0) first; the
    /// decomposition refers to the transformed coordinates.
    pub coordinate_change: Option<Collineation>,
}

impl Decomposition {
    /// The separated relation f1(x) g2(y) - g1(x) f2(y).
    pub fn separated_relation(&self) -> BiPoly {
        separated_relation(&self.h1, &self.h2)
    }
}

pub(crate) fn separated_relation(h1: &RatFunc, h2: &RatFunc) -> BiPoly {
    let f1 = BiPoly::from_unipoly(h1.num());
    let g1 = BiPoly::from_unipoly(h1.den());
    let f2 = BiPoly::from_unipoly(h2.num());
    let g2 = BiPoly::from_unipoly(h2.den());
    &(&f1 * &g2) - &(&g1 * &f2)
}

/// Everything decompose learns along the way; used by the theorem verifier.
pub struct DecompositionDetail {
    pub decomposition: Decomposition,
    pub curve: PlaneCurve,
    pub p1_report: GaloisPointReport,
    pub p2_report: GaloisPointReport,
    pub g1_group: CollineationGroup,
    pub g2_group: CollineationGroup,
    pub joint: CollineationGroup,
    pub structure: StructureReport,
}

/// Constructive decomposition at the standard points, after moving the given
/// points there if needed. Every postcondition is verified before returning.
pub fn decompose(
    curve: &PlaneCurve,
    p1: &ProjPlanePoint,
    p2: &ProjPlanePoint,
) -> Result<Decomposition> {
    Ok(decompose_detail(curve, p1, p2)?.decomposition)
}

pub fn decompose_detail(
    curve: &PlaneCurve,
    p1: &ProjPlanePoint,
    p2: &ProjPlanePoint,
) -> Result<DecompositionDetail> {
    if p1 == p2 {
        return Err(Error::InvalidPoint("the two centers must be distinct".into()));
    }
    let ctx = curve.ctx().clone();
    let std1 = ProjPlanePoint::e1(&ctx);
    let std2 = ProjPlanePoint::e2(&ctx);
    let (curve, coordinate_change) = if *p1 == std1 && *p2 == std2 {
        (curve.clone(), None)
    } else {
        let t = basis_through_points(p1, p2)?;
        (curve.transform(&t)?, Some(t))
    };

    let p1_report = curve.is_galois_point(&std1)?;
    if !p1_report.galois_linear {
        return Err(Error::NotGaloisPoint {
            point: p1.to_string(),
            gamma: p1_report.gamma_order,
            degree: p1_report.deg_proj,
        });
    }
    let p2_report = curve.is_galois_point(&std2)?;
    if !p2_report.galois_linear {
        return Err(Error::NotGaloisPoint {
            point: p2.to_string(),
            gamma: p2_report.gamma_order,
            degree: p2_report.deg_proj,
        });
    }

    let g1_group = curve.central_collineations(&std1)?;
    let g2_group = curve.central_collineations(&std2)?;
    let cap = default_closure_cap(curve.degree()).max(g1_group.order() * g2_group.order());
    let joint = group_closure(&g1_group, &g2_group, cap)?;
    let structure = structure_report(&joint, &g1_group, &g2_group)?;

    // one shared invariant: found in y, then re-expressed in x
    let h2 = invariant_generator(&curve, &joint, Var::Y)?;
    let expect2 = joint.order() / g1_group.order();
    if h2.degree() != expect2 {
        return Err(Error::TheoremViolation {
            clause: "degree-indices".into(),
            detail: format!(
                "deg h2 = {} but |G|/|Gamma_P1| = {expect2}",
                h2.degree()
            ),
        });
    }
    let ff_x = FunctionField::new(&curve, Var::X)?;
    let y_elem = ff_x.gen_reduced();
    let t_in_x = ff_x.eval_ratfunc(&h2, &y_elem)?;
    let h1 = ff_x.as_base_ratfunc(&t_in_x).ok_or_else(|| {
        Error::ReExpression(
            "the invariant is not a rational function of x alone after reduction".into(),
        )
    })?;
    let expect1 = joint.order() / g2_group.order();
    if h1.degree() != expect1 {
        return Err(Error::TheoremViolation {
            clause: "degree-indices".into(),
            detail: format!(
                "deg h1 = {} but |G|/|Gamma_P2| = {expect1}",
                h1.degree()
            ),
        });
    }

    // condition (c): the defining polynomial divides the separated relation
    let s = separated_relation(&h1, &h2);
    if s.is_zero() {
        return Err(Error::TheoremViolation {
            clause: "component-divisibility".into(),
            detail: "separated relation collapsed to zero".into(),
        });
    }
    let quotient = curve.affine().divides(&s)?.ok_or_else(|| Error::TheoremViolation {
        clause: "component-divisibility".into(),
        detail: format!("{} does not divide {}", curve.affine(), s),
    })?;
    let s_quotient_degree = quotient.total_degree();
    let lambda = if quotient.is_constant() {
        Some(quotient.coeff(0, 0))
    } else {
        None
    };
    if structure.order_product && s_quotient_degree != 0 {
        return Err(Error::TheoremViolation {
            clause: "order-product".into(),
            detail: format!(
                "|G| = |G1|*|G2| but S / f_0 has degree {s_quotient_degree}"
            ),
        });
    }

    let ff_y = FunctionField::new(&curve, Var::Y)?;
    let t_witness = ff_y.from_ratfunc(&h2);

    let decomposition = Decomposition {
        f1: h1.num().clone(),
        g1: h1.den().clone(),
        f2: h2.num().clone(),
        g2: h2.den().clone(),
        h1,
        h2,
        orders: (g1_group.order(), g2_group.order(), joint.order()),
        s_quotient_degree,
        lambda,
        t_witness,
        coordinate_change,
    };
    Ok(DecompositionDetail {
        decomposition,
        curve,
        p1_report,
        p2_report,
        g1_group,
        g2_group,
        joint,
        structure,
    })
}

/// Deterministic coordinate change T with T(1:0:0) = p1 and T(0:1:0) = p2.
fn basis_through_points(p1: &ProjPlanePoint, p2: &ProjPlanePoint) -> Result<Collineation> {
    let ctx = p1.ctx();
    let c1 = p1.coords();
    let c2 = p2.coords();
    for k in 0..3 {
        let mut e = [ctx.zero(), ctx.zero(), ctx.zero()];
        e[k] = ctx.one();
        let m = [
            [c1[0].clone(), c2[0].clone(), e[0].clone()],
            [c1[1].clone(), c2[1].clone(), e[1].clone()],
            [c1[2].clone(), c2[2].clone(), e[2].clone()],
        ];
        if let Ok(t) = Collineation::new(m) {
            return Ok(t);
        }
    }
    Err(Error::InvalidPoint(
        "points do not span independent directions".into(),
    ))
}

// ---- outer-point polynomialization ----

/// Result of moving the common branch value to infinity: both coordinates of
/// the invariant become polynomials.
#[derive(Clone, Debug)]
pub struct PolynomializedPair {
    pub f1: UniPoly,
    pub f2: UniPoly,
    /// The common value of h1, h2 on the fiber over the line P1 P2.
    pub t0: ProjPoint,
    /// The map applied on the value side (identity when t0 was infinity).
    pub moebius: Option<MoebiusMap>,
    /// Degree of (f1(x) - f2(y)) / f_0.
    pub quotient_degree: usize,
    /// Scalar with f1(x) - f2(y) = lambda * f_0, when the quotient is constant.
    pub lambda: Option<FieldElem>,
}

/// Takes g1 = g2 = 1 for outer points: evaluates the shared branch value t0
/// over the line P1 P2 (both projections send that fiber to infinity), moves
/// t0 to infinity, and returns the polynomial pair. The d^2 criterion is
/// checked in both directions.
pub fn polynomialize_outer(
    dec: &Decomposition,
    curve: &PlaneCurve,
    p1: &ProjPlanePoint,
    p2: &ProjPlanePoint,
) -> Result<PolynomializedPair> {
    for p in [p1, p2] {
        let m = curve.multiplicity_at(p);
        if m != 0 {
            return Err(Error::InnerPoint(format!("{p} lies on the curve (multiplicity {m})")));
        }
    }
    let curve_std = match &dec.coordinate_change {
        None => curve.clone(),
        Some(t) => curve.transform(t)?,
    };
    let t0_from_x = dec.h1.eval_proj(&ProjPoint::Infinity);
    let t0_from_y = dec.h2.eval_proj(&ProjPoint::Infinity);
    if t0_from_x != t0_from_y {
        return Err(Error::FiberInconsistent(format!(
            "h1(inf) = {t0_from_x} but h2(inf) = {t0_from_y}"
        )));
    }
    let t0 = t0_from_x;
    let ctx = curve.ctx();
    let (h1p, h2p, moebius) = match &t0 {
        ProjPoint::Infinity => (dec.h1.clone(), dec.h2.clone(), None),
        ProjPoint::Affine(c) => {
            // t -> 1/(t - c)
            let mu = MoebiusMap::new(ctx.zero(), ctx.one(), ctx.one(), -c)?;
            (
                postcompose(&mu, &dec.h1),
                postcompose(&mu, &dec.h2),
                Some(mu),
            )
        }
    };
    for (h, name) in [(&h1p, "h1"), (&h2p, "h2")] {
        if !h.is_polynomial() {
            return Err(Error::FiberInconsistent(format!(
                "{name} keeps an affine pole after moving t0 to infinity: {h}"
            )));
        }
    }
    let f1 = h1p.num().clone();
    let f2 = h2p.num().clone();
    let s = &BiPoly::from_unipoly(&f1) - &BiPoly::from_unipoly(&f2);
    let quotient = curve_std
        .affine()
        .divides(&s)?
        .ok_or_else(|| Error::TheoremViolation {
            clause: "polynomial-form".into(),
            detail: format!("{} does not divide {}", curve_std.affine(), s),
        })?;
    let quotient_degree = quotient.total_degree();
    let lambda = if quotient.is_constant() {
        Some(quotient.coeff(0, 0))
    } else {
        None
    };
    let d2 = curve.degree() * curve.degree();
    let orders_d2 = dec.orders.2 == d2;
    if orders_d2 != (quotient_degree == 0) {
        return Err(Error::TheoremViolation {
            clause: "polynomial-form".into(),
            detail: format!(
                "|G| = {} (d^2 = {d2}) but quotient degree = {quotient_degree}",
                dec.orders.2
            ),
        });
    }
    Ok(PolynomializedPair {
        f1,
        f2,
        t0,
        moebius,
        quotient_degree,
        lambda,
    })
}

// ---- candidate-curve construction ----

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ComponentStatus {
    /// Degree-1 components are not curves in this setting.
    RejectedDegreeOne,
    Verified {
        p1: GaloisPointReport,
        p2: GaloisPointReport,
        both_galois: bool,
        irreducibility: String,
    },
    Unverified {
        reason: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub component: String,
    #[serde(skip)]
    pub poly: BiPoly,
    pub degree: usize,
    pub multiplicity: usize,
    pub status: ComponentStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructReport {
    pub schema_version: u32,
    pub relation: String,
    pub components: Vec<ComponentReport>,
    /// Factor-search leftover when the cap was exhausted.
    pub unfactored: Option<String>,
}

/// Builds the separated relation of an (h1(x), h2(y)) pair, splits off the
/// components findable over F_q under the cap, and runs the full Galois-point
/// verification on each. Nothing is assumed about the pair: components are
/// post-verified, never trusted.
pub fn construct_candidate_curve(
    h1: &RatFunc,
    h2: &RatFunc,
    cap: &SearchCap,
) -> Result<ConstructReport> {
    if h1.is_constant() || h2.is_constant() {
        return Err(Error::ConstantFunction(
            "both rational functions must be nonconstant".into(),
        ));
    }
    let s = separated_relation(h1, h2);
    if s.is_zero() {
        return Err(Error::Domain("separated relation is identically zero".into()));
    }
    let ctx = s.ctx().clone();
    let (factors, unfactored) = factor_over_base(&s, cap)?;
    let mut components = Vec::new();
    for (poly, multiplicity) in factors {
        let degree = poly.total_degree();
        if degree == 0 {
            continue;
        }
        let status = if degree == 1 {
            ComponentStatus::RejectedDegreeOne
        } else {
            verify_component(&poly, cap)
        };
        components.push(ComponentReport {
            component: poly.to_string(),
            poly,
            degree,
            multiplicity,
            status,
        });
    }
    let _ = ctx;
    Ok(ConstructReport {
        schema_version: crate::report::SCHEMA_VERSION,
        relation: s.to_string(),
        components,
        unfactored: unfactored.map(|f| f.to_string()),
    })
}

fn verify_component(poly: &BiPoly, cap: &SearchCap) -> ComponentStatus {
    let curve = match PlaneCurve::from_affine(poly) {
        Ok(c) => c,
        Err(e) => {
            return ComponentStatus::Unverified {
                reason: e.to_string(),
            }
        }
    };
    let ctx = curve.ctx().clone();
    let p1 = ProjPlanePoint::e1(&ctx);
    let p2 = ProjPlanePoint::e2(&ctx);
    let r1 = match curve.is_galois_point(&p1) {
        Ok(r) => r,
        Err(e) => {
            return ComponentStatus::Unverified {
                reason: format!("P1: {e}"),
            }
        }
    };
    let r2 = match curve.is_galois_point(&p2) {
        Ok(r) => r,
        Err(e) => {
            return ComponentStatus::Unverified {
                reason: format!("P2: {e}"),
            }
        }
    };
    let irr = match crate::bivar::is_absolutely_irreducible(poly, cap) {
        Ok(Irreducibility::Irreducible) => "irreducible".to_string(),
        Ok(Irreducibility::Reducible { ext_degree, .. }) => {
            format!("reducible over extension degree {ext_degree}")
        }
        Ok(Irreducibility::Inconclusive { reason }) => format!("inconclusive: {reason}"),
        Err(e) => format!("error: {e}"),
    };
    let both = r1.galois_linear && r2.galois_linear;
    ComponentStatus::Verified {
        p1: r1,
        p2: r2,
        both_galois: both,
        irreducibility: irr,
    }
}

// ---- theorem report ----

#[derive(Debug, Clone, Serialize)]
pub struct ClauseReport {
    pub clause: String,
    pub holds: bool,
    pub witnesses: BTreeMap<String, String>,
    pub numbers: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub schema_version: u32,
    pub curve: String,
    pub p1: String,
    pub p2: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub clauses: Vec<ClauseReport>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.applicable && self.clauses.iter().all(|c| c.holds)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseReport> {
        self.clauses.iter().find(|c| c.clause == name)
    }
}

/// Runs the decomposition and evaluates every structure clause on it:
/// the coprimality, degree and divisibility conditions, the order-product
/// equivalence, the agreement of normality with the Galois-cover test on h2,
/// and (for outer points) the polynomialization with its d^2 criterion.
pub fn verify_theorems(
    curve: &PlaneCurve,
    p1: &ProjPlanePoint,
    p2: &ProjPlanePoint,
) -> Result<TheoremReport> {
    let base = |applicable: bool, reason: Option<String>| TheoremReport {
        schema_version: crate::report::SCHEMA_VERSION,
        curve: curve.hom().to_string(),
        p1: p1.to_string(),
        p2: p2.to_string(),
        applicable,
        reason,
        clauses: Vec::new(),
    };
    // applicability: both points Galois
    let detail = match decompose_detail(curve, p1, p2) {
        Ok(d) => d,
        Err(Error::NotGaloisPoint { point, gamma, degree }) => {
            return Ok(base(
                false,
                Some(format!(
                    "inapplicable: {point} is not a Galois point (|Gamma| = {gamma}, degree = {degree})"
                )),
            ));
        }
        Err(e) => return Err(e),
    };
    let dec = &detail.decomposition;
    let mut report = base(true, None);

    // coprimality is structural in the canonical rational forms
    let mut w = BTreeMap::new();
    w.insert("f1".into(), dec.f1.to_string());
    w.insert("g1".into(), dec.g1.to_string());
    w.insert("f2".into(), dec.f2.to_string());
    w.insert("g2".into(), dec.g2.to_string());
    let gcd1 = dec.f1.gcd(&dec.g1);
    let gcd2 = dec.f2.gcd(&dec.g2);
    report.clauses.push(ClauseReport {
        clause: "coprime-parts".into(),
        holds: gcd1.degree() == Some(0) && gcd2.degree() == Some(0),
        witnesses: w,
        numbers: BTreeMap::new(),
    });

    // max degrees match the group indices
    let (o1, o2, og) = dec.orders;
    let max1 = dec.f1.deg_or_zero().max(dec.g1.deg_or_zero());
    let max2 = dec.f2.deg_or_zero().max(dec.g2.deg_or_zero());
    let mut n = BTreeMap::new();
    n.insert("order_G1".into(), o1 as i64);
    n.insert("order_G2".into(), o2 as i64);
    n.insert("order_G".into(), og as i64);
    n.insert("max_deg_1".into(), max1 as i64);
    n.insert("max_deg_2".into(), max2 as i64);
    report.clauses.push(ClauseReport {
        clause: "degree-indices".into(),
        holds: max1 * o2 == og && max2 * o1 == og,
        witnesses: BTreeMap::new(),
        numbers: n,
    });

    // divisibility with the quotient as witness
    let s = dec.separated_relation();
    let quotient = detail.curve.affine().divides(&s)?;
    let mut w = BTreeMap::new();
    w.insert("relation".into(), s.to_string());
    if let Some(q) = &quotient {
        w.insert("quotient".into(), q.to_string());
    }
    report.clauses.push(ClauseReport {
        clause: "component-divisibility".into(),
        holds: quotient.is_some(),
        witnesses: w,
        numbers: BTreeMap::new(),
    });

    // order product <=> S = lambda f_0, the converse guarded by the
    // unequal-degree normalization
    let order_product = og == o1 * o2;
    let s_is_scalar_multiple = dec.s_quotient_degree == 0;
    let converse_applicable =
        dec.f1.deg_or_zero() != dec.g1.deg_or_zero() || dec.f2.deg_or_zero() != dec.g2.deg_or_zero();
    let forward_ok = !order_product || s_is_scalar_multiple;
    let converse_ok = !(converse_applicable && s_is_scalar_multiple) || order_product;
    let mut w = BTreeMap::new();
    w.insert("order_product".into(), order_product.to_string());
    w.insert("s_is_scalar_multiple".into(), s_is_scalar_multiple.to_string());
    w.insert("converse_applicable".into(), converse_applicable.to_string());
    if let Some(l) = &dec.lambda {
        w.insert("lambda".into(), l.to_string());
    }
    let mut n = BTreeMap::new();
    n.insert("s_quotient_degree".into(), dec.s_quotient_degree as i64);
    report.clauses.push(ClauseReport {
        clause: "order-product".into(),
        holds: forward_ok && converse_ok,
        witnesses: w,
        numbers: n,
    });

    // normality of G_P1 in G agrees with the Galois-cover test on h2
    let normal1 = detail.structure.normal1;
    let galois_h2 = is_galois_cover(&dec.h2, 1)?;
    let mut w = BTreeMap::new();
    w.insert("normal_G1".into(), normal1.to_string());
    w.insert("h2".into(), dec.h2.to_string());
    w.insert("is_galois_cover_h2".into(), galois_h2.to_string());
    report.clauses.push(ClauseReport {
        clause: "normality-galois-cover".into(),
        holds: normal1 == galois_h2,
        witnesses: w,
        numbers: BTreeMap::new(),
    });

    // polynomial form: outer points only
    let outer = curve.multiplicity_at(p1) == 0 && curve.multiplicity_at(p2) == 0;
    let mut w = BTreeMap::new();
    let mut n = BTreeMap::new();
    let holds4 = if outer {
        match polynomialize_outer(dec, curve, p1, p2) {
            Ok(pair) => {
                w.insert("f1".into(), pair.f1.to_string());
                w.insert("f2".into(), pair.f2.to_string());
                w.insert("t0".into(), pair.t0.to_string());
                if let Some(l) = &pair.lambda {
                    w.insert("lambda".into(), l.to_string());
                }
                n.insert("quotient_degree".into(), pair.quotient_degree as i64);
                n.insert("d_squared".into(), (curve.degree() * curve.degree()) as i64);
                n.insert("order_G".into(), og as i64);
                true
            }
            Err(e) => {
                w.insert("error".into(), e.to_string());
                false
            }
        }
    } else {
        w.insert("status".into(), "inapplicable: inner point".into());
        true
    };
    report.clauses.push(ClauseReport {
        clause: "polynomial-form".into(),
        holds: holds4,
        witnesses: w,
        numbers: n,
    });

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::moebius::pgl2_elements;

    fn fq(p: u64, n: usize) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    fn mono(ctx: &FieldCtx, c: i64, i: usize, j: usize) -> BiPoly {
        BiPoly::monomial(ctx.from_i64(c), i, j)
    }

    fn fermat_f9() -> PlaneCurve {
        let ctx = fq(3, 2);
        let f = &(&mono(&ctx, 1, 4, 0) + &mono(&ctx, 1, 0, 4)) + &mono(&ctx, 1, 0, 0);
        PlaneCurve::from_affine(&f).unwrap()
    }

    fn hermitian_f4() -> PlaneCurve {
        let ctx = fq(2, 2);
        let f = &(&mono(&ctx, 1, 3, 0) + &mono(&ctx, 1, 0, 3)) + &mono(&ctx, 1, 0, 0);
        PlaneCurve::from_affine(&f).unwrap()
    }

    fn s3_conic_f5() -> PlaneCurve {
        let ctx = fq(5, 1);
        let f = &(&(&mono(&ctx, 1, 2, 0) + &mono(&ctx, 1, 1, 1)) + &mono(&ctx, 1, 0, 2))
            + &mono(&ctx, 1, 0, 0);
        PlaneCurve::from_affine(&f).unwrap()
    }

    #[test]
    fn test_decompose_fermat() {
        let curve = fermat_f9();
        let ctx = curve.ctx().clone();
        let dec = decompose(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        assert_eq!(dec.orders, (4, 4, 16));
        // f2 = y^4, g2 = 1, f1 = 2x^4 + 2, g1 = 1
        assert_eq!(dec.f2, UniPoly::monomial(ctx.one(), 4, Var::Y));
        assert_eq!(dec.g2, UniPoly::one(&ctx, Var::Y));
        assert_eq!(dec.f1, UniPoly::from_ints(&ctx, &[2, 0, 0, 0, 2], Var::X));
        assert_eq!(dec.g1, UniPoly::one(&ctx, Var::X));
        // S = 2 (x^4 + y^4 + 1)
        assert_eq!(dec.s_quotient_degree, 0);
        assert_eq!(dec.lambda, Some(ctx.from_int(2)));
    }

    #[test]
    fn test_decompose_hermitian() {
        let curve = hermitian_f4();
        let ctx = curve.ctx().clone();
        let dec = decompose(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        assert_eq!(dec.orders, (3, 3, 9));
        assert_eq!(dec.f2, UniPoly::monomial(ctx.one(), 3, Var::Y));
        assert_eq!(dec.f1, UniPoly::from_ints(&ctx, &[1, 0, 0, 1], Var::X));
        assert_eq!(dec.lambda, Some(ctx.one()));
    }

    #[test]
    fn test_decompose_s3_conic() {
        let curve = s3_conic_f5();
        let ctx = curve.ctx().clone();
        let dec = decompose(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        assert_eq!(dec.orders, (2, 2, 6));
        // t = y^3 + y = x^3 + x on the curve; S = (x - y) f_0
        assert_eq!(dec.f2, UniPoly::from_ints(&ctx, &[0, 1, 0, 1], Var::Y));
        assert_eq!(dec.f1, UniPoly::from_ints(&ctx, &[0, 1, 0, 1], Var::X));
        assert_eq!(dec.s_quotient_degree, 1);
        assert_eq!(dec.lambda, None);
    }

    #[test]
    fn test_decompose_rejects_non_galois() {
        let ctx = fq(5, 1);
        let f = &(&(&mono(&ctx, 1, 4, 0) + &mono(&ctx, 1, 0, 4)) + &mono(&ctx, 1, 3, 0))
            + &(&mono(&ctx, 2, 1, 2) + &mono(&ctx, 1, 0, 0));
        let curve = PlaneCurve::from_affine(&f).unwrap();
        let err = decompose(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotGaloisPoint { .. }));
        assert!(err.to_string().contains("is_galois_point"));
    }

    #[test]
    fn test_decompose_at_nonstandard_points() {
        // move the Fermat curve by a coordinate change; decompose at the
        // moved Galois points and get the same orders and lambda relation
        let curve = fermat_f9();
        let ctx = curve.ctx().clone();
        let t = Collineation::from_ints(&ctx, [[1, 1, 0], [0, 1, 2], [1, 0, 2]]).unwrap();
        let moved = curve.transform(&t).unwrap();
        let tinv = t.inverse();
        let p1 = tinv.apply(&ProjPlanePoint::e1(&ctx));
        let p2 = tinv.apply(&ProjPlanePoint::e2(&ctx));
        let dec = decompose(&moved, &p1, &p2).unwrap();
        assert_eq!(dec.orders, (4, 4, 16));
        assert_eq!(dec.s_quotient_degree, 0);
        assert!(dec.coordinate_change.is_some());
    }

    #[test]
    fn test_polynomialize_fermat_unchanged() {
        let curve = fermat_f9();
        let ctx = curve.ctx().clone();
        let p1 = ProjPlanePoint::e1(&ctx);
        let p2 = ProjPlanePoint::e2(&ctx);
        let dec = decompose(&curve, &p1, &p2).unwrap();
        let pair = polynomialize_outer(&dec, &curve, &p1, &p2).unwrap();
        assert_eq!(pair.t0, ProjPoint::Infinity);
        assert!(pair.moebius.is_none());
        assert_eq!(pair.f1, dec.f1);
        assert_eq!(pair.f2, dec.f2);
        assert_eq!(pair.quotient_degree, 0);
    }

    #[test]
    fn test_polynomialize_roundtrip_through_inversion() {
        // post-compose the decomposition with t -> 1/t, then polynomialize:
        // the original polynomial pair comes back
        let curve = fermat_f9();
        let ctx = curve.ctx().clone();
        let p1 = ProjPlanePoint::e1(&ctx);
        let p2 = ProjPlanePoint::e2(&ctx);
        let dec = decompose(&curve, &p1, &p2).unwrap();
        let invmap = MoebiusMap::new(ctx.zero(), ctx.one(), ctx.one(), ctx.zero()).unwrap();
        let mut twisted = dec.clone();
        twisted.h1 = postcompose(&invmap, &dec.h1);
        twisted.h2 = postcompose(&invmap, &dec.h2);
        twisted.f1 = twisted.h1.num().clone();
        twisted.g1 = twisted.h1.den().clone();
        twisted.f2 = twisted.h2.num().clone();
        twisted.g2 = twisted.h2.den().clone();
        let pair = polynomialize_outer(&twisted, &curve, &p1, &p2).unwrap();
        assert_eq!(pair.t0, ProjPoint::Affine(ctx.zero()));
        // same pair up to the shared scaling hidden in the Moebius choice
        assert_eq!(pair.f1, dec.f1);
        assert_eq!(pair.f2, dec.f2);
    }

    #[test]
    fn test_polynomialize_rejects_inner_point() {
        // the nodal-free cubic y^2 = x^3 + x over F_5 passes through (0:0:1)
        let ctx = fq(5, 1);
        let f = &(&mono(&ctx, 1, 0, 2) - &mono(&ctx, 1, 3, 0)) - &mono(&ctx, 1, 1, 0);
        let curve = PlaneCurve::from_affine(&f).unwrap();
        let inner = ProjPlanePoint::from_ints(&ctx, [0, 0, 1]).unwrap();
        let outer = ProjPlanePoint::e1(&ctx);
        let dec_err = decompose(&curve, &inner, &outer);
        // regardless of whether decompose succeeds, polynomialize must reject
        if let Ok(dec) = dec_err {
            assert!(matches!(
                polynomialize_outer(&dec, &curve, &inner, &outer),
                Err(Error::InnerPoint(_))
            ));
        }
    }

    #[test]
    fn test_construct_fermat_pair() {
        let ctx = fq(3, 2);
        // the canonical quartic pair: x^4 and -y^4 - 1
        let h1 = RatFunc::from_poly(UniPoly::monomial(ctx.one(), 4, Var::X));
        let h2 = RatFunc::from_poly(UniPoly::from_ints(&ctx, &[-1, 0, 0, 0, -1], Var::Y));
        let rep = construct_candidate_curve(&h1, &h2, &SearchCap::default()).unwrap();
        assert_eq!(rep.components.len(), 1);
        let comp = &rep.components[0];
        assert_eq!(comp.degree, 4);
        match &comp.status {
            ComponentStatus::Verified {
                both_galois,
                irreducibility,
                ..
            } => {
                assert!(both_galois);
                assert_eq!(irreducibility, "irreducible");
            }
            other => panic!("expected verified component, got {other:?}"),
        }
    }

    #[test]
    fn test_construct_line_rejected() {
        let ctx = fq(5, 1);
        let h1 = RatFunc::identity(&ctx, Var::X);
        let h2 = RatFunc::identity(&ctx, Var::Y);
        let rep = construct_candidate_curve(&h1, &h2, &SearchCap::default()).unwrap();
        assert_eq!(rep.components.len(), 1);
        assert!(matches!(
            rep.components[0].status,
            ComponentStatus::RejectedDegreeOne
        ));
    }

    #[test]
    fn test_construct_two_lines_rejected() {
        let ctx = fq(5, 1);
        let h1 = RatFunc::from_poly(UniPoly::monomial(ctx.one(), 2, Var::X));
        let h2 = RatFunc::from_poly(UniPoly::monomial(ctx.one(), 2, Var::Y));
        let rep = construct_candidate_curve(&h1, &h2, &SearchCap::default()).unwrap();
        assert_eq!(rep.components.len(), 2);
        for c in &rep.components {
            assert!(matches!(c.status, ComponentStatus::RejectedDegreeOne));
        }
    }

    #[test]
    fn test_verify_theorems_fermat_all_clauses() {
        let curve = fermat_f9();
        let ctx = curve.ctx().clone();
        let rep = verify_theorems(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        let c3 = rep.clause("normality-galois-cover").unwrap();
        assert_eq!(c3.witnesses["normal_G1"], "true");
        assert_eq!(c3.witnesses["is_galois_cover_h2"], "true");
    }

    #[test]
    fn test_verify_theorems_hermitian() {
        let curve = hermitian_f4();
        let ctx = curve.ctx().clone();
        let rep = verify_theorems(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        assert!(rep.all_hold());
    }

    #[test]
    fn test_verify_theorems_s3_conic_nonnormal_case() {
        let curve = s3_conic_f5();
        let ctx = curve.ctx().clone();
        let rep = verify_theorems(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        // the interesting direction: G1 not normal, h2 not a Galois cover
        let c3 = rep.clause("normality-galois-cover").unwrap();
        assert_eq!(c3.witnesses["normal_G1"], "false");
        assert_eq!(c3.witnesses["is_galois_cover_h2"], "false");
        // no order product, S is not a scalar multiple
        let c2 = rep.clause("order-product").unwrap();
        assert!(c2.holds);
        assert_eq!(c2.witnesses["order_product"], "false");
        assert_eq!(c2.witnesses["s_is_scalar_multiple"], "false");
    }

    #[test]
    fn test_verify_theorems_inapplicable() {
        let ctx = fq(5, 1);
        let f = &(&(&mono(&ctx, 1, 4, 0) + &mono(&ctx, 1, 0, 4)) + &mono(&ctx, 1, 3, 0))
            + &(&mono(&ctx, 2, 1, 2) + &mono(&ctx, 1, 0, 0));
        let curve = PlaneCurve::from_affine(&f).unwrap();
        let rep = verify_theorems(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        assert!(!rep.applicable);
        assert!(rep.reason.unwrap().contains("not a Galois point"));
    }

    #[test]
    fn test_fermat_matches_canonical_pair_up_to_shared_moebius() {
        // the decomposition agrees with the pair (x^4, -y^4 - 1) after one
        // shared Moebius change of the invariant
        let curve = fermat_f9();
        let ctx = curve.ctx().clone();
        let dec = decompose(
            &curve,
            &ProjPlanePoint::e1(&ctx),
            &ProjPlanePoint::e2(&ctx),
        )
        .unwrap();
        let c1 = RatFunc::from_poly(UniPoly::monomial(ctx.one(), 4, Var::X));
        let c2 = RatFunc::from_poly(UniPoly::from_ints(&ctx, &[-1, 0, 0, 0, -1], Var::Y));
        let found = pgl2_elements(&ctx).into_iter().any(|mu| {
            postcompose(&mu, &c1) == dec.h1 && postcompose(&mu, &c2) == dec.h2
        });
        assert!(found, "no shared Moebius map links the pairs");
    }
}

//! Plane curves, central collineations, Galois-point detection, and the
//! closure of two stabilizer groups.
//!
//! Projection from a point P maps a curve point to the line joining it to P.
//! The collineations commuting with that projection are exactly the central
//! collineations with center P: maps fixing P and every line through P. A
//! point is reported as a (linearly realized) Galois point when the group of
//! curve-stabilizing central collineations is as large as the projection
//! degree.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::bivar::{BiPoly, Chart, HomPoly};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::mat3::{self, Mat3};

// ---- projective points ----

/// A point of P^2(F_q), canonically scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPlanePoint {
    coords: [FieldElem; 3],
}

impl ProjPlanePoint {
    pub fn new(coords: [FieldElem; 3]) -> Result<ProjPlanePoint> {
        let lead = coords.iter().find(|c| !c.is_zero()).cloned();
        let Some(lead) = lead else {
            return Err(Error::InvalidPoint("(0:0:0) is not a projective point".into()));
        };
        let inv = lead.inv()?;
        let coords = [&coords[0] * &inv, &coords[1] * &inv, &coords[2] * &inv];
        Ok(ProjPlanePoint { coords })
    }

    pub fn from_ints(ctx: &FieldCtx, coords: [i64; 3]) -> Result<ProjPlanePoint> {
        ProjPlanePoint::new([
            ctx.from_i64(coords[0]),
            ctx.from_i64(coords[1]),
            ctx.from_i64(coords[2]),
        ])
    }

    /// (1:0:0)
    pub fn e1(ctx: &FieldCtx) -> ProjPlanePoint {
        ProjPlanePoint::from_ints(ctx, [1, 0, 0]).expect("valid")
    }

    /// (0:1:0)
    pub fn e2(ctx: &FieldCtx) -> ProjPlanePoint {
        ProjPlanePoint::from_ints(ctx, [0, 1, 0]).expect("valid")
    }

    pub fn coords(&self) -> &[FieldElem; 3] {
        &self.coords
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.coords[0].ctx()
    }
}

impl fmt::Display for ProjPlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- collineations ----

/// An element of PGL(3, q): an invertible 3x3 matrix mod scalar, canonically
/// scaled so the first nonzero entry in row-major order is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Collineation {
    m: [[FieldElem; 3]; 3],
}

impl Collineation {
    pub fn new(m: Mat3) -> Result<Collineation> {
        if mat3::det(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut c = Collineation { m };
        c.canonicalize();
        Ok(c)
    }

    pub fn from_ints(ctx: &FieldCtx, rows: [[i64; 3]; 3]) -> Result<Collineation> {
        let m: Mat3 = [
            [
                ctx.from_i64(rows[0][0]),
                ctx.from_i64(rows[0][1]),
                ctx.from_i64(rows[0][2]),
            ],
            [
                ctx.from_i64(rows[1][0]),
                ctx.from_i64(rows[1][1]),
                ctx.from_i64(rows[1][2]),
            ],
            [
                ctx.from_i64(rows[2][0]),
                ctx.from_i64(rows[2][1]),
                ctx.from_i64(rows[2][2]),
            ],
        ];
        Collineation::new(m)
    }

    fn canonicalize(&mut self) {
        let lead = self
            .m
            .iter()
            .flatten()
            .find(|e| !e.is_zero())
            .expect("invertible matrix is nonzero")
            .clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            for row in self.m.iter_mut() {
                for e in row.iter_mut() {
                    *e = &*e * &inv;
                }
            }
        }
    }

    pub fn identity(ctx: &FieldCtx) -> Collineation {
        Collineation {
            m: mat3::identity(ctx),
        }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.m[0][0].ctx()
    }

    pub fn is_identity(&self) -> bool {
        self == &Collineation::identity(self.ctx())
    }

    pub fn compose(&self, rhs: &Collineation) -> Collineation {
        let mut c = Collineation {
            m: mat3::mul(&self.m, &rhs.m),
        };
        c.canonicalize();
        c
    }

    pub fn inverse(&self) -> Collineation {
        let mut c = Collineation {
            m: mat3::inverse(&self.m).expect("collineation is invertible"),
        };
        c.canonicalize();
        c
    }

    pub fn apply(&self, p: &ProjPlanePoint) -> ProjPlanePoint {
        ProjPlanePoint::new(mat3::apply(&self.m, p.coords())).expect("invertible image")
    }
}

impl fmt::Display for Collineation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("{},{},{}", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

impl fmt::Debug for Collineation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite set of collineations closed under composition and inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollineationGroup {
    elements: BTreeSet<Collineation>,
}

impl CollineationGroup {
    pub fn trivial(ctx: &FieldCtx) -> CollineationGroup {
        let mut elements = BTreeSet::new();
        elements.insert(Collineation::identity(ctx));
        CollineationGroup { elements }
    }

    pub fn from_elements(elements: BTreeSet<Collineation>) -> CollineationGroup {
        let g = CollineationGroup { elements };
        debug_assert!(g.is_group());
        g
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, c: &Collineation) -> bool {
        self.elements.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Collineation> {
        self.elements.iter()
    }

    pub fn is_subgroup_of(&self, other: &CollineationGroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn is_group(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return false;
        };
        if !self.elements.contains(&Collineation::identity(first.ctx())) {
            return false;
        }
        for a in &self.elements {
            if !self.elements.contains(&a.inverse()) {
                return false;
            }
            for b in &self.elements {
                if !self.elements.contains(&a.compose(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Every g h g^-1 with h in self stays in self, for g ranging over big.
    pub fn is_normal_in(&self, big: &CollineationGroup) -> bool {
        for g in big.iter() {
            let ginv = g.inverse();
            for h in self.iter() {
                if !self.contains(&g.compose(h).compose(&ginv)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Breadth-first product closure of G1 and G2. Errors when the closure does
/// not complete within `cap` elements.
pub fn group_closure(
    g1: &CollineationGroup,
    g2: &CollineationGroup,
    cap: usize,
) -> Result<CollineationGroup> {
    if cap < g1.order() * g2.order() {
        return Err(Error::Domain(format!(
            "closure cap {cap} below |G1|*|G2| = {}",
            g1.order() * g2.order()
        )));
    }
    let gens: Vec<Collineation> = g1.iter().chain(g2.iter()).cloned().collect();
    let mut elements: BTreeSet<Collineation> = gens.iter().cloned().collect();
    let mut queue: Vec<Collineation> = elements.iter().cloned().collect();
    while let Some(e) = queue.pop() {
        for g in &gens {
            let prod = e.compose(g);
            if elements.insert(prod.clone()) {
                if elements.len() > cap {
                    return Err(Error::CapExceeded(
                        "closure not finite within cap".into(),
                    ));
                }
                queue.push(prod);
            }
        }
    }
    Ok(CollineationGroup { elements })
}

// ---- plane curves ----

/// A plane curve of degree d > 1 with its defining homogeneous polynomial.
#[derive(Clone)]
pub struct PlaneCurve {
    hom: HomPoly,
    affine: BiPoly,
    /// Some(true) only after is_absolutely_irreducible returned Irreducible.
    pub verified_irreducible: Option<bool>,
}

impl PlaneCurve {
    pub fn new(hom: HomPoly) -> Result<PlaneCurve> {
        if hom.degree() < 2 {
            return Err(Error::Domain(format!(
                "curve degree must exceed 1, got {}",
                hom.degree()
            )));
        }
        let affine = hom.dehomogenize(Chart::Z);
        Ok(PlaneCurve {
            hom,
            affine,
            verified_irreducible: None,
        })
    }

    /// Build from an affine polynomial, homogenized at its total degree.
    pub fn from_affine(f: &BiPoly) -> Result<PlaneCurve> {
        PlaneCurve::new(f.homogenize(f.total_degree())?)
    }

    pub fn hom(&self) -> &HomPoly {
        &self.hom
    }

    /// The chart Z = 1 dehomogenization f_0(x, y).
    pub fn affine(&self) -> &BiPoly {
        &self.affine
    }

    pub fn degree(&self) -> usize {
        self.hom.degree()
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.hom.ctx()
    }

    /// Record an absolute-irreducibility verdict on the curve.
    pub fn verify_irreducibility(&mut self, cap: &crate::bivar::SearchCap) -> Result<crate::bivar::Irreducibility> {
        let v = curve_irreducibility(&self.hom, cap)?;
        self.verified_irreducible = match &v {
            crate::bivar::Irreducibility::Irreducible => Some(true),
            crate::bivar::Irreducibility::Reducible { .. } => Some(false),
            crate::bivar::Irreducibility::Inconclusive { .. } => None,
        };
        Ok(v)
    }

    /// The transformed curve F o M.
    pub fn transform(&self, m: &Collineation) -> Result<PlaneCurve> {
        let mut c = PlaneCurve::new(self.hom.substitute_linear(m.matrix())?)?;
        c.verified_irreducible = self.verified_irreducible;
        Ok(c)
    }

    /// The scalar c with F o M = c F, when M stabilizes the curve.
    pub fn stabilizing_scalar(&self, m: &Collineation) -> Option<FieldElem> {
        let sub = self.hom.substitute_linear(m.matrix()).ok()?;
        let (key, lead) = self.hom.leading_term();
        let cand = sub.coeff(key);
        if cand.is_zero() {
            return None;
        }
        let lambda = cand.div(&lead).expect("leading term nonzero");
        let scaled = self.hom.scale(&lambda).expect("nonzero scalar");
        if scaled == sub {
            Some(lambda)
        } else {
            None
        }
    }

    /// Multiplicity of the curve at a point: 0 iff the point is off the
    /// curve, 1 iff it is a smooth point.
    pub fn multiplicity_at(&self, p: &ProjPlanePoint) -> usize {
        // move p to (0:0:1) and read the lowest total degree at the origin
        let t = basis_with_point(p, 2);
        let g = self
            .hom
            .substitute_linear(&t)
            .expect("basis matrix is invertible")
            .dehomogenize(Chart::Z);
        g.terms().map(|(&(i, j), _)| i + j).min().unwrap_or(usize::MAX)
    }

    /// Degree of the projection from p: d - m_p(C). Errors when p is a
    /// singular point of the curve.
    pub fn projection_degree(&self, p: &ProjPlanePoint) -> Result<usize> {
        let m = self.multiplicity_at(p);
        if m > 1 {
            return Err(Error::SingularPoint(format!("{p} has multiplicity {m}")));
        }
        Ok(self.degree() - m)
    }

    /// The group of curve-stabilizing central collineations with center p,
    /// found by scanning all q^2(q-1) central shapes after moving p to (1:0:0).
    pub fn central_collineations(&self, p: &ProjPlanePoint) -> Result<CollineationGroup> {
        let ctx = self.ctx();
        assert!(p.ctx().same_field(ctx), "point from a different field");
        let t = basis_with_point(p, 0);
        let t_coll = Collineation::new(t)?;
        let g = self.transform(&t_coll)?;
        let t_inv = t_coll.inverse();

        let mut elements = BTreeSet::new();
        for a in ctx.enumerate() {
            if a.is_zero() {
                continue;
            }
            for b in ctx.enumerate() {
                for c in ctx.enumerate() {
                    let m0 = Collineation::new([
                        [a.clone(), b.clone(), c.clone()],
                        [ctx.zero(), ctx.one(), ctx.zero()],
                        [ctx.zero(), ctx.zero(), ctx.one()],
                    ])?;
                    if g.stabilizing_scalar(&m0).is_some() {
                        elements.insert(t_coll.compose(&m0).compose(&t_inv));
                    }
                }
            }
        }
        Ok(CollineationGroup::from_elements(elements))
    }

    /// Galois-point report: the point is Galois (as realized by collineations
    /// over F_q) when the central stabilizer order equals the projection degree.
    pub fn is_galois_point(&self, p: &ProjPlanePoint) -> Result<GaloisPointReport> {
        let multiplicity = self.multiplicity_at(p);
        let deg_proj = self.projection_degree(p)?;
        let gamma = self.central_collineations(p)?;
        Ok(GaloisPointReport {
            point: p.to_string(),
            multiplicity,
            gamma_order: gamma.order(),
            deg_proj,
            galois_linear: gamma.order() == deg_proj,
        })
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hom)
    }
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Absolute irreducibility of the projective curve, decided on the Z chart.
fn curve_irreducibility(
    hom: &HomPoly,
    cap: &crate::bivar::SearchCap,
) -> Result<crate::bivar::Irreducibility> {
    // a Z factor shows up as every monomial having positive Z exponent
    if hom.terms().all(|(&(_, _, k), _)| k > 0) {
        return Ok(crate::bivar::Irreducibility::Reducible {
            factor: "Z".into(),
            ext_degree: 1,
        });
    }
    let f = hom.dehomogenize(Chart::Z);
    if f.total_degree() != hom.degree() {
        // degree drops only when Z divides, handled above
        return Err(Error::Domain("unexpected degree drop on the Z chart".into()));
    }
    crate::bivar::is_absolutely_irreducible(&f, cap)
}

/// Deterministic invertible matrix with `p` as its column `pos`, completed by
/// the first standard basis vectors that keep it invertible.
fn basis_with_point(p: &ProjPlanePoint, pos: usize) -> Mat3 {
    let ctx = p.ctx();
    let std_vecs: Vec<[FieldElem; 3]> = (0..3)
        .map(|i| {
            let mut v = [ctx.zero(), ctx.zero(), ctx.zero()];
            v[i] = ctx.one();
            v
        })
        .collect();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let mut cols: Vec<[FieldElem; 3]> = Vec::with_capacity(3);
            let mut others = vec![std_vecs[i].clone(), std_vecs[j].clone()];
            for slot in 0..3 {
                if slot == pos {
                    cols.push(p.coords().clone());
                } else {
                    cols.push(others.remove(0));
                }
            }
            let m: Mat3 = [
                [cols[0][0].clone(), cols[1][0].clone(), cols[2][0].clone()],
                [cols[0][1].clone(), cols[1][1].clone(), cols[2][1].clone()],
                [cols[0][2].clone(), cols[1][2].clone(), cols[2][2].clone()],
            ];
            if !mat3::det(&m).is_zero() {
                return m;
            }
        }
    }
    unreachable!("a nonzero vector extends to a basis")
}

// ---- reports ----

#[derive(Debug, Clone, Serialize)]
pub struct GaloisPointReport {
    pub point: String,
    pub multiplicity: usize,
    pub gamma_order: usize,
    pub deg_proj: usize,
    pub galois_linear: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// |G| = |G1| * |G2| with both factors normal.
    DirectOrder,
    /// |G| = |G1| * |G2| with exactly G1 normal.
    Semidirect1Normal,
    /// |G| = |G1| * |G2| with exactly G2 normal.
    Semidirect2Normal,
    /// No order product, or order product with neither factor normal.
    Neither,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub order1: usize,
    pub order2: usize,
    pub order: usize,
    pub normal1: bool,
    pub normal2: bool,
    pub order_product: bool,
    pub classification: Classification,
}

/// Normality and order structure of G = <G1, G2>.
pub fn structure_report(
    g: &CollineationGroup,
    g1: &CollineationGroup,
    g2: &CollineationGroup,
) -> Result<StructureReport> {
    if !g1.is_subgroup_of(g) || !g2.is_subgroup_of(g) {
        return Err(Error::Domain("G1 and G2 must be contained in G".into()));
    }
    let normal1 = g1.is_normal_in(g);
    let normal2 = g2.is_normal_in(g);
    let order_product = g.order() == g1.order() * g2.order();
    let classification = match (order_product, normal1, normal2) {
        (true, true, true) => Classification::DirectOrder,
        (true, true, false) => Classification::Semidirect1Normal,
        (true, false, true) => Classification::Semidirect2Normal,
        _ => Classification::Neither,
    };
    Ok(StructureReport {
        order1: g1.order(),
        order2: g2.order(),
        order: g.order(),
        normal1,
        normal2,
        order_product,
        classification,
    })
}

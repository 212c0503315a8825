//! The group PGL(2, q) of fractional linear maps of P^1, automorphism
//! groups of rational functions, the Galois-cover test, and the value-set
//! bound for Galois covers.
//!
//! A degree-d rational function h generates an index-d subfield F_q(h) of
//! F_q(x). The extension is Galois exactly when h admits d distinct Moebius
//! self-symmetries, i.e. |{s in PGL(2,q) : h o s = h}| = deg h. When it is,
//! the size of the image of P^1(F_q) under h is pinned to within one of
//! ceil((q+1)/deg h).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{ProjPoint, RatFunc, UniPoly, ValueMode, Var};

// ---- MoebiusMap ----

/// x -> (ax + b)/(cx + d) with ad - bc != 0, canonically scaled so the first
/// nonzero entry of (a, b, c, d) is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoebiusMap {
    a: FieldElem,
    b: FieldElem,
    c: FieldElem,
    d: FieldElem,
}

impl MoebiusMap {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<MoebiusMap> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut m = MoebiusMap { a, b, c, d };
        m.canonicalize();
        Ok(m)
    }

    fn canonicalize(&mut self) {
        let lead = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("nonsingular map has a nonzero entry")
            .clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            self.a = &self.a * &inv;
            self.b = &self.b * &inv;
            self.c = &self.c * &inv;
            self.d = &self.d * &inv;
        }
    }

    pub fn identity(ctx: &FieldCtx) -> MoebiusMap {
        MoebiusMap {
            a: ctx.one(),
            b: ctx.zero(),
            c: ctx.zero(),
            d: ctx.one(),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.a.ctx()
    }

    pub fn entries(&self) -> (&FieldElem, &FieldElem, &FieldElem, &FieldElem) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Composition (self after rhs): matrix product.
    pub fn compose(&self, rhs: &MoebiusMap) -> MoebiusMap {
        let a = &(&self.a * &rhs.a) + &(&self.b * &rhs.c);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.d);
        let c = &(&self.c * &rhs.a) + &(&self.d * &rhs.c);
        let d = &(&self.c * &rhs.b) + &(&self.d * &rhs.d);
        let mut m = MoebiusMap { a, b, c, d };
        m.canonicalize();
        m
    }

    pub fn inverse(&self) -> MoebiusMap {
        let mut m = MoebiusMap {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        };
        m.canonicalize();
        m
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Affine(x) => {
                let den = &(&self.c * x) + &self.d;
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    let num = &(&self.a * x) + &self.b;
                    ProjPoint::Affine(num.div(&den).expect("nonzero denominator"))
                }
            }
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Affine(self.a.div(&self.c).expect("nonzero c"))
                }
            }
        }
    }

    /// The map as a rational function of the given variable.
    pub fn as_ratfunc(&self, var: Var) -> RatFunc {
        let ctx = self.ctx();
        let num = UniPoly::from_coeffs(ctx, vec![self.b.clone(), self.a.clone()], var);
        let den = UniPoly::from_coeffs(ctx, vec![self.d.clone(), self.c.clone()], var);
        RatFunc::new(num, den).expect("nonsingular map")
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All q^3 - q canonical elements of PGL(2, q), in a fixed deterministic
/// order: the a = 1 family first (lexicographic in (b, c, d) enumeration
/// indices), then the a = 0, b = 1 family.
pub fn pgl2_elements(ctx: &FieldCtx) -> Vec<MoebiusMap> {
    let mut out = Vec::with_capacity((ctx.q().pow(3) - ctx.q()) as usize);
    let one = ctx.one();
    for b in ctx.enumerate() {
        for c in ctx.enumerate() {
            for d in ctx.enumerate() {
                // det = d - bc
                if (&d - &(&b * &c)).is_zero() {
                    continue;
                }
                out.push(MoebiusMap {
                    a: one.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    d,
                });
            }
        }
    }
    for c in ctx.enumerate() {
        if c.is_zero() {
            continue; // det = -c must be nonzero
        }
        for d in ctx.enumerate() {
            out.push(MoebiusMap {
                a: ctx.zero(),
                b: one.clone(),
                c: c.clone(),
                d,
            });
        }
    }
    out
}

// ---- MoebiusGroup ----

/// A finite set of Moebius maps closed under composition and inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusGroup {
    elements: BTreeSet<MoebiusMap>,
}

impl MoebiusGroup {
    pub fn trivial(ctx: &FieldCtx) -> MoebiusGroup {
        let mut elements = BTreeSet::new();
        elements.insert(MoebiusMap::identity(ctx));
        MoebiusGroup { elements }
    }

    pub fn from_elements(elements: BTreeSet<MoebiusMap>) -> MoebiusGroup {
        let g = MoebiusGroup { elements };
        debug_assert!(g.is_group());
        g
    }

    /// Closure of a generating set under composition.
    pub fn generate(ctx: &FieldCtx, gens: &[MoebiusMap]) -> MoebiusGroup {
        let mut elements = BTreeSet::new();
        elements.insert(MoebiusMap::identity(ctx));
        let mut queue: Vec<MoebiusMap> = gens.to_vec();
        for g in &queue {
            elements.insert(g.clone());
        }
        while let Some(e) = queue.pop() {
            for g in gens {
                let prod = e.compose(g);
                if elements.insert(prod.clone()) {
                    queue.push(prod);
                }
            }
        }
        MoebiusGroup { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &MoebiusMap) -> bool {
        self.elements.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MoebiusMap> {
        self.elements.iter()
    }

    pub fn is_subgroup_of(&self, other: &MoebiusGroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Structural group axioms: identity, closure, inverses.
    pub fn is_group(&self) -> bool {
        let Some(first) = self.elements.first() else {
            return false;
        };
        let id = MoebiusMap::identity(first.ctx());
        if !self.elements.contains(&id) {
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

    /// Orbit partition of P^1 under the group action.
    pub fn orbits(&self, ctx: &FieldCtx) -> Vec<Vec<ProjPoint>> {
        let mut remaining: BTreeSet<ProjPoint> = ProjPoint::all(ctx).into_iter().collect();
        let mut orbits = Vec::new();
        while let Some(seed) = remaining.iter().next().cloned() {
            let mut orbit = BTreeSet::new();
            for g in &self.elements {
                orbit.insert(g.apply(&seed));
            }
            for p in &orbit {
                remaining.remove(p);
            }
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }
}

// ---- composition with rational functions ----

/// h o s for a Moebius map s: substitutes s into h via homogeneous expansion.
pub fn precompose(h: &RatFunc, s: &MoebiusMap) -> RatFunc {
    let ctx = h.ctx();
    let var = h.var();
    let deg = h.degree();
    let lin_num = UniPoly::from_coeffs(ctx, vec![s.b.clone(), s.a.clone()], var); // ax + b
    let lin_den = UniPoly::from_coeffs(ctx, vec![s.d.clone(), s.c.clone()], var); // cx + d

    // powers 0..=deg of both linear forms
    let mut pow_num = Vec::with_capacity(deg + 1);
    let mut pow_den = Vec::with_capacity(deg + 1);
    let mut acc_n = UniPoly::one(ctx, var);
    let mut acc_d = UniPoly::one(ctx, var);
    for _ in 0..=deg {
        pow_num.push(acc_n.clone());
        pow_den.push(acc_d.clone());
        acc_n = &acc_n * &lin_num;
        acc_d = &acc_d * &lin_den;
    }

    let expand = |p: &UniPoly| -> UniPoly {
        let mut out = UniPoly::zero(ctx, var);
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &pow_num[i] * &pow_den[deg - i];
            out = &out + &term.scale(c);
        }
        out
    };

    RatFunc::new(expand(h.num()), expand(h.den())).expect("moebius preserves nonzero denominator")
}

/// mu o h: applies a Moebius map on the value side.
pub fn postcompose(mu: &MoebiusMap, h: &RatFunc) -> RatFunc {
    let num = &(h.num().scale(&mu.a)) + &(h.den().scale(&mu.b));
    let den = &(h.num().scale(&mu.c)) + &(h.den().scale(&mu.d));
    RatFunc::new(num, den).expect("moebius map is invertible")
}

// ---- automorphism groups of rational functions ----

/// The automorphism search result, labeled with the constant-field extension
/// degree m it was computed over.
#[derive(Debug, Clone)]
pub struct AutGroup {
    /// Extension degree used for the search.
    pub m: usize,
    /// The field F_{q^m} the maps are defined over.
    pub field: FieldCtx,
    /// h mapped into that field.
    pub h: RatFunc,
    pub group: MoebiusGroup,
}

/// Lift h to F_{q^m} (identity when m = 1).
fn extend_ratfunc(h: &RatFunc, m: usize) -> Result<(FieldCtx, RatFunc)> {
    let ctx = h.ctx();
    if m == 1 {
        return Ok((ctx.clone(), h.clone()));
    }
    let ext = FieldCtx::new(ctx.p(), ctx.n() * m, None)?;
    let emb = ctx.embed(&ext)?;
    let lift = |p: &UniPoly| -> UniPoly {
        UniPoly::from_coeffs(
            &ext,
            p.coeffs().iter().map(|c| emb.map(c)).collect(),
            p.var(),
        )
    };
    let lifted = RatFunc::new(lift(h.num()), lift(h.den()))?;
    Ok((ext, lifted))
}

/// The group { s in PGL(2, q^m) : h o s = h }.
///
/// Candidate maps are first filtered by pointwise agreement on P^1(F_{q^m})
/// and then verified by exact composition, so the result is exact even when
/// q^m + 1 points cannot separate degree-(deg h) functions.
pub fn aut_group(h: &RatFunc, m: usize) -> Result<AutGroup> {
    if m == 0 {
        return Err(Error::Domain("extension degree m must be >= 1".into()));
    }
    let (field, h_ext) = extend_ratfunc(h, m)?;
    let candidates = pgl2_elements(&field);
    let group = aut_group_over(&h_ext, &field, &candidates)?;
    Ok(AutGroup {
        m,
        field,
        h: h_ext,
        group,
    })
}

/// The automorphism search against a caller-supplied candidate list, which
/// bulk surveys precompute once per field.
pub fn aut_group_over(
    h: &RatFunc,
    field: &FieldCtx,
    candidates: &[MoebiusMap],
) -> Result<MoebiusGroup> {
    if h.is_constant() {
        return Err(Error::ConstantFunction(h.to_string()));
    }
    let q = field.q();
    let pts = ProjPoint::all(field);
    let idx = |p: &ProjPoint| -> u64 {
        match p {
            ProjPoint::Affine(a) => a.index(),
            ProjPoint::Infinity => q,
        }
    };
    // table[i] = index of h(point i); affine points by enumeration order,
    // infinity last
    let table: Vec<u64> = pts.iter().map(|p| idx(&h.eval_proj(p))).collect();

    let mut elements = BTreeSet::new();
    if let Some(t) = field.small_tables() {
        // pure index arithmetic in the hot loop
        let apply = |a: u64, b: u64, c: u64, d: u64, p: u64| -> u64 {
            if p == q {
                if c == 0 {
                    q
                } else {
                    t.mul(a, t.inv(c))
                }
            } else {
                let den = t.add(t.mul(c, p), d);
                if den == 0 {
                    q
                } else {
                    t.mul(t.add(t.mul(a, p), b), t.inv(den))
                }
            }
        };
        for s in candidates {
            let (a, b, c, d) = s.entries();
            let (a, b, c, d) = (a.index(), b.index(), c.index(), d.index());
            let mut agrees = true;
            for (i, &hi) in table.iter().enumerate() {
                if table[apply(a, b, c, d, i as u64) as usize] != hi {
                    agrees = false;
                    break;
                }
            }
            if agrees && &precompose(h, s) == h {
                elements.insert(s.clone());
            }
        }
    } else {
        for s in candidates {
            let mut agrees = true;
            for (i, p) in pts.iter().enumerate() {
                if table[idx(&s.apply(p)) as usize] != table[i] {
                    agrees = false;
                    break;
                }
            }
            if agrees && &precompose(h, s) == h {
                elements.insert(s.clone());
            }
        }
    }
    Ok(MoebiusGroup::from_elements(elements))
}

/// True when F_{q^m}(x) / F_{q^m}(h) is Galois: the automorphism count
/// reaches the extension degree deg h.
pub fn is_galois_cover(h: &RatFunc, m: usize) -> Result<bool> {
    Ok(aut_group(h, m)?.group.order() == h.degree())
}

// ---- invariants of finite subgroups ----

/// A generator of the fixed field of G inside F_q(x): h with h o s = h for
/// all s in G and deg h = |G|. Found by a symmetric-function ladder over the
/// orbit { s(x) : s in G }: power sums first, then elementary symmetric
/// functions; the first candidate of degree |G| certifies generation.
pub fn invariant_of_subgroup(group: &MoebiusGroup, ctx: &FieldCtx) -> Result<RatFunc> {
    let order = group.order();
    if order == 0 {
        return Err(Error::Domain("empty group".into()));
    }
    let orbit: Vec<RatFunc> = group.iter().map(|s| s.as_ratfunc(Var::X)).collect();
    let mut rejected = Vec::new();

    let accept = |cand: &RatFunc| cand.degree() == order && !cand.is_constant();
    let normalize = |cand: &RatFunc| -> RatFunc {
        let lc = cand.num().leading_coeff().expect("nonconstant");
        cand.scale(&lc.inv().expect("nonzero leading coefficient"))
    };

    // power sums p_k = sum of s(x)^k
    let mut powers: Vec<RatFunc> = orbit.iter().map(|_| RatFunc::one(ctx, Var::X)).collect();
    for k in 1..=order {
        for (pw, base) in powers.iter_mut().zip(&orbit) {
            *pw = &*pw * base;
        }
        let mut sum = RatFunc::zero(ctx, Var::X);
        for pw in &powers {
            sum = &sum + pw;
        }
        if accept(&sum) {
            let inv = normalize(&sum);
            check_invariance(group, &inv)?;
            return Ok(inv);
        }
        rejected.push((format!("p_{k}"), sum.degree()));
    }

    // elementary symmetric functions via prod (T - s(x))
    let mut elem: Vec<RatFunc> = vec![RatFunc::one(ctx, Var::X)];
    for r in &orbit {
        // multiply the T-polynomial by (T - r)
        let mut next = vec![RatFunc::zero(ctx, Var::X); elem.len() + 1];
        for (i, c) in elem.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * r);
        }
        elem = next;
    }
    // elem[order - k] = (-1)^k e_k
    for k in 1..=order {
        let cand = elem[order - k].clone();
        if accept(&cand) {
            let inv = normalize(&cand);
            check_invariance(group, &inv)?;
            return Ok(inv);
        }
        rejected.push((format!("e_{k}"), cand.degree()));
    }
    Err(Error::LadderExhausted(rejected))
}

fn check_invariance(group: &MoebiusGroup, h: &RatFunc) -> Result<()> {
    for s in group.iter() {
        if &precompose(h, s) != h {
            return Err(Error::Domain(format!(
                "ladder produced a non-invariant candidate {h} (violated by {s})"
            )));
        }
    }
    Ok(())
}

// ---- value-set bound ----

/// Quantities of the value-set bound for Galois covers of P^1.
#[derive(Debug, Clone, Serialize)]
pub struct FactBoundReport {
    pub q: u64,
    pub h: String,
    pub deg: usize,
    pub galois: bool,
    pub v_size: usize,
    pub lower: usize,
    pub slack: i64,
    /// For Galois h: v_size is lower or lower + 1. Vacuously true otherwise.
    pub ok: bool,
}

/// Checks #V_h against ceil((q+1)/deg h) when the cover is Galois over F_q.
pub fn verify_fact_bound(h: &RatFunc) -> Result<FactBoundReport> {
    if h.is_constant() {
        return Err(Error::ConstantFunction(h.to_string()));
    }
    let q = h.ctx().q();
    let deg = h.degree();
    let galois = is_galois_cover(h, 1)?;
    let v_size = h.value_set(ValueMode::Projective)?.len();
    let lower = (q as usize + 1).div_ceil(deg);
    let ok = !galois || v_size == lower || v_size == lower + 1;
    Ok(FactBoundReport {
        q,
        h: h.to_string(),
        deg,
        galois,
        v_size,
        lower,
        slack: v_size as i64 - lower as i64,
        ok,
    })
}

/// Orbits of aut_group(h, m) on P^1(F_{q^m}) that are shorter than the group
/// order. Requires the cover to be Galois over F_{q^m}.
pub fn short_orbits(h: &RatFunc, m: usize) -> Result<Vec<Vec<ProjPoint>>> {
    let aut = aut_group(h, m)?;
    if aut.group.order() != h.degree() {
        return Err(Error::Domain(format!(
            "short_orbits requires a Galois cover over F_q^{m}; aut order {} != deg {}",
            aut.group.order(),
            h.degree()
        )));
    }
    let order = aut.group.order();
    Ok(aut
        .group
        .orbits(&aut.field)
        .into_iter()
        .filter(|o| o.len() < order)
        .collect())
}

/// Deduplicated orbit sizes with multiplicities, handy for reports.
pub fn orbit_size_histogram(orbits: &[Vec<ProjPoint>]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for o in orbits {
        *hist.entry(o.len()).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldCtx {
        match q {
            2 => FieldCtx::new(2, 1, None).unwrap(),
            3 => FieldCtx::new(3, 1, None).unwrap(),
            4 => FieldCtx::new(2, 2, None).unwrap(),
            5 => FieldCtx::new(5, 1, None).unwrap(),
            7 => FieldCtx::new(7, 1, None).unwrap(),
            9 => FieldCtx::new(3, 2, None).unwrap(),
            _ => panic!("unsupported"),
        }
    }

    fn xpow(ctx: &FieldCtx, k: usize) -> RatFunc {
        RatFunc::from_poly(UniPoly::monomial(ctx.one(), k, Var::X))
    }

    fn artin(ctx: &FieldCtx) -> RatFunc {
        // x^p - x
        let p = ctx.p() as usize;
        RatFunc::from_poly(
            &UniPoly::monomial(ctx.one(), p, Var::X) - &UniPoly::identity(ctx, Var::X),
        )
    }

    #[test]
    fn test_pgl2_counts() {
        assert_eq!(pgl2_elements(&f(2)).len(), 6);
        assert_eq!(pgl2_elements(&f(3)).len(), 24);
        let ctx = f(4);
        let elems = pgl2_elements(&ctx);
        assert_eq!(elems.len(), 60);
        assert!(elems.contains(&MoebiusMap::identity(&ctx)));
        // canonical forms are pairwise distinct
        let set: BTreeSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), elems.len());
    }

    #[test]
    fn test_precompose_identity_and_negation() {
        let ctx = f(5);
        let h = xpow(&ctx, 2);
        assert_eq!(precompose(&h, &MoebiusMap::identity(&ctx)), h);

        // x -> -x leaves x^2 alone
        let neg = MoebiusMap::new(ctx.from_int(4), ctx.zero(), ctx.zero(), ctx.one()).unwrap();
        assert_eq!(precompose(&h, &neg), h);

        // x composed with 1/x is 1/x
        let invmap = MoebiusMap::new(ctx.zero(), ctx.one(), ctx.one(), ctx.zero()).unwrap();
        let x = RatFunc::identity(&ctx, Var::X);
        assert_eq!(precompose(&x, &invmap), invmap.as_ratfunc(Var::X));
    }

    #[test]
    fn test_aut_group_x2_over_f5() {
        let ctx = f(5);
        let aut = aut_group(&xpow(&ctx, 2), 1).unwrap();
        assert_eq!(aut.group.order(), 2);
        let neg = MoebiusMap::new(ctx.from_int(4), ctx.zero(), ctx.zero(), ctx.one()).unwrap();
        assert!(aut.group.contains(&neg));
        assert!(aut.group.contains(&MoebiusMap::identity(&ctx)));
    }

    #[test]
    fn test_aut_group_x3_over_f7() {
        let ctx = f(7);
        let aut = aut_group(&xpow(&ctx, 3), 1).unwrap();
        assert_eq!(aut.group.order(), 3);
        for a in [1u64, 2, 4] {
            let s = MoebiusMap::new(ctx.from_int(a), ctx.zero(), ctx.zero(), ctx.one()).unwrap();
            assert!(aut.group.contains(&s));
        }
    }

    #[test]
    fn test_aut_group_degree_one() {
        let ctx = f(5);
        let aut = aut_group(&RatFunc::identity(&ctx, Var::X), 1).unwrap();
        assert_eq!(aut.group.order(), 1);
    }

    #[test]
    fn test_is_galois_cover_examples() {
        assert!(is_galois_cover(&xpow(&f(5), 2), 1).unwrap());
        assert!(!is_galois_cover(&xpow(&f(5), 3), 1).unwrap());
        for q in [2u64, 3, 5, 7] {
            assert!(is_galois_cover(&artin(&f(q)), 1).unwrap());
        }
    }

    #[test]
    fn test_aut_order_at_most_degree() {
        let ctx = f(5);
        for h in crate::poly::canonical_ratfuncs(&ctx, 1, 2, Var::X) {
            let aut = aut_group(&h, 1).unwrap();
            assert!(aut.group.order() <= h.degree());
        }
    }

    #[test]
    fn test_invariant_trivial_group() {
        let ctx = f(5);
        let h = invariant_of_subgroup(&MoebiusGroup::trivial(&ctx), &ctx).unwrap();
        assert_eq!(h, RatFunc::identity(&ctx, Var::X));
    }

    #[test]
    fn test_invariant_sign_group() {
        let ctx = f(5);
        let neg = MoebiusMap::new(ctx.from_int(4), ctx.zero(), ctx.zero(), ctx.one()).unwrap();
        let g = MoebiusGroup::generate(&ctx, &[neg]);
        let h = invariant_of_subgroup(&g, &ctx).unwrap();
        assert_eq!(h, xpow(&ctx, 2));
    }

    #[test]
    fn test_invariant_translation_group() {
        for q in [2u64, 3, 5] {
            let ctx = f(q);
            let gens: Vec<MoebiusMap> = ctx
                .enumerate()
                .filter(|c| !c.is_zero())
                .map(|c| MoebiusMap::new(ctx.one(), c, ctx.zero(), ctx.one()).unwrap())
                .collect();
            let g = MoebiusGroup::generate(&ctx, &gens);
            assert_eq!(g.order() as u64, q);
            let h = invariant_of_subgroup(&g, &ctx).unwrap();
            assert_eq!(h, artin(&ctx));
        }
    }

    #[test]
    fn test_verify_fact_bound_examples() {
        let ctx = f(5);
        let r = verify_fact_bound(&xpow(&ctx, 2)).unwrap();
        assert!(r.galois && r.ok);
        assert_eq!((r.v_size, r.lower), (4, 3));

        let r = verify_fact_bound(&RatFunc::identity(&ctx, Var::X)).unwrap();
        assert!(r.ok);
        assert_eq!(r.v_size, 6);

        for q in [2u64, 3, 5, 7] {
            let ctx = f(q);
            let r = verify_fact_bound(&artin(&ctx)).unwrap();
            assert!(r.galois && r.ok);
            assert_eq!(r.v_size, 2);
        }
    }

    #[test]
    fn test_short_orbits_examples() {
        let ctx = f(5);
        let orbits = short_orbits(&xpow(&ctx, 2), 1).unwrap();
        assert_eq!(orbits.len(), 2);
        let mut flat: Vec<ProjPoint> = orbits.into_iter().flatten().collect();
        flat.sort();
        assert_eq!(
            flat,
            vec![ProjPoint::Affine(ctx.zero()), ProjPoint::Infinity]
        );

        // identity map: trivial group, no short orbits
        let orbits = short_orbits(&RatFunc::identity(&ctx, Var::X), 1).unwrap();
        assert!(orbits.is_empty());

        // translations fix only infinity
        let orbits = short_orbits(&artin(&ctx), 1).unwrap();
        assert_eq!(orbits, vec![vec![ProjPoint::Infinity]]);
    }

    #[test]
    fn test_postcompose_invariance_of_aut_group() {
        // aut(mu o h) = aut(h): exhaustive for deg h <= 2 over q <= 5
        for q in [2u64, 3, 4, 5] {
            let ctx = f(q);
            let mus = pgl2_elements(&ctx);
            for h in crate::poly::canonical_ratfuncs(&ctx, 1, 2, Var::X) {
                let base = aut_group_over(&h, &ctx, &mus).unwrap();
                for mu in &mus {
                    let got = aut_group_over(&postcompose(mu, &h), &ctx, &mus).unwrap();
                    assert_eq!(base, got, "h = {h}, mu = {mu}");
                }
            }
        }
    }

    #[test]
    fn test_invariant_roundtrip_over_subgroups() {
        // every subgroup of PGL(2,q) of order <= 6, q in {3, 5}: aut_group of
        // the invariant contains the subgroup and its degree is the order
        for q in [3u64, 5] {
            let ctx = f(q);
            let elems = pgl2_elements(&ctx);
            let mut subgroups: BTreeSet<Vec<MoebiusMap>> = BTreeSet::new();
            for a in &elems {
                for b in &elems {
                    let g = MoebiusGroup::generate(&ctx, &[a.clone(), b.clone()]);
                    if g.order() <= 6 {
                        subgroups.insert(g.iter().cloned().collect());
                    }
                }
            }
            for sg in subgroups {
                let g = MoebiusGroup::from_elements(sg.iter().cloned().collect());
                let h = invariant_of_subgroup(&g, &ctx).unwrap();
                assert_eq!(h.degree(), g.order());
                let aut = aut_group(&h, 1).unwrap();
                assert!(g.is_subgroup_of(&aut.group));
            }
        }
    }

    #[test]
    fn test_value_set_equivariance() {
        // value_set(mu o h) = mu(value_set(h)) pointwise on P^1
        use crate::poly::ValueMode;
        for q in [2u64, 3] {
            let ctx = f(q);
            let mus = pgl2_elements(&ctx);
            for h in crate::poly::canonical_ratfuncs(&ctx, 1, 2, Var::X) {
                let base = h.value_set(ValueMode::Projective).unwrap();
                for mu in &mus {
                    let lhs: BTreeSet<ProjPoint> = postcompose(mu, &h)
                        .value_set(ValueMode::Projective)
                        .unwrap()
                        .iter()
                        .cloned()
                        .collect();
                    let rhs: BTreeSet<ProjPoint> = base.iter().map(|p| mu.apply(p)).collect();
                    assert_eq!(lhs, rhs, "h = {h}, mu = {mu}");
                }
            }
        }
    }

    #[test]
    fn test_short_orbit_count_at_most_two_for_galois_covers() {
        // bounded-scope survey: q in {3, 5} exhaustively at degrees 2..3,
        // F_7 at degree 2 plus all degree-3 polynomials
        let mut surveyed = Vec::new();
        for q in [3u64, 5] {
            let ctx = f(q);
            surveyed.push((ctx.clone(), crate::poly::canonical_ratfuncs(&ctx, 2, 3, Var::X)));
        }
        let f7 = f(7);
        let mut h7 = crate::poly::canonical_ratfuncs(&f7, 2, 2, Var::X);
        h7.extend(
            crate::poly::unipolys_of_degree(&f7, 3, Var::X)
                .into_iter()
                .map(RatFunc::from_poly),
        );
        surveyed.push((f7, h7));
        let mut galois_seen = 0;
        for (ctx, hs) in surveyed {
            let candidates = pgl2_elements(&ctx);
            for h in hs {
                let group = aut_group_over(&h, &ctx, &candidates).unwrap();
                if group.order() != h.degree() {
                    continue;
                }
                galois_seen += 1;
                let short = group
                    .orbits(&ctx)
                    .into_iter()
                    .filter(|o| o.len() < group.order())
                    .count();
                assert!(
                    short <= 2,
                    "h = {h} over F_{} has {short} short orbits",
                    ctx.q()
                );
            }
        }
        assert!(galois_seen > 500, "survey too thin: {galois_seen}");
    }

    #[test]
    fn test_aut_group_extension_degree() {
        // x^3 over F_5 is not Galois over F_5 (no cube roots of 1) but splits
        // over F_25 where mu_3 lives
        let ctx = f(5);
        let h = xpow(&ctx, 3);
        assert!(!is_galois_cover(&h, 1).unwrap());
        assert!(is_galois_cover(&h, 2).unwrap());
        let aut = aut_group(&h, 2).unwrap();
        assert_eq!(aut.m, 2);
        assert_eq!(aut.field.q(), 25);
    }
}

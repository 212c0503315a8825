//! Building curves from rational-function pairs: the separated relation
//! f1(x) g2(y) - g1(x) f2(y) is factored over F_q and every component is
//! post-verified. Nothing is assumed: a pair can emit a curve with two
//! Galois points, lines that get rejected, or a component whose stabilizers
//! generate a non-commutative group.
//!
//! ```bash
//! cargo run -p galcurve --example construct_candidates
//! ```

use galcurve::bivar::SearchCap;
use galcurve::curve::{group_closure, structure_report, PlaneCurve, ProjPlanePoint};
use galcurve::decomp::{construct_candidate_curve, decompose, ComponentStatus};
use galcurve::parse::{parse_field_spec, parse_ratfunc};
use galcurve::poly::Var;

fn main() -> galcurve::Result<()> {
    let cap = SearchCap::default();

    // the quartic pair over F_9 reassembles the Fermat curve
    let f9 = parse_field_spec("3^2")?;
    let h1 = parse_ratfunc(&f9, "x^4", Var::X)?;
    let h2 = parse_ratfunc(&f9, "2*y^4+2", Var::Y)?;
    let rep = construct_candidate_curve(&h1, &h2, &cap)?;
    println!("pair (x^4, 2y^4+2) over F_9: relation = {}", rep.relation);
    for c in &rep.components {
        println!("  component {} (degree {}): {:?}", c.component, c.degree, c.status);
    }

    // squares only make two lines, both rejected
    let f5 = parse_field_spec("5^1")?;
    let h1 = parse_ratfunc(&f5, "x^2", Var::X)?;
    let h2 = parse_ratfunc(&f5, "y^2", Var::Y)?;
    let rep = construct_candidate_curve(&h1, &h2, &cap)?;
    println!("\npair (x^2, y^2) over F_5: relation = {}", rep.relation);
    for c in &rep.components {
        println!("  component {} -> {:?}", c.component, c.status);
    }

    // the cubic pair (x^3 + x, y^3 + y) over F_5 drops a line and a conic
    // whose two stabilizer involutions generate the symmetric group S_3;
    // neither stabilizer is normal in it
    let h1 = parse_ratfunc(&f5, "x^3+x", Var::X)?;
    let h2 = parse_ratfunc(&f5, "y^3+y", Var::Y)?;
    let rep = construct_candidate_curve(&h1, &h2, &cap)?;
    println!("\npair (x^3+x, y^3+y) over F_5: relation = {}", rep.relation);
    for c in &rep.components {
        println!("  component {} (degree {})", c.component, c.degree);
        if let ComponentStatus::Verified { both_galois: true, .. } = &c.status {
            let curve = PlaneCurve::from_affine(&c.poly)?;
            let p1 = ProjPlanePoint::e1(&f5);
            let p2 = ProjPlanePoint::e2(&f5);
            let g1 = curve.central_collineations(&p1)?;
            let g2 = curve.central_collineations(&p2)?;
            let joint = group_closure(&g1, &g2, 1000)?;
            let s = structure_report(&joint, &g1, &g2)?;
            println!(
                "    |G1| = {}, |G2| = {}, |<G1,G2>| = {} -> {:?}",
                s.order1, s.order2, s.order, s.classification
            );
            let dec = decompose(&curve, &p1, &p2)?;
            println!(
                "    decomposition: t = {} = {} on the curve; S / f_0 has degree {}",
                dec.h1, dec.h2, dec.s_quotient_degree
            );
        }
    }
    Ok(())
}

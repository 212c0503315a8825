//! Working inside the function field of a curve: reduced arithmetic,
//! inverses through the extended Euclidean algorithm, the action of a
//! curve-stabilizing collineation on functions, and the ladder that finds a
//! generator of the fixed field of a whole group.
//!
//! ```bash
//! cargo run -p galcurve --example function_field_tour
//! ```

use galcurve::curve::{group_closure, Collineation, ProjPlanePoint};
use galcurve::funcfield::{invariant_generator, FunctionField};
use galcurve::parse::{parse_curve, parse_field_spec};
use galcurve::poly::Var;

fn main() -> galcurve::Result<()> {
    // x^2 = y^3 + 1 over F_5, presented over the base F_5(y)
    let ctx = parse_field_spec("5^1")?;
    let curve = parse_curve(&ctx, "x^2 - y^3 - 1")?;
    let ff = FunctionField::new(&curve, Var::Y)?;
    let x = ff.gen_reduced();

    let x2 = ff.mul(&x, &x);
    println!("x * x      = {x2:?}   (reduced modulo the curve)");
    let xinv = ff.inv(&x)?;
    println!("x^-1       = {xinv:?}");
    println!("x * x^-1   = {:?}", ff.mul(&x, &xinv));

    // a collineation acting on coordinates: x -> -x fixes the curve
    let s = Collineation::from_ints(&ctx, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])?;
    let img = ff.apply_automorphism(&curve, &s, &x)?;
    println!("\nimage of x under (x -> -x): {img:?}");

    // the Fermat quartic: the joint stabilizer group of the two coordinate
    // points has order 16, and the ladder finds its fixed field inside
    // F_9(y) at the first power sum of matching degree
    let f9 = parse_field_spec("3^2")?;
    let fermat = parse_curve(&f9, "x^4+y^4+1")?;
    let g1 = fermat.central_collineations(&ProjPlanePoint::e1(&f9))?;
    let g2 = fermat.central_collineations(&ProjPlanePoint::e2(&f9))?;
    let joint = group_closure(&g1, &g2, 1000)?;
    let t = invariant_generator(&fermat, &joint, Var::Y)?;
    println!("\nfixed-field generator of the order-{} group: t = {t}", joint.order());
    Ok(())
}

//! Frobenius nonclassicality via minimal value sets: the Hermitian cubic
//! over F_4 decomposes into x^3 + 1 and y^3, two minimal value set
//! polynomials with the same values and the same certificate constant, so
//! the curve polynomial divides (x^q - x) f_x + (y^q - y) f_y.
//!
//! ```bash
//! cargo run -p galcurve --example hermitian_fnc
//! ```

use galcurve::curve::ProjPlanePoint;
use galcurve::fnc::{borges_identity, corollary_pipeline, is_frobenius_nonclassical, is_minimal_value_set};
use galcurve::parse::{parse_curve, parse_field_spec, parse_unipoly};
use galcurve::poly::Var;
use galcurve::report::to_json;

fn main() -> galcurve::Result<()> {
    let ctx = parse_field_spec("2^2")?;

    // the two sides of the separated relation
    for expr in ["x^3+1", "x^3"] {
        let f = parse_unipoly(&ctx, expr, Var::X)?;
        let m = is_minimal_value_set(&f)?;
        println!(
            "f = {expr:<6} |V'| = {} with floor {} -> minimal: {}",
            m.v_size, m.bound, m.minimal
        );
        let cert = borges_identity(&f)?;
        println!(
            "  certificate: T = {}, theta = {}  (T(f) = theta (x^4 - x) f')",
            cert.t_poly, cert.theta
        );
    }

    let curve = parse_curve(&ctx, "x^3+y^3+1")?;
    println!(
        "\ndirect divisibility test on the curve: {}",
        is_frobenius_nonclassical(&curve)?
    );

    let report = corollary_pipeline(
        &curve,
        &ProjPlanePoint::e1(&ctx),
        &ProjPlanePoint::e2(&ctx),
    )?;
    println!("\npipeline report:\n{}", to_json(&report)?);
    Ok(())
}

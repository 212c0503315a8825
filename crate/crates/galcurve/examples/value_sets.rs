//! Value sets of rational functions on the projective line, and the bound
//! they satisfy when the cover is Galois: #V_h is ceil((q+1)/deg h) or one
//! more.
//!
//! ```bash
//! cargo run -p galcurve --example value_sets
//! ```

use galcurve::moebius::{short_orbits, verify_fact_bound};
use galcurve::parse::{parse_field_spec, parse_ratfunc};
use galcurve::poly::{ValueMode, Var};

fn main() -> galcurve::Result<()> {
    let f5 = parse_field_spec("5^1")?;

    for expr in ["x^2", "x^5-x", "x^3", "(x^2+1) / x"] {
        let h = parse_ratfunc(&f5, expr, Var::X)?;
        let v = h.value_set(ValueMode::Projective)?;
        let r = verify_fact_bound(&h)?;
        println!(
            "h = {expr:<14} deg {}  V_h = {v}  (size {}, floor {}, galois: {}, within bound: {})",
            r.deg, r.v_size, r.lower, r.galois, r.ok
        );
    }

    // x^4 on F_9 hits exactly the prime subfield
    let f9 = parse_field_spec("3^2")?;
    let pow4 = parse_ratfunc(&f9, "x^4", Var::X)?;
    let v = pow4.value_set(ValueMode::Affine)?;
    println!("\naffine values of x^4 on F_9: {v} (the prime subfield F_3)");

    // a Galois cover has at most two short orbits; x^2 pins 0 and infinity
    let x2 = parse_ratfunc(&f5, "x^2", Var::X)?;
    let orbits = short_orbits(&x2, 1)?;
    println!("\nshort orbits of the symmetries of x^2 on P^1(F_5):");
    for o in orbits {
        let pts: Vec<String> = o.iter().map(|p| p.to_string()).collect();
        println!("  {{{}}}", pts.join(", "));
    }

    // ramification bookkeeping at a fiber
    use galcurve::poly::ProjPoint;
    let e0 = x2.ramification_index(&ProjPoint::Affine(f5.zero()))?;
    let einf = x2.ramification_index(&ProjPoint::Infinity)?;
    println!("\nramification of x^2: e(0) = {e0}, e(inf) = {einf}");
    Ok(())
}

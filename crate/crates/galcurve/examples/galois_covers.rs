//! Moebius symmetries of rational functions: the automorphism group of a
//! cover of P^1, the Galois test, and the reverse direction where a finite
//! subgroup of PGL(2, q) is turned back into an invariant function.
//!
//! ```bash
//! cargo run -p galcurve --example galois_covers
//! ```

use galcurve::moebius::{aut_group, invariant_of_subgroup, is_galois_cover, MoebiusGroup, MoebiusMap};
use galcurve::parse::{parse_field_spec, parse_ratfunc};
use galcurve::poly::Var;

fn main() -> galcurve::Result<()> {
    let f7 = parse_field_spec("7^1")?;

    for expr in ["x^2", "x^3", "x^7-x", "x^6"] {
        let h = parse_ratfunc(&f7, expr, Var::X)?;
        let aut = aut_group(&h, 1)?;
        println!(
            "h = {expr:<6} deg {}:  |Aut| = {}  galois: {}",
            h.degree(),
            aut.group.order(),
            aut.group.order() == h.degree()
        );
    }

    // x^3 over F_5 only splits after a quadratic constant-field extension,
    // where the cube roots of unity live
    let f5 = parse_field_spec("5^1")?;
    let h = parse_ratfunc(&f5, "x^3", Var::X)?;
    println!("\nx^3 over F_5:  galois over F_5: {}", is_galois_cover(&h, 1)?);
    println!("x^3 over F_5:  galois over F_25: {}", is_galois_cover(&h, 2)?);

    // the reverse direction: the translation subgroup { x + c } has the
    // classical invariant x^p - x
    let gens: Vec<MoebiusMap> = f7
        .enumerate()
        .filter(|c| !c.is_zero())
        .map(|c| MoebiusMap::new(f7.one(), c, f7.zero(), f7.one()))
        .collect::<galcurve::Result<_>>()?;
    let translations = MoebiusGroup::generate(&f7, &gens);
    let inv = invariant_of_subgroup(&translations, &f7)?;
    println!("\ninvariant of the {} translations of F_7: {inv}", translations.order());

    // and the sign group { x, -x } recovers x^2
    let neg = MoebiusMap::new(f7.from_i64(-1), f7.zero(), f7.zero(), f7.one())?;
    let signs = MoebiusGroup::generate(&f7, &[neg]);
    println!("invariant of {{x, -x}}: {}", invariant_of_subgroup(&signs, &f7)?);
    Ok(())
}

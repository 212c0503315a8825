//! Exact arithmetic in small finite fields: construction, enumeration,
//! Frobenius, and subfield embeddings.
//!
//! ```bash
//! cargo run -p galcurve --example finite_fields
//! ```

use galcurve::field::FieldCtx;
use galcurve::parse::parse_field_spec;

fn main() -> galcurve::Result<()> {
    // canonical modulus selection: the first irreducible in the fixed scan order
    let f9 = FieldCtx::new(3, 2, None)?;
    println!("F_9  = {}", f9.spec_string());
    let f16 = parse_field_spec("2^4")?;
    println!("F_16 = {}", f16.spec_string());

    // t generates F_9 over F_3 with t^2 = -1
    let t = f9.generator();
    println!("\nin F_9: t * t = {}", &t * &t);
    println!("t^3 (Frobenius of t) = {}", t.frobenius(1));
    println!("t^8 = {} (multiplicative order 8)", t.pow(8));

    // the element list is deterministic: constant coordinate fastest
    let elems: Vec<String> = f9.enumerate().map(|e| e.to_string()).collect();
    println!("\nenumeration of F_9: {}", elems.join(", "));

    // every nonzero element has an inverse
    for a in f9.enumerate().filter(|a| !a.is_zero()) {
        assert!((&a * &a.inv()?).is_one());
    }
    println!("checked a * a^-1 = 1 for all nonzero a in F_9");

    // F_4 embeds in F_16 by sending t_4 to a root of its modulus
    let f4 = parse_field_spec("2^2")?;
    let emb = f4.embed(&f16)?;
    let img = emb.map(&f4.generator());
    println!("\nembedding F_4 -> F_16 sends t to {img}");
    println!("image satisfies t^2 + t + 1 = 0: {}", {
        let z = &(&img * &img) + &(&img + &f16.one());
        z.is_zero()
    });
    Ok(())
}

//! Galois points on plane curves over finite fields.
//!
//! A point P of the projective plane is a Galois point of a curve C when the
//! projection from P induces a Galois extension of function fields. For a
//! curve with two such points whose stabilizer groups generate a finite
//! group, the defining polynomial is an irreducible component of a separated
//! relation f1(x) g2(y) - g1(x) f2(y) built from one shared invariant; when
//! both points lie off the curve the relation can be taken with g1 = g2 = 1,
//! tying the curve to polynomials with minimal value sets and, under the
//! right hypotheses, certifying q-Frobenius nonclassicality.
//!
//! The crate computes all of this exactly over F_{p^n} at desk scale
//! (exhaustive operations are tuned for q <= 81):
//!
//! - [`field`]: exact F_{p^n} arithmetic, enumeration, Frobenius, subfield
//!   embeddings.
//! - [`poly`]: univariate polynomials, canonical rational functions, value
//!   sets on P^1, ramification indices.
//! - [`moebius`]: PGL(2, q), automorphism groups of rational functions, the
//!   Galois-cover test, invariants of finite subgroups, the value-set bound.
//! - [`bivar`]: sparse bivariate and homogeneous polynomials, exact
//!   divisibility, capped absolute-irreducibility testing.
//! - [`curve`]: plane curves, central collineations, Galois-point detection,
//!   group closure and structure reports.
//! - [`funcfield`]: arithmetic in F_q(base)[reduced]/(f_0), collineation
//!   actions on functions, the invariant-generator ladder.
//! - [`decomp`]: the decomposition itself, outer-point polynomialization,
//!   candidate-curve construction, and the clause-by-clause verifier.
//! - [`fnc`]: minimal value set polynomials, their certificates, the
//!   q-Frobenius nonclassicality test and the full pipeline.
//! - [`parse`], [`survey`], [`cli`], [`report`]: text grammars, exhaustive
//!   surveys, and the command-line front end.
//!
//! Every runnable example under `examples/` exercises one capability end to
//! end; `cargo run -- <subcommand>` exposes the same operations on the
//! command line.

// FieldElem keys hash and compare by (p, n, modulus, coordinates) only; the
// OnceLock table cache inside the shared context never enters Eq/Ord/Hash.
#![allow(clippy::mutable_key_type)]

pub mod bivar;
pub mod cli;
pub mod curve;
pub mod decomp;
pub mod error;
pub mod field;
pub mod fnc;
pub mod funcfield;
pub(crate) mod mat3;
pub mod moebius;
pub mod parse;
pub mod poly;
pub mod report;
pub mod survey;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use poly::{ProjPoint, RatFunc, UniPoly, ValueMode, ValueSet, Var};

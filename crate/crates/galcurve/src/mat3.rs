//! Small helpers for 3x3 matrices over a field context.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

pub(crate) type Mat3 = [[FieldElem; 3]; 3];

pub(crate) fn identity(ctx: &FieldCtx) -> Mat3 {
    let z = || ctx.zero();
    let o = || ctx.one();
    [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]]
}

pub(crate) fn det(m: &Mat3) -> FieldElem {
    let t1 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
    let t2 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
    let t3 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    &(&t1 - &t2) + &t3
}

pub(crate) fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let ctx = a[0][0].ctx();
    let mut out = identity(ctx);
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = ctx.zero();
            for (k, bk) in b.iter().enumerate() {
                acc = &acc + &(&a[i][k] * &bk[j]);
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Inverse via the adjugate; errors on singular input.
pub(crate) fn inverse(m: &Mat3) -> Result<Mat3> {
    let d = det(m);
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let dinv = d.inv()?;
    let cof = |r1: usize, c1: usize, r2: usize, c2: usize| -> FieldElem {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    // adjugate transpose
    let adj = [
        [cof(1, 1, 2, 2), -&cof(0, 1, 2, 2), cof(0, 1, 1, 2)],
        [-&cof(1, 0, 2, 2), cof(0, 0, 2, 2), -&cof(0, 0, 1, 2)],
        [cof(1, 0, 2, 1), -&cof(0, 0, 2, 1), cof(0, 0, 1, 1)],
    ];
    let mut out = adj;
    for row in out.iter_mut() {
        for e in row.iter_mut() {
            *e = &*e * &dinv;
        }
    }
    Ok(out)
}

pub(crate) fn apply(m: &Mat3, v: &[FieldElem; 3]) -> [FieldElem; 3] {
    let mut out = [v[0].ctx().zero(), v[0].ctx().zero(), v[0].ctx().zero()];
    for (i, row) in m.iter().enumerate() {
        let mut acc = v[0].ctx().zero();
        for (k, e) in row.iter().enumerate() {
            acc = &acc + &(e * &v[k]);
        }
        out[i] = acc;
    }
    out
}

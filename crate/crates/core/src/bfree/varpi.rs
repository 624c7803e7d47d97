//! Preservation of the q-Serre polynomial under the E/F-swapping involution,
//! computed in the torus-decorated free algebra:
//!
//!   S12(q1^-1 F1 Kt1, q2^-1 F2 Kt2)
//!     = q1^(a12 - 1) q2^-1 S12(F1, F2) Kt1^(1 - a12) Kt2.

use crate::error::Result;
use crate::qcomb::QBase;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::ualg::CartanData;

use super::ops::sij_poly;
use super::poly::{CommCtx, FreeMonomial, FreePoly, Letter};

pub fn varpi_serre_check(cartan: &CartanData) -> Result<Report> {
    let ctx = CommCtx {
        eps: vec![cartan.eps1, cartan.eps2],
        a: vec![vec![2, cartan.a12], vec![cartan.a21, 2]],
    };
    let e1 = cartan.eps1;
    let e2 = cartan.eps2;
    let x = FreePoly::monomial(
        FreeMonomial { word: vec![Letter::F(0)], torus: vec![1, 0] },
        Scalar::q_pow(-e1),
    );
    let y = FreePoly::monomial(
        FreeMonomial { word: vec![Letter::F(1)], torus: vec![0, 1] },
        Scalar::q_pow(-e2),
    );
    let base = QBase::q(e1);
    let lhs = sij_poly(cartan.a12, &x, &y, base, &ctx);
    let f1 = FreePoly::letter(Letter::F(0), 2);
    let f2 = FreePoly::letter(Letter::F(1), 2);
    let torus_tail = FreePoly::monomial(
        FreeMonomial { word: vec![], torus: vec![1 - cartan.a12, 1] },
        Scalar::q_pow(e1 * (cartan.a12 - 1) - e2),
    );
    let rhs = sij_poly(cartan.a12, &f1, &f2, base, &ctx).mul(&torus_tail, &ctx);
    let diff = lhs.sub(&rhs);
    Ok(Report::from_zero_check(
        "varpi-serre",
        format!("a12={}", cartan.a12),
        diff.is_zero(),
        || diff.to_string(),
    ))
}

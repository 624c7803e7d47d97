//! Independent oracle for balanced q-binomials: Pascal recurrence plus the
//! negative-row reflection, over integer Laurent polynomials in q alone.
//! No division is performed anywhere, so this path is independent of the
//! fraction-field implementation it cross-checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use qserre_core::scalar::{LaurentPoly, Scalar};

/// Sparse integer Laurent polynomial in q.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QP(pub BTreeMap<i64, i128>);

impl QP {
    pub fn zero() -> Self {
        QP(BTreeMap::new())
    }

    pub fn one() -> Self {
        QP::term(0, 1)
    }

    pub fn term(exp: i64, coeff: i128) -> Self {
        let mut m = BTreeMap::new();
        if coeff != 0 {
            m.insert(exp, coeff);
        }
        QP(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            let entry = out.0.entry(*e).or_insert(0);
            *entry += c;
            if *entry == 0 {
                out.0.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        QP(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = QP::zero();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &other.0 {
                let entry = out.0.entry(ea + eb).or_insert(0);
                *entry += ca * cb;
                if *entry == 0 {
                    out.0.remove(&(ea + eb));
                }
            }
        }
        out
    }

    pub fn scale(&self, k: i128) -> Self {
        if k == 0 {
            return QP::zero();
        }
        QP(self.0.iter().map(|(e, c)| (*e, c * k)).collect())
    }

    /// Substitute q -> q^k.
    pub fn stretch(&self, k: i64) -> Self {
        QP(self.0.iter().map(|(e, c)| (k * e, *c)).collect())
    }

    pub fn to_scalar(&self) -> Scalar {
        let mut p = LaurentPoly::zero();
        for (e, c) in &self.0 {
            p.add_term([*e, 0, 0], &num::BigInt::from(*c));
        }
        Scalar::from_poly(p)
    }
}

/// Balanced q-integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n), [-n] = -[n].
pub fn oracle_qint(n: i64) -> QP {
    if n == 0 {
        return QP::zero();
    }
    if n < 0 {
        return oracle_qint(-n).neg();
    }
    let mut out = QP::zero();
    let mut e = n - 1;
    while e >= 1 - n {
        out = out.add(&QP::term(e, 1));
        e -= 2;
    }
    out
}

pub fn oracle_qfact(m: i64) -> QP {
    let mut out = QP::one();
    for j in 1..=m {
        out = out.mul(&oracle_qint(j));
    }
    out
}

/// Balanced q-binomial by the Pascal recurrence
/// [m; t] = q^t [m-1; t] + q^(t-m) [m-1; t-1] for m >= 1, and the
/// reflection [-n; d] = (-1)^d [n+d-1; d] for negative rows.
pub fn oracle_qbinom(n: i64, d: i64) -> QP {
    if d < 0 {
        return QP::zero();
    }
    if d == 0 {
        return QP::one();
    }
    if n < 0 {
        let refl = oracle_qbinom(-n + d - 1, d);
        return if d % 2 == 0 { refl } else { refl.neg() };
    }
    if d > n {
        return QP::zero();
    }
    // Dense DP over rows 0..n.
    let mut row: Vec<QP> = vec![QP::one()];
    for m in 1..=n {
        let width = (d.min(m) + 1) as usize;
        let mut next: Vec<QP> = Vec::with_capacity(width);
        for t in 0..width as i64 {
            let keep = row
                .get(t as usize)
                .map(|p| p.mul(&QP::term(t, 1)))
                .unwrap_or_else(QP::zero);
            let carry = if t >= 1 {
                row.get((t - 1) as usize)
                    .map(|p| p.mul(&QP::term(t - m, 1)))
                    .unwrap_or_else(QP::zero)
            } else {
                QP::zero()
            };
            next.push(keep.add(&carry));
        }
        row = next;
    }
    row.into_iter().nth(d as usize).expect("d <= n")
}

/// q^2-base binomial.
pub fn oracle_qbinom_q2(n: i64, d: i64) -> QP {
    oracle_qbinom(n, d).stretch(2)
}

/// Brute-force first or second double-sum of T(w, u, ell) from its
/// definition, entirely through the oracle.
pub fn oracle_t_sum(w: i64, u: i64, ell: i64, even: bool) -> QP {
    let mut acc = QP::zero();
    for c in 0..=u {
        for e in 0..=(u - c) {
            let r = u - c - e;
            for t in 0..=ell {
                if (t + w - r).rem_euclid(2) == if even { 0 } else { 1 } {
                    let term = if even {
                        let h = (w + t - r) / 2;
                        QP::term(-t * (ell + u - 1) + (ell + u) * (c - e), 1)
                            .mul(&oracle_qbinom(ell, t))
                            .mul(&oracle_qbinom(w + t - ell, r))
                            .mul(&oracle_qbinom_q2(u - 1 + h, c))
                            .mul(&oracle_qbinom_q2(h - ell, e))
                    } else {
                        let h = (w + t - r - 1) / 2;
                        QP::term(-t * (ell + u - 1) + (ell + u - 1) * (c - e), 1)
                            .mul(&oracle_qbinom(ell, t))
                            .mul(&oracle_qbinom(w + t - ell, r))
                            .mul(&oracle_qbinom_q2(u + h, c))
                            .mul(&oracle_qbinom_q2(h - ell, e))
                    };
                    acc = acc.add(&term);
                }
            }
        }
    }
    acc
}

/// Brute-force H(u; p1, p2) through the oracle.
pub fn oracle_h(u: i64, p1: i64, p2: i64) -> QP {
    let mut acc = QP::zero();
    for c in 0..=u {
        let e = u - c;
        acc = acc.add(
            &QP::term(2 * c + 2 * c * p1 + 2 * e * p2, 1)
                .mul(&oracle_qbinom_q2(p1, c))
                .mul(&oracle_qbinom_q2(p2, e)),
        );
    }
    acc
}

//! Emission of the Serre presentation for quasi-split iquantum groups:
//! root data, parameter validation, tagged relation polynomials, and the
//! q = 1 specialization.

use num::traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcomb::{qfact, QBase};
use crate::scalar::{LaurentPoly, Scalar};
use crate::ualg::Parity;

use super::ops::iserre_poly;
use super::poly::{CommCtx, FreeMonomial, FreePoly, Letter, TermView};

/// Symmetrizable Cartan data of arbitrary rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    pub eps: Vec<i64>,
    pub a: Vec<Vec<i64>>,
}

impl RootData {
    pub fn new(eps: Vec<i64>, a: Vec<Vec<i64>>) -> Result<Self> {
        let n = eps.len();
        if n == 0 || a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParams("Cartan matrix shape mismatch".into()));
        }
        if eps.iter().any(|&e| e < 1) {
            return Err(Error::InvalidParams("eps entries must be positive".into()));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::InvalidParams("diagonal entries must be 2".into()));
            }
            for j in 0..n {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(Error::InvalidParams(
                            "off-diagonal entries must be nonpositive".into(),
                        ));
                    }
                    if eps[i] * a[i][j] != eps[j] * a[j][i] {
                        return Err(Error::InvalidParams(format!(
                            "not symmetrizable at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(Self { eps, a })
    }

    pub fn rank(&self) -> usize {
        self.eps.len()
    }

    pub fn comm_ctx(&self) -> CommCtx {
        CommCtx { eps: self.eps.clone(), a: self.a.clone() }
    }
}

/// Per-node parameter: the shared formal symbol or a concrete value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaValue {
    Formal,
    Value(Scalar),
}

impl SigmaValue {
    pub fn scalar(&self) -> Scalar {
        match self {
            SigmaValue::Formal => Scalar::sigma(),
            SigmaValue::Value(s) => s.clone(),
        }
    }
}

/// A declared torus generator K_mu: its name and the pairings <mu, alpha_i>.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmuDecl {
    pub name: String,
    pub pairing: Vec<i64>,
}

/// Input data of a quasi-split iquantum group presentation.
#[derive(Clone, Debug)]
pub struct IqgParams {
    pub root: RootData,
    pub tau: Vec<usize>,
    pub sigma: Vec<SigmaValue>,
    pub kappa: Vec<Scalar>,
    /// The fixed parity choice per tau-fixed node.
    pub parity: Vec<Parity>,
    pub kmu: Vec<KmuDecl>,
}

impl IqgParams {
    pub fn new(
        root: RootData,
        tau: Vec<usize>,
        sigma: Vec<SigmaValue>,
        kappa: Vec<Scalar>,
        parity: Vec<Parity>,
        kmu: Vec<KmuDecl>,
    ) -> Result<Self> {
        let n = root.rank();
        if tau.len() != n || sigma.len() != n || kappa.len() != n || parity.len() != n {
            return Err(Error::InvalidParams("per-node parameter length mismatch".into()));
        }
        for i in 0..n {
            if tau[i] >= n || tau[tau[i]] != i {
                return Err(Error::InvalidParams("tau must be an involution of I".into()));
            }
        }
        for i in 0..n {
            if root.eps[tau[i]] != root.eps[i] {
                return Err(Error::InvalidParams("tau must preserve the Cartan datum".into()));
            }
            for j in 0..n {
                if root.a[tau[i]][tau[j]] != root.a[i][j] {
                    return Err(Error::InvalidParams("tau must preserve the Cartan matrix".into()));
                }
            }
        }
        // kappa_i = 0 unless tau i = i and <h_k, alpha_i> even for all
        // tau-fixed k.
        for i in 0..n {
            if kappa[i].is_zero() {
                continue;
            }
            if tau[i] != i {
                return Err(Error::InvalidParams(format!(
                    "kappa_{} must vanish at a tau-moved node",
                    i + 1
                )));
            }
            for k in 0..n {
                if tau[k] == k && root.a[k][i].rem_euclid(2) != 0 {
                    return Err(Error::InvalidParams(format!(
                        "kappa_{} requires even <h_{}, alpha_{}>",
                        i + 1,
                        k + 1,
                        i + 1
                    )));
                }
            }
        }
        // sigma_i = sigma_(tau i) when a_(i, tau i) = 0.
        for i in 0..n {
            let ti = tau[i];
            if ti != i && root.a[i][ti] == 0 && sigma[i] != sigma[ti] {
                return Err(Error::InvalidParams(format!(
                    "sigma_{} must equal sigma_{} since a = 0 on the pair",
                    i + 1,
                    ti + 1
                )));
            }
        }
        for decl in &kmu {
            if decl.pairing.len() != n {
                return Err(Error::InvalidParams("K_mu pairing length mismatch".into()));
            }
        }
        Ok(Self { root, tau, sigma, kappa, parity, kmu })
    }

    /// Split rank-2 parameters with the formal parameter on both nodes.
    pub fn split_rank2(a12: i64, a21: i64, eps1: i64, eps2: i64) -> Result<Self> {
        let root = RootData::new(vec![eps1, eps2], vec![vec![2, a12], vec![a21, 2]])?;
        Self::new(
            root,
            vec![0, 1],
            vec![SigmaValue::Formal, SigmaValue::Formal],
            vec![Scalar::zero(), Scalar::zero()],
            vec![Parity::Even, Parity::Even],
            Vec::new(),
        )
    }

    pub fn is_split(&self) -> bool {
        self.tau.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// Relation tags, one per Serre-presentation line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelKind {
    Torus,
    Weight,
    Commutation,
    QSerreLike,
    Relation5,
    ISerre,
}

/// A tagged relation polynomial; `verified: false` marks the twisted-pair
/// relation, which is emitted but not re-verified here.
#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelKind,
    pub label: String,
    pub verified: bool,
    pub poly: FreePoly,
}

/// A Serre presentation: generators plus tagged relation polynomials.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub rank: usize,
    pub relations: Vec<Relation>,
}

#[derive(Serialize)]
struct RelationView {
    kind: RelKind,
    label: String,
    verified: bool,
    terms: Vec<TermView>,
}

#[derive(Serialize)]
struct PresentationView {
    generators: Vec<String>,
    relations: Vec<RelationView>,
}

impl Presentation {
    pub fn to_json(&self) -> serde_json::Value {
        let view = PresentationView {
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationView {
                    kind: r.kind,
                    label: r.label.clone(),
                    verified: r.verified,
                    terms: r.poly.to_term_views(),
                })
                .collect(),
        };
        serde_json::to_value(view).expect("serializable")
    }
}

/// (a; x)_n = (1 - a)(1 - a x) ... (1 - a x^(n-1)).
fn pochhammer(a: &Scalar, x: &Scalar, n: i64) -> Scalar {
    let mut acc = Scalar::one();
    let mut power = Scalar::one();
    for _ in 0..n {
        acc = acc.mul_ref(&Scalar::one().sub_ref(&a.mul_ref(&power)));
        power = power.mul_ref(x);
    }
    acc
}

/// Plain divided power B_i^((n)) = B_i^n / [n]! in base q_i.
fn plain_divided_power(i: usize, n: i64, base: QBase, ctx: &CommCtx) -> FreePoly {
    let rank = ctx.rank();
    let b = FreePoly::letter(Letter::B(i), rank);
    b.pow(n as usize, ctx)
        .scale(&qfact(n, base).expect("n >= 0").inv().expect("[n]! nonzero"))
}

/// Emit the tagged Serre presentation for the given parameters. For split
/// parameters this is the reduced form: generators B_i and the iSerre
/// relations only.
pub fn emit_presentation(params: &IqgParams) -> Result<Presentation> {
    let n = params.root.rank();
    let ctx = params.root.comm_ctx();
    let rank = n;
    let mut generators: Vec<String> = (0..n).map(|i| format!("B{}", i + 1)).collect();
    let mut relations = Vec::new();

    let split = params.is_split();
    if !split {
        for decl in &params.kmu {
            generators.push(decl.name.clone());
            generators.push(format!("{}^-1", decl.name));
        }
        // Torus relations: K_mu K_mu^-1 = 1 and pairwise commutation.
        for (idx, decl) in params.kmu.iter().enumerate() {
            let k = Letter::K { idx, inv: false };
            let kinv = Letter::K { idx, inv: true };
            for (x, y) in [(k, kinv), (kinv, k)] {
                let mut p = FreePoly::monomial(
                    FreeMonomial { word: vec![x, y], torus: vec![0; rank] },
                    Scalar::one(),
                );
                p.add_term(FreeMonomial::empty(rank), &Scalar::from_int(-1));
                relations.push(Relation {
                    kind: RelKind::Torus,
                    label: format!("{} {} = 1", letter_name(&x, params), letter_name(&y, params)),
                    verified: true,
                    poly: p,
                });
            }
            for jdx in (idx + 1)..params.kmu.len() {
                let l = Letter::K { idx: jdx, inv: false };
                let mut p = FreePoly::monomial(
                    FreeMonomial { word: vec![k, l], torus: vec![0; rank] },
                    Scalar::one(),
                );
                p.add_term(
                    FreeMonomial { word: vec![l, k], torus: vec![0; rank] },
                    &Scalar::from_int(-1),
                );
                relations.push(Relation {
                    kind: RelKind::Torus,
                    label: format!("[{}, {}] = 0", decl.name, params.kmu[jdx].name),
                    verified: true,
                    poly: p,
                });
            }
        }
        // Weight relations: K_mu B_i = q_i^(-<mu, alpha_i>) B_i K_mu, for
        // mu and -mu.
        for (idx, decl) in params.kmu.iter().enumerate() {
            for i in 0..n {
                for inv in [false, true] {
                    let pairing = if inv { -decl.pairing[i] } else { decl.pairing[i] };
                    let k = Letter::K { idx, inv };
                    let b = Letter::B(i);
                    let mut p = FreePoly::monomial(
                        FreeMonomial { word: vec![k, b], torus: vec![0; rank] },
                        Scalar::one(),
                    );
                    p.add_term(
                        FreeMonomial { word: vec![b, k], torus: vec![0; rank] },
                        &Scalar::q_pow(-params.root.eps[i] * pairing).neg_ref(),
                    );
                    relations.push(Relation {
                        kind: RelKind::Weight,
                        label: format!(
                            "{} B{} = q{}^{} B{} {}",
                            letter_name(&k, params),
                            i + 1,
                            i + 1,
                            -pairing,
                            i + 1,
                            letter_name(&k, params)
                        ),
                        verified: true,
                        poly: p,
                    });
                }
            }
        }
    }

    for i in 0..n {
        let qi = QBase::q(params.root.eps[i]);
        let ti = params.tau[i];
        for j in 0..n {
            if j == i {
                continue;
            }
            let aij = params.root.a[i][j];
            if ti == i {
                // iSerre relation, in the two letters B_i, B_j.
                let poly2 = iserre_poly(aij, params.parity[i], &params.sigma[i].scalar(), qi)?;
                relations.push(Relation {
                    kind: RelKind::ISerre,
                    label: format!("iSerre(B{}, B{})", i + 1, j + 1),
                    verified: true,
                    poly: relabel_two_letters(&poly2, i, j, rank),
                });
            } else if j == ti {
                // Twisted-pair relation with its Pochhammer right-hand side;
                // emitted, never re-verified.
                let a_iti = aij;
                let n_top = 1 - a_iti;
                let mut lhs = FreePoly::zero();
                for k in 0..=n_top {
                    let sign = if (k + a_iti).rem_euclid(2) == 0 { 1 } else { -1 };
                    let term = plain_divided_power(i, k, qi, &ctx)
                        .mul(&FreePoly::letter(Letter::B(ti), rank), &ctx)
                        .mul(&plain_divided_power(i, n_top - k, qi, &ctx), &ctx)
                        .scale(&Scalar::from_int(sign));
                    lhs = lhs.add(&term);
                }
                let e = params.root.eps[i];
                let qi2 = Scalar::q_pow(2 * e);
                let qim2 = Scalar::q_pow(-2 * e);
                let front = Scalar::q_pow(e)
                    .sub_ref(&Scalar::q_pow(-e))
                    .inv()
                    .expect("q_i - q_i^-1 nonzero");
                let dp = plain_divided_power(i, -a_iti, qi, &ctx);
                let mut torus_plus = vec![0i64; rank];
                torus_plus[i] = 1;
                torus_plus[ti] = -1;
                let mut torus_minus = vec![0i64; rank];
                torus_minus[i] = -1;
                torus_minus[ti] = 1;
                let term_plus = dp
                    .mul(
                        &FreePoly::monomial(
                            FreeMonomial { word: vec![], torus: torus_plus },
                            Scalar::one(),
                        ),
                        &ctx,
                    )
                    .scale(
                        &Scalar::q_pow(e * a_iti)
                            .mul_ref(&pochhammer(&qim2, &qim2, -a_iti))
                            .mul_ref(&params.sigma[ti].scalar()),
                    );
                let term_minus = dp
                    .mul(
                        &FreePoly::monomial(
                            FreeMonomial { word: vec![], torus: torus_minus },
                            Scalar::one(),
                        ),
                        &ctx,
                    )
                    .scale(&pochhammer(&qi2, &qi2, -a_iti).mul_ref(&params.sigma[i].scalar()));
                let rhs = term_plus.sub(&term_minus).scale(&front);
                relations.push(Relation {
                    kind: RelKind::Relation5,
                    label: format!("twisted-pair(B{}, B{})", i + 1, ti + 1),
                    verified: false,
                    poly: lhs.sub(&rhs),
                });
            } else {
                // tau i != i and j is not the partner.
                if aij == 0 {
                    let mut p = FreePoly::monomial(
                        FreeMonomial { word: vec![Letter::B(i), Letter::B(j)], torus: vec![0; rank] },
                        Scalar::one(),
                    );
                    p.add_term(
                        FreeMonomial { word: vec![Letter::B(j), Letter::B(i)], torus: vec![0; rank] },
                        &Scalar::from_int(-1),
                    );
                    relations.push(Relation {
                        kind: RelKind::Commutation,
                        label: format!("[B{}, B{}] = 0", i + 1, j + 1),
                        verified: true,
                        poly: p,
                    });
                } else {
                    let n_top = 1 - aij;
                    let mut p = FreePoly::zero();
                    for k in 0..=n_top {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        let term = plain_divided_power(i, k, qi, &ctx)
                            .mul(&FreePoly::letter(Letter::B(j), rank), &ctx)
                            .mul(&plain_divided_power(i, n_top - k, qi, &ctx), &ctx)
                            .scale(&Scalar::from_int(sign));
                        p = p.add(&term);
                    }
                    relations.push(Relation {
                        kind: RelKind::QSerreLike,
                        label: format!("qSerre(B{}, B{})", i + 1, j + 1),
                        verified: true,
                        poly: p,
                    });
                }
            }
        }
    }

    Ok(Presentation { generators, rank, relations })
}

fn letter_name(l: &Letter, params: &IqgParams) -> String {
    match l {
        Letter::K { idx, inv: false } => params.kmu[*idx].name.clone(),
        Letter::K { idx, inv: true } => format!("{}^-1", params.kmu[*idx].name),
        other => other.to_string(),
    }
}

/// Move a two-letter polynomial (B1, B2 as letters 0, 1) onto nodes (i, j).
fn relabel_two_letters(p: &FreePoly, i: usize, j: usize, rank: usize) -> FreePoly {
    let mut out = FreePoly::zero();
    for (m, c) in p.iter() {
        let word = m
            .word
            .iter()
            .map(|l| match l {
                Letter::B(0) => Letter::B(i),
                Letter::B(1) => Letter::B(j),
                other => *other,
            })
            .collect();
        out.add_term(FreeMonomial { word, torus: vec![0; rank] }, c);
    }
    out
}

/// Coefficient-wise q = 1 specialization with the parameter symbol pinned
/// to a rational value (as a constant Scalar). Emission only.
pub fn specialize_presentation_q1(pres: &Presentation, sigma_value: &Scalar) -> Result<Presentation> {
    let mut relations = Vec::with_capacity(pres.relations.len());
    for r in &pres.relations {
        let poly = r.poly.map_coeffs(|c| {
            let bound = c.substitute_sigma(sigma_value)?;
            let v = bound.specialize_q1()?;
            let num = LaurentPoly::from_bigint(v.numer().clone());
            let den = LaurentPoly::from_bigint(v.denom().clone());
            Scalar::from_parts(num, den)
        })?;
        relations.push(Relation {
            kind: r.kind,
            label: format!("{} | q=1", r.label),
            verified: r.verified,
            poly,
        });
    }
    Ok(Presentation {
        generators: pres.generators.clone(),
        rank: pres.rank,
        relations,
    })
}

/// Integer value of a constant Scalar, if it is one (test helper).
pub fn constant_value(s: &Scalar) -> Option<i64> {
    s.specialize_q1().ok().and_then(|r| {
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_rank1_has_no_relations() {
        let root = RootData::new(vec![1], vec![vec![2]]).unwrap();
        let params = IqgParams::new(
            root,
            vec![0],
            vec![SigmaValue::Formal],
            vec![Scalar::zero()],
            vec![Parity::Even],
            Vec::new(),
        )
        .unwrap();
        let pres = emit_presentation(&params).unwrap();
        assert_eq!(pres.generators, vec!["B1".to_string()]);
        assert!(pres.relations.is_empty());
    }

    #[test]
    fn quasi_split_a1xa1_relation5_at_zero() {
        // tau swaps the two nodes of A1 x A1; relation (B2 B1 - B1 B2) has
        // the Pochhammer right-hand side with (a; x)_0 = 1.
        let root = RootData::new(vec![1, 1], vec![vec![2, 0], vec![0, 2]]).unwrap();
        let params = IqgParams::new(
            root,
            vec![1, 0],
            vec![SigmaValue::Formal, SigmaValue::Formal],
            vec![Scalar::zero(), Scalar::zero()],
            vec![Parity::Even, Parity::Even],
            Vec::new(),
        )
        .unwrap();
        let pres = emit_presentation(&params).unwrap();
        let rel5: Vec<&Relation> = pres
            .relations
            .iter()
            .filter(|r| r.kind == RelKind::Relation5)
            .collect();
        assert_eq!(rel5.len(), 2);
        assert!(!rel5[0].verified);
        // B2 B1 - B1 B2 - (s/(q - q^-1)) (Kt1 Kt2^-1 - Kt2 Kt1^-1)
        let p = &rel5[0].poly;
        assert_eq!(p.coeff_word(&[Letter::B(1), Letter::B(0)], 2).unwrap(), &Scalar::one());
        let front = Scalar::sigma()
            .mul_ref(&Scalar::q_pow(1).sub_ref(&Scalar::q_pow(-1)).inv().unwrap());
        let kk = FreeMonomial { word: vec![], torus: vec![1, -1] };
        assert_eq!(p.coeff(&kk).unwrap(), &front.neg_ref());
        let kk2 = FreeMonomial { word: vec![], torus: vec![-1, 1] };
        assert_eq!(p.coeff(&kk2).unwrap(), &front);
    }

    #[test]
    fn kappa_validation_rejects_moved_node() {
        let root = RootData::new(vec![1, 1], vec![vec![2, 0], vec![0, 2]]).unwrap();
        let bad = IqgParams::new(
            root,
            vec![1, 0],
            vec![SigmaValue::Formal, SigmaValue::Formal],
            vec![Scalar::one(), Scalar::zero()],
            vec![Parity::Even, Parity::Even],
            Vec::new(),
        );
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn q1_specialization_of_torus_weight_is_plain_commutation() {
        let root = RootData::new(vec![1, 1], vec![vec![2, -1], vec![-1, 2]]).unwrap();
        // A2 with tau swapping the nodes: a_(1, tau 1) = -1.
        let params = IqgParams::new(
            root,
            vec![1, 0],
            vec![SigmaValue::Formal, SigmaValue::Formal],
            vec![Scalar::zero(), Scalar::zero()],
            vec![Parity::Even, Parity::Even],
            vec![KmuDecl { name: "Kmu".into(), pairing: vec![1, -1] }],
        )
        .unwrap();
        let pres = emit_presentation(&params).unwrap();
        let q1 = specialize_presentation_q1(&pres, &Scalar::one()).unwrap();
        let weight = q1
            .relations
            .iter()
            .find(|r| r.kind == RelKind::Weight)
            .expect("weight relation present");
        // q_i^(-<mu, alpha_i>) -> 1: the relation becomes a commutator.
        for (_, c) in weight.poly.iter() {
            assert!(constant_value(c).map(i64::abs) == Some(1));
        }
    }
}

//! Row producers for every verification suite. All grids are enumerated
//! deterministically; independent cells run on the rayon pool and are
//! re-sorted afterwards, so reports are byte-stable for a fixed config.

use rayon::prelude::*;

use qserre_core::bfree::{
    bar_check, convert_to_monomial_form, iserre_poly, parity_independence_check, rescale_check,
    sij_poly, varpi_serre_check, BarDecl, CommCtx, FreeMonomial, FreePoly, IqgParams, Letter, B1,
    B2,
};
use qserre_core::identities::{
    check_recursion, eval_g, eval_g00, eval_h, eval_t, eval_t_mutated, h_p2_zero_closed_form,
    replay_theorem_g, trace_is_consistent, GArgs, RecursionRule, TArgs,
};
use qserre_core::qcomb::{qfact, qint, QBase};
use qserre_core::sampling::{confluence_words, order_seeds, recursion_samples, replay_samples};
use qserre_core::ualg::{
    coefficient_bridge_check, extract_s, iserre_check, varpi_check_rank1, CartanData, Engine,
    LambdaMode, Parity, SVariant, SerreCase, StarWeight, StratumElement,
};
use qserre_core::{Report, Scalar};

use crate::runner::Row;

pub type SuiteResult = Result<Vec<Row>, String>;

fn report_rows<I>(iter: I) -> Vec<Row>
where
    I: IntoIterator<Item = Report>,
{
    iter.into_iter().map(Row::from_report).collect()
}

// ---------------------------------------------------------------------------
// identity suites
// ---------------------------------------------------------------------------

pub fn t_rows(w: (i64, i64), u: (i64, i64), l: (i64, i64), falsify: bool) -> SuiteResult {
    let mut cells = Vec::new();
    for wv in w.0..=w.1 {
        for uv in u.0..=u.1 {
            for lv in l.0..=l.1 {
                if uv < 0 || lv < 0 || (uv == 0 && lv == 0) {
                    continue;
                }
                cells.push((wv, uv, lv));
            }
        }
    }
    if cells.is_empty() {
        return Err("empty T grid: u and l must not both be 0".into());
    }
    Ok(cells
        .into_par_iter()
        .map(|(wv, uv, lv)| {
            let args = TArgs::new(wv, uv, lv).expect("validated");
            let value = if falsify { eval_t_mutated(args) } else { eval_t(args) };
            Row::from_report(Report::from_zero_check(
                "identity:t",
                format!("w={wv} u={uv} l={lv}"),
                value.is_zero(),
                || value.to_string(),
            ))
        })
        .collect())
}

pub fn g_rows(
    w: (i64, i64),
    u: (i64, i64),
    l: (i64, i64),
    p0: (i64, i64),
    p1: (i64, i64),
    p2: (i64, i64),
) -> SuiteResult {
    let mut cells = Vec::new();
    for wv in w.0..=w.1 {
        for uv in u.0.max(0)..=u.1 {
            for lv in l.0.max(1)..=l.1 {
                for p0v in p0.0..=p0.1 {
                    for p1v in p1.0..=p1.1 {
                        for p2v in p2.0..=p2.1 {
                            cells.push((wv, uv, lv, p0v, p1v, p2v));
                        }
                    }
                }
            }
        }
    }
    if cells.is_empty() {
        return Err("empty G grid: the vanishing claim needs l >= 1".into());
    }
    Ok(cells
        .into_par_iter()
        .map(|(wv, uv, lv, p0v, p1v, p2v)| {
            let args = GArgs::new(wv, uv, lv, p0v, p1v, p2v).expect("validated");
            let value = eval_g(args);
            Row::from_report(Report::from_zero_check(
                "identity:g",
                format!("w={wv} u={uv} l={lv} p0={p0v} p1={p1v} p2={p2v}"),
                value.is_zero(),
                || value.to_string(),
            ))
        })
        .collect())
}

pub fn h_rows(w: (i64, i64), u: (i64, i64), p1: (i64, i64), p2: (i64, i64)) -> SuiteResult {
    let mut cells = Vec::new();
    for wv in w.0..=w.1 {
        for uv in u.0.max(0)..=u.1 {
            for p1v in p1.0..=p1.1 {
                for p2v in p2.0..=p2.1 {
                    cells.push((wv, uv, p1v, p2v));
                }
            }
        }
    }
    if cells.is_empty() {
        return Err("empty H grid".into());
    }
    let mut rows: Vec<Row> = cells
        .par_iter()
        .map(|&(wv, uv, p1v, p2v)| {
            let diff = eval_g00(wv, uv, p1v, p2v).sub_ref(&eval_h(uv, p1v, p2v));
            Row::from_report(Report::from_zero_check(
                "identity:g00-h",
                format!("w={wv} u={uv} p1={p1v} p2={p2v}"),
                diff.is_zero(),
                || diff.to_string(),
            ))
        })
        .collect();
    // The p2 = 0 slice also matches the closed binomial form.
    let closed: Vec<Row> = cells
        .par_iter()
        .filter(|&&(_, _, _, p2v)| p2v == 0)
        .map(|&(_, uv, p1v, _)| (uv, p1v))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|(uv, p1v)| {
            let diff = eval_h(uv, p1v, 0).sub_ref(&h_p2_zero_closed_form(uv, p1v));
            Row::from_report(Report::from_zero_check(
                "identity:h-closed-form",
                format!("u={uv} p1={p1v}"),
                diff.is_zero(),
                || diff.to_string(),
            ))
        })
        .collect();
    rows.extend(closed);
    Ok(rows)
}

// ---------------------------------------------------------------------------
// recursions and replay
// ---------------------------------------------------------------------------

pub fn recursion_rows(rules: &[RecursionRule], samples: usize, seed: u64) -> SuiteResult {
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    let mut jobs = Vec::new();
    for &rule in rules {
        for (args, k) in recursion_samples(rule, samples, seed) {
            jobs.push((rule, args, k));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(rule, args, k)| {
            Row::from_report(check_recursion(rule, args, k).expect("sampled in-domain"))
        })
        .collect())
}

pub fn replay_rows(samples: usize, seed: u64) -> SuiteResult {
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    Ok(replay_samples(samples, seed)
        .into_par_iter()
        .map(replay_one)
        .collect())
}

pub fn replay_one(args: GArgs) -> Row {
    match replay_theorem_g(args) {
        Ok(trace) => {
            let ok = trace.sound && trace.final_value.is_zero() && trace_is_consistent(&trace);
            Row::from_report(Report::from_zero_check(
                "proof:replay",
                format!("{args} steps={}", trace.steps.len()),
                ok,
                || {
                    trace
                        .steps
                        .iter()
                        .filter(|s| !s.check)
                        .map(|s| format!("{}[{}] -> {}", s.rule, s.args, s.value))
                        .collect::<Vec<_>>()
                        .join("; ")
                },
            ))
        }
        Err(e) => Row::from_report(Report::fail("proof:replay", args.to_string(), e.to_string())),
    }
}

// ---------------------------------------------------------------------------
// engine suites
// ---------------------------------------------------------------------------

pub fn idp_rows(m: (i64, i64), parities: &[Parity]) -> SuiteResult {
    if m.0 < 0 || m.1 < m.0 {
        return Err("invalid m range".into());
    }
    let engine = Engine::new(CartanData::for_a12(-2).map_err(|e| e.to_string())?);
    let mut jobs = Vec::new();
    for mv in m.0..=m.1 {
        for &p in parities {
            jobs.push((mv as u32, p));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(mv, p)| {
            let w = match p {
                Parity::Even => StarWeight::even(0),
                Parity::Odd => StarWeight::odd(0),
            };
            let lhs = engine.idp_engine(mv, p, w).expect("compatible");
            let rhs = engine.expand_idp_closed(mv, p, w).expect("compatible");
            let diff = lhs.sub(&rhs);
            Row::from_report(Report::from_zero_check(
                "idp:engine-vs-closed",
                format!("m={mv} parity={p}"),
                diff.is_zero(),
                || diff.to_string(),
            ))
        })
        .collect())
}

pub fn iserre_rows(a12s: &[i64], case: Option<SerreCase>) -> SuiteResult {
    let mut jobs = Vec::new();
    for &a12 in a12s {
        if a12 >= 0 {
            return Err(format!("a12 = {a12} must be negative for the iSerre check"));
        }
        let cases: Vec<SerreCase> = match case {
            Some(c) => {
                if !c.compatible_with(a12) {
                    return Err(format!("case {} incompatible with a12 = {a12}", c.name()));
                }
                vec![c]
            }
            None => SerreCase::cases_for(a12).to_vec(),
        };
        for c in cases {
            jobs.push((a12, c));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(a12, c)| {
            let engine = Engine::new(CartanData::for_a12(a12).expect("valid"));
            Row::from_report(iserre_check(&engine, c).expect("compatible"))
        })
        .collect())
}

pub fn bridge_rows(a12s: &[i64], case: Option<SerreCase>) -> SuiteResult {
    let mut jobs = Vec::new();
    for &a12 in a12s {
        if a12 >= 0 {
            return Err(format!("a12 = {a12} must be negative for the bridge check"));
        }
        let cases: Vec<SerreCase> = match case {
            Some(c) => {
                if !c.compatible_with(a12) {
                    return Err(format!("case {} incompatible with a12 = {a12}", c.name()));
                }
                vec![c]
            }
            None => SerreCase::cases_for(a12).to_vec(),
        };
        for c in cases {
            jobs.push((a12, c));
        }
    }
    let mut rows: Vec<Row> = jobs
        .into_par_iter()
        .map(|(a12, c)| {
            let engine = Engine::new(CartanData::for_a12(a12).expect("valid"));
            Row::from_report(coefficient_bridge_check(&engine, c).expect("compatible"))
        })
        .collect();
    rows.extend(svariant_rows(a12s)?);
    Ok(rows)
}

/// The S-variant identifications against T at concrete weights, on the
/// monomial-family domain.
fn svariant_rows(a12s: &[i64]) -> SuiteResult {
    let mut jobs = Vec::new();
    for &a12 in a12s {
        let even = a12.rem_euclid(2) == 0;
        let m = if even { -a12 / 2 } else { (1 - a12) / 2 };
        let d = 1 - a12;
        for l0 in -2..=2i64 {
            for y in 0..=d {
                for u in 0..=(d / 2) {
                    for ell in 0..=d {
                        if u + ell == 0 || ell + y + 2 * u > d {
                            continue;
                        }
                        jobs.push((a12, even, m, l0, y, u, ell));
                    }
                }
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .flat_map(|(a12, even, m, l0, y, u, ell)| {
            let engine =
                Engine::with_lambda(CartanData::for_a12(a12).expect("valid"), LambdaMode::Concrete(l0));
            let mut out = Vec::new();
            if even {
                let s = extract_s(&engine, SVariant::S, y, u, ell).expect("in-domain");
                let w = 2 * m + 2 - 2 * l0 - 2 * ell - 4 * u - y;
                let t = eval_t(TArgs::new(w, u, ell).expect("valid"));
                let diff = s.sub_ref(&t);
                out.push(Row::from_report(Report::from_zero_check(
                    "svariant:s-eq-t",
                    format!("a12={a12} l0={l0} y={y} u={u} l={ell}"),
                    diff.is_zero(),
                    || diff.to_string(),
                )));
                let sp = extract_s(&engine, SVariant::SPrime, y, u, ell).expect("in-domain");
                let w = 2 * m + 3 - 2 * l0 - 2 * ell - 4 * u - y;
                let t = eval_t(TArgs::new(w, u, ell).expect("valid"));
                let diff = sp.add_ref(&t);
                out.push(Row::from_report(Report::from_zero_check(
                    "svariant:sprime-eq-minus-t",
                    format!("a12={a12} l0={l0} y={y} u={u} l={ell}"),
                    diff.is_zero(),
                    || diff.to_string(),
                )));
            } else {
                if ell + y + 2 * u <= 2 * m {
                    let s2 = extract_s(&engine, SVariant::SDoublePrime, y, u, ell).expect("in-domain");
                    let w = 2 * m + 1 - 2 * l0 - 2 * ell - 4 * u - y;
                    let t = eval_t(TArgs::new(w, u, ell).expect("valid"));
                    let diff = s2.add_ref(&t);
                    out.push(Row::from_report(Report::from_zero_check(
                        "svariant:sdouble-eq-minus-t",
                        format!("a12={a12} l0={l0} y={y} u={u} l={ell}"),
                        diff.is_zero(),
                        || diff.to_string(),
                    )));
                    // S''' = q1-prefactor * S with the matching even datum.
                    let sym_odd = Engine::new(CartanData::for_a12(a12).expect("valid"));
                    let sym_even = Engine::new(CartanData::for_a12(a12 - 1).expect("valid"));
                    let lhs = extract_s(&sym_odd, SVariant::STriplePrime, y, u, ell).expect("in-domain");
                    let rhs = Scalar::q_pow(-(2 * u + 2 * y) * (ell + u - 1))
                        .mul_ref(&extract_s(&sym_even, SVariant::S, y, u, ell).expect("in-domain"));
                    let diff = lhs.sub_ref(&rhs);
                    out.push(Row::from_report(Report::from_zero_check(
                        "svariant:striple-prefactor-s",
                        format!("a12={a12} y={y} u={u} l={ell}"),
                        diff.is_zero(),
                        || diff.to_string(),
                    )));
                }
            }
            out
        })
        .collect())
}

// ---------------------------------------------------------------------------
// free-algebra suites
// ---------------------------------------------------------------------------

pub fn convert_rows(a12s: &[i64]) -> SuiteResult {
    let base = QBase::q(1);
    let sigma = Scalar::sigma();
    let mut rows = Vec::new();
    for &a12 in a12s {
        let table =
            convert_to_monomial_form(a12, &sigma, base).map_err(|e| e.to_string())?;
        // Round-trip: S12 - C must equal [1 - a12]! times the iSerre sum.
        let ctx = CommCtx::letters_only();
        let b1 = FreePoly::letter(B1, 0);
        let b2 = FreePoly::letter(B2, 0);
        let mut c_poly = FreePoly::zero();
        for (word, coeff) in &table {
            c_poly.add_term(FreeMonomial { word: word.clone(), torus: vec![] }, coeff);
        }
        let recon = sij_poly(a12, &b1, &b2, base, &ctx).sub(&c_poly);
        let direct = iserre_poly(a12, Parity::Even, &sigma, base)
            .map_err(|e| e.to_string())?
            .scale(&qfact(1 - a12, base).map_err(|e| e.to_string())?);
        let diff = recon.sub(&direct);
        rows.push(Row::from_report(Report::from_zero_check(
            "convert:round-trip",
            format!("a12={a12}"),
            diff.is_zero(),
            || diff.to_string(),
        )));
        if let Some(expected) = published_table(a12) {
            let mut ok = table.len() == expected.len();
            let mut bad = String::new();
            for (word, coeff) in &expected {
                match table.iter().find(|(w, _)| w == word) {
                    Some((_, got)) if got == coeff => {}
                    Some((_, got)) => {
                        ok = false;
                        bad = format!("word {word:?}: got {got}, expected {coeff}");
                        break;
                    }
                    None => {
                        ok = false;
                        bad = format!("word {word:?} missing");
                        break;
                    }
                }
            }
            rows.push(Row::from_report(Report::from_zero_check(
                "convert:published-table",
                format!("a12={a12}"),
                ok,
                || bad,
            )));
        }
    }
    Ok(rows)
}

/// The published low-rank coefficient tables (a12 in [-4, -1]).
fn published_table(a12: i64) -> Option<Vec<(Vec<Letter>, Scalar)>> {
    let base = QBase::q(1);
    let qs = Scalar::monomial(1, 1, 0, 1);
    let w = |i: usize, j: usize| {
        let mut w = vec![B1; i];
        w.push(B2);
        w.extend(std::iter::repeat(B1).take(j));
        w
    };
    let two = qint(2, base);
    let three = qint(3, base);
    let four = qint(4, base);
    let five = qint(5, base);
    let two_sq = qint(2, QBase::q_squared(1));
    match a12 {
        -1 => Some(vec![(w(0, 0), qs)]),
        -2 => {
            let c = two.mul_ref(&two).mul_ref(&qs).neg_ref();
            Some(vec![(w(1, 0), c.clone()), (w(0, 1), c.neg_ref())])
        }
        -3 => {
            let mid = two
                .mul_ref(
                    &two.mul_ref(&four)
                        .add_ref(&Scalar::q_pow(2))
                        .add_ref(&Scalar::q_pow(-2)),
                )
                .mul_ref(&qs)
                .neg_ref();
            let outer = three.mul_ref(&three).add_ref(&Scalar::one()).mul_ref(&qs);
            let b2c = three.mul_ref(&three).mul_ref(&qs.mul_ref(&qs)).neg_ref();
            Some(vec![
                (w(1, 1), mid),
                (w(2, 0), outer.clone()),
                (w(0, 2), outer),
                (w(0, 0), b2c),
            ])
        }
        -4 => {
            let c3 = two
                .mul_ref(&two)
                .mul_ref(&Scalar::one().add_ref(&two_sq.mul_ref(&two_sq)))
                .mul_ref(&qs)
                .neg_ref();
            let c21 = two.mul_ref(&two).mul_ref(&five).mul_ref(&three).mul_ref(&qs);
            let c1 = two
                .mul_ref(&two)
                .mul_ref(&four)
                .mul_ref(&four)
                .mul_ref(&qs.mul_ref(&qs));
            Some(vec![
                (w(3, 0), c3.clone()),
                (w(0, 3), c3.neg_ref()),
                (w(2, 1), c21.clone()),
                (w(1, 2), c21.neg_ref()),
                (w(1, 0), c1.clone()),
                (w(0, 1), c1.neg_ref()),
            ])
        }
        _ => None,
    }
}

pub fn parity_rows(a12s: &[i64]) -> SuiteResult {
    Ok(report_rows(
        a12s.iter()
            .map(|&a12| parity_independence_check(a12, QBase::q(1)).expect("valid a12")),
    ))
}

pub fn rescale_rows(a12s: &[i64]) -> SuiteResult {
    a12s.iter()
        .map(|&a12| {
            rescale_check(a12, QBase::q(1))
                .map(Row::from_report)
                .map_err(|e| e.to_string())
        })
        .collect()
}

pub fn varpi_rows(a12s: &[i64]) -> SuiteResult {
    let mut rows = Vec::new();
    for &a12 in a12s {
        let cartan = CartanData::for_a12(a12).map_err(|e| e.to_string())?;
        rows.push(Row::from_report(
            varpi_serre_check(&cartan).map_err(|e| e.to_string())?,
        ));
    }
    Ok(rows)
}

pub fn varpi_rank1_rows(max_power: u32, lambda: (i64, i64)) -> SuiteResult {
    let cartan = CartanData::for_a12(-2).map_err(|e| e.to_string())?;
    let report =
        varpi_check_rank1(&cartan, max_power, lambda.0..=lambda.1).map_err(|e| e.to_string())?;
    Ok(vec![Row::from_report(report)])
}

pub fn bar_rows(params: &IqgParams, decl: &BarDecl) -> SuiteResult {
    Ok(vec![Row::from_report(
        bar_check(params, decl).map_err(|e| e.to_string())?,
    )])
}

// ---------------------------------------------------------------------------
// confluence
// ---------------------------------------------------------------------------

pub fn confluence_rows(a12s: &[i64], count: usize, seed: u64) -> SuiteResult {
    let mut jobs = Vec::new();
    for &a12 in a12s {
        let words = confluence_words(count, seed ^ a12.unsigned_abs());
        let seeds = order_seeds(count, seed ^ a12.unsigned_abs());
        for (i, (word, order)) in words.into_iter().zip(seeds).enumerate() {
            jobs.push((a12, i, word, order));
        }
    }
    let rows: Vec<Row> = jobs
        .into_par_iter()
        .map(|(a12, i, word, order)| {
            let engine = Engine::new(CartanData::for_a12(a12).expect("valid"));
            let w0 = StarWeight::even(0);
            let mut eager = engine.unit(w0);
            let mut deferred = engine.unit(w0);
            for letter in word.iter().rev() {
                use qserre_core::sampling::WordLetter;
                eager = match letter {
                    WordLetter::E(k) => engine.act_e1(*k, &eager).expect("in cap"),
                    WordLetter::F(k) => engine.act_f1(*k, &eager).expect("in cap"),
                    WordLetter::F2 => engine.act_f2(&eager).expect("single F2"),
                };
                deferred = match letter {
                    WordLetter::E(k) => engine.act_e1(*k, &deferred).expect("in cap"),
                    WordLetter::F(k) => engine.act_f1(*k, &deferred).expect("in cap"),
                    WordLetter::F2 => engine.act_f2_unreduced(&deferred).expect("single F2"),
                };
            }
            let reduced = engine.reduce_qserre_seeded(&deferred, Some(order));
            let diff: StratumElement = eager.sub(&reduced);
            Row::from_report(Report::from_zero_check(
                "confluence",
                format!("a12={a12} word={i}"),
                diff.is_zero(),
                || diff.to_string(),
            ))
        })
        .collect();
    Ok(rows)
}

// ---------------------------------------------------------------------------
// the full acceptance composition
// ---------------------------------------------------------------------------

pub fn all_rows(seed: u64) -> SuiteResult {
    let mut rows = Vec::new();
    rows.extend(t_rows((-8, 8), (0, 6), (0, 6), false)?);
    rows.extend(recursion_rows(&RecursionRule::ALL, 200, seed)?);
    rows.extend(h_rows((-6, 6), (0, 5), (-4, 4), (-4, 4))?);
    rows.extend(replay_rows(100, seed)?);
    rows.extend(idp_rows((0, 8), &[Parity::Even, Parity::Odd])?);
    rows.extend(iserre_rows(&[-1, -2, -3, -4, -5, -6], None)?);
    rows.extend(bridge_rows(&[-4, -3, -2, -1], None)?);
    rows.extend(convert_rows(&[-1, -2, -3, -4])?);
    rows.extend(parity_rows(&[-6, -5, -4, -3, -2, -1, 0])?);
    rows.extend(varpi_rows(&[-6, -5, -4, -3, -2, -1, 0])?);
    rows.extend(varpi_rank1_rows(6, (-3, 3))?);
    for a12 in [-4, -3, -2, -1] {
        let params = IqgParams::split_rank2(a12, a12, 1, 1).map_err(|e| e.to_string())?;
        rows.extend(bar_rows(&params, &BarDecl::sigma_q_fixed(1))?);
    }
    // Negative control: a perturbed bar image must fail, reported as a pass
    // of the control itself.
    let params = IqgParams::split_rank2(-2, -2, 1, 1).map_err(|e| e.to_string())?;
    let bad = BarDecl { sigma_image: Scalar::monomial(1, 4, 0, 1) };
    let control = bar_check(&params, &bad).map_err(|e| e.to_string())?;
    rows.push(Row::from_report(Report::from_zero_check(
        "bar:negative-control",
        "bar(sq) = q^2 sq",
        !control.pass && control.witness.is_some(),
        || "perturbed declaration unexpectedly passed".to_string(),
    )));
    rows.extend(rescale_rows(&[-4, -3, -2, -1, 0])?);
    rows.extend(confluence_rows(&[-1, -2, -3], 1000, seed)?);
    Ok(rows)
}

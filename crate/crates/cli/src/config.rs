//! Flat key-value config files for the presentation subcommands, plus a
//! small parser for scalar literals (monomials and rationals).
//!
//! Example:
//!
//!   rank = 2
//!   eps = 1,1
//!   row1 = 2,-2
//!   row2 = -2,2
//!   tau = 1,2
//!   sigma1 = formal
//!   sigma2 = q^-1
//!   kappa1 = 0
//!   parity1 = even
//!   kmu = Kmu:1,-1
//!   bar_sigma_image = q^2*s
//!   q1_sigma = 1

use std::collections::BTreeMap;

use qserre_core::bfree::{IqgParams, KmuDecl, RootData, SigmaValue};
use qserre_core::scalar::{LaurentPoly, Scalar};
use qserre_core::ualg::Parity;

pub struct Config {
    entries: BTreeMap<String, Vec<String>>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected 'key = value'", lineno + 1));
            };
            entries
                .entry(key.trim().to_string())
                .or_default()
                .push(value.trim().to_string());
        }
        Ok(Self { entries })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).and_then(|v| v.first()).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str, String> {
        self.get(key).ok_or_else(|| format!("missing key '{key}'"))
    }

    fn int_list(&self, key: &str) -> Result<Vec<i64>, String> {
        self.require(key)?
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{key}: {e}")))
            .collect()
    }

    pub fn iqg_params(&self) -> Result<IqgParams, String> {
        let rank: usize = self
            .require("rank")?
            .parse()
            .map_err(|e| format!("rank: {e}"))?;
        let eps = self.int_list("eps")?;
        let mut a = Vec::with_capacity(rank);
        for i in 1..=rank {
            a.push(self.int_list(&format!("row{i}"))?);
        }
        let tau_1based = self.int_list("tau")?;
        if tau_1based.len() != rank {
            return Err("tau length mismatch".into());
        }
        let tau: Vec<usize> = tau_1based
            .iter()
            .map(|&t| {
                if t >= 1 && (t as usize) <= rank {
                    Ok(t as usize - 1)
                } else {
                    Err(format!("tau entry {t} out of range"))
                }
            })
            .collect::<Result<_, _>>()?;
        let mut sigma = Vec::with_capacity(rank);
        let mut kappa = Vec::with_capacity(rank);
        let mut parity = Vec::with_capacity(rank);
        for i in 1..=rank {
            let s = self.get(&format!("sigma{i}")).unwrap_or("formal");
            sigma.push(if s == "formal" {
                SigmaValue::Formal
            } else {
                SigmaValue::Value(parse_scalar(s)?)
            });
            let k = self.get(&format!("kappa{i}")).unwrap_or("0");
            kappa.push(parse_scalar(k)?);
            let p = self.get(&format!("parity{i}")).unwrap_or("even");
            parity.push(match p {
                "even" => Parity::Even,
                "odd" => Parity::Odd,
                other => return Err(format!("parity{i}: unknown value '{other}'")),
            });
        }
        let mut kmu = Vec::new();
        if let Some(decls) = self.entries.get("kmu") {
            for decl in decls {
                let Some((name, pairing)) = decl.split_once(':') else {
                    return Err(format!("kmu '{decl}': expected name:pairing"));
                };
                let pairing: Vec<i64> = pairing
                    .split(',')
                    .map(|t| t.trim().parse::<i64>().map_err(|e| format!("kmu: {e}")))
                    .collect::<Result<_, _>>()?;
                kmu.push(KmuDecl { name: name.trim().to_string(), pairing });
            }
        }
        let root = RootData::new(eps, a).map_err(|e| e.to_string())?;
        IqgParams::new(root, tau, sigma, kappa, parity, kmu).map_err(|e| e.to_string())
    }

    pub fn bar_sigma_image(&self) -> Result<Scalar, String> {
        parse_scalar(self.require("bar_sigma_image")?)
    }

    pub fn q1_sigma(&self) -> Result<Scalar, String> {
        parse_scalar(self.get("q1_sigma").unwrap_or("1"))
    }
}

/// Parse a scalar literal: an integer or rational `a/b`, or a monomial of
/// the form `[c][*q^k][*L^k][*s^k]` (any subset, factors joined by `*`).
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|e| format!("'{text}': {e}"))?;
        let d: i64 = den.trim().parse().map_err(|e| format!("'{text}': {e}"))?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        return Scalar::from_parts(LaurentPoly::constant(n), LaurentPoly::constant(d))
            .map_err(|e| e.to_string());
    }
    let mut coeff: i64 = 1;
    let mut exps = [0i64; 3];
    let mut saw_factor = false;
    for factor in text.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(format!("'{text}': empty factor"));
        }
        if let Ok(c) = f.parse::<i64>() {
            coeff = coeff.saturating_mul(c);
            saw_factor = true;
            continue;
        }
        let (var, exp) = match f.split_once('^') {
            Some((v, e)) => (v, e.parse::<i64>().map_err(|err| format!("'{f}': {err}"))?),
            None => (f, 1),
        };
        let idx = match var {
            "q" => 0,
            "L" => 1,
            "s" => 2,
            other => return Err(format!("unknown variable '{other}'")),
        };
        exps[idx] += exp;
        saw_factor = true;
    }
    if !saw_factor {
        return Err(format!("'{text}': empty scalar"));
    }
    Ok(Scalar::monomial(coeff, exps[0], exps[1], exps[2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_literals() {
        assert_eq!(parse_scalar("1").unwrap(), Scalar::one());
        assert_eq!(parse_scalar("q^-1").unwrap(), Scalar::q_pow(-1));
        assert_eq!(parse_scalar("q^2*s").unwrap(), Scalar::monomial(1, 2, 0, 1));
        assert_eq!(parse_scalar("-3*L^2").unwrap(), Scalar::monomial(-3, 0, 2, 0));
        assert!(parse_scalar("x^2").is_err());
        let half = parse_scalar("1/2").unwrap();
        assert_eq!(half.to_string(), "(1) / (2)");
    }

    #[test]
    fn config_round_trip() {
        let text = "rank = 2\neps = 1,1\nrow1 = 2,-2\nrow2 = -2,2\ntau = 1,2\nsigma1 = formal\nsigma2 = formal\n";
        let cfg = Config::parse(text).unwrap();
        let params = cfg.iqg_params().unwrap();
        assert!(params.is_split());
    }
}

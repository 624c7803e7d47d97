//! Batch verification front-end: every checker with parameter ranges,
//! emitting deterministic text or JSON reports.
//!
//! Exit codes: 0 when every claim passes, 1 when any claim fails (the
//! nonzero witness is included), 2 on usage or config errors.

mod config;
mod runner;
mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qserre_core::bfree::{emit_presentation, specialize_presentation_q1, BarDecl};
use qserre_core::identities::{GArgs, RecursionRule};
use qserre_core::ualg::{Parity, SerreCase};

use runner::{emit, finalize, Format, Row};

#[derive(Parser)]
#[command(name = "qserre", version, about = "Exact verification of the q-binomial identity family and the iSerre relation machinery")]
struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Include per-row timings (off by default so reports are byte-stable).
    #[arg(long, global = true)]
    timings: bool,
    /// Seed for the sampled suites; echoed in the report.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Identity suites: t, g, h.
    Identity {
        #[command(subcommand)]
        which: IdentityCmd,
    },
    /// Check one recursion rule (or all) on seeded samples.
    Recursion {
        /// gw1, gp1, gp2, gl1, gk, godd, hswap, hp1, hp2, g00constw or all.
        #[arg(long, default_value = "all")]
        rule: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Shift for the gk rule (sampled when omitted).
        #[arg(long)]
        k: Option<i64>,
    },
    /// Proof machinery.
    Proof {
        #[command(subcommand)]
        which: ProofCmd,
    },
    /// iSerre vanishing on the stratum engine.
    Iserre {
        /// One or more Cartan entries, repeatable: --a12 -3 --a12 -5.
        #[arg(long, required = true)]
        a12: Vec<i64>,
        /// EE, OO, OE or EO; both compatible cases when omitted.
        #[arg(long)]
        case: Option<String>,
    },
    /// idivided powers: engine vs closed form.
    Idp {
        /// Range of powers, e.g. "0:8".
        #[arg(long, value_parser = parse_range, default_value = "0:8")]
        m: (i64, i64),
        #[arg(long, default_value = "both")]
        parity: String,
        /// Compare the engine route against the closed form (the default
        /// and only mode).
        #[arg(long)]
        compare: bool,
    },
    /// Coefficient bridge on the unreduced monomial family.
    Bridge {
        #[arg(long, required = true)]
        a12: Vec<i64>,
        #[arg(long)]
        case: Option<String>,
    },
    /// Low-rank monomial conversion against the published tables.
    Convert {
        #[arg(long, required = true)]
        a12: Vec<i64>,
    },
    /// Emit a Serre presentation from a config file.
    Present {
        #[arg(long)]
        config: String,
    },
    /// Bar-invariance of an emitted presentation.
    Bar {
        #[arg(long)]
        config: String,
    },
    /// Rescaling bookkeeping between distinguished and generic parameters.
    Rescale {
        #[arg(long, required = true)]
        a12: Vec<i64>,
    },
    /// q = 1 specialization of an emitted presentation.
    Q1 {
        #[arg(long)]
        config: String,
    },
    /// The full verification suite at acceptance scale.
    All,
}

#[derive(Subcommand)]
enum IdentityCmd {
    /// T(w, u, l) = 0 on a grid.
    T(TGrid),
    /// G(w, u, l; p0, p1, p2) = 0 for l >= 1 on a grid.
    G(GGrid),
    /// G00 = H on a grid, plus the closed form on the p2 = 0 slice.
    H(HGrid),
}

#[derive(Args)]
struct TGrid {
    #[arg(long, value_parser = parse_range, default_value = "-8:8")]
    w: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "0:6")]
    u: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "0:6")]
    l: (i64, i64),
    /// Test-only hook: flip the sign of the second double-sum.
    #[arg(long, hide = true)]
    falsify_t: bool,
}

#[derive(Args)]
struct GGrid {
    #[arg(long, value_parser = parse_range, default_value = "-4:4")]
    w: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "0:3")]
    u: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "1:3")]
    l: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "-2:2")]
    p0: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "-2:2")]
    p1: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "-2:2")]
    p2: (i64, i64),
}

#[derive(Args)]
struct HGrid {
    #[arg(long, value_parser = parse_range, default_value = "-6:6")]
    w: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "0:5")]
    u: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "-4:4")]
    p1: (i64, i64),
    #[arg(long, value_parser = parse_range, default_value = "-4:4")]
    p2: (i64, i64),
}

#[derive(Subcommand)]
enum ProofCmd {
    /// Replay the vanishing derivation for G.
    Replay {
        /// One tuple "w,u,l,p0,p1,p2"; seeded samples when omitted.
        #[arg(long)]
        args: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (
            a.trim().parse::<i64>().map_err(|e| e.to_string())?,
            b.trim().parse::<i64>().map_err(|e| e.to_string())?,
        ),
        None => {
            let v = s.trim().parse::<i64>().map_err(|e| e.to_string())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn parse_case(s: &Option<String>) -> Option<SerreCase> {
    s.as_ref().map(|name| {
        SerreCase::from_name(name)
            .unwrap_or_else(|| usage_error(&format!("unknown case '{name}' (EE, OO, OE, EO)")))
    })
}

fn read_config(path: &str) -> config::Config {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| usage_error(&format!("cannot read config '{path}': {e}")));
    config::Config::parse(&text).unwrap_or_else(|e| usage_error(&format!("config '{path}': {e}")))
}

fn init_threads() {
    if let Ok(v) = std::env::var("QSERRE_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() {
    let cli = Cli::parse();
    init_threads();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let seed = cli.seed;

    let (name, cfg, rows): (&str, serde_json::Value, Vec<Row>) = match &cli.command {
        Command::Identity { which } => match which {
            IdentityCmd::T(g) => {
                let rows = suites::t_rows(g.w, g.u, g.l, g.falsify_t)
                    .unwrap_or_else(|e| usage_error(&e));
                (
                    "identity t",
                    json!({"w": g.w, "u": g.u, "l": g.l, "falsify": g.falsify_t, "seed": seed}),
                    rows,
                )
            }
            IdentityCmd::G(g) => {
                let rows = suites::g_rows(g.w, g.u, g.l, g.p0, g.p1, g.p2)
                    .unwrap_or_else(|e| usage_error(&e));
                (
                    "identity g",
                    json!({"w": g.w, "u": g.u, "l": g.l, "p0": g.p0, "p1": g.p1, "p2": g.p2, "seed": seed}),
                    rows,
                )
            }
            IdentityCmd::H(g) => {
                let rows =
                    suites::h_rows(g.w, g.u, g.p1, g.p2).unwrap_or_else(|e| usage_error(&e));
                (
                    "identity h",
                    json!({"w": g.w, "u": g.u, "p1": g.p1, "p2": g.p2, "seed": seed}),
                    rows,
                )
            }
        },
        Command::Recursion { rule, samples, k } => {
            let rules: Vec<RecursionRule> = if rule == "all" {
                RecursionRule::ALL.to_vec()
            } else {
                vec![RecursionRule::from_name(rule)
                    .unwrap_or_else(|| usage_error(&format!("unknown rule '{rule}'")))]
            };
            let rows = if let Some(k) = k {
                if !(rules.len() == 1 && rules[0].needs_k()) {
                    usage_error("--k applies to --rule gk only");
                }
                let mut out = Vec::new();
                for (args, _) in
                    qserre_core::sampling::recursion_samples(RecursionRule::GK, *samples, seed)
                {
                    out.push(Row::from_report(
                        qserre_core::identities::check_recursion(RecursionRule::GK, args, Some(*k))
                            .unwrap_or_else(|e| usage_error(&e.to_string())),
                    ));
                }
                out
            } else {
                suites::recursion_rows(&rules, *samples, seed).unwrap_or_else(|e| usage_error(&e))
            };
            (
                "recursion",
                json!({"rule": rule, "samples": samples, "seed": seed, "k": k}),
                rows,
            )
        }
        Command::Proof { which } => match which {
            ProofCmd::Replay { args, samples } => {
                let rows = if let Some(tuple) = args {
                    let parts: Vec<i64> = tuple
                        .split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<i64>()
                                .unwrap_or_else(|e| usage_error(&format!("--args: {e}")))
                        })
                        .collect();
                    if parts.len() != 6 {
                        usage_error("--args expects w,u,l,p0,p1,p2");
                    }
                    let g = GArgs::new(parts[0], parts[1], parts[2], parts[3], parts[4], parts[5])
                        .unwrap_or_else(|e| usage_error(&e.to_string()));
                    if g.ell < 1 {
                        usage_error("replay requires l >= 1");
                    }
                    vec![suites::replay_one(g)]
                } else {
                    suites::replay_rows(*samples, seed).unwrap_or_else(|e| usage_error(&e))
                };
                (
                    "proof replay",
                    json!({"args": args, "samples": samples, "seed": seed}),
                    rows,
                )
            }
        },
        Command::Iserre { a12, case } => {
            let rows =
                suites::iserre_rows(a12, parse_case(case)).unwrap_or_else(|e| usage_error(&e));
            ("iserre", json!({"a12": a12, "case": case, "seed": seed}), rows)
        }
        Command::Idp { m, parity, compare: _ } => {
            let parities: Vec<Parity> = match parity.as_str() {
                "both" => vec![Parity::Even, Parity::Odd],
                "even" => vec![Parity::Even],
                "odd" => vec![Parity::Odd],
                other => usage_error(&format!("unknown parity '{other}'")),
            };
            let rows = suites::idp_rows(*m, &parities).unwrap_or_else(|e| usage_error(&e));
            ("idp", json!({"m": m, "parity": parity, "seed": seed}), rows)
        }
        Command::Bridge { a12, case } => {
            let rows =
                suites::bridge_rows(a12, parse_case(case)).unwrap_or_else(|e| usage_error(&e));
            ("bridge", json!({"a12": a12, "case": case, "seed": seed}), rows)
        }
        Command::Convert { a12 } => {
            let rows = suites::convert_rows(a12).unwrap_or_else(|e| usage_error(&e));
            ("convert", json!({"a12": a12, "seed": seed}), rows)
        }
        Command::Present { config } => {
            let cfg = read_config(config);
            let params = cfg.iqg_params().unwrap_or_else(|e| usage_error(&e));
            let pres =
                emit_presentation(&params).unwrap_or_else(|e| usage_error(&e.to_string()));
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "schema": 1,
                    "command": "present",
                    "presentation": pres.to_json(),
                }))
                .expect("serializable")
            );
            std::process::exit(0);
        }
        Command::Bar { config } => {
            let cfg = read_config(config);
            let params = cfg.iqg_params().unwrap_or_else(|e| usage_error(&e));
            let image = cfg.bar_sigma_image().unwrap_or_else(|e| usage_error(&e));
            let rows = suites::bar_rows(&params, &BarDecl { sigma_image: image })
                .unwrap_or_else(|e| usage_error(&e));
            ("bar", json!({"config": config, "seed": seed}), rows)
        }
        Command::Rescale { a12 } => {
            let rows = suites::rescale_rows(a12).unwrap_or_else(|e| usage_error(&e));
            ("rescale", json!({"a12": a12, "seed": seed}), rows)
        }
        Command::Q1 { config } => {
            let cfg = read_config(config);
            let params = cfg.iqg_params().unwrap_or_else(|e| usage_error(&e));
            let sigma = cfg.q1_sigma().unwrap_or_else(|e| usage_error(&e));
            let pres =
                emit_presentation(&params).unwrap_or_else(|e| usage_error(&e.to_string()));
            let q1 = specialize_presentation_q1(&pres, &sigma)
                .unwrap_or_else(|e| usage_error(&e.to_string()));
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "schema": 1,
                    "command": "q1",
                    "presentation": q1.to_json(),
                }))
                .expect("serializable")
            );
            std::process::exit(0);
        }
        Command::All => {
            let rows = suites::all_rows(seed).unwrap_or_else(|e| usage_error(&e));
            ("all", json!({"seed": seed}), rows)
        }
    };

    let rows = finalize(rows, cli.timings);
    emit(name, cfg, &rows, &format);
    if rows.iter().all(|r| r.pass) {
        std::process::exit(0);
    }
    std::process::exit(1);
}

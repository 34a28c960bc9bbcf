//! Command-line surface: words, signs, regions, membership, sampling,
//! decomposition and the verification suites, with deterministic text or
//! JSON output.
//!
//! Exit codes: 0 on success / membership / passing verification, 1 on
//! non-membership or a failed verification (with the first counterexample
//! serialized), 2 on usage errors.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use chevpos::chevalley::ChevalleyAlgebra;
use chevpos::exact::{format_rational, parse_rational, Rational};
use chevpos::group::parse_genword;
use chevpos::positivity::{
    beta_chain, cell_element, decompose_nonneg, region_symbolic, sample_region, suffix_region,
    tits_signs, ChainStatus, Region,
};
use chevpos::quiver::Quiver;
use chevpos::rootsys::{parse_type, word_analysis, RootSystem, Word};
use chevpos::suites::{run_suite, seed_from_env, Suite, SuiteReport, ALL_SUITES};

#[derive(Parser)]
#[command(
    name = "chevpos",
    about = "Chevalley groups from Dynkin quivers and their total-positivity regions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Quiver spec such as "A3: 1>2, 2>3"; fixes the word and the sign
    /// convention.
    #[arg(long, conflicts_with_all = ["type", "word"])]
    quiver: Option<String>,
    /// Cartan type such as A3; combined with --word. The sign convention
    /// comes from the natural orientation (edges i>j with i < j).
    #[arg(long = "type")]
    r#type: Option<String>,
    /// Reduced word as comma-separated vertices, e.g. "1,2,3,1,2,1".
    #[arg(long, requires = "type")]
    word: Option<String>,
}

struct Context {
    alg: Arc<ChevalleyAlgebra>,
    word: Word,
    ordering: Option<chevpos::quiver::IndecOrdering>,
}

impl Input {
    fn resolve(&self) -> Result<Context, String> {
        if let Some(spec) = &self.quiver {
            let quiver = Quiver::parse(spec).map_err(|e| e.to_string())?;
            let word = quiver.leftmost_word().map_err(|e| e.to_string())?;
            let alg = Arc::new(ChevalleyAlgebra::build(&quiver).map_err(|e| e.to_string())?);
            let ordering = quiver.indec_ordering().map_err(|e| e.to_string())?;
            return Ok(Context {
                alg,
                word,
                ordering: Some(ordering),
            });
        }
        let Some(type_str) = &self.r#type else {
            return Err("either --quiver or --type is required".into());
        };
        let (letter, rank) = parse_type(type_str).map_err(|e| e.to_string())?;
        let rs = Arc::new(RootSystem::build(letter, rank).map_err(|e| e.to_string())?);
        let quiver = Quiver::natural(rs.clone());
        let word = match &self.word {
            Some(w) => Word::parse(w, rs.n()).map_err(|e| e.to_string())?,
            None => quiver.leftmost_word().map_err(|e| e.to_string())?,
        };
        let alg = Arc::new(ChevalleyAlgebra::build(&quiver).map_err(|e| e.to_string())?);
        Ok(Context {
            alg,
            word,
            ordering: None,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Word analysis: the (leftmost) word, its beta roots and reducedness.
    Word {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Tits signs of the word, with the sign-convention fingerprint.
    Signs {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// The region: beta expressions and cleared inequalities.
    Region {
        #[command(flatten)]
        input: Input,
        /// Print every beta expression, trivial ones included.
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        json: bool,
    },
    /// Membership of a point: exit 0 for members, 1 otherwise.
    Member {
        #[command(flatten)]
        input: Input,
        /// Comma-separated positive rationals, one per word letter.
        #[arg(long)]
        point: String,
        #[arg(long)]
        json: bool,
    },
    /// Maps a positive vector through the forward chain onto a region point.
    Sample {
        #[command(flatten)]
        input: Input,
        /// Comma-separated positive rationals, one per word letter.
        #[arg(long, conflicts_with = "seed")]
        a: Option<String>,
        /// Draw the vector from a seeded generator instead.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a nonnegative generator word as u- h u+.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Whitespace-separated tokens: +k:t -k:t h<i>:t n<i>.
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Projects a point onto a suffix region; optionally checks the cell
    /// element.
    Suffix {
        #[command(flatten)]
        input: Input,
        /// Prefix length t; the chain runs on letters t+1..m.
        #[arg(long)]
        prefix: usize,
        /// Point of the suffix region, length m - t.
        #[arg(long, default_value = "")]
        point: String,
        /// Also build the cell element and run the Borel check.
        #[arg(long)]
        cell: bool,
        #[arg(long)]
        json: bool,
    },
    /// Runs a verification suite; exit 1 with a reproducer on failure.
    Verify {
        /// One of algebra, generators, conjugation, braid, signs, phi,
        /// region, theorem, cells, monoid, all.
        #[arg(long)]
        suite: String,
        #[arg(long = "type")]
        r#type: String,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Seed; falls back to RCG_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_point(s: &str) -> Result<Vec<Rational>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| parse_rational(p).map_err(|e| e.to_string()))
        .collect()
}

fn rats_to_json(v: &[Rational]) -> Value {
    Value::Array(
        v.iter()
            .map(|r| Value::String(format_rational(r)))
            .collect(),
    )
}

fn region_json(ctx: &Context, region: &Region) -> Value {
    let signs = tits_signs(&ctx.alg, &ctx.word).expect("word is reduced");
    let inequalities: Vec<Value> = region
        .betas
        .iter()
        .enumerate()
        .map(|(k, beta)| {
            json!({
                "k": k + 1,
                "poly": region.positive_numerator(k).to_string(),
                "beta": beta.display(&region.registry).to_string(),
                "trivial": region.trivial[k],
            })
        })
        .collect();
    json!({
        "word": ctx.word.to_string(),
        "inequalities": inequalities,
        "signs": {
            "eps": signs.eps,
            "eps_tilde": signs.eps_tilde,
            "convention": ctx.alg.fingerprint(),
        },
    })
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Word { input, json } => {
            let ctx = input.resolve()?;
            let analysis = word_analysis(ctx.alg.rs(), &ctx.word);
            if json {
                let betas: Vec<Value> = analysis
                    .beta_roots
                    .iter()
                    .map(|r| Value::Array(r.iter().map(|&c| Value::from(c)).collect()))
                    .collect();
                let ordering: Option<Vec<Value>> = ctx.ordering.as_ref().map(|ord| {
                    ord.items
                        .iter()
                        .map(|it| {
                            json!({
                                "vertex": it.vertex,
                                "power": it.power,
                                "root": it.root,
                            })
                        })
                        .collect()
                });
                let out = json!({
                    "word": ctx.word.to_string(),
                    "reduced": analysis.is_reduced,
                    "beta_roots": betas,
                    "ordering": ordering,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("word: {}", ctx.word);
                println!("reduced: {}", analysis.is_reduced);
                for (k, r) in analysis.beta_roots.iter().enumerate() {
                    println!("beta_{}: {:?}", k + 1, r);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Signs { input, json } => {
            let ctx = input.resolve()?;
            let signs = tits_signs(&ctx.alg, &ctx.word).map_err(|e| e.to_string())?;
            if json {
                let out = json!({
                    "word": ctx.word.to_string(),
                    "eps": signs.eps,
                    "eps_tilde": signs.eps_tilde,
                    "convention": ctx.alg.fingerprint(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("word: {}", ctx.word);
                println!("eps:       {:?}", signs.eps);
                println!("eps_tilde: {:?}", signs.eps_tilde);
                println!("convention: {}", ctx.alg.fingerprint());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Region {
            input,
            symbolic,
            json,
        } => {
            let ctx = input.resolve()?;
            let region = region_symbolic(ctx.alg.rs(), &ctx.word).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&region_json(&ctx, &region)).unwrap()
                );
            } else {
                println!("word: {}", ctx.word);
                for (k, beta) in region.betas.iter().enumerate() {
                    if symbolic || !region.trivial[k] {
                        println!(
                            "beta_{} = {}{}",
                            k + 1,
                            beta.display(&region.registry),
                            if region.trivial[k] { "  (trivial)" } else { "" }
                        );
                    }
                }
                println!("region:");
                for p in region.cleared_inequalities() {
                    println!("  {p} > 0");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Member { input, point, json } => {
            let ctx = input.resolve()?;
            let b = parse_point(&point)?;
            let chain = beta_chain(ctx.alg.rs(), &ctx.word, &b).map_err(|e| e.to_string())?;
            let (status, violated) = match chain.status {
                ChainStatus::Member => ("member", None),
                ChainStatus::Boundary(k) => ("boundary", Some(k)),
                ChainStatus::Violated(k) => ("violated", Some(k)),
            };
            let betas: Vec<String> = chain
                .betas
                .iter()
                .map(|b| match b {
                    Some(v) => format_rational(v),
                    None => "undefined".into(),
                })
                .collect();
            if json {
                let out = json!({
                    "status": status,
                    "violated_index": violated,
                    "betas": betas,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("status: {status}");
                if let Some(k) = violated {
                    println!("first nonpositive beta: {k}");
                }
                println!("betas: [{}]", betas.join(", "));
            }
            Ok(if chain.is_member() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Sample {
            input,
            a,
            seed,
            json,
        } => {
            let ctx = input.resolve()?;
            let m = ctx.word.len();
            let avec = match (a, seed) {
                (Some(s), _) => parse_point(&s)?,
                (None, seed) => chevpos::suites::seeded_positive_vector(seed_from_env(seed), m),
            };
            let b = sample_region(&ctx.alg, &ctx.word, &avec).map_err(|e| e.to_string())?;
            if json {
                let out = json!({
                    "word": ctx.word.to_string(),
                    "a": rats_to_json(&avec),
                    "b": rats_to_json(&b),
                    "status": "member",
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                let parts: Vec<String> = b.iter().map(format_rational).collect();
                println!("b: {}", parts.join(","));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            input,
            element,
            json,
        } => {
            let ctx = input.resolve()?;
            let tokens = parse_genword(&ctx.alg, &element).map_err(|e| e.to_string())?;
            let d = decompose_nonneg(&ctx.alg, &tokens).map_err(|e| e.to_string())?;
            if json {
                let part = |p: &chevpos::positivity::CellPart| {
                    json!({
                        "cell": p.word.to_string(),
                        "coords": rats_to_json(&p.coords),
                        "region_coords": rats_to_json(&p.region),
                    })
                };
                let out = json!({
                    "minus": part(&d.minus),
                    "h": {
                        "positive": d.h.positive,
                        "coords": rats_to_json(&d.h.coords),
                    },
                    "plus": part(&d.plus),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                let fmt = |v: &[Rational]| -> String {
                    v.iter().map(format_rational).collect::<Vec<_>>().join(",")
                };
                println!(
                    "minus: cell [{}] coords [{}]",
                    d.minus.word,
                    fmt(&d.minus.coords)
                );
                println!("h: positive={} coords [{}]", d.h.positive, fmt(&d.h.coords));
                println!(
                    "plus:  cell [{}] coords [{}]",
                    d.plus.word,
                    fmt(&d.plus.coords)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Suffix {
            input,
            prefix,
            point,
            cell,
            json,
        } => {
            let ctx = input.resolve()?;
            let b = parse_point(&point)?;
            let sr = suffix_region(&ctx.alg, &ctx.word, prefix, &b).map_err(|e| e.to_string())?;
            let member = matches!(sr.chain.status, ChainStatus::Member);
            if cell && member {
                cell_element(&ctx.alg, &ctx.word, prefix, &b).map_err(|e| e.to_string())?;
            }
            if json {
                let out = json!({
                    "suffix_word": sr.suffix.to_string(),
                    "status": if member { "member" } else { "outside" },
                    "eps_suffix": sr.signs.eps_suffix,
                    "delta": sr.signs.delta,
                    "cell_checked": cell && member,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("suffix word: {}", sr.suffix);
                println!("status: {}", if member { "member" } else { "outside" });
                println!("eps_suffix: {:?}", sr.signs.eps_suffix);
                println!("delta: {:?}", sr.signs.delta);
            }
            Ok(if member {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Verify {
            suite,
            r#type,
            cases,
            seed,
        } => {
            let (letter, rank) = parse_type(&r#type).map_err(|e| e.to_string())?;
            let seed = seed_from_env(seed);
            let suites: Vec<Suite> = if suite == "all" {
                ALL_SUITES.to_vec()
            } else {
                vec![Suite::from_name(&suite).ok_or_else(|| format!("unknown suite `{suite}`"))?]
            };
            let mut all_pass = true;
            for s in suites {
                let report = run_suite(s, letter, rank, cases, seed).map_err(|e| e.to_string())?;
                print_report(&report);
                all_pass &= report.passed();
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn print_report(report: &SuiteReport) {
    for check in &report.checks {
        println!(
            "[{}] {} :: {} ... {}",
            report.type_name,
            report.suite.name(),
            check.label,
            if check.pass { "ok" } else { "FAILED" }
        );
        if let Some(detail) = &check.detail {
            println!("    {detail}");
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

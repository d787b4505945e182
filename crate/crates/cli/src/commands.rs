use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mquwm::classify::{classify_all, ClassifyOptions};
use mquwm::covrad::{maximality, CosetLeaderProfile};
use mquwm::paperdata::{normalize_id, Registry};
use mquwm::quwm::build_quwm_set_randomized;
use mquwm::reedmuller::{rm1, rm1_fixed, reference_rm};
use mquwm::{
    build_quwm_set, check_conditions, equivalence_witness, verify_paper, LinearCode, Scope,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::output::{emit, read_file, status, to_json, write_file, EXIT_PASS};

#[derive(Parser, Debug)]
#[command(name = "mquwm", version, about = "Four-weight codes and quasi-unbiased weighing matrices")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Seed for randomized choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RmVariant {
    /// Fixed matrix for m = 4, 5; recursive otherwise.
    Reference,
    Recursive,
    Fixed,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print RM(1,m) in the code text format.
    Rm {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "reference")]
        variant: RmVariant,
    },
    /// Check conditions (1) and (2) and print the certificate.
    Check { code: PathBuf },
    /// Weight distribution.
    Wdist { code: PathBuf },
    /// Decide permutation equivalence of two codes.
    Equiv { a: PathBuf, b: PathBuf },
    /// Covering radius and coset-leader weight histogram.
    Covrad { code: PathBuf },
    /// Whether no one-dimensional extension keeps the four-weight condition.
    Maximal {
        code: PathBuf,
        /// Scan cosets even when the covering radius settles the question.
        #[arg(long)]
        force_slow: bool,
    },
    /// Build and verify the quasi-unbiased Hadamard matrices of a code.
    Quwm {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Pick each antipodal representative at random (uses --seed).
        #[arg(long)]
        randomize: bool,
    },
    /// Classify qualifying codes of a given length.
    Classify {
        #[arg(long)]
        length: usize,
        /// Required for length 32, which takes minutes.
        #[arg(long)]
        allow_long: bool,
        /// Directory for report.json and one code file per class.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the tabulated codes and check every published claim.
    VerifyPaper {
        #[arg(long, default_value = "all")]
        scope: String,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a tabulated code in the code text format.
    Dump {
        #[arg(long)]
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Reads a code file; a missing path that names a tabulated code (such as
/// `C_16_8_1`) loads that code instead.
fn load(path: &Path) -> Result<LinearCode> {
    if !path.exists() {
        let name = path.to_string_lossy();
        if let Ok(entry) = Registry::builtin().code_entry(&name) {
            return Ok(Registry::builtin().load_code(&entry.id)?);
        }
    }
    let text = read_file(path)?;
    LinearCode::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn code_json(code: &LinearCode) -> serde_json::Value {
    serde_json::to_value(code).expect("serializable")
}

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Rm { m, variant } => {
            let code = match variant {
                RmVariant::Reference => reference_rm(*m)?,
                RmVariant::Recursive => rm1(*m)?,
                RmVariant::Fixed => rm1_fixed(*m)?,
            };
            emit(cli, &code, || code.to_text())?;
            Ok(EXIT_PASS)
        }
        Command::Check { code } => {
            let code = load(code)?;
            let check = check_conditions(&code)?;
            let cert = check.certificate.as_ref();
            let violations: Vec<String> = check.violations.iter().map(ToString::to_string).collect();
            let body = json!({
                "n": check.n,
                "k": check.k,
                "a": cert.map(|c| c.a),
                "l": cert.map(|c| c.l),
                "set_size": cert.map(|c| c.set_size),
                "distribution": check.distribution,
                "conditions": { "c1": check.c1, "c2": check.c2 },
                "violations": violations,
            });
            emit(cli, &body, || match cert {
                Some(c) => format!(
                    "pass: [{},{}] a={} l={} set_size={}\n{}\n",
                    check.n, check.k, c.a, c.l, c.set_size, check.distribution
                ),
                None => {
                    let mut s = format!("fail: [{},{}]\n", check.n, check.k);
                    for v in &violations {
                        let _ = writeln!(s, "  {v}");
                    }
                    s
                }
            })?;
            Ok(status(check.passed()))
        }
        Command::Wdist { code } => {
            let code = load(code)?;
            let wd = code.weight_distribution()?;
            let body = json!({ "n": code.n(), "k": code.k(), "distribution": wd });
            emit(cli, &body, || format!("{wd}\n"))?;
            Ok(EXIT_PASS)
        }
        Command::Equiv { a, b } => {
            let (a, b) = (load(a)?, load(b)?);
            let witness = equivalence_witness(&a, &b)?;
            let one_based = witness
                .as_ref()
                .map(|p| p.iter().map(|&j| j + 1).collect::<Vec<_>>());
            let body = json!({ "equivalent": witness.is_some(), "witness": one_based });
            emit(cli, &body, || match &one_based {
                Some(p) => {
                    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
                    format!("equivalent\nwitness: {}\n", parts.join(" "))
                }
                None => "not equivalent\n".to_string(),
            })?;
            Ok(status(witness.is_some()))
        }
        Command::Covrad { code } => {
            let code = load(code)?;
            let profile = CosetLeaderProfile::compute(&code)?;
            let hist = profile.histogram();
            let body = json!({
                "radius": profile.covering_radius(),
                "leader_weight_histogram": hist,
            });
            emit(cli, &body, || {
                let mut s = format!("covering radius {}\n", profile.covering_radius());
                for (w, c) in hist.iter().enumerate() {
                    let _ = writeln!(s, "  leader weight {w}: {c} cosets");
                }
                s
            })?;
            Ok(EXIT_PASS)
        }
        Command::Maximal { code, force_slow } => {
            let code = load(code)?;
            let cert = check_conditions(&code)?.into_certificate()?;
            let m = maximality(&code, &cert, *force_slow)?;
            let body = json!({
                "maximal": m.maximal,
                "path": m.path,
                "covering_radius": m.covering_radius,
                "witness_extension": m.witness.as_ref().map(code_json),
            });
            emit(cli, &body, || {
                let path = serde_json::to_value(m.path).expect("serializable");
                let mut s = format!(
                    "{} ({} path, covering radius {})\n",
                    if m.maximal { "maximal" } else { "not maximal" },
                    path.as_str().unwrap_or_default(),
                    m.covering_radius
                );
                if let Some(w) = &m.witness {
                    s.push_str("extension:\n");
                    s.push_str(&w.to_text());
                }
                s
            })?;
            Ok(status(m.maximal))
        }
        Command::Quwm { code, out, randomize } => {
            let code = load(code)?;
            let set = if *randomize {
                build_quwm_set_randomized(&code, &mut ChaCha8Rng::seed_from_u64(cli.seed))?
            } else {
                build_quwm_set(&code)?
            };
            let v = set.verify();
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            for (i, h) in set.matrices.iter().enumerate() {
                write_file(&out.join(format!("H_{}.txt", i + 1)), &h.to_text())?;
            }
            let report = json!({
                "params": set.params,
                "set_size": set.len(),
                "hadamard": v.hadamard.iter().all(|&h| h),
                "pairs_checked": v.pair_checks,
                "all_pass": v.all_pass,
                "failures": v.failures,
                "zero_count_per_row": v.zero_count_per_row,
            });
            write_file(&out.join("report.json"), &(to_json(&report)? + "\n"))?;
            emit(cli, &report, || {
                format!(
                    "{} matrices for ({},{},{},{}) written to {}; {} pairs {}\n",
                    set.len(),
                    set.params.n,
                    set.params.k,
                    set.params.l,
                    set.params.a,
                    out.display(),
                    v.pair_checks,
                    if v.all_pass { "verified" } else { "FAILED" }
                )
            })?;
            Ok(status(v.all_pass))
        }
        Command::Classify { length, allow_long, out } => {
            let reports = classify_all(*length, ClassifyOptions { allow_long: *allow_long })?;
            if let Some(dir) = out {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                write_file(&dir.join("report.json"), &(to_json(&reports)? + "\n"))?;
                for r in &reports {
                    for (i, c) in r.classes.iter().enumerate() {
                        let name = format!("n{}_k{}_{}.code", r.n, r.k, i + 1);
                        write_file(&dir.join(name), &c.code.to_text())?;
                    }
                }
            }
            emit(cli, &reports, || {
                let mut s = String::new();
                for r in &reports {
                    let _ = writeln!(s, "[{},{}]: {} classes", r.n, r.k, r.len());
                    for (i, c) in r.classes.iter().enumerate() {
                        let _ = writeln!(
                            s,
                            "  {}: d={} a={} radius={} maximal={}",
                            i + 1,
                            c.min_weight,
                            c.a,
                            c.covering_radius.map_or("-".into(), |v| v.to_string()),
                            c.maximal.map_or("-", |m| if m { "yes" } else { "no" }),
                        );
                    }
                }
                s
            })?;
            Ok(EXIT_PASS)
        }
        Command::VerifyPaper { scope, out } => {
            let scope: Scope = scope.parse()?;
            let report = verify_paper(scope)?;
            if let Some(path) = out {
                write_file(path, &(to_json(&report)? + "\n"))?;
            }
            emit(cli, &report, || report.summary())?;
            Ok(status(report.passed))
        }
        Command::Dump { id, out } => {
            let reg = Registry::builtin();
            let id = normalize_id(id);
            if reg.code_entry(&id).is_err() {
                bail!(mquwm::Error::UnknownId(id));
            }
            let code = reg.load_code(&id)?;
            if let Some(path) = out {
                write_file(path, &code.to_text())?;
            }
            #[derive(Serialize)]
            struct Dumped<'a> {
                id: &'a str,
                #[serde(flatten)]
                code: &'a LinearCode,
            }
            emit(cli, &Dumped { id: &id, code: &code }, || code.to_text())?;
            Ok(EXIT_PASS)
        }
    }
}

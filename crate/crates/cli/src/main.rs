mod cache;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use bentforge::battery::{self, BatteryOptions, Status};
use bentforge::construct::{
    concat4, dual_bent_condition, extend_permutation, mm_bent, theorem53_certify,
    theorem55_construct, theorem57_check, theorem57_corollary_check, theorem57_subspace_condition,
    witness_second_msubspace, ConcatQuadruple, WitnessKind,
};
use bentforge::fixtures::FixtureSet;
use bentforge::format::{subspace_to_string, tt_to_string, vf_to_string};
use bentforge::msub::{msubspace_profile, msubspaces};
use bentforge::psclass::is_partial_spread;
use bentforge::report::analyze_with;
use bentforge::{BooleanFunction, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::{load_function, load_vf, FunctionInput};

#[derive(Parser, Debug)]
#[command(
    name = "bentforge",
    version,
    about = "Analysis and construction of bent functions"
)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_name = "INT")]
    jobs: Option<usize>,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full class report for one function.
    Analyze {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long)]
        n: Option<usize>,
        /// Also run the completed partial spread sweep.
        #[arg(long)]
        sharp: bool,
        /// Checkpoint file for the sweep.
        #[arg(long, value_name = "FILE")]
        resume: Option<PathBuf>,
    },
    /// List the M-subspaces of one dimension.
    Msub {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dim: usize,
    },
    /// Number of M-subspaces per dimension, as JSON.
    Profile {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Partial spread membership, optionally of the completed class.
    Psclass {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        sharp: bool,
        #[arg(long, value_name = "FILE")]
        resume: Option<PathBuf>,
    },
    #[command(subcommand)]
    Construct(Construct),
    /// Certify that a concatenation lies outside the completed
    /// Maiorana-McFarland class.
    Certify {
        #[arg(value_enum)]
        method: CertifyMethod,
        #[command(flatten)]
        members: Members,
        /// Variant of the sharing criterion.
        #[arg(long, value_enum, default_value_t = SharingVariant::Full)]
        variant: SharingVariant,
    },
    /// Properties of a permutation.
    PermCheck {
        #[arg(value_enum)]
        property: PermProperty,
        /// Vectorial function (`vf:` table, coordinate ANFs, or
        /// `power:<d>@gf2m:m=<m>`), inline or in a file.
        #[arg(long, value_name = "VF")]
        pi: String,
    },
    /// Recompute the published values and properties bundled as fixtures.
    VerifyPaper {
        /// Skip the completed partial spread sweeps.
        #[arg(long)]
        fast: bool,
        /// Directory whose fixture files replace the built-in ones.
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
        /// Run only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(clap::Args, Debug)]
struct Members {
    #[arg(long, value_name = "FN")]
    f1: String,
    #[arg(long, value_name = "FN")]
    f2: String,
    #[arg(long, value_name = "FN")]
    f3: String,
    #[arg(long, value_name = "FN")]
    f4: String,
}

impl Members {
    fn load(&self) -> Result<ConcatQuadruple> {
        let f1 = load_function(&self.f1, None)?;
        let n = Some(f1.n());
        Ok(ConcatQuadruple::new(
            f1,
            load_function(&self.f2, n)?,
            load_function(&self.f3, n)?,
            load_function(&self.f4, n)?,
        )?)
    }
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// `x . pi(y) + h(y)`.
    Mm {
        #[arg(long, value_name = "VF")]
        pi: String,
        /// Defaults to zero.
        #[arg(long, value_name = "FN")]
        h: Option<String>,
    },
    /// `f1 || f2 || f3 || f4`.
    Concat {
        #[command(flatten)]
        members: Members,
    },
    /// Permutation on one more variable from two permutations.
    ExtendPerm {
        #[arg(long, value_name = "VF")]
        s1: String,
        #[arg(long, value_name = "VF")]
        s2: String,
    },
    /// Bent function outside the completed Maiorana-McFarland class from a
    /// P1 permutation and a second permutation.
    Thm55 {
        #[arg(long, value_name = "VF")]
        pi: String,
        #[arg(long, value_name = "VF")]
        sigma: String,
        #[arg(long, value_name = "FN")]
        h1: Option<String>,
        #[arg(long, value_name = "FN")]
        h2: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CertifyMethod {
    /// No common M-subspace of dimension n/2 - 1.
    Thm53,
    /// Sharing conditions on a common M-subspace.
    Thm57,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SharingVariant {
    Full,
    Corollary,
    Subspace,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PermProperty {
    Apn,
    P1,
    P2,
    Linstruct,
}

fn function_json(f: &BooleanFunction) -> Value {
    json!({
        "n": f.n(),
        "tt": tt_to_string(f),
        "anf": f.to_anf().to_string(),
        "is_bent": f.is_bent(),
    })
}

fn print_value(value: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Analyze {
            input,
            n,
            sharp,
            resume,
        } => {
            let f = input.load(n)?;
            let location = cache::sweep_location(resume.as_deref(), &f);
            let mut sweep = |g: &BooleanFunction| {
                cache::sweep(g, location.as_deref())
                    .map(|r| r.witness)
                    .map_err(|e| match e.downcast_ref::<Error>() {
                        Some(inner) => inner.clone(),
                        None => Error::Hypothesis(format!("{e:#}")),
                    })
            };
            let report = analyze_with(&f, sharp, &mut sweep)?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "n = {}, weight {}, degree {}",
                    report.n, report.weight, report.degree
                );
                println!("bent: {}", report.is_bent);
                if let Some(p) = &report.msubspace_profile {
                    println!("M-subspace counts: {:?}", p.counts);
                }
                match &report.mm_sharp {
                    Some(v) => println!("completed MM class: yes, M-subspace {v}"),
                    None if report.is_bent => println!("completed MM class: no"),
                    None => {}
                }
                if report.ps_sharp_checked {
                    match &report.ps_sharp {
                        Some(w) => println!(
                            "completed PS class: yes, shift {:#x}, linear {:#x}, constant {}",
                            w.shift, w.linear, w.constant as u8
                        ),
                        None => println!("completed PS class: no"),
                    }
                }
            }
        }
        Command::Msub { input, n, dim } => {
            let f = input.load(n)?;
            let found = msubspaces(&f, dim)?;
            if json {
                print_value(&serde_json::to_value(&found)?)?;
            } else {
                println!("{} M-subspaces of dimension {dim}", found.len());
                for v in &found {
                    println!("\n{}", subspace_to_string(v).trim_end());
                }
            }
        }
        Command::Profile { input, n } => {
            let f = input.load(n)?;
            print_value(&serde_json::to_value(msubspace_profile(&f)?)?)?;
        }
        Command::Psclass {
            input,
            n,
            sharp,
            resume,
        } => {
            let f = input.load(n)?;
            let witness = is_partial_spread(&f)?;
            let mut out = json!({ "partial_spread": witness });
            if sharp {
                let location = cache::sweep_location(resume.as_deref(), &f);
                let r = cache::sweep(&f, location.as_deref())?;
                out["ps_sharp"] = serde_json::to_value(&r.witness)?;
                out["from_cache"] = json!(r.from_cache);
            }
            if json {
                print_value(&out)?;
            } else {
                match &witness {
                    Some(w) => println!(
                        "partial spread: {:?}, {} subspaces",
                        w.subclass,
                        w.subspaces.len()
                    ),
                    None => println!("partial spread: no"),
                }
                if sharp {
                    match &out["ps_sharp"] {
                        Value::Null => println!("completed PS class: no"),
                        w => println!("completed PS class: yes {w}"),
                    }
                }
            }
        }
        Command::Construct(c) => construct(c, json)?,
        Command::Certify {
            method,
            members,
            variant,
        } => {
            let q = members.load()?;
            let cert = match (method, variant) {
                (CertifyMethod::Thm53, _) => theorem53_certify(&q)?,
                (CertifyMethod::Thm57, SharingVariant::Full) => theorem57_check(&q)?,
                (CertifyMethod::Thm57, SharingVariant::Corollary) => theorem57_corollary_check(&q)?,
                (CertifyMethod::Thm57, SharingVariant::Subspace) => {
                    theorem57_subspace_condition(&q)?
                }
            };
            let f = concat4(&q)?;
            if json {
                print_value(&json!({ "function": function_json(&f), "certificate": cert }))?;
            } else {
                println!("{}", tt_to_string(&f));
                println!("verdict: {:?} ({:?})", cert.verdict, cert.reason);
            }
        }
        Command::PermCheck { property, pi } => perm_check(property, &load_vf(&pi)?, json)?,
        Command::VerifyPaper {
            fast,
            fixtures,
            only,
        } => return verify_paper(fast, fixtures, &only, json),
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(c: Construct, json: bool) -> Result<()> {
    let out = match c {
        Construct::Mm { pi, h } => {
            let pi = load_vf(&pi)?;
            let h = match h {
                Some(h) => load_function(&h, Some(pi.m()))?,
                None => BooleanFunction::zero(pi.m())?,
            };
            json!({ "function": function_json(&mm_bent(&pi, &h)?) })
        }
        Construct::Concat { members } => {
            let q = members.load()?;
            json!({
                "function": function_json(&concat4(&q)?),
                "dual_bent_condition": dual_bent_condition(&q).ok(),
            })
        }
        Construct::ExtendPerm { s1, s2 } => {
            let p = extend_permutation(&load_vf(&s1)?, &load_vf(&s2)?)?;
            json!({ "permutation": vf_to_string(&p), "p1": p.has_p1() })
        }
        Construct::Thm55 { pi, sigma, h1, h2 } => {
            let pi = load_vf(&pi)?;
            let sigma = load_vf(&sigma)?;
            let m = pi.m();
            let load_h = |h: Option<String>| match h {
                Some(h) => load_function(&h, Some(m)),
                None => Ok(BooleanFunction::zero(m)?),
            };
            let (f, cert) = theorem55_construct(&pi, &sigma, &load_h(h1)?, &load_h(h2)?)?;
            json!({ "function": function_json(&f), "certificate": cert })
        }
    };
    if json {
        print_value(&out)
    } else {
        if let Some(tt) = out["function"]["tt"].as_str() {
            println!("{tt}");
        }
        if let Some(p) = out["permutation"].as_str() {
            println!("{p}");
        }
        for key in ["dual_bent_condition", "p1"] {
            if !out[key].is_null() {
                println!("{key}: {}", out[key]);
            }
        }
        if let Some(v) = out["certificate"]["verdict"].as_str() {
            println!("verdict: {v}");
        }
        Ok(())
    }
}

fn perm_check(property: PermProperty, pi: &bentforge::VectorialFunction, json: bool) -> Result<()> {
    let out = match property {
        PermProperty::Apn => json!({ "permutation": pi.is_permutation(), "apn": pi.is_apn() }),
        PermProperty::P1 => json!({ "p1": pi.has_p1(), "violation": pi.p1_violation() }),
        PermProperty::P2 => serde_json::to_value(pi.check_p2()?)?,
        PermProperty::Linstruct => {
            let ls = pi.linear_structures();
            let witness = if ls.len() > 1 {
                witness_second_msubspace(pi, WitnessKind::LinearStructure).ok()
            } else {
                None
            };
            json!({ "linear_structures": ls, "second_msubspace": witness })
        }
    };
    if json {
        print_value(&out)
    } else {
        for (k, v) in out.as_object().context("object")? {
            if k != "per_subspace" {
                println!("{k}: {v}");
            }
        }
        Ok(())
    }
}

fn verify_paper(
    fast: bool,
    fixtures: Option<PathBuf>,
    only: &[usize],
    json: bool,
) -> Result<ExitCode> {
    let fixtures = match &fixtures {
        Some(dir) => {
            FixtureSet::with_overrides(dir).with_context(|| format!("reading {}", dir.display()))?
        }
        None => FixtureSet::builtin(),
    };
    let sweep = |_: &str, f: &BooleanFunction| {
        let location = cache::sweep_location(None, f);
        cache::sweep(f, location.as_deref())
            .map(|r| r.witness)
            .map_err(|e| Error::Hypothesis(format!("{e:#}")))
    };
    let opts = BatteryOptions {
        fast,
        fixtures,
        sweep: Some(&sweep),
    };
    let ids: Vec<usize> = if only.is_empty() {
        battery::CHECKS.iter().map(|c| c.0).collect()
    } else {
        only.to_vec()
    };
    let mut outcomes = Vec::new();
    for id in ids {
        let c = battery::run_check(id, &opts);
        if !json {
            println!("{c}");
        }
        outcomes.push(c);
    }
    if json {
        print_value(&serde_json::to_value(&outcomes)?)?;
    }
    let failed = outcomes.iter().filter(|c| c.status == Status::Fail).count();
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

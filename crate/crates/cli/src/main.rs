//! `unil`: command-line front end for `unil-core`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use unil_core::classify::{enumerate_j, to_csv, to_json};
use unil_core::linking::{
    arf_even, arf_even_randomized, find_lagrangian, orthogonal_complement, sublagrangian_reduce,
    LinkingForm, Submodule,
};
use unil_core::poly::{idem_reduce, versch_reduce, F2Poly, Z4Poly};
use unil_core::unil::UNil3Element;
use unil_core::verify::{run_suite, VerifyOptions};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "unil",
    version,
    about = "Exact UNil and linking form computations"
)]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Output format; `csv` only affects `classify`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print elapsed time (to stderr, or into the JSON envelope).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quotient {
    Idem,
    Versch,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical representative in F2[t]/{f^2 - f} or tZ4[t]/{2p(t^2) - 2p(t)}.
    Reduce {
        #[arg(value_enum)]
        kind: Quotient,
        poly: String,
    },
    /// Switch map on a UNil_3 literal such as `j1[t] + j2[t^2]`.
    Sw { element: String },
    /// Arf invariant of an even linking form given as JSON.
    Arf {
        form: PathBuf,
        /// Also recompute after a seeded random change of basis.
        #[arg(long)]
        randomized: bool,
    },
    /// Sublagrangian reduction and lagrangian search on a JSON form.
    WittCheck {
        form: PathBuf,
        /// Submodule JSON (`{"ambient": k, "generators": [...]}`).
        #[arg(long)]
        submodule: Option<PathBuf>,
        /// Degree bound on lagrangian generator entries.
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Run the bundled fixture suite.
    VerifyPaper {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        lagrangian_degree: usize,
        #[arg(long, default_value_t = 3)]
        lagrangian_bound: usize,
        #[arg(long, default_value_t = 3)]
        unil_cutoff: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Corrupt one expected value; the run must fail.
        #[arg(long)]
        negative_control: bool,
    },
    /// Classification table of manifolds homotopy equivalent to P^n # P^n.
    Classify {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        degree_cutoff: usize,
        #[arg(long, default_value_t = 1)]
        z_bound: u32,
        /// Write the table here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "UNIL_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Value,
}

#[derive(Serialize)]
struct CommandResult {
    status: Status,
    payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

/// Outcome of one command: text for humans, payload for `--format json`.
struct Outcome {
    status: Status,
    text: String,
    payload: Value,
}

impl Outcome {
    fn value(text: impl Into<String>, payload: Value) -> Self {
        Outcome {
            status: Status::Value,
            text: text.into(),
            payload,
        }
    }
}

fn read_form(path: &Path) -> Result<LinkingForm> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(LinkingForm::from_json(&src)?)
}

fn reduce(kind: Quotient, poly: &str) -> Result<Outcome> {
    let rep = match kind {
        Quotient::Idem => idem_reduce(&F2Poly::parse(poly)?).to_string(),
        Quotient::Versch => versch_reduce(&Z4Poly::parse(poly)?)?.to_string(),
    };
    Ok(Outcome::value(
        rep.clone(),
        json!({ "representative": rep }),
    ))
}

fn switch(element: &str) -> Result<Outcome> {
    let e = UNil3Element::parse(element)?;
    let s = e.switch();
    Ok(Outcome::value(
        s.to_string(),
        json!({ "input": e.to_string(), "switch": s.to_string(), "element": s }),
    ))
}

fn arf(path: &Path, randomized: bool, seed: u64) -> Result<Outcome> {
    let form = read_form(path)?;
    let a = arf_even(&form)?;
    let mut payload = json!({ "rank": form.rank(), "arf": a.to_string() });
    if randomized {
        let r = arf_even_randomized(&form, seed)?;
        if r != a {
            bail!("basis-dependent Arf invariant: {a} vs {r} (seed {seed})");
        }
        payload["seed"] = json!(seed);
    }
    Ok(Outcome::value(a.to_string(), payload))
}

fn witt_check(form_path: &Path, sub_path: Option<&Path>, bound: usize) -> Result<Outcome> {
    let form = read_form(form_path)?;
    let mut text = Vec::new();
    let mut payload = json!({ "rank": form.rank(), "even": form.is_even() });
    let target = match sub_path {
        Some(p) => {
            let src = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let s = Submodule::from_json(&src)?;
            let perp = orthogonal_complement(&form, &s)?;
            let (reduced, _) = sublagrangian_reduce(&form, &s)?;
            text.push(format!(
                "sublagrangian: rank {}, reduced rank {}",
                s.rank(),
                reduced.rank()
            ));
            payload["sublagrangian"] = json!({
                "rank": s.rank(),
                "perp": perp,
                "reduced": reduced,
                "reduced_even": reduced.is_even(),
            });
            reduced
        }
        None => form,
    };
    if target.is_even() {
        let a = arf_even(&target)?;
        text.push(format!("arf: {a}"));
        payload["arf"] = json!(a.to_string());
    } else {
        text.push("arf: undefined (odd form)".into());
        payload["arf"] = Value::Null;
    }
    let lagrangian = find_lagrangian(&target, bound)?;
    match &lagrangian {
        Some(l) => text.push(format!("lagrangian: found, {} generators", l.rank())),
        None => text.push(format!(
            "lagrangian: none with entries of degree <= {bound}"
        )),
    }
    payload["lagrangian_bound"] = json!(bound);
    payload["lagrangian"] = json!(lagrangian);
    Ok(Outcome::value(text.join("\n"), payload))
}

fn verify(opts: &VerifyOptions, report: Option<&Path>) -> Result<Outcome> {
    let r = run_suite(opts)?;
    if let Some(path) = report {
        fs::write(path, serde_json::to_string_pretty(&r)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut lines = Vec::new();
    for f in &r.fixtures {
        match &f.failure {
            None => lines.push(format!("PASS {} ({} instances)", f.name, f.instances)),
            Some(fail) => {
                let mut line = format!("FAIL {} at {}: {}", f.name, fail.instance, fail.detail);
                if let Some(d) = &fail.divergence {
                    line.push_str(&format!(" [{d}]"));
                }
                lines.push(line);
            }
        }
    }
    Ok(Outcome {
        status: if r.passed { Status::Pass } else { Status::Fail },
        text: lines.join("\n"),
        payload: serde_json::to_value(&r)?,
    })
}

fn cache_key(n: i64, degree_cutoff: usize, z_bound: u32, format: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "classify\0{n}\0{degree_cutoff}\0{z_bound}\0{format}\0{VERSION}"
    ));
    hex::encode(h.finalize())
}

#[derive(Serialize, serde::Deserialize)]
struct CacheEntry {
    command: String,
    n: i64,
    degree_cutoff: usize,
    z_bound: u32,
    format: String,
    version: String,
    content: String,
}

fn classify(
    n: i64,
    degree_cutoff: usize,
    z_bound: u32,
    format: Format,
    cache_dir: Option<&Path>,
) -> Result<(String, bool)> {
    let fmt = if format == Format::Json {
        "json"
    } else {
        "csv"
    };
    let path = cache_dir.map(|d| {
        d.join(format!(
            "{}.json",
            cache_key(n, degree_cutoff, z_bound, fmt)
        ))
    });
    if let Some(p) = &path {
        if let Ok(src) = fs::read_to_string(p) {
            if let Ok(entry) = serde_json::from_str::<CacheEntry>(&src) {
                if entry.version == VERSION && entry.n == n && entry.format == fmt {
                    return Ok((entry.content, true));
                }
            }
        }
    }
    let table = enumerate_j(n, degree_cutoff, z_bound)?;
    let content = if fmt == "json" {
        to_json(&table)? + "\n"
    } else {
        to_csv(&table)
    };
    if let (Some(p), Some(dir)) = (&path, cache_dir) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let entry = CacheEntry {
            command: "classify".into(),
            n,
            degree_cutoff,
            z_bound,
            format: fmt.into(),
            version: VERSION.into(),
            content: content.clone(),
        };
        let tmp = p.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, p)?;
    }
    Ok((content, false))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Reduce { kind, poly } => reduce(*kind, poly),
        Command::Sw { element } => switch(element),
        Command::Arf { form, randomized } => arf(form, *randomized, cli.seed),
        Command::WittCheck {
            form,
            submodule,
            bound,
        } => witt_check(form, submodule.as_deref(), *bound),
        Command::VerifyPaper {
            degree,
            lagrangian_degree,
            lagrangian_bound,
            unil_cutoff,
            report,
            negative_control,
        } => verify(
            &VerifyOptions {
                degree: *degree,
                lagrangian_degree: *lagrangian_degree,
                lagrangian_bound: *lagrangian_bound,
                unil_cutoff: *unil_cutoff,
                negative_control: *negative_control,
            },
            report.as_deref(),
        ),
        Command::Classify {
            n,
            degree_cutoff,
            z_bound,
            output,
            cache_dir,
            no_cache,
        } => {
            let cache = if *no_cache {
                None
            } else {
                cache_dir.as_deref()
            };
            let (content, hit) = classify(*n, *degree_cutoff, *z_bound, cli.format, cache)?;
            let rows = content.lines().count().saturating_sub(1);
            let text = match output {
                Some(path) => {
                    fs::write(path, &content)
                        .with_context(|| format!("writing {}", path.display()))?;
                    String::new()
                }
                None => content,
            };
            // the JSON table is already machine-readable, so no envelope
            Ok(Outcome {
                status: Status::Value,
                text,
                payload: json!({ "cache_hit": hit, "rows": rows }),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let elapsed = start.elapsed();
    let is_classify = matches!(cli.command, Command::Classify { .. });
    if cli.format == Format::Json && !is_classify {
        let result = CommandResult {
            status: outcome.status,
            payload: outcome.payload,
            elapsed_ms: cli.timing.then_some(elapsed.as_secs_f64() * 1e3),
        };
        match serde_json::to_string_pretty(&result) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
    } else {
        if !outcome.text.is_empty() {
            if outcome.text.ends_with('\n') {
                print!("{}", outcome.text);
            } else {
                println!("{}", outcome.text);
            }
        }
        if is_classify && outcome.payload["cache_hit"] == json!(true) {
            eprintln!("cache hit");
        }
        if cli.timing {
            eprintln!("elapsed: {:.3} s", elapsed.as_secs_f64());
        }
    }
    if outcome.status == Status::Fail {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

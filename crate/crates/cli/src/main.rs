//! `eiscong`: surveys of Eisenstein congruences at level `Gamma0(N^2)`, the
//! coefficient table of the congruent newform, and class field data for
//! `Q(N^(1/p))`.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::Value;

use eiscong::cache::Cache;
use eiscong::classfield::{norm_form_value, norm_search, symbolic_norm_form};
use eiscong::eisenstein::verify_cusp_lattice;
use eiscong::gamma0::sturm_bound;
use eiscong::pipeline;
use eiscong::Error;

#[derive(Parser, Debug)]
#[command(name = "eiscong", version, about = "Eisenstein congruences at level Gamma0(N^2) and Q(N^(1/p))")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for cached Hecke images.
    #[arg(long = "cache-dir", global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Allow a prime bound below the Sturm bound.
    #[arg(long = "unsafe", global = true)]
    allow_unsafe: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Detect the Eisenstein ideal for every prime N up to --N-max.
    Survey {
        /// Primes p, comma separated.
        #[arg(long = "p", value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long = "N-max")]
        n_max: u64,
        /// Prime bound for the Hecke operators (default: Sturm bound of N^2).
        #[arg(long)]
        sturm: Option<u64>,
    },
    /// Coefficient table of the newform congruent to E.
    Table {
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "ell-max", default_value_t = 100)]
        ell_max: u64,
        #[arg(long)]
        sturm: Option<u64>,
    },
    /// Factorization of primes l <= --ell-max in Q(N^(1/p)).
    Splitting {
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "ell-max", default_value_t = 100)]
        ell_max: u64,
    },
    /// Check the Hecke structure of the degree-zero cuspidal divisors mod p.
    VerifyCusps {
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "p")]
        p: u64,
        /// Largest prime l whose T_l is imposed.
        #[arg(long = "ell-max", default_value_t = 500)]
        ell_max: u64,
    },
    /// Norms from Q(N^(1/p)).
    Norm {
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "p")]
        p: u64,
        /// Coefficients of 1, theta, ..., theta^(p-1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["search", "form"])]
        eval: Option<Vec<i64>>,
        /// Look for an element of this norm.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "form")]
        search: Option<BigInt>,
        /// Box bound for --search.
        #[arg(long, default_value_t = 2)]
        bound: u64,
        /// Print the expanded norm form.
        #[arg(long)]
        form: bool,
    },
}

/// Render all JSON numbers as decimal strings.
fn stringify(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify(v))).collect()),
        other => other,
    }
}

fn print_json(v: Value) {
    println!("{}", serde_json::to_string_pretty(&stringify(v)).expect("serializable"));
}

fn check_sturm(sturm: Option<u64>, levels: &[u64], allow_unsafe: bool) -> anyhow::Result<()> {
    if let Some(s) = sturm {
        for &n in levels {
            let needed = sturm_bound(n * n);
            if s < needed && !allow_unsafe {
                bail!("--sturm {s} is below the Sturm bound {needed} of level {}; pass --unsafe to allow", n * n);
            }
        }
    }
    Ok(())
}

/// `Ok(true)` when every internal assertion held.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let cache = match &g.cache_dir {
        Some(d) => Some(Cache::new(d)?),
        None => None,
    };
    let cache = cache.as_ref();
    match cli.command {
        Command::Survey { p, n_max, sturm } => {
            let levels: Vec<u64> = eiscong::arith::primes_up_to(n_max).into_iter().filter(|&n| n >= 5).collect();
            check_sturm(sturm, &levels, g.allow_unsafe)?;
            let rows = pipeline::survey(&p, n_max, sturm, cache)?;
            match g.format {
                Format::Tsv => print!("{}", pipeline::survey_tsv(&rows)),
                Format::Json => print_json(serde_json::to_value(&rows)?),
            }
            let bad: Vec<String> = rows
                .iter()
                .filter(|r| !r.ok())
                .map(|r| format!("N = {}, p = {}", r.n, r.p))
                .collect();
            if !bad.is_empty() {
                eprintln!("verdicts disagree with the criterion at: {}", bad.join("; "));
            }
            Ok(bad.is_empty())
        }
        Command::Table { n, p, ell_max, sturm } => {
            check_sturm(sturm, &[n], g.allow_unsafe)?;
            let report = pipeline::table(n, p, ell_max, sturm, cache)?;
            match g.format {
                Format::Tsv => print!("{}", report.tsv()),
                Format::Json => print_json(report.json()),
            }
            Ok(true)
        }
        Command::Splitting { n, p, ell_max } => {
            let rows = pipeline::splitting(n, p, ell_max)?;
            match g.format {
                Format::Tsv => print!("{}", pipeline::splitting_tsv(&rows)),
                Format::Json => print_json(serde_json::to_value(&rows)?),
            }
            Ok(true)
        }
        Command::VerifyCusps { n, p, ell_max } => {
            let r = verify_cusp_lattice(n, p, ell_max)?;
            match g.format {
                Format::Tsv => {
                    println!("N\tp\tells_used\tkernel_dim\tspans_P\tU_N_kills_c\tU_N_fixes_inf_part\taux_ell\taux_q");
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        r.n,
                        r.p,
                        r.ells_used,
                        r.kernel_dim,
                        r.spans_p,
                        r.u_kills_c,
                        r.u_fixes_infinity_part,
                        r.aux_ell,
                        r.aux_q.map(|q| q.to_string()).unwrap_or_default()
                    );
                }
                Format::Json => print_json(serde_json::to_value(&r)?),
            }
            Ok(r.ok())
        }
        Command::Norm {
            n,
            p,
            eval,
            search,
            bound,
            form,
        } => {
            if let Some(c) = eval {
                if c.len() > p as usize {
                    bail!("--eval takes at most {p} coefficients");
                }
                let v = norm_form_value(&c, n, p);
                match g.format {
                    Format::Tsv => println!("{v}"),
                    Format::Json => print_json(serde_json::json!({ "coeffs": c, "norm": v.to_string() })),
                }
            } else if let Some(t) = search {
                let found = norm_search(&t, n, p, bound);
                match (g.format, &found) {
                    (Format::Tsv, Some(c)) => {
                        println!("{}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    }
                    (Format::Tsv, None) => println!("not found within bound {bound}"),
                    (Format::Json, _) => print_json(serde_json::json!({
                        "target": t.to_string(),
                        "bound": bound,
                        "witness": found,
                    })),
                }
            } else if form {
                let f = symbolic_norm_form(n, p);
                match g.format {
                    Format::Tsv => println!("{f}"),
                    Format::Json => print_json(serde_json::json!({ "N": n, "p": p, "form": f.to_string() })),
                }
            } else {
                bail!("norm needs one of --eval, --search or --form");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Contradiction(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

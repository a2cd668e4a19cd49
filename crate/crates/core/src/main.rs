use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use xomega::analysis::{
    bh05_distance, contraction_experiment, dense_holonomy_radius, diameter_interval,
    exact_diameter, growth_orbital, growth_x_omega, local_iso_check, type_census, LocalIsoVerdict,
};
use xomega::export::{census_csv, diameter_csv, growth_csv, to_csv, to_dot, to_json, GraphMeta};
use xomega::graph::{model_graph, partial_graph, quotient_mod, window, LabeledMultigraph};
use xomega::schreier::gamma_n;
use xomega::verify::run_all;
use xomega::words::OmegaWord;

#[derive(Parser)]
#[command(
    name = "xomega",
    version,
    about = "Graphs of eventually periodic binary sequences and their self-similar group"
)]
struct Cli {
    /// Cap the internal thread pool (defaults to all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Export the model graph X_n on Z/2^n
    BuildXn {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Export the level-n Schreier graph with generator labels
    BuildGamma {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Export a window of X_omega, optionally truncated to levels <= LEVEL
    BuildWindow {
        #[arg(long)]
        omega: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Export the quotient X_omega mod 2^n
    Quotient {
        #[arg(long)]
        omega: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Ball sizes |B(0, r)| in X_omega, as a CSV table
    Growth {
        #[arg(long)]
        omega: String,
        #[arg(long, default_value_t = 64)]
        radius: u32,
        /// Measure on the orbital Schreier graph instead of the adjacency
        /// oracle
        #[arg(long)]
        orbital: bool,
    },
    /// Exact diameters of the level graphs with the certified interval
    Diam {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
    },
    /// The distance identity n*2^n + 1 at level (n^2+3n+2)/2
    Bh05 {
        #[arg(long)]
        n: u32,
    },
    /// Census of pointed r-ball types over a window of X_omega
    Census {
        #[arg(long)]
        omega: String,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value = "2^8")]
        window: String,
    },
    /// Verified dense-holonomy radius for radius-r types
    Holonomy {
        #[arg(long)]
        omega: String,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Compare the r-type sets of two graphs over [-2^m, 2^m]
    Localiso {
        #[arg(long)]
        omega: String,
        #[arg(long)]
        other: String,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 10)]
        m: u32,
    },
    /// Restriction-closure contraction experiment on random words
    Contraction {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        max_len: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the full verification suite and emit a JSON report
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Accepts plain integers and the `2^m` / `-2^m` shorthand.
fn parse_extent(s: &str) -> Result<i64, String> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let value = if let Some(exp) = body.strip_prefix("2^") {
        let e: u32 = exp.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        if e >= 63 {
            return Err(format!("{s:?} out of range"));
        }
        1i64 << e
    } else {
        body.parse::<i64>().map_err(|_| format!("bad integer {s:?}"))?
    };
    Ok(if neg { -value } else { value })
}

fn parse_omega(s: &str) -> Result<OmegaWord, String> {
    OmegaWord::parse(s).map_err(|e| format!("bad omega {s:?}: {e}"))
}

fn render_graph(
    graph: &LabeledMultigraph,
    name: &str,
    format: Format,
    meta: GraphMeta,
) -> String {
    match format {
        Format::Dot => to_dot(graph, name),
        Format::Csv => to_csv(graph),
        Format::Json => to_json(graph, &meta),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("writing {path:?}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Ok(true) = success, Ok(false) = verification failure (exit 1),
/// Err = usage error (exit 2).
fn run(cli: &Cli) -> Result<bool, String> {
    let fail = |e: xomega::Error| e.to_string();
    match &cli.command {
        Command::BuildXn { n, format } => {
            if !(1..=26).contains(n) {
                return Err("--n must be in 1..=26".into());
            }
            let meta = GraphMeta {
                omega: None,
                n: Some(*n),
            };
            let text = render_graph(&model_graph(*n), &format!("x{n}"), *format, meta);
            emit(&cli.out, &text)?;
        }
        Command::BuildGamma { n, format } => {
            let g = gamma_n(*n).map_err(fail)?;
            let meta = GraphMeta {
                omega: None,
                n: Some(*n),
            };
            let text = render_graph(&g.graph, &format!("gamma{n}"), *format, meta);
            emit(&cli.out, &text)?;
        }
        Command::BuildWindow {
            omega,
            lo,
            hi,
            level,
            format,
        } => {
            let w = parse_omega(omega)?;
            let (lo, hi) = (parse_extent(lo)?, parse_extent(hi)?);
            if lo > hi {
                return Err("--lo must not exceed --hi".into());
            }
            let win = match level {
                Some(l) => partial_graph(&w, *l, lo, hi).map_err(fail)?,
                None => window(&w, lo, hi).map_err(fail)?,
            };
            let meta = GraphMeta {
                omega: Some(omega.clone()),
                n: *level,
            };
            let text = render_graph(&win.graph, "window", *format, meta);
            emit(&cli.out, &text)?;
        }
        Command::Quotient { omega, n, format } => {
            let w = parse_omega(omega)?;
            let g = quotient_mod(&w, *n).map_err(fail)?;
            let meta = GraphMeta {
                omega: Some(omega.clone()),
                n: Some(*n),
            };
            let text = render_graph(&g, &format!("quotient{n}"), *format, meta);
            emit(&cli.out, &text)?;
        }
        Command::Growth {
            omega,
            radius,
            orbital,
        } => {
            let w = parse_omega(omega)?;
            let table = if *orbital {
                growth_orbital(&w, *radius)
            } else {
                growth_x_omega(&w, *radius).map_err(fail)?
            };
            emit(&cli.out, &growth_csv(&table))?;
        }
        Command::Diam { max_n } => {
            if !(1..=20).contains(max_n) {
                return Err("--max-n must be in 1..=20".into());
            }
            let rows: Vec<(u32, u64, u64, u64)> = (1..=*max_n)
                .map(|n| {
                    let (lo, hi) = diameter_interval(n);
                    (n, exact_diameter(n), lo, hi)
                })
                .collect();
            emit(&cli.out, &diameter_csv(&rows))?;
        }
        Command::Bh05 { n } => {
            let d = bh05_distance(*n).map_err(fail)?;
            let expected = (*n as u64) * (1u64 << n) + 1;
            let verdict = if d == expected { "PASS" } else { "FAIL" };
            emit(&cli.out, &format!("{d} {verdict}\n"))?;
            return Ok(d == expected);
        }
        Command::Census { omega, r, window: w } => {
            let word = parse_omega(omega)?;
            let half = parse_extent(w)?;
            if half <= 0 {
                return Err("--window must be positive".into());
            }
            let win = window(&word, -half, half).map_err(fail)?;
            emit(&cli.out, &census_csv(&type_census(&win, *r)))?;
        }
        Command::Holonomy { omega, r } => {
            let w = parse_omega(omega)?;
            match dense_holonomy_radius(&w, *r) {
                Ok(radius) => emit(&cli.out, &format!("R={radius} PASS\n"))?,
                Err(e) => {
                    emit(&cli.out, &format!("FAIL {e}\n"))?;
                    return Ok(false);
                }
            }
        }
        Command::Localiso {
            omega,
            other,
            r,
            m,
        } => {
            let w1 = parse_omega(omega)?;
            let w2 = parse_omega(other)?;
            match local_iso_check(&w1, &w2, *r, *m).map_err(fail)? {
                LocalIsoVerdict::LocallyIso => emit(&cli.out, "locally-isomorphic\n")?,
                LocalIsoVerdict::Distinguished(_) => {
                    emit(&cli.out, "distinguished\n")?;
                    return Ok(false);
                }
            }
        }
        Command::Contraction {
            samples,
            max_len,
            seed,
        } => {
            let report = contraction_experiment(*samples, *max_len, *seed).map_err(fail)?;
            let text = format!(
                "samples={} nucleus={} halving={}\n",
                report.samples.len(),
                if report.all_nucleus { "PASS" } else { "FAIL" },
                if report.all_halving { "PASS" } else { "FAIL" }
            );
            emit(&cli.out, &text)?;
            return Ok(report.all_nucleus && report.all_halving);
        }
        Command::VerifyAll { seed } => {
            let results = run_all(*seed).map_err(fail)?;
            let all_pass = results.iter().all(|r| r.pass);
            let doc = json!({
                "seed": seed,
                "all_pass": all_pass,
                "results": results.iter().map(|r| json!({
                    "name": r.name,
                    "pass": r.pass,
                    "detail": r.detail,
                })).collect::<Vec<_>>(),
            });
            emit(&cli.out, &format!("{doc:#}\n"))?;
            return Ok(all_pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("could not configure the thread pool");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

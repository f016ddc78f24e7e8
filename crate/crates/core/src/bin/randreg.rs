use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use randreg::verify::{verify, VerifyConfig};
use randreg::{stream_rng, to_edge_list, to_graph6, Algorithm, Error, ModelParams, RunReport, Sampler};

#[derive(Parser)]
#[command(name = "randreg", about = "Sample uniformly random d-regular graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate graphs.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "reg")]
        algo: Algorithm,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Write aggregate run statistics as JSON.
        #[arg(long)]
        stats_out: Option<std::path::PathBuf>,
        /// Accepted for compatibility; output is always in sample order.
        #[arg(long)]
        ordered: bool,
    },
    /// Chi-square uniformity test against exhaustive enumeration.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "reg")]
        algo: Algorithm,
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1e-3)]
        threshold: f64,
    },
    /// Print bounds, tables and the phase-3 probabilities as JSON.
    Params {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Gen {
            n,
            d,
            algo,
            count,
            seed,
            gamma,
            format,
            stats_out,
            ordered: _,
        } => {
            let sampler = Sampler::new(algo, n, d, gamma)?;
            let mut total = RunReport::default();
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for k in 0..count {
                let (g, r) = sampler.sample(&mut stream_rng(seed, k))?;
                total.merge(&r);
                let text = match format {
                    Format::Edgelist if k + 1 < count => to_edge_list(&g) + "\n",
                    Format::Edgelist => to_edge_list(&g),
                    Format::Graph6 => to_graph6(&g) + "\n",
                };
                out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string()))?;
            }
            if let Some(path) = stats_out {
                let body = serde_json::to_string_pretty(&total.stats_json()).expect("json");
                std::fs::write(&path, body + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            n,
            d,
            algo,
            samples,
            seed,
            gamma,
            threshold,
        } => {
            let mut cfg = VerifyConfig::new(n, d, algo, samples, seed);
            cfg.gamma = gamma;
            cfg.threshold = threshold;
            let report = verify(&cfg)?;
            for r in &report.runs {
                println!(
                    "seed {}: chi2 = {:.2} (df {}), p = {:.4}, tv = {:.4} {}",
                    r.seed,
                    r.result.statistic,
                    r.result.df,
                    r.result.p_value,
                    r.result.total_variation,
                    if r.passed { "ok" } else { "FAIL" }
                );
            }
            println!("{} graphs; {}", report.graphs, if report.passed { "uniform" } else { "NOT uniform" });
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Cmd::Params { n, d, gamma } => {
            let p = ModelParams::new(n, d, gamma)?;
            let b = p.bounds();
            let doc = json!({
                "n": n,
                "d": d,
                "gamma": gamma,
                "epsilon": p.epsilon,
                "B_L": b.b_l,
                "B_T": b.b_t,
                "B_D": b.b_d,
                "nominal_B_D": p.nominal_b_d,
                "doubles_disallowed": b.doubles_disallowed,
                "M1": p.tables.m1,
                "M2": p.tables.m2,
                "M3": p.tables.m3,
                "phase1": p.tables.loops,
                "phase2": p.tables.triples,
                "phase3": p.tables.doubles,
                "rho": p.rho,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e @ Error::InvalidParameters(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

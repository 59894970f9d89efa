//! Batch front end: expand, verify, bracket, decompose, sample, shape, and
//! asymptotics subcommands with JSON/CSV output.
//!
//! Exit codes: 0 success/pass, 1 identity-check failure (with a JSON failure
//! report on stdout), 2 usage error. All q-orders are given in integer
//! q-units and converted to quarter units internally. Randomized commands
//! require `--seed` and echo it, so identical invocations are byte-identical.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use selfconj::correlation::{check_qdifference, check_qdifference_certified, npoint};
use selfconj::limitshape::{
    convergence_csv, convergence_experiment, sig12, verify_asymptotics, GibbsConfig,
};
use selfconj::quasimod::{
    bracket_bruteforce, bracket_closed, decompose_quasimodular, extract_brackets_from_npoint,
    verify_eisenstein_form_of_g, verify_eisenstein_identities,
};
use selfconj::theta::{
    verify_onepoint, verify_theta_identities, verify_theta_identities_corrupted, verify_twopoint,
};

#[derive(Parser)]
#[command(
    name = "selfconj",
    about = "Exact correlation functions and limit shapes of self-conjugate partitions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (machine-first; `table` is the human-readable opt-in).
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the artifact to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the regularized n-point series through a q-order.
    Expand {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long = "q-order")]
        q_order: i64,
        /// Emit G's own coefficients as reduced numerator/denominator pairs.
        #[arg(long)]
        deregularize: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the q-difference equation (symbolic for n=1, at exact rational
    /// points for n >= 2).
    VerifyQdiff {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long = "q-order")]
        q_order: i64,
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long)]
        seed: u64,
        /// Use a full product grid that certifies the polynomial identity.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify theta triple products, q-shift laws, and inversion symmetries.
    VerifyTheta {
        /// Integer q-order; checked through quarter order 4 times this.
        #[arg(long = "q-order")]
        q_order: i64,
        /// Corrupt one coefficient first (forced-failure fixture, exit 1).
        #[arg(long)]
        inject_error: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the closed one-point formula, cross-multiplied.
    VerifyOnepoint {
        #[arg(long = "q-order")]
        q_order: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the closed two-point formula, cross-multiplied.
    VerifyTwopoint {
        #[arg(long = "q-order")]
        q_order: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute a bracket <Q_{l1}...Q_{ln}> by one or all methods, with its
    /// weight-graded quasimodular decomposition.
    Bracket {
        /// Comma-separated even indices, e.g. 2,2.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<u64>,
        #[arg(long = "q-order")]
        q_order: i64,
        #[arg(long, default_value = "all")]
        method: String,
        /// Decomposition weight (defaults to the index sum).
        #[arg(long)]
        weight: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decompose a bracket series into weight-w monomials in
    /// {G2, G2^(1,0), G2^(1,1)}.
    Decompose {
        /// Bracket indices (e.g. 2,2); alternatively give --mu.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<u64>>,
        /// mu with indices 2*mu_i, e.g. --mu 1,1 for <Q2 Q2>.
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<u64>>,
        #[arg(long)]
        weight: Option<u64>,
        #[arg(long = "q-order", default_value_t = 40)]
        q_order: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the Eisenstein level-split and bbG combination identities.
    VerifyEisenstein {
        #[arg(long = "q-order", default_value_t = 30)]
        q_order: i64,
        #[arg(long = "l-max", default_value_t = 8)]
        l_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the Eisenstein form of G(t) and the Bernoulli identity.
    VerifyEisensteinForm {
        #[arg(long = "l-max", default_value_t = 6)]
        l_max: u64,
        #[arg(long = "q-order", default_value_t = 12)]
        q_order: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draw seeded samples from the Gibbs measure.
    Sample {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long = "cutoff-eps", default_value_t = 1e-12)]
        cutoff_eps: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Limit-shape convergence experiment (CSV table).
    Shape {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        /// Comma-separated positive grid points.
        #[arg(long = "x-grid", value_delimiter = ',')]
        x_grid: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Asymptotics of the one-point function: exact coefficient list and the
    /// numeric T(Lambda) comparison.
    Asymptotics {
        /// Comma-separated r values (descending recommended).
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.02, 0.01])]
        r: Vec<f64>,
        /// Imaginary parts of z (z = i*value).
        #[arg(long = "z-imag", value_delimiter = ',', default_values_t = vec![0.1])]
        z_imag: Vec<f64>,
        /// Highest coefficient index k (term z^{2k-1}).
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, text) = run(cli.command);
    if let Err(e) = text {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

type RunOutput = (u8, Result<(), String>);

fn emit(output: &OutputArgs, body: &str) -> Result<(), String> {
    match &output.out {
        None => {
            println!("{body}");
            Ok(())
        }
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| e.to_string())?;
            writeln!(f, "{body}").map_err(|e| e.to_string())
        }
    }
}

fn report_set_output(set: &selfconj::report::ReportSet, output: &OutputArgs) -> RunOutput {
    let body = match output.format {
        Format::Table => {
            let mut s = String::new();
            for r in &set.reports {
                s.push_str(&format!(
                    "{:<36} order {:>4}  {}\n",
                    r.identity,
                    r.order_checked,
                    if r.passed() { "pass" } else { "FAIL" }
                ));
            }
            s.trim_end().to_string()
        }
        _ => serde_json::to_string_pretty(set).expect("serializable"),
    };
    let code = u8::from(!set.passed());
    (code, emit(output, &body))
}

fn run(command: Command) -> RunOutput {
    match command {
        Command::Expand {
            n,
            q_order,
            deregularize,
            output,
        } => {
            if n == 0 {
                return (2, Err("--n must be at least 1".into()));
            }
            let series = npoint(n, q_order);
            let v = series.to_json(deregularize);
            (0, emit(&output, &serde_json::to_string_pretty(&v).unwrap()))
        }
        Command::VerifyQdiff {
            n,
            q_order,
            points,
            seed,
            certify,
            output,
        } => {
            if n == 0 {
                return (2, Err("--n must be at least 1".into()));
            }
            let report = if certify && n >= 2 {
                check_qdifference_certified(n, q_order, seed)
            } else {
                check_qdifference(n, q_order, points, seed)
            };
            let body = serde_json::to_string_pretty(&report).unwrap();
            (u8::from(!report.passed()), emit(&output, &body))
        }
        Command::VerifyTheta {
            q_order,
            inject_error,
            output,
        } => {
            let set = if inject_error {
                verify_theta_identities_corrupted(4 * q_order)
            } else {
                verify_theta_identities(4 * q_order)
            };
            report_set_output(&set, &output)
        }
        Command::VerifyOnepoint { q_order, output } => {
            let set = selfconj::report::ReportSet::new(vec![verify_onepoint(q_order)]);
            report_set_output(&set, &output)
        }
        Command::VerifyTwopoint { q_order, output } => {
            let set = selfconj::report::ReportSet::new(vec![verify_twopoint(q_order)]);
            report_set_output(&set, &output)
        }
        Command::Bracket {
            indices,
            q_order,
            method,
            weight,
            output,
        } => bracket_command(indices, q_order, &method, weight, output),
        Command::Decompose {
            indices,
            mu,
            weight,
            q_order,
            output,
        } => {
            let indices = match (indices, mu) {
                (Some(i), None) => i,
                (None, Some(mu)) => mu.iter().map(|m| 2 * m).collect(),
                _ => {
                    return (2, Err("give exactly one of --indices or --mu".into()));
                }
            };
            let bracket = bracket_bruteforce(&indices, q_order);
            let weight = weight.unwrap_or(bracket.weight);
            match decompose_quasimodular(&bracket.series, weight, q_order) {
                Ok(d) => {
                    let mut v = bracket.to_json();
                    v["decomposition"] = d.to_json();
                    (0, emit(&output, &serde_json::to_string_pretty(&v).unwrap()))
                }
                Err(e) => {
                    let v = serde_json::json!({
                        "indices": indices,
                        "weight": weight,
                        "status": "fail",
                        "error": e.to_string(),
                    });
                    (1, emit(&output, &serde_json::to_string_pretty(&v).unwrap()))
                }
            }
        }
        Command::VerifyEisenstein {
            q_order,
            l_max,
            output,
        } => {
            let set = verify_eisenstein_identities(q_order, l_max);
            report_set_output(&set, &output)
        }
        Command::VerifyEisensteinForm {
            l_max,
            q_order,
            output,
        } => {
            let set = verify_eisenstein_form_of_g(l_max, q_order);
            report_set_output(&set, &output)
        }
        Command::Sample {
            r,
            samples,
            seed,
            cutoff_eps,
            output,
        } => {
            if r <= 0.0 {
                return (2, Err("--r must be positive".into()));
            }
            let mut cfg = GibbsConfig::new(r, seed, samples);
            cfg.cutoff_eps = cutoff_eps;
            let drawn: Vec<serde_json::Value> = (0..samples)
                .map(|i| {
                    let lam = selfconj::limitshape::sample_partition(&cfg, i as u64);
                    serde_json::json!({
                        "index": i,
                        "size": lam.size(),
                        "parts": lam.parts(),
                    })
                })
                .collect();
            let v = serde_json::json!({
                "r": r,
                "seed": seed,
                "cutoff_eps": cutoff_eps,
                "samples": drawn,
            });
            (0, emit(&output, &serde_json::to_string_pretty(&v).unwrap()))
        }
        Command::Shape {
            r,
            samples,
            seed,
            epsilon,
            x_grid,
            output,
        } => {
            if r <= 0.0 || x_grid.iter().any(|&x| x <= 0.0) {
                return (
                    2,
                    Err("--r and all --x-grid points must be positive".into()),
                );
            }
            let cfg = GibbsConfig::new(r, seed, samples);
            let rows = convergence_experiment(&cfg, &x_grid, epsilon);
            let body = match output.format {
                Format::Json => serde_json::to_string_pretty(&rows).unwrap(),
                _ => convergence_csv(&rows).trim_end().to_string(),
            };
            (0, emit(&output, &body))
        }
        Command::Asymptotics {
            r,
            z_imag,
            k_max,
            output,
        } => {
            let report = verify_asymptotics(&r, &z_imag, k_max);
            let body = match output.format {
                Format::Table => {
                    let mut s = format!(
                        "coefficients through z^{}: {}\n",
                        2 * report.coefficients_checked as i64 - 3,
                        if report.coefficients_match {
                            "pass"
                        } else {
                            "FAIL"
                        }
                    );
                    for row in &report.numeric {
                        s.push_str(&format!(
                            "r = {}  z = {}i  deviation {}\n",
                            sig12(row.r),
                            sig12(row.z_imag),
                            sig12(row.deviation)
                        ));
                    }
                    s.trim_end().to_string()
                }
                _ => serde_json::to_string_pretty(&report).unwrap(),
            };
            let code = u8::from(!report.coefficients_match);
            (code, emit(&output, &body))
        }
    }
}

fn bracket_command(
    mut indices: Vec<u64>,
    q_order: i64,
    method: &str,
    weight: Option<u64>,
    output: OutputArgs,
) -> RunOutput {
    if indices.is_empty() {
        return (2, Err("--indices must be non-empty".into()));
    }
    indices.sort_unstable();
    let total: u64 = indices.iter().sum();
    let all_even_positive = indices.iter().all(|&l| l >= 2 && l % 2 == 0);

    let mut results = Vec::new();
    let wants = |m: &str| method == "all" || method == m;
    if wants("bruteforce") {
        results.push(bracket_bruteforce(&indices, q_order));
    }
    if wants("closed") {
        if all_even_positive {
            let mu: Vec<u64> = indices.iter().rev().map(|l| l / 2).collect();
            results.push(bracket_closed(&mu, q_order));
        } else if method == "closed" {
            return (2, Err("--method closed requires even indices >= 2".into()));
        }
    }
    if wants("extracted") {
        if all_even_positive {
            let l_max = *indices.iter().max().expect("non-empty");
            match extract_brackets_from_npoint(indices.len(), l_max, q_order) {
                Ok(family) => {
                    if let Some(b) = family.into_iter().find(|b| b.indices == indices) {
                        results.push(b);
                    }
                }
                Err(e) => return (2, Err(e.to_string())),
            }
        } else if method == "extracted" {
            return (
                2,
                Err("--method extracted requires even indices >= 2".into()),
            );
        }
    }
    if results.is_empty() {
        return (2, Err(format!("unknown --method {method}")));
    }

    let shared_order = results
        .iter()
        .map(|b| b.series.order())
        .min()
        .unwrap_or(q_order)
        .min(q_order);
    let agree = results
        .windows(2)
        .all(|w| w[0].series.truncate(shared_order) == w[1].series.truncate(shared_order));

    let weight = weight.unwrap_or(total);
    let decomposition = decompose_quasimodular(&results[0].series, weight, shared_order);

    let v = serde_json::json!({
        "indices": indices,
        "weight": total,
        "order": shared_order,
        "agree": agree,
        "methods": results.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        "decomposition": match &decomposition {
            Ok(d) => d.to_json(),
            Err(e) => serde_json::json!({ "status": "fail", "error": e.to_string() }),
        },
    });
    let code = u8::from(!(agree && decomposition.is_ok()));
    (code, emit(&output, &serde_json::to_string_pretty(&v).unwrap()))
}

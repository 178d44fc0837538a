//! `vest`: generate instances from the hardness constructions, count or decide
//! them, and cross-check generators against brute-force oracles.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use vest_core::crossval::{verify_reduction, Reduction, VerifyConfig};
use vest_core::dp::{count_mk_dp_traced, DpOptions};
use vest_core::reductions::{
    dominating_set_to_vest, eliminate_s, exact_cover_to_at_most_k_sum, exact_cover_to_k_product,
    parse_integer_list, pcp_to_vest, sum_to_vest_identity_s, sum_to_zero_matrix_product,
    vest_to_zero_product, zero_product_to_vest, GadgetStyle, Graph, PcpInstance,
    ReductionCertificate, SetSystem,
};
use vest_core::{
    count_mk_dp_rows, min_k, mk_bruteforce, mk_bruteforce_parallel, Budget, FieldTag, VestError,
    VestInstance,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MALFORMED: u8 = 4;

#[derive(Parser)]
#[command(name = "vest", version, about)]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance from a source problem; writes the instance to --out and
    /// the certificate next to it as <stem>.cert.json.
    Gen {
        #[arg(value_parser = parse_reduction)]
        reduction: Reduction,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Style::Counting)]
        style: Style,
        /// Field for the dominating-set gadget: `rational` or a prime modulus.
        #[arg(long, default_value = "rational", value_parser = parse_field)]
        field: FieldTag,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print `M_k = <count>` for an instance file.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Sequence length; defaults to the `k` stored in the instance.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
        /// Nonzero leading rows for `dp-rows` (default: all rows).
        #[arg(long)]
        p: Option<usize>,
        /// Enumeration budget for `brute`, in sequence-steps.
        #[arg(long, default_value_t = Budget::DEFAULT.0)]
        budget: u64,
        /// Print per-level state counts (dp only).
        #[arg(long)]
        trace: bool,
    },
    /// Print the smallest k >= 1 with M_k > 0, or `none`.
    MinK {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Cross-check a generator against the brute-force oracles.
    VerifyReduction {
        #[arg(value_parser = parse_reduction)]
        reduction: Reduction,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the exhaustive sweep and run only the random trials.
        #[arg(long)]
        no_exhaustive: bool,
    },
    /// Time brute force against the DP for k = 1..=kmax, as CSV.
    Bench {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = Budget::DEFAULT.0)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Counting,
    Decision,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Dp,
    DpRows,
}

fn parse_reduction(s: &str) -> Result<Reduction, String> {
    s.parse().map_err(|e: VestError| e.to_string())
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    match s {
        "rational" | "Q" | "q" => Ok(FieldTag::RATIONAL),
        _ => {
            let p: u64 = s
                .parse()
                .map_err(|_| format!("expected `rational` or a prime, got {s:?}"))?;
            FieldTag::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// Error carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<VestError> for Failure {
    fn from(e: VestError) -> Self {
        let code = match e {
            VestError::BudgetExceeded { .. } => EXIT_BUDGET,
            VestError::InfiniteField(_) | VestError::UnsupportedField { .. } => EXIT_USAGE,
            _ => EXIT_MALFORMED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_MALFORMED,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> CliResult<u8> {
    match command {
        Command::Gen {
            reduction,
            input,
            k,
            style,
            field,
            out: path,
        } => {
            generate(reduction, &input, k, style, field, &path)?;
            writeln!(out, "wrote {}", path.display())?;
            writeln!(out, "wrote {}", certificate_path(&path).display())?;
            Ok(0)
        }
        Command::Solve {
            input,
            k,
            method,
            p,
            budget,
            trace,
        } => {
            let inst = read_instance(&input)?;
            let k = k
                .or(inst.k())
                .ok_or_else(|| usage("no --k given and the instance stores none"))?;
            solve(&inst, k, method, p, Budget(budget), trace, out)?;
            Ok(0)
        }
        Command::MinK { input, p } => {
            let inst = read_instance(&input)?;
            let result = min_k(&inst, p.unwrap_or(inst.dim()))?;
            match result.k {
                Some(k) => writeln!(out, "min_k = {k}")?,
                None => writeln!(out, "min_k = none")?,
            }
            writeln!(out, "levels = {}", result.levels)?;
            Ok(0)
        }
        Command::VerifyReduction {
            reduction,
            trials,
            max_size,
            seed,
            no_exhaustive,
        } => {
            let cfg = VerifyConfig {
                trials,
                max_size,
                seed,
                exhaustive: !no_exhaustive,
                budget: Budget::DEFAULT,
            };
            let report = verify_reduction(reduction, &cfg)?;
            for r in &report.results {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "{}", report.summary())?;
            Ok(if report.passed() {
                0
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Bench {
            input,
            kmax,
            budget,
        } => {
            let inst = read_instance(&input)?;
            bench(&inst, kmax, Budget(budget), out)?;
            Ok(0)
        }
    }
}

fn solve(
    inst: &VestInstance,
    k: usize,
    method: Method,
    p: Option<usize>,
    budget: Budget,
    trace: bool,
    out: &mut impl Write,
) -> CliResult {
    if trace && method != Method::Dp {
        return Err(usage("--trace is only available with --method dp"));
    }
    let count = match method {
        Method::Brute if rayon::current_num_threads() > 1 => {
            mk_bruteforce_parallel(inst, k, budget)?
        }
        Method::Brute => mk_bruteforce(inst, k, budget)?,
        Method::Dp => {
            let opts = DpOptions {
                parallel: rayon::current_num_threads() > 1,
            };
            let (count, levels) = count_mk_dp_traced(inst, k, opts)?;
            if trace {
                for level in levels {
                    writeln!(out, "{level}")?;
                }
            }
            count
        }
        Method::DpRows => count_mk_dp_rows(inst, p.unwrap_or(inst.dim()), k)?,
    };
    writeln!(out, "M_k = {count}")?;
    Ok(())
}

fn bench(inst: &VestInstance, kmax: usize, budget: Budget, out: &mut impl Write) -> CliResult {
    writeln!(out, "k,method,millis,count")?;
    let finite = inst.tag().modulus().is_some();
    for k in 1..=kmax {
        let start = Instant::now();
        match mk_bruteforce(inst, k, budget) {
            Ok(count) => writeln!(out, "{k},brute,{:.3},{count}", millis(start))?,
            Err(VestError::BudgetExceeded { .. }) => writeln!(out, "{k},brute,NA,budget_exceeded")?,
            Err(e) => return Err(e.into()),
        }
        if finite {
            let start = Instant::now();
            let (count, _) = count_mk_dp_traced(inst, k, DpOptions::default())?;
            writeln!(out, "{k},dp,{:.3},{count}", millis(start))?;
        }
    }
    Ok(())
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_MALFORMED,
        message: format!("{}: {e}", path.display()),
    })
}

fn read_instance(path: &Path) -> CliResult<VestInstance> {
    Ok(VestInstance::from_json(&read_text(path)?)?)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| VestError::Malformed(e.to_string()).into())
}

fn certificate_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    out.with_file_name(format!("{stem}.cert.json"))
}

fn generate(
    reduction: Reduction,
    input: &Path,
    k: Option<usize>,
    style: Style,
    field: FieldTag,
    out: &Path,
) -> CliResult {
    let text = read_text(input)?;
    let need_k = || k.ok_or_else(|| usage(format!("{reduction} needs --k")));
    let (instance_json, cert): (String, ReductionCertificate) = match reduction {
        Reduction::DominatingSet => {
            let g = Graph::parse_edge_list(&text)?;
            let style = match style {
                Style::Counting => GadgetStyle::Counting,
                Style::Decision => GadgetStyle::Decision,
            };
            let (inst, cert) = dominating_set_to_vest(&g, need_k()?, style, field)?;
            (inst.to_json(), cert)
        }
        Reduction::KProduct => {
            let sys: SetSystem = parse_json(&text)?;
            let (out, cert) = exact_cover_to_k_product(&sys, need_k()?)?;
            (out.to_vest()?.to_json(), cert)
        }
        Reduction::KSum => {
            let sys: SetSystem = parse_json(&text)?;
            let (out, cert) = exact_cover_to_at_most_k_sum(&sys, need_k()?)?;
            (out.to_json(), cert)
        }
        Reduction::ZeroProduct | Reduction::VestIdentity => {
            let a = parse_integer_list(&text)?;
            let (inst, cert) = if reduction == Reduction::ZeroProduct {
                sum_to_zero_matrix_product(&a, need_k()?)?
            } else {
                sum_to_vest_identity_s(&a, need_k()?)?
            };
            (inst.to_json(), cert)
        }
        Reduction::EliminateS | Reduction::ZeroProductToVest | Reduction::VestToZeroProduct => {
            let src = VestInstance::from_json(&text)?;
            let k = k
                .or(src.k())
                .ok_or_else(|| usage(format!("{reduction} needs --k")))?;
            let (inst, cert) = match reduction {
                Reduction::EliminateS => eliminate_s(&src, k)?,
                Reduction::ZeroProductToVest => zero_product_to_vest(&src, k)?,
                _ => vest_to_zero_product(&src, k)?,
            };
            (inst.to_json(), cert)
        }
        Reduction::Pcp => {
            let pcp: PcpInstance = parse_json(&text)?;
            let (inst, cert) = pcp_to_vest(&pcp)?;
            (inst.to_json(), cert)
        }
    };
    fs::write(out, instance_json + "\n")?;
    fs::write(certificate_path(out), cert.to_json() + "\n")?;
    Ok(())
}

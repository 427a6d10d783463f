//! `fupdate` command-line tool. Results go to stdout as `key: value` lines,
//! diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 negative verdict (invalid encoder, decode or
//! simulation failure, no construction), 2 parse or usage error, 3 work
//! budget exceeded.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fupdate::codes::{covering_radius, Role};
use fupdate::construct::{construct, Choice, ConstructionReport};
use fupdate::fic::FicProblem;
use fupdate::format::{parse_matrix, parse_problem, parse_vector, write_fic, write_matrix};
use fupdate::oracle::{bounds, optimal_codelength};
use fupdate::problem::{is_valid_encoder_matrix, reduce_encoder, sufficient_field_check, syndromes_leave_gap, Decoder};
use fupdate::sim::{simulate, simulate_exhaustive};
use fupdate::{EncoderScheme, Error, Exec, FunctionUpdateProblem, Limits, Matrix, Method, Validity};

#[derive(Parser)]
#[command(name = "fupdate", version, about = "Linear codes for sparse function updates")]
struct Cli {
    #[command(flatten)]
    limits: LimitArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    /// Maximum number of vectors an enumeration may visit.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u128>,
    /// Node budget for the backtracking searches.
    #[arg(long, global = true, value_name = "N")]
    nodes: Option<u64>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        let mut lim = Limits::default();
        if self.sequential {
            lim.exec = Exec::Sequential;
        }
        if let Some(b) = self.budget {
            lim.enumeration = b;
        }
        if let Some(n) = self.nodes {
            lim.search_nodes = n;
        }
        lim
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build an encoder and write S and H.
    Construct {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Codelength for the subspace construction.
        #[arg(long)]
        target_l: Option<usize>,
        /// Where to write S; printed after the report when omitted.
        #[arg(long)]
        s_out: Option<PathBuf>,
        /// Where to write H = S·A; printed after the report when omitted.
        #[arg(long)]
        h_out: Option<PathBuf>,
    },
    /// Check an encoder, given as S (l×m) or H (l×n).
    Validate {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        encoder: PathBuf,
    },
    /// Lower and upper bounds on the optimal codelength.
    Bounds {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Exact optimal codelength by exhaustive search.
    Optimal {
        #[arg(long)]
        problem: PathBuf,
        /// Where to write the optimal S; printed when omitted.
        #[arg(long)]
        s_out: Option<PathBuf>,
    },
    /// Recover A(x+e) from a codeword and the stale A·x.
    Decode {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        encoder: PathBuf,
        #[arg(long)]
        codeword: PathBuf,
        #[arg(long)]
        stale: PathBuf,
    },
    /// Write the equivalent functional index coding instance.
    FicExport {
        #[arg(long)]
        problem: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode/decode round trips with random or exhaustive updates.
    Simulate {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        encoder: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Try every update of weight ≤ ε instead of random trials.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Covering radius of a code.
    CoveringRadius {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        role: RoleArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Naive,
    DropOne,
    T1Ecc,
    Subspace,
    Companion,
}

impl From<MethodArg> for Choice {
    fn from(m: MethodArg) -> Choice {
        match m {
            MethodArg::Auto => Choice::Auto,
            MethodArg::Naive => Choice::Naive,
            MethodArg::DropOne => Choice::DropOne,
            MethodArg::T1Ecc => Choice::T1Ecc,
            MethodArg::Subspace => Choice::Subspace,
            MethodArg::Companion => Choice::Companion,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RoleArg {
    Generator,
    Parity,
}

/// Failure carrying its exit code.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            Error::Parse(_)
            | Error::InvalidProblem(_)
            | Error::InvalidField(_)
            | Error::InvalidParams(_)
            | Error::DimensionMismatch(_)
            | Error::SpecMismatch
            | Error::BadShape(_) => 2,
            _ => 1,
        };
        Fail { code, msg: e.to_string() }
    }
}

type CliResult = Result<u8, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail { code: 2, msg: format!("{}: {e}", path.display()) })
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail { code: 2, msg: format!("{}: {e}", path.display()) })
}

fn load_problem(path: &Path) -> Result<FunctionUpdateProblem, Fail> {
    parse_problem(&read(path)?).map_err(|e| Fail { code: 2, msg: format!("{}: {e}", path.display()) })
}

fn load_matrix(path: &Path, problem: &FunctionUpdateProblem) -> Result<Matrix, Fail> {
    parse_matrix(&read(path)?, Some(problem.field()))
        .map_err(|e| Fail { code: 2, msg: format!("{}: {e}", path.display()) })
}

fn load_vector(path: &Path, problem: &FunctionUpdateProblem) -> Result<Vec<u32>, Fail> {
    parse_vector(&read(path)?, Some(problem.field()))
        .map_err(|e| Fail { code: 2, msg: format!("{}: {e}", path.display()) })
}

enum Encoder {
    S(EncoderScheme),
    /// An `l×n` matrix that is not of the form `S·A`.
    Raw(Matrix),
}

/// Reads an encoder given either as S (m columns) or as H (n columns). When
/// m = n the file is read as S.
fn load_encoder(path: &Path, problem: &FunctionUpdateProblem) -> Result<Encoder, Fail> {
    let mat = load_matrix(path, problem)?;
    if mat.cols() == problem.m() {
        Ok(Encoder::S(EncoderScheme::new(problem, mat, Method::External)?))
    } else if mat.cols() == problem.n() {
        let scheme = reduce_encoder(problem, &mat)?;
        if scheme.h() == &mat {
            Ok(Encoder::S(scheme))
        } else {
            Ok(Encoder::Raw(mat))
        }
    } else {
        Err(Fail {
            code: 2,
            msg: format!(
                "encoder has {} columns; expected m = {} (S) or n = {} (H)",
                mat.cols(),
                problem.m(),
                problem.n()
            ),
        })
    }
}

fn load_scheme(path: &Path, problem: &FunctionUpdateProblem) -> Result<EncoderScheme, Fail> {
    match load_encoder(path, problem)? {
        Encoder::S(scheme) => Ok(scheme),
        Encoder::Raw(_) => Err(Fail {
            code: 2,
            msg: format!("{}: rows of H are not all in the row space of A; supply S instead", path.display()),
        }),
    }
}

fn kv(key: &str, value: impl Display) {
    println!("{key}: {value}");
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn emit_matrix(label: &str, m: &Matrix, out: Option<&Path>) -> Result<(), Fail> {
    match out {
        Some(path) => {
            write(path, &write_matrix(m))?;
            kv(&format!("{label}_file"), path.display());
        }
        None => print!("{label}:\n{}", write_matrix(m)),
    }
    Ok(())
}

fn report_construction(r: &ConstructionReport) {
    kv("method", r.scheme.method());
    kv("l", r.codelength());
    kv("precondition", &r.precondition);
    if let Some(b) = &r.bounds {
        kv("lower", b.lower);
        kv("upper", b.upper);
    }
}

fn run(cli: Cli) -> CliResult {
    let lim = cli.limits.limits();
    match cli.command {
        Command::Construct { problem, method, target_l, s_out, h_out } => {
            let p = load_problem(&problem)?;
            let r = construct(&p, method.into(), target_l, &lim)?;
            report_construction(&r);
            if let Some(s_hat) = &r.s_hat {
                kv("s_hat_field", format!("GF({}), modulus {:?}", s_hat.field().order(), s_hat.field().modulus()));
                print!("S_hat:\n{}", write_matrix(s_hat));
            }
            emit_matrix("S", r.scheme.s(), s_out.as_deref())?;
            emit_matrix("H", r.scheme.h(), h_out.as_deref())?;
            Ok(0)
        }
        Command::Validate { problem, encoder } => {
            let p = load_problem(&problem)?;
            let (verdict, l) = match load_encoder(&encoder, &p)? {
                Encoder::S(scheme) => {
                    let sets = p.interference(&lim)?;
                    (sets.check(scheme.s(), lim.exec), scheme.codelength())
                }
                Encoder::Raw(h) => (is_valid_encoder_matrix(&p, &h, &lim)?, h.rows()),
            };
            match verdict {
                Validity::Valid => {
                    kv("verdict", format!("valid, l={l}"));
                    Ok(0)
                }
                Validity::Invalid { syndrome, delta } => {
                    kv("verdict", format!("invalid, l={l}"));
                    kv("witness", join(&delta));
                    kv("syndrome", join(&syndrome));
                    Ok(1)
                }
            }
        }
        Command::Bounds { problem } => {
            let p = load_problem(&problem)?;
            let sets = p.interference(&lim)?;
            let b = bounds(&p, &sets, &lim);
            kv("m", p.m());
            kv("n", p.n());
            kv("epsilon", p.epsilon());
            kv("lower", b.lower);
            kv("upper", b.upper);
            kv("lower_source", b.lower_source);
            kv("upper_source", b.upper_source);
            kv("i_fu", sets.syndromes().len());
            kv("eta", b.eta);
            kv("saving_possible", syndromes_leave_gap(&sets, p.m(), p.q()));
            kv("naive_optimal", p.naive_optimal());
            match sufficient_field_check(p.n(), p.m(), p.epsilon(), p.q()) {
                Ok(ok) => kv("sufficient_field", ok),
                Err(_) => kv("sufficient_field", "n/a (m ≤ 2ε)"),
            }
            Ok(0)
        }
        Command::Optimal { problem, s_out } => {
            let p = load_problem(&problem)?;
            let r = optimal_codelength(&p, &lim)?;
            kv("l_opt", r.l_opt);
            kv("certified", r.certified);
            kv("lower", r.lower);
            kv("nodes", r.nodes);
            emit_matrix("S", &r.witness, s_out.as_deref())?;
            if r.certified {
                Ok(0)
            } else {
                eprintln!("search node budget exhausted; l_opt is only an upper bound");
                Ok(3)
            }
        }
        Command::Decode { problem, encoder, codeword, stale } => {
            let p = load_problem(&problem)?;
            let scheme = load_scheme(&encoder, &p)?;
            let c = load_vector(&codeword, &p)?;
            let ax = load_vector(&stale, &p)?;
            if ax.len() != p.m() {
                return Err(Fail { code: 2, msg: format!("stale vector has length {}, m = {}", ax.len(), p.m()) });
            }
            let decoder = Decoder::build(&p, &scheme, &lim)?;
            let updated = decoder.decode(&c, &ax)?;
            kv("updated", join(&updated));
            Ok(0)
        }
        Command::FicExport { problem, out } => {
            let p = load_problem(&problem)?;
            let fic = FicProblem::from_function_update(&p, &lim)?;
            let text = write_fic(&fic)?;
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    kv("users", fic.user_count());
                    kv("fic_file", path.display());
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Simulate { problem, encoder, trials, seed, exhaustive } => {
            let p = load_problem(&problem)?;
            let scheme = load_scheme(&encoder, &p)?;
            let r = if exhaustive {
                simulate_exhaustive(&p, &scheme, &lim)?
            } else {
                simulate(&p, &scheme, trials, seed, &lim)?
            };
            kv("trials", r.trials);
            kv("failures", r.failures);
            if let Some(f) = &r.first_failure {
                kv("first_failure_x", join(&f.x));
                kv("first_failure_e", join(&f.e));
                match &f.outcome {
                    Ok(v) => kv("first_failure_outcome", format!("wrong output {}", join(v))),
                    Err(e) => kv("first_failure_outcome", e),
                }
            }
            Ok(u8::from(r.failures > 0))
        }
        Command::CoveringRadius { matrix, role } => {
            let text = read(&matrix)?;
            let m = parse_matrix(&text, None)
                .map_err(|e| Fail { code: 2, msg: format!("{}: {e}", matrix.display()) })?;
            let role = match role {
                RoleArg::Generator => Role::Generator,
                RoleArg::Parity => Role::Parity,
            };
            kv("covering_radius", covering_radius(&m, role, &lim)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative result (no certificate, failed
//! check, non-invariant symbol, failing fixture), 2 invalid input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use triangulift_cli::engine::{self, execute, is_negative, render};
use triangulift_cli::fixtures;
use triangulift_cli::io::{
    self, cert_data, parse_action, parse_certificate_file, parse_instance, to_canonical_json,
    CertificateFile, Instance, InstanceFile, PairData, Request, ResultPayload,
};
use triangulift_core::perm::interval_reorder;

#[derive(Parser)]
#[command(
    name = "triangulift",
    about = "Certify and construct unitriangular orderings of decomposition matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a certificate against a matrix instance
    Check {
        matrix: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search for orderings making a matrix lower unitriangular
    FindOrder {
        matrix: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reorder a certificate so action orbits become consecutive intervals
    IntervalOrder {
        matrix: PathBuf,
        action: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Lift the seeded basic-set pair through a tower
    Lift {
        tower: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<LiftMode>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Operations on admissible symbols and unipotent labels
    Symbols {
        #[command(subcommand)]
        op: SymbolsCommand,
    },
    /// Embedded fixture suite
    Fixtures {
        #[command(subcommand)]
        op: FixturesCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftMode {
    Ellprime,
    Central,
    DirectEll,
}

impl LiftMode {
    fn as_str(self) -> &'static str {
        match self {
            LiftMode::Ellprime => "ellprime",
            LiftMode::Central => "central",
            LiftMode::DirectEll => "direct-ell",
        }
    }
}

#[derive(Clone, clap::Args)]
struct ContextArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    eps: i64,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
}

#[derive(Subcommand)]
enum SymbolsCommand {
    /// List every admissible symbol of the context
    Enumerate {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply an automorphism action to a symbol read from a JSON file
    Act {
        #[command(flatten)]
        ctx: ContextArgs,
        /// frobenius, dual or linear
        #[arg(long)]
        action: String,
        /// Frobenius power, for --action frobenius
        #[arg(long)]
        k: Option<u64>,
        /// shift root "a/m", for --action linear
        #[arg(long)]
        z: Option<String>,
        symbol: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the symbols invariant under the subfield action, or test one
    Invariants {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        gamma: bool,
        symbol: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Map every invariant symbol to its subfield symbol
    Xi {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        gamma: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The transformed basic set at the prime ell
    BasicSet {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Unipotent labels of weight 2n with multiplicities
    Unipotent {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Re-run every fixture (or one) and compare byte-exact output
    Verify { name: Option<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn emit(file: &CertificateFile, output: Option<&Path>) -> Result<ExitCode, String> {
    let text = render(file);
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| e.to_string())?;
    if let Some(path) = output {
        std::fs::write(path, &text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(if is_negative(&file.result) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn load_certificate(path: &Path) -> Result<io::CertData, String> {
    let file = parse_certificate_file(&read(path)?).map_err(|e| e.to_string())?;
    match file.result {
        ResultPayload::Certificate(cert) => Ok(cert),
        ResultPayload::Lift { certificate, .. } => Ok(certificate),
        _ => Err("certificate file carries no certificate result".into()),
    }
}

fn matrix_instance(file: &InstanceFile) -> Result<io::MatrixInstance, String> {
    match &file.instance {
        Instance::Matrix(mi) => Ok(mi.clone()),
        _ => Err("expected a matrix instance".into()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::FindOrder { matrix, output } => {
            let instance = parse_instance(&read(&matrix)?).map_err(|e| e.to_string())?;
            let request = engine::request_for("find-order", None, instance);
            let file = execute(&request).map_err(|e| e.to_string())?;
            emit(&file, output.as_deref())
        }
        Command::Check {
            matrix,
            cert,
            output,
        } => {
            let instance = parse_instance(&read(&matrix)?).map_err(|e| e.to_string())?;
            let mi = matrix_instance(&instance)?;
            let dec = mi.to_matrix().map_err(|e| e.to_string())?;
            let cert_data_in = load_certificate(&cert)?;
            let certificate = cert_data_in.to_certificate().map_err(|e| e.to_string())?;
            let result = match dec.check_certificate(&certificate) {
                Ok(()) => ResultPayload::Check {
                    ok: true,
                    reason: None,
                },
                Err(reason) => ResultPayload::Check {
                    ok: false,
                    reason: Some(reason.to_string()),
                },
            };
            let file = CertificateFile {
                format_version: io::FORMAT_VERSION,
                request: engine::request_for("check", None, instance),
                result,
            };
            emit(&file, output.as_deref())
        }
        Command::IntervalOrder {
            matrix,
            action,
            cert,
            output,
        } => {
            let instance = parse_instance(&read(&matrix)?).map_err(|e| e.to_string())?;
            let mi = matrix_instance(&instance)?;
            let dec = mi.to_matrix().map_err(|e| e.to_string())?;
            let action_data = parse_action(&read(&action)?).map_err(|e| e.to_string())?;
            let paired = action_data.to_action(&dec).map_err(|e| e.to_string())?;
            let certificate = load_certificate(&cert)?
                .to_certificate()
                .map_err(|e| e.to_string())?;
            let reordered =
                interval_reorder(&dec, &paired, &certificate).map_err(|e| e.to_string())?;
            let file = CertificateFile {
                format_version: io::FORMAT_VERSION,
                request: engine::request_for("interval-order", None, instance),
                result: ResultPayload::Certificate(cert_data(&reordered)),
            };
            emit(&file, output.as_deref())
        }
        Command::Lift {
            tower,
            mode,
            output,
        } => {
            let instance = parse_instance(&read(&tower)?).map_err(|e| e.to_string())?;
            let mode = mode.map(LiftMode::as_str);
            let request = engine::request_for("lift", mode, instance);
            let file = execute(&request).map_err(|e| e.to_string())?;
            emit(&file, output.as_deref())
        }
        Command::Symbols { op } => run_symbols(op),
        Command::Fixtures { op } => match op {
            FixturesCommand::Verify { name } => {
                let list = match name {
                    Some(name) => vec![fixtures::by_name(&name)
                        .ok_or_else(|| format!("unknown fixture {name:?}"))?],
                    None => fixtures::all(),
                };
                let mut failed = 0;
                for fixture in &list {
                    match fixtures::verify(fixture) {
                        Ok(()) => println!("ok {}", fixture.name),
                        Err(reason) => {
                            failed += 1;
                            println!("FAIL {}: {reason}", fixture.name);
                        }
                    }
                }
                Ok(if failed == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
    }
}

fn symbols_request(value: serde_json::Value) -> InstanceFile {
    InstanceFile {
        format_version: io::FORMAT_VERSION,
        instance: Instance::Symbols(
            serde_json::from_value(value).expect("symbols request shape"),
        ),
    }
}

fn read_symbol(path: &Path) -> Result<Vec<PairData>, String> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse symbol file: {e}"))
}

fn run_symbols(op: SymbolsCommand) -> Result<ExitCode, String> {
    let (instance, output) = match op {
        SymbolsCommand::Enumerate { ctx, output } => (
            symbols_request(serde_json::json!({
                "op": "enumerate", "n": ctx.n, "eps": ctx.eps, "q": ctx.q, "p": ctx.p
            })),
            output,
        ),
        SymbolsCommand::Act {
            ctx,
            action,
            k,
            z,
            symbol,
            output,
        } => {
            let pairs = read_symbol(&symbol)?;
            (
                symbols_request(serde_json::json!({
                    "op": "act", "n": ctx.n, "eps": ctx.eps, "q": ctx.q, "p": ctx.p,
                    "action": action, "k": k, "z": z, "symbol": pairs
                })),
                output,
            )
        }
        SymbolsCommand::Invariants {
            ctx,
            e,
            gamma,
            symbol,
            output,
        } => {
            let pairs = match symbol {
                Some(path) => Some(read_symbol(&path)?),
                None => None,
            };
            (
                symbols_request(serde_json::json!({
                    "op": "invariants", "n": ctx.n, "eps": ctx.eps, "q": ctx.q, "p": ctx.p,
                    "e": e, "gamma": gamma, "symbol": pairs
                })),
                output,
            )
        }
        SymbolsCommand::Xi {
            ctx,
            e,
            gamma,
            output,
        } => (
            symbols_request(serde_json::json!({
                "op": "xi", "n": ctx.n, "eps": ctx.eps, "q": ctx.q, "p": ctx.p,
                "e": e, "gamma": gamma
            })),
            output,
        ),
        SymbolsCommand::BasicSet { ctx, ell, output } => (
            symbols_request(serde_json::json!({
                "op": "basic-set", "n": ctx.n, "eps": ctx.eps, "q": ctx.q, "p": ctx.p,
                "ell": ell
            })),
            output,
        ),
        SymbolsCommand::Unipotent { n, output } => (
            symbols_request(serde_json::json!({"op": "unipotent", "n": n})),
            output,
        ),
    };
    let request = Request {
        operation: "symbols".into(),
        mode: None,
        instance,
    };
    let file = execute(&request).map_err(|e| e.to_string())?;
    let text = to_canonical_json(&file);
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| e.to_string())?;
    if let Some(path) = output {
        std::fs::write(&path, &text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(if is_negative(&file.result) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

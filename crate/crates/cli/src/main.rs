use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use natded::checker::{check_proof, CheckConfig};
use natded::proofdoc::{document_to_json, format_proof};
use natded::semantics::{entails_with, SearchOptions, SemanticsError, Verdict};
use natded::syntax::{format_formula, parse_formula, Formula};
use natded_cli::api::{self, ApiConfig};
use natded_cli::input::{self, InputError};

const OK: u8 = 0;
const REJECTED: u8 = 1;
const INPUT: u8 = 2;
const IO: u8 = 3;
const RESOURCE: u8 = 4;

/// Fitch-style natural deduction checker for first-order logic.
///
/// Exit status: 0 accepted or valid, 1 rejected or countermodel found,
/// 2 unreadable input, 3 I/O failure, 4 search too large.
#[derive(Parser)]
#[command(name = "natded", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof file (`.ndp` text or JSON; `-` reads standard input).
    Check {
        path: PathBuf,
        /// Refuse the derived rules IP, QN and NegImp.
        #[arg(long)]
        strict: bool,
        /// Compare formulas literally instead of up to bound-variable renaming.
        #[arg(long)]
        no_alpha: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Also search domains up to this size for a countermodel to the
        /// proved sequent.
        #[arg(long, value_name = "N")]
        max_domain: Option<usize>,
    },
    /// Search small structures for a countermodel to a sequent.
    Countermodel {
        #[arg(long = "premise", value_name = "FORMULA")]
        premises: Vec<String>,
        #[arg(long, value_name = "FORMULA")]
        conclusion: String,
        #[arg(long, value_name = "N", default_value_t = 3)]
        max_domain: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a proof in canonical form.
    Fmt {
        path: PathBuf,
        /// Emit the JSON form instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Parse one formula and print it in canonical form.
    Parse {
        formula: String,
        /// Print the syntax tree as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the /v1 HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        addr: std::net::IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check {
            path,
            strict,
            no_alpha,
            json,
            max_domain,
        } => {
            let cfg = CheckConfig {
                strict,
                alpha_matching: !no_alpha,
            };
            check(&path, &cfg, json, max_domain)
        }
        Command::Countermodel {
            premises,
            conclusion,
            max_domain,
            json,
        } => countermodel(&premises, &conclusion, max_domain, json),
        Command::Fmt { path, json } => fmt(&path, json),
        Command::Parse { formula, json } => parse(&formula, json),
        Command::Serve { addr, port } => serve(SocketAddr::new(addr, port)),
    };
    ExitCode::from(code)
}

fn report_input_error(e: &InputError) -> u8 {
    eprintln!("error: {e}");
    match e {
        InputError::Io(..) => IO,
        _ => INPUT,
    }
}

fn search_options() -> Result<SearchOptions, u8> {
    input::max_structures()
        .map(|max_structures| SearchOptions { max_structures })
        .map_err(|e| {
            eprintln!("error: {e}");
            INPUT
        })
}

fn check(path: &std::path::Path, cfg: &CheckConfig, json: bool, max_domain: Option<usize>) -> u8 {
    let doc = match input::read_source(path).and_then(|t| input::parse_document(&t)) {
        Ok(doc) => doc,
        Err(e) => return report_input_error(&e),
    };
    let report = check_proof(&doc, cfg);
    let mut status = if report.accepted { OK } else { REJECTED };

    let mut verdict = None;
    if let (Some(n), Some(proved)) = (max_domain, &report.proved) {
        let opts = match search_options() {
            Ok(o) => o,
            Err(code) => return code,
        };
        let premises: Vec<Formula> = doc.premises().into_iter().cloned().collect();
        match entails_with(&premises, proved, n.max(1), &opts) {
            Ok(v) => {
                if matches!(v, Verdict::Countermodel { .. }) {
                    status = REJECTED;
                }
                verdict = Some(v);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return if matches!(e, SemanticsError::Resource { .. }) { RESOURCE } else { INPUT };
            }
        }
    }

    if json {
        match &verdict {
            None => print!("{}", report.to_json_string()),
            Some(v) => {
                let combined = json!({ "version": "v1", "report": report.to_json(), "soundness": v });
                println!("{}", serde_json::to_string_pretty(&combined).expect("serializable"));
            }
        }
        return status;
    }

    for d in &report.diagnostics {
        println!("{d}");
    }
    match &report.proved {
        Some(f) => println!("accepted: {} ⊢ {}", premise_list(&doc.premises()), format_formula(f)),
        None => {
            let errors = report.errors().count();
            println!("rejected: {errors} error{}", if errors == 1 { "" } else { "s" });
        }
    }
    match verdict {
        Some(Verdict::ValidUpTo { max_domain }) => {
            println!("no countermodel on domains of size 1 to {max_domain}")
        }
        Some(Verdict::Countermodel { structure }) => {
            print!("countermodel to the proved sequent:\n{structure}")
        }
        None => {}
    }
    status
}

fn premise_list(premises: &[&Formula]) -> String {
    premises.iter().map(|p| format_formula(p)).collect::<Vec<_>>().join(", ")
}

fn countermodel(premises: &[String], conclusion: &str, max_domain: usize, json: bool) -> u8 {
    let read = |label: &str, text: &str| {
        parse_formula(text).map_err(|e| {
            eprintln!("error: {label}: {e}");
            eprintln!("  {text}");
            eprintln!("  {}^", " ".repeat(text[..e.offset.min(text.len())].chars().count()));
        })
    };
    let Ok(ps) = premises.iter().map(|p| read("premise", p)).collect::<Result<Vec<_>, _>>() else {
        return INPUT;
    };
    let Ok(c) = read("conclusion", conclusion) else {
        return INPUT;
    };
    if max_domain == 0 {
        eprintln!("error: --max-domain must be at least 1");
        return INPUT;
    }
    let opts = match search_options() {
        Ok(o) => o,
        Err(code) => return code,
    };
    let verdict = match entails_with(&ps, &c, max_domain, &opts) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return if matches!(e, SemanticsError::Resource { .. }) { RESOURCE } else { INPUT };
        }
    };
    if json {
        let mut value = serde_json::to_value(&verdict).expect("serializable");
        value["version"] = json!("v1");
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    }
    match verdict {
        Verdict::ValidUpTo { max_domain } => {
            if !json {
                println!("no countermodel on domains of size 1 to {max_domain}");
                println!("(this does not show the sequent valid on larger domains)");
            }
            OK
        }
        Verdict::Countermodel { structure } => {
            if !json {
                print!("countermodel:\n{structure}");
            }
            REJECTED
        }
    }
}

fn fmt(path: &std::path::Path, json: bool) -> u8 {
    let doc = match input::read_source(path).and_then(|t| input::parse_document(&t)) {
        Ok(doc) => doc,
        Err(e) => return report_input_error(&e),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&document_to_json(&doc)).expect("serializable"));
    } else {
        print!("{}", format_proof(&doc));
    }
    OK
}

fn parse(text: &str, json: bool) -> u8 {
    match parse_formula(text) {
        Ok(f) if json => {
            println!("{}", serde_json::to_string_pretty(&f).expect("serializable"));
            OK
        }
        Ok(f) => {
            println!("{}", format_formula(&f));
            OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("  {text}");
            eprintln!("  {}^", " ".repeat(text[..e.offset.min(text.len())].chars().count()));
            INPUT
        }
    }
}

fn serve(addr: SocketAddr) -> u8 {
    let max_structures = match input::max_structures() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return INPUT;
        }
    };
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    runtime.block_on(async move {
        let listener = match tokio::net::TcpListener::bind(addr).await {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: cannot bind {addr}: {e}");
                return IO;
            }
        };
        eprintln!("listening on http://{addr}");
        let app = api::router(ApiConfig { max_structures });
        match axum::serve(listener, app).await {
            Ok(()) => OK,
            Err(e) => {
                eprintln!("error: {e}");
                IO
            }
        }
    })
}

//! Command-line front end: `contact-lie <command> FILE ...`.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input
//! error, 3 internal invariant error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use contact_lie::{Error, ErrorClass};

use crate::report::Report;

#[derive(Parser)]
#[command(name = "contact-lie", version, about = "Contact and K-contact structures on Lie algebras")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Algebra file, or the name of a catalog entry.
    file: String,

    /// Name of the contact form in the file.
    #[arg(long, default_value = "eta")]
    form: String,
}

#[derive(Subcommand)]
enum Command {
    /// Load a file and check antisymmetry and Jacobi.
    Validate {
        /// Algebra file, or the name of a catalog entry.
        file: String,
    },
    /// Decide whether a 1-form is contact.
    ContactCheck(Source),
    /// Solve for the Reeb field.
    Reeb(Source),
    /// K-contact analysis with the quotient when dim ≥ 5.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Metric named in the file.
        #[arg(long, conflicts_with = "auto_metric")]
        metric: Option<String>,
        /// Build a floating associated metric.
        #[arg(long)]
        auto_metric: bool,
    },
    /// Root spaces of ad(ξ) on the complexification.
    Roots(Source),
    /// Symplectic quotient by the Reeb line.
    Quotient {
        #[command(flatten)]
        source: Source,
        /// Output algebra file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Central extension of a symplectic algebra.
    Extend {
        /// Algebra file, or the name of a catalog entry.
        file: String,
        /// Name of the symplectic form in the file.
        #[arg(long, default_value = "omega")]
        omega: String,
        /// Output algebra file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Block normal form of a real skew matrix.
    NormalForm {
        /// JSON array of rows.
        #[arg(long)]
        skew_matrix: PathBuf,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry names.
    List,
    /// Describe one entry.
    Show { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::ContactCheck(_) => "contact-check",
            Command::Reeb(_) => "reeb",
            Command::Analyze { .. } => "analyze",
            Command::Roots(_) => "roots",
            Command::Quotient { .. } => "quotient",
            Command::Extend { .. } => "extend",
            Command::NormalForm { .. } => "normal-form",
            Command::Catalog { action: CatalogAction::List } => "catalog list",
            Command::Catalog { action: CatalogAction::Show { .. } } => "catalog show",
        }
    }

    fn run(&self) -> contact_lie::Result<Report> {
        match self {
            Command::Validate { file } => commands::validate(file),
            Command::ContactCheck(s) => commands::contact_check(&s.file, &s.form),
            Command::Reeb(s) => commands::reeb(&s.file, &s.form),
            Command::Analyze { source, metric, auto_metric } => {
                commands::analyze(&source.file, &source.form, metric.as_deref(), *auto_metric)
            }
            Command::Roots(s) => commands::roots(&s.file, &s.form),
            Command::Quotient { source, output } => commands::quotient(&source.file, &source.form, output),
            Command::Extend { file, omega, output } => commands::extend(file, omega, output),
            Command::NormalForm { skew_matrix } => commands::normal_form(skew_matrix),
            Command::Catalog { action: CatalogAction::List } => Ok(commands::catalog_list()),
            Command::Catalog { action: CatalogAction::Show { name } } => commands::catalog_show(name),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Verdict => 1,
        ErrorClass::Input => 2,
        ErrorClass::Internal => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let (code, text, json) = match cli.command.run() {
        Ok(r) => {
            let code = if r.verdict { 0 } else { 1 };
            (code, r.text(), r.json(name, code))
        }
        Err(e) => {
            let code = exit_code(&e);
            (code, format!("error: {e}"), report::error_json(name, code, &e))
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&json).expect("reports serialize"));
    } else if code >= 2 {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    ExitCode::from(code)
}

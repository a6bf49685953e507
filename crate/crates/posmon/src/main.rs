mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use posmon_core::SearchBudget;

use args::{Cli, Format};
use commands::{run, uses_source, Ctx};
use output::{budget_report, document, CliError};

const USAGE_EXIT: u8 = 64;
const INTERNAL_EXIT: u8 = 70;

fn subcommand_list() -> String {
    Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => {
                    eprintln!("valid subcommands: {}", subcommand_list());
                    ExitCode::from(USAGE_EXIT)
                }
            };
        }
    };
    let ctx = Ctx {
        global: &cli.global,
        budget: SearchBudget::nodes(cli.global.budget_nodes).expect("budget is at least 1"),
    };
    let name = cli.command_name();

    let source = if uses_source(&cli.command) {
        match ctx.source() {
            Ok(s) => Some(s),
            Err(e) => return fail(e),
        }
    } else {
        None
    };
    let report = match run(&ctx, &cli.command, source.as_ref()) {
        Ok(r) => r,
        Err(CliError::Search(e)) => budget_report(&e),
        Err(e) => return fail(e),
    };
    let mut out = std::io::stdout().lock();
    let written = match cli.global.format {
        Format::Json => {
            let doc = document(name, source.as_ref().map(|s| s.json()), cli.global.budget_nodes, &report);
            serde_json::to_writer_pretty(&mut out, &doc)
                .map_err(std::io::Error::other)
                .and_then(|_| writeln!(out))
        }
        Format::Text => out.write_all(report.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("posmon: {e}");
        return ExitCode::from(INTERNAL_EXIT);
    }
    ExitCode::from(report.status.exit_code())
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("posmon: {e}");
    ExitCode::from(match e {
        CliError::Usage(_) => USAGE_EXIT,
        _ => INTERNAL_EXIT,
    })
}

impl Cli {
    fn command_name(&self) -> &'static str {
        use args::Command::*;
        match self.command {
            Class { .. } => "class",
            Equiv { .. } => "equiv",
            Derive { .. } => "derive",
            Divides { .. } => "divides",
            CommonMultiples { .. } => "common-multiples",
            Lcm { .. } => "lcm",
            Fundamental { .. } => "fundamental",
            QuasiCentral { .. } => "quasi-central",
            Theorem3 => "theorem3",
            CancelScan { .. } => "cancel-scan",
            Morphism { .. } => "morphism",
            Coxeter { .. } => "coxeter",
            RepVerify { .. } => "rep-verify",
            OmegaCheck { .. } => "omega-check",
            Catalog => "catalog",
        }
    }
}

//! Argument parsing and dispatch, shared by the binary and the tests.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use probdyn::confirm::ConfirmationMode;

use crate::commands::{
    cmd_conditionalize, cmd_confirm, cmd_dutchbook, cmd_merge, cmd_normalize, cmd_repair, cmd_update, MergeMode,
    Output, UpdateMethod,
};
use crate::error::{CliError, Result};
use crate::evidence_file::EvidenceFile;

#[derive(Debug, Parser)]
#[command(name = "probdyn", version, about = "Credence-tagged probability evidence calculus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Merge the evidences of one or more files.
    Merge {
        #[arg(long, value_enum, default_value = "spd")]
        mode: MergeMode,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Normalize a weighted set of per-cell binary evidences.
    Normalize { file: PathBuf },
    /// Update P(A) of a joint prior by evidence about B.
    Update {
        prior: PathBuf,
        evidence: PathBuf,
        #[command(flatten)]
        method: UpdateFlags,
    },
    /// Impose `COLUMN:CREDENCE[:PROBABILITY]` implication constraints on a
    /// contingency evidence.
    Repair {
        file: PathBuf,
        #[arg(long = "constraint", short = 'c', required = true)]
        constraints: Vec<String>,
    },
    /// Degree of confirmation of A by binary evidence about B.
    Confirm {
        prior: PathBuf,
        evidence: PathBuf,
        #[command(flatten)]
        mode: ConfirmFlags,
    },
    /// First-order conditionalization of a `first_order` triple on B.
    Conditionalize { file: PathBuf },
    /// Evaluate the payoffs of the three-bet reflection scheme.
    Dutchbook { file: PathBuf },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct UpdateFlags {
    /// Jeffrey's rule: probability only.
    #[arg(long)]
    pub jeffrey: bool,
    /// Credence-aware indirect update.
    #[arg(long)]
    pub pd: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ConfirmFlags {
    #[arg(long)]
    pub straight: bool,
    #[arg(long)]
    pub offsetting: bool,
}

pub fn read_file(path: &Path) -> Result<EvidenceFile> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    EvidenceFile::parse_bytes(&bytes)
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Merge { mode, files } => {
            let files = files.iter().map(|p| read_file(p)).collect::<Result<Vec<_>>>()?;
            cmd_merge(&files, *mode)
        }
        Command::Normalize { file } => cmd_normalize(&read_file(file)?),
        Command::Update {
            prior,
            evidence,
            method,
        } => {
            let method = if method.jeffrey {
                UpdateMethod::Jeffrey
            } else {
                UpdateMethod::Pd
            };
            cmd_update(&read_file(prior)?, &read_file(evidence)?, method)
        }
        Command::Repair { file, constraints } => cmd_repair(&read_file(file)?, constraints),
        Command::Confirm { prior, evidence, mode } => {
            let mode = if mode.straight {
                ConfirmationMode::Straight
            } else {
                ConfirmationMode::Offsetting
            };
            cmd_confirm(&read_file(prior)?, &read_file(evidence)?, mode)
        }
        Command::Conditionalize { file } => cmd_conditionalize(&read_file(file)?),
        Command::Dutchbook { file } => cmd_dutchbook(&read_file(file)?),
    }
}

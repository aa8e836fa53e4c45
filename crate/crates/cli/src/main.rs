mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "ipk", version, about = "Exact computation with imprecise-probability models on finite spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for every sampled check.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Cap on enumerations over subsets: assessments in the direct coherence
    /// route and family members in the threshold test.
    #[arg(long, default_value_t = 16, global = true)]
    pub max_subsets: usize,
    /// Report wall-clock time in seconds.
    #[arg(long, global = true)]
    pub float_timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyGroup {
    Factorisation,
    Additivity,
    Marginals,
    Invariance,
    Envelope,
    Axioms,
    All,
}

impl PropertyGroup {
    pub fn name(self) -> &'static str {
        match self {
            PropertyGroup::Factorisation => "factorisation",
            PropertyGroup::Additivity => "additivity",
            PropertyGroup::Marginals => "marginals",
            PropertyGroup::Invariance => "invariance",
            PropertyGroup::Envelope => "envelope",
            PropertyGroup::Axioms => "axioms",
            PropertyGroup::All => "all",
        }
    }

    pub fn includes(self, group: &str) -> bool {
        self == PropertyGroup::All || self.name() == group
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coherence verdict for an instance file.
    Check { file: PathBuf },
    /// Natural extension of a gamble conditional on an event.
    Natex {
        file: PathBuf,
        /// Gamble name or inline list such as "[0,1]"; omitted evaluates the file's queries.
        #[arg(long, allow_hyphen_values = true)]
        gamble: Option<String>,
        /// `all`, or comma-separated outcome labels.
        #[arg(long, default_value = "all")]
        event: String,
        /// Also print a decimal rendering.
        #[arg(long)]
        decimal: bool,
    },
    /// Independent natural extension of two local models.
    Product {
        file1: PathBuf,
        file2: PathBuf,
        /// `singletons`, `all`, `none`, `partition:a,b|c`, or a family named in the matching file.
        #[arg(long, default_value = "none")]
        fam1: String,
        #[arg(long, default_value = "none")]
        fam2: String,
        /// File with joint queries.
        #[arg(long)]
        query: PathBuf,
    },
    /// Checks the product and envelope identities on the given instances, or
    /// on generated ones when no file is given.
    Verify {
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = PropertyGroup::All)]
        property: PropertyGroup,
        /// Sampled queries per subject.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Generated subjects per property when no file is given.
        #[arg(long, default_value_t = 12)]
        subjects: usize,
    },
    /// Measurability of a gamble with respect to a family.
    Measurable {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        gamble: String,
        /// `singletons`, `all`, `none`, `partition:a,b|c`, or a named family.
        #[arg(long)]
        family: String,
    },
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Check { file } => commands::check(common, file),
        Command::Natex { file, gamble, event, decimal } => {
            commands::natex(file, gamble.as_deref(), event, *decimal)
        }
        Command::Product { file1, file2, fam1, fam2, query } => {
            commands::product(file1, file2, fam1, fam2, query)
        }
        Command::Verify { files, property, samples, subjects } => {
            commands::verify(common, files, *property, *samples, *subjects)
        }
        Command::Measurable { file, gamble, family } => commands::measurable(common, file, gamble, family),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let outcome = dispatch(&cli);
    let elapsed = cli.common.float_timing.then(|| start.elapsed().as_secs_f64());
    let code = report::emit(&cli.common, command_name(&cli.command), outcome, elapsed);
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Natex { .. } => "natex",
        Command::Product { .. } => "product",
        Command::Verify { .. } => "verify",
        Command::Measurable { .. } => "measurable",
    }
}

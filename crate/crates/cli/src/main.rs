use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use frobsplit_cli::{cap_from_env, parse_e_range, run, Command, Format, GroupSource, RunConfig};

#[derive(Parser)]
#[command(
    name = "frobsplit",
    version,
    about = "Frobenius pushforwards of modular invariant rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Maximum group order to enumerate (default from FROBSPLIT_CAP or 1000000).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose (S^G)^(1/p^e) for a monomial group.
    Decompose {
        /// Group file.
        #[arg(long, conflicts_with = "builtin")]
        group: Option<PathBuf>,
        /// Built-in group: a3, z4-f2, cyclic-<p>, veronese-<n>, counterexample, hypersurface-<p>.
        #[arg(long)]
        builtin: Option<String>,
        /// Prime for built-ins that take one.
        #[arg(long)]
        p: Option<u32>,
        /// Frobenius exponent or range such as 1..3.
        #[arg(long, default_value = "1")]
        e: String,
        /// Also verify summand maps, graded dimensions and the splitting up to this degree.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Report multiplicities over q^n.
        #[arg(long)]
        signature: bool,
    },
    /// Annihilator witnesses for the two-generator unipotent group over F_3(t).
    Counterexample {
        /// Parameter of the second generator.
        #[arg(long, default_value = "t")]
        alpha: String,
        #[arg(long, default_value_t = 4)]
        max_e: u32,
    },
    /// Identities and F-purity checks.
    Fsing {
        #[command(subcommand)]
        command: FsingCmd,
    },
}

#[derive(Subcommand)]
enum FsingCmd {
    /// The Moore determinant identity and the hypersurface equation.
    #[command(name = "identity51")]
    MooreIdentity {
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Fedder's criterion for a weighted hypersurface file.
    Fedder {
        #[arg(long)]
        file: PathBuf,
    },
    /// The polynomial subring A with A ⊆ S^G ⊆ A^(1/p).
    Sandwich {
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// t is in the Frobenius closure of (x1, x2) but not in the ideal.
    Closure {
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Every check for the order p^3 group.
    Suite {
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// The generators and relation of the invariant ring over F_3(t).
    Presentation {
        /// Data file replacing the bundled one.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

fn config(cli: Cli) -> Result<RunConfig> {
    let command = match cli.command {
        Cmd::Decompose {
            group,
            builtin,
            p,
            e,
            max_degree,
            signature,
        } => {
            let source = match (group, builtin) {
                (Some(path), None) => GroupSource::File { path },
                (None, Some(name)) => GroupSource::Builtin { name, p },
                _ => bail!("give exactly one of --group or --builtin"),
            };
            Command::Decompose {
                source,
                es: parse_e_range(&e)?,
                max_degree,
                signature,
            }
        }
        Cmd::Counterexample { alpha, max_e } => Command::Counterexample { alpha, max_e },
        Cmd::Fsing { command } => match command {
            FsingCmd::MooreIdentity { p } => Command::MooreIdentity { p },
            FsingCmd::Fedder { file } => Command::Fedder { file },
            FsingCmd::Sandwich { p } => Command::Sandwich { p },
            FsingCmd::Closure { p } => Command::Closure { p },
            FsingCmd::Suite { p } => Command::PCubed { p },
            FsingCmd::Presentation { file } => Command::Presentation { file },
        },
    };
    Ok(RunConfig {
        command,
        cap: match cli.common.cap {
            Some(c) => c,
            None => cap_from_env()?,
        },
        workers: cli.common.workers,
        format: cli.common.format,
        out: cli.common.out,
    })
}

fn main() -> ExitCode {
    let result = (|| -> Result<bool> {
        let config = config(Cli::parse())?;
        let report = run(&config)?;
        let text = report.render(config.format)?;
        match &config.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
            None => print!("{text}"),
        }
        Ok(report.passed)
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qbc_core::scheme::parse_mask_list;
use qbc_core::{Preset, SchemeError, SchemeParams};

#[derive(Debug, Parser)]
#[command(name = "qbc", version, about = "Quantum bit commitment laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play the two-party coin toss (scripted or at the terminal).
    Cointoss {
        #[command(flatten)]
        common: CommonArgs,
        /// Moves file (`toss=head`, `guess=tail`, ...); prompts when omitted.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Run every structural check on a scheme.
    Audit {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the security-analysis battery.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Drive one endpoint of a session over TCP loopback.
    Session {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        role: RoleArg,
        #[arg(long, default_value_t = 7878)]
        port: u16,
        /// Alice: `choice=`, `element=`, `parent=`, `claim=`. Bob: `guess=`.
        #[arg(long)]
        script: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RoleArg {
    Alice,
    Bob,
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// paper-cointoss or default-masks; defaults to paper-cointoss for N=1.
    #[arg(long, conflicts_with = "masks")]
    pub preset: Option<String>,
    /// Hex mask list, one per choice, e.g. `0x1,0x3`.
    #[arg(long)]
    pub masks: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

impl CommonArgs {
    pub fn params(&self) -> Result<SchemeParams, SchemeError> {
        if let Some(masks) = &self.masks {
            return SchemeParams::with_masks(self.n, parse_mask_list(masks)?);
        }
        let preset = match &self.preset {
            Some(name) => name.parse()?,
            None if self.n == 1 => Preset::PaperCoinToss,
            None => Preset::DefaultMasks,
        };
        SchemeParams::from_preset(preset, self.n)
    }
}

/// Transport used by a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportChoice {
    InProcess,
    Tcp { port: u16 },
}

/// Everything a subcommand needs, resolved from the command line.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub params: Result<SchemeParams, SchemeError>,
    pub seed: u64,
    pub trials: u64,
    pub out: Option<PathBuf>,
    pub json: bool,
    pub transport: TransportChoice,
    pub role: Option<RoleArg>,
    pub script: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_command(command: &Command) -> Self {
        let (subcommand, common, transport, role, script) = match command {
            Command::Cointoss { common, script } => {
                ("cointoss", common, TransportChoice::InProcess, None, script.clone())
            }
            Command::Audit { common } => ("audit", common, TransportChoice::InProcess, None, None),
            Command::Analyze { common } => ("analyze", common, TransportChoice::InProcess, None, None),
            Command::Session {
                common,
                role,
                port,
                script,
            } => (
                "session",
                common,
                TransportChoice::Tcp { port: *port },
                Some(*role),
                script.clone(),
            ),
        };
        Self {
            subcommand,
            params: common.params(),
            seed: common.seed,
            trials: common.trials,
            out: common.out.clone(),
            json: common.json,
            transport,
            role,
            script,
        }
    }
}

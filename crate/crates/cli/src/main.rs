mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Quantum walks, their qubit encodings, circuits and pulse schedules.
#[derive(Parser, Debug)]
#[command(name = "walkforge", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build standard graphs.
    Graph {
        #[command(subcommand)]
        action: GraphCmd,
    },
    /// Walk graph (JSON) to qubit Hamiltonian (Pauli text).
    Encode(EncodeArgs),
    /// Qubit Hamiltonian to walk graph (JSON).
    Decode(DecodeArgs),
    /// Spin chains.
    Chain {
        #[command(subcommand)]
        model: ChainCmd,
    },
    /// Circuit synthesis.
    Synth {
        #[command(subcommand)]
        what: SynthCmd,
    },
    /// Compare a circuit against an exact propagator or a reference.
    Verify(VerifyArgs),
    /// Evolve a state on a graph or through a circuit.
    Simulate(SimulateArgs),
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    Build(BuildArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Line,
    Cycle,
    Hypercube,
    Hyperlattice,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BoundaryArg {
    Open,
    Periodic,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Node count (line, cycle).
    #[arg(long)]
    pub n: Option<usize>,
    /// Hypercube dimension.
    #[arg(long)]
    pub m: Option<usize>,
    /// Hyperlattice dimension.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Hyperlattice side length.
    #[arg(long)]
    pub side: Option<usize>,
    #[arg(long, value_enum, default_value = "open")]
    pub boundary: BoundaryArg,
    /// Uniform hopping amplitude.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Uniform onsite energy (line only).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eps: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SchemeArg {
    Single,
    Binary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PauliFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    /// Comma-separated node labels for the binary scheme.
    #[arg(long)]
    pub labels: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: PauliFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    /// Pauli text file.
    #[arg(required_unless_present = "static_params", conflicts_with = "static_params")]
    pub pauli: Option<PathBuf>,
    /// Static qubit Hamiltonian parameters (JSON).
    #[arg(long = "static")]
    pub static_params: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ChainCmd {
    Xy(XyArgs),
}

#[derive(Args, Debug)]
pub struct XyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub h: f64,
    /// Comma-separated per-bond couplings, overriding `--j`.
    #[arg(long)]
    pub couplings: Option<String>,
    /// Number of up-spins; without it the free-fermion path is emitted.
    #[arg(long)]
    pub sector: Option<usize>,
    /// Project onto distance columns and report the chain couplings.
    #[arg(long)]
    pub collapse: bool,
    /// Start label for the collapse (default `↑…↑↓…↓`).
    #[arg(long)]
    pub start: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SynthCmd {
    /// First-order Trotter circuit of a Pauli Hamiltonian.
    Trotter(TrotterArgs),
    /// One step of the uniform line walk under the Gray labelling.
    LineStep(LineStepArgs),
    /// Quantum Fourier transform.
    Qft(QftArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Lowering {
    None,
    TwoQubit,
    Fundamental,
}

#[derive(Args, Debug)]
pub struct SynthOut {
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write the pulse schedule (circuit must be fundamental).
    #[arg(long)]
    pub pulses: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub eps_strength: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta_strength: f64,
    #[arg(long, default_value_t = 1.0)]
    pub vperp_strength: f64,
}

#[derive(Args, Debug)]
pub struct TrotterArgs {
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "none")]
    pub lower: Lowering,
    #[command(flatten)]
    pub out: SynthOut,
}

#[derive(Args, Debug)]
pub struct LineStepArgs {
    /// Register width; the line has `2^n` nodes.
    #[arg(long)]
    pub n: usize,
    /// `Δ·δt` per step.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long)]
    pub cycle: bool,
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long, value_enum, default_value = "none")]
    pub lower: Lowering,
    #[command(flatten)]
    pub out: SynthOut,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LevelArg {
    Named,
    Fundamental,
}

#[derive(Args, Debug)]
pub struct QftArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "named")]
    pub level: LevelArg,
    #[command(flatten)]
    pub out: SynthOut,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Against {
    Exact,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Reference {
    Qft,
    Pulses,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub against: Against,
    #[arg(long)]
    pub circuit: PathBuf,
    /// Hamiltonian for `--against exact`.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Reference for `--against oracle`.
    #[arg(long, value_enum, default_value = "qft")]
    pub reference: Reference,
    /// Pulse schedule for `--reference pulses`.
    #[arg(long)]
    pub pulses: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, conflicts_with = "circuit", required_unless_present = "circuit")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Initial state (JSON list of `[re, im]`).
    #[arg(long, conflicts_with = "start", required_unless_present = "start")]
    pub state: Option<PathBuf>,
    /// Initial basis state index.
    #[arg(long)]
    pub start: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

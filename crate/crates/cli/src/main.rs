//! `pfg`: generate Hamiltonians, synthesize Trotter circuits, verify them
//! densely, and run benchmark suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfg_core::bench::{emit_report, run_sweep, SuiteSpec};
use pfg_core::circuit::{export_text, import_text, Metrics};
use pfg_core::frame::SignedFrame;
use pfg_core::ham::{
    bose_hubbard, fermi_hubbard, vibronic, BosonEncoding, EncodingKind, FermionMapping,
    PauliSumHamiltonian,
};
use pfg_core::manifest::RotationManifest;
use pfg_core::synth::{synth, synth_baseline, CancelConfig, SynthConfig};
use pfg_core::verify::check_path_equivalence;
use pfg_core::Error;

#[derive(Parser)]
#[command(name = "pfg", version, about = "Pauli frame graph Trotter circuit synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a model Hamiltonian file.
    Gen(GenArgs),
    /// Synthesize one Trotter step from a Hamiltonian file.
    Synth(SynthArgs),
    /// Check a circuit against its rotation manifest with dense matrices.
    Verify(VerifyArgs),
    /// Run a benchmark suite described by a TOML file.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    FermiHubbard,
    BoseHubbard,
    Vibronic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mapping {
    Jw,
    Bk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    Std,
    Gray,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Pfg,
    Staircase,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    /// Lattice sites (Hubbard models).
    #[arg(long)]
    sites: Option<usize>,
    /// Vibrational modes (vibronic).
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long, value_enum)]
    mapping: Option<Mapping>,
    #[arg(long, value_enum)]
    encoding: Option<Encoding>,
    /// Bosonic cutoff, a power of two.
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Interaction strength; 4 for Fermi-Hubbard and 1 for Bose-Hubbard when omitted.
    #[arg(long)]
    u: Option<f64>,
    /// Open boundary instead of the periodic ring.
    #[arg(long)]
    open: bool,
    /// Zero vibronic displacement.
    #[arg(long)]
    no_displacement: bool,
    /// Output file; the Hamiltonian goes to stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "pfg")]
    method: Method,
    #[arg(long, default_value_t = 0.1)]
    credit: f64,
    #[arg(long, default_value_t = 1.0)]
    dt: f64,
    #[arg(long)]
    retrace: bool,
    #[arg(long)]
    close_cycle: bool,
    /// Write TQE gates as CX plus single-qubit Cliffords.
    #[arg(long)]
    expand_tqe: bool,
    /// Seconds allowed for staircase cancellation.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    /// Circuit output; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Metrics CSV output.
    #[arg(long)]
    metrics: Option<PathBuf>,
    /// Rotation manifest output; defaults to `<output>.manifest`.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    hamiltonian: PathBuf,
    circuit: PathBuf,
    manifest: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct BenchArgs {
    spec: PathBuf,
    #[arg(short, long, default_value = "bench-out")]
    output: PathBuf,
    #[arg(long, env = "PFG_WORKERS", default_value_t = 1)]
    workers: usize,
}

enum Failure {
    Verification(String),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn io_context(path: &Path) -> impl Fn(std::io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(io_context(path))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(io_context(path))
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let usage = |m: &str| Failure::Usage(m.to_string());
    let h = match args.model {
        Model::FermiHubbard => {
            if args.encoding.is_some() || args.levels.is_some() || args.modes.is_some() {
                return Err(usage("fermi-hubbard takes --sites and --mapping only"));
            }
            let sites = args.sites.ok_or_else(|| usage("fermi-hubbard needs --sites"))?;
            let mapping = match args.mapping.ok_or_else(|| usage("fermi-hubbard needs --mapping"))? {
                Mapping::Jw => FermionMapping::JordanWigner,
                Mapping::Bk => FermionMapping::BravyiKitaev,
            };
            fermi_hubbard(sites, args.t, args.u.unwrap_or(4.0), mapping, !args.open)?
        }
        Model::BoseHubbard | Model::Vibronic => {
            if args.mapping.is_some() {
                return Err(usage("--mapping applies to fermi-hubbard only"));
            }
            let kind = match args.encoding.unwrap_or(Encoding::Std) {
                Encoding::Std => EncodingKind::StandardBinary,
                Encoding::Gray => EncodingKind::Gray,
            };
            let enc = BosonEncoding::new(kind, args.levels.unwrap_or(4))?;
            if matches!(args.model, Model::BoseHubbard) {
                let sites = args.sites.ok_or_else(|| usage("bose-hubbard needs --sites"))?;
                bose_hubbard(sites, args.t, args.u.unwrap_or(1.0), &enc)?
            } else {
                let modes = args.modes.ok_or_else(|| usage("vibronic needs --modes"))?;
                vibronic(modes, &enc, args.seed, !args.no_displacement)?
            }
        }
    };
    match &args.output {
        Some(path) => write(path, &h.to_text())?,
        None => print!("{}", h.to_text()),
    }
    eprintln!("n_qubits={} n_terms={}", h.n_qubits(), h.n_terms());
    Ok(())
}

fn load(path: &Path) -> Result<PauliSumHamiltonian, Failure> {
    let text = read(path)?;
    PauliSumHamiltonian::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn synth_cmd(args: SynthArgs) -> Result<(), Failure> {
    let h = load(&args.input)?;
    let out = match args.method {
        Method::Pfg => synth(&h, &SynthConfig {
            credit: args.credit,
            close_cycle: args.close_cycle,
            retrace: args.retrace,
            dt: args.dt,
            ..Default::default()
        })?,
        Method::Staircase => {
            if args.retrace || args.close_cycle {
                return Err(Failure::Usage("--retrace and --close-cycle apply to --method pfg".into()));
            }
            if !(args.time_limit.is_finite() && args.time_limit >= 0.0) {
                return Err(Failure::Usage("--time-limit must be a non-negative number".into()));
            }
            let cfg = CancelConfig { time_limit: std::time::Duration::from_secs_f64(args.time_limit), ..Default::default() };
            synth_baseline(&h, args.dt, &cfg)?
        }
    };
    let text = export_text(&out.circuit, args.expand_tqe);
    let manifest_path = args.manifest.clone().or_else(|| args.output.as_ref().map(|p| {
        let mut s = p.clone().into_os_string();
        s.push(".manifest");
        PathBuf::from(s)
    }));
    match &args.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(path) = &manifest_path {
        write(path, &out.manifest.to_text())?;
    }
    if let Some(path) = &args.metrics {
        write(path, &format!("{}\n{}\n", Metrics::CSV_HEADER, out.metrics.csv_row()))?;
    }
    let m = &out.metrics;
    eprintln!(
        "tqe_count={} tqe_per_term={} depth_all_gates={} depth_tqe_only={} rotation_count={}",
        m.tqe_count, m.tqe_per_term, m.depth_all_gates, m.depth_tqe_only, m.rotation_count
    );
    Ok(())
}

fn verify_cmd(args: VerifyArgs) -> Result<(), Failure> {
    let h = load(&args.hamiltonian)?;
    let circuit = import_text(&read(&args.circuit)?).map_err(|e| Failure::Usage(format!("{}: {e}", args.circuit.display())))?;
    let manifest = RotationManifest::parse(&read(&args.manifest)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.manifest.display())))?;
    if circuit.n_qubits() != h.n_qubits() || manifest.n_qubits != h.n_qubits() {
        return Err(Failure::Usage(format!(
            "qubit counts disagree: hamiltonian {}, circuit {}, manifest {}",
            h.n_qubits(),
            circuit.n_qubits(),
            manifest.n_qubits
        )));
    }
    for r in &manifest.records {
        match h.terms().get(r.term_id) {
            Some((_, p)) if *p == r.pauli => {}
            _ => {
                return Err(Failure::Verification(format!(
                    "FAIL manifest term {} ({}) is not in the Hamiltonian",
                    r.term_id, r.pauli
                )))
            }
        }
    }
    let mut frame = SignedFrame::origin(h.n_qubits());
    frame.backward_apply_all(circuit.clifford_gates())?;
    let rep = check_path_equivalence(&circuit, &manifest.records, &frame, args.tolerance)?;
    let line = format!("frobenius={:e} max_defect={:e}", rep.frobenius, rep.max_defect);
    if rep.passed {
        println!("PASS {line}");
        Ok(())
    } else {
        Err(Failure::Verification(format!("FAIL {line}")))
    }
}

fn bench_cmd(args: BenchArgs) -> Result<(), Failure> {
    let spec = SuiteSpec::parse(&read(&args.spec)?)?;
    let outcome = run_sweep(&spec, args.workers)?;
    emit_report(&outcome, &args.output).map_err(|e| Failure::Io(format!("{}: {e}", args.output.display())))?;
    for (label, msg) in &outcome.failures {
        eprintln!("error {label}: {msg}");
    }
    eprintln!("{} rows written to {}", outcome.rows.len(), args.output.display());
    let bad: Vec<&str> =
        outcome.rows.iter().filter(|r| r.verified == Some(false)).map(|r| r.label.as_str()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("verification failed: {}", bad.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Synth(a) => synth_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Bench(a) => bench_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

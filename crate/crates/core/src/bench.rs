//! Size sweeps over the model generators for both synthesizers.
//!
//! A suite is a TOML document with an optional `[defaults]` table and any
//! number of `[[sweep]]` entries:
//!
//! ```toml
//! [defaults]
//! credit = 0.1
//! baseline_time_limit = 10.0
//!
//! [[sweep]]
//! model = "fermi-hubbard"
//! mapping = "jw"
//! range = [2, 8, 2]
//! methods = ["pfg", "baseline"]
//! ```
//!
//! Outputs are `results.csv` (deterministic), `timings.csv` and
//! `summary.txt` with fitted log-log exponents.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ham::{
    bose_hubbard, fermi_hubbard, load_hamiltonian, loglog_slope, vibronic, BosonEncoding, EncodingKind,
    FermionMapping, PauliSumHamiltonian,
};
use crate::synth::{synth, synth_baseline, CancelConfig, SynthConfig, SynthOutput};
use crate::verify::{check_path_equivalence, PATH_CHECK_MAX_QUBITS};

pub const RESULTS_HEADER: &str =
    "label,model,size,method,n_qubits,n_terms,tqe_count,tqe_per_term,depth_all,depth_tqe,verified";
pub const TIMINGS_HEADER: &str = "label,method,wall_s,cpu_s";

/// Frobenius tolerance for the dense check on small instances.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Pfg,
    Baseline,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Pfg => "pfg",
            Method::Baseline => "baseline",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    FermiHubbard,
    BoseHubbard,
    Vibronic,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MappingName {
    Jw,
    Bk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingName {
    Std,
    Gray,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Defaults {
    pub credit: f64,
    pub dt: f64,
    pub seed: u64,
    /// Seconds allowed for baseline cancellation.
    pub baseline_time_limit: f64,
    pub periodic: bool,
    /// Instances up to this many qubits are checked densely.
    pub verify_max_qubits: usize,
}

impl Default for Defaults {
    fn default() -> Self {
        Self { credit: 0.1, dt: 1.0, seed: 0, baseline_time_limit: 60.0, periodic: true, verify_max_qubits: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub model: ModelName,
    pub mapping: Option<MappingName>,
    pub encoding: Option<EncodingName>,
    pub levels: Option<usize>,
    /// Explicit sizes (sites or modes).
    pub sizes: Option<Vec<usize>>,
    /// `[start, end, step]`, end inclusive.
    pub range: Option<[usize; 3]>,
    /// Hamiltonian files for `model = "file"`.
    pub paths: Option<Vec<PathBuf>>,
    pub methods: Option<Vec<Method>>,
    pub seed: Option<u64>,
    pub t: Option<f64>,
    pub u: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    #[serde(default)]
    pub defaults: Defaults,
    #[serde(default)]
    pub sweep: Vec<SweepSpec>,
}

impl SuiteSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: SuiteSpec = toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("suite spec: {e}")))?;
        spec.instances()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Expands every sweep into concrete instances, in declaration order.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let mut out = Vec::new();
        for (k, sw) in self.sweep.iter().enumerate() {
            out.extend(expand_sweep(sw, &self.defaults).map_err(|e| Error::InvalidParameter(format!("sweep {k}: {e}")))?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelInstance {
    FermiHubbard { sites: usize, mapping: FermionMapping, t: f64, u: f64, periodic: bool },
    BoseHubbard { sites: usize, encoding: EncodingKind, levels: usize, t: f64, u: f64 },
    Vibronic { modes: usize, encoding: EncodingKind, levels: usize, seed: u64 },
    File(PathBuf),
}

impl ModelInstance {
    pub fn generate(&self) -> Result<PauliSumHamiltonian> {
        match self {
            ModelInstance::FermiHubbard { sites, mapping, t, u, periodic } => {
                fermi_hubbard(*sites, *t, *u, *mapping, *periodic)
            }
            ModelInstance::BoseHubbard { sites, encoding, levels, t, u } => {
                bose_hubbard(*sites, *t, *u, &BosonEncoding::new(*encoding, *levels)?)
            }
            ModelInstance::Vibronic { modes, encoding, levels, seed } => {
                vibronic(*modes, &BosonEncoding::new(*encoding, *levels)?, *seed, true)
            }
            ModelInstance::File(path) => load_hamiltonian(path),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    /// Model family, e.g. `fermi-hubbard-jw`.
    pub model: String,
    pub size: usize,
    pub spec: ModelInstance,
    pub methods: Vec<Method>,
    pub credit: f64,
    pub dt: f64,
    pub baseline_time_limit: Duration,
    pub verify_max_qubits: usize,
}

impl Instance {
    pub fn label(&self) -> String {
        format!("{}/{}", self.model, self.size)
    }
}

fn enc_kind(e: EncodingName) -> EncodingKind {
    match e {
        EncodingName::Std => EncodingKind::StandardBinary,
        EncodingName::Gray => EncodingKind::Gray,
    }
}

fn enc_label(e: EncodingName) -> &'static str {
    match e {
        EncodingName::Std => "std",
        EncodingName::Gray => "gray",
    }
}

fn expand_sweep(sw: &SweepSpec, d: &Defaults) -> std::result::Result<Vec<Instance>, String> {
    if !(d.credit.is_finite() && d.credit >= 0.0) || !d.dt.is_finite() {
        return Err("credit and dt must be finite, credit non-negative".into());
    }
    if !(d.baseline_time_limit.is_finite() && d.baseline_time_limit >= 0.0) {
        return Err("baseline_time_limit must be a non-negative number of seconds".into());
    }
    let methods = sw.methods.clone().unwrap_or_else(|| vec![Method::Pfg, Method::Baseline]);
    if methods.is_empty() {
        return Err("methods must not be empty".into());
    }
    let sizes: Vec<usize> = match (&sw.sizes, sw.range, sw.model) {
        (_, _, ModelName::File) => Vec::new(),
        (Some(s), None, _) => s.clone(),
        (None, Some([a, b, step]), _) if step > 0 && a <= b => (a..=b).step_by(step).collect(),
        (None, Some(_), _) => return Err("range must be [start, end, step] with step > 0 and start <= end".into()),
        _ => return Err("give exactly one of `sizes` or `range`".into()),
    };
    let fermionic = sw.model == ModelName::FermiHubbard;
    if fermionic && (sw.encoding.is_some() || sw.levels.is_some()) {
        return Err("encoding and levels do not apply to fermionic models".into());
    }
    if !fermionic && sw.mapping.is_some() {
        return Err("mapping applies only to fermi-hubbard".into());
    }
    let base = |model: String, size: usize, spec: ModelInstance| Instance {
        model,
        size,
        spec,
        methods: methods.clone(),
        credit: d.credit,
        dt: d.dt,
        baseline_time_limit: Duration::from_secs_f64(d.baseline_time_limit),
        verify_max_qubits: d.verify_max_qubits.min(PATH_CHECK_MAX_QUBITS),
    };
    let out = match sw.model {
        ModelName::FermiHubbard => {
            let m = sw.mapping.ok_or("fermi-hubbard needs `mapping`")?;
            let (mapping, tag) = match m {
                MappingName::Jw => (FermionMapping::JordanWigner, "jw"),
                MappingName::Bk => (FermionMapping::BravyiKitaev, "bk"),
            };
            let (t, u) = (sw.t.unwrap_or(1.0), sw.u.unwrap_or(4.0));
            sizes
                .iter()
                .map(|&sites| {
                    base(format!("fermi-hubbard-{tag}"), sites, ModelInstance::FermiHubbard {
                        sites,
                        mapping,
                        t,
                        u,
                        periodic: d.periodic,
                    })
                })
                .collect()
        }
        ModelName::BoseHubbard | ModelName::Vibronic => {
            let e = sw.encoding.ok_or("bosonic models need `encoding`")?;
            let levels = sw.levels.ok_or("bosonic models need `levels`")?;
            BosonEncoding::new(enc_kind(e), levels).map_err(|e| e.to_string())?;
            if sw.model == ModelName::BoseHubbard {
                let (t, u) = (sw.t.unwrap_or(1.0), sw.u.unwrap_or(1.0));
                sizes
                    .iter()
                    .map(|&sites| {
                        base(format!("bose-hubbard-{}-d{levels}", enc_label(e)), sites, ModelInstance::BoseHubbard {
                            sites,
                            encoding: enc_kind(e),
                            levels,
                            t,
                            u,
                        })
                    })
                    .collect()
            } else {
                let seed = sw.seed.unwrap_or(d.seed);
                sizes
                    .iter()
                    .map(|&modes| {
                        base(format!("vibronic-{}-d{levels}-s{seed}", enc_label(e)), modes, ModelInstance::Vibronic {
                            modes,
                            encoding: enc_kind(e),
                            levels,
                            seed,
                        })
                    })
                    .collect()
            }
        }
        ModelName::File => {
            let paths = sw.paths.as_ref().ok_or("model = \"file\" needs `paths`")?;
            paths
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    base(format!("file-{stem}"), k, ModelInstance::File(p.clone()))
                })
                .collect()
        }
    };
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub label: String,
    pub model: String,
    pub size: usize,
    pub method: Method,
    pub n_qubits: usize,
    pub n_terms: usize,
    pub tqe_count: usize,
    pub tqe_per_term: f64,
    pub depth_all: u64,
    pub depth_tqe: u64,
    /// `None` when the instance is above the dense cap.
    pub verified: Option<bool>,
    pub wall: Duration,
    pub cpu: Duration,
}

impl ResultRow {
    pub fn csv_row(&self) -> String {
        let verified = match self.verified {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skip",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.label,
            self.model,
            self.size,
            self.method,
            self.n_qubits,
            self.n_terms,
            self.tqe_count,
            self.tqe_per_term,
            self.depth_all,
            self.depth_tqe,
            verified
        )
    }

    pub fn timing_row(&self) -> String {
        format!("{},{},{:.6},{:.6}", self.label, self.method, self.wall.as_secs_f64(), self.cpu.as_secs_f64())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<ResultRow>,
    /// Instances that failed to generate or synthesize, with the error text.
    pub failures: Vec<(String, String)>,
}

pub fn synthesize(h: &PauliSumHamiltonian, method: Method, inst: &Instance) -> Result<SynthOutput> {
    match method {
        Method::Pfg => synth(h, &SynthConfig { credit: inst.credit, dt: inst.dt, ..Default::default() }),
        Method::Baseline => synth_baseline(
            h,
            inst.dt,
            &CancelConfig { time_limit: inst.baseline_time_limit, ..Default::default() },
        ),
    }
}

fn run_instance(inst: &Instance, workers: usize) -> Vec<Result<ResultRow>> {
    let label = inst.label();
    let wrap = |e: Error| Error::Instance { label: label.clone(), source: Box::new(e) };
    let h = match inst.spec.generate() {
        Ok(h) => h,
        Err(e) => return vec![Err(wrap(e))],
    };
    inst.methods
        .iter()
        .map(|&method| {
            let start = Instant::now();
            let out = synthesize(&h, method, inst).map_err(wrap)?;
            let wall = start.elapsed();
            let verified = if h.n_qubits() <= inst.verify_max_qubits {
                let rep = check_path_equivalence(&out.circuit, &out.manifest.records, &out.final_frame, VERIFY_TOLERANCE)
                    .map_err(wrap)?;
                Some(rep.passed)
            } else {
                None
            };
            Ok(ResultRow {
                label: label.clone(),
                model: inst.model.clone(),
                size: inst.size,
                method,
                n_qubits: h.n_qubits(),
                n_terms: h.n_terms(),
                tqe_count: out.metrics.tqe_count,
                tqe_per_term: out.metrics.tqe_per_term,
                depth_all: out.metrics.depth_all_gates,
                depth_tqe: out.metrics.depth_tqe_only,
                verified,
                wall,
                cpu: wall * workers as u32,
            })
        })
        .collect()
}

/// Runs every instance on a pool of `workers` threads. Rows come back in
/// instance order regardless of the worker count.
pub fn run_sweep(spec: &SuiteSpec, workers: usize) -> Result<SweepOutcome> {
    let workers = workers.max(1);
    let instances = spec.instances()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let results: Vec<Vec<Result<ResultRow>>> =
        pool.install(|| instances.par_iter().map(|inst| run_instance(inst, workers)).collect());
    let mut outcome = SweepOutcome::default();
    for r in results.into_iter().flatten() {
        match r {
            Ok(row) => outcome.rows.push(row),
            Err(Error::Instance { label, source }) => outcome.failures.push((label, source.to_string())),
            Err(e) => outcome.failures.push((String::new(), e.to_string())),
        }
    }
    Ok(outcome)
}

pub fn results_csv(rows: &[ResultRow]) -> String {
    let mut out = format!("{RESULTS_HEADER}\n");
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn timings_csv(rows: &[ResultRow]) -> String {
    let mut out = format!("{TIMINGS_HEADER}\n");
    for r in rows {
        out.push_str(&r.timing_row());
        out.push('\n');
    }
    out
}

/// Fitted exponents for one `(model, method)` series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesFit {
    pub model: String,
    pub method: Method,
    pub points: usize,
    /// `n_terms` against `n_qubits`.
    pub terms_slope: Option<f64>,
    /// cpu time against `n_qubits · n_terms`.
    pub cpu_slope: Option<f64>,
    pub mean_tqe_per_term: f64,
}

pub fn fit_series(rows: &[ResultRow]) -> Vec<SeriesFit> {
    let mut groups: BTreeMap<(String, Method), Vec<&ResultRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.model.clone(), r.method)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((model, method), rs)| {
            let terms: Vec<(f64, f64)> = rs.iter().map(|r| (r.n_qubits as f64, r.n_terms as f64)).collect();
            let cpu: Vec<(f64, f64)> =
                rs.iter().map(|r| ((r.n_qubits * r.n_terms) as f64, r.cpu.as_secs_f64())).collect();
            SeriesFit {
                model,
                method,
                points: rs.len(),
                terms_slope: loglog_slope(&terms),
                cpu_slope: loglog_slope(&cpu),
                mean_tqe_per_term: rs.iter().map(|r| r.tqe_per_term).sum::<f64>() / rs.len() as f64,
            }
        })
        .collect()
}

pub fn summary_text(outcome: &SweepOutcome) -> String {
    let fmt_slope = |s: Option<f64>| s.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3}"));
    let mut out = String::new();
    let _ = writeln!(out, "rows {}", outcome.rows.len());
    let verified = outcome.rows.iter().filter(|r| r.verified.is_some()).count();
    let failed = outcome.rows.iter().filter(|r| r.verified == Some(false)).count();
    let _ = writeln!(out, "verified {verified} failed {failed}");
    let _ = writeln!(out, "# model method points terms_slope cpu_slope mean_tqe_per_term");
    for f in fit_series(&outcome.rows) {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {:.4}",
            f.model,
            f.method,
            f.points,
            fmt_slope(f.terms_slope),
            fmt_slope(f.cpu_slope),
            f.mean_tqe_per_term
        );
    }
    if outcome.rows.iter().any(|r| r.method == Method::Baseline) {
        let _ = writeln!(out, "note: baseline cancellation covers adjacent inverse pairs and same-axis rotation fusion only");
    }
    for (label, msg) in &outcome.failures {
        let _ = writeln!(out, "error {label}: {msg}");
    }
    out
}

/// Writes `results.csv`, `timings.csv` and `summary.txt` into `dir`.
pub fn emit_report(outcome: &SweepOutcome, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("results.csv"), results_csv(&outcome.rows))?;
    std::fs::write(dir.join("timings.csv"), timings_csv(&outcome.rows))?;
    std::fs::write(dir.join("summary.txt"), summary_text(outcome))?;
    Ok(())
}

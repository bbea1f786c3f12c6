//! `specrel`: audit models, check sightings and build refutation certificates.
//!
//! Exit codes: 0 when everything passes, 1 when a check fails or a violation
//! is found, 2 on input or precondition errors.

mod scene;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use specrel::axioms::{audit_all, AxiomReport, Verdict};
use specrel::geometry::Point;
use specrel::noftl::{
    build_ftl_witness, check_noftl, validate_certificate, CertificateFile, ContradictionCertificate, NoFtlCheck,
    Refutation, Validation, CERTIFICATE_FORMAT,
};
use specrel::sampling::SamplingConfig;
use specrel::{Error, FieldMode};

use scene::{parse_json, parse_scene, Scene};

const REPORT_FORMAT: &str = "specrel-report/1";

#[derive(Parser)]
#[command(name = "specrel", version, about = "Exact audits of special-relativity models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Audit every axiom against the scene's model.
    Audit {
        scene: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check each noftl block of the scene.
    Noftl {
        scene: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Build and validate a refutation certificate for each hypothesis.
    Witness {
        scene: PathBuf,
        /// Directory for certificate files (`certificate-<n>.json`).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Re-validate a certificate file.
    Validate {
        certificate: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    grid_radius: Option<u32>,
    #[arg(long)]
    random_count: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override the scene's field mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    Euclidean,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct NoFtlEntry {
    m: String,
    k: String,
    e: Point,
    f: Point,
    result: NoFtlCheck,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CertificateEntry {
    hypothesis: usize,
    certificate: ContradictionCertificate,
    validation: Validation,
    #[serde(skip_serializing_if = "Option::is_none")]
    file: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Report {
    tool: &'static str,
    version: &'static str,
    report_format: &'static str,
    command: &'static str,
    input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field_mode: Option<FieldMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampling: Option<SamplingConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<Vec<AxiomReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noftl: Option<Vec<NoFtlEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<Vec<CertificateEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<Validation>,
    verdict: &'static str,
}

impl Report {
    fn new(command: &'static str, bytes: &[u8]) -> Report {
        Report {
            tool: "specrel",
            version: env!("CARGO_PKG_VERSION"),
            report_format: REPORT_FORMAT,
            command,
            input_digest: format!("sha256:{}", hex::encode(Sha256::digest(bytes))),
            field_mode: None,
            sampling: None,
            audit: None,
            noftl: None,
            certificates: None,
            validation: None,
            verdict: "pass",
        }
    }

    fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

struct Loaded {
    bytes: Vec<u8>,
    scene: Scene,
    mode: FieldMode,
    sampling: SamplingConfig,
}

fn load(path: &Path, opts: &Opts) -> Result<Loaded, Error> {
    let bytes = read(path)?;
    let scene = parse_scene(&bytes)?;
    let mode = match opts.mode {
        Some(ModeArg::Rational) => FieldMode::Rational,
        Some(ModeArg::Euclidean) => FieldMode::Euclidean,
        None => scene.field_mode,
    };
    let mut sampling = scene.sampling.resolve();
    if let Some(s) = opts.seed {
        sampling.seed = s;
    }
    if let Some(r) = opts.grid_radius {
        sampling.grid_radius = r;
    }
    if let Some(n) = opts.random_count {
        sampling.random_count = n;
    }
    if sampling.random_count == 0 || sampling.denominator_bound == 0 {
        return Err(Error::Schema("randomCount and denominatorBound must be positive".into()));
    }
    scene.check_blocks(mode)?;
    Ok(Loaded { bytes, scene, mode, sampling })
}

fn run_audit(path: &Path, opts: &Opts) -> Result<Report, Error> {
    let l = load(path, opts)?;
    let model = l.scene.build_model(l.mode)?;
    let audit = audit_all(&model, &l.sampling);
    let mut report = Report::new("audit", &l.bytes);
    report.verdict = if audit.pass { "pass" } else { "fail" };
    report.field_mode = Some(l.mode);
    report.sampling = Some(l.sampling);
    report.audit = Some(audit.reports);
    Ok(report)
}

fn run_noftl(path: &Path, opts: &Opts) -> Result<Report, Error> {
    let l = load(path, opts)?;
    if l.scene.noftl.is_empty() {
        return Err(Error::Schema("at noftl: the scene has no checks".into()));
    }
    let model = l.scene.build_model(l.mode)?;
    let mut entries = Vec::new();
    for (i, b) in l.scene.noftl.iter().enumerate() {
        let result = check_noftl(&model, &b.m, &b.k, &b.e, &b.f).map_err(|e| match e {
            Error::PreconditionViolated(msg) => Error::PreconditionViolated(format!("noftl[{i}]: {msg}")),
            other => other,
        })?;
        entries.push(NoFtlEntry { m: b.m.clone(), k: b.k.clone(), e: b.e.clone(), f: b.f.clone(), result });
    }
    let mut report = Report::new("noftl", &l.bytes);
    report.verdict = if entries.iter().all(|e| e.result.pass) { "pass" } else { "fail" };
    report.field_mode = Some(l.mode);
    report.noftl = Some(entries);
    Ok(report)
}

fn run_witness(path: &Path, out: Option<&Path>, opts: &Opts) -> Result<Report, Error> {
    let l = load(path, opts)?;
    if l.scene.hypotheses.is_empty() {
        return Err(Error::Schema("at hypotheses: the scene has no hypotheses".into()));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    }
    let mut entries = Vec::new();
    for (i, h) in l.scene.hypotheses.iter().enumerate() {
        let certificate = build_ftl_witness(h, l.mode).map_err(|e| Error::PreconditionViolated(format!("hypotheses[{i}]: {e}")))?;
        let validation = validate_certificate(&certificate, h);
        let file = match out {
            Some(dir) => {
                let p = dir.join(format!("certificate-{i}.json"));
                let body = CertificateFile::new(h.clone(), certificate.clone());
                let text = serde_json::to_string_pretty(&body).expect("certificates serialize");
                std::fs::write(&p, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                Some(p.display().to_string())
            }
            None => None,
        };
        entries.push(CertificateEntry { hypothesis: i, certificate, validation, file });
    }
    let mut report = Report::new("witness", &l.bytes);
    report.verdict = if entries.iter().all(|e| e.validation.ok) { "pass" } else { "fail" };
    report.field_mode = Some(l.mode);
    report.certificates = Some(entries);
    Ok(report)
}

fn run_validate(path: &Path) -> Result<Report, Error> {
    let bytes = read(path)?;
    let file: CertificateFile = parse_json(&bytes)?;
    if file.format != CERTIFICATE_FORMAT {
        return Err(Error::Schema(format!("at format: expected {CERTIFICATE_FORMAT:?}, found {:?}", file.format)));
    }
    let validation = validate_certificate(&file.certificate, &file.hypothesis);
    let mut report = Report::new("validate", &bytes);
    report.verdict = if validation.ok { "pass" } else { "fail" };
    report.validation = Some(validation);
    Ok(report)
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report values serialize")
}

fn render_text(r: &Report) -> String {
    let mut out = format!("specrel {} {}\ninput {}\n", r.version, r.command, r.input_digest);
    if let Some(mode) = r.field_mode {
        out += &format!("field mode {}\n", mode.as_str());
    }
    if let Some(s) = &r.sampling {
        out += &format!(
            "sampling seed={} gridRadius={} randomCount={} denominatorBound={}\n",
            s.seed, s.grid_radius, s.random_count, s.denominator_bound
        );
    }
    for a in r.audit.iter().flatten() {
        let verdict = match a.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotCheckable => "not checkable",
        };
        out += &format!("{:<18} {:<14} {} instances\n", a.axiom.name(), verdict, a.instances_checked);
        if let Some(w) = &a.counterexample {
            out += &format!("    counterexample {}\n", compact(w));
        }
        if a.verdict != Verdict::Pass {
            for n in &a.notes {
                out += &format!("    note: {n}\n");
            }
        }
    }
    for (i, e) in r.noftl.iter().flatten().enumerate() {
        out += &format!(
            "noftl[{i}] {} sees {}: space2 {} {} c^2 time2 {}\n",
            e.m,
            e.k,
            e.result.space2,
            if e.result.pass { "<=" } else { ">" },
            e.result.bound
        );
    }
    for c in r.certificates.iter().flatten() {
        let verdict = match &c.certificate.verdict {
            Refutation::ParallelLinesMeetAt { point } => format!("parallel lines meet at {}", compact(point)),
            Refutation::AxiomViolated { axiom, witness } => format!("violates {} {}", axiom.name(), compact(witness)),
        };
        out += &format!("hypothesis[{}] g = {}: {verdict}\n", c.hypothesis, compact(&c.certificate.steps.tangent.g));
        out += &format!("    certificate {}\n", if c.validation.ok { "valid" } else { "INVALID" });
        if let Some(m) = &c.validation.first_mismatch {
            out += &format!("    mismatch: {m}\n");
        }
        if let Some(f) = &c.file {
            out += &format!("    written to {f}\n");
        }
    }
    if let Some(v) = &r.validation {
        out += &format!("certificate {}\n", if v.ok { "valid" } else { "INVALID" });
        if let Some(m) = &v.first_mismatch {
            out += &format!("mismatch: {m}\n");
        }
    }
    out += &format!("verdict {}\n", r.verdict);
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::Audit { scene, opts } => (run_audit(scene, opts), opts.format),
        Command::Noftl { scene, opts } => (run_noftl(scene, opts), opts.format),
        Command::Witness { scene, out, opts } => (run_witness(scene, out.as_deref(), opts), opts.format),
        Command::Validate { certificate, format } => (run_validate(certificate), *format),
    };
    match result {
        Ok(report) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
                Format::Text => print!("{}", render_text(&report)),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

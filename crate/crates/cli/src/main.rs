use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use nearly::curves::{sup_curve, tail_measure_curve, to_csv};
use nearly::interval::{format_rational, parse_rational, Rational};
use nearly::oracle::{mutate, mutation_catalogue, verify, VerificationReport, VerifyOptions, DEFAULT_DEPTH};
use nearly::principles::Certificate;
use nearly::scenario::{RunParams, Scenario, Task};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "nearly", version, about = "Certificates for the nearly-theorems of measure theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the task in a scenario file and write its certificate.
    Run(RunArgs),
    /// Check a certificate against the inputs named in a scenario.
    Verify(VerifyArgs),
    /// Run and verify the built-in corpus.
    Demo(DemoArgs),
}

#[derive(Args)]
struct Sampling {
    /// Grid spacing for sampled checks, as p/q.
    #[arg(long, value_name = "P/Q")]
    grid_density: Option<String>,
    /// Indices past each ν(m) visited by the sampled tail check.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: u64,
}

impl Sampling {
    fn options(&self) -> anyhow::Result<VerifyOptions> {
        let grid_density = self.grid_density.as_deref().map(positive).transpose().context("--grid-density")?;
        Ok(VerifyOptions { grid_density, depth: self.depth })
    }
}

#[derive(Args)]
struct RunArgs {
    scenario: PathBuf,
    #[arg(long, value_name = "P/Q")]
    epsilon: Option<String>,
    #[arg(long)]
    ladder: Option<u64>,
    #[arg(long)]
    accuracy: Option<u32>,
    #[arg(long)]
    cap: Option<u64>,
    /// Verify the certificate; the report goes next to --out.
    #[arg(long)]
    verify: bool,
    /// Certificate path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for decay tables.
    #[arg(long, value_name = "DIR")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    cert: PathBuf,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args)]
struct DemoArgs {
    #[command(flatten)]
    sampling: Sampling,
    /// Corrupt every certificate before verifying it.
    #[arg(long, hide = true)]
    inject_mutation: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct Params {
    epsilon: String,
    ladder: u64,
    accuracy: u32,
    cap: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct CertificateDocument {
    run_id: String,
    tool_version: String,
    task: Task,
    params: Params,
    certificate: Certificate,
}

#[derive(Debug, Serialize)]
struct ReportDocument<'a> {
    run_id: &'a str,
    tool_version: &'a str,
    elapsed_ms: u128,
    report: &'a VerificationReport,
}

fn positive(s: &str) -> anyhow::Result<Rational> {
    let r = parse_rational(s)?;
    if r <= Rational::from_integer(0.into()) {
        return Err(nearly::Error::NonPositiveEpsilon(r).into());
    }
    Ok(r)
}

fn run_id(scenario: &[u8], p: &RunParams) -> String {
    let mut h = Sha256::new();
    h.update(scenario);
    h.update(format!("\0{}\0{}\0{}\0{}", format_rational(&p.epsilon), p.ladder, p.accuracy, p.cap));
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn load_scenario(path: &Path) -> anyhow::Result<(Vec<u8>, Scenario)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let sc = Scenario::parse(text).with_context(|| path.display().to_string())?;
    Ok((bytes, sc))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn report_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.report.json"))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn summary(report: &VerificationReport) -> String {
    let verdict = if report.passed() { "pass" } else { "FAIL" };
    let mut line = format!(
        "{verdict} ({} structural, {} sampled checks)",
        report.structural_checks.len(),
        report.sampled_checks.len()
    );
    if let Some(c) = report.failures().next() {
        line.push_str(&format!("; first failure: {}: {}", c.name, c.detail));
    }
    line
}

fn cmd_run(args: &RunArgs) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let (bytes, sc) = load_scenario(&args.scenario)?;
    let mut p = sc.params()?;
    if let Some(e) = &args.epsilon {
        p.epsilon = positive(e).context("--epsilon")?;
    }
    p.ladder = args.ladder.unwrap_or(p.ladder);
    p.accuracy = args.accuracy.unwrap_or(p.accuracy);
    p.cap = args.cap.unwrap_or(p.cap);
    if p.ladder == 0 {
        bail!("--ladder must be at least 1");
    }
    let options = args.sampling.options()?;
    if args.csv.is_some() && !matches!(sc.task, Task::Egoroff | Task::EgoroffDini | Task::Dini) {
        bail!("task {:?} has no decay curve", sc.task);
    }

    let id = run_id(&bytes, &p);
    let run = sc.run(&p)?;
    let doc = CertificateDocument {
        run_id: id.clone(),
        tool_version: VERSION.to_string(),
        task: sc.task,
        params: Params { epsilon: format_rational(&p.epsilon), ladder: p.ladder, accuracy: p.accuracy, cap: p.cap },
        certificate: run.cert.clone(),
    };
    match &args.out {
        Some(out) => write(out, &pretty(&doc))?,
        None => print!("{}", pretty(&doc)),
    }

    if let Some(dir) = &args.csv {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_curves(dir, &sc, &run.cert)?;
    }

    if !args.verify {
        return Ok(ExitCode::SUCCESS);
    }
    let report = verify(&run.cert, &run.inputs, &options)?;
    let rdoc = ReportDocument {
        run_id: &id,
        tool_version: VERSION,
        elapsed_ms: start.elapsed().as_millis(),
        report: &report,
    };
    if let Some(out) = &args.out {
        write(&report_path(out), &pretty(&rdoc))?;
    }
    eprintln!("{}: {}", id, summary(&report));
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn write_curves(dir: &Path, sc: &Scenario, cert: &Certificate) -> anyhow::Result<()> {
    match cert {
        Certificate::Egoroff(c) => {
            let seq = sc.sequence(&sc.target)?;
            for m in 1..=c.ladder {
                let rows = tail_measure_curve(&seq, m, c.nu(m))?;
                write(&dir.join(format!("tail_m{m}.csv")), &to_csv(&rows))?;
            }
        }
        Certificate::Dini(c) => {
            let seq = sc.sequence(&sc.target)?;
            write(&dir.join("sup.csv"), &to_csv(&sup_curve(&seq, &c.k, c.index)?))?;
        }
        _ => unreachable!("checked before the run"),
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let (_, sc) = load_scenario(&args.scenario)?;
    let text = fs::read_to_string(&args.cert).with_context(|| format!("reading {}", args.cert.display()))?;
    // a run document, or a bare certificate
    let (id, cert) = match serde_json::from_str::<CertificateDocument>(&text) {
        Ok(doc) => (doc.run_id, doc.certificate),
        Err(_) => (String::from("-"), Certificate::from_json(&text).with_context(|| args.cert.display().to_string())?),
    };
    let report = verify(&cert, &sc.inputs()?, &args.sampling.options()?)?;
    let rdoc = ReportDocument { run_id: &id, tool_version: VERSION, elapsed_ms: start.elapsed().as_millis(), report: &report };
    match &args.out {
        Some(out) => write(out, &pretty(&rdoc))?,
        None => print!("{}", pretty(&rdoc)),
    }
    eprintln!("{}: {}", id, summary(&report));
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_demo(args: &DemoArgs) -> anyhow::Result<ExitCode> {
    let options = args.sampling.options()?;
    let cases = nearly::demo::corpus()?;
    let mut passed = 0;
    for case in &cases {
        let start = Instant::now();
        let cert = if args.inject_mutation {
            mutation_catalogue(&case.cert)
                .into_iter()
                .find_map(|m| mutate(&case.cert, m, &case.inputs))
                .unwrap_or_else(|| case.cert.clone())
        } else {
            case.cert.clone()
        };
        let report = verify(&cert, &case.inputs, &options)?;
        passed += usize::from(report.passed());
        println!(
            "{:<4}  {}: {} [{}, {} ms]",
            if report.passed() { "ok" } else { "FAIL" },
            case.name,
            case.statement,
            summary(&report),
            start.elapsed().as_millis()
        );
    }
    println!("{passed}/{} statements verified", cases.len());
    Ok(if passed == cases.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<nearly::Error>() {
        Some(nearly::Error::IterationCapExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Demo(a) => cmd_demo(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("nearly: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

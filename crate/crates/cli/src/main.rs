//! `extmod`: build, verify and sweep extension modules over canonical
//! algebras.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info};

use extmod_core::builder::{higher_rank, predicted_dims, reduce_with_trace};
use extmod_core::io::{from_json, to_json, to_latex, DatumRecord};
use extmod_core::quiver::{are_isomorphic, coefficient_set};
use extmod_core::sheaf::euler_characteristic;
use extmod_core::verify::{check_datum, enumerate_data, verify_representation, Expected};
use extmod_core::{build, CanonicalQuiver, CaseLabel, CokernelDatum, Method, Rational, Representation, WeightSpec};

#[derive(Parser)]
#[command(name = "extmod", version, about = "Exact extension modules over canonical algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structure elements, Euler characteristic and quiver size.
    Info(SpecArgs),
    /// Build the cokernel module of one datum.
    Build(BuildArgs),
    /// Verify a representation file.
    Verify(VerifyArgs),
    /// Build and verify every datum in a box.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Weights p_1,…,p_t.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    weights: Vec<i64>,
    /// Parameters λ_3,…,λ_t as rationals (default 1, 2, 3, …).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lambdas: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Source determinant as `a;a1,…,at`.
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    /// Ascending index set; three arms give a rank-two module.
    #[arg(long, value_delimiter = ',', required = true)]
    arms: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    powers: Vec<i64>,
    /// Nonzero scalars, one per arm (default 1,…,1,−1).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    mu: Option<Vec<String>>,
    /// `closed` or `cokernel`; defaults to `closed` for three arms and
    /// `cokernel` otherwise.
    #[arg(long)]
    method: Option<String>,
    /// Output file; without it the representation goes to stdout and the
    /// summary to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Largest vc-coefficient of y.
    #[arg(long, allow_negative_numbers = true)]
    max_c: i64,
    /// Restrict to one index set.
    #[arg(long, value_delimiter = ',')]
    arms: Option<Vec<usize>>,
    /// Result directory.
    #[arg(long, default_value = "sweep")]
    out: PathBuf,
}

/// An error caused by the input rather than by a failed check.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T>(r: std::result::Result<T, impl Into<anyhow::Error>>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

fn parse_rationals(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|v| input(v.parse::<Rational>())).collect()
}

impl SpecArgs {
    fn spec(&self) -> Result<WeightSpec> {
        let lambdas = self.lambdas.as_deref().map(parse_rationals).transpose()?;
        input(WeightSpec::new(self.weights.clone(), lambdas))
    }
}

fn info(args: &SpecArgs) -> Result<ExitCode> {
    let spec = args.spec()?;
    let q = CanonicalQuiver::new(&spec);
    let (vc, vw, vdom) = spec.structure_elements();
    let (chi, kind) = euler_characteristic(&spec);
    let show = |v: &[String]| v.join(",");
    println!("t\t{}", spec.t());
    println!("weights\t{}", show(&spec.weights().iter().map(i64::to_string).collect::<Vec<_>>()));
    println!("lambdas\t{}", show(&spec.lambdas().iter().map(Rational::to_string).collect::<Vec<_>>()));
    println!("vc\t{vc}");
    println!("vw\t{vw}");
    println!("vdom\t{vdom}");
    println!("chi\t{chi}");
    println!("type\t{kind}");
    println!("vertices\t{}", q.vertices().len());
    println!("arrows\t{}", q.arrows().len());
    println!("relations\t{}", q.num_relations());
    Ok(ExitCode::SUCCESS)
}

/// Writes through a sibling temporary file so readers never see a partial
/// file.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path.file_name().context("output path has no file name")?.to_string_lossy();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn render(rep: &Representation, datum: &DatumRecord, format: Format) -> String {
    match format {
        Format::Json => to_json(rep, Some(datum)),
        Format::Latex => to_latex(rep),
    }
}

fn build_cmd(args: &BuildArgs) -> Result<ExitCode> {
    let spec = args.spec.spec()?;
    let q = Arc::new(CanonicalQuiver::new(&spec));
    let y = input(spec.parse_element(&args.y))?;
    let method: Method = match &args.method {
        Some(m) => input(m.parse())?,
        None if args.arms.len() == 3 => Method::Closed,
        None => Method::Cokernel,
    };
    let mu = args.mu.as_deref().map(parse_rationals).transpose()?;
    if args.powers.len() != args.arms.len() {
        return Err(InputError(anyhow::anyhow!("{} powers for {} arms", args.powers.len(), args.arms.len())).into());
    }

    let mut summary = String::new();
    let (rep, record, report) = if args.arms.len() == 3 {
        let arms = [args.arms[0], args.arms[1], args.arms[2]];
        let powers = [args.powers[0], args.powers[1], args.powers[2]];
        let c = match mu {
            Some(m) => {
                let m: [Rational; 3] = m.try_into().map_err(|_| InputError(anyhow::anyhow!("need three scalars")))?;
                input(CokernelDatum::with_mu(y, arms, powers, m))?
            }
            None => input(CokernelDatum::new(y, arms, powers))?,
        };
        let (_, trace) = input(reduce_with_trace(&c))?;
        let rep = build(&q, &c, method)?;
        let other = match method {
            Method::Closed => Method::Cokernel,
            Method::Cokernel => Method::Closed,
        };
        let mut report = verify_representation(&rep, &Expected::for_datum(&q, &c));
        let agree = are_isomorphic(&rep, &build(&q, &c, other)?)?;
        report.push("agreement", agree, if agree { "methods agree" } else { "methods differ" });
        let labels: Vec<String> = trace.iter().map(CaseLabel::to_string).collect();
        let _ = writeln!(summary, "case\t{}", trace[0]);
        let _ = writeln!(summary, "reduction\t{}", labels.join(" -> "));
        (rep, DatumRecord::from_cokernel(&c, Some(method)), report)
    } else {
        if method == Method::Closed {
            bail!(InputError(anyhow::anyhow!("closed forms exist only for three arms; use --method cokernel")));
        }
        let rep = match higher_rank(&q, &y, &args.arms, &args.powers, mu.as_deref()) {
            Ok(rep) => rep,
            Err(e @ extmod_core::Error::ConditionsFailed(_)) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(1));
            }
            Err(e) => return input(Err(e)),
        };
        let mu = mu.unwrap_or_else(|| extmod_core::builder::default_mu(args.arms.len()));
        let expected = Expected {
            dims: Some(predicted_dims(&q, &y, &args.arms, &args.powers)),
            rank: Some(args.arms.len() as i64 - 1),
        };
        let report = verify_representation(&rep, &expected);
        (rep, DatumRecord::for_index_set(&y, &args.arms, &args.powers, &mu), report)
    };
    let _ = writeln!(summary, "dims\t{:?}", rep.dim_vector());
    let _ = writeln!(summary, "rank\t{}", rep.rank());
    let audit = rep.entry_audit(&coefficient_set(&spec));
    let _ = writeln!(summary, "entry audit\t{}", if audit { "pass" } else { "FAIL" });
    let _ = write!(summary, "{report}");

    let text = render(&rep, &record, args.format);
    match &args.out {
        Some(path) => {
            write_atomic(path, &text)?;
            print!("{summary}");
            println!("written\t{}", path.display());
        }
        None => {
            print!("{text}");
            eprint!("{summary}");
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn expected_for(q: &CanonicalQuiver, record: &DatumRecord) -> Result<Expected> {
    let spec = q.spec();
    if record.arms.len() == 3 {
        let c = input(record.to_cokernel(spec))?;
        return Ok(Expected::for_datum(q, &c));
    }
    let y = input(spec.parse_element(&record.y))?;
    if record.powers.len() != record.arms.len() || record.arms.iter().any(|&a| a == 0 || a > spec.t()) {
        bail!(InputError(anyhow::anyhow!("inconsistent datum record")));
    }
    Ok(Expected {
        dims: Some(predicted_dims(q, &y, &record.arms, &record.powers)),
        rank: Some(record.arms.len() as i64 - 1),
    })
}

fn verify_cmd(args: &VerifyArgs) -> Result<ExitCode> {
    let text = input(fs::read_to_string(&args.path).with_context(|| format!("reading {}", args.path.display())))?;
    let (rep, record) = input(from_json(&text))?;
    let expected = match &record {
        Some(r) => expected_for(rep.quiver(), r)?,
        None => Expected::default(),
    };
    let report = verify_representation(&rep, &expected);
    print!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sweep_cmd(args: &SweepArgs) -> Result<ExitCode> {
    let spec = args.spec.spec()?;
    let arms = match &args.arms {
        None => None,
        Some(a) if a.len() == 3 => Some([a[0], a[1], a[2]]),
        Some(a) => bail!(InputError(anyhow::anyhow!("--arms needs three indices, got {}", a.len()))),
    };
    let q = Arc::new(CanonicalQuiver::new(&spec));
    let data = enumerate_data(&spec, args.max_c, arms);
    info!("sweeping {} data", data.len());
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;

    let mut tsv = String::from("index\ty\tarms\tpowers\tcase\treduction\tdims\trank\tstatus\tfailures\n");
    let mut hist: BTreeMap<CaseLabel, usize> = CaseLabel::ALL.iter().map(|&l| (l, 0)).collect();
    let mut first_failure: Option<String> = None;
    let join = |v: &[String]| v.join(",");
    for (k, c) in data.iter().enumerate() {
        debug!("datum {k}: {c}");
        let outcome = check_datum(&q, c)?;
        *hist.get_mut(&outcome.label).expect("all labels present") += 1;
        let record = DatumRecord::from_cokernel(c, Some(Method::Closed));
        write_atomic(&args.out.join(format!("datum-{k:05}.json")), &to_json(&outcome.closed, Some(&record)))?;
        let failures: Vec<&str> = outcome.report.failures().map(|f| f.name).collect();
        if !failures.is_empty() && first_failure.is_none() {
            first_failure = Some(format!("datum {k} ({c}): {}", failures.join(", ")));
        }
        let trace: Vec<String> = outcome.trace.iter().map(CaseLabel::to_string).collect();
        let _ = writeln!(
            tsv,
            "{k}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            c.y(),
            join(&c.arms().map(|a| a.to_string())),
            join(&c.powers().map(|b| b.to_string())),
            outcome.label,
            trace.join(">"),
            join(&outcome.closed.dim_vector().iter().map(usize::to_string).collect::<Vec<_>>()),
            outcome.closed.rank(),
            if failures.is_empty() { "pass" } else { "FAIL" },
            failures.join(","),
        );
    }
    write_atomic(&args.out.join("summary.tsv"), &tsv)?;
    let mut histogram = String::from("case\tcount\n");
    for (label, n) in &hist {
        let _ = writeln!(histogram, "{label}\t{n}");
    }
    write_atomic(&args.out.join("histogram.tsv"), &histogram)?;

    print!("{histogram}");
    println!("total\t{}", data.len());
    match first_failure {
        Some(f) => {
            println!("first failure\t{f}");
            Ok(ExitCode::from(1))
        }
        None => Ok(ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Info(a) => info(a),
        Command::Build(a) => build_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<InputError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

//! `complement`: synthesize, verify, evaluate and export complement
//! functions from the command line.
//!
//! Exit codes: 0 success, 1 axiom or agreement failure, 2 bad input or
//! schema, 3 empty complement, 4 domain too small or key out of range,
//! 5 stream search bound exhausted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use complement_core::artifact::{to_canonical_json, Artifact, ArithArtifact, FourierArtifact};
use complement_core::iterative::{
    stream_complement, AffineDecider, MembershipDecider, NontrivialProductDecider, TableDecider,
    DEFAULT_STREAM_BOUND,
};
use complement_core::rational;
use complement_core::synth::{synthesize, tabulate, Representation};
use complement_core::verify::check_plan;
use complement_core::{
    verify_complement, Backend, ComplementError, FiniteFunction, MappingTable, OrderingPolicy,
    Plan, Word,
};

#[derive(Parser, Debug)]
#[command(name = "complement", version, about = "Construct and verify complement functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the mapping table and the selected representations of g.
    Synth {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, value_enum, default_value_t = BackendArg::All)]
        backend: BackendArg,
        /// Directory that receives the artifacts.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the complement axioms; exits 0 iff every check passes.
    Verify {
        #[command(flatten)]
        plan: PlanArgs,
        /// Mapping table to verify instead of synthesizing one.
        #[arg(long)]
        mapping: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BackendArg::All)]
        backend: BackendArg,
        /// Where to write the report (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print g(x) for each key.
    Eval {
        #[command(flatten)]
        plan: PlanArgs,
        #[arg(long, value_enum, default_value_t = BackendArg::Iterative)]
        backend: BackendArg,
        #[arg(required = true)]
        keys: Vec<Word>,
    },
    /// Print the smallest integers outside a decidable language.
    Stream {
        /// even | nontrivial-product | affine:<c>,<d> | table:<file>
        #[arg(long)]
        decider: String,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_STREAM_BOUND)]
        bound: u64,
    },
    /// Re-serialize an artifact in canonical form.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PlanArgs {
    /// FiniteFunction JSON.
    #[arg(long)]
    input: PathBuf,
    /// Key width of g (defaults to the least that fits the complement).
    #[arg(long = "b")]
    key_bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Order::Ascending)]
    order: Order,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Order {
    Ascending,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BackendArg {
    Newton,
    Arith,
    Fourier,
    Iterative,
    All,
}

impl BackendArg {
    fn backends(self) -> Vec<Backend> {
        match self {
            BackendArg::Newton => vec![Backend::Newton],
            BackendArg::Arith => vec![Backend::Arith],
            BackendArg::Fourier => vec![Backend::Fourier],
            BackendArg::Iterative => vec![Backend::Iterative],
            BackendArg::All => Backend::ALL.to_vec(),
        }
    }
}

impl PlanArgs {
    fn policy(&self) -> OrderingPolicy {
        match self.order {
            Order::Ascending => OrderingPolicy::Ascending,
            Order::Random => OrderingPolicy::SeededRandom { seed: self.seed },
        }
    }

    fn function(&self) -> anyhow::Result<FiniteFunction> {
        read_function(&self.input)
    }

    fn plan(&self) -> anyhow::Result<Plan> {
        Ok(Plan::new(&self.function()?, self.key_bits, self.policy())?)
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_function(path: &Path) -> anyhow::Result<FiniteFunction> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| ComplementError::InvalidFunction(format!("{}: {e}", path.display())).into())
}

fn read_mapping(path: &Path) -> anyhow::Result<MappingTable> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| ComplementError::InvalidMapping(format!("{}: {e}", path.display())).into())
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn words(values: impl IntoIterator<Item = Word>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn synth(plan: &Plan, backend: BackendArg, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let save = |name: &str, contents: String| -> anyhow::Result<()> {
        match out {
            Some(dir) => write_atomic(&dir.join(name), &contents),
            None => Ok(()),
        }
    };

    let mapping = &plan.mapping;
    println!("b: {}", plan.key_bits);
    println!(
        "mapping: {}",
        mapping
            .entries()
            .iter()
            .map(|e| format!("{}->{}", e.key, e.value))
            .collect::<Vec<_>>()
            .join(" ")
    );
    save("mapping.json", to_canonical_json(mapping))?;

    let backends = backend.backends();
    for &b in &backends {
        match synthesize(plan, b)? {
            Representation::Newton(p) => {
                println!("newton: {p}");
                save("newton.json", to_canonical_json(&p))?;
            }
            Representation::Arith { bits, combined } => {
                println!("arith: {combined}");
                let artifact = ArithArtifact::new(plan.key_bits, &bits, &combined);
                save("arith.json", to_canonical_json(&artifact))?;
            }
            Representation::Fourier(g) => {
                let artifact = FourierArtifact::new(&g);
                for (i, p) in g.bits().iter().enumerate() {
                    let terms: Vec<String> = p
                        .coefficients()
                        .iter()
                        .map(|(m, c)| format!("{m}:{}", rational::format(c)))
                        .collect();
                    println!("fourier z{}: {}", i + 1, terms.join(" "));
                }
                save("fourier.json", to_canonical_json(&artifact))?;
            }
            mut rep @ Representation::Iterative(_) => {
                let values = tabulate(&mut rep, plan.key_bits)?
                    .iter()
                    .map(|r| rational::to_word(r).expect("iterative values are words"))
                    .collect::<Vec<_>>();
                println!("iterative: {}", words(values.iter().copied()));
                let table = MappingTable::from_values(plan.key_bits, &values)?;
                save("iterative.json", to_canonical_json(&table))?;
            }
        }
    }

    let report = check_plan(plan, &backends)?;
    save("report.json", to_canonical_json(&report))?;
    println!("report: {}", if report.passed() { "pass" } else { "fail" });
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify(
    args: &PlanArgs,
    mapping: Option<&Path>,
    backend: BackendArg,
    out: Option<&Path>,
) -> anyhow::Result<ExitCode> {
    let report = match mapping {
        Some(path) => {
            let f = args.function()?;
            let m = read_mapping(path)?;
            verify_complement(&f, &m.values(), m.key_bits())
        }
        None => check_plan(&args.plan()?, &backend.backends())?,
    };
    emit(out, &to_canonical_json(&report))?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("complement axioms failed");
        Ok(ExitCode::from(1))
    }
}

fn eval(args: &PlanArgs, backend: BackendArg, keys: &[Word]) -> anyhow::Result<ExitCode> {
    let plan = args.plan()?;
    let mut reps = backend
        .backends()
        .into_iter()
        .map(|b| synthesize(&plan, b))
        .collect::<Result<Vec<_>, _>>()?;
    for &x in keys {
        if x >> plan.key_bits != 0 {
            return Err(ComplementError::OutOfRange {
                key: x,
                bits: plan.key_bits,
            }
            .into());
        }
        let values = reps
            .iter_mut()
            .map(|r| r.eval(x))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(v) = values.iter().find(|v| **v != values[0]) {
            bail!(
                "backends disagree at {x}: {} vs {}",
                rational::format(&values[0]),
                rational::format(v)
            );
        }
        println!("{}", rational::format(&values[0]).trim_end_matches("/1"));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_decider(name: &str) -> anyhow::Result<Box<dyn MembershipDecider>> {
    if let Some(path) = name.strip_prefix("table:") {
        let f = read_function(Path::new(path))?;
        return Ok(Box::new(TableDecider::new(&f)));
    }
    if let Some(params) = name.strip_prefix("affine:") {
        let (c, d) = params
            .split_once(',')
            .ok_or_else(|| anyhow!("affine decider needs <c>,<d>"))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| ComplementError::InvalidArgument(format!("bad affine parameter {s:?}")))
        };
        return Ok(Box::new(AffineDecider {
            slope: parse(c)?,
            offset: parse(d)?,
        }));
    }
    match name {
        "even" => Ok(Box::new(AffineDecider::even())),
        "nontrivial-product" => Ok(Box::new(NontrivialProductDecider)),
        other => Err(ComplementError::InvalidArgument(format!("unknown decider {other:?}")).into()),
    }
}

fn stream(decider: &str, count: usize, bound: u64) -> anyhow::Result<ExitCode> {
    let decider = parse_decider(decider)?;
    match stream_complement(decider.as_ref(), count, bound) {
        Ok(values) => {
            println!("{}", words(values));
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ ComplementError::BoundExhausted { .. }) => {
            if let ComplementError::BoundExhausted { values, .. } = &e {
                println!("{}", words(values.iter().copied()));
            }
            Err(e.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn export(input: &Path, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let artifact = Artifact::from_json(&read_text(input)?)?;
    emit(out, &artifact.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Synth { plan, backend, out } => synth(&plan.plan()?, backend, out.as_deref()),
        Command::Verify {
            plan,
            mapping,
            backend,
            out,
        } => verify(&plan, mapping.as_deref(), backend, out.as_deref()),
        Command::Eval {
            plan,
            backend,
            keys,
        } => eval(&plan, backend, &keys),
        Command::Stream {
            decider,
            count,
            bound,
        } => stream(&decider, count, bound),
        Command::Export { input, out } => export(&input, out.as_deref()),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<ComplementError>() {
        Some(ComplementError::EmptyComplement) => 3,
        Some(ComplementError::DomainTooSmall { .. } | ComplementError::OutOfRange { .. }) => 4,
        Some(ComplementError::BoundExhausted { .. }) => 5,
        _ if err.to_string().starts_with("backends disagree") => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

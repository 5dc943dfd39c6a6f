use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gradet::io::{self, digest, FORMAT};
use gradet::oracles::{run_property_sweeps, SweepConfig};
use gradet::{
    gber, gdet0, gdet0_leibniz, gdet0_via_crossed, gdet_sigma, graded_trace, presets, solve_ns_multiplier, AlgebraElement,
    Error, ErrorKind, GradedAlgebra, GradedMatrix, Multiplier,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gradet", version, about = "Graded traces, determinants and Berezinians over (Γ,λ)-commutative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Algebra file, or preset:NAME[:ARGS] (e.g. preset:clifford:1,1)
    #[arg(long, global = true)]
    algebra: Option<String>,

    /// Matrix file
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,

    /// Multiplier file, or "auto" for the algebra's canonical one
    #[arg(long, global = true, default_value = "auto")]
    sigma: String,

    /// Inline JSON list of degrees overriding the matrix file's
    #[arg(long, global = true)]
    degrees: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// det of J_sigma X over the twisted algebra
    Twist,
    /// ordered products over cycle orderings
    Leibniz,
    /// det(P X P^-1) over the degree-0 part
    Crossed,
}

#[derive(Subcommand)]
enum Command {
    /// Graded trace of the matrix
    Trace,
    /// Gdet^0 of a degree-0 matrix
    Gdet0 {
        #[arg(long, value_enum, default_value_t = Method::Twist)]
        method: Method,
    },
    /// Gdet_sigma of a matrix with even entries
    Gdet,
    /// Graded Berezinian of a parity-sorted homogeneous even matrix
    Gber,
    /// The twisted algebra as an algebra document
    Twist,
    /// An NS-multiplier for the algebra's commutation factor
    SolveSigma,
    /// Seeded property sweeps
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        instances: usize,
    },
}

enum Failure {
    Lib(Error),
    Io(String, std::io::Error),
    Verify(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Inputs {
    algebra: GradedAlgebra,
    digests: serde_json::Map<String, Value>,
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.display().to_string(), e))
}

fn load_algebra(cli: &Cli) -> Result<Inputs, Failure> {
    let src = cli.algebra.as_deref().ok_or_else(|| Error::Parse("--algebra".into(), "missing".into()))?;
    let (algebra, bytes) = match src.strip_prefix("preset:") {
        Some(name) => (presets::preset(name)?, src.as_bytes().to_vec()),
        None => {
            let path = PathBuf::from(src);
            let text = read(&path)?;
            (io::algebra_from_json(&text, src)?, text.into_bytes())
        }
    };
    let mut digests = serde_json::Map::new();
    digests.insert("algebra".into(), json!(digest(&bytes)));
    Ok(Inputs { algebra, digests })
}

fn load_matrix(cli: &Cli, inputs: &mut Inputs) -> Result<GradedMatrix, Failure> {
    let path = cli.matrix.as_ref().ok_or_else(|| Error::Parse("--matrix".into(), "missing".into()))?;
    let text = read(path)?;
    let degrees = match &cli.degrees {
        Some(d) => Some(io::degrees_from_json(d, inputs.algebra.group(), "--degrees")?),
        None => None,
    };
    inputs.digests.insert("matrix".into(), json!(digest(text.as_bytes())));
    if let Some(d) = &cli.degrees {
        inputs.digests.insert("degrees".into(), json!(digest(d.as_bytes())));
    }
    Ok(io::matrix_from_json(&text, &inputs.algebra, degrees, &path.display().to_string())?)
}

fn load_sigma(cli: &Cli, inputs: &mut Inputs) -> Result<Multiplier, Failure> {
    let sigma = if cli.sigma == "auto" {
        inputs.algebra.canonical_multiplier()?
    } else {
        let path = PathBuf::from(&cli.sigma);
        let text = read(&path)?;
        inputs.digests.insert("sigma".into(), json!(digest(text.as_bytes())));
        io::bicharacter_from_json(&text, Some(inputs.algebra.group()), &cli.sigma)?
    };
    Ok(sigma)
}

fn element_doc(command: &str, e: &AlgebraElement, inputs: Inputs) -> Value {
    let order = e.terms().fold(e.algebra().root_order(), |acc, (_, c)| lcm(acc, c.order()));
    json!({
        "format": FORMAT,
        "command": command,
        "result": io::element_to_json_at(e, order),
        "root_order": order,
        "degree": io::homogeneity_to_json(&e.degree()),
        "inputs": inputs.digests,
    })
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Verify { suite, instances } => {
            let config = SweepConfig { seed: cli.seed, instances: *instances, suite: suite.clone() };
            let reports = run_property_sweeps(&config)?;
            let passed = reports.iter().all(|r| r.passed());
            let doc = json!({
                "format": FORMAT,
                "command": "verify",
                "suite": suite,
                "seed": cli.seed,
                "passed": passed,
                "reports": reports,
            });
            if passed {
                Ok(doc)
            } else {
                Err(Failure::Verify(doc))
            }
        }
        Command::SolveSigma => {
            let inputs = load_algebra(cli)?;
            let sigma = solve_ns_multiplier(inputs.algebra.lambda())?;
            Ok(json!({
                "format": FORMAT,
                "command": "solve-sigma",
                "result": io::bicharacter_to_json(&sigma),
                "inputs": inputs.digests,
            }))
        }
        Command::Twist => {
            let mut inputs = load_algebra(cli)?;
            let sigma = load_sigma(cli, &mut inputs)?;
            let twisted = inputs.algebra.twist(&sigma)?;
            Ok(json!({
                "format": FORMAT,
                "command": "twist",
                "result": io::algebra_to_json(&twisted),
                "inputs": inputs.digests,
            }))
        }
        Command::Trace => {
            let mut inputs = load_algebra(cli)?;
            let x = load_matrix(cli, &mut inputs)?;
            let t = graded_trace(&x)?;
            Ok(element_doc("trace", &t, inputs))
        }
        Command::Gdet0 { method } => {
            let mut inputs = load_algebra(cli)?;
            let x = load_matrix(cli, &mut inputs)?;
            let d = match method {
                Method::Twist => gdet0(&x)?,
                Method::Leibniz => gdet0_leibniz(&x, None)?,
                Method::Crossed => gdet0_via_crossed(&x)?,
            };
            Ok(element_doc("gdet0", &d, inputs))
        }
        Command::Gdet => {
            let mut inputs = load_algebra(cli)?;
            let x = load_matrix(cli, &mut inputs)?;
            let sigma = load_sigma(cli, &mut inputs)?;
            let d = gdet_sigma(&x, &sigma)?;
            Ok(element_doc("gdet", &d, inputs))
        }
        Command::Gber => {
            let mut inputs = load_algebra(cli)?;
            let x = load_matrix(cli, &mut inputs)?;
            let sigma = load_sigma(cli, &mut inputs)?;
            let b = gber(&x, &sigma)?;
            Ok(element_doc("gber", &b, inputs))
        }
    }
}

fn pretty(doc: &Value) -> String {
    let result = &doc["result"];
    let text = match result {
        Value::Array(terms) if terms.is_empty() => "0".to_string(),
        Value::Array(terms) => terms
            .iter()
            .map(|t| {
                let (b, c) = (t["b"].as_str().unwrap_or(""), t["c"].as_str().unwrap_or(""));
                let c = if c.contains(' ') { format!("({c})") } else { c.to_string() };
                if b == "1" {
                    c
                } else {
                    format!("{c}*{b}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + "),
        other => serde_json::to_string_pretty(other).unwrap_or_default(),
    };
    let mut out = text;
    if let Some(d) = doc.get("degree") {
        out.push_str(&format!("\ndegree: {d}"));
    }
    out
}

fn emit(doc: &Value, format: Format) {
    match format {
        Format::Json => println!("{doc}"),
        Format::Pretty if doc.get("reports").is_some() || doc.get("error").is_some() => {
            println!("{}", serde_json::to_string_pretty(doc).unwrap_or_default())
        }
        Format::Pretty => println!("{}", pretty(doc)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            emit(&doc, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(doc)) => {
            emit(&doc, cli.format);
            eprintln!("verification failed");
            ExitCode::from(5)
        }
        Err(failure) => {
            let (code, message, status) = match &failure {
                Failure::Lib(e) => {
                    let status = match e.kind() {
                        ErrorKind::Parse => 2,
                        ErrorKind::Precondition => 3,
                        ErrorKind::Math => 4,
                    };
                    (e.code().to_string(), e.to_string(), status)
                }
                Failure::Io(path, e) => ("ParseError".to_string(), format!("cannot read {path}: {e}"), 2),
                Failure::Verify(_) => unreachable!(),
            };
            let doc = json!({"format": FORMAT, "error": {"code": code, "message": message}});
            emit(&doc, cli.format);
            eprintln!("error: {message}");
            ExitCode::from(status)
        }
    }
}

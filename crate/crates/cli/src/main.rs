use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gipers::chains::{GradeOperator, OrbitChainComplex, OrbitOptions};
use gipers::io::{self, DiagramMeta};
use gipers::metrics::bottleneck_distance;
use gipers::persistence::{compute_persistence, pbnf_rank, PbnfQuery};
use gipers::pseudo_distance::dg_upper_bound;
use gipers::scenarios::{gen_circle_rooms, gen_two_spheres, BUILTIN_NAMES, CIRCLE_ROOMS_DEFAULT_N, TWO_SPHERES_DEFAULT_LONGITUDES, TWO_SPHERES_DEFAULT_RINGS};
use gipers::verify::run_all;
use gipers::{Error, FieldSpec, FilteredComplex, GroupAction, VertexFunction};

#[derive(Parser)]
#[command(name = "gipers", version, about = "Persistent homology of scalar fields under a free finite symmetry group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Engine {
    /// Field characteristic: 2 or an odd prime below 2^16.
    #[arg(long, default_value_t = 2)]
    field: u32,
    /// Orbit grade operator: max or mean.
    #[arg(long, default_value = "max")]
    operator: GradeOperator,
}

#[derive(clap::Args)]
struct Inputs {
    /// Complex JSON: {"vertices", "simplices", "values"?}.
    #[arg(long)]
    complex: PathBuf,
    /// Values JSON {"values": [[...], ...]}; overrides values in the complex file.
    #[arg(long)]
    values: Option<PathBuf>,
    /// Group JSON {"elements"} or {"generators", "cap"}; default is the trivial group.
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Persistence diagram of the orbit chain complex.
    Compute {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        engine: Engine,
        /// Comma-separated degrees; default: all.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files.
    Bottleneck {
        left: PathBuf,
        right: PathBuf,
        /// Comma-separated degrees; default: every degree present in either file.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper bound for d_G(φ, ψ) over a finite sample of G.
    DgBound {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        values_a: PathBuf,
        #[arg(long)]
        values_b: PathBuf,
        #[arg(long)]
        group_sample: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Persistent Betti number at a point (u, v) with u ≺ v.
    Pbnf {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        engine: Engine,
        #[arg(long)]
        degree: usize,
        /// Comma-separated k-tuple.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        v: Vec<f64>,
    },
    /// Write a built-in scenario's complex, values, group, sample and witness.
    Scenario {
        /// circle-rooms or two-spheres.
        name: String,
        #[arg(long)]
        out: PathBuf,
        /// Half the polygon size for circle-rooms (even, at least 8).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        rings: Option<usize>,
        #[arg(long)]
        longitudes: Option<usize>,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Verify {
        /// Also write the results as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Failure classes, mapped to exit codes 1 (validation) and 2 (I/O, format).
enum Failure {
    Validation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: gipers::Result<T>) -> Outcome<T> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Validation(m) => Failure::Validation(format!("{}: {m}", path.display())),
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(inputs: &Inputs) -> Outcome<(FilteredComplex, GroupAction)> {
    let (complex, embedded) = with_path(&inputs.complex, io::parse_complex(&read(&inputs.complex)?))?;
    let values: VertexFunction = match &inputs.values {
        Some(p) => with_path(p, io::parse_values(&read(p)?))?,
        None => embedded.ok_or_else(|| Failure::Input(format!("{}: no values given", inputs.complex.display())))?,
    };
    let group = match &inputs.group {
        Some(p) => with_path(p, io::parse_group(&read(p)?, complex.vertex_count()))?,
        None => GroupAction::trivial(complex.vertex_count()),
    };
    Ok((FilteredComplex::new(complex, values)?, group))
}

fn orbit_complex(inputs: &Inputs, engine: &Engine) -> Outcome<OrbitChainComplex> {
    let (fc, group) = load(inputs)?;
    let options = OrbitOptions { field: FieldSpec::new(engine.field)?, operator: engine.operator, ..Default::default() };
    Ok(OrbitChainComplex::build(&fc, &group, options)?)
}

fn run(cli: Cli) -> Outcome<bool> {
    match cli.command {
        Command::Compute { inputs, engine, degrees, format, out } => {
            let occ = orbit_complex(&inputs, &engine)?;
            let diagram = compute_persistence(&occ)?;
            let degrees = degrees.unwrap_or_else(|| (0..diagram.len()).collect());
            let text = match format {
                Format::Json => {
                    let meta = DiagramMeta { field: occ.field(), operator: occ.operator() };
                    io::diagram_to_json(&diagram, &meta, &degrees)
                }
                Format::Csv => io::diagram_to_csv(&diagram, &degrees),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Bottleneck { left, right, degrees, out } => {
            let a = with_path(&left, io::parse_diagram(&read(&left)?))?;
            let b = with_path(&right, io::parse_diagram(&read(&right)?))?;
            let degrees = degrees.unwrap_or_else(|| (0..a.len().max(b.len())).collect());
            let results: Vec<Value> =
                degrees.iter().map(|&n| io::matching_to_value(&bottleneck_distance(&a, &b, n))).collect();
            let value = match results.as_slice() {
                [single] => single.clone(),
                _ => {
                    let agg = degrees.iter().map(|&n| bottleneck_distance(&a, &b, n).distance).fold(0.0, f64::max);
                    json!({ "aggregate": io::bound_value(agg), "degrees": results })
                }
            };
            emit(out.as_deref(), &io::pretty(&value))?;
        }
        Command::DgBound { complex, values_a, values_b, group_sample, out } => {
            let (k, _) = with_path(&complex, io::parse_complex(&read(&complex)?))?;
            let a = with_path(&values_a, io::parse_values(&read(&values_a)?))?;
            let b = with_path(&values_b, io::parse_values(&read(&values_b)?))?;
            let sample = with_path(&group_sample, io::parse_sample(&read(&group_sample)?))?;
            let (bound, g) = dg_upper_bound(&FilteredComplex::new(k.clone(), a)?, &FilteredComplex::new(k, b)?, &sample)?;
            let mut value = io::bound_value(bound.value);
            value["argmin_index"] = json!(bound.argmin);
            value["argmin"] = json!(g.image());
            value["sample_size"] = json!(bound.sample_size);
            value["resolution"] = json!(sample.resolution());
            emit(out.as_deref(), &io::pretty(&value))?;
        }
        Command::Pbnf { inputs, engine, degree, u, v } => {
            let occ = orbit_complex(&inputs, &engine)?;
            let rank = pbnf_rank(&occ, &PbnfQuery::new(degree, u.clone(), v.clone())?)?;
            let round = |x: &[f64]| x.iter().map(|&c| io::round12(c)).collect::<Vec<_>>();
            emit(None, &io::pretty(&json!({ "degree": degree, "u": round(&u), "v": round(&v), "rank": rank })))?;
        }
        Command::Scenario { name, out, n, rings, longitudes } => {
            let scenario = match name.as_str() {
                "circle-rooms" => gen_circle_rooms(n.unwrap_or(CIRCLE_ROOMS_DEFAULT_N))?,
                "two-spheres" => gen_two_spheres(
                    rings.unwrap_or(TWO_SPHERES_DEFAULT_RINGS),
                    longitudes.unwrap_or(TWO_SPHERES_DEFAULT_LONGITUDES),
                )?,
                other => {
                    return Err(Failure::Validation(format!(
                        "unknown scenario '{other}' (known: {})",
                        BUILTIN_NAMES.join(", ")
                    )))
                }
            };
            fs::create_dir_all(&out).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            for (file, text) in io::scenario_files(&scenario) {
                emit(Some(&out.join(file)), &text)?;
            }
            println!("wrote {} to {}", scenario.name, out.display());
        }
        Command::Verify { report } => {
            let results = run_all();
            for r in &results {
                println!("{}", r.line());
            }
            let passed = results.iter().filter(|r| r.passed).count();
            println!("{passed}/{} criteria passed", results.len());
            if let Some(p) = report {
                let text = serde_json::to_string_pretty(&results).expect("serialisable") + "\n";
                emit(Some(&p), &text)?;
            }
            return Ok(passed == results.len());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

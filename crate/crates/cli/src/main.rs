use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cayley_core::autgroup::{
    conjugating_automorphism, one_point_witness, split_two_local_decide, two_point_witness,
};
use cayley_core::cayley::{AlgebraRef, Octonion};
use cayley_core::harness::{
    algebra_to_text, element_from_text, map_from_text, run_suite, verdict_to_text, witness_to_text,
    AlgebraSource, ClosureGenerators, OutputFormat, Suite, SuiteConfig,
};
use cayley_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cayley-lab",
    version,
    about = "Exact experiments with Cayley algebras"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// `gf(p)`, `gf(q)`, `gf(p^k)`, `gf(p^k;modulus=[..])` or `q`
    #[arg(long, global = true, default_value = "gf(2)")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    trials: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Group closure cap
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Height cap for rational search in Witt extension
    #[arg(long, global = true)]
    height_cap: Option<u32>,
    /// Load the algebra from a JSON document instead of the split algebra
    #[arg(long, global = true, conflicts_with = "mu")]
    algebra: Option<PathBuf>,
    /// Doubling parameters, comma separated: three, or two with --norm-c
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    mu: Vec<String>,
    /// Norm of the trace-one generator for characteristic-2 doubling
    #[arg(long, global = true, requires = "mu", allow_hyphen_values = true)]
    norm_c: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Decide(DecideCmd),
    #[command(subcommand)]
    Witness(WitnessCmd),
    #[command(subcommand)]
    Char2(Char2Cmd),
    #[command(subcommand)]
    Closure(ClosureCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Build the algebra and print its document
    Build {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Algebra laws, exhaustively over GF(2) and sampled elsewhere
    Laws {
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, conflicts_with = "exhaustive")]
        sample: bool,
    },
    /// Stabilizer elements of 1 agree pointwise with automorphisms
    LocalAut,
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Decide one map (split algebras), or run the 2-local suite
    TwoLocal {
        /// Map document to decide
        #[arg(long, conflicts_with = "inject_lambda")]
        map: Option<PathBuf>,
        /// Also decide the diagonal candidate u3 -> λ u3, v3 -> λ^-1 v3
        #[arg(long, allow_hyphen_values = true)]
        inject_lambda: Option<String>,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// An automorphism carrying x to y, or agreeing with --map at x (and y)
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Char2Cmd {
    /// Kernel, round trip and extension obstruction of the restriction to C0
    Analyze,
}

#[derive(Subcommand)]
enum ClosureCmd {
    /// Enumerate the generated group
    Enumerate {
        #[arg(long, value_enum, default_value_t = Generators::Automorphisms)]
        generators: Generators,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Generators {
    Automorphisms,
    Reflections,
}

impl Global {
    fn config(&self, suite: Suite) -> SuiteConfig {
        let mut c = SuiteConfig::new(self.field.clone(), suite);
        c.seed = self.seed;
        if let Some(t) = self.trials {
            c.trials = t;
        }
        if let Some(cap) = self.cap {
            c.closure_cap = cap;
        }
        if let Some(h) = self.height_cap {
            c.height_cap = h;
        }
        c.format = match self.format {
            Format::Human => OutputFormat::Human,
            Format::Structured => OutputFormat::Structured,
        };
        c.algebra = if let Some(path) = &self.algebra {
            AlgebraSource::File { path: path.clone() }
        } else if !self.mu.is_empty() {
            AlgebraSource::Doubling {
                c: self.norm_c.clone(),
                mu: self.mu.clone(),
            }
        } else {
            AlgebraSource::Split
        };
        c
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::ConfigInvalid(format!("{}: {e}", path.display())))
}

/// A JSON array of coordinate strings, or coordinates separated by commas
/// or spaces (prime fields and the rationals only).
fn element(alg: &AlgebraRef, s: &str) -> Result<Octonion> {
    if s.trim_start().starts_with('[') {
        return element_from_text(alg, s);
    }
    let f = alg.field();
    let c = s
        .split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| f.parse_elem(t))
        .collect::<Result<Vec<_>>>()?;
    Octonion::from_coords(alg, c).map_err(|e| Error::Parse {
        context: "element".into(),
        message: e.to_string(),
    })
}

fn emit_suite(cfg: &SuiteConfig) -> Result<u8> {
    let start = Instant::now();
    let report = run_suite(cfg)?;
    match cfg.format {
        OutputFormat::Structured => println!("{}", report.to_structured()),
        OutputFormat::Human => {
            print!("{}", report.to_human());
            println!("elapsed {:.2?}", start.elapsed());
        }
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    match cli.command {
        Command::Algebra(AlgebraCmd::Build { out }) => {
            let cfg = g.config(Suite::Laws);
            let alg = cfg.load_algebra()?;
            let text = algebra_to_text(&alg);
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Error::ConfigInvalid(format!("{}: {e}", path.display())))?;
                    println!(
                        "{} ({}) written to {}",
                        alg.id(),
                        alg.classification().tag(),
                        path.display()
                    );
                }
                None => println!("{text}"),
            }
            Ok(0)
        }
        Command::Verify(VerifyCmd::Laws { exhaustive, sample }) => {
            let mut cfg = g.config(Suite::Laws);
            cfg.exhaustive = if exhaustive {
                Some(true)
            } else if sample {
                Some(false)
            } else {
                None
            };
            emit_suite(&cfg)
        }
        Command::Verify(VerifyCmd::LocalAut) => emit_suite(&g.config(Suite::LocalAut)),
        Command::Decide(DecideCmd::TwoLocal {
            map: Some(path), ..
        }) => {
            let cfg = g.config(Suite::TwoLocalSplit);
            let alg = cfg.load_algebra()?;
            cfg.validate(&alg)?;
            let m = map_from_text(&alg, &read(&path)?)?;
            let v = split_two_local_decide(&m)?;
            println!("{}", verdict_to_text(&v));
            Ok(if v.is_automorphism() { 0 } else { 1 })
        }
        Command::Decide(DecideCmd::TwoLocal {
            map: None,
            inject_lambda,
        }) => {
            let probe = g.config(Suite::TwoLocalSplit).load_algebra()?;
            let suite = if probe.is_division() {
                Suite::TwoLocalDivision
            } else {
                Suite::TwoLocalSplit
            };
            let mut cfg = g.config(suite);
            cfg.inject_lambda = inject_lambda;
            emit_suite(&cfg)
        }
        Command::Witness(WitnessCmd::Orbit { x, y, map }) => {
            let alg = g.config(Suite::LocalAut).load_algebra()?;
            let xv = element(&alg, &x)?;
            let yv = y.as_deref().map(|s| element(&alg, s)).transpose()?;
            let w = match (map, yv) {
                (Some(path), None) => one_point_witness(&map_from_text(&alg, &read(&path)?)?, &xv)?,
                (Some(path), Some(yv)) => {
                    two_point_witness(&map_from_text(&alg, &read(&path)?)?, &xv, &yv)?
                }
                (None, Some(yv)) => conjugating_automorphism(&xv, &yv)?,
                (None, None) => {
                    return Err(Error::ConfigInvalid(
                        "y: needed unless --map is given".into(),
                    ))
                }
            };
            println!("{}", witness_to_text(&w));
            Ok(0)
        }
        Command::Char2(Char2Cmd::Analyze) => emit_suite(&g.config(Suite::Char2)),
        Command::Closure(ClosureCmd::Enumerate { generators }) => {
            let mut cfg = g.config(Suite::Closure);
            cfg.generators = match generators {
                Generators::Automorphisms => ClosureGenerators::Automorphisms,
                Generators::Reflections => ClosureGenerators::Reflections,
            };
            emit_suite(&cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

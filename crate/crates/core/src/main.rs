use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tilecomplex::geodesy::{ellipticity_scan, sample_pairs};
use tilecomplex::io::{export_dot, export_json, read_complex, read_rules};
use tilecomplex::path::{format_moves, parse_path, reduce_to_null, SearchBudget};
use tilecomplex::verify::{exit_status, format_reports, parse_selection, run_suite, Budgets};
use tilecomplex::{build_with, Complex, Error, Exec, PlaneId, RuleTable};

/// Builds, checks and exports substitution complexes.
#[derive(Parser)]
#[command(name = "tilecomplex", version)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the complex of a level and write its JSON document.
    Build {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        rules: Option<PathBuf>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a complex and run lemma checks on it.
    Check {
        #[command(flatten)]
        input: Input,
        /// Comma-separated lemma ids such as L1,L6,L13; all when absent.
        #[arg(long, default_value = "all")]
        lemmas: String,
        /// Visited-path budget of bounded searches.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled instances per check and level.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the planes of a complex as DOT graphs.
    ExportDot {
        #[command(flatten)]
        input: Input,
        /// Plane ids (`3` or `p3`); all planes when absent.
        #[arg(long, value_delimiter = ',')]
        plane: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Midpoint spread of geodesic bundles between sampled vertex pairs, as TSV.
    Geodesics {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for flips taking a path to a null form.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// File with whitespace-separated vertex ids.
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A complex from a document, or built on the fly from a level.
#[derive(Args)]
struct Input {
    /// JSON document written by `build`.
    document: Option<PathBuf>,
    /// Build this level instead of reading a document.
    #[arg(long, conflicts_with = "document")]
    level: Option<u32>,
    #[arg(long, requires = "level")]
    rules: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<Complex, Error> {
        match (&self.document, self.level) {
            (Some(path), _) => read_complex(path),
            (None, Some(level)) => build(level, self.rules.as_ref()),
            (None, None) => Err(Error::Document("give a document path or --level".into())),
        }
    }
}

fn build(level: u32, rules: Option<&PathBuf>) -> Result<Complex, Error> {
    let rules = match rules {
        Some(p) => read_rules(p)?,
        None => RuleTable::default(),
    };
    build_with(level, rules, true)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Stops with a structural error when the complex is inconsistent.
fn require_valid(c: &Complex) -> Result<(), Error> {
    let report = c.validate();
    if report.is_ok() {
        return Ok(());
    }
    Err(Error::Document(format!("structural violations: {}", report.violations.join("; "))))
}

fn parse_plane(s: &str) -> Result<PlaneId, Error> {
    let s = s.trim();
    s.strip_prefix('p').unwrap_or(s).parse().map(PlaneId).map_err(|_| Error::Document(format!("bad plane id {s:?}")))
}

fn run(cli: Cli) -> Result<u8, Error> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Build { level, rules, out } => {
            let c = build(level, rules.as_ref())?;
            emit(out.as_ref(), &export_json(&c)?)?;
            eprintln!(
                "level {}: {} vertices, {} edges, {} tiles, {} pastings",
                c.level(),
                c.num_vertices(),
                c.num_graph_edges(),
                c.tiles().len(),
                c.pasting_log().len()
            );
            Ok(0)
        }
        Command::Check { input, lemmas, budget, seed, samples, out } => {
            let selection = parse_selection(&lemmas)?;
            let c = input.load()?;
            require_valid(&c)?;
            let mut budgets = Budgets { seed, ..Budgets::default() };
            if let Some(b) = budget {
                budgets.search = SearchBudget::new(b);
            }
            if let Some(s) = samples {
                budgets.samples = s;
            }
            let reports = run_suite(&c, &selection, &budgets, exec);
            emit(out.as_ref(), &format_reports(&reports))?;
            Ok(exit_status(&reports) as u8)
        }
        Command::ExportDot { input, plane, out } => {
            let planes = plane.iter().map(|p| parse_plane(p)).collect::<Result<Vec<_>, _>>()?;
            let c = input.load()?;
            emit(out.as_ref(), &export_dot(&c, &planes)?)?;
            Ok(0)
        }
        Command::Geodesics { input, pairs, seed, out } => {
            let c = input.load()?;
            let scan = ellipticity_scan(&c, &sample_pairs(&c, pairs, seed), exec)?;
            emit(out.as_ref(), &scan.to_tsv())?;
            Ok(0)
        }
        Command::Reduce { input, path, budget, out } => {
            let c = input.load()?;
            let p = parse_path(&c, &std::fs::read_to_string(&path)?)?;
            let budget = budget.map_or_else(SearchBudget::default, SearchBudget::new);
            let r = reduce_to_null(&c, &p, budget);
            let (text, status) = match (&r.moves, r.complete) {
                (Some(moves), _) => (format!("# reduced visited={}\n{}", r.visited, format_moves(moves)), 0),
                (None, true) => (format!("# irreducible visited={}\n", r.visited), 1),
                (None, false) => (format!("# inconclusive visited={}\n", r.visited), 0),
            };
            emit(out.as_ref(), &text)?;
            Ok(status)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlcheck_core::analysis::LatticeAnalysis;
use mlcheck_core::enumerate::{enumerate_with, Strategy, DEFAULT_BUDGET};
use mlcheck_core::factor::{FactorClass, ReachSet};
use mlcheck_core::ring::{build_ring_with_cap, ideal_lattice_with_cap, RingPresentation};
use mlcheck_core::Lattice;
use mlcheck::hunt::{self, HuntOutcome};
use mlcheck::manifest::{size_cap_from_env, CorpusManifest};
use mlcheck::mlat::{self, MlatError};
use mlcheck::report::{self, Format};
use mlcheck::runner;

// A closed pipe (`| head`) ends output quietly instead of panicking.
macro_rules! println {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! print {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "mlcheck", version, about = "Model checker for absorbing elements in finite multiplicative lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the lattice and multiplication axioms of an mlat file.
    Validate { file: PathBuf },
    /// Classify every element, or one element, of a lattice.
    Classify {
        file: PathBuf,
        /// Element index or name.
        #[arg(long)]
        element: Option<String>,
    },
    /// Factor an element into members of a class.
    Factorize {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Corpus operations.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Write every multiplicative lattice up to an order as mlat files.
    Enumerate {
        #[arg(long)]
        max_order: usize,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::OrderFirst)]
        strategy: StrategyArg,
    },
    /// Write the ideal lattice of a finite ring as an mlat file.
    Ring(RingArgs),
    /// Search the small lattices for a counterexample to a conjecture.
    Hunt {
        #[arg(long)]
        conjecture: String,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Evaluate registered properties over a corpus.
    Run {
        /// TOML manifest; the built-in default corpus when absent.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Comma-separated property ids.
        #[arg(long, value_delimiter = ',')]
        properties: Option<Vec<String>>,
        /// Worker threads; all cores when absent.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Args)]
#[group(skip)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["zn", "modulus"])))]
struct RingArgs {
    /// The ring Z/n.
    #[arg(long, conflicts_with_all = ["modulus", "poly", "rel"])]
    zn: Option<u64>,
    /// Coefficient modulus of Z/n[x]/(poly, rel...).
    #[arg(long = "mod", requires = "poly")]
    modulus: Option<u64>,
    /// Monic polynomial, constant term first, comma-separated.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u64>>,
    /// Extra relation, constant term first; repeatable.
    #[arg(long, value_parser = parse_coeffs)]
    rel: Vec<Vec<u64>>,
    /// Destination mlat file.
    #[arg(long)]
    out: PathBuf,
}

fn parse_coeffs(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Prime,
    Primary,
    Ta,
    Oa,
}

impl From<ClassArg> for FactorClass {
    fn from(c: ClassArg) -> FactorClass {
        match c {
            ClassArg::Prime => FactorClass::Prime,
            ClassArg::Primary => FactorClass::Primary,
            ClassArg::Ta => FactorClass::TwoAbsorbing,
            ClassArg::Oa => FactorClass::OneAbsorbing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    OrderFirst,
    TableFirst,
}

/// Input or configuration problem; exit status 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type Outcome = Result<u8, InputError>;

fn cap() -> Result<usize, InputError> {
    Ok(size_cap_from_env()?.unwrap_or(mlcheck_core::lattice::DEFAULT_SIZE_CAP))
}

fn load(file: &Path) -> Result<Lattice, InputError> {
    Ok(mlat::read(file, cap()?)?)
}

fn element(l: &Lattice, token: &str) -> Result<usize, InputError> {
    l.lookup(token)
        .ok_or_else(|| InputError(format!("no element `{token}` in a lattice of {} elements", l.size())))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(file: &Path) -> Outcome {
    match mlat::read(file, cap()?) {
        Ok(l) => {
            println!("valid: {} elements", l.size());
            Ok(0)
        }
        Err(MlatError::Invalid(report)) => {
            for v in &report.violations {
                println!("{} violated at {:?}", v.axiom, v.witness);
            }
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn classify(file: &Path, only: Option<&str>) -> Outcome {
    let l = load(file)?;
    let a = LatticeAnalysis::new(&l);
    let targets: Vec<usize> = match only {
        Some(t) => vec![element(&l, t)?],
        None => l.elements().collect(),
    };
    if only.is_none() {
        let p = &a.profile;
        let f = &a.factorization;
        println!("elements        {}", l.size());
        println!("maximal         {}", l.describe(&p.maximal_elements));
        println!("primes          {}", l.describe(&p.primes));
        println!("dimension       {}", p.dimension);
        println!("quasi-local     {}", yes(p.is_quasi_local));
        println!("domain          {}", yes(p.is_domain));
        println!("principally gen {}", yes(p.is_principally_generated));
        println!("pruefer         {}", yes(p.is_prufer));
        println!(
            "ZPI {}  Q {}  TAFL {}  OAFL {}  PTAFL {}  POAFL {}",
            yes(f.is_zpi()),
            yes(f.is_q_lattice()),
            yes(f.is_tafl()),
            yes(f.is_oafl()),
            yes(f.is_ptafl()),
            yes(f.is_poafl())
        );
        println!();
    }
    println!("element  prime  primary  ta   oa   principal  radical");
    for x in targets {
        let c = a.element(x);
        println!(
            "{:<8} {:<6} {:<8} {:<4} {:<4} {:<10} {}",
            l.name(x),
            yes(c.is_prime),
            yes(c.is_primary),
            yes(c.is_two_absorbing),
            yes(c.is_one_absorbing),
            yes(c.is_principal()),
            l.name(c.radical)
        );
    }
    Ok(0)
}

fn factorize(file: &Path, token: &str, class: FactorClass) -> Outcome {
    let l = load(file)?;
    let x = element(&l, token)?;
    match ReachSet::new(&l, class).witness(x) {
        Some(w) => {
            w.verify(&l).map_err(|e| InputError(format!("internal witness check failed: {e:?}")))?;
            let factors: Vec<String> = w.factors.iter().map(|&f| l.name(f)).collect();
            let rhs = if factors.is_empty() { "1 (empty product)".to_string() } else { factors.join(" * ") };
            println!("{} = {}", l.name(x), rhs);
            Ok(0)
        }
        None => {
            println!("{} has no {} factorization", l.name(x), class);
            Ok(1)
        }
    }
}

fn corpus_run(manifest: Option<&Path>, properties: Option<&[String]>, jobs: Option<usize>, format: Format) -> Outcome {
    let m = match manifest {
        Some(p) => CorpusManifest::load(p)?,
        None => CorpusManifest::default(),
    };
    let cap = m.effective_cap()?;
    let corpus = m.resolve()?;
    let props = runner::select(properties)?;
    let report = runner::run_corpus(&corpus, &props, jobs, cap)?;
    print!("{}", report::emit(&report, format));
    Ok(report.exit_code() as u8)
}

fn enumerate(max_order: usize, out: &Path, strategy: Strategy) -> Outcome {
    std::fs::create_dir_all(out)?;
    let mut index = std::collections::BTreeMap::<usize, usize>::new();
    let mut failure = None;
    let stats = enumerate_with(strategy, max_order, DEFAULT_BUDGET, |l| {
        let i = index.entry(l.size()).or_default();
        let path = out.join(format!("n{}_{:03}.mlat", l.size(), i));
        *i += 1;
        if let Err(e) = mlat::write_file(&l, &path) {
            failure.get_or_insert(e);
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    for (n, count) in stats.per_order.iter().enumerate().skip(2) {
        println!("order {n}: {count}");
    }
    println!("total {} lattices written to {}", stats.total(), out.display());
    Ok(0)
}

fn ring(args: &RingArgs) -> Outcome {
    let p = match (args.zn, args.modulus, &args.poly) {
        (Some(n), None, None) => RingPresentation::zn(n),
        (None, Some(n), Some(poly)) => args
            .rel
            .iter()
            .fold(RingPresentation::new(n, poly.clone()), |acc, r| acc.with_relation(r.clone())),
        _ => return Err(InputError("give either --zn or --mod with --poly".into())),
    };
    let cap = cap()?;
    let r = build_ring_with_cap(&p, cap)?;
    let ideals = ideal_lattice_with_cap(&r, cap)?;
    mlat::write_file(&ideals.lattice, &args.out)?;
    println!(
        "{}: {} elements, {} ideals written to {}",
        p.describe(),
        r.size(),
        ideals.lattice.size(),
        args.out.display()
    );
    Ok(0)
}

fn hunt_cmd(id: &str, max_order: usize, budget: u64) -> Outcome {
    let c = hunt::conjecture(id)?;
    println!("conjecture {}: {}", c.id, c.statement);
    match hunt::hunt(&c, max_order, budget)? {
        HuntOutcome::Counterexample {
            lattice_id,
            lattice,
            witness,
            examined,
        } => {
            println!(
                "counterexample after {examined} lattices: {lattice_id} ({} elements), witness {}",
                lattice.size(),
                lattice.describe(&witness)
            );
            print!("{}", mlat::write(&lattice));
            Ok(1)
        }
        HuntOutcome::Clean { examined } => {
            println!("clean: no counterexample among {examined} lattices of order <= {max_order}");
            Ok(0)
        }
        HuntOutcome::BudgetExhausted { examined, spent } => {
            println!("budget exhausted after {examined} lattices ({spent} candidates); search incomplete");
            Ok(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Classify { file, element } => classify(file, element.as_deref()),
        Command::Factorize { file, element, class } => factorize(file, element, (*class).into()),
        Command::Corpus {
            command:
                CorpusCommand::Run {
                    manifest,
                    properties,
                    jobs,
                    format,
                },
        } => corpus_run(
            manifest.as_deref(),
            properties.as_deref(),
            *jobs,
            match format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            },
        ),
        Command::Enumerate { max_order, out, strategy } => enumerate(
            *max_order,
            out,
            match strategy {
                StrategyArg::OrderFirst => Strategy::OrderFirst,
                StrategyArg::TableFirst => Strategy::TableFirst,
            },
        ),
        Command::Ring(args) => ring(args),
        Command::Hunt {
            conjecture,
            max_order,
            budget,
        } => hunt_cmd(conjecture, *max_order, *budget),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

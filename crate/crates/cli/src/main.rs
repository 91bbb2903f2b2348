use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use ratcat::assoc::{check_alexander_duality, check_collapse_conjecture, facet};
use ratcat::dyck::{enumerate, DyckPath};
use ratcat::ncpart::{csp_check, homogeneous, inhomogeneous};
use ratcat::numbers::{derived_catalan, kirkman, kreweras, narayana, rational_catalan, RunTypeVector};
use ratcat::scomplex::DEFAULT_COLLAPSE_BUDGET;
use ratcat::CoprimePair;
use ratcat_cli::checks::{check_names, verify_pair, Options, VerifyReport};
use ratcat_cli::render::{chords_svg, diagonals_json, dissection_svg, dyck_svg, lasers, LaserSet};

#[derive(Parser)]
#[command(name = "ratcat", version, about = "Rational Catalan combinatorics: counting, enumeration, verification")]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct PairArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
}

impl PairArgs {
    fn pair(self) -> ratcat::Result<CoprimePair> {
        CoprimePair::new(self.a, self.b)
    }
}

/// Either one pair (`--a`, `--b`) or every pair `a < b` with `a + b <= --max-sum`.
#[derive(Args, Clone, Copy)]
struct PairRange {
    #[arg(long, requires = "b", conflicts_with = "max_sum")]
    a: Option<u32>,
    #[arg(long, requires = "a")]
    b: Option<u32>,
    #[arg(long, required_unless_present = "a")]
    max_sum: Option<u32>,
    /// Worker threads; pairs run in parallel, output order is fixed.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl PairRange {
    fn pairs(self) -> ratcat::Result<Vec<CoprimePair>> {
        match (self.a, self.b, self.max_sum) {
            (Some(a), Some(b), _) => Ok(vec![CoprimePair::new(a, b)?]),
            (_, _, Some(m)) => Ok(CoprimePair::ascending_up_to_sum(m)),
            _ => unreachable!("clap enforces one of the forms"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact count.
    Count {
        #[command(flatten)]
        pair: PairArgs,
        #[command(subcommand)]
        kind: CountKind,
    },
    /// One JSON object per Dyck path, in lexicographic order of its partition.
    Enumerate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(value_enum, default_value_t = Emit::Paths)]
        emit: Emit,
    },
    /// Run the check registry on every pair with a + b <= max-sum.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        max_sum: u32,
        /// Restrict to the named checks (repeatable).
        #[arg(long, value_parser = check_name)]
        only: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Node budget of the collapse search.
        #[arg(long, default_value_t = DEFAULT_COLLAPSE_BUDGET)]
        budget: u64,
    },
    /// Cyclic sieving of promotion against the q-Catalan number.
    Csp {
        #[command(flatten)]
        range: PairRange,
    },
    /// Search for elementary collapses from the flag complex onto the associahedron.
    Collapse {
        #[command(flatten)]
        range: PairRange,
        #[arg(long, default_value_t = DEFAULT_COLLAPSE_BUDGET)]
        budget: u64,
    },
    /// Alexander duality between complementary hat complexes.
    Alexander {
        #[command(flatten)]
        range: PairRange,
    },
    /// Draw a path, its dissection, or a partition as chords.
    Render {
        #[arg(value_enum)]
        kind: RenderKind,
        #[command(flatten)]
        pair: PairArgs,
        /// Step word over {N, E}; defaults to the highest path.
        #[arg(long)]
        path: Option<String>,
        #[arg(long, value_enum, default_value_t = LaserSet::All)]
        lasers: LaserSet,
        #[arg(long, value_enum, default_value_t = Flavor::Homogeneous)]
        partition: Flavor,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CountKind {
    Catalan,
    Derived,
    Narayana {
        #[arg(long)]
        i: u32,
    },
    Kirkman {
        #[arg(long)]
        i: u32,
    },
    Kreweras {
        /// Comma-separated run type `r_0,...,r_a`.
        #[arg(long, value_delimiter = ',')]
        r: Vec<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Paths,
    Facets,
    Homogeneous,
    Inhomogeneous,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    Dyck,
    Dissection,
    Chords,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flavor {
    Homogeneous,
    Inhomogeneous,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

fn check_name(s: &str) -> Result<String, String> {
    let names = check_names();
    if names.contains(&s) {
        Ok(s.to_owned())
    } else {
        Err(format!("unknown check; expected one of {}", names.join(", ")))
    }
}

enum Failure {
    Precondition(ratcat::Error),
    Io(io::Error),
    /// Already reported in the output stream.
    Check,
}

impl From<ratcat::Error> for Failure {
    fn from(e: ratcat::Error) -> Self {
        Failure::Precondition(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Run = Result<(), Failure>;

fn line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Applies `f` to every pair on `jobs` threads, returning results in input order.
fn par_map<T: Send>(
    pairs: &[CoprimePair],
    jobs: usize,
    f: impl Fn(CoprimePair) -> T + Sync + Send,
) -> Vec<T> {
    pool(jobs).install(|| pairs.par_iter().map(|&p| f(p)).collect())
}

fn count(out: &mut dyn Write, pair: CoprimePair, kind: &CountKind) -> Run {
    let value = match kind {
        CountKind::Catalan => rational_catalan(pair),
        CountKind::Derived => derived_catalan(pair),
        CountKind::Narayana { i } => narayana(pair, *i)?,
        CountKind::Kirkman { i } => kirkman(pair, *i)?,
        CountKind::Kreweras { r } => kreweras(pair, &RunTypeVector::new(pair, r.clone())?)?,
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn enumerate_cmd(out: &mut dyn Write, pair: CoprimePair, emit: Emit) -> Run {
    if !matches!(emit, Emit::Paths) {
        pair.require_ascending()?;
    }
    for d in enumerate(pair) {
        let mut obj = json!({ "path": d.word(), "lambda": d.to_partition().parts() });
        let extra = match emit {
            Emit::Paths => None,
            Emit::Facets => Some(("facet", json!(diagonals_json(&facet(&d)?)))),
            Emit::Homogeneous => Some(("homogeneous", json!(homogeneous(&d)?))),
            Emit::Inhomogeneous => Some(("inhomogeneous", json!(inhomogeneous(&d)?))),
        };
        if let Some((k, v)) = extra {
            obj[k] = v;
        }
        line(out, &obj)?;
    }
    Ok(())
}

fn verify(out: &mut dyn Write, max_sum: u32, only: &[String], jobs: usize, budget: u64) -> Run {
    let opts = Options { collapse_budget: budget };
    let pairs = CoprimePair::ascending_up_to_sum(max_sum);
    let reports: Vec<VerifyReport> = par_map(&pairs, jobs, |p| verify_pair(p, only, &opts));
    let mut failed = 0;
    for r in &reports {
        line(out, r)?;
        for c in r.checks.iter().filter(|c| c.status.is_failure()) {
            failed += 1;
            eprintln!("FAIL {} {}: {}", r.pair, c.name, c.detail);
        }
    }
    eprintln!("{} pairs, {failed} failed checks", reports.len());
    if failed > 0 {
        return Err(Failure::Check);
    }
    Ok(())
}

/// Runs `f` over the range, writing each result; a failing pair stops nothing but
/// makes the exit code nonzero.
fn per_pair<T: Serialize + Send>(
    out: &mut dyn Write,
    range: PairRange,
    f: impl Fn(CoprimePair) -> ratcat::Result<(T, bool)> + Sync + Send,
) -> Run {
    let pairs = range.pairs()?;
    let results = par_map(&pairs, range.jobs, f);
    let mut ok = true;
    for (pair, r) in pairs.iter().zip(results) {
        match r {
            Ok((value, good)) => {
                line(out, &value)?;
                ok &= good;
            }
            Err(e) => {
                line(out, &json!({ "pair": pair, "error": e.to_string() }))?;
                ok = false;
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn render(
    out: &mut dyn Write,
    kind: RenderKind,
    pair: CoprimePair,
    path: Option<&str>,
    lasers_shown: LaserSet,
    flavor: Flavor,
    format: Format,
) -> Run {
    let d = match path {
        Some(w) => DyckPath::parse(pair, w)?,
        None => DyckPath::highest(pair),
    };
    let partition = || match flavor {
        Flavor::Homogeneous => homogeneous(&d),
        Flavor::Inhomogeneous => inhomogeneous(&d),
    };
    match (kind, format) {
        (RenderKind::Dyck, Format::Svg) => out.write_all(dyck_svg(&d, lasers_shown)?.as_bytes())?,
        (RenderKind::Dissection, Format::Svg) => out.write_all(dissection_svg(&d)?.as_bytes())?,
        (RenderKind::Chords, Format::Svg) => out.write_all(chords_svg(&partition()?).as_bytes())?,
        (RenderKind::Dyck, Format::Json) => {
            let ls: Vec<_> = lasers(&d, lasers_shown)?
                .iter()
                .map(|l| {
                    json!({
                        "source": l.source,
                        "end": [l.end_x.to_string(), l.end_height],
                        "hit": l.hit,
                    })
                })
                .collect();
            line(out, &json!({ "pair": pair, "path": d.word(), "lasers": ls }))?
        }
        (RenderKind::Dissection, Format::Json) => line(
            out,
            &json!({ "polygon": pair.b() + 1, "path": d.word(), "diagonals": diagonals_json(&facet(&d)?) }),
        )?,
        (RenderKind::Chords, Format::Json) => line(
            out,
            &json!({ "path": d.word(), "partition": partition()? }),
        )?,
    }
    Ok(())
}

fn run(cli: Cli) -> Run {
    let mut out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let out = out.as_mut();
    let result = match cli.command {
        Command::Count { pair, kind } => count(out, pair.pair()?, &kind),
        Command::Enumerate { pair, emit } => enumerate_cmd(out, pair.pair()?, emit),
        Command::Verify { max_sum, only, jobs, budget } => verify(out, max_sum, &only, jobs, budget),
        Command::Csp { range } => per_pair(out, range, |p| {
            let r = csp_check(p)?;
            // Only Fuss pairs are a proven case.
            let good = r.holds || !p.is_fuss();
            Ok((r, good))
        }),
        Command::Collapse { range, budget } => per_pair(out, range, |p| {
            let v = check_collapse_conjecture(p, budget)?;
            Ok((json!({ "pair": p, "verdict": v }), true))
        }),
        Command::Alexander { range } => per_pair(out, range, |p| Ok((check_alexander_duality(p)?, true))),
        Command::Render { kind, pair, path, lasers, partition, format } => render(
            out,
            kind,
            pair.pair()?,
            path.as_deref(),
            lasers,
            partition,
            format,
        ),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Precondition(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(1),
    }
}

//! Argument parsing and dispatch for the `adesign` binary.
//!
//! Grammar: `adesign <verify|construct|search|bounds|sidon|pbd> <variant> [--flags]`.
//! Results go to stdout, or to `--out` with a one-line summary on stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use adesign_core::construct::{
    base_family, concentration_report, construct_cosingleton, construct_t1, randomized_adesign,
    SidonGenerator,
};
use adesign_core::field::Field;
use adesign_core::pbd::{
    affine_plane, compose, default_adesign, default_design, projective_plane, single_block,
    verify_pbd, PbdVerdict,
};
use adesign_core::search::{antimagic_cube, find_design, mu_exact, CubeMode};
use adesign_core::sidon::{
    bose_chowla, greedy_bsequence, is_bsequence, max_bsequence_size_exact, BVerdict,
};
use adesign_core::{is_adesign, mu_bounds, powers_of_two_family, BlockFamily, Error, Verdict};

use crate::formats;
use crate::table::bounds_table;
use crate::CliError;

const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "adesign",
    version,
    about = "Construct, verify and search t-adesigns"
)]
struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker cap; all current operations run on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a block-family file.
    Verify(VerifyArgs),
    /// Build a block family.
    #[command(subcommand)]
    Construct(Construct),
    /// Exact searches.
    #[command(subcommand)]
    Search(Search),
    /// Bounds on the least maximum frequency.
    #[command(subcommand)]
    Bounds(Bounds),
    /// B_r sequences and finite fields.
    #[command(subcommand)]
    Sidon(Sidon),
    /// Pairwise balanced designs and composition.
    #[command(subcommand)]
    Pbd(Pbd),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Subset size.
    #[arg(long)]
    t: u32,
    /// Check for a t-design instead of a t-adesign.
    #[arg(long)]
    design: bool,
    /// Also write the frequency table here.
    #[arg(long)]
    freqs: Option<PathBuf>,
    /// Block-family or certificate file.
    file: PathBuf,
}

#[derive(Args, Debug)]
struct Out {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Generator {
    Greedy,
    BoseChowla,
}

impl From<Generator> for SidonGenerator {
    fn from(g: Generator) -> Self {
        match g {
            Generator::Greedy => SidonGenerator::Greedy,
            Generator::BoseChowla => SidonGenerator::BoseChowla,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Exact 1-adesign.
    T1 {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Co-singleton blocks weighted by a B_t set.
    Cosingleton {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Generator::Greedy)]
        generator: Generator,
        #[command(flatten)]
        out: Out,
    },
    /// Every k-subset weighted by the B_t weights outside it.
    Base {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Generator::BoseChowla)]
        generator: Generator,
        #[command(flatten)]
        out: Out,
    },
    /// Randomly thinned base family, retried until verified.
    Random {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        /// Thinning probability; computed from (v, k, t) when absent.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 50)]
        retries: u32,
        /// Print the concentration summary of the returned family.
        #[arg(long)]
        report: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Distinct powers of two on all k-subsets.
    Powers {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Search {
    /// Least maximum frequency with an optimality certificate.
    Mu {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        v: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
    /// A 2-design with the given index.
    Design {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Anti-magic cube.
    Cube {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Exact,
    Heuristic,
}

#[derive(Subcommand, Debug)]
enum Bounds {
    /// Every known bound for one parameter set.
    Mu {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        v: u32,
    },
    /// One row per v.
    Table {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// Node budget for each exact search.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Sidon {
    /// Greedy B_r sequence.
    Greedy {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Bose–Chowla B_r set of size q.
    BoseChowla {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Largest B_r subset of [1, n] by exhaustive search.
    Exact {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Check a Sidon set file.
    Check { file: PathBuf },
    /// Print the field of order q.
    Field {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Pbd {
    /// Projective plane of order q.
    Projective {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Affine plane of order q.
    Affine {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    /// A single block on v points.
    Single {
        #[arg(long)]
        v: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Check a PBD file.
    Verify { file: PathBuf },
    /// Place adesigns and designs on the blocks of a PBD file.
    Compose {
        #[arg(long)]
        k: u32,
        /// Node budget for each exact search supplying a block adesign.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

/// Writes `text` to `--out` and `summary` to stdout, or `text` to stdout.
fn emit(out: &Out, text: &str, summary: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.out {
        Some(path) => {
            write_file(path, text)?;
            writeln!(stdout, "{summary}").map_err(io)
        }
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}

fn family_summary(family: &BlockFamily, t: u32) -> Result<String, CliError> {
    let max = is_adesign(family, t)?
        .max_frequency()
        .ok_or_else(|| CliError::Verification("constructed family is not an adesign".into()))?;
    Ok(format!(
        "max_frequency={max} blocks={} types={}",
        family.total_blocks()?,
        family.distinct_blocks()
    ))
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Verify(args) => verify(args, stdout),
        Command::Construct(c) => construct(c, seed, stdout),
        Command::Search(s) => search(s, stdout),
        Command::Bounds(b) => bounds(b, stdout),
        Command::Sidon(s) => sidon(s, stdout),
        Command::Pbd(p) => pbd(p, stdout),
    }
}

fn verify(args: VerifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = read(&args.file)?;
    let family = formats::parse_family(&text)?;
    let table = family.frequencies(args.t)?;
    if let Some(path) = &args.freqs {
        write_file(path, &formats::write_frequencies(&table))?;
    }
    if args.design {
        return match table.design_index() {
            Some(lambda) => writeln!(stdout, "design t={} lambda={lambda}", args.t).map_err(io),
            None => Err(CliError::Verification(format!(
                "not a {}-design: frequencies range over [{}, {}]",
                args.t,
                table.values().iter().min().copied().unwrap_or(0),
                table.max()
            ))),
        };
    }
    match table.verdict() {
        Verdict::Adesign { max_frequency } => {
            writeln!(stdout, "adesign t={} max_frequency={max_frequency}", args.t).map_err(io)
        }
        Verdict::Collision {
            first,
            second,
            frequency,
        } => Err(CliError::Verification(format!(
            "collision: {{{}}} and {{{}}} both have frequency {frequency}",
            join(&first),
            join(&second)
        ))),
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn construct(c: Construct, seed: u64, stdout: &mut dyn Write) -> Result<(), CliError> {
    match c {
        Construct::T1 { v, k, out } => {
            let f = construct_t1(v, k)?;
            emit(
                &out,
                &formats::write_family(&f),
                &family_summary(&f, 1)?,
                stdout,
            )
        }
        Construct::Cosingleton {
            v,
            t,
            generator,
            out,
        } => {
            let (f, _) = construct_cosingleton(v, t, generator.into())?;
            emit(
                &out,
                &formats::write_family(&f),
                &family_summary(&f, t)?,
                stdout,
            )
        }
        Construct::Base {
            v,
            k,
            t,
            generator,
            out,
        } => {
            let weights = SidonGenerator::from(generator).generate(v, t)?;
            let f = base_family(&weights, k)?;
            emit(
                &out,
                &formats::write_family(&f),
                &family_summary(&f, t)?,
                stdout,
            )
        }
        Construct::Random {
            v,
            k,
            t,
            p,
            retries,
            report,
            out,
        } => {
            let r = randomized_adesign(v, k, t, p, seed, retries)?;
            let text = formats::write_family(&r.family);
            match &out.out {
                Some(path) => write_file(path, &text)?,
                None => stdout.write_all(text.as_bytes()).map_err(io)?,
            }
            let mut summary = format!("# {}", r.stats);
            if report {
                let rep = concentration_report(&r.base, &r.family, r.stats.p, t)?;
                summary = format!(
                    "{summary}\n# concentration violations={} of {} base_max_frequency={}",
                    rep.violations,
                    rep.rows.len(),
                    r.stats.base_max_frequency
                );
            }
            writeln!(stdout, "{summary}").map_err(io)
        }
        Construct::Powers { v, k, out } => {
            let f = powers_of_two_family(v, k)?;
            emit(
                &out,
                &formats::write_family(&f),
                &family_summary(&f, k)?,
                stdout,
            )
        }
    }
}

fn search(s: Search, stdout: &mut dyn Write) -> Result<(), CliError> {
    match s {
        Search::Mu {
            t,
            k,
            v,
            budget,
            out,
        } => {
            let cert = mu_exact(t, k, v, budget).map_err(|e| match e {
                Error::BudgetExhausted {
                    nodes,
                    lower,
                    best_known,
                } => {
                    let _ = writeln!(
                        stdout,
                        "budget exhausted nodes={nodes} lower={lower} best_known={}",
                        best_known.map_or_else(|| "-".into(), |b| b.to_string())
                    );
                    CliError::Core(Error::BudgetExhausted {
                        nodes,
                        lower,
                        best_known,
                    })
                }
                e => e.into(),
            })?;
            writeln!(stdout, "mu={} optimal={}", cert.mu, cert.optimal).map_err(io)?;
            if let Some(path) = &out.out {
                write_file(path, &formats::write_certificate(&cert))?;
            }
            Ok(())
        }
        Search::Design {
            v,
            k,
            lambda,
            budget,
            out,
        } => match find_design(v, k, lambda, budget)? {
            Some(f) => emit(
                &out,
                &formats::write_family(&f),
                &format!("design lambda={lambda} blocks={}", f.total_blocks()?),
                stdout,
            ),
            None => Err(CliError::Verification(format!(
                "no 2-({v},{k},{lambda}) design exists"
            ))),
        },
        Search::Cube {
            n,
            mode,
            budget,
            out,
        } => {
            let mode = match mode {
                Mode::Exact => CubeMode::Exact,
                Mode::Heuristic => CubeMode::Heuristic,
            };
            let cube = antimagic_cube(n, mode, budget)?;
            let max = cube.line_sums().iter().max().copied().unwrap_or(0);
            emit(
                &out,
                &formats::write_cube(&cube),
                &format!("max_line_sum={max}"),
                stdout,
            )
        }
    }
}

fn bounds(b: Bounds, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = match b {
        Bounds::Mu { t, k, v } => {
            let b = mu_bounds(t, k, v)?;
            let mut s = format!("lower {}\n", b.lower);
            for (u, why) in &b.uppers {
                s.push_str(&format!("upper {u}  ({why})\n"));
            }
            s
        }
        Bounds::Table {
            t,
            k,
            from,
            to,
            budget,
        } => bounds_table(t, k, from..=to, budget)?,
    };
    stdout.write_all(text.as_bytes()).map_err(io)
}

fn sidon(s: Sidon, stdout: &mut dyn Write) -> Result<(), CliError> {
    match s {
        Sidon::Greedy { r, count, out } => {
            let set = greedy_bsequence(r, count)?;
            emit(
                &out,
                &formats::write_sidon(&set),
                &format!("size={}", set.len()),
                stdout,
            )
        }
        Sidon::BoseChowla { q, r, out } => {
            let set = bose_chowla(q, r)?;
            emit(
                &out,
                &formats::write_sidon(&set),
                &format!("size={}", set.len()),
                stdout,
            )
        }
        Sidon::Exact { n, r, out } => {
            let (size, set) = max_bsequence_size_exact(n, r)?;
            emit(
                &out,
                &formats::write_sidon(&set),
                &format!("size={size}"),
                stdout,
            )
        }
        Sidon::Check { file } => {
            let text = read(&file)?;
            let set = formats::parse_sidon(&text).map_err(|e| match e {
                formats::FormatError::Invalid(e) => CliError::Verification(e.to_string()),
                e => e.into(),
            })?;
            match is_bsequence(set.elements(), set.order(), set.modulus())? {
                BVerdict::Yes => {
                    writeln!(stdout, "B_{} size={}", set.order(), set.len()).map_err(io)
                }
                BVerdict::No { .. } => Err(CliError::Verification("not a B_r set".into())),
            }
        }
        Sidon::Field { q } => {
            let f = Field::with_order(q)?;
            writeln!(stdout, "{}", f.spec()).map_err(io)
        }
    }
}

fn pbd(p: Pbd, stdout: &mut dyn Write) -> Result<(), CliError> {
    match p {
        Pbd::Projective { q, out } => {
            let p = projective_plane(q)?;
            emit(
                &out,
                &formats::write_pbd(&p),
                &format!("points={} blocks={}", p.v(), p.blocks().len()),
                stdout,
            )
        }
        Pbd::Affine { q, out } => {
            let p = affine_plane(q)?;
            emit(
                &out,
                &formats::write_pbd(&p),
                &format!("points={} blocks={}", p.v(), p.blocks().len()),
                stdout,
            )
        }
        Pbd::Single { v, out } => {
            let p = single_block(v)?;
            emit(
                &out,
                &formats::write_pbd(&p),
                &format!("points={} blocks=1", p.v()),
                stdout,
            )
        }
        Pbd::Verify { file } => {
            let p = formats::parse_pbd(&read(&file)?)?;
            match verify_pbd(&p) {
                PbdVerdict::Valid => {
                    writeln!(stdout, "valid points={} blocks={}", p.v(), p.blocks().len())
                        .map_err(io)
                }
                PbdVerdict::BadPair { pair, count } => Err(CliError::Verification(format!(
                    "pair {{{} {}}} lies in {count} blocks",
                    pair.0, pair.1
                ))),
            }
        }
        Pbd::Compose {
            k,
            budget,
            file,
            out,
        } => {
            let p = formats::parse_pbd(&read(&file)?)?;
            if let PbdVerdict::BadPair { pair, count } = verify_pbd(&p) {
                return Err(CliError::Verification(format!(
                    "not a PBD: pair {{{} {}}} lies in {count} blocks",
                    pair.0, pair.1
                )));
            }
            let (f, trace) = compose(
                &p,
                k,
                |u| default_adesign(u, k, budget),
                |u| default_design(u, k),
            )?;
            let mut summary = String::new();
            for (i, s) in trace.steps.iter().enumerate() {
                summary.push_str(&format!(
                    "# block {} u={} lambda={} mu={} M={}\n",
                    i + 1,
                    s.u,
                    s.lambda,
                    s.mu,
                    s.m
                ));
            }
            summary.push_str(&format!(
                "# {} bound={}",
                family_summary(&f, 2)?,
                trace.bound()
            ));
            let text = formats::write_family(&f);
            match &out.out {
                Some(path) => write_file(path, &text)?,
                None => stdout.write_all(text.as_bytes()).map_err(io)?,
            }
            writeln!(stdout, "{summary}").map_err(io)
        }
    }
}

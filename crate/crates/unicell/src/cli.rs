//! Command-line front end. Exit codes: 0 success, 1 domain error or failed
//! verification, 2 usage error.

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unicell_core::count::{beta_bipartite, epsilon_identity, epsilon_via_r, epsilon_walsh, xi_precubic};
use unicell_core::oracle::{self, Oracle, DEFAULT_MAX_EDGES, EXTENDED_MAX_EDGES};
use unicell_core::sampler::{sample_map, SampleError};
use unicell_core::surgery::{glue3, lambda, phi, phi_inv, psi, psi_inv, slice3, xi};
use unicell_core::trisect::{diagram, step_kind, trisection_frame, trisections};
use unicell_core::{MarkedTrisection, MarkedVertices, PsiInput, StepKind, UnicellularMap};

use crate::format::{parse_line, serialize, serialize_canonical};
use crate::verify::{run_suite, Suite};

/// Environment variable raising the enumeration bound, up to the hard limit.
pub const MAX_EDGES_ENV: &str = "UNICELL_MAX_EDGES";

#[derive(Debug, Parser)]
#[command(name = "unicell", version, about = "Unicellular maps: counting, sampling, surgery and exhaustive checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rooted unicellular maps of a given genus and edge count.
    Count {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1000))]
        genus: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        edges: u64,
        #[arg(long, value_enum, default_value_t = CountMethod::Identity)]
        method: CountMethod,
    },
    /// Bipartite maps with given numbers of white and black vertices.
    CountBipartite {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1000))]
        genus: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        white: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        black: u64,
        #[arg(long, value_enum, default_value_t = BipartiteMethod::Recursion)]
        method: BipartiteMethod,
    },
    /// Maps whose vertices all have degree 1 or 3.
    CountPrecubic {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1000))]
        genus: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        edges: u64,
        #[arg(long, value_enum, default_value_t = PrecubicMethod::Formula)]
        method: PrecubicMethod,
    },
    /// Uniform random maps, one line each.
    Sample {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1000))]
        genus: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        edges: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(0..=10_000_000))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Full)]
        format: Format,
    },
    /// Exhaustive checks against the enumeration oracle.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        max_edges: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
        shards: u64,
    },
    /// Structure report for one map line (read from stdin when absent).
    Inspect {
        map: Option<String>,
        /// Also print the diagram of the vertex containing this half-edge.
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Apply one surgery to a map line (read from stdin when `--map` is absent).
    Surgery(SurgeryArgs),
}

#[derive(Debug, Args)]
struct SurgeryArgs {
    #[arg(value_enum)]
    op: SurgeryOp,
    #[arg(long)]
    map: Option<String>,
    /// Half-edges (glue, slice) or vertices named by any of their half-edges (phi, lambda, psi).
    #[arg(long, value_delimiter = ',')]
    marks: Vec<usize>,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Full)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountMethod {
    Identity,
    Walsh,
    Polynomial,
    Brute,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BipartiteMethod {
    Recursion,
    Brute,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PrecubicMethod {
    Formula,
    Brute,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Full,
    Canonical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SurgeryOp {
    Glue,
    Slice,
    Phi,
    PhiInv,
    Psi,
    PsiInv,
    Lambda,
    Xi,
}

/// Failure that maps to exit code 1.
#[derive(Debug)]
struct DomainError(String);

impl<E: std::fmt::Display> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
}

/// Bound from [`MAX_EDGES_ENV`] if set and valid, else the default.
pub fn oracle_from_env() -> Oracle {
    std::env::var(MAX_EDGES_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or_else(Oracle::default, Oracle::with_max_edges)
}

pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut io = Io { stdin, out: stdout };
    let result = dispatch(cli.command, &mut io, &oracle_from_env());
    let _ = io.out.flush();
    match result {
        Ok(code) => code,
        Err(DomainError(message)) => {
            let _ = writeln!(stderr, "{message}");
            1
        }
    }
}

fn genus_fits(genus: u32, edges: u64) -> Result<(), DomainError> {
    if edges + 1 < 2 * genus as u64 + 1 {
        return Err(DomainError(SampleError::GenusTooLarge {
            genus: genus as usize,
            edges: edges as usize,
        }
        .to_string()));
    }
    Ok(())
}

fn brute_size(edges: u64, oracle: &Oracle) -> Result<usize, DomainError> {
    let n = usize::try_from(edges).map_err(|_| DomainError(format!("{edges} edges is out of range")))?;
    oracle.check(n)?;
    Ok(n)
}

fn dispatch(command: Command, io: &mut Io<'_>, oracle: &Oracle) -> Result<i32, DomainError> {
    match command {
        Command::Count { genus, edges, method } => {
            genus_fits(genus, edges)?;
            let value = match method {
                CountMethod::Identity => epsilon_identity(genus, edges),
                CountMethod::Walsh => epsilon_walsh(genus, edges),
                CountMethod::Polynomial => epsilon_via_r(genus, edges),
                CountMethod::Brute => oracle::census(oracle, brute_size(edges, oracle)?)?.get(genus),
            };
            writeln!(io.out, "{value}")?;
        }
        Command::CountBipartite {
            genus,
            white,
            black,
            method,
        } => {
            let value = match method {
                BipartiteMethod::Recursion => beta_bipartite(genus, white, black).to_string(),
                BipartiteMethod::Brute => {
                    let n = brute_size(white + black + 2 * genus as u64 - 1, oracle)?;
                    let key = (genus as usize, white as usize, black as usize);
                    oracle::bipartite_census(oracle, n)?.get(&key).copied().unwrap_or(0).to_string()
                }
            };
            writeln!(io.out, "{value}")?;
        }
        Command::CountPrecubic { genus, edges, method } => {
            genus_fits(genus, edges)?;
            let value = match method {
                PrecubicMethod::Formula => xi_precubic(genus, edges),
                PrecubicMethod::Brute => oracle::precubic_census(oracle, brute_size(edges, oracle)?)?.get(genus),
            };
            writeln!(io.out, "{value}")?;
        }
        Command::Sample {
            genus,
            edges,
            count,
            seed,
            format,
        } => {
            genus_fits(genus, edges)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let m = sample_map(genus as usize, edges as usize, &mut rng)?;
                writeln!(io.out, "{}", render(&m, format))?;
            }
        }
        Command::Verify {
            suite,
            max_edges,
            shards,
        } => {
            let oracle = if suite.enumerates() && max_edges as usize > oracle.max_edges() {
                return Err(DomainError(format!(
                    "--max-edges {max_edges} exceeds the enumeration bound {} (raise it with {MAX_EDGES_ENV}, at most {EXTENDED_MAX_EDGES}; default {DEFAULT_MAX_EDGES})",
                    oracle.max_edges()
                )));
            } else {
                oracle
            };
            let report = run_suite(suite, max_edges as usize, shards as usize, oracle)?;
            writeln!(io.out, "{report}")?;
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Inspect { map, vertex } => {
            let line = map_line(map, io)?;
            let (m, labels) = parse_line(&line)?;
            inspect(&m, labels.as_deref(), vertex, io.out)?;
        }
        Command::Surgery(args) => surgery(args, io)?,
    }
    Ok(0)
}

fn render(m: &UnicellularMap, format: Format) -> String {
    match format {
        Format::Full => serialize(m),
        Format::Canonical => serialize_canonical(m),
    }
}

fn map_line(arg: Option<String>, io: &mut Io<'_>) -> Result<String, DomainError> {
    if let Some(line) = arg {
        return Ok(line);
    }
    let mut line = String::new();
    io.stdin.read_line(&mut line)?;
    Ok(line.trim().to_string())
}

fn inspect(m: &UnicellularMap, labels: Option<&[i64]>, vertex: Option<usize>, out: &mut dyn Write) -> Result<(), DomainError> {
    writeln!(out, "n={} v={} genus={} root={}", m.edge_count(), m.vertex_count(), m.genus(), m.root())?;
    writeln!(out, "tour: {}", m.tour_rank().tour().iter().join(" "))?;
    for (k, min) in m.vertex_mins().into_iter().enumerate() {
        let label = labels.map(|l| format!(" label={}", l[k])).unwrap_or_default();
        writeln!(out, "vertex min={min} ({}){label}", m.vertex_of(min).iter().join(" "))?;
    }
    let steps = (0..m.half_edge_count()).map(|h| {
        let kind = match step_kind(m, h) {
            StepKind::UpStep => "up",
            StepKind::DownStep => "down",
            StepKind::Trisection => "trisection",
        };
        format!("{h}:{kind}")
    });
    writeln!(out, "steps: {}", steps.format(" "))?;
    let tris = trisections(m);
    if tris.is_empty() {
        writeln!(out, "trisections: none")?;
    } else {
        writeln!(out, "trisections: {}", tris.len())?;
        for tau in tris {
            writeln!(out, "{}", trisection_frame(m, tau)?)?;
        }
    }
    if let Some(start) = vertex {
        m.check_half_edge(start)?;
        let d = diagram(m, start);
        writeln!(out, "diagram from {start}: columns {}", d.columns().iter().join(" "))?;
        write!(out, "{}", d.render())?;
    }
    Ok(())
}

fn exactly<const K: usize>(marks: &[usize], op: &str) -> Result<[usize; K], DomainError> {
    marks
        .try_into()
        .map_err(|_| DomainError(format!("{op} takes exactly {K} marks, got {}", marks.len())))
}

fn need_tau(tau: Option<usize>, op: &str) -> Result<usize, DomainError> {
    tau.ok_or_else(|| DomainError(format!("{op} needs --tau")))
}

fn surgery(args: SurgeryArgs, io: &mut Io<'_>) -> Result<(), DomainError> {
    let line = map_line(args.map, io)?;
    let (m, _) = parse_line(&line)?;
    let format = args.format;
    // canonical output renames half-edges, so annotations follow the rank relabelling
    let name = |map: &UnicellularMap, h: usize| match format {
        Format::Full => h,
        Format::Canonical => map.rank(h),
    };
    let marked = |out: &mut dyn Write, mt: &MarkedTrisection| -> Result<(), DomainError> {
        writeln!(out, "{}", render(mt.map(), format))?;
        writeln!(out, "tau={}", name(mt.map(), mt.tau()))?;
        Ok(())
    };
    let with_marks = |out: &mut dyn Write, map: &UnicellularMap, marks: &[usize]| -> Result<(), DomainError> {
        writeln!(out, "{}", render(map, format))?;
        writeln!(out, "marks={}", marks.iter().map(|&h| name(map, h)).join(","))?;
        Ok(())
    };
    match args.op {
        SurgeryOp::Glue => {
            let [a1, a2, a3] = exactly::<3>(&args.marks, "glue")?;
            let glued = glue3(&m, a1, a2, a3)?;
            with_marks(io.out, &glued, &[a1, a2, a3])?;
        }
        SurgeryOp::Slice => {
            let [a1, a2, a3] = exactly::<3>(&args.marks, "slice")?;
            let sliced = slice3(&m, a1, a2, a3)?;
            with_marks(io.out, &sliced, &[a1, a2, a3])?;
        }
        SurgeryOp::Phi => marked(io.out, &phi(&m, exactly::<3>(&args.marks, "phi")?)?)?,
        SurgeryOp::PhiInv => {
            let mv = phi_inv(&MarkedTrisection::new(m, need_tau(args.tau, "phi-inv")?)?)?;
            with_marks(io.out, mv.map(), mv.marks())?;
        }
        SurgeryOp::Psi => {
            let [v1, v2] = exactly::<2>(&args.marks, "psi")?;
            marked(io.out, &psi(&PsiInput::new(m, v1, v2, need_tau(args.tau, "psi")?)?)?)?;
        }
        SurgeryOp::PsiInv => {
            let input = psi_inv(&MarkedTrisection::new(m, need_tau(args.tau, "psi-inv")?)?)?;
            with_marks(io.out, input.map(), &[input.v1(), input.v2()])?;
            writeln!(io.out, "tau={}", name(input.map(), input.tau()))?;
        }
        SurgeryOp::Lambda => marked(io.out, &lambda(&MarkedVertices::new(m, &args.marks)?)?)?,
        SurgeryOp::Xi => {
            let mv = xi(&MarkedTrisection::new(m, need_tau(args.tau, "xi")?)?)?;
            with_marks(io.out, mv.map(), mv.marks())?;
        }
    }
    Ok(())
}

//! The `satp` command line.
//!
//! Exit codes: 0 success, 1 negative decision, 2 input error, 3 budget or
//! subclass refusal.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::block::BlockPoint;
use crate::ecbgc::{
    brute_force_coloring, check_condition, parse_ecbgc, reduce_x3sat_to_ecbgc, solve_ecbgc,
};
use crate::error::Error;
use crate::lp::{lp_maximize, LpResult};
use crate::polytope::{build_satp_lp, PolytopeId};
use crate::rational::Rational;
use crate::recognition::{recognize_bqp, recognize_satp};
use crate::sat::{objective_max3sat, objective_nae3sat, objective_x3sat, parse_cnf3};
use crate::system::{parse_vector, LinearSystem};
use crate::vertices::{
    adjacent, check_budget, code_at, construct_clique, enumerate_lp_vertices, fractional_vertex,
    skeleton, verify_vertex_flat, VertexCode, DEFAULT_CODE_BUDGET, DEFAULT_LP_VERTEX_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "satp",
    version,
    about = "Exact LP relaxations of SATP(m,n) and related polytopes"
)]
struct Cli {
    /// Size budget for enumerations (codes, colorings or LP vertices).
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Worker threads for integral-vertex enumeration and the brute-force oracle.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a constraint system.
    Build {
        #[arg(long, value_enum)]
        polytope: PolytopeKind,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
    },
    /// Maximize an objective vector over a constraint system.
    Lp {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        objective: PathBuf,
    },
    /// Integral vertices, adjacency and fractional vertices of SATP_LP.
    Vertices {
        #[arg(value_enum)]
        action: VerticesAction,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// First vertex code for `adjacent`, e.g. `01/20`.
        #[arg(long)]
        u: Option<String>,
        /// Second vertex code for `adjacent`.
        #[arg(long)]
        v: Option<String>,
    },
    /// Decide whether a point is a vertex of a system.
    VerifyVertex {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// List every vertex of a small system.
    EnumLpVertices {
        #[arg(long)]
        system: PathBuf,
    },
    /// Build the objective of a 3-SAT variant.
    Reduce {
        #[arg(value_enum)]
        variant: SatVariant,
        #[arg(long)]
        cnf: PathBuf,
    },
    /// Integer recognition.
    Recognize {
        #[arg(value_enum)]
        target: RecognizeTarget,
        #[arg(long)]
        objective: PathBuf,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Brute-force references.
    Oracle {
        #[arg(value_enum)]
        target: OracleTarget,
        #[arg(long)]
        objective: Option<PathBuf>,
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Edge-constrained bipartite coloring.
    Ecbgc {
        #[arg(value_enum)]
        action: EcbgcAction,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        cnf: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolytopeKind {
    Satp,
    Satp2,
    Bqp,
    BqpStd,
    Met,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerticesAction {
    Enumerate,
    Adjacent,
    Diameter,
    Clique,
    Fractional,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SatVariant {
    Max3sat,
    X3sat,
    Nae3sat,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RecognizeTarget {
    Satp,
    Bqp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleTarget {
    Satp,
    Ecbgc,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EcbgcAction {
    Check,
    Solve,
    FromX3sat,
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<crate::error::ParseError> for Failure {
    fn from(e: crate::error::ParseError) -> Self {
        Failure::Lib(e.into())
    }
}

type Outcome = Result<i32, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Lib(Error::Input(msg.into())))
}

/// Runs the command line on real stdio.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line with captured output. `args` includes the
/// program name.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut text = String::new();
    let result = dispatch(&cli, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(code) => code,
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            EXIT_INPUT
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Budget { .. } | Error::OutsideSubclass { .. } | Error::Unbalanced { .. } => {
                    EXIT_REFUSED
                }
                _ => EXIT_INPUT,
            }
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(path.into(), e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))
}

fn read_system(path: &Path) -> Result<LinearSystem, Failure> {
    Ok(LinearSystem::from_text(&read_input(path)?)?)
}

/// Either a block point/objective file or a plain rational vector.
fn read_vector(path: &Path) -> Result<Vec<Rational>, Failure> {
    let text = read_input(path)?;
    match BlockPoint::from_text(&text) {
        Ok((p, _)) => Ok(p.into_flat()),
        Err(_) => Ok(parse_vector(&text)?),
    }
}

fn join(v: &[Rational]) -> String {
    v.iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    match v {
        Some(v) => Ok(v),
        None => usage(format!("missing --{flag}")),
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Outcome {
    let jobs = cli.jobs.max(1);
    let code_budget = cli.budget.unwrap_or(DEFAULT_CODE_BUDGET);
    match &cli.command {
        Command::Build { polytope, m, n } => {
            let id = match polytope {
                PolytopeKind::Satp => PolytopeId::SatpLp {
                    m: need(*m, "m")?,
                    n: *n,
                },
                PolytopeKind::Satp2 => PolytopeId::Satp2Lp {
                    m: need(*m, "m")?,
                    n: *n,
                },
                PolytopeKind::Bqp => PolytopeId::BqpLp { n: *n },
                PolytopeKind::BqpStd => PolytopeId::BqpStandard { n: *n },
                PolytopeKind::Met => PolytopeId::Met { n: *n },
            };
            out.push_str(&id.build()?.to_text());
            Ok(EXIT_OK)
        }
        Command::Lp { system, objective } => {
            let sys = read_system(system)?;
            let obj = read_vector(objective)?;
            match lp_maximize(&sys, &obj)? {
                LpResult::Optimal(opt) => {
                    writeln!(out, "status optimal").unwrap();
                    writeln!(out, "value {}", opt.value).unwrap();
                    writeln!(out, "point {}", join(&opt.point)).unwrap();
                    Ok(EXIT_OK)
                }
                LpResult::Infeasible => {
                    writeln!(out, "status infeasible").unwrap();
                    Ok(EXIT_NEGATIVE)
                }
                LpResult::Unbounded => {
                    writeln!(out, "status unbounded").unwrap();
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Vertices { action, m, n, u, v } => {
            vertices(*action, *m, *n, u, v, code_budget, jobs, out)
        }
        Command::VerifyVertex { system, point } => {
            let sys = read_system(system)?;
            let x = read_vector(point)?;
            if verify_vertex_flat(&x, &sys)? {
                writeln!(out, "vertex").unwrap();
                Ok(EXIT_OK)
            } else {
                writeln!(out, "not a vertex").unwrap();
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::EnumLpVertices { system } => {
            let sys = read_system(system)?;
            let budget = cli.budget.map_or(DEFAULT_LP_VERTEX_BUDGET, |b| {
                b.min(usize::MAX as u128) as usize
            });
            let verts = enumerate_lp_vertices(&sys, budget)?;
            let integral = verts
                .iter()
                .filter(|p| p.iter().all(Rational::is_integer))
                .count();
            writeln!(out, "# {} vertices, {} integral", verts.len(), integral).unwrap();
            for p in &verts {
                writeln!(out, "{}", join(p)).unwrap();
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { variant, cnf } => {
            let f = parse_cnf3(&read_input(cnf)?)?;
            let obj = match variant {
                SatVariant::Max3sat => objective_max3sat(&f),
                SatVariant::X3sat => objective_x3sat(&f),
                SatVariant::Nae3sat => objective_nae3sat(&f),
            };
            out.push_str(&obj.to_text(true));
            Ok(EXIT_OK)
        }
        Command::Recognize {
            target,
            objective,
            m,
            n,
        } => match target {
            RecognizeTarget::Satp => {
                let c = read_block_objective(objective, *m, *n)?;
                let r = recognize_satp(&c)?;
                writeln!(out, "answer {}", r.answer).unwrap();
                writeln!(out, "lp_value {}", r.lp_value).unwrap();
                writeln!(out, "satp2_value {}", r.satp2_value).unwrap();
                if let (Some(w), Some(a)) = (&r.witness, &r.alpha) {
                    writeln!(out, "witness {w}").unwrap();
                    writeln!(out, "alpha {a}").unwrap();
                }
                Ok(if r.answer { EXIT_OK } else { EXIT_NEGATIVE })
            }
            RecognizeTarget::Bqp => {
                let n = need(*n, "n")?;
                let obj = parse_vector(&read_input(objective)?)?;
                let r = recognize_bqp(&obj, n)?;
                writeln!(out, "answer {}", r.answer).unwrap();
                writeln!(out, "bqp_value {}", r.bqp_value).unwrap();
                writeln!(out, "met_value {}", r.met_value).unwrap();
                Ok(if r.answer { EXIT_OK } else { EXIT_NEGATIVE })
            }
        },
        Command::Oracle {
            target,
            objective,
            instance,
        } => match target {
            OracleTarget::Satp => {
                let Some(path) = objective else {
                    return usage("missing --objective");
                };
                let c = read_block_objective(path, None, None)?;
                let (value, code) = parallel_integer_max(&c, code_budget, jobs)?;
                let lp =
                    lp_maximize(&build_satp_lp(c.m(), c.n())?, c.as_slice())?.into_optimum()?;
                let answer = lp.value == value;
                writeln!(out, "answer {answer}").unwrap();
                writeln!(out, "lp_value {}", lp.value).unwrap();
                writeln!(out, "integer_value {value}").unwrap();
                writeln!(out, "argmax {code}").unwrap();
                Ok(if answer { EXIT_OK } else { EXIT_NEGATIVE })
            }
            OracleTarget::Ecbgc => {
                let Some(path) = instance else {
                    return usage("missing --instance");
                };
                let inst = parse_ecbgc(&read_input(path)?)?;
                coloring_result(brute_force_coloring(&inst, code_budget)?, out)
            }
        },
        Command::Ecbgc {
            action,
            instance,
            cnf,
        } => match action {
            EcbgcAction::FromX3sat => {
                let Some(path) = cnf else {
                    return usage("missing --cnf");
                };
                let f = parse_cnf3(&read_input(path)?)?;
                out.push_str(&reduce_x3sat_to_ecbgc(&f)?.to_text());
                Ok(EXIT_OK)
            }
            EcbgcAction::Check | EcbgcAction::Solve => {
                let Some(path) = instance else {
                    return usage("missing --instance");
                };
                let inst = parse_ecbgc(&read_input(path)?)?;
                if matches!(action, EcbgcAction::Solve) {
                    return coloring_result(solve_ecbgc(&inst)?, out);
                }
                match check_condition(&inst) {
                    Ok(pairs) => {
                        for (j, (a, b)) in pairs.iter().enumerate() {
                            writeln!(out, "v {} {a} {b}", j + 1).unwrap();
                        }
                        Ok(EXIT_OK)
                    }
                    Err(j) => {
                        writeln!(out, "violated at v {j}").unwrap();
                        Ok(EXIT_NEGATIVE)
                    }
                }
            }
        },
    }
}

fn coloring_result(c: Option<crate::ecbgc::Coloring>, out: &mut String) -> Outcome {
    match c {
        Some(c) => {
            out.push_str(&c.to_text());
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "no coloring").unwrap();
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn read_block_objective(
    path: &Path,
    m: Option<usize>,
    n: Option<usize>,
) -> Result<BlockPoint, Failure> {
    let (c, _) = BlockPoint::from_text(&read_input(path)?)?;
    if m.is_some_and(|m| m != c.m()) || n.is_some_and(|n| n != c.n()) {
        return usage(format!("objective is {}x{}, flags disagree", c.m(), c.n()));
    }
    Ok(c)
}

#[allow(clippy::too_many_arguments)]
fn vertices(
    action: VerticesAction,
    m: Option<usize>,
    n: Option<usize>,
    u: &Option<String>,
    v: &Option<String>,
    budget: u128,
    jobs: usize,
    out: &mut String,
) -> Outcome {
    match action {
        VerticesAction::Enumerate => {
            let (m, n) = (need(m, "m")?, need(n, "n")?);
            for code in parallel_codes(m, n, budget, jobs)? {
                writeln!(out, "{code}").unwrap();
            }
            Ok(EXIT_OK)
        }
        VerticesAction::Adjacent => {
            let (Some(u), Some(v)) = (u, v) else {
                return usage("adjacent needs --u and --v");
            };
            let a: VertexCode = u.parse()?;
            let b: VertexCode = v.parse()?;
            if m.is_some_and(|m| m != a.m()) || n.is_some_and(|n| n != a.n()) {
                return usage("codes do not match --m/--n");
            }
            let adj = adjacent(&a, &b)?;
            writeln!(out, "{}", if adj { "adjacent" } else { "not adjacent" }).unwrap();
            Ok(if adj { EXIT_OK } else { EXIT_NEGATIVE })
        }
        VerticesAction::Diameter => {
            let g = skeleton(need(m, "m")?, need(n, "n")?, budget)?;
            writeln!(out, "vertices {}", g.codes.len()).unwrap();
            writeln!(out, "edges {}", g.edge_count()).unwrap();
            match g.diameter() {
                Some(d) => {
                    writeln!(out, "diameter {d}").unwrap();
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "diameter none").unwrap();
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        VerticesAction::Clique => {
            let (m, n) = (need(m, "m")?, need(n, "n")?);
            if m == 0 || n == 0 {
                return usage("block dimensions must be positive");
            }
            for code in construct_clique(m, n) {
                writeln!(out, "{code}").unwrap();
            }
            Ok(EXIT_OK)
        }
        VerticesAction::Fractional => {
            let n = need(n, "n")?;
            if m.is_some_and(|m| m != n) {
                return usage("fractional vertices are square, --m must equal --n");
            }
            out.push_str(&fractional_vertex(n)?.to_text(false));
            Ok(EXIT_OK)
        }
    }
}

/// Splits the code range into `jobs` contiguous chunks.
fn chunks(count: u128, jobs: usize) -> Vec<(u128, u128)> {
    let jobs = (jobs as u128).clamp(1, count.max(1));
    let step = count.div_ceil(jobs);
    (0..jobs)
        .map(|t| (t * step, ((t + 1) * step).min(count)))
        .filter(|(a, b)| a < b)
        .collect()
}

fn parallel_codes(
    m: usize,
    n: usize,
    budget: u128,
    jobs: usize,
) -> Result<Vec<VertexCode>, Failure> {
    let count = check_budget(m, n, budget)?;
    let parts: Vec<Vec<VertexCode>> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks(count, jobs)
            .into_iter()
            .map(|(a, b)| s.spawn(move || (a..b).map(|i| code_at(m, n, i)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    Ok(parts.concat())
}

/// Same result as the sequential oracle: ties go to the lowest index.
fn parallel_integer_max(
    c: &BlockPoint,
    budget: u128,
    jobs: usize,
) -> Result<(Rational, VertexCode), Failure> {
    let (m, n) = (c.m(), c.n());
    let count = check_budget(m, n, budget)?;
    let parts: Vec<(Rational, u128)> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks(count, jobs)
            .into_iter()
            .map(|(a, b)| {
                s.spawn(move || {
                    let mut best = (code_at(m, n, a).value(c), a);
                    for i in a + 1..b {
                        let v = code_at(m, n, i).value(c);
                        if v > best.0 {
                            best = (v, i);
                        }
                    }
                    best
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut best = parts[0].clone();
    for p in parts.into_iter().skip(1) {
        if p.0 > best.0 {
            best = p;
        }
    }
    Ok((best.0, code_at(m, n, best.1)))
}

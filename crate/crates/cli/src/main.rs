use std::io::{self, Read, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverperiod::families::{FamilyDef, Theorem};
use quiverperiod::io::{
    parse_quiver, parse_quiver_or_seed, parse_sequences, parse_trace, quiver_to_json, seed_to_json, sequences_to_json,
    to_dot, trace_to_csv, trace_to_json,
};
use quiverperiod::rational::{format_rational, random_positive};
use quiverperiod::solver::{default_workers, residual, search_streaming, SearchJob};
use quiverperiod::suites::{reproduce, Section, SuiteOptions};
use quiverperiod::systems::{
    builtin, extract_system, iterate_system, parse_expr, somos_reduce, verify_periodic, Kind, Period,
    PeriodicQuantityTemplate, SeqTrace, SomosFamily, SystemSpec,
};
use quiverperiod::verify::verify_theorem;
use quiverperiod::{is_period1, is_period2, laurent_check, run_orbit, ExchangeMatrix, Period2Spec, Seed, Shape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "quiverperiod", version, about = "Period-2 quivers, their cluster dynamics and T/Y-systems")]
struct Cli {
    /// text, or one JSON document per report
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// worker threads (default: QUIVERPERIOD_JOBS or the number of CPUs)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// seed for every randomized step; echoed in the report
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// one or two
    #[arg(long, value_parser = parse_shape)]
    shape: Shape,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mutate a quiver at the listed vertices, left to right
    Mutate {
        file: PathBuf,
        /// 1-based vertices, space or comma separated
        #[arg(required = true, num_args = 1..)]
        vertices: Vec<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Check a quiver for period 1 or period 2
    Check {
        file: PathBuf,
        #[arg(long, value_parser = parse_shape, required_unless_present = "period1")]
        shape: Option<Shape>,
        #[arg(long, required_unless_present = "period1")]
        k: Option<usize>,
        #[arg(long, conflicts_with_all = ["shape", "k"])]
        period1: bool,
    },
    /// Enumerate every period-2 matrix with entries in [-bound, bound]
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        canonical: bool,
    },
    /// Print the quiver of a displayed family
    Family {
        /// family key, e.g. n4-k2
        key: String,
        /// parameter values in the order of the family
        #[arg(num_args = 0..)]
        params: Vec<i64>,
        #[arg(long)]
        dot: bool,
    },
    /// Check a classification against its families and an exhaustive search
    VerifyTheorem {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 3)]
        max_param: i64,
        /// also search all matrices with entries up to this bound
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Run one of the bundled regression suites
    Reproduce {
        /// thm3 .. thm7 or sec8
        section: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Follow the period-2 mutation orbit of a seed
    Orbit {
        /// quiver-v1 or seed-v1; a bare quiver starts from random positive x and y
        file: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Laurent check of the symbolic orbit
    Laurent {
        file: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// T-, Y- and T_Z-systems
    Tsys {
        #[command(subcommand)]
        cmd: TsysCmd,
    },
}

#[derive(Subcommand)]
enum TsysCmd {
    /// Extract the two-equation system of a period-2 quiver
    Extract {
        #[arg(long)]
        quiver: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
    },
    /// Iterate a system from an initial window
    Iterate {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        init: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Z sequences (sequences-v1, kind tz) for a T_Z-system
        #[arg(long)]
        z: Option<PathBuf>,
    },
    /// Check a quantity for constancy or periodicity along a trace
    VerifyPeriodic {
        /// sequences-v1 or trace-v1
        #[arg(long)]
        trace: PathBuf,
        /// builtin:NAME or an expression in z/y or A/B
        #[arg(long)]
        template: String,
        /// for expressions: constant or a period
        #[arg(long, default_value = "constant")]
        period: String,
        /// which sequences of a trace-v1 file to use
        #[arg(long, value_parser = parse_kind, default_value = "t")]
        kind: Kind,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Compare a full system with its Somos reduction
    Somos {
        #[arg(long)]
        family: String,
        #[arg(long)]
        param: i64,
        #[arg(long, default_value_t = 30)]
        steps: usize,
        /// start from random positive data instead of all ones
        #[arg(long)]
        random: bool,
    },
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse().map_err(|e: quiverperiod::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: quiverperiod::Error| e.to_string())
}

/// Everything that is not a verification verdict: bad input, unreadable
/// files, arithmetic errors. Exits with 2.
struct Failure(String);

impl From<quiverperiod::Error> for Failure {
    fn from(e: quiverperiod::Error) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: quiverperiod::Result<T>) -> Res<T> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn spec_for(b: &ExchangeMatrix, shape: Shape, k: usize) -> Res<Period2Spec> {
    Ok(Period2Spec::general(b.n(), shape, k)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Failure(format!("stdout: {e}")))?
    };
}

fn run(cli: &Cli, out: &mut impl Write) -> Res<bool> {
    let structured = cli.format == Format::Structured;
    let workers = cli.jobs.filter(|&j| j > 0).unwrap_or_else(default_workers);
    match &cli.cmd {
        Cmd::Mutate { file, vertices, dot } => {
            let mut b = with_path(file, parse_quiver(&read(file)?))?;
            for v in vertices.iter().flat_map(|s| s.split([',', ' ']).filter(|t| !t.is_empty())) {
                let k: usize = v.parse().map_err(|_| Failure(format!("bad vertex {v:?}")))?;
                b = b.mutate(k)?;
            }
            emit!(out, "{}", quiver_to_json(&b));
            if *dot {
                emit!(out, "{}", to_dot(&b));
            }
            Ok(true)
        }
        Cmd::Check { file, shape, k, period1 } => {
            let b = with_path(file, parse_quiver(&read(file)?))?;
            let connected = b.is_connected();
            if *period1 {
                let ok = is_period1(&b);
                if structured {
                    emit!(out, "{}", json!({"period": 1, "periodic": ok, "connected": connected}));
                } else {
                    emit!(out, "{} period 1{}", verdict(ok), if connected { "" } else { " (disconnected)" });
                }
                return Ok(ok);
            }
            let spec = spec_for(&b, shape.expect("required by clap"), k.expect("required by clap"))?;
            let ok = is_period2(&b, &spec)?;
            let entries: Vec<_> = residual(&b, &spec)?.into_iter().filter(|e| e.value != 0.into()).collect();
            if structured {
                let res: Vec<_> = entries
                    .iter()
                    .map(|e| json!({"i": e.i, "j": e.j, "case": e.case.number(), "value": e.value.to_string()}))
                    .collect();
                emit!(out, "{}", json!({"spec": spec.to_string(), "periodic": ok, "connected": connected, "residual": res}));
            } else {
                emit!(out, "{} period 2 {spec}{}", verdict(ok), if connected { "" } else { " (disconnected)" });
                for e in &entries {
                    emit!(out, "  r[{},{}] = {}  (case {})", e.i, e.j, e.value, e.case.number());
                }
            }
            Ok(ok)
        }
        Cmd::Search { n, shape, k, bound, connected, canonical } => {
            let mut job = SearchJob::new(Period2Spec::general(*n, *shape, *k)?, *bound);
            if *connected {
                job = job.connected();
            }
            if *canonical {
                job = job.canonical();
            }
            let mut write_err = None;
            let stats = search_streaming(&job, workers, None, |b| match writeln!(out, "{}", quiver_to_json(&b)) {
                Ok(()) => ControlFlow::Continue(()),
                Err(e) => {
                    write_err = Some(e);
                    ControlFlow::Break(())
                }
            })?;
            if let Some(e) = write_err {
                // a closed pipe just ends the stream
                if e.kind() != io::ErrorKind::BrokenPipe {
                    return Err(Failure(format!("stdout: {e}")));
                }
            }
            eprintln!("{} solutions{}", stats.solutions, if stats.interrupted { " (output closed early)" } else { "" });
            Ok(true)
        }
        Cmd::Family { key, params, dot } => {
            let def = FamilyDef::by_key(key).ok_or_else(|| Failure(format!("unknown family {key:?}")))?;
            let b = def.generate(params)?;
            emit!(out, "{}", quiver_to_json(&b));
            if *dot {
                emit!(out, "{}", to_dot(&b));
            }
            Ok(true)
        }
        Cmd::VerifyTheorem { name, max_param, bound } => {
            let theorem: Theorem = name.parse()?;
            let rep = verify_theorem(theorem, *max_param, *bound, workers)?;
            if structured {
                emit!(out, "{}", serde_json::to_string(&rep).expect("report serializes"));
            } else {
                emit!(out, "{rep}");
            }
            Ok(rep.passed())
        }
        Cmd::Reproduce { section, samples, steps } => {
            let section: Section = section.parse()?;
            let opts = SuiteOptions { seed: cli.seed, workers, samples: *samples, steps: *steps, ..Default::default() };
            let rep = reproduce(section, &opts)?;
            if structured {
                emit!(out, "{}", json!({"report": rep, "options": opts}));
            } else {
                emit!(out, "{rep}");
            }
            Ok(rep.passed())
        }
        Cmd::Orbit { file, spec, steps, csv } => {
            let text = read(file)?;
            let mut seed = with_path(file, parse_quiver_or_seed(&text))?;
            if seed.y.is_none() {
                // bare quiver: random positive start, reproducible from --seed
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let n = seed.n();
                let x = (0..n).map(|_| random_positive(&mut rng, 9)).collect();
                let y = (0..n).map(|_| random_positive(&mut rng, 9)).collect();
                seed = Seed::new(seed.b, x, Some(y))?;
                eprintln!("random start from seed {}: {}", cli.seed, seed_to_json(&seed));
            }
            let p2 = spec_for(&seed.b, spec.shape, spec.k)?;
            let trace = run_orbit(&seed, &p2, *steps)?;
            if *csv {
                write!(out, "{}", trace_to_csv(&trace)).map_err(|e| Failure(format!("stdout: {e}")))?;
            } else {
                emit!(out, "{}", trace_to_json(&trace));
            }
            Ok(true)
        }
        Cmd::Laurent { file, spec, depth } => {
            let b = with_path(file, parse_quiver(&read(file)?))?;
            let p2 = spec_for(&b, spec.shape, spec.k)?;
            let rep = laurent_check(&b, &p2, *depth)?;
            let ok = rep.entries.iter().all(|e| e.laurent);
            if structured {
                let rows: Vec<_> = rep
                    .entries
                    .iter()
                    .map(|e| json!({"u": e.u, "vertex": e.vertex, "laurent": e.laurent, "terms": e.terms}))
                    .collect();
                emit!(out, "{}", json!({"spec": p2.to_string(), "depth": depth, "laurent": ok, "entries": rows}));
            } else {
                for e in &rep.entries {
                    emit!(out, "{}  u={} x{}  {} terms", verdict(e.laurent), e.u, e.vertex, e.terms);
                }
            }
            Ok(ok)
        }
        Cmd::Tsys { cmd } => tsys(cmd, cli, structured, out),
    }
}

fn tsys(cmd: &TsysCmd, cli: &Cli, structured: bool, out: &mut impl Write) -> Res<bool> {
    match cmd {
        TsysCmd::Extract { quiver, spec, kind } => {
            let b = with_path(quiver, parse_quiver(&read(quiver)?))?;
            let p2 = spec_for(&b, spec.shape, spec.k)?;
            let sys = extract_system(&b, &p2, *kind)?;
            if structured {
                emit!(out, "{}", sys.to_json());
            } else {
                emit!(out, "{}", sys.text());
                emit!(out, "{}", sys.to_json());
            }
            Ok(true)
        }
        TsysCmd::Iterate { system, init, steps, z } => {
            let sys = with_path(system, SystemSpec::from_json(&read(system)?))?;
            let start = with_path(init, parse_sequences(&read(init)?))?;
            let zs = match z {
                Some(p) => {
                    let t = with_path(p, parse_sequences(&read(p)?))?;
                    Some(t.seqs)
                }
                None => None,
            };
            let sys = if zs.is_some() { sys.with_kind(Kind::Tz) } else { sys };
            let start = SeqTrace { kind: sys.kind, ..start };
            let full = iterate_system(&sys, &start, *steps, zs.as_ref())?;
            emit!(out, "{}", sequences_to_json(&full));
            Ok(true)
        }
        TsysCmd::VerifyPeriodic { trace, template, period, kind, horizon } => {
            let text = read(trace)?;
            let seqs = match parse_sequences(&text) {
                Ok(s) => s,
                Err(_) => {
                    let tr = with_path(trace, parse_trace(&text))?;
                    match kind {
                        Kind::Y => tr.y_sequences(),
                        _ => tr.t_sequences(),
                    }
                }
            };
            let tmpl = match template.strip_prefix("builtin:") {
                Some(name) => builtin(name).ok_or_else(|| Failure(format!("unknown built-in template {name:?}")))?,
                None => PeriodicQuantityTemplate {
                    name: template.clone(),
                    expr: parse_expr(template)?,
                    period: parse_period(period)?,
                },
            };
            let h = horizon.unwrap_or_else(|| tmpl.max_horizon(&seqs));
            let rep = verify_periodic(&seqs, &tmpl, h)?;
            if structured {
                let vals: Vec<_> = rep.values.iter().map(format_rational).collect();
                emit!(
                    out,
                    "{}",
                    json!({"template": rep.name, "period": rep.period.to_string(), "horizon": rep.horizon,
                           "passed": rep.passed, "first_failure": rep.first_failure, "values": vals})
                );
            } else {
                emit!(out, "{rep}");
                if rep.passed {
                    let vals: Vec<_> = rep.values.iter().map(format_rational).collect();
                    emit!(out, "values: {}", vals.join(", "));
                }
            }
            Ok(rep.passed)
        }
        TsysCmd::Somos { family, param, steps, random } => {
            let fam: SomosFamily = family.parse()?;
            let window = if *random {
                let sys = quiverperiod::systems::reduce::family_system(fam.family(), &[*param], Kind::T)?;
                let need = sys.required_window();
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                Some(SeqTrace::new(
                    Kind::T,
                    (0..need[0]).map(|_| random_positive(&mut rng, 5)).collect(),
                    (0..need[1]).map(|_| random_positive(&mut rng, 5)).collect(),
                ))
            } else {
                None
            };
            let rep = somos_reduce(fam, *param, window.as_ref(), *steps)?;
            if structured {
                let f = |v: &[quiverperiod::Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
                emit!(
                    out,
                    "{}",
                    json!({"family": fam.to_string(), "param": param, "seed": cli.seed, "random": random,
                           "constant": f(&rep.constants), "passed": rep.passed(),
                           "first_mismatch": rep.first_mismatch, "full": f(&rep.full), "reduced": f(&rep.reduced)})
                );
            } else {
                emit!(out, "{rep}");
                if *random {
                    emit!(out, "random start from seed {}", cli.seed);
                }
            }
            Ok(rep.passed())
        }
    }
}

fn parse_period(s: &str) -> Res<Period> {
    if s == "constant" {
        return Ok(Period::Constant);
    }
    match s.parse::<usize>() {
        Ok(p) if p >= 1 => Ok(Period::Every(p)),
        _ => Err(Failure(format!("bad period {s:?}: expected constant or a positive integer"))),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

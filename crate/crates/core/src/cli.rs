//! Command-line front end. [`run`] takes the argument vector and two
//! writers so tests can drive it without spawning a process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::conditions::{check_condition1, check_condition2, legal_set, Condition1, PointSetPair};
use crate::empty::paired_empty;
use crate::error::Error;
use crate::greedy::{greedy_construct, verify_joint_list, JointTriangulation, Policy};
use crate::io::{
    parse_instance, parse_triangles, triangle_set, write_instance, write_points, write_polygon, write_triangles,
    Instance,
};
use crate::oracle::{
    gen_point_pair, gen_point_pair_perturbed, gen_polygon_pair, gen_polygon_pair_perturbed, hunt,
    oracle_joint_exists, polygon_oracle_exists, HuntConfig, HuntMode,
};
use crate::polygon::{dp_joint_polygon, verify_polygon_joint, PolygonPair};
use crate::svg::render_pair;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "jointri", version, about = "Joint triangulations of labeled point sets and simple polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    Lex,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Points,
    Polygons,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test both necessary conditions on a POINTS instance.
    Check {
        file: PathBuf,
        /// Print every legal-set deletion with its witness edge.
        #[arg(long)]
        explain: bool,
    },
    /// Build a joint triangulation of a POINTS instance greedily.
    Triangulate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "lex")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Where to write the counterexample bundle [default: <file>.bundle].
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Solve a POLYGON instance with the interval dynamic program.
    Polygon {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Exhaustive search for a joint triangulation (small instances only).
    Oracle { file: PathBuf },
    /// Print a random POINTS instance.
    Gen {
        n: usize,
        range: i64,
        seed: u64,
        /// Derive B from A by moving each point at most this far.
        #[arg(long)]
        jitter: Option<i64>,
    },
    /// Print a random POLYGON instance.
    Genpoly {
        n: usize,
        range: i64,
        seed: u64,
        #[arg(long)]
        jitter: Option<i64>,
    },
    /// Run a seeded campaign and print its summary.
    Hunt {
        #[arg(value_enum)]
        mode: ModeArg,
        nmin: usize,
        nmax: usize,
        trials: usize,
        seed: u64,
        #[arg(long, default_value_t = 100)]
        range: i64,
        /// Directory for one bundle file per counterexample.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the oracle cross-check.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Draw an instance with a triangle list, A left and B right.
    Render { file: PathBuf, triangles: PathBuf, out: PathBuf },
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::SizeGuard { .. }) { EXIT_GUARD } else { EXIT_INPUT };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_INPUT, msg: e.to_string() }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, msg: msg.into() }
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Instance, Failure> {
    let text = read_file(path)?;
    parse_instance(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

fn load_points(path: &Path) -> std::result::Result<PointSetPair, Failure> {
    match load(path)? {
        Instance::Points(p) => Ok(p),
        Instance::Polygon(_) => Err(input_error(format!("{}: expected a POINTS instance", path.display()))),
    }
}

fn load_polygon(path: &Path) -> std::result::Result<PolygonPair, Failure> {
    match load(path)? {
        Instance::Polygon(p) => Ok(p),
        Instance::Points(_) => Err(input_error(format!("{}: expected a POLYGON instance", path.display()))),
    }
}

fn bundle_path(file: &Path, bundle: Option<PathBuf>) -> PathBuf {
    bundle.unwrap_or_else(|| {
        let mut s = file.as_os_str().to_owned();
        s.push(".bundle");
        PathBuf::from(s)
    })
}

fn bundle_text(instance: &str, jt: &JointTriangulation) -> String {
    let mut s = String::from("# counterexample\n");
    if let Some(v) = &jt.violation {
        s.push_str(&format!("# violation {v}\n"));
    }
    s.push_str(instance);
    s.push_str("# trace\n");
    for t in &jt.trace {
        s.push_str(&format!("# pick {t}\n"));
    }
    s
}

fn report(out: &mut dyn Write, jt: &JointTriangulation, instance: &str, bundle: PathBuf) -> Outcome {
    if jt.verified {
        let list: Vec<_> = jt.triangles.iter().collect();
        out.write_all(write_triangles(&list).as_bytes())?;
        return Ok(EXIT_OK);
    }
    fs::write(&bundle, bundle_text(instance, jt))?;
    writeln!(out, "FAIL")?;
    if let Some(v) = &jt.violation {
        writeln!(out, "violation {v}")?;
    }
    writeln!(out, "bundle {}", bundle.display())?;
    Ok(EXIT_FAIL)
}

fn cmd_check(out: &mut dyn Write, file: &Path, explain: bool) -> Outcome {
    let pair = load_points(file)?;
    let nc1 = check_condition1(&pair)?;
    // The legal set runs even when NC1 fails, with A's hull, so the counts
    // are always reported.
    let hull = match &nc1 {
        Condition1::Pass { hull_edges } => hull_edges.clone(),
        Condition1::Fail { witness } => {
            writeln!(out, "NC1 FAIL witness {witness}")?;
            crate::conditions::hull_edges(pair.a())?
        }
    };
    if nc1.passed() {
        writeln!(out, "NC1 PASS")?;
    }
    let paired = paired_empty(&pair);
    let res = legal_set(&pair, &paired, &hull);
    writeln!(out, "|S_A∩|={}", paired.len())?;
    writeln!(out, "|S|={}", res.legal.len())?;
    let nc2 = check_condition2(&res);
    writeln!(out, "NC2 {}", if nc2 { "PASS" } else { "FAIL" })?;
    if explain {
        out.write_all(res.explain().as_bytes())?;
    }
    Ok(if nc1.passed() && nc2 { EXIT_OK } else { EXIT_FAIL })
}

fn write_svg(path: &Path, inst_a: &[crate::geom::Point], inst_b: &[crate::geom::Point], jt: &JointTriangulation, boundary: bool) -> std::io::Result<()> {
    let list: Vec<_> = jt.triangles.iter().collect();
    fs::write(path, render_pair(inst_a, inst_b, &list, boundary))
}

fn cmd_triangulate(
    out: &mut dyn Write,
    file: &Path,
    policy: Policy,
    svg: Option<PathBuf>,
    bundle: Option<PathBuf>,
) -> Outcome {
    let pair = load_points(file)?;
    let hull = match check_condition1(&pair)? {
        Condition1::Pass { hull_edges } => hull_edges,
        Condition1::Fail { witness } => {
            writeln!(out, "FAIL")?;
            writeln!(out, "NC1 FAIL witness {witness}")?;
            return Ok(EXIT_FAIL);
        }
    };
    let res = legal_set(&pair, &paired_empty(&pair), &hull);
    if !check_condition2(&res) {
        writeln!(out, "FAIL")?;
        writeln!(out, "NC2 FAIL")?;
        return Ok(EXIT_FAIL);
    }
    let jt = greedy_construct(&pair, &res.legal, policy);
    if let Some(path) = svg {
        write_svg(&path, pair.a().points(), pair.b().points(), &jt, false)?;
    }
    report(out, &jt, &write_points(&pair), bundle_path(file, bundle))
}

fn cmd_polygon(out: &mut dyn Write, file: &Path, svg: Option<PathBuf>, bundle: Option<PathBuf>) -> Outcome {
    let pair = load_polygon(file)?;
    let Some(jt) = dp_joint_polygon(&pair) else {
        writeln!(out, "FAIL")?;
        writeln!(out, "no joint triangulation")?;
        return Ok(EXIT_FAIL);
    };
    if let Some(path) = svg {
        write_svg(&path, pair.a().vertices(), pair.b().vertices(), &jt, true)?;
    }
    report(out, &jt, &write_polygon(&pair), bundle_path(file, bundle))
}

fn cmd_oracle(out: &mut dyn Write, file: &Path) -> Outcome {
    let witness = match load(file)? {
        Instance::Points(p) => oracle_joint_exists(&p)?,
        Instance::Polygon(p) => polygon_oracle_exists(&p)?,
    };
    match witness {
        Some(t) => {
            writeln!(out, "YES")?;
            let list: Vec<_> = t.iter().collect();
            out.write_all(write_triangles(&list).as_bytes())?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "NO")?;
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_render(file: &Path, triangles: &Path, svg: &Path) -> Outcome {
    let inst = load(file)?;
    let list = parse_triangles(&read_file(triangles)?, inst.len())
        .map_err(|e| input_error(format!("{}: {e}", triangles.display())))?;
    let [a, b] = inst.sides();
    fs::write(svg, render_pair(a, b, &list, matches!(inst, Instance::Polygon(_))))?;
    Ok(EXIT_OK)
}

fn cmd_hunt(out: &mut dyn Write, config: HuntConfig, dir: Option<PathBuf>) -> Outcome {
    if config.n_min > config.n_max {
        return Err(input_error("nmin exceeds nmax"));
    }
    let rep = hunt(&config);
    out.write_all(rep.summary(&config).as_bytes())?;
    if let Some(dir) = dir {
        fs::create_dir_all(&dir)?;
        for c in &rep.counterexamples {
            let path = dir.join(format!("trial-{:06}-{}.txt", c.trial, c.kind.name()));
            fs::write(&path, c.bundle())?;
            writeln!(out, "bundle {}", path.display())?;
        }
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Check { file, explain } => cmd_check(out, &file, explain),
        Command::Triangulate { file, policy, seed, svg, bundle } => {
            let policy = match policy {
                PolicyArg::Lex => Policy::Lex,
                PolicyArg::Random => Policy::SeededRandom(seed),
            };
            cmd_triangulate(out, &file, policy, svg, bundle)
        }
        Command::Polygon { file, svg, bundle } => cmd_polygon(out, &file, svg, bundle),
        Command::Oracle { file } => cmd_oracle(out, &file),
        Command::Gen { n, range, seed, jitter } => {
            let pair = match jitter {
                Some(j) => gen_point_pair_perturbed(n, range, j, seed)?,
                None => gen_point_pair(n, range, seed)?,
            };
            out.write_all(write_instance(&Instance::Points(pair)).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Genpoly { n, range, seed, jitter } => {
            let pair = match jitter {
                Some(j) => gen_polygon_pair_perturbed(n, range, j, seed)?,
                None => gen_polygon_pair(n, range, seed)?,
            };
            out.write_all(write_instance(&Instance::Polygon(pair)).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Hunt { mode, nmin, nmax, trials, seed, range, out: dir, no_oracle } => {
            let mode = match mode {
                ModeArg::Points => HuntMode::Points,
                ModeArg::Polygons => HuntMode::Polygons,
            };
            let mut config = HuntConfig::new(mode, nmin, nmax, trials, seed);
            config.coord_range = range;
            config.cross_check = !no_oracle;
            cmd_hunt(out, config, dir)
        }
        Command::Render { file, triangles, out: svg } => cmd_render(&file, &triangles, &svg),
    }
}

/// Runs one invocation; `args[0]` is the program name. Returns the exit
/// status: 0 success, 1 bad input, 2 a failed test or construction, 3 an
/// instance over the exhaustive-search size limit.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

/// Checks a triangle file against a POINTS or POLYGON instance; used by
/// tests and handy from a debugger.
pub fn verify_file(instance: &str, triangles: &str) -> Result<(), String> {
    let inst = parse_instance(instance).map_err(|e| e.to_string())?;
    let list = parse_triangles(triangles, inst.len()).map_err(|e| e.to_string())?;
    let res = match &inst {
        Instance::Points(p) => verify_joint_list(p, &list),
        Instance::Polygon(p) => {
            crate::greedy::check_no_duplicates(&list).and_then(|_| verify_polygon_joint(p, &triangle_set(&list)))
        }
    };
    res.map_err(|v| v.to_string())
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use arrowform_core::engine::{self, check_formula, gv_formula, solve_formula_space, verify_invariance, SolverOptions, WalkConfig};
use arrowform_core::enumerate::enumerate_diagrams;
use arrowform_core::format::{self, write_basis_text, write_degenerate_lincomb, write_diagram};
use arrowform_core::{Decoration, Formula, GaussDiagram, MarkingWindow, Sign};

#[derive(Parser, Debug)]
#[command(name = "arrowform", version, about = "Arrow diagram formulas for virtual knots in the annulus")]
struct Cli {
    /// Homology class of the knot.
    #[arg(long = "K", global = true, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Marking window: `lo..hi` or a comma separated list.
    #[arg(long, global = true, allow_hyphen_values = true)]
    markings: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, env = engine::solver::CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Species {
    Gauss,
    Arrow,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the canonical diagrams of a degree over the window, with automorphism orders.
    Enumerate {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "arrow")]
        species: Species,
    },
    /// Compute a basis of the formula space of a degree and write it to a file.
    Solve {
        #[arg(long)]
        degree: usize,
        #[arg(long, short, default_value = "basis.txt")]
        out: PathBuf,
        /// Refuse systems with more candidate columns than this.
        #[arg(long, default_value_t = 400_000)]
        max_columns: u128,
    },
    /// Check a formula file against the move relations and the boundary map.
    Check { formula: PathBuf },
    /// Print the boundary of a formula in the monotonic basis.
    Boundary { formula: PathBuf },
    /// Evaluate a formula on a Gauss diagram.
    Eval { formula: PathBuf, knot: PathBuf },
    /// Random Reidemeister walks from a Gauss diagram; the value must stay constant.
    Verify {
        formula: PathBuf,
        knot: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        length: usize,
        /// Largest degree reached by the walks (default: start degree + 4).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Build a planar chain formula from `γ_1,...,γ_{n+1}`; `K` is their sum.
    Gv {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run a small end-to-end consistency check.
    Selftest,
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| anyhow!("invalid integer `{x}` in `{s}`")))
        .collect()
}

fn parse_markings(s: &str) -> Result<Vec<i64>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| anyhow!("invalid window bound `{lo}`"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| anyhow!("invalid window bound `{hi}`"))?;
        if lo > hi {
            bail!("empty window `{s}`");
        }
        return Ok((lo..=hi).collect());
    }
    let v = parse_list(s)?;
    if v.is_empty() {
        bail!("empty window");
    }
    Ok(v)
}

impl Cli {
    fn k(&self) -> Result<i64> {
        self.k.ok_or_else(|| anyhow!("--K is required"))
    }

    fn window(&self) -> Result<Option<MarkingWindow>> {
        match &self.markings {
            None => Ok(None),
            Some(s) => Ok(Some(MarkingWindow::new(parse_markings(s)?, self.k()?))),
        }
    }

    fn required_window(&self) -> Result<MarkingWindow> {
        self.window()?.ok_or_else(|| anyhow!("--markings is required"))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_formula(path: &Path, k: Option<i64>) -> Result<Formula> {
    let f = Formula::from_text(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if let Some(k) = k {
        if k != f.k {
            bail!("--K {k} does not match the formula (K={})", f.k);
        }
    }
    Ok(f)
}

fn load_knot(path: &Path) -> Result<GaussDiagram> {
    format::parse_diagram::<Sign>(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn list<D: Decoration>(n: usize, w: &MarkingWindow) -> String {
    let ds = enumerate_diagrams::<D>(n, &w.values(), w.k());
    let mut s = String::new();
    for d in &ds {
        s.push_str(&format!("# aut={}\n", d.aut_order()));
        s.push_str(&write_diagram(d));
    }
    s.push_str(&format!("count={}\n", ds.len()));
    s
}

fn print_check(f: &Formula, window: Option<&MarkingWindow>) -> Result<bool> {
    let r = check_formula(f, window)?;
    for c in &r.families {
        println!("{} instances={} max_abs={} {}", c.family, c.instances, c.max_abs, if c.passed() { "ok" } else { "FAIL" });
    }
    println!("boundary zero={} terms={}", r.boundary_zero(), r.boundary.len());
    println!("based6t checked={} violations={}", r.based_checked, r.based_violations);
    if !r.consistent() {
        println!("inconsistent: the six-term, boundary and based verdicts disagree");
    }
    if let Some(c) = r.families.iter().find(|c| !c.passed()) {
        println!("first failing {} instance:", c.family);
        if let Some(inst) = &c.first_failure {
            print!("{}", format::write_lincomb(inst));
        }
    } else if !r.boundary_zero() {
        println!("first failing: nonzero boundary");
    }
    Ok(r.passed() && r.consistent())
}

fn selftest(seed: u64) -> Result<bool> {
    let mut ok = true;
    let mut report = |name: &str, pass: bool| {
        println!("{name}: {}", if pass { "ok" } else { "FAIL" });
        ok &= pass;
    };
    let w = MarkingWindow::new([1, 2, 3, 4], 5);
    let opts = SolverOptions::uncached();
    let basis = solve_formula_space(2, &w, &opts)?;
    let vectors: Vec<_> = basis.iter().map(|f| f.vector.clone()).collect();
    let dk = engine::d_kernel(2, &w, &opts)?;
    report(
        &format!("kernel equality degree 2 (dim {})", basis.len()),
        basis.len() == dk.len() && arrowform_core::linalg::same_span(&vectors, &dk),
    );
    report("basis passes check", basis.iter().all(|f| check_formula(f, None).map(|r| r.passed()).unwrap_or(false)));
    let gv = gv_formula(2, &[1, 1, -2])?;
    report("planar chain formula (1,1,-2)", check_formula(&gv, None)?.passed());
    let g0 = arrowform_core::moves::random_start(&mut engine::walk::trial_rng(seed, usize::MAX), 5, &[1, 2, 3, 4], 1, 1);
    let cfg = WalkConfig { marks: vec![1, 2, 3, 4], max_degree: 8 };
    let walks = verify_invariance(&basis[0], &g0, 50, 20, seed, &cfg)?;
    report("random walks", walks.passed());
    Ok(ok)
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("thread pool")?;
    }
    match &cli.command {
        Command::Enumerate { degree, species } => {
            let w = cli.required_window()?;
            print!(
                "{}",
                match species {
                    Species::Gauss => list::<Sign>(*degree, &w),
                    Species::Arrow => list::<()>(*degree, &w),
                }
            );
            Ok(true)
        }
        Command::Solve { degree, out, max_columns } => {
            let w = cli.required_window()?;
            let opts = SolverOptions { cache_dir: cli.cache_dir.clone(), max_columns: *max_columns };
            let basis = solve_formula_space(*degree, &w, &opts)?;
            let vectors: Vec<_> = basis.into_iter().map(|f| f.vector).collect();
            fs::write(out, write_basis_text(w.k(), &vectors)).with_context(|| format!("cannot write {}", out.display()))?;
            println!("{w} degree={degree}");
            println!("dimension={}", vectors.len());
            println!("basis written to {}", out.display());
            Ok(true)
        }
        Command::Check { formula } => {
            let f = load_formula(formula, cli.k)?;
            print_check(&f, cli.window()?.as_ref())
        }
        Command::Boundary { formula } => {
            let f = load_formula(formula, cli.k)?;
            let d = arrowform_core::boundary::boundary_d(&f.vector);
            print!("{}", write_degenerate_lincomb(&d));
            println!("zero={}", d.is_zero());
            Ok(true)
        }
        Command::Eval { formula, knot } => {
            let f = load_formula(formula, cli.k)?;
            let g = load_knot(knot)?;
            println!("{}", engine::evaluate(&f, &g)?);
            Ok(true)
        }
        Command::Verify { formula, knot, trials, length, max_degree } => {
            let f = load_formula(formula, cli.k)?;
            let g = load_knot(knot)?;
            if g.k() != f.k {
                return Err(arrowform_core::EngineError::KMismatch { formula: f.k, diagram: g.k() }.into());
            }
            let marks = match cli.window()? {
                Some(w) => w.values(),
                None => {
                    let mut m: Vec<i64> = f.vector.keys().flat_map(|d| d.marks().collect::<Vec<_>>()).collect();
                    m.sort_unstable();
                    m.dedup();
                    if m.is_empty() {
                        vec![1]
                    } else {
                        m
                    }
                }
            };
            let cfg = WalkConfig { marks, max_degree: max_degree.unwrap_or(g.degree() + 4) };
            let r = verify_invariance(&f, &g, *trials, *length, cli.seed, &cfg)?;
            println!("trials={} moves={} value={}", r.trials, r.moves, engine::evaluate(&f, &g)?);
            println!("kinds R1+={} R1-={} R2+={} R2-={} R3={}", r.kinds[0], r.kinds[1], r.kinds[2], r.kinds[3], r.kinds[4]);
            if let Some(v) = &r.violation {
                println!("violation trial={} step={} move={:?} expected={} found={}", v.trial, v.step, v.mv, v.expected, v.found);
                print!("before:\n{}after:\n{}", write_diagram(&v.before), write_diagram(&v.after));
            } else {
                println!("constant");
            }
            Ok(r.passed())
        }
        Command::Gv { gamma, out } => {
            let gamma = parse_list(gamma)?;
            if gamma.is_empty() {
                bail!("--gamma needs at least one entry");
            }
            let f = gv_formula(gamma.len() - 1, &gamma)?;
            if let Some(k) = cli.k {
                if k != f.k {
                    bail!("--K {k} differs from the sum of gamma ({})", f.k);
                }
            }
            match out {
                Some(p) => fs::write(p, f.to_text()).with_context(|| format!("cannot write {}", p.display()))?,
                None => print!("{}", f.to_text()),
            }
            println!("# terms={}", f.vector.len());
            print_check(&f, None)
        }
        Command::Selftest => selftest(cli.seed),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! `dw`: command-line front end for the invariant library.
//!
//! Exit codes: 0 on success, 2 for bad input (parse, validation, argument),
//! 3 when a request is well-formed but its precondition fails, 1 when the
//! self test finds a regression.

use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use dw_core::cohomology::{h3, solve_3cocycles};
use dw_core::colouring::enumerate_colourings;
use dw_core::gsystem::system_from_cocycle;
use dw_core::invariant::{invariant_report, invariant_report_1dim};
use dw_core::moves::{l_move, l_sites, t_move, t_sites};
use dw_core::spine::{catalog, CATALOG};
use dw_core::{Cochain3, CoeffGroup, Colouring, Error, FiniteGroup, GSystem, Spine};

static OUT: Mutex<String> = Mutex::new(String::new());

// Stdout is buffered and written once so a closed pipe is not a panic.
macro_rules! put {
    ($($t:tt)*) => {{
        use std::fmt::Write as _;
        let _ = write!(OUT.lock().unwrap(), $($t)*);
    }};
}

macro_rules! say {
    ($($t:tt)*) => {{
        put!($($t)*);
        put!("\n");
    }};
}

const PAPER_OMEGA: &str = "paper_omega";

#[derive(Parser)]
#[command(
    name = "dw",
    version,
    about = "Symmetric Dijkgraaf-Witten type invariants of special spines"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Finite groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Symmetric 3-cochains.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Spine documents.
    #[command(subcommand)]
    Spine(SpineCmd),
    /// G-colourings of a spine.
    #[command(subcommand)]
    Colourings(ColouringCmd),
    /// Local moves on a spine.
    #[command(subcommand, name = "move")]
    Move(MoveCmd),
    /// Compute the invariant.
    Invariant(InvariantArgs),
    /// Run the built-in checks on the worked Z4 example.
    Selftest,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// List built-in group names.
    List,
    /// Print the multiplication table.
    Show { group: String },
}

#[derive(clap::Args)]
struct GroupCoeff {
    /// Group name (Z4, D3, Z2xZ2, ...) or path to a table file.
    #[arg(long)]
    group: String,
    /// Coefficient group, e.g. Z2 or Z2xZ4.
    #[arg(long, default_value = "Z2")]
    coeff: String,
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// Check Q-compatibility and the cocycle condition of a cochain file.
    Check {
        #[command(flatten)]
        gk: GroupCoeff,
        /// Cochain file, or `paper_omega`.
        #[arg(long)]
        cocycle: String,
    },
    /// Print a generating set of the symmetric 3-cocycles.
    Solve {
        #[command(flatten)]
        gk: GroupCoeff,
    },
    /// Print the third cohomology of the symmetric complex.
    H3 {
        #[command(flatten)]
        gk: GroupCoeff,
    },
}

#[derive(Subcommand)]
enum SpineCmd {
    /// Validate a spine document.
    Validate { spine: String },
    /// List catalog spines, or print one as JSON.
    Catalog { name: Option<String> },
}

#[derive(Subcommand)]
enum ColouringCmd {
    Count {
        #[arg(long)]
        spine: String,
        #[arg(long)]
        group: String,
    },
    List {
        #[arg(long)]
        spine: String,
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum MoveCmd {
    /// T-move along an edge.
    T {
        #[arg(long)]
        spine: String,
        #[arg(long)]
        edge: String,
    },
    /// L-move on a cell between two boundary positions.
    L {
        #[arg(long)]
        spine: String,
        #[arg(long)]
        cell: String,
        /// Two boundary positions `i,j`.
        #[arg(long)]
        pos: String,
    },
    /// List the move sites of a spine.
    Sites {
        #[arg(long)]
        spine: String,
    },
}

#[derive(clap::Args)]
struct InvariantArgs {
    /// Spine file or catalog name.
    #[arg(long)]
    spine: String,
    #[arg(long)]
    group: String,
    #[arg(long, default_value = "Z2")]
    coeff: String,
    /// Cochain file, or `paper_omega`.
    #[arg(long, required_unless_present = "system", conflicts_with = "system")]
    cocycle: Option<String>,
    /// General G-system in JSON.
    #[arg(long)]
    system: Option<String>,
    /// Contract vertex tensors instead of summing cocycle values.
    #[arg(long)]
    general_engine: bool,
    /// Print only the formal sum.
    #[arg(long)]
    sum_only: bool,
}

fn read(path: &str) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))
}

fn load_group(arg: &str) -> anyhow::Result<FiniteGroup> {
    if Path::new(arg).is_file() {
        let name = Path::new(arg)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(arg);
        return Ok(FiniteGroup::from_table_text(name, &read(arg)?)?);
    }
    Ok(FiniteGroup::parse_spec(arg)?)
}

fn load_spine(arg: &str) -> anyhow::Result<Spine> {
    if Path::new(arg).is_file() {
        return Ok(Spine::load(&read(arg)?)?);
    }
    Ok(catalog(arg)?)
}

fn load_cocycle(arg: &str, g: &FiniteGroup, k: &CoeffGroup) -> anyhow::Result<Cochain3> {
    if arg == PAPER_OMEGA {
        let w = Cochain3::example_z4();
        if g.order() != 4 || !g.is_abelian() || g.elements().all(|x| g.mul(x, x) == g.identity()) {
            return Err(
                Error::Argument(format!("`{PAPER_OMEGA}` lives on Z4, not {}", g.name())).into(),
            );
        }
        return Ok(w);
    }
    Ok(Cochain3::parse_text(&read(arg)?, g, k)?)
}

fn parse_pos(s: &str) -> anyhow::Result<(usize, usize)> {
    let bad = || Error::Argument(format!("expected `i,j`, got `{s}`"));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Group(GroupCmd::List) => {
            for name in dw_core::algebra::BUILTIN_GROUPS {
                let g = FiniteGroup::parse_spec(name)?;
                say!("{name}\torder {}", g.order());
            }
        }
        Cmd::Group(GroupCmd::Show { group }) => {
            let g = load_group(&group)?;
            say!("# {} (abelian: {})", g.name(), g.is_abelian());
            put!("{}", g.to_table_text());
        }
        Cmd::Cocycle(c) => return cocycle(c),
        Cmd::Spine(SpineCmd::Validate { spine }) => {
            let s = Spine::from_json_unchecked(&read(&spine)?)?;
            let r = s.validate();
            if !r.is_valid() {
                for e in &r.errors {
                    eprintln!("{e}");
                }
                return Err(
                    Error::Validation(format!("{} problem(s) found", r.errors.len())).into(),
                );
            }
            say!(
                "valid: V={} E={} C={} chi={}",
                r.vertices,
                r.edges,
                r.cells,
                r.euler_characteristic()
            );
        }
        Cmd::Spine(SpineCmd::Catalog { name: None }) => {
            for name in CATALOG {
                let r = catalog(name)?.validate();
                say!("{name}\tV={} E={} C={}", r.vertices, r.edges, r.cells);
            }
        }
        Cmd::Spine(SpineCmd::Catalog { name: Some(n) }) => put!("{}", catalog(&n)?.to_json()),
        Cmd::Colourings(ColouringCmd::Count { spine, group }) => {
            let (s, g) = (load_spine(&spine)?, load_group(&group)?);
            say!("{}", enumerate_colourings(&s, &g)?.len());
        }
        Cmd::Colourings(ColouringCmd::List { spine, group }) => {
            let (s, g) = (load_spine(&spine)?, load_group(&group)?);
            for xi in enumerate_colourings(&s, &g)? {
                say!("{}", xi.render(&s));
            }
        }
        Cmd::Move(MoveCmd::T { spine, edge }) => put!(
            "{}",
            t_move(&load_spine(&spine)?, &edge)?.spine_after.to_json()
        ),
        Cmd::Move(MoveCmd::L { spine, cell, pos }) => {
            let r = l_move(&load_spine(&spine)?, &cell, parse_pos(&pos)?)?;
            put!("{}", r.spine_after.to_json());
        }
        Cmd::Move(MoveCmd::Sites { spine }) => {
            let s = load_spine(&spine)?;
            for e in t_sites(&s)? {
                say!("t --edge {e}");
            }
            for (c, (i, j)) in l_sites(&s)? {
                say!("l --cell {c} --pos {i},{j}");
            }
        }
        Cmd::Invariant(a) => invariant(a)?,
        Cmd::Selftest => return Ok(selftest()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cocycle(c: CocycleCmd) -> anyhow::Result<ExitCode> {
    match c {
        CocycleCmd::Check { gk, cocycle } => {
            let g = load_group(&gk.group)?;
            let k = if cocycle == PAPER_OMEGA {
                CoeffGroup::cyclic(2)?
            } else {
                CoeffGroup::parse(&gk.coeff)?
            };
            let w = load_cocycle(&cocycle, &g, &k)?;
            let q = w.first_q_violation(&g);
            let d = w.first_violation(&g);
            say!("respects_Q: {}", q.is_none());
            say!("is_3cocycle: {}", d.is_none());
            if let Some(v) = q.or(d) {
                return Err(Error::Validation(v.to_string()).into());
            }
        }
        CocycleCmd::Solve { gk } => {
            let (g, k) = (load_group(&gk.group)?, CoeffGroup::parse(&gk.coeff)?);
            let z = solve_3cocycles(&g, &k)?;
            say!(
                "# {} generator(s), {} cocycles",
                z.generators().len(),
                z.cardinality()
            );
            for (i, (w, o)) in z.generators().iter().zip(z.orders()).enumerate() {
                say!("# generator {i} order {o}");
                put!("{}", w.to_text());
            }
        }
        CocycleCmd::H3 { gk } => {
            let (g, k) = (load_group(&gk.group)?, CoeffGroup::parse(&gk.coeff)?);
            let h = h3(&g, &k)?;
            let factors: Vec<String> = h
                .invariant_factors
                .iter()
                .map(|d| format!("Z{d}"))
                .collect();
            let shape = if factors.is_empty() {
                "0".to_string()
            } else {
                factors.join(" + ")
            };
            say!("H3({}; {}) = {shape}", g.name(), k.name());
            say!("order: {}", h.order());
            say!("cocycles: {}", h.cocycles.cardinality());
            say!("coboundaries: {}", h.coboundary_count());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn invariant(a: InvariantArgs) -> anyhow::Result<()> {
    let s = load_spine(&a.spine)?;
    let g = load_group(&a.group)?;
    let report = match (&a.system, &a.cocycle) {
        (Some(path), _) => {
            let sys = GSystem::from_json(&read(path)?, &g)?;
            invariant_report(&s, &sys, path)?
        }
        (None, Some(c)) => {
            let k = if c == PAPER_OMEGA {
                CoeffGroup::cyclic(2)?
            } else {
                CoeffGroup::parse(&a.coeff)?
            };
            let w = load_cocycle(c, &g, &k)?;
            if a.general_engine {
                invariant_report(&s, &system_from_cocycle(&g, &w)?, c)?
            } else {
                invariant_report_1dim(&s, &g, &w, c)?
            }
        }
        (None, None) => bail!(Error::Argument("need --cocycle or --system".into())),
    };
    if a.sum_only {
        say!("{}", report.rendered_sum());
    } else {
        put!("{}", report.to_text());
    }
    Ok(())
}

/// Quick regression pass on the worked example.
fn selftest() -> ExitCode {
    let checks: Vec<(&str, fn() -> anyhow::Result<bool>)> = vec![
        ("worked example sum and weights", || {
            let s = catalog("L41")?;
            let g = FiniteGroup::cyclic(4)?;
            let r = invariant_report_1dim(&s, &g, &Cochain3::example_z4(), PAPER_OMEGA)?;
            let mut seen: Vec<(String, String)> = r
                .weights
                .iter()
                .map(|(xi, w)| {
                    (
                        xi.render(&s),
                        dw_core::invariant::render_value(r.sum.carrier(), w),
                    )
                })
                .collect();
            seen.sort();
            let want = [
                ("c1=0,c2=0", "1"),
                ("c1=0,c2=2", "1"),
                ("c1=2,c2=1", "t"),
                ("c1=2,c2=3", "t"),
            ];
            Ok(r.rendered_sum() == "2*1 + 2*t"
                && seen
                    .iter()
                    .map(|(a, b)| (a.as_str(), b.as_str()))
                    .eq(want.iter().copied()))
        }),
        ("general engine agrees", || {
            let s = catalog("L41")?;
            let g = FiniteGroup::cyclic(4)?;
            let sys = system_from_cocycle(&g, &Cochain3::example_z4())?;
            Ok(invariant_report(&s, &sys, PAPER_OMEGA)?.rendered_sum() == "2*1 + 2*t")
        }),
        ("colouring count", || {
            let s = catalog("L41")?;
            let g = FiniteGroup::cyclic(4)?;
            let cols = enumerate_colourings(&s, &g)?;
            let want: Vec<Colouring> = [[0, 0], [0, 2], [2, 1], [2, 3]]
                .iter()
                .map(|v| Colouring::new(v.to_vec()))
                .collect();
            Ok(cols == want)
        }),
        ("cocycle checker", || {
            let g = FiniteGroup::cyclic(4)?;
            let w = Cochain3::example_z4();
            Ok(w.respects_q(&g) && w.is_3cocycle(&g))
        }),
        ("system checks", || {
            let g = FiniteGroup::cyclic(4)?;
            let sys = system_from_cocycle(&g, &Cochain3::example_z4())?;
            Ok(sys.check_symmetric().is_ok()
                && sys.check_special().is_ok()
                && sys.check_strong().is_ok())
        }),
    ];
    let mut ok = true;
    for (name, f) in checks {
        let start = Instant::now();
        let pass = matches!(f(), Ok(true));
        ok &= pass;
        say!(
            "{} {name} ({:.3} s)",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Precondition(_) | Error::Size(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    let _ = std::io::stdout().write_all(OUT.lock().unwrap().as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

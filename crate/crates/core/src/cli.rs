//! Command-line driver. Every subcommand produces a [`Report`]; the exit code
//! is 0 when all checks pass, 1 when one fails and 2 on bad input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dofs3d::{build_dofset, check_commute, check_unisolvence, Diagram, DofSpace};
use crate::error::{Error, Result};
use crate::globalfe::{check_global_exact, global_project, random_cases, sequence_diagram, GlobalProjectors, RankMode};
use crate::polyforms::{format_piecewise, parse_form};
use crate::ratlinalg::seeded_primes;
use crate::report::{Check, Report};
use crate::simplicial::{AlfeldSplit, MacroMesh};
use crate::splitspaces::{
    build_space, check_exact, dimension_formula, find_potential, trimmed_variants, Family, SequenceSpec, SpaceSpec,
};

#[derive(Parser, Debug)]
#[command(name = "alfeld", version, about = "Exact smooth finite element spaces on Alfeld splits")]
pub struct Cli {
    #[command(flatten)]
    pub out: OutputOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputOpts {
    /// Print tables as CSV instead of a JSON report.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Include wall-clock timings (output is then not reproducible byte for byte).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form against computed dimensions of the local spaces.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r_max: i64,
        /// Restrict to one form degree.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exactness of local sequences by ranks.
    Exactness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: i64,
        /// `1`, `2`, `3` (smooth sequences, n = 3), `ring1`..`ring3`, `family` or `ring` (all switch indices).
        #[arg(long)]
        seq: String,
        /// Only this switch index for `family` and `ring`.
        #[arg(long)]
        j: Option<usize>,
    },
    /// Unisolvence of a DOF set (`all` for the eight spaces).
    Dofs {
        #[arg(long)]
        space: String,
        #[arg(long)]
        r: i64,
    },
    /// Commuting projections on seeded random inputs of degree r + 2.
    Commute {
        /// `one`, `two`, `three` or `all`.
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        cases: usize,
    },
    /// Exactness of a global sequence on a macro mesh.
    Global {
        /// Built-in mesh name or mesh file.
        #[arg(long)]
        mesh: String,
        #[arg(long)]
        seq: u8,
        #[arg(long)]
        r: i64,
        /// Exact ranks instead of modular ones (at most two macro cells).
        #[arg(long)]
        exact_rank: bool,
        #[arg(long, default_value_t = 2)]
        primes: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also project this many random inputs of degree r + 2 cell by cell.
        #[arg(long, default_value_t = 0)]
        project_cases: usize,
    },
    /// A potential of a closed piecewise form in a target space.
    Potential {
        /// Form file in the line format.
        #[arg(long = "in")]
        input: PathBuf,
        /// Target space, e.g. `Md:ring:k0:r3`.
        #[arg(long)]
        target: String,
        /// Where to write the potential; the report carries it either way.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct DimRow {
    family: &'static str,
    ring: bool,
    k: usize,
    r: i64,
    n: usize,
    formula: Option<i64>,
    computed: usize,
    status: &'static str,
}

struct Timer(Option<BTreeMap<String, f64>>);

impl Timer {
    fn new(on: bool) -> Self {
        Timer(on.then(BTreeMap::new))
    }

    fn time<T>(&mut self, key: impl Into<String>, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let v = f();
        if let Some(m) = &mut self.0 {
            m.insert(key.into(), t.elapsed().as_secs_f64());
        }
        v
    }
}

/// Output of one invocation: the report and an optional table for `--csv`.
pub struct Outcome {
    pub report: Report,
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

fn families(n: usize, k: usize) -> Vec<(Family, bool)> {
    let mut out = Vec::new();
    for ring in [false, true] {
        for f in [Family::V, Family::Vd, Family::M, Family::Md, Family::Mc, Family::Vc] {
            if SpaceSpec::new(f, ring, k, 0, n).is_ok() {
                out.push((f, ring));
            }
        }
    }
    out
}

fn dims(n: usize, r_max: i64, only_k: Option<usize>, timer: &mut Timer) -> Result<Outcome> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidSpec(format!("dimension {n} outside 1..=4")));
    }
    let mut rep = Report::new("dims");
    rep.param("n", n).param("r_max", r_max).param("k", only_k);
    let split = AlfeldSplit::of_reference(n);
    let ks: Vec<usize> = match only_k {
        Some(k) if k > n => return Err(Error::InvalidSpec(format!("form degree {k} exceeds {n}"))),
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let mut rows = Vec::new();
    let mut trimmed = Vec::new();
    for &k in &ks {
        for r in 0..=r_max {
            for (f, ring) in families(n, k) {
                let spec = SpaceSpec::new(f, ring, k, r, n)?;
                let basis = timer.time(format!("dims/{spec}"), || build_space(&spec, &split))?;
                let formula = dimension_formula(&spec).ok();
                let ok = formula.is_none_or(|d| d == basis.dim() as i64);
                if let Some(d) = formula {
                    rep.push(Check::eq(format!("dim/{spec}"), d, basis.dim() as i64));
                }
                rows.push(DimRow {
                    family: f.name(),
                    ring,
                    k,
                    r,
                    n,
                    formula,
                    computed: basis.dim(),
                    status: if formula.is_none() { "NONE" } else if ok { "PASS" } else { "FAIL" },
                });
            }
            if r >= 1 {
                let (standard, literal) = trimmed_variants(n, r, k);
                trimmed.push(serde_json::json!({ "k": k, "r": r, "standard": standard, "literal": literal }));
            }
        }
    }
    let table = rows
        .iter()
        .map(|d| {
            vec![
                d.family.to_string(),
                d.ring.to_string(),
                d.k.to_string(),
                d.r.to_string(),
                d.n.to_string(),
                d.formula.map(|x| x.to_string()).unwrap_or_default(),
                d.computed.to_string(),
                d.status.to_string(),
            ]
        })
        .collect();
    rep.datum("table", &rows).datum("trimmed", trimmed);
    Ok(Outcome {
        report: rep,
        table: Some((vec!["family", "ring", "k", "r", "n", "formula", "computed", "status"], table)),
    })
}

fn sequences(n: usize, r: i64, seq: &str, j: Option<usize>) -> Result<Vec<SequenceSpec>> {
    let smooth = |which: u8, ring: bool| {
        if n != 3 {
            return Err(Error::InvalidSpec(format!("smooth sequence {which} needs n = 3")));
        }
        SequenceSpec::smooth3d(which, r, ring)
    };
    let js = |ring: bool| -> Result<Vec<SequenceSpec>> {
        match j {
            Some(j) => Ok(vec![SequenceSpec::family(n, j, r, ring)?]),
            None => (0..=n).map(|j| SequenceSpec::family(n, j, r, ring)).collect(),
        }
    };
    match seq {
        "1" | "2" | "3" => Ok(vec![smooth(seq.parse().unwrap_or(0), false)?]),
        "ring1" | "ring2" | "ring3" => Ok(vec![smooth(seq[4..].parse().unwrap_or(0), true)?]),
        "family" => js(false),
        "ring" => js(true),
        _ => Err(Error::InvalidSpec(format!("unknown sequence `{seq}`"))),
    }
}

fn exactness(n: usize, r: i64, seq: &str, j: Option<usize>, timer: &mut Timer) -> Result<Outcome> {
    let mut rep = Report::new("exactness");
    rep.param("n", n).param("r", r).param("seq", seq).param("j", j);
    let specs = sequences(n, r, seq, j)?;
    let split = AlfeldSplit::of_reference(n);
    let mut reports = Vec::new();
    for s in &specs {
        let sr = timer.time(format!("exactness/{}", s.name), || check_exact(s, &split))?;
        rep.extend(sr.checks());
        reports.push(sr);
    }
    rep.datum("sequences", &reports);
    Ok(Outcome { report: rep, table: None })
}

fn dofs(space: &str, r: i64, timer: &mut Timer) -> Result<Outcome> {
    let mut rep = Report::new("dofs");
    rep.param("space", space).param("r", r);
    let spaces: Vec<DofSpace> = if space == "all" { DofSpace::ALL.to_vec() } else { vec![space.parse()?] };
    let split = AlfeldSplit::of_reference(3);
    let mut reports = Vec::new();
    for s in spaces {
        let ur = timer.time(format!("dofs/{s}"), || -> Result<_> {
            let set = build_dofset(s, r, &split)?;
            let basis = build_space(&set.target, &split)?;
            check_unisolvence(&set, &basis)
        })?;
        rep.extend(ur.checks());
        reports.push(ur);
    }
    rep.datum("spaces", &reports);
    Ok(Outcome { report: rep, table: None })
}

fn commute(diagram: &str, r: i64, seed: u64, cases: usize, timer: &mut Timer) -> Result<Outcome> {
    let mut rep = Report::new("commute");
    rep.param("diagram", diagram).param("r", r).param("seed", seed).param("cases", cases);
    let diagrams: Vec<Diagram> = if diagram == "all" { Diagram::ALL.to_vec() } else { vec![diagram.parse()?] };
    let split = AlfeldSplit::of_reference(3);
    let mut reports = Vec::new();
    for d in diagrams {
        let cr = timer.time(format!("commute/{d}"), || check_commute(d, r, seed, cases, &split))?;
        rep.extend(cr.checks());
        reports.push(cr);
    }
    rep.datum("diagrams", &reports);
    Ok(Outcome { report: rep, table: None })
}

#[allow(clippy::too_many_arguments)]
fn global(
    mesh: &str,
    seq: u8,
    r: i64,
    exact_rank: bool,
    primes: usize,
    seed: u64,
    project_cases: usize,
    timer: &mut Timer,
) -> Result<Outcome> {
    let mut rep = Report::new("global");
    rep.param("mesh", mesh).param("seq", seq).param("r", r).param("exact_rank", exact_rank);
    rep.param("primes", primes).param("seed", seed).param("project_cases", project_cases);
    let m = MacroMesh::load(mesh)?;
    let mode = if exact_rank {
        RankMode::Exact
    } else {
        if primes < 2 {
            return Err(Error::InvalidSpec("modular ranks need at least 2 primes".into()));
        }
        RankMode::Modular(seeded_primes(primes, seed))
    };
    let gr = timer.time("global/exact", || check_global_exact(seq, mesh, &m, r, &mode))?;
    rep.extend(gr.checks());
    rep.datum("exactness", &gr);
    if project_cases > 0 {
        let proj = timer.time("global/projectors", || GlobalProjectors::new(sequence_diagram(seq)?, &m, r))?;
        let cases = random_cases(seed, project_cases, (r + 2) as usize);
        let pr = timer.time("global/project", || global_project(&proj, mesh, &cases, Some(seed)))?;
        rep.extend(pr.checks());
        rep.datum("projection", &pr);
    }
    Ok(Outcome { report: rep, table: None })
}

fn potential(input: &PathBuf, target: &str, out: Option<&PathBuf>, timer: &mut Timer) -> Result<Outcome> {
    let mut rep = Report::new("potential");
    rep.param("in", input.display().to_string()).param("target", target);
    let text = std::fs::read_to_string(input)?;
    let form = parse_form(&text)?;
    let target: SpaceSpec = target.parse()?;
    if form.n() != target.n {
        return Err(Error::FormMismatch(format!("form on R^{} against target {}", form.n(), target)));
    }
    let split = AlfeldSplit::of_reference(target.n);
    let w = form.into_pieces(split.num_children())?;
    rep.push(Check::new("potential/closed", true, w.d().is_zero(), w.d().is_zero()));
    match timer.time("potential/solve", || find_potential(&w, &target, &split)) {
        Ok(rho) => {
            let member = build_space(&target, &split)?.contains(&rho);
            let exact = rho.d() == w;
            rep.push(Check::new("potential/found", true, true, true));
            rep.push(Check::new("potential/member", true, member, member));
            rep.push(Check::new("potential/d-rho-equals-omega", true, exact, exact));
            let text = format_piecewise(&rho);
            if let Some(p) = out {
                std::fs::write(p, &text)?;
            }
            rep.datum("potential", text);
        }
        Err(e @ (Error::NotClosed | Error::NonzeroMean(_) | Error::PotentialNotFound)) => {
            rep.push(Check::new("potential/found", true, false, false).with_note(e.to_string()));
        }
        Err(e) => return Err(e),
    }
    Ok(Outcome { report: rep, table: None })
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut timer = Timer::new(cli.out.timings);
    let mut o = match &cli.command {
        Command::Dims { n, r_max, k } => dims(*n, *r_max, *k, &mut timer),
        Command::Exactness { n, r, seq, j } => exactness(*n, *r, seq, *j, &mut timer),
        Command::Dofs { space, r } => dofs(space, *r, &mut timer),
        Command::Commute { diagram, r, seed, cases } => commute(diagram, *r, *seed, *cases, &mut timer),
        Command::Global { mesh, seq, r, exact_rank, primes, seed, project_cases } => {
            global(mesh, *seq, *r, *exact_rank, *primes, *seed, *project_cases, &mut timer)
        }
        Command::Potential { input, target, out } => potential(input, target, out.as_ref(), &mut timer),
    }?;
    o.report.sort();
    o.report.timings = timer.0;
    Ok(o)
}

fn checks_table(rep: &Report) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let rows = rep
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), c.expected.to_string(), c.computed.to_string(), c.status.to_string()])
        .collect();
    (vec!["name", "expected", "computed", "status"], rows)
}

/// Writes the outcome as JSON, or as CSV with `--csv`.
pub fn render(o: &Outcome, opts: &OutputOpts, w: &mut impl Write) -> std::io::Result<()> {
    if opts.csv {
        let (head, rows) = o.table.clone().unwrap_or_else(|| checks_table(&o.report));
        let mut c = csv::Writer::from_writer(w);
        c.write_record(&head)?;
        for r in rows {
            c.write_record(&r)?;
        }
        c.flush()
    } else {
        serde_json::to_writer_pretty(&mut *w, &o.report)?;
        writeln!(w)
    }
}

/// Exit code for a library error: bad input is a usage error.
pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec(_)
        | Error::Parse { .. }
        | Error::Mesh(_)
        | Error::Io(_)
        | Error::FormMismatch(_)
        | Error::DegreeOverflow(_)
        | Error::Precondition(_)
        | Error::Geometry(_) => 2,
        _ => 1,
    }
}

/// Parses `args`, runs and prints; returns the process exit code.
pub fn main_with<I, T>(args: I, w: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(o) => {
            if let Err(e) = render(&o, &cli.out, w) {
                eprintln!("error: {e}");
                return 1;
            }
            if o.report.all_pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

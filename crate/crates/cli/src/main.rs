//! `cliffsub` command-line interface.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cliffsub::atlas::{
    all_entries, clifford_lattice, entry, export_csv, export_gap_script, export_json, instantiate_series, verify,
    AtlasEntry, Family, Filter, LatticeReport, Verification, VerifyOptions,
};
use cliffsub::classify::{classify, ClassificationReport, Hierarchy};
use cliffsub::error::Error;
use cliffsub::gates::{parse_expr, parse_group_generators};
use cliffsub::group::cache::CACHE_DIR_ENV;
use cliffsub::group::{FiniteMatrixGroup, GroupCache, DEFAULT_CAP};
use cliffsub::linal::GateMatrix;

const EXIT_DIFFS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "cliffsub", version, about = "Exact classification of two-qubit Clifford subgroups")]
struct Cli {
    /// Highest hierarchy level probed.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    max_level: u32,

    /// Largest group closure attempted.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive)]
    cap: usize,

    /// Directory for cached group closures.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Csv,
    Gap,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute catalog entries and compare with their recorded invariants.
    Verify {
        /// Entry names; series instances such as `S4[2]` are accepted.
        names: Vec<String>,
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        /// The 56 Clifford subgroups containing the Pauli group.
        #[arg(long)]
        all_pauli: bool,
        /// Every catalog entry.
        #[arg(long)]
        all: bool,
        /// Override the expected order (for testing the checker).
        #[arg(long)]
        expect_order: Option<u64>,
    },
    /// Enumerate the Clifford subgroups above the Pauli group and match them to the catalog.
    Lattice,
    /// Hierarchy level of a gate, or of the group generated by a list.
    Hierarchy { expr: String },
    /// Full invariant report for a catalog name or generator list.
    Describe { target: String },
    /// Write the catalog with computed invariants, or a GAP check script.
    Export {
        #[arg(value_enum)]
        kind: ExportFormat,
        /// Output file; stdout if omitted.
        path: Option<PathBuf>,
    },
    /// Inspect or clear the closure cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    List,
    Clear,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.slug()).collect();
        format!("unknown family; expected one of {}", names.join(", "))
    })
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Resource(String),
    Diffs,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Resource(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    max_level: u32,
    cap: usize,
    cache: Option<GroupCache>,
    format: Format,
}

impl Ctx {
    fn build(&self, gens: &[GateMatrix]) -> Result<FiniteMatrixGroup, Error> {
        match &self.cache {
            Some(c) => c.get_or_build(gens, self.cap),
            None => FiniteMatrixGroup::closure(gens, self.cap),
        }
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { cap: self.cap, max_level: self.max_level, cache: self.cache.clone() }
    }

    fn classify_entry(&self, e: &AtlasEntry) -> Result<ClassificationReport, Error> {
        let g = self.build(&e.generator_matrices()?)?;
        let mut h = Hierarchy::for_dim(g.dim());
        classify(&e.name, &g.whole(), h.as_mut(), self.max_level)
    }

    fn text_only(&self, what: &str) -> Outcome {
        if self.format == Format::Csv {
            return Err(Failure::Usage(format!("{what} has no csv output")));
        }
        Ok(())
    }
}

/// `NAME[a,b]` for series instances.
fn series_instance(name: &str) -> Option<Result<AtlasEntry, Error>> {
    let (base, rest) = name.split_once('[')?;
    let inner = rest.strip_suffix(']')?;
    let params: Result<Vec<u32>, _> = inner.split(',').map(|p| p.trim().parse::<u32>()).collect();
    Some(match params {
        Ok(p) => instantiate_series(base, &p),
        Err(_) => Err(Error::Params(format!("bad parameters in '{name}'"))),
    })
}

fn resolve(name: &str) -> Result<AtlasEntry, Error> {
    match series_instance(name) {
        Some(r) => r,
        None => entry(name).cloned(),
    }
}

fn select(names: &[String], family: Option<Family>, all_pauli: bool, all: bool) -> Result<Vec<AtlasEntry>, Failure> {
    let mut out: Vec<AtlasEntry> = Vec::new();
    for n in names {
        out.push(resolve(n)?);
    }
    let filters = [
        family.map(Filter::Family),
        all_pauli.then_some(Filter::PauliClifford),
        all.then_some(Filter::All),
    ];
    for f in filters.into_iter().flatten() {
        out.extend(all_entries(f).into_iter().cloned());
    }
    if out.is_empty() {
        return Err(Failure::Usage("nothing selected: give names, --family, --all-pauli or --all".into()));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out.dedup_by(|a, b| a.name == b.name);
    Ok(out)
}

fn print_verifications(ctx: &Ctx, results: &[Verification], out: &mut impl Write) -> Outcome {
    match ctx.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(results).map_err(Error::from)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "status", "field", "expected", "computed"]).map_err(Error::from)?;
            for v in results {
                let status = if v.passed() { "PASS" } else { "FAIL" };
                if let Some(e) = &v.error {
                    w.write_record([v.name.as_str(), status, "error", "", e]).map_err(Error::from)?;
                } else if v.diffs.is_empty() {
                    w.write_record([v.name.as_str(), status, "", "", ""]).map_err(Error::from)?;
                }
                for d in &v.diffs {
                    w.write_record([&v.name, status, &d.field, &d.expected, &d.computed]).map_err(Error::from)?;
                }
            }
            out.write_all(&w.into_inner().map_err(|e| Failure::Resource(e.to_string()))?)?;
        }
        Format::Text => {
            for v in results {
                let order = v.report.as_ref().map(|r| r.order_string()).unwrap_or_default();
                writeln!(out, "{} {} {}", if v.passed() { "PASS" } else { "FAIL" }, v.name, order)?;
                if let Some(e) = &v.error {
                    writeln!(out, "    error: {e}")?;
                }
                for d in &v.diffs {
                    writeln!(out, "    {}: expected {}, computed {}", d.field, d.expected, d.computed)?;
                }
            }
            let passed = results.iter().filter(|v| v.passed()).count();
            writeln!(out, "{passed}/{} entries verified", results.len())?;
        }
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, entries: Vec<AtlasEntry>, expect_order: Option<u64>, out: &mut impl Write) -> Outcome {
    let opts = ctx.verify_options();
    let results: Vec<Verification> = entries
        .into_par_iter()
        .map(|mut e| {
            if let Some(o) = expect_order {
                e.expected.order = o;
            }
            verify(&e, &opts)
        })
        .collect();
    print_verifications(ctx, &results, out)?;
    let failed_hard = results.iter().any(|v| !v.diffs.is_empty() || (v.error.is_some() && !v.resource_limited));
    if failed_hard {
        Err(Failure::Diffs)
    } else if results.iter().any(|v| v.resource_limited) {
        Err(Failure::Resource("some groups exceeded the closure cap".into()))
    } else {
        Ok(())
    }
}

fn print_lattice(ctx: &Ctx, r: &LatticeReport, out: &mut impl Write) -> Outcome {
    if ctx.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(r).map_err(Error::from)?)?;
        return Ok(());
    }
    writeln!(out, "subgroups between <P2,iII> and C2: {}", r.total)?;
    writeln!(out, "strictly between: {}", r.strictly_between)?;
    writeln!(out, "strictly between P2 and C2: {}", r.strictly_between_pauli)?;
    writeln!(out, "base fingerprint classes: {}", r.base_classes)?;
    writeln!(out, "classes: {}", r.classes.len())?;
    for c in &r.classes {
        let names = if c.names.is_empty() { "(unmatched)".to_string() } else { c.names.join(", ") };
        writeln!(out, "    {:>6} {:>5} x{:<3} {:<12} {}", c.order, c.projective_order, c.members, c.ring, names)?;
    }
    writeln!(out, "unmatched classes: {}", r.unmatched_classes().len())?;
    writeln!(out, "ambiguous classes: {}", r.ambiguous_classes().len())?;
    for n in &r.entries_not_in_lattice {
        writeln!(out, "not in lattice: {n}")?;
    }
    for s in &r.separated_by_extension {
        writeln!(out, "separated only by extended key: {}", s.join(", "))?;
    }
    Ok(())
}

fn cmd_lattice(ctx: &Ctx, out: &mut impl Write) -> Outcome {
    ctx.text_only("lattice")?;
    let c2 = ctx.build(&entry("C2")?.generator_matrices()?)?;
    let report = clifford_lattice(&c2)?;
    print_lattice(ctx, &report, out)?;
    if report.is_bijective() {
        Ok(())
    } else {
        Err(Failure::Diffs)
    }
}

fn cmd_hierarchy(ctx: &Ctx, expr: &str, out: &mut impl Write) -> Outcome {
    ctx.text_only("hierarchy")?;
    let gens = match parse_expr(expr.trim()) {
        Ok(m) => vec![m],
        Err(_) => parse_group_generators(expr)?,
    };
    let dim = gens.first().map(|g| g.dim()).unwrap_or(0);
    let mut h = Hierarchy::for_dim(dim).ok_or_else(|| Failure::Usage(format!("no hierarchy for dimension {dim}")))?;
    let level = h.group_level(&gens, ctx.max_level);
    match ctx.format {
        Format::Json => {
            let v = serde_json::json!({ "expr": expr, "level": level.level(), "max_level": ctx.max_level, "display": level.to_string() });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
        }
        _ => writeln!(out, "{level}")?,
    }
    Ok(())
}

fn describe_report(ctx: &Ctx, target: &str) -> Result<ClassificationReport, Error> {
    match resolve(target) {
        Ok(e) => ctx.classify_entry(&e),
        Err(Error::Lookup(_)) => {
            let g = ctx.build(&parse_group_generators(target)?)?;
            let mut h = Hierarchy::for_dim(g.dim());
            classify(target, &g.whole(), h.as_mut(), ctx.max_level)
        }
        Err(e) => Err(e),
    }
}

fn cmd_describe(ctx: &Ctx, target: &str, out: &mut impl Write) -> Outcome {
    ctx.text_only("describe")?;
    let r = describe_report(ctx, target)?;
    if ctx.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).map_err(Error::from)?)?;
        return Ok(());
    }
    let ring = r.character_ring.label.clone().unwrap_or_else(|| format!("Z<{}>", r.character_ring.basis.join(", ")));
    let fp = &r.frame_potentials;
    writeln!(out, "name:             {}", r.name)?;
    writeln!(out, "order:            {}", r.order_string())?;
    writeln!(out, "lift:             {}", if r.lift.is_empty() { "-" } else { &r.lift })?;
    writeln!(out, "irreducible:      {}", r.irreducible)?;
    writeln!(out, "entanglement:     {}", r.entanglement)?;
    writeln!(out, "shape:            {}", r.shape.as_deref().unwrap_or("not monomial"))?;
    if let Some(d) = r.delta_order {
        writeln!(out, "diagonal order:   {d}")?;
    }
    writeln!(out, "character ring:   {ring}")?;
    writeln!(out, "hierarchy level:  {}", r.hierarchy_level)?;
    writeln!(out, "frame potential:  {} {} {}", fp.t1, fp.t2, fp.t3)?;
    writeln!(out, "design strength:  {}", fp.design_strength())?;
    writeln!(out, "perfect:          {}", r.perfect)?;
    Ok(())
}

fn cmd_export(ctx: &Ctx, kind: ExportFormat, path: Option<PathBuf>, out: &mut impl Write) -> Outcome {
    let text = match kind {
        ExportFormat::Csv => export_csv(&all_entries(Filter::PauliClifford))?,
        ExportFormat::Gap => export_gap_script(&all_entries(Filter::All))?,
        ExportFormat::Json => {
            let reports: Result<Vec<_>, Error> =
                all_entries(Filter::All).into_par_iter().map(|e| ctx.classify_entry(e)).collect();
            export_json(&reports?)?
        }
    };
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_cache(ctx: &Ctx, action: CacheAction, out: &mut impl Write) -> Outcome {
    let cache = ctx
        .cache
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("no cache directory: pass --cache or set {CACHE_DIR_ENV}")))?;
    match action {
        CacheAction::List => {
            for (file, size) in cache.entries()? {
                writeln!(out, "{file} {size} bytes")?;
            }
        }
        CacheAction::Clear => writeln!(out, "removed {} entries", cache.clear()?)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx { max_level: cli.max_level, cap: cli.cap, cache: cli.cache.map(GroupCache::new), format: cli.format };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Verify { names, family, all_pauli, all, expect_order } => {
            let entries = select(&names, family, all_pauli, all)?;
            cmd_verify(&ctx, entries, expect_order, &mut out)
        }
        Command::Lattice => cmd_lattice(&ctx, &mut out),
        Command::Hierarchy { expr } => cmd_hierarchy(&ctx, &expr, &mut out),
        Command::Describe { target } => cmd_describe(&ctx, &target, &mut out),
        Command::Export { kind, path } => cmd_export(&ctx, kind, path, &mut out),
        Command::Cache { action } => cmd_cache(&ctx, action, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cliffsub: {e}");
            return ExitCode::from(EXIT_RESOURCE);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Diffs) => ExitCode::from(EXIT_DIFFS),
        Err(Failure::Usage(m)) => {
            eprintln!("cliffsub: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("cliffsub: {m}");
            ExitCode::from(EXIT_RESOURCE)
        }
    }
}

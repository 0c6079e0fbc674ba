//! Command-line front end for `codegree-core`.

pub mod cache;
pub mod dsl;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use codegree_core::builders::{build, GroupSpec};
use codegree_core::chartab::{character_table, CharacterTable};
use codegree_core::lietables::{
    alpha_degree, beta_degree, default_realization, fidelity_check, order_of,
    pair_divisibility_check, Verdict as LieVerdict,
};
use codegree_core::perm::{conjugacy_classes, Permutation};
use codegree_core::qian::{corpus_run_with, fitting_check_table, qian_check, MonolithicContext};
use codegree_core::{Config, Error};
use serde::Serialize;

use cache::Cache;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "codegree-lab",
    version,
    about = "Character tables and codegree checks"
)]
pub struct Cli {
    /// Emit JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Cache directory for character tables (overridden by CODEGREE_LAB_CACHE).
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Largest group order whose elements may be enumerated.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Worker threads for corpus runs (0 = all cores).
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    jobs: usize,
    /// Which admissible prime the table computation uses.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    dixon_prime_rank: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the character table.
    Chartab { spec: String },
    /// Print degrees, kernels and codegrees.
    Codegrees { spec: String },
    /// Check that every element order divides some codegree.
    Qian { spec: String },
    /// Fitting subgroup, socle and the codegree check.
    Fitting { spec: String },
    /// Lie-type table rows.
    Lie {
        #[command(subcommand)]
        query: LieQuery,
    },
    /// Witness search in a group with a unique minimal normal subgroup.
    /// ELEMENT is cycle notation, or `all` for every class representative.
    Monolithic { spec: String, element: String },
    /// Check every spec listed in FILE.
    Corpus { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum LieQuery {
    Order {
        family: String,
        q: u64,
    },
    Alpha {
        family: String,
        q: u64,
    },
    Beta {
        family: String,
        q: u64,
    },
    /// Pair divisibility, plus a comparison with a built group when one exists.
    Check {
        family: String,
        q: u64,
    },
}

/// Failure of a command, mapped onto an exit code.
enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity(_) | Error::SplitFailure(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(e) => e.into(),
            Err(e) => Failure::Usage(format!("{e:#}")),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx<'a> {
    json: bool,
    config: Config,
    jobs: usize,
    cache: Option<Cache>,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn spec(&self, text: &str) -> Result<GroupSpec, Failure> {
        dsl::parse_spec(text).map_err(|e| Failure::Usage(e.to_string()))
    }

    fn table(&self, spec: &GroupSpec) -> Result<CharacterTable, Failure> {
        let group = build(spec)?;
        match &self.cache {
            Some(c) => Ok(c.table(spec, &group, &self.config)?.0),
            None => Ok(character_table(&group, &self.config)?),
        }
    }

    fn emit<T: Serialize>(
        &mut self,
        value: &T,
        human: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
    ) -> Result<(), Failure> {
        if self.json {
            serde_json::to_writer_pretty(&mut *self.out, value)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(self.out)?;
        } else {
            human(self.out)?;
        }
        Ok(())
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut config = Config::default();
    if let Some(cap) = cli.cap {
        config.cap = cap;
    }
    config.dixon_prime_rank = cli.dixon_prime_rank;
    let cache = match Cache::resolve_dir(cli.cache_dir.as_deref())
        .map(Cache::open)
        .transpose()
    {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: cache directory: {e}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        config,
        jobs: cli.jobs,
        cache,
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(Failure::Math(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAIL
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Outcome {
    match command {
        Command::Chartab { spec } => chartab(ctx, &spec),
        Command::Codegrees { spec } => codegrees(ctx, &spec),
        Command::Qian { spec } => qian(ctx, &spec),
        Command::Fitting { spec } => fitting(ctx, &spec),
        Command::Lie { query } => lie(ctx, query),
        Command::Monolithic { spec, element } => monolithic(ctx, &spec, &element),
        Command::Corpus { file } => corpus(ctx, &file),
    }
}

fn chartab(ctx: &mut Ctx, text: &str) -> Outcome {
    let spec = ctx.spec(text)?;
    let table = ctx.table(&spec)?;
    let json = table.to_json(&spec.to_string())?;
    ctx.emit(&json, |w| {
        writeln!(
            w,
            "{}  order {}  {} classes",
            json.spec,
            json.order,
            json.classes.len()
        )?;
        let head: Vec<String> = json
            .classes
            .iter()
            .map(|c| format!("{}/{}", c.element_order, c.size))
            .collect();
        writeln!(w, "order/size\t{}", head.join("\t"))?;
        for (i, row) in json.irreducibles.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(w, "X.{}\t{}", i + 1, vals.join("\t"))?;
        }
        Ok(())
    })?;
    Ok(true)
}

#[derive(Serialize)]
struct CodegreeRow {
    character: usize,
    degree: u64,
    kernel_order: u64,
    codegree: u64,
}

fn codegrees(ctx: &mut Ctx, text: &str) -> Outcome {
    let spec = ctx.spec(text)?;
    let table = ctx.table(&spec)?;
    let rows: Vec<CodegreeRow> = table
        .codegrees()?
        .into_iter()
        .map(|c| CodegreeRow {
            character: c.character,
            degree: table.degrees()[c.character],
            kernel_order: c.kernel_order,
            codegree: c.codegree,
        })
        .collect();
    ctx.emit(&rows, |w| {
        writeln!(w, "char\tdegree\tkernel\tcodegree")?;
        for r in &rows {
            writeln!(
                w,
                "X.{}\t{}\t{}\t{}",
                r.character + 1,
                r.degree,
                r.kernel_order,
                r.codegree
            )?;
        }
        Ok(())
    })?;
    Ok(true)
}

fn qian(ctx: &mut Ctx, text: &str) -> Outcome {
    let spec = ctx.spec(text)?;
    let table = ctx.table(&spec)?;
    let report = qian_check(&table, &spec.to_string())?;
    ctx.emit(&report, |w| {
        writeln!(w, "{}: {}", report.spec, report.verdict)?;
        for x in &report.witnesses {
            writeln!(
                w,
                "  order {}: X.{} degree {} codegree {}",
                x.order,
                x.character + 1,
                x.degree,
                x.codegree
            )?;
        }
        for d in &report.failures {
            writeln!(w, "  order {d}: no witness")?;
        }
        Ok(())
    })?;
    Ok(report.verdict.passed())
}

fn fitting(ctx: &mut Ctx, text: &str) -> Outcome {
    let spec = ctx.spec(text)?;
    let table = ctx.table(&spec)?;
    let report = fitting_check_table(&table, &spec.to_string(), &ctx.config)?;
    ctx.emit(&report, |w| {
        writeln!(w, "{}  order {}", report.spec, report.order)?;
        writeln!(
            w,
            "  Fitting subgroup order {} ({})",
            report.fitting_order, report.label
        )?;
        writeln!(
            w,
            "  socle order {} ({:?})",
            report.socle.order, report.socle.kind
        )?;
        writeln!(w, "  codegree check: {}", report.verdict)
    })?;
    Ok(report.verdict.passed())
}

#[derive(Serialize)]
struct LieValue {
    family: String,
    q: u64,
    quantity: &'static str,
    value: String,
}

#[derive(Serialize)]
struct LieCheck {
    pair: codegree_core::lietables::PairDivisibility,
    #[serde(skip_serializing_if = "Option::is_none")]
    fidelity: Option<codegree_core::lietables::Fidelity>,
}

fn lie(ctx: &mut Ctx, query: LieQuery) -> Outcome {
    let (family, q, quantity, value) = match query {
        LieQuery::Order { family, q } => {
            let v = order_of(&family, q)?;
            (family, q, "order", v)
        }
        LieQuery::Alpha { family, q } => {
            let v = alpha_degree(&family, q)?;
            (family, q, "alpha", v)
        }
        LieQuery::Beta { family, q } => {
            let v = beta_degree(&family, q)?;
            (family, q, "beta", v)
        }
        LieQuery::Check { family, q } => return lie_check(ctx, &family, q),
    };
    let v = LieValue {
        family,
        q,
        quantity,
        value: value.to_string(),
    };
    ctx.emit(&v, |w| writeln!(w, "{}", v.value))?;
    Ok(true)
}

fn lie_check(ctx: &mut Ctx, family: &str, q: u64) -> Outcome {
    let realization = default_realization(family, q)?;
    let (fidelity, exponent) = match &realization {
        Some(spec) => {
            let f = fidelity_check(family, q, spec, &ctx.config)?;
            let e = f.group_exponent;
            (Some(f), Some(e))
        }
        None => (None, None),
    };
    let pair = pair_divisibility_check(family, q, exponent)?;
    let ok = !matches!(pair.verdict, LieVerdict::Fail | LieVerdict::Inconclusive)
        && fidelity.as_ref().is_none_or(|f| f.passed);
    let report = LieCheck { pair, fidelity };
    ctx.emit(&report, |w| {
        let p = &report.pair;
        writeln!(
            w,
            "{}({}) row {}: order {}",
            p.family, p.param, p.row, p.order
        )?;
        writeln!(
            w,
            "  {} degree {}, {} degree {}",
            p.alpha_label, p.alpha_degree, p.beta_label, p.beta_degree
        )?;
        writeln!(
            w,
            "  product {} against {} ({:?}): {:?}",
            p.product, p.target, p.target_source, p.verdict
        )?;
        if let Some(f) = &report.fidelity {
            writeln!(
                w,
                "  built {}: order {}, exponent {}, {}",
                f.realization,
                f.group_order,
                f.group_exponent,
                if f.passed {
                    "consistent"
                } else {
                    "inconsistent"
                }
            )?;
        }
        Ok(())
    })?;
    Ok(ok)
}

fn monolithic(ctx: &mut Ctx, text: &str, element: &str) -> Outcome {
    let spec = ctx.spec(text)?;
    let group = build(&spec)?;
    let elements: Vec<Permutation> = if element.trim() == "all" {
        conjugacy_classes(&group, ctx.config.cap)?.representatives
    } else {
        let g = Permutation::parse_cycles(group.degree(), element)?;
        group.require_member(&g)?;
        vec![g]
    };
    let config = ctx.config.clone();
    let mut mctx = MonolithicContext::new(&group, &config)?;
    let scenarios = elements
        .iter()
        .map(|g| mctx.scenario(g))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = scenarios.iter().all(|s| s.verdict.passed());
    ctx.emit(&scenarios, |w| {
        for s in &scenarios {
            writeln!(
                w,
                "{} (order {}): {}",
                s.element, s.element_order, s.verdict
            )?;
            writeln!(
                w,
                "  factor orbits {:?}, r = {}, o(g^r) = {}",
                s.factor_orbits, s.r, s.order_g_r
            )?;
            for (name, c) in [("witness", &s.witness), ("h = 0 witness", &s.h0_witness)] {
                match c {
                    Some(c) => writeln!(
                        w,
                        "  {name}: lambda {} degree {}, h = {}, inertia order {}",
                        c.lambda + 1,
                        c.lambda_degree,
                        c.h,
                        c.inertia_order
                    )?,
                    None => writeln!(w, "  {name}: none")?,
                }
            }
            for f in &s.flags {
                writeln!(w, "  note: {f}")?;
            }
        }
        Ok(())
    })?;
    Ok(ok)
}

fn corpus(ctx: &mut Ctx, file: &std::path::Path) -> Outcome {
    let text = std::fs::read_to_string(file)?;
    let specs = dsl::parse_corpus(&text)
        .map_err(|(line, e)| Failure::Usage(format!("{}:{line}: {e}", file.display())))?;
    let config = ctx.config.clone();
    let cache = ctx.cache.as_ref();
    let run = corpus_run_with(&specs, &config, ctx.jobs, |spec| {
        let group = build(spec)?;
        match cache {
            Some(c) => c.table(spec, &group, &config).map(|(t, _)| t).map_err(|e| {
                match e.downcast::<Error>() {
                    Ok(e) => e,
                    Err(e) => Error::Hypothesis(format!("cache: {e:#}")),
                }
            }),
            None => character_table(&group, &config),
        }
    })?;
    ctx.emit(&run, |w| {
        for e in &run.entries {
            match (&e.report, &e.error) {
                (Some(r), _) => writeln!(w, "{}\t{}\t{}", r.verdict, e.spec, r.label)?,
                (None, Some(err)) => writeln!(w, "error\t{}\t{err}", e.spec)?,
                (None, None) => {}
            }
        }
        let s = &run.summary;
        writeln!(
            w,
            "{} groups: {} passed, {} failed, {} errors",
            s.total, s.passed, s.failed, s.errors
        )
    })?;
    if run.summary.errors > 0 {
        return Err(Failure::Usage(format!(
            "{} corpus entries could not be checked",
            run.summary.errors
        )));
    }
    Ok(run.summary.failed == 0)
}

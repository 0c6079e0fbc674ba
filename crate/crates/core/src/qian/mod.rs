//! Codegree divisibility checks: for every element order `d` of `G` there
//! should be an irreducible character whose codegree `|G : ker chi| / chi(1)`
//! is a multiple of `d`.

mod monolithic;
mod simple;

use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{build, GroupSpec};
use crate::chartab::{character_table, CharacterTable, TableJson};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, PermGroup};

pub use monolithic::{
    check_candidate, monolithic_witness_check, CandidateCheck, MonolithicContext,
    MonolithicScenario,
};
pub use simple::{
    exception_check, pair_check, per_element_check, AutFilter, ExceptionReport, PairCheckResult,
    PairWitness, PerElementResult, VerificationLevel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.passed() { "pass" } else { "fail" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub order: u64,
    pub character: usize,
    pub degree: u64,
    pub codegree: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QianReport {
    pub spec: String,
    pub verdict: Verdict,
    pub element_orders: Vec<u64>,
    pub witnesses: Vec<Witness>,
    /// Element orders with no witness.
    pub failures: Vec<u64>,
    pub flags: Vec<String>,
    /// The full table, attached whenever the verdict is a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<TableJson>,
}

/// For each non-trivial element order, the first character (in table order,
/// so by increasing degree) whose codegree it divides.
pub fn qian_check(table: &CharacterTable, spec: &str) -> Result<QianReport> {
    let codegrees = table.codegrees()?;
    let element_orders = table.classes().distinct_orders();
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for &d in element_orders.iter().filter(|&&d| d > 1) {
        match codegrees.iter().find(|c| c.codegree % d == 0) {
            Some(c) => witnesses.push(Witness {
                order: d,
                character: c.character,
                degree: table.degrees()[c.character],
                codegree: c.codegree,
            }),
            None => failures.push(d),
        }
    }
    let verdict = Verdict::from_bool(failures.is_empty());
    let mut flags = Vec::new();
    let audit = if verdict.passed() {
        None
    } else {
        flags.push("no witness for some element order; full table attached".into());
        Some(table.to_json(spec)?)
    };
    Ok(QianReport {
        spec: spec.to_string(),
        verdict,
        element_orders,
        witnesses,
        failures,
        flags,
        audit,
    })
}

/// Builds `spec`, tabulates it and runs [`qian_check`].
pub fn qian_check_spec(spec: &GroupSpec, config: &Config) -> Result<QianReport> {
    let group = build(spec)?;
    let table = character_table(&group, config)?;
    qian_check(&table, &spec.to_string())
}

/// Shape of the socle: products of elementary abelian groups, of non-abelian
/// simple groups, or both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SocleKind {
    Trivial,
    Solvable,
    NonSolvable,
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleSummary {
    pub kind: SocleKind,
    pub order: String,
    /// Orders of the minimal normal subgroups, with whether each is abelian.
    pub minimal_normal: Vec<(String, bool)>,
}

pub fn socle_summary(group: &PermGroup, config: &Config) -> Result<SocleSummary> {
    let classes = conjugacy_classes(group, config.cap)?;
    let mins = group.minimal_normal_subgroups(&classes);
    let abelian: Vec<bool> = mins.iter().map(PermGroup::is_abelian).collect();
    let kind = match (abelian.iter().any(|&a| a), abelian.iter().any(|&a| !a)) {
        (false, false) => SocleKind::Trivial,
        (true, false) => SocleKind::Solvable,
        (false, true) => SocleKind::NonSolvable,
        (true, true) => SocleKind::Mixed,
    };
    Ok(SocleSummary {
        kind,
        order: group.socle(&classes).order().to_string(),
        minimal_normal: mins
            .iter()
            .zip(&abelian)
            .map(|(m, &a)| (m.order().to_string(), a))
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FittingReport {
    pub spec: String,
    pub order: String,
    pub fitting_order: String,
    /// True when the Fitting subgroup is trivial.
    pub within_hypothesis: bool,
    pub solvable: bool,
    pub socle: SocleSummary,
    pub qian: QianReport,
    pub verdict: Verdict,
    pub label: String,
}

/// Runs the codegree check and classifies the group by its Fitting subgroup.
/// Groups with a non-trivial Fitting subgroup are still checked, but labeled
/// as outside the hypothesis.
pub fn fitting_check(group: &PermGroup, spec: &str, config: &Config) -> Result<FittingReport> {
    fitting_check_table(&character_table(group, config)?, spec, config)
}

/// [`fitting_check`] on an already computed table.
pub fn fitting_check_table(
    table: &CharacterTable,
    spec: &str,
    config: &Config,
) -> Result<FittingReport> {
    let group = table.group();
    let classes = table.classes();
    let fitting = group.fitting_subgroup(classes);
    let within = fitting.is_trivial();
    let solvable = group.is_solvable();
    let qian = qian_check(table, spec)?;
    let label = match (within, solvable) {
        (true, _) => "trivial Fitting subgroup",
        (false, true) => "outside hypothesis (solvable)",
        (false, false) => "outside hypothesis",
    };
    Ok(FittingReport {
        spec: spec.to_string(),
        order: group.order().to_string(),
        fitting_order: fitting.order().to_string(),
        within_hypothesis: within,
        solvable,
        socle: socle_summary(group, config)?,
        verdict: qian.verdict,
        qian,
        label: label.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<FittingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub within_hypothesis: usize,
    pub outside_hypothesis: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusRun {
    pub entries: Vec<CorpusEntry>,
    pub summary: CorpusSummary,
}

impl CorpusRun {
    /// True when every group was checked and passed.
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}

/// Checks every spec, one group per task on a pool of `jobs` threads
/// (`0` means the rayon default). Entries keep the input order.
pub fn corpus_run(specs: &[GroupSpec], config: &Config, jobs: usize) -> Result<CorpusRun> {
    corpus_run_with(specs, config, jobs, |spec| {
        character_table(&build(spec)?, config)
    })
}

/// [`corpus_run`] with tables supplied by `tables`, e.g. from a cache.
pub fn corpus_run_with<F>(
    specs: &[GroupSpec],
    config: &Config,
    jobs: usize,
    tables: F,
) -> Result<CorpusRun>
where
    F: Fn(&GroupSpec) -> Result<CharacterTable> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Hypothesis(format!("thread pool: {e}")))?;
    let entries: Vec<CorpusEntry> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let name = spec.to_string();
                let result = tables(spec).and_then(|t| fitting_check_table(&t, &name, config));
                match result {
                    Ok(r) => CorpusEntry {
                        spec: name,
                        report: Some(r),
                        error: None,
                    },
                    Err(e) => CorpusEntry {
                        spec: name,
                        report: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    let mut summary = CorpusSummary {
        total: entries.len(),
        ..Default::default()
    };
    for e in &entries {
        match &e.report {
            None => summary.errors += 1,
            Some(r) => {
                if r.verdict.passed() {
                    summary.passed += 1;
                } else {
                    summary.failed += 1;
                }
                if r.within_hypothesis {
                    summary.within_hypothesis += 1;
                } else {
                    summary.outside_hypothesis += 1;
                }
            }
        }
    }
    Ok(CorpusRun { entries, summary })
}

/// Whether `order` is `|PSL(2, 3^f)|` for an odd `f >= 3`. Such an order
/// determines the simple group.
pub fn is_psl2_odd_power_of_three(order: u64) -> bool {
    let mut q: u64 = 27;
    while let Some(o) = q.checked_mul(q * q - 1).map(|x| x / 2) {
        if o == order {
            return true;
        }
        if o > order {
            return false;
        }
        q = match q.checked_mul(9) {
            Some(v) if v < 1 << 21 => v,
            _ => return false,
        };
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::GroupSpec;

    #[test]
    fn exceptional_orders() {
        assert!(is_psl2_odd_power_of_three(9828));
        assert!(!is_psl2_odd_power_of_three(360));
        assert!(!is_psl2_odd_power_of_three(0));
        assert!(!is_psl2_odd_power_of_three(u64::MAX));
    }

    #[test]
    fn failing_report_carries_audit() {
        let group = build(&GroupSpec::Sym(3)).unwrap();
        let table = character_table(&group, &Config::default()).unwrap();
        let report = qian_check(&table, "Sym(3)").unwrap();
        assert!(report.verdict.passed());
        assert!(report.audit.is_none());
        let json = serde_json::to_string(&report).unwrap();
        assert!(!json.contains("audit"));
        assert!(!json.contains("prime"));
    }
}

//! Sweep plans, the built-in suite, concurrent execution and reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Check, RunConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::crosscheck::ShadowFamily;
use crate::error::{Error, Result};
use crate::padic::ClassicalId;
use crate::verifier::proof_steps::ratio_shift_js;
use crate::verifier::{params, params_string, CheckResult, CheckStatus, ParamValue, ParametricFamily, Params, ProofStep, TheoremId};

/// Name of the built-in acceptance suite.
pub const DEFAULT_SUITE: &str = "paper-default";

/// Values one parameter ranges over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Range {
    Value(i64),
    List(Vec<i64>),
    /// Inclusive on both ends.
    Span { from: i64, to: i64 },
}

impl Range {
    pub fn values(&self) -> Vec<i64> {
        match self {
            Range::Value(v) => vec![*v],
            Range::List(v) => v.clone(),
            Range::Span { from, to } => (*from..=*to).collect(),
        }
    }

    /// Parse `7`, `3..9` (inclusive) or `2,5,8`.
    pub fn parse(s: &str) -> Result<Range> {
        let bad = || Error::InvalidArgument(format!("bad range `{s}`"));
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        if let Some((a, b)) = s.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            return Ok(Range::Span { from: num(a)?, to: num(b)? });
        }
        if s.contains(',') {
            return s.split(',').map(num).collect::<Result<Vec<_>>>().map(Range::List);
        }
        num(s).map(Range::Value)
    }
}

/// One check of a plan. `ranges` expand as a cartesian product; `points`
/// are listed explicitly. For `KM`, the ranges `m` and `n_j` expand into
/// every list of length `m` with entries from `n_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub check: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ranges: BTreeMap<String, Range>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Params>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

/// What a sweep runs and how.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPlan {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(default)]
    pub entries: Vec<PlanEntry>,
    #[serde(default)]
    pub fast_mode: bool,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub format: Format,
}

impl Default for SweepPlan {
    fn default() -> Self {
        SweepPlan {
            suite: None,
            entries: Vec::new(),
            fast_mode: false,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            format: Format::Json,
        }
    }
}

/// A single check invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub check: Check,
    pub args: Params,
}

impl Instance {
    pub fn new(check: Check, args: Params) -> Self {
        Instance { check, args }
    }
}

impl SweepPlan {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            fast_mode: self.fast_mode,
            seed: self.seed,
            trials: self.trials,
        }
    }

    /// All instances of the plan, suite first. Unknown check ids, unknown
    /// suites and malformed ranges are errors.
    pub fn expand(&self) -> Result<Vec<Instance>> {
        let mut out = match self.suite.as_deref() {
            None => Vec::new(),
            Some(DEFAULT_SUITE) => default_suite(),
            Some(other) => return Err(Error::InvalidArgument(format!("unknown suite `{other}`"))),
        };
        for entry in &self.entries {
            out.extend(expand_entry(entry)?);
        }
        Ok(out)
    }
}

fn expand_entry(entry: &PlanEntry) -> Result<Vec<Instance>> {
    let check = Check::from_id(&entry.check)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown check `{}`", entry.check)))?;
    let mut out: Vec<Instance> = entry.points.iter().map(|p| Instance::new(check, p.clone())).collect();
    if entry.ranges.is_empty() {
        return Ok(out);
    }
    let mut ranges = entry.ranges.clone();
    let mut grids: Vec<Params> = vec![Params::new()];
    if check == Check::KarlssonMinton && !ranges.contains_key("n_list") {
        let ms = ranges.remove("m").map(|r| r.values()).unwrap_or_else(|| vec![1]);
        let njs = ranges.remove("n_j").map(|r| r.values()).unwrap_or_else(|| vec![0]);
        if ms.iter().any(|&m| !(0..=8).contains(&m)) || njs.iter().any(|&v| v < 0) {
            return Err(Error::InvalidArgument("KM needs 0 <= m <= 8 and n_j >= 0".into()));
        }
        grids = ms
            .iter()
            .flat_map(|&m| lists(m as usize, &njs))
            .map(|l| {
                let mut p = Params::new();
                p.insert("n_list".into(), ParamValue::List(l));
                p
            })
            .collect();
    }
    for (name, range) in &ranges {
        let vals = range.values();
        grids = grids
            .into_iter()
            .flat_map(|g| {
                vals.iter().map(move |&v| {
                    let mut g = g.clone();
                    g.insert(name.clone(), ParamValue::Int(v));
                    g
                })
            })
            .collect();
    }
    out.extend(grids.into_iter().map(|g| Instance::new(check, g)));
    Ok(out)
}

/// All lists of length `m` over `vals`, in lexicographic order of indices.
fn lists(m: usize, vals: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|l| {
                vals.iter().map(move |&v| {
                    let mut l = l.clone();
                    l.push(v);
                    l
                })
            })
            .collect();
    }
    out
}

fn dn(check: Check, pts: &[(i64, i64)]) -> impl Iterator<Item = Instance> + '_ {
    pts.iter().map(move |&(d, n)| Instance::new(check, params(&[("d", d), ("n", n)])))
}

fn drn(check: Check, pts: &[(i64, i64, i64)]) -> impl Iterator<Item = Instance> + '_ {
    pts.iter()
        .map(move |&(d, r, n)| Instance::new(check, params(&[("d", d), ("r", r), ("n", n)])))
}

/// `(d, n)` grid of each non-parametric congruence in the built-in suite;
/// `r` is 1 unless the theorem takes it.
pub fn theorem_grid(id: TheoremId) -> Vec<(i64, i64, i64)> {
    let with_r1 = |v: &[(i64, i64)]| v.iter().map(|&(d, n)| (d, 1, n)).collect::<Vec<_>>();
    match id {
        TheoremId::Eq13 => with_r1(&[(2, 3), (2, 5), (3, 4), (3, 7), (4, 5), (5, 6)]),
        TheoremId::Eq14 => with_r1(&[(3, 5), (3, 8), (5, 9), (5, 14)]),
        TheoremId::Eq15 => with_r1(&[(4, 3), (4, 7), (4, 11), (6, 5)]),
        TheoremId::Thm11 => with_r1(&[(4, 7), (4, 11), (6, 11)]),
        TheoremId::Thm12 => with_r1(&[(3, 2), (3, 5), (3, 8), (5, 4), (5, 9)]),
        TheoremId::Lemma21 => LEMMA_GRID.to_vec(),
        TheoremId::Lemma21R1 => vec![(4, 1, 7), (5, 1, 9)],
        TheoremId::Thm41 => {
            let mut v = LEMMA_GRID.to_vec();
            v.extend([(2, 1, 3), (2, 1, 5), (2, 1, 7), (3, 1, 5), (3, 1, 8)]);
            v
        }
        TheoremId::Thm42 => vec![
            (2, 1, 3),
            (3, 2, 4),
            (3, 2, 7),
            (4, 3, 5),
            (5, 4, 6),
            (3, 1, 2),
            (4, 1, 3),
            (5, 2, 3),
            (7, 5, 2),
        ],
    }
}

/// `(d, r, n)` grid of the vanishing lemma, reused by the proof steps.
pub const LEMMA_GRID: [(i64, i64, i64); 6] = [(4, 1, 7), (5, 1, 9), (5, 2, 8), (5, 2, 13), (7, 2, 12), (7, 3, 11)];

pub fn parametric_grid(f: ParametricFamily) -> &'static [(i64, i64, i64)] {
    match f {
        ParametricFamily::P1_24 => &[(4, 1, 7), (5, 2, 8), (7, 2, 12)],
        ParametricFamily::P2_25 => &[(5, 1, 9), (7, 3, 11)],
        ParametricFamily::P3_32 => &[(5, 1, 4), (5, 1, 9), (7, 1, 6)],
        ParametricFamily::P4_33 => &[(3, 1, 2), (3, 1, 5), (3, 1, 8)],
        ParametricFamily::P5_43 => &[(4, 1, 7), (5, 2, 8)],
        ParametricFamily::P6_44 => &[(2, 1, 3), (3, 2, 4), (4, 3, 5)],
        ParametricFamily::P7_45 => &[(5, 1, 4), (5, 1, 9), (7, 3, 4), (7, 3, 11)],
        ParametricFamily::P8_46 => &[(3, 1, 2), (3, 1, 5), (5, 3, 2), (5, 3, 7)],
    }
}

pub const DIVISIBILITY_GRID: [(i64, i64); 6] = [(2, 3), (2, 5), (3, 5), (3, 8), (4, 7), (5, 9)];
pub const PREFACTOR_GRID: [(i64, i64); 3] = [(2, 9), (3, 8), (4, 15)];
pub const SHADOW_GRID: [(i64, i64, i64); 3] = [(3, 1, 5), (4, 1, 7), (5, 2, 13)];

/// Proof-step instances over the lemma grid with `k <= 6`.
pub fn proof_step_grid() -> Vec<Instance> {
    let mut out = Vec::new();
    for step in ProofStep::ALL {
        let check = Check::Step(step);
        match step {
            ProofStep::PrefactorDivisibility => out.extend(dn(check, &PREFACTOR_GRID)),
            ProofStep::BracketFactorization => {
                out.extend((2..=30).map(|n| Instance::new(check, params(&[("n", n)]))))
            }
            _ => {
                let mut seen = Vec::new();
                for (d, r, n) in LEMMA_GRID {
                    let js = match step {
                        ProofStep::RatioShiftGeneric | ProofStep::RatioShiftCentral => ratio_shift_js(step, d, r),
                        _ => vec![0],
                    };
                    for j in js {
                        for k in 0..=6 {
                            let all = [("d", d), ("r", r), ("n", n), ("j", j), ("k", k)];
                            let pairs: Vec<(&str, i64)> =
                                all.into_iter().filter(|(name, _)| step.arg_names().contains(name)).collect();
                            let p = params(&pairs);
                            if !seen.contains(&p) {
                                seen.push(p.clone());
                                out.push(Instance::new(check, p));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn classical(id: ClassicalId, pts: &[&[i64]]) -> Vec<Instance> {
    pts.iter()
        .map(|vals| {
            let pairs: Vec<(&str, i64)> = id.arg_names().iter().copied().zip(vals.iter().copied()).collect();
            Instance::new(Check::Classical(id), params(&pairs))
        })
        .collect()
}

/// p-adic grid of the built-in suite.
pub fn classical_grid() -> Vec<Instance> {
    let cor_i: &[&[i64]] = &[&[4, 1, 7], &[4, 1, 11], &[5, 2, 13], &[5, 2, 23], &[7, 2, 19]];
    let cor_ii: &[&[i64]] = &[&[3, 1, 5], &[3, 1, 11], &[4, 3, 5], &[4, 3, 13], &[5, 4, 11]];
    let primes: Vec<[i64; 1]> = (3..=47)
        .filter(|&p: &i64| crate::cyclotomic::is_prime(p as u64))
        .map(|p| [p])
        .collect();
    let primes: Vec<&[i64]> = primes.iter().map(|p| &p[..]).collect();
    let mut out = classical(ClassicalId::Rv11, &primes);
    out.extend(classical(
        ClassicalId::Deines12,
        &[&[3, 7], &[3, 13], &[4, 5], &[4, 13], &[5, 11], &[6, 7]],
    ));
    out.extend(classical(ClassicalId::Cor41I, cor_i));
    out.extend(classical(ClassicalId::Cor41II, cor_ii));
    let union: Vec<&[i64]> = cor_i.iter().chain(cor_ii).copied().collect();
    out.extend(classical(ClassicalId::GammaFactorial, &union));
    out.extend(classical(
        ClassicalId::WltIntegrality,
        &[&[2, 3], &[2, 9], &[3, 5], &[3, 11], &[4, 7]],
    ));
    out
}

/// Cross-check instances: `r = 1` collapse on the single-parameter grids,
/// `q = 1` shadows, and incremental-vs-oracle sums for `n <= 10`.
pub fn crosscheck_grid() -> Vec<Instance> {
    let mut out = Vec::new();
    let mut collapse: Vec<(i64, i64)> = [TheoremId::Eq14, TheoremId::Eq15, TheoremId::Thm11, TheoremId::Thm12]
        .into_iter()
        .flat_map(|t| theorem_grid(t).into_iter().map(|(d, _, n)| (d, n)))
        .collect();
    collapse.sort();
    collapse.dedup();
    out.extend(dn(Check::ROneCollapse, &collapse));
    for fam in [ShadowFamily::Thm41, ShadowFamily::Thm42] {
        out.extend(SHADOW_GRID.iter().map(|&(d, r, p)| {
            Instance::new(Check::QOneShadow(fam), params(&[("d", d), ("r", r), ("p", p)]))
        }));
    }
    for t in TheoremId::ALL {
        let small: Vec<_> = theorem_grid(t).into_iter().filter(|&(_, _, n)| n <= 10).collect();
        if t.takes_r() {
            out.extend(drn(Check::LhsOracle(t), &small));
        } else {
            let pts: Vec<(i64, i64)> = small.iter().map(|&(d, _, n)| (d, n)).collect();
            out.extend(dn(Check::LhsOracle(t), &pts).collect::<Vec<_>>());
        }
    }
    out
}

/// Karlsson-Minton lists with `m <= 3` and entries `<= 4`.
pub fn km_grid() -> Vec<Instance> {
    let entry = PlanEntry {
        check: "KM".into(),
        ranges: [("m".to_string(), Range::Span { from: 1, to: 3 }), ("n_j".to_string(), Range::Span { from: 0, to: 4 })]
            .into_iter()
            .collect(),
        points: Vec::new(),
    };
    expand_entry(&entry).expect("static grid")
}

/// The full built-in acceptance suite.
pub fn default_suite() -> Vec<Instance> {
    let mut out = Vec::new();
    for t in TheoremId::ALL {
        let grid = theorem_grid(t);
        if t.takes_r() {
            out.extend(drn(Check::Theorem(t), &grid));
        } else {
            let pts: Vec<(i64, i64)> = grid.iter().map(|&(d, _, n)| (d, n)).collect();
            out.extend(dn(Check::Theorem(t), &pts).collect::<Vec<_>>());
        }
    }
    out.extend(dn(Check::Divisibility, &DIVISIBILITY_GRID));
    for f in ParametricFamily::ALL {
        out.extend(drn(Check::Parametric(f), parametric_grid(f)));
    }
    out.extend(km_grid());
    out.extend((1..=30).map(|n| Instance::new(Check::QBinomial, params(&[("n", n)]))));
    out.extend(proof_step_grid());
    out.extend(classical_grid());
    out.extend(crosscheck_grid());
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(results: &[CheckResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                CheckStatus::Holds => s.holds += 1,
                CheckStatus::Fails => s.fails += 1,
                CheckStatus::SkippedPrecondition => s.skipped += 1,
            }
        }
        s
    }
}

/// Output of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub plan: SweepPlan,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
    pub total_elapsed_ms: f64,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.summary.fails > 0
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)
    }

    /// Columns `id, params, status, elapsed_ms`.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["id", "params", "status", "elapsed_ms"])?;
        for r in &self.results {
            out.write_record([
                r.id.clone(),
                params_string(&r.params),
                r.status.to_string(),
                format!("{:.3}", r.elapsed_ms),
            ])?;
        }
        out.flush()
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> std::io::Result<()> {
        match format {
            Format::Json => self.write_json(w),
            Format::Csv => self.write_csv(w),
        }
    }
}

/// Run instances concurrently and return results sorted by id, then
/// parameters. Argument errors surface before any check runs.
pub fn run_instances(instances: &[Instance], cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    for inst in instances {
        validate(inst)?;
    }
    let mut results: Vec<CheckResult> = instances
        .par_iter()
        .map(|inst| inst.check.run(&inst.args, cfg))
        .collect::<Result<_>>()?;
    results.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
    Ok(results)
}

fn validate(inst: &Instance) -> Result<()> {
    let c = inst.check;
    for name in c.arg_names() {
        let optional_r = *name == "r" && matches!(c, Check::LhsOracle(_));
        if !inst.args.contains_key(*name) && !optional_r {
            return Err(Error::InvalidArgument(format!("{} needs `{name}`", c.id())));
        }
    }
    for key in inst.args.keys() {
        if !c.arg_names().contains(&key.as_str()) && !c.optional_args().contains(&key.as_str()) {
            return Err(Error::InvalidArgument(format!("{} does not take `{key}`", c.id())));
        }
    }
    Ok(())
}

/// Expand and execute a plan.
pub fn run_sweep(plan: &SweepPlan) -> Result<Report> {
    let instances = plan.expand()?;
    run_plan_instances(plan, &instances)
}

/// Execute already-expanded instances of `plan`.
pub fn run_plan_instances(plan: &SweepPlan, instances: &[Instance]) -> Result<Report> {
    let start = Instant::now();
    let results = run_instances(instances, &plan.config())?;
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        plan: plan.clone(),
        summary: Summary::of(&results),
        results,
        total_elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(Range::parse("7").unwrap().values(), vec![7]);
        assert_eq!(Range::parse("3..5").unwrap().values(), vec![3, 4, 5]);
        assert_eq!(Range::parse("3..=4").unwrap().values(), vec![3, 4]);
        assert_eq!(Range::parse("2,5").unwrap().values(), vec![2, 5]);
        assert!(Range::parse("x").is_err());
    }

    #[test]
    fn km_entry_expands_to_all_lists() {
        assert_eq!(km_grid().len(), 5 + 25 + 125);
    }

    #[test]
    fn empty_plan_gives_empty_report() {
        let rep = run_sweep(&SweepPlan::default()).unwrap();
        assert!(rep.results.is_empty());
        assert_eq!(rep.summary, Summary::default());
    }

    #[test]
    fn suite_validates() {
        for inst in default_suite() {
            validate(&inst).unwrap();
        }
    }

    #[test]
    fn results_are_sorted() {
        let plan = SweepPlan {
            entries: vec![PlanEntry {
                check: "thm12".into(),
                ranges: [("d".to_string(), Range::Value(3)), ("n".to_string(), Range::List(vec![8, 2, 5]))]
                    .into_iter()
                    .collect(),
                points: Vec::new(),
            }],
            ..SweepPlan::default()
        };
        let rep = run_sweep(&plan).unwrap();
        let ns: Vec<String> = rep.results.iter().map(|r| params_string(&r.params)).collect();
        assert_eq!(ns, ["d=3;n=2", "d=3;n=5", "d=3;n=8"]);
        assert_eq!(rep.summary.holds, 3);
    }
}

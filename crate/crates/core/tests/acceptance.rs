//! Acceptance suite. Runs the built-in `paper-default` grid in exact and in
//! fast mode plus the mutation harness, and prints one line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use qsupercong::catalog::{Check, RunConfig};
use qsupercong::crosscheck::{negative_control, MutationTarget};
use qsupercong::sweep::{default_suite, parametric_grid, run_instances, theorem_grid};
use qsupercong::verifier::{params_string, CheckResult, CheckStatus, ParametricFamily, Params, TheoremId};

struct Criterion {
    label: &'static str,
    total: usize,
    failures: Vec<String>,
}

impl Criterion {
    fn new(label: &'static str) -> Self {
        Criterion {
            label,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_holds(&mut self, r: &CheckResult) {
        self.expect(r.holds(), || describe(r));
    }

    fn passed(&self) -> bool {
        self.total > 0 && self.failures.is_empty()
    }
}

fn describe(r: &CheckResult) -> String {
    let extra = r.witness.as_deref().or(r.note.as_deref()).unwrap_or("");
    format!("{} {} {} {}", r.id, params_string(&r.params), r.status, extra)
}

fn criterion_of(check: Check) -> usize {
    match check {
        Check::Theorem(_) => 1,
        Check::Divisibility => 2,
        Check::Parametric(_) => 3,
        Check::KarlssonMinton => 4,
        Check::QBinomial => 5,
        Check::Step(_) => 6,
        Check::Classical(_) => 7,
        Check::QOneShadow(_) | Check::ROneCollapse | Check::LhsOracle(_) => 8,
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut crit: Vec<Criterion> = [
        "1 congruence grid mod Phi_n^2",
        "2 divisibility by [n]^2",
        "3 parametric checks at a = q^{+-n}",
        "4 Karlsson-Minton, m <= 3, n_j <= 4, 5 trials",
        "5 q-binomial vanishing, n <= 30",
        "6 proof-step catalog",
        "7 p-adic grid mod p^2",
        "8 cross-checks and fast-mode agreement",
        "9 negative control (mutated closed forms fail)",
    ]
    .into_iter()
    .map(Criterion::new)
    .collect();

    let suite = default_suite();
    let by_id: BTreeMap<String, Check> = suite.iter().map(|i| (i.check.id(), i.check)).collect();

    let exact = run_instances(&suite, &RunConfig::default()).expect("suite arguments are valid");
    for r in &exact {
        let c = criterion_of(by_id[&r.id]);
        crit[c - 1].expect_holds(r);
    }

    let fast_cfg = RunConfig {
        fast_mode: true,
        ..RunConfig::default()
    };
    let fast = run_instances(&suite, &fast_cfg).expect("suite arguments are valid");
    let exact_status: BTreeMap<(&str, &Params), CheckStatus> =
        exact.iter().map(|r| ((r.id.as_str(), &r.params), r.status)).collect();
    for r in &fast {
        let want = exact_status.get(&(r.id.as_str(), &r.params)).copied();
        crit[7].expect(want == Some(r.status), || format!("fast mode: {} (exact {want:?})", describe(r)));
    }
    crit[7].expect(fast.len() == exact.len(), || "fast and exact result counts differ".into());

    let mut targets = Vec::new();
    for t in TheoremId::ALL {
        targets.extend(theorem_grid(t).into_iter().map(|(d, r, n)| MutationTarget::Theorem(t, d, r, n)));
    }
    for f in ParametricFamily::ALL {
        targets.extend(parametric_grid(f).iter().map(|&(d, r, n)| MutationTarget::Parametric(f, d, r, n)));
    }
    for o in negative_control(&targets) {
        crit[8].expect(o.caught(), || format!("{} with {:?}: {}", o.target.label(), o.mutation, o.result.status));
    }

    let mut all_ok = true;
    for c in &crit {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        println!("criterion {:<50} {verdict} ({}/{})", c.label, c.total - c.failures.len(), c.total);
        for f in c.failures.iter().take(10) {
            println!("    {f}");
        }
        all_ok &= c.passed();
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

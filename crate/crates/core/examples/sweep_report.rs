//! Build a sweep plan in code, run it on the worker pool and write the report
//! as JSON and CSV.

use std::collections::BTreeMap;

use qsupercong::sweep::{run_sweep, Format, PlanEntry, Range, SweepPlan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut thm42 = BTreeMap::new();
    thm42.insert("d".to_string(), Range::Span { from: 2, to: 5 });
    thm42.insert("r".to_string(), Range::Span { from: 1, to: 4 });
    thm42.insert("n".to_string(), Range::List(vec![2, 3, 4, 5, 6, 7]));

    let mut km = BTreeMap::new();
    km.insert("m".to_string(), Range::Span { from: 1, to: 2 });
    km.insert("n_j".to_string(), Range::Span { from: 0, to: 2 });

    let plan = SweepPlan {
        entries: vec![
            PlanEntry { check: "THM42".into(), ranges: thm42, points: Vec::new() },
            PlanEntry { check: "KM".into(), ranges: km, points: Vec::new() },
        ],
        seed: 7,
        ..SweepPlan::default()
    };
    println!("{} instances", plan.expand()?.len());
    let report = run_sweep(&plan)?;
    println!("{:?}", report.summary);

    let dir = std::env::temp_dir();
    let json = dir.join("qsupercong_report.json");
    let csv = dir.join("qsupercong_report.csv");
    report.write(Format::Json, std::fs::File::create(&json)?)?;
    report.write(Format::Csv, std::fs::File::create(&csv)?)?;
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(())
}

// Runs the bundled scenarios through the check suite and prints the
// verdicts; the JSON report is what the command-line tool writes.

use groupsamp::error::Result;
use groupsamp::harness::{bundled_configs, run, to_json, Command, RunOptions};

pub fn run_example() -> Result<bool> {
    let summary = run(Command::Verify, &bundled_configs(), &RunOptions::default())?;
    for r in &summary.reports {
        let failed = r.checks.iter().filter(|c| !c.pass).count();
        println!("{:<26} {} checks, {} failed", r.scenario, r.checks.len(), failed);
    }
    let json = to_json(&summary.reports[0])?;
    println!("{}", json.lines().take(8).collect::<Vec<_>>().join("\n"));
    Ok(summary.pass)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()?;
    Ok(())
}

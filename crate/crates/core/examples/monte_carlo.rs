//! A reproducible coverage experiment and its JSON report.

use hilbert_gauss::harness::{run_experiment, ExperimentConfig};
use hilbert_gauss::Result;

fn main() -> Result<()> {
    let config = ExperimentConfig::from_toml_str(
        r#"
kind = "coverage_known"
model = "wiener:128"
u = [4]
b = [[4, 1.4142135623730951]]
zeta = [[4, 0.3]]
alpha = 0.1
replicates = 20000
seed = 17
"#,
    )?;
    let report = run_experiment(&config)?;
    for check in &report.checks {
        println!(
            "{}: {:.4} (target {:.2}, +/- {:.4}) -> {}",
            check.name,
            check.estimate,
            check.target,
            check.tolerance,
            if check.pass { "pass" } else { "fail" }
        );
    }
    let mut again = run_experiment(&config)?;
    again.runtime_secs = report.runtime_secs;
    println!("same seed, same report: {}", again == report);
    println!("{}", report.to_json()?);
    Ok(())
}

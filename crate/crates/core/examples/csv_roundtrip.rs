//! Writes a small metrics CSV and reads it back the way a plotting tool would.

use fracbandit::agent::FmAgentConfig;
use fracbandit::report::{metrics_csv, parse_metrics_csv};
use fracbandit::sim::{run_experiment, Execution, ExperimentConfig, PolicyKind, PolicySpec, TaskGenerator};

fn main() -> fracbandit::Result<()> {
    let cfg = ExperimentConfig {
        n_tasks: 50,
        horizon: 5,
        master_seed: 1,
        generator: TaskGenerator::gaussian_testbed(4),
        policies: vec![
            PolicySpec::new("fm", PolicyKind::Fm(FmAgentConfig::default())),
            PolicySpec::new("uniform", PolicyKind::Uniform),
        ],
    };
    let text = metrics_csv(&run_experiment(&cfg, Execution::Serial)?)?;
    print!("{text}");
    let rows = parse_metrics_csv(&text)?;
    let last = rows.iter().rev().find(|r| r.policy == "fm").expect("fm rows");
    println!("fm at play {}: regret {}", last.play, last.avg_cum_regret);
    Ok(())
}

//! Median Elimination against the fractional-moment agent over long runs.

use fracbandit::agent::FmAgentConfig;
use fracbandit::baselines::mea_schedule;
use fracbandit::sim::{run_experiment, Execution, ExperimentConfig, PolicyKind, PolicySpec, StdSpec, TaskGenerator};

fn main() -> fracbandit::Result<()> {
    let cfg = ExperimentConfig {
        n_tasks: 100,
        horizon: 5000,
        master_seed: 42,
        generator: TaskGenerator::Gaussian { n_arms: 10, mean_mean: 0.0, mean_std: 1.0, std: StdSpec::Uniform([0.5, 1.5]) },
        policies: vec![
            PolicySpec::new("FM-probabilistic", PolicyKind::Fm(FmAgentConfig::default())),
            PolicySpec::new("MEA", PolicyKind::MedianElimination { eps: 0.95, delta: 0.95 }),
        ],
    };
    let explore: u64 = mea_schedule(10, 0.95, 0.95)?.iter().map(|p| p.total_pulls()).sum();
    println!("MEA needs {explore} exploration pulls before it commits");
    let metrics = run_experiment(&cfg, Execution::Parallel)?;
    for play in [100, 1000, 2500, 5000] {
        let row: Vec<String> = metrics
            .iter()
            .map(|m| format!("{} {:.1}", m.label, m.avg_cum_regret[play - 1]))
            .collect();
        println!("play {play:>4}: {}", row.join(", "));
    }
    Ok(())
}

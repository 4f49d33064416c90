//! Runs a TOML experiment and writes its metrics CSV.
//!
//! cargo run --release --example testbed -- [CONFIG] [OUT.csv] [TASKS]

use fracbandit::config::load_config;
use fracbandit::report::write_metrics_csv;
use fracbandit::sim::{run_experiment, Execution};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/default.toml").into());
    let out = args.next().unwrap_or_else(|| "metrics.csv".into());
    let mut cfg = load_config(&config)?;
    cfg.n_tasks = args.next().map(|t| t.parse()).transpose()?.unwrap_or(200);

    let metrics = run_experiment(&cfg, Execution::Parallel)?;
    println!("{:<20} {:>12} {:>10} {:>10}", "policy", "mean reward", "optimal", "regret");
    for m in &metrics {
        println!(
            "{:<20} {:>12.4} {:>10.3} {:>10.2}",
            m.label,
            m.mean_reward(),
            m.final_pct_optimal(),
            m.final_cum_regret()
        );
    }
    write_metrics_csv(&metrics, &out)?;
    println!("{} tasks x {} plays written to {out}", cfg.n_tasks, cfg.horizon);
    Ok(())
}

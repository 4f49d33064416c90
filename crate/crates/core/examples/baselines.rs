//! epsilon-greedy, SoftMax and Median Elimination on one Bernoulli task.

use fracbandit::agent::Agent;
use fracbandit::baselines::{mea_schedule, EpsilonGreedy, MedianElimination, Softmax};
use fracbandit::sim::{ArmDistribution, BanditTask};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn play(agent: &mut dyn Agent, task: &BanditTask, plays: usize) -> fracbandit::Result<(f64, Vec<u64>)> {
    let mut env = ChaCha8Rng::seed_from_u64(10);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut total = 0.0;
    let mut counts = vec![0; task.n_arms()];
    for _ in 0..plays {
        let arm = agent.select(&mut rng);
        let r = task.arms()[arm].pull(&mut env);
        agent.update(arm, r)?;
        total += r;
        counts[arm] += 1;
    }
    Ok((total, counts))
}

fn main() -> fracbandit::Result<()> {
    let task = BanditTask::new(
        [0.2, 0.5, 0.8, 0.4]
            .iter()
            .map(|&p| ArmDistribution::bernoulli_scaled(p, 1.0))
            .collect::<fracbandit::Result<_>>()?,
    )?;
    let plays = 3000;
    let mut agents: Vec<(&str, Box<dyn Agent>)> = vec![
        ("epsilon-greedy 0.1", Box::new(EpsilonGreedy::new(4, 0.1)?)),
        ("softmax 0.24", Box::new(Softmax::new(4, 0.24)?)),
        ("median elimination", Box::new(MedianElimination::new(4, 0.5, 0.5)?)),
    ];
    for (name, agent) in agents.iter_mut() {
        let (total, counts) = play(agent.as_mut(), &task, plays)?;
        let regret = plays as f64 * task.optimal_mean() - total;
        println!("{name:<20} regret {regret:>7.1}  pulls {counts:?}");
    }

    println!("median elimination phases for 4 arms, eps = delta = 0.5:");
    for phase in mea_schedule(4, 0.5, 0.5)? {
        println!("  {} arms x {} pulls", phase.survivors, phase.pulls_per_arm);
    }
    Ok(())
}

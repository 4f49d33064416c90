//! Drives the fractional-moment agent by hand on a three-armed Gaussian task.

use fracbandit::agent::{Agent, FmAgent, FmAgentConfig};
use fracbandit::select::selection_probabilities;
use fracbandit::sim::{ArmDistribution, BanditTask};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fracbandit::Result<()> {
    let task = BanditTask::new(vec![
        ArmDistribution::gaussian(0.2, 1.0)?,
        ArmDistribution::gaussian(1.0, 1.0)?,
        ArmDistribution::gaussian(0.6, 1.0)?,
    ])?;
    let config = FmAgentConfig::probabilistic(0.85, 0.01);
    let mut agent = FmAgent::new(task.n_arms(), config)?;
    let mut env = ChaCha8Rng::seed_from_u64(1);
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    for play in 1..=500 {
        let arm = agent.select(&mut rng);
        agent.update(arm, task.arms()[arm].pull(&mut env))?;
        if [3, 10, 50, 200, 500].contains(&play) {
            let state = agent.state().expect("every arm pulled");
            let probs = selection_probabilities(state, config.kappa)?;
            let pulls: Vec<u64> = agent.distributions().iter().map(|d| d.n()).collect();
            println!("play {play:>3}: pulls {pulls:?}, selection probabilities {probs:.3?}");
        }
    }
    Ok(())
}

//! Monte-Carlo check of the beta = 1 sample size: sample every arm l times,
//! pick the arm with the largest A_i, count how often it is not eps-optimal.

use fracbandit::bounds::{sample_size_beta1, Beta1SampleSpec};
use fracbandit::empirical::EmpiricalDistribution;
use fracbandit::preference::preference_vector;
use fracbandit::select::argmax_uniform_ties;
use fracbandit::sim::ArmDistribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fracbandit::Result<()> {
    let means = [0.9, 0.6, 0.5, 0.4, 0.3];
    let (eps, delta) = (0.25, 0.1);
    let l = sample_size_beta1(Beta1SampleSpec { eps, delta, n: means.len() })?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for per_arm in [4, 16, 64, l] {
        let trials = 2000;
        let mut bad = 0;
        for _ in 0..trials {
            let dists = means
                .iter()
                .map(|&p| {
                    let arm = ArmDistribution::bernoulli_scaled(p, 1.0)?;
                    EmpiricalDistribution::from_samples((0..per_arm).map(|_| arm.pull(&mut rng)))
                })
                .collect::<fracbandit::Result<Vec<_>>>()?;
            let pick = argmax_uniform_ties(preference_vector(&dists, 1.0)?.log_prefs(), &mut rng);
            bad += (means[pick] <= means[0] - eps) as u32;
        }
        println!("{per_arm:>4} pulls per arm: misselection rate {:.4}", bad as f64 / trials as f64);
    }
    println!("guarantee at l = {l}: rate <= {delta}");
    Ok(())
}

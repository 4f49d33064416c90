use rand::{Rng, RngCore};

use super::{check_eps, SampleMeans};
use crate::agent::Agent;
use crate::select::argmax_uniform_ties;
use crate::Result;

/// With probability `eps` a uniformly random arm, otherwise the argmax of
/// `estimates` with uniform tie-breaking.
pub fn epsilon_greedy_select<R: Rng + ?Sized>(estimates: &[f64], eps: f64, rng: &mut R) -> usize {
    assert!(!estimates.is_empty(), "no arms");
    if eps > 0.0 && rng.random::<f64>() < eps {
        rng.random_range(0..estimates.len())
    } else {
        argmax_uniform_ties(estimates, rng)
    }
}

#[derive(Debug, Clone)]
pub struct EpsilonGreedy {
    eps: f64,
    means: SampleMeans,
}

impl EpsilonGreedy {
    pub fn new(n_arms: usize, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        Ok(Self {
            eps,
            means: SampleMeans::new(n_arms)?,
        })
    }

    pub fn estimates(&self) -> &[f64] {
        self.means.means()
    }

    pub fn counts(&self) -> &[u64] {
        self.means.counts()
    }
}

impl Agent for EpsilonGreedy {
    fn n_arms(&self) -> usize {
        self.means.n_arms()
    }

    fn select(&mut self, rng: &mut dyn RngCore) -> usize {
        match self.means.next_unpulled() {
            Some(arm) => arm,
            None => epsilon_greedy_select(self.means.means(), self.eps, rng),
        }
    }

    fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        self.means.record(arm, reward)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn freq(draws: usize, n: usize, mut f: impl FnMut() -> usize) -> Vec<f64> {
        let mut c = vec![0usize; n];
        for _ in 0..draws {
            c[f()] += 1;
        }
        c.into_iter().map(|x| x as f64 / draws as f64).collect()
    }

    #[test]
    fn zero_eps_is_greedy() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            assert_eq!(epsilon_greedy_select(&[0.2, 0.7, 0.1], 0.0, &mut rng), 1);
        }
    }

    #[test]
    fn unit_eps_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = freq(10_000, 4, || epsilon_greedy_select(&[5.0, 0.0, 0.0, 0.0], 1.0, &mut rng));
        for p in f {
            assert!((p - 0.25).abs() <= 0.02, "{p}");
        }
    }

    #[test]
    fn mixed_selection_probability() {
        // 1 - eps + eps / 2
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = freq(100_000, 2, || epsilon_greedy_select(&[1.0, 0.0], 0.1, &mut rng));
        assert!((f[0] - 0.95).abs() <= 0.01, "{f:?}");
    }

    #[test]
    fn agent_warms_up_then_exploits() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut agent = EpsilonGreedy::new(3, 0.0).unwrap();
        for (expected, r) in [(0, 0.1), (1, 0.9), (2, 0.4)] {
            let arm = agent.select(&mut rng);
            assert_eq!(arm, expected);
            agent.update(arm, r).unwrap();
        }
        assert_eq!(agent.select(&mut rng), 1);
        assert!(EpsilonGreedy::new(3, -0.1).is_err());
    }
}

use rand::{Rng, RngCore};

use super::{check_tau, SampleMeans};
use crate::agent::Agent;
use crate::select::sample_categorical;
use crate::Result;

/// Boltzmann probabilities `exp(x_i / tau) / sum_j exp(x_j / tau)`, shifted
/// by the maximum before exponentiating.
pub fn softmax_probabilities(estimates: &[f64], tau: f64) -> Vec<f64> {
    let max = estimates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = estimates.iter().map(|&x| ((x - max) / tau).exp()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

pub fn softmax_select<R: Rng + ?Sized>(estimates: &[f64], tau: f64, rng: &mut R) -> usize {
    sample_categorical(&softmax_probabilities(estimates, tau), rng)
}

#[derive(Debug, Clone)]
pub struct Softmax {
    tau: f64,
    means: SampleMeans,
}

impl Softmax {
    pub fn new(n_arms: usize, tau: f64) -> Result<Self> {
        check_tau(tau)?;
        Ok(Self {
            tau,
            means: SampleMeans::new(n_arms)?,
        })
    }

    pub fn estimates(&self) -> &[f64] {
        self.means.means()
    }
}

impl Agent for Softmax {
    fn n_arms(&self) -> usize {
        self.means.n_arms()
    }

    fn select(&mut self, rng: &mut dyn RngCore) -> usize {
        match self.means.next_unpulled() {
            Some(arm) => arm,
            None => softmax_select(self.means.means(), self.tau, rng),
        }
    }

    fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        self.means.record(arm, reward)
    }
}

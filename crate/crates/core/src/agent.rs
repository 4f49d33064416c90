//! The select/update contract shared by every policy, and the
//! fractional-moment agent.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::accum::ExactSum;
use crate::empirical::EmpiricalDistribution;
use crate::preference::{check_beta, normalize_pair, PreferenceState};
use crate::select::{check_kappa, select_greedy, select_probabilistic};
use crate::{Error, Result};

/// A bandit policy driven one play at a time.
///
/// Callers alternate `select` and `update`; the calls must not overlap.
pub trait Agent: Send {
    fn n_arms(&self) -> usize;

    /// Chooses the next arm to pull.
    fn select(&mut self, rng: &mut dyn RngCore) -> usize;

    /// Feeds back the reward obtained from `arm`.
    fn update(&mut self, arm: usize, reward: f64) -> Result<()>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    Greedy,
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FmAgentConfig {
    pub beta: f64,
    pub selection: Selection,
    /// Uniform mixing weight for probabilistic selection.
    pub kappa: f64,
    /// Rewards are snapped to the nearest multiple of this width before they
    /// are stored. Off by default.
    pub bin_width: Option<f64>,
}

impl Default for FmAgentConfig {
    fn default() -> Self {
        Self {
            beta: 0.85,
            selection: Selection::Probabilistic,
            kappa: 0.01,
            bin_width: None,
        }
    }
}

impl FmAgentConfig {
    pub fn greedy(beta: f64) -> Self {
        Self {
            beta,
            selection: Selection::Greedy,
            ..Self::default()
        }
    }

    pub fn probabilistic(beta: f64, kappa: f64) -> Self {
        Self {
            beta,
            selection: Selection::Probabilistic,
            kappa,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_beta(self.beta)?;
        check_kappa(self.kappa)?;
        if let Some(w) = self.bin_width {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::param("bin_width", format!("must be finite and > 0, got {w}")));
            }
        }
        Ok(())
    }
}

/// Fractional-moment preference agent.
///
/// Pulls each arm once, then selects on `A_i` greedily or in proportion.
/// Every reward updates only row `m` and column `m` of the pairwise
/// preferences, by adding the new sample's gap terms against every other
/// arm's stored rewards; the exact accumulators keep the result identical to
/// a full recomputation.
#[derive(Debug, Clone)]
pub struct FmAgent {
    config: FmAgentConfig,
    dists: Vec<EmpiricalDistribution>,
    /// Row-major numerators `sum c_k c_l (r_k - s_l)^beta` for each ordered pair.
    sums: Vec<ExactSum>,
    state: PreferenceState,
    ready: bool,
}

impl FmAgent {
    pub fn new(n_arms: usize, config: FmAgentConfig) -> Result<Self> {
        config.validate()?;
        if n_arms == 0 {
            return Err(Error::TooFewArms { required: 1, got: 0 });
        }
        Ok(Self {
            config,
            dists: vec![EmpiricalDistribution::new(); n_arms],
            sums: vec![ExactSum::new(); n_arms * n_arms],
            state: PreferenceState::zeroed(config.beta, n_arms),
            ready: false,
        })
    }

    pub fn config(&self) -> &FmAgentConfig {
        &self.config
    }

    pub fn distributions(&self) -> &[EmpiricalDistribution] {
        &self.dists
    }

    /// Preference state, available once every arm has at least one reward.
    pub fn state(&self) -> Option<&PreferenceState> {
        self.ready.then_some(&self.state)
    }

    fn quantize(&self, r: f64) -> f64 {
        match self.config.bin_width {
            Some(w) => (r / w).round() * w,
            None => r,
        }
    }

    fn n(&self) -> usize {
        self.dists.len()
    }
}

impl Agent for FmAgent {
    fn n_arms(&self) -> usize {
        self.n()
    }

    fn select(&mut self, rng: &mut dyn RngCore) -> usize {
        if !self.ready {
            return self.dists.iter().position(|d| d.is_empty()).unwrap_or(0);
        }
        if self.n() == 1 {
            return 0;
        }
        match self.config.selection {
            Selection::Greedy => select_greedy(&self.state, rng),
            Selection::Probabilistic => {
                select_probabilistic(&self.state, self.config.kappa, rng).expect("kappa validated")
            }
        }
    }

    fn update(&mut self, m: usize, reward: f64) -> Result<()> {
        let n = self.n();
        if m >= n {
            return Err(Error::ArmOutOfRange { index: m, n_arms: n });
        }
        if !reward.is_finite() {
            return Err(Error::NonFiniteReward(reward));
        }
        let r = self.quantize(reward);
        if !r.is_finite() {
            return Err(Error::NonFiniteReward(r));
        }
        let r = if r == 0.0 { 0.0 } else { r };
        let beta = self.config.beta;

        // Stage the new row/column numerators so a failure leaves the agent untouched.
        let mut staged: Vec<(usize, ExactSum, ExactSum)> = Vec::with_capacity(n.saturating_sub(1));
        for j in (0..n).filter(|&j| j != m) {
            let mut row = self.sums[m * n + j].clone();
            for b in self.dists[j].below(r) {
                let term = (r - b.value).powf(beta);
                if !term.is_finite() {
                    return Err(Error::NonFinitePreference { i: m, j, beta });
                }
                row.add(b.count, term);
            }
            let mut col = self.sums[j * n + m].clone();
            for a in self.dists[j].above(r) {
                let term = (a.value - r).powf(beta);
                if !term.is_finite() {
                    return Err(Error::NonFinitePreference { i: j, j: m, beta });
                }
                col.add(a.count, term);
            }
            staged.push((j, row, col));
        }

        let n_m = self.dists[m].n() + 1;
        let becomes_ready =
            !self.ready && self.dists.iter().enumerate().all(|(i, d)| i == m || !d.is_empty());
        let mut new_pairs: Vec<(usize, usize, f64)> = Vec::new();
        if self.ready || becomes_ready {
            for (j, row, col) in &staged {
                let n_j = self.dists[*j].n();
                new_pairs.push((m, *j, normalize_pair(row, n_m, n_j)));
                new_pairs.push((*j, m, normalize_pair(col, n_j, n_m)));
            }
        }
        if becomes_ready {
            for i in (0..n).filter(|&i| i != m) {
                for j in (0..n).filter(|&j| j != m && j != i) {
                    let a = normalize_pair(&self.sums[i * n + j], self.dists[i].n(), self.dists[j].n());
                    new_pairs.push((i, j, a));
                }
            }
        }
        if let Some(&(i, j, _)) = new_pairs.iter().find(|p| !p.2.is_finite()) {
            return Err(Error::NonFinitePreference { i, j, beta });
        }

        self.dists[m].observe(r)?;
        for (j, row, col) in staged {
            self.sums[m * n + j] = row;
            self.sums[j * n + m] = col;
        }
        if becomes_ready {
            self.ready = true;
        }
        if self.ready {
            for (i, j, a) in new_pairs {
                self.state.set_pair(i, j, a);
            }
            self.state.refresh_products();
        }
        Ok(())
    }
}

/// Uniformly random arm every play.
#[derive(Debug, Clone)]
pub struct UniformAgent {
    n_arms: usize,
}

impl UniformAgent {
    pub fn new(n_arms: usize) -> Result<Self> {
        if n_arms == 0 {
            return Err(Error::TooFewArms { required: 1, got: 0 });
        }
        Ok(Self { n_arms })
    }
}

impl Agent for UniformAgent {
    fn n_arms(&self) -> usize {
        self.n_arms
    }

    fn select(&mut self, rng: &mut dyn RngCore) -> usize {
        rng.random_range(0..self.n_arms)
    }

    fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        if arm >= self.n_arms {
            return Err(Error::ArmOutOfRange { index: arm, n_arms: self.n_arms });
        }
        if !reward.is_finite() {
            return Err(Error::NonFiniteReward(reward));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preference::{preference_pair, preference_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn initialization_pulls_each_arm_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut agent = FmAgent::new(4, FmAgentConfig::default()).unwrap();
        for expected in 0..4 {
            assert!(agent.state().is_none());
            let arm = agent.select(&mut rng);
            assert_eq!(arm, expected);
            agent.update(arm, expected as f64).unwrap();
        }
        assert!(agent.state().is_some());
    }

    #[test]
    fn incremental_matches_full_recompute() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut agent = FmAgent::new(3, FmAgentConfig::default()).unwrap();
        for step in 0..300 {
            let arm = agent.select(&mut rng);
            let reward = if step % 3 == 0 {
                (rng.random_range(0..4) as f64) * 0.5
            } else {
                rng.random::<f64>() * 3.0 - 1.0
            };
            agent.update(arm, reward).unwrap();
            if let Some(state) = agent.state() {
                let full = preference_vector(agent.distributions(), 0.85).unwrap();
                assert_eq!(state, &full, "step {step}");
            }
        }
    }

    #[test]
    fn update_touches_only_row_and_column() {
        let mut agent = FmAgent::new(4, FmAgentConfig::default()).unwrap();
        for (arm, r) in [(0, 0.3), (1, 1.2), (2, -0.4), (3, 0.9), (1, 0.1), (2, 1.5)] {
            agent.update(arm, r).unwrap();
        }
        let before = agent.state().unwrap().clone();
        agent.update(2, 0.7).unwrap();
        let after = agent.state().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != 2 && j != 2 {
                    assert_eq!(before.pair(i, j).to_bits(), after.pair(i, j).to_bits());
                }
            }
        }
        assert_ne!(before.pair(2, 0), after.pair(2, 0));
    }

    #[test]
    fn first_update_after_init_matches_hand_evaluation() {
        let beta = 0.85;
        let mut agent = FmAgent::new(2, FmAgentConfig::probabilistic(beta, 0.0)).unwrap();
        agent.update(0, 1.0).unwrap();
        agent.update(1, 0.25).unwrap();
        agent.update(0, 0.0).unwrap();
        // arm 0 holds {1, 0} at 1/2 each, arm 1 holds {0.25}
        let s = agent.state().unwrap();
        let a01 = 0.5 * 0.75f64.powf(beta);
        let a10 = 0.5 * 0.25f64.powf(beta);
        assert!((s.pair(0, 1) - a01).abs() < 1e-15);
        assert!((s.pair(1, 0) - a10).abs() < 1e-15);
        assert_eq!(s.pair(0, 1), preference_pair(&agent.distributions()[0], &agent.distributions()[1], beta).unwrap());
    }

    #[test]
    fn failed_update_leaves_agent_untouched() {
        let mut agent = FmAgent::new(2, FmAgentConfig::probabilistic(1.0, 0.0)).unwrap();
        agent.update(0, -1e308).unwrap();
        agent.update(1, 0.0).unwrap();
        let before = agent.state().unwrap().clone();
        assert!(matches!(agent.update(1, 1e308), Err(Error::NonFinitePreference { .. })));
        assert_eq!(agent.state().unwrap(), &before);
        assert_eq!(agent.distributions()[1].n(), 1);
        assert!(matches!(agent.update(5, 0.0), Err(Error::ArmOutOfRange { .. })));
        assert!(matches!(agent.update(0, f64::NAN), Err(Error::NonFiniteReward(_))));
    }

    #[test]
    fn quantization_merges_nearby_rewards() {
        let config = FmAgentConfig {
            bin_width: Some(0.5),
            ..FmAgentConfig::default()
        };
        let mut agent = FmAgent::new(1, config).unwrap();
        for r in [0.1, -0.2, 0.6, 0.74, 1.3] {
            agent.update(0, r).unwrap();
        }
        let values: Vec<f64> = agent.distributions()[0].support().iter().map(|a| a.value).collect();
        assert_eq!(values, vec![0.0, 0.5, 1.5]);
    }

    #[test]
    fn config_validation() {
        assert!(FmAgent::new(2, FmAgentConfig::greedy(0.0)).is_err());
        assert!(FmAgent::new(2, FmAgentConfig::probabilistic(0.85, 2.0)).is_err());
        assert!(FmAgent::new(0, FmAgentConfig::default()).is_err());
        let bad = FmAgentConfig { bin_width: Some(-1.0), ..FmAgentConfig::default() };
        assert!(bad.validate().is_err());
    }
}

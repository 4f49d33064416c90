//! Median Elimination (Even-Dar, Mannor & Mansour).
//!
//! Phase `l` samples every surviving arm `ceil((4 / eps_l^2) ln(3 / delta_l))`
//! times and keeps the better half (`ceil(|S| / 2)` arms, ranked by the
//! phase's empirical mean). Parameters start at `eps / 4`, `delta / 2` and
//! shrink by `3/4` and `1/2` each phase. As an [`Agent`] the phases are
//! served round-robin over the survivors; once a single arm remains the agent
//! commits to it.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::check_open_unit;
use crate::agent::Agent;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeaPhase {
    pub survivors: usize,
    pub eps: f64,
    pub delta: f64,
    pub pulls_per_arm: u64,
}

impl MeaPhase {
    pub fn total_pulls(&self) -> u64 {
        self.survivors as u64 * self.pulls_per_arm
    }
}

fn quota(eps: f64, delta: f64) -> u64 {
    ((4.0 / (eps * eps)) * (3.0 / delta).ln()).ceil() as u64
}

/// The deterministic phase plan for `n` arms; empty when `n == 1`.
pub fn mea_schedule(n: usize, eps: f64, delta: f64) -> Result<Vec<MeaPhase>> {
    check_open_unit("mea_eps", eps)?;
    check_open_unit("mea_delta", delta)?;
    if n == 0 {
        return Err(Error::TooFewArms { required: 1, got: 0 });
    }
    let mut phases = Vec::new();
    let (mut survivors, mut e, mut d) = (n, eps / 4.0, delta / 2.0);
    while survivors > 1 {
        phases.push(MeaPhase {
            survivors,
            eps: e,
            delta: d,
            pulls_per_arm: quota(e, d),
        });
        survivors = survivors.div_ceil(2);
        e *= 0.75;
        d *= 0.5;
    }
    Ok(phases)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeaOutcome {
    pub arm: usize,
    pub pulls: u64,
}

/// Runs Median Elimination to completion against `sample(arm) -> reward`.
pub fn mea_run<F: FnMut(usize) -> f64>(
    n: usize,
    eps: f64,
    delta: f64,
    mut sample: F,
) -> Result<MeaOutcome> {
    let mut agent = MedianElimination::new(n, eps, delta)?;
    // selection is deterministic; the rng is never drawn from
    let mut unused = ChaCha8Rng::seed_from_u64(0);
    while agent.committed().is_none() {
        let arm = agent.select(&mut unused);
        agent.update(arm, sample(arm))?;
    }
    Ok(MeaOutcome {
        arm: agent.committed().expect("loop exits on commit"),
        pulls: agent.exploration_pulls(),
    })
}

#[derive(Debug, Clone)]
pub struct MedianElimination {
    n_arms: usize,
    schedule: Vec<MeaPhase>,
    phase: usize,
    survivors: Vec<usize>,
    sums: Vec<f64>,
    counts: Vec<u64>,
    cursor: usize,
    committed: Option<usize>,
    pulls: u64,
}

impl MedianElimination {
    pub fn new(n_arms: usize, eps: f64, delta: f64) -> Result<Self> {
        let schedule = mea_schedule(n_arms, eps, delta)?;
        Ok(Self {
            n_arms,
            committed: (n_arms == 1).then_some(0),
            schedule,
            phase: 0,
            survivors: (0..n_arms).collect(),
            sums: vec![0.0; n_arms],
            counts: vec![0; n_arms],
            cursor: 0,
            pulls: 0,
        })
    }

    pub fn schedule(&self) -> &[MeaPhase] {
        &self.schedule
    }

    pub fn committed(&self) -> Option<usize> {
        self.committed
    }

    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    /// Pulls spent inside elimination phases so far.
    pub fn exploration_pulls(&self) -> u64 {
        self.pulls
    }

    fn eliminate(&mut self) {
        let mut ranked: Vec<(usize, f64)> = self
            .survivors
            .iter()
            .map(|&a| (a, self.sums[a] / self.counts[a] as f64))
            .collect();
        // stable: equal means keep the lower index first
        ranked.sort_by(|x, y| y.1.total_cmp(&x.1));
        let keep = self.survivors.len().div_ceil(2);
        let mut next: Vec<usize> = ranked[..keep].iter().map(|&(a, _)| a).collect();
        next.sort_unstable();
        self.survivors = next;
        for a in 0..self.n_arms {
            self.sums[a] = 0.0;
            self.counts[a] = 0;
        }
        self.phase += 1;
        self.cursor = 0;
        if self.survivors.len() == 1 {
            self.committed = Some(self.survivors[0]);
        }
    }
}

impl Agent for MedianElimination {
    fn n_arms(&self) -> usize {
        self.n_arms
    }

    fn select(&mut self, _rng: &mut dyn RngCore) -> usize {
        match self.committed {
            Some(arm) => arm,
            None => self.survivors[self.cursor],
        }
    }

    fn update(&mut self, arm: usize, reward: f64) -> Result<()> {
        if arm >= self.n_arms {
            return Err(Error::ArmOutOfRange {
                index: arm,
                n_arms: self.n_arms,
            });
        }
        if !reward.is_finite() {
            return Err(Error::NonFiniteReward(reward));
        }
        if self.committed.is_some() {
            return Ok(());
        }
        let quota = self.schedule[self.phase].pulls_per_arm;
        if !self.survivors.contains(&arm) || self.counts[arm] >= quota {
            // off-schedule pull: nothing to learn from it
            return Ok(());
        }
        self.sums[arm] += reward;
        self.counts[arm] += 1;
        self.pulls += 1;

        let k = self.survivors.len();
        for step in 1..=k {
            let c = (self.cursor + step) % k;
            if self.counts[self.survivors[c]] < quota {
                self.cursor = c;
                return Ok(());
            }
        }
        self.eliminate();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn single_arm_needs_no_pulls() {
        let out = mea_run(1, 0.5, 0.5, |_| unreachable!()).unwrap();
        assert_eq!(out, MeaOutcome { arm: 0, pulls: 0 });
    }

    #[test]
    fn two_arm_phase_count() {
        // ceil((4 / 0.2375^2) ln(3 / 0.475)) = 131
        let s = mea_schedule(2, 0.95, 0.95).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].pulls_per_arm, 131);
        let out = mea_run(2, 0.95, 0.95, |a| a as f64).unwrap();
        assert_eq!(out, MeaOutcome { arm: 1, pulls: 262 });
    }

    #[test]
    fn survivors_halve_and_phase_count_is_log2() {
        for n in 2..=40usize {
            let s = mea_schedule(n, 0.9, 0.9).unwrap();
            assert_eq!(s.len(), n.next_power_of_two().trailing_zeros() as usize, "n = {n}");
            for w in s.windows(2) {
                assert_eq!(w[1].survivors, w[0].survivors.div_ceil(2));
                assert_eq!(w[1].eps, w[0].eps * 0.75);
                assert_eq!(w[1].delta, w[0].delta * 0.5);
            }
        }
    }

    #[test]
    fn pull_count_matches_schedule_and_finds_best_arm() {
        let means = [0.1, 0.5, 0.9, 0.3, 0.2, 0.4, 0.6];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let out = mea_run(means.len(), 0.3, 0.2, |a| {
            if rng.random::<f64>() < means[a] { 1.0 } else { 0.0 }
        })
        .unwrap();
        let expected: u64 = mea_schedule(means.len(), 0.3, 0.2)
            .unwrap()
            .iter()
            .map(MeaPhase::total_pulls)
            .sum();
        assert_eq!(out.pulls, expected);
        assert_eq!(out.arm, 2);
    }

    #[test]
    fn agent_round_robins_then_commits() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut agent = MedianElimination::new(3, 0.95, 0.95).unwrap();
        let first: Vec<usize> = (0..6)
            .map(|_| {
                let a = agent.select(&mut rng);
                agent.update(a, a as f64).unwrap();
                a
            })
            .collect();
        assert_eq!(first, vec![0, 1, 2, 0, 1, 2]);
        while agent.committed().is_none() {
            let a = agent.select(&mut rng);
            agent.update(a, a as f64).unwrap();
        }
        assert_eq!(agent.committed(), Some(2));
        assert_eq!(agent.select(&mut rng), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(mea_schedule(3, 0.0, 0.5).is_err());
        assert!(mea_schedule(3, 0.5, 1.0).is_err());
        assert!(mea_schedule(0, 0.5, 0.5).is_err());
    }
}

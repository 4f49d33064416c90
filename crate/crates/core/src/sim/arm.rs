use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A stationary reward distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ArmDistribution {
    Gaussian { mean: f64, std: f64 },
    /// `r` with probability `p`, otherwise 0.
    BernoulliScaled { p: f64, r: f64 },
}

impl ArmDistribution {
    pub fn gaussian(mean: f64, std: f64) -> Result<Self> {
        let arm = ArmDistribution::Gaussian { mean, std };
        arm.validate()?;
        Ok(arm)
    }

    pub fn bernoulli_scaled(p: f64, r: f64) -> Result<Self> {
        let arm = ArmDistribution::BernoulliScaled { p, r };
        arm.validate()?;
        Ok(arm)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ArmDistribution::Gaussian { mean, std } => {
                if !mean.is_finite() {
                    return Err(Error::param("mean", format!("must be finite, got {mean}")));
                }
                if !(std.is_finite() && std > 0.0) {
                    return Err(Error::param("std", format!("must be finite and > 0, got {std}")));
                }
            }
            ArmDistribution::BernoulliScaled { p, r } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::param("p", format!("must lie in [0, 1], got {p}")));
                }
                if !(r.is_finite() && r > 0.0) {
                    return Err(Error::param("r", format!("must be finite and > 0, got {r}")));
                }
            }
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ArmDistribution::Gaussian { mean, .. } => mean,
            ArmDistribution::BernoulliScaled { p, r } => p * r,
        }
    }

    pub fn pull<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ArmDistribution::Gaussian { mean, std } => {
                let z: f64 = rng.sample(StandardNormal);
                mean + std * z
            }
            // one uniform draw even when p is 0 or 1, so streams stay aligned
            ArmDistribution::BernoulliScaled { p, r } => {
                if rng.random::<f64>() < p {
                    r
                } else {
                    0.0
                }
            }
        }
    }
}

/// Arms plus the ground truth needed for regret accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditTask {
    arms: Vec<ArmDistribution>,
    optimal_index: usize,
    optimal_mean: f64,
}

impl BanditTask {
    pub fn new(arms: Vec<ArmDistribution>) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::TooFewArms { required: 1, got: 0 });
        }
        for arm in &arms {
            arm.validate()?;
        }
        let mut optimal_index = 0;
        for (i, arm) in arms.iter().enumerate() {
            if arm.mean() > arms[optimal_index].mean() {
                optimal_index = i;
            }
        }
        let optimal_mean = arms[optimal_index].mean();
        Ok(Self {
            arms,
            optimal_index,
            optimal_mean,
        })
    }

    pub fn arms(&self) -> &[ArmDistribution] {
        &self.arms
    }

    pub fn n_arms(&self) -> usize {
        self.arms.len()
    }

    /// Lowest index attaining the best mean.
    pub fn optimal_index(&self) -> usize {
        self.optimal_index
    }

    pub fn optimal_mean(&self) -> f64 {
        self.optimal_mean
    }

    /// True for every arm sharing the best mean.
    pub fn is_optimal(&self, arm: usize) -> bool {
        self.arms[arm].mean() == self.optimal_mean
    }
}

/// How the arm standard deviations of a Gaussian task are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StdSpec {
    Fixed(f64),
    /// Drawn uniformly from `[low, high]` per arm.
    Uniform([f64; 2]),
}

/// Distribution over bandit tasks.
#[derive(Debug, Clone, PartialEq)]
pub enum TaskGenerator {
    /// Arm means i.i.d. normal with the given mean and std.
    Gaussian {
        n_arms: usize,
        mean_mean: f64,
        mean_std: f64,
        std: StdSpec,
    },
    /// Arm success probabilities uniform on `p_range`, magnitudes uniform on `r_range`.
    Bernoulli {
        n_arms: usize,
        p_range: [f64; 2],
        r_range: [f64; 2],
    },
    /// The same explicit task every time.
    Fixed { arms: Vec<ArmDistribution> },
}

fn check_range(name: &'static str, [lo, hi]: [f64; 2], min: f64, max: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && min <= lo && lo <= hi && hi <= max {
        Ok(())
    } else {
        Err(Error::param(name, format!("need {min} <= low <= high <= {max}, got [{lo}, {hi}]")))
    }
}

fn draw_in<R: Rng + ?Sized>([lo, hi]: [f64; 2], rng: &mut R) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

impl TaskGenerator {
    /// The classical testbed: standard-normal means, unit variance.
    pub fn gaussian_testbed(n_arms: usize) -> Self {
        TaskGenerator::Gaussian {
            n_arms,
            mean_mean: 0.0,
            mean_std: 1.0,
            std: StdSpec::Fixed(1.0),
        }
    }

    pub fn n_arms(&self) -> usize {
        match self {
            TaskGenerator::Gaussian { n_arms, .. } | TaskGenerator::Bernoulli { n_arms, .. } => *n_arms,
            TaskGenerator::Fixed { arms } => arms.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_arms() == 0 {
            return Err(Error::TooFewArms { required: 1, got: 0 });
        }
        match self {
            TaskGenerator::Gaussian {
                mean_mean,
                mean_std,
                std,
                ..
            } => {
                if !mean_mean.is_finite() {
                    return Err(Error::param("mean_mean", format!("must be finite, got {mean_mean}")));
                }
                if !(mean_std.is_finite() && *mean_std >= 0.0) {
                    return Err(Error::param("mean_std", format!("must be finite and >= 0, got {mean_std}")));
                }
                match *std {
                    StdSpec::Fixed(s) => ArmDistribution::gaussian(0.0, s).map(|_| ()),
                    StdSpec::Uniform(range) => check_range("std", range, f64::MIN_POSITIVE, f64::MAX),
                }
            }
            TaskGenerator::Bernoulli { p_range, r_range, .. } => {
                check_range("p_range", *p_range, 0.0, 1.0)?;
                check_range("r_range", *r_range, f64::MIN_POSITIVE, f64::MAX)
            }
            TaskGenerator::Fixed { arms } => arms.iter().try_for_each(ArmDistribution::validate),
        }
    }

    /// Draws a task. The generator must be valid.
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> BanditTask {
        let arms = match self {
            TaskGenerator::Gaussian {
                n_arms,
                mean_mean,
                mean_std,
                std,
            } => (0..*n_arms)
                .map(|_| {
                    let z: f64 = rng.sample(StandardNormal);
                    let s = match *std {
                        StdSpec::Fixed(s) => s,
                        StdSpec::Uniform(range) => draw_in(range, rng),
                    };
                    ArmDistribution::Gaussian {
                        mean: mean_mean + mean_std * z,
                        std: s,
                    }
                })
                .collect(),
            TaskGenerator::Bernoulli {
                n_arms,
                p_range,
                r_range,
            } => (0..*n_arms)
                .map(|_| ArmDistribution::BernoulliScaled {
                    p: draw_in(*p_range, rng),
                    r: draw_in(*r_range, rng),
                })
                .collect(),
            TaskGenerator::Fixed { arms } => arms.clone(),
        };
        BanditTask::new(arms).expect("validated generator yields valid arms")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixed_task_optimum() {
        let task = BanditTask::new(vec![
            ArmDistribution::gaussian(0.1, 1.0).unwrap(),
            ArmDistribution::gaussian(0.9, 1.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(task.optimal_index(), 1);
        assert_eq!(task.optimal_mean(), 0.9);

        let task = BanditTask::new(vec![
            ArmDistribution::bernoulli_scaled(0.5, 1.0).unwrap(),
            ArmDistribution::bernoulli_scaled(0.9, 1.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(task.optimal_mean(), 0.9);
    }

    #[test]
    fn optimal_ties_all_count() {
        let arm = ArmDistribution::gaussian(0.5, 1.0).unwrap();
        let task = BanditTask::new(vec![arm, ArmDistribution::gaussian(0.1, 1.0).unwrap(), arm]).unwrap();
        assert_eq!(task.optimal_index(), 0);
        assert!(task.is_optimal(0) && task.is_optimal(2) && !task.is_optimal(1));
    }

    #[test]
    fn degenerate_bernoulli() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let one = ArmDistribution::bernoulli_scaled(1.0, 3.0).unwrap();
        let zero = ArmDistribution::bernoulli_scaled(0.0, 3.0).unwrap();
        for _ in 0..1000 {
            assert_eq!(one.pull(&mut rng), 3.0);
            assert_eq!(zero.pull(&mut rng), 0.0);
        }
    }

    #[test]
    fn gaussian_sample_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let arm = ArmDistribution::gaussian(0.0, 1.0).unwrap();
        let n = 1_000_000;
        let mean = (0..n).map(|_| arm.pull(&mut rng)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.004, "{mean}");
    }

    #[test]
    fn testbed_has_unit_std() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let task = TaskGenerator::gaussian_testbed(10).generate(&mut rng);
        assert_eq!(task.n_arms(), 10);
        for arm in task.arms() {
            assert!(matches!(arm, ArmDistribution::Gaussian { std, .. } if *std == 1.0));
        }
    }

    #[test]
    fn varying_std_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gen = TaskGenerator::Gaussian {
            n_arms: 50,
            mean_mean: 0.0,
            mean_std: 1.0,
            std: StdSpec::Uniform([0.5, 1.5]),
        };
        gen.validate().unwrap();
        for arm in gen.generate(&mut rng).arms() {
            let ArmDistribution::Gaussian { std, .. } = *arm else { unreachable!() };
            assert!((0.5..=1.5).contains(&std));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(ArmDistribution::gaussian(0.0, 0.0).is_err());
        assert!(ArmDistribution::gaussian(f64::NAN, 1.0).is_err());
        assert!(ArmDistribution::bernoulli_scaled(1.5, 1.0).is_err());
        assert!(ArmDistribution::bernoulli_scaled(0.5, 0.0).is_err());
        assert!(BanditTask::new(vec![]).is_err());
        let bad = TaskGenerator::Bernoulli {
            n_arms: 3,
            p_range: [0.6, 0.2],
            r_range: [1.0, 1.0],
        };
        assert!(bad.validate().is_err());
    }
}

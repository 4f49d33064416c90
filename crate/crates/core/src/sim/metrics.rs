/// One policy's plays on one task.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub arms: Vec<usize>,
    pub rewards: Vec<f64>,
    pub optimal: Vec<bool>,
    /// True mean of each chosen arm.
    pub chosen_means: Vec<f64>,
    pub optimal_mean: f64,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    /// `Z_l`, the reward collected over the first `l` plays.
    pub fn cumulative_reward(&self) -> Vec<f64> {
        self.rewards
            .iter()
            .scan(0.0, |z, &r| {
                *z += r;
                Some(*z)
            })
            .collect()
    }

    /// `eta_l = l mu* - Z_l` for every prefix length `l`.
    pub fn regret(&self) -> Vec<f64> {
        self.cumulative_reward()
            .into_iter()
            .enumerate()
            .map(|(i, z)| (i + 1) as f64 * self.optimal_mean - z)
            .collect()
    }

    /// `sum (mu* - mu_a)` over the chosen arms; nondecreasing.
    pub fn pseudo_regret(&self) -> Vec<f64> {
        self.chosen_means
            .iter()
            .scan(0.0, |acc, &m| {
                *acc += self.optimal_mean - m;
                Some(*acc)
            })
            .collect()
    }
}

/// Per-play sums over a batch of tasks, merged in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsAccumulator {
    n_tasks: u64,
    reward: Vec<f64>,
    optimal: Vec<u64>,
    regret: Vec<f64>,
    pseudo_regret: Vec<f64>,
    optimal_mean: f64,
}

impl MetricsAccumulator {
    pub fn new(horizon: usize) -> Self {
        Self {
            n_tasks: 0,
            reward: vec![0.0; horizon],
            optimal: vec![0; horizon],
            regret: vec![0.0; horizon],
            pseudo_regret: vec![0.0; horizon],
            optimal_mean: 0.0,
        }
    }

    pub fn n_tasks(&self) -> u64 {
        self.n_tasks
    }

    pub fn add(&mut self, trace: &Trace) {
        assert_eq!(trace.len(), self.reward.len(), "trace length differs from horizon");
        self.n_tasks += 1;
        self.optimal_mean += trace.optimal_mean;
        for (acc, &r) in self.reward.iter_mut().zip(&trace.rewards) {
            *acc += r;
        }
        for (acc, &o) in self.optimal.iter_mut().zip(&trace.optimal) {
            *acc += o as u64;
        }
        for (acc, eta) in self.regret.iter_mut().zip(trace.regret()) {
            *acc += eta;
        }
        for (acc, p) in self.pseudo_regret.iter_mut().zip(trace.pseudo_regret()) {
            *acc += p;
        }
    }

    pub fn merge(&mut self, other: &MetricsAccumulator) {
        assert_eq!(other.reward.len(), self.reward.len(), "horizons differ");
        self.n_tasks += other.n_tasks;
        self.optimal_mean += other.optimal_mean;
        fn add_all<T: Copy + std::ops::AddAssign>(a: &mut [T], b: &[T]) {
            for (x, &y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        add_all(&mut self.reward, &other.reward);
        add_all(&mut self.optimal, &other.optimal);
        add_all(&mut self.regret, &other.regret);
        add_all(&mut self.pseudo_regret, &other.pseudo_regret);
    }

    pub fn finish(&self, label: impl Into<String>) -> RunMetrics {
        let n = self.n_tasks as f64;
        let avg = |v: &[f64]| v.iter().map(|x| x / n).collect();
        RunMetrics {
            label: label.into(),
            n_tasks: self.n_tasks,
            avg_reward: avg(&self.reward),
            pct_optimal: self.optimal.iter().map(|&c| c as f64 / n).collect(),
            avg_cum_regret: avg(&self.regret),
            avg_pseudo_regret: avg(&self.pseudo_regret),
            mean_optimal_mean: self.optimal_mean / n,
        }
    }
}

/// Learning curves of one policy, averaged over tasks.
///
/// Index `t` holds play `t + 1`. `pct_optimal` is a fraction in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub label: String,
    pub n_tasks: u64,
    pub avg_reward: Vec<f64>,
    pub pct_optimal: Vec<f64>,
    pub avg_cum_regret: Vec<f64>,
    /// Expected-regret counterpart of `avg_cum_regret`, free of reward noise.
    pub avg_pseudo_regret: Vec<f64>,
    pub mean_optimal_mean: f64,
}

impl RunMetrics {
    pub fn horizon(&self) -> usize {
        self.avg_reward.len()
    }

    pub fn final_cum_regret(&self) -> f64 {
        self.avg_cum_regret.last().copied().unwrap_or(0.0)
    }

    pub fn final_pct_optimal(&self) -> f64 {
        self.pct_optimal.last().copied().unwrap_or(0.0)
    }

    /// Mean reward per play over the whole horizon.
    pub fn mean_reward(&self) -> f64 {
        self.avg_reward.iter().sum::<f64>() / self.horizon().max(1) as f64
    }
}

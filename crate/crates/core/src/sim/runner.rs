use rayon::prelude::*;

use super::arm::{BanditTask, TaskGenerator};
use super::metrics::{MetricsAccumulator, RunMetrics, Trace};
use super::seed;
use crate::agent::{Agent, FmAgent, FmAgentConfig, Selection, UniformAgent};
use crate::baselines::{EpsilonGreedy, MedianElimination, Softmax};
use crate::{Error, Result};

/// Tasks per reduction chunk. Fixed so that serial and parallel runs add
/// the same partial sums in the same order.
const CHUNK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicyKind {
    Fm(FmAgentConfig),
    EpsilonGreedy { eps: f64 },
    Softmax { tau: f64 },
    MedianElimination { eps: f64, delta: f64 },
    Uniform,
}

impl PolicyKind {
    pub fn build(&self, n_arms: usize) -> Result<Box<dyn Agent>> {
        Ok(match *self {
            PolicyKind::Fm(cfg) => Box::new(FmAgent::new(n_arms, cfg)?),
            PolicyKind::EpsilonGreedy { eps } => Box::new(EpsilonGreedy::new(n_arms, eps)?),
            PolicyKind::Softmax { tau } => Box::new(Softmax::new(n_arms, tau)?),
            PolicyKind::MedianElimination { eps, delta } => Box::new(MedianElimination::new(n_arms, eps, delta)?),
            PolicyKind::Uniform => Box::new(UniformAgent::new(n_arms)?),
        })
    }

    /// Whether the first `n_arms` plays are forced initialization pulls that
    /// must fit inside the horizon.
    pub fn requires_init(&self) -> bool {
        matches!(self, PolicyKind::Fm(_))
    }

    /// Parameter string that determines the policy's random streams.
    pub fn canonical(&self) -> String {
        match self {
            PolicyKind::Fm(c) => {
                let bin = c.bin_width.map_or("none".to_string(), |w| w.to_string());
                match c.selection {
                    Selection::Greedy => format!("fm;greedy;beta={};bin_width={bin}", c.beta),
                    Selection::Probabilistic => {
                        format!("fm;probabilistic;beta={};kappa={};bin_width={bin}", c.beta, c.kappa)
                    }
                }
            }
            PolicyKind::EpsilonGreedy { eps } => format!("epsilon-greedy;eps={eps}"),
            PolicyKind::Softmax { tau } => format!("softmax;tau={tau}"),
            PolicyKind::MedianElimination { eps, delta } => format!("mea;eps={eps};delta={delta}"),
            PolicyKind::Uniform => "uniform".to_string(),
        }
    }

    pub fn default_label(&self) -> &'static str {
        match self {
            PolicyKind::Fm(c) if c.selection == Selection::Greedy => "fm-greedy",
            PolicyKind::Fm(_) => "fm-probabilistic",
            PolicyKind::EpsilonGreedy { .. } => "epsilon-greedy",
            PolicyKind::Softmax { .. } => "softmax",
            PolicyKind::MedianElimination { .. } => "mea",
            PolicyKind::Uniform => "uniform",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicySpec {
    pub label: String,
    pub kind: PolicyKind,
}

impl PolicySpec {
    pub fn new(label: impl Into<String>, kind: PolicyKind) -> Self {
        Self {
            label: label.into(),
            kind,
        }
    }
}

impl From<PolicyKind> for PolicySpec {
    fn from(kind: PolicyKind) -> Self {
        Self::new(kind.default_label(), kind)
    }
}

fn check_horizon(kind: &PolicyKind, horizon: usize, n_arms: usize) -> Result<()> {
    if horizon == 0 {
        return Err(Error::Config("horizon must be >= 1".into()));
    }
    if kind.requires_init() && horizon < n_arms {
        return Err(Error::Config(format!(
            "horizon {horizon} is shorter than the {n_arms} initialization pulls of `{}`",
            kind.canonical()
        )));
    }
    Ok(())
}

/// Plays `kind` on `task` for `horizon` plays. Deterministic in `seed`.
pub fn run_task(task: &BanditTask, kind: &PolicyKind, horizon: usize, seed: u64) -> Result<Trace> {
    check_horizon(kind, horizon, task.n_arms())?;
    let mut agent = kind.build(task.n_arms())?;
    let (mut env, mut agent_rng) = seed::split(seed);
    let mut trace = Trace {
        arms: Vec::with_capacity(horizon),
        rewards: Vec::with_capacity(horizon),
        optimal: Vec::with_capacity(horizon),
        chosen_means: Vec::with_capacity(horizon),
        optimal_mean: task.optimal_mean(),
    };
    for _ in 0..horizon {
        let arm = agent.select(&mut agent_rng);
        let dist = &task.arms()[arm];
        let reward = dist.pull(&mut env);
        agent.update(arm, reward)?;
        trace.arms.push(arm);
        trace.rewards.push(reward);
        trace.optimal.push(task.is_optimal(arm));
        trace.chosen_means.push(dist.mean());
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_tasks: usize,
    pub horizon: usize,
    pub master_seed: u64,
    pub generator: TaskGenerator,
    pub policies: Vec<PolicySpec>,
}

impl ExperimentConfig {
    pub fn n_arms(&self) -> usize {
        self.generator.n_arms()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_tasks == 0 {
            return Err(Error::Config("n_tasks must be >= 1".into()));
        }
        self.generator.validate()?;
        if self.policies.is_empty() {
            return Err(Error::Config("at least one policy required".into()));
        }
        for (i, p) in self.policies.iter().enumerate() {
            if p.label.is_empty() || p.label.contains([',', '"', '\n', '\r']) {
                return Err(Error::Config(format!(
                    "policy label {:?} must be nonempty and free of commas, quotes and newlines",
                    p.label
                )));
            }
            if self.policies[..i].iter().any(|q| q.label == p.label) {
                return Err(Error::Config(format!("duplicate policy label {:?}", p.label)));
            }
            p.kind.build(self.n_arms())?;
            check_horizon(&p.kind, self.horizon, self.n_arms())?;
        }
        Ok(())
    }

    /// The shared task sequence.
    pub fn tasks(&self) -> Vec<BanditTask> {
        (0..self.n_tasks as u64)
            .map(|t| self.generator.generate(&mut seed::task_rng(self.master_seed, t)))
            .collect()
    }
}

fn run_chunk(
    config: &ExperimentConfig,
    tasks: &[BanditTask],
    policy: &PolicySpec,
    chunk: usize,
) -> Result<MetricsAccumulator> {
    let canonical = policy.kind.canonical();
    let mut acc = MetricsAccumulator::new(config.horizon);
    let start = chunk * CHUNK;
    for (t, task) in tasks.iter().enumerate().skip(start).take(CHUNK) {
        let s = seed::policy_task_seed(config.master_seed, &canonical, t as u64);
        acc.add(&run_task(task, &policy.kind, config.horizon, s)?);
    }
    Ok(acc)
}

/// Runs every policy on the shared tasks and averages the traces.
///
/// Output is bit-identical between serial and parallel execution.
pub fn run_experiment(config: &ExperimentConfig, exec: Execution) -> Result<Vec<RunMetrics>> {
    config.validate()?;
    let tasks = config.tasks();
    let n_chunks = config.n_tasks.div_ceil(CHUNK);
    let jobs: Vec<(usize, usize)> = (0..config.policies.len())
        .flat_map(|p| (0..n_chunks).map(move |c| (p, c)))
        .collect();
    let work = |&(p, c): &(usize, usize)| run_chunk(config, &tasks, &config.policies[p], c);
    let partials: Vec<MetricsAccumulator> = match exec {
        Execution::Serial => jobs.iter().map(work).collect::<Result<_>>()?,
        Execution::Parallel => jobs.par_iter().map(work).collect::<Result<_>>()?,
    };
    Ok(config
        .policies
        .iter()
        .zip(partials.chunks(n_chunks))
        .map(|(policy, parts)| {
            let mut acc = MetricsAccumulator::new(config.horizon);
            for part in parts {
                acc.merge(part);
            }
            acc.finish(policy.label.clone())
        })
        .collect())
}

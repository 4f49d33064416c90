//! TOML experiment configuration.
//!
//! ```toml
//! seed = 42
//! n_arms = 10
//! n_tasks = 2000
//! horizon = 1000
//!
//! [generator]
//! kind = "gaussian"
//! std = 1.0
//!
//! [[policy]]
//! kind = "fm"
//! label = "FM-prob"
//! beta = 0.85
//! kappa = 0.01
//!
//! [[policy]]
//! kind = "softmax"
//! tau = 0.24
//! ```
//!
//! Every key is optional except at least one `[[policy]]`. Unknown keys and
//! out-of-range values are rejected with their line and column; keys that do
//! not apply to a policy or generator kind are rejected with its position.
//! The full key list lives in `configs/config.schema.json`.

use std::path::Path;

use serde::Deserialize;

use crate::agent::FmAgentConfig;
use crate::agent::Selection;
use crate::baselines::BaselineConfig;
use crate::sim::{ArmDistribution, ExperimentConfig, PolicyKind, PolicySpec, StdSpec, TaskGenerator};
use crate::{Error, Result};

pub const DEFAULT_N_ARMS: usize = 10;
pub const DEFAULT_N_TASKS: usize = 2000;
pub const DEFAULT_HORIZON: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;

macro_rules! bounded {
    ($name:ident, $desc:literal, |$x:ident| $ok:expr) => {
        #[derive(Debug, Clone, Copy, Deserialize)]
        #[serde(try_from = "f64")]
        struct $name(f64);

        impl TryFrom<f64> for $name {
            type Error = String;

            fn try_from($x: f64) -> std::result::Result<Self, String> {
                if $ok {
                    Ok(Self($x))
                } else {
                    Err(format!("{} is out of range: must be {}", $x, $desc))
                }
            }
        }
    };
}

bounded!(Finite, "finite", |x| x.is_finite());
bounded!(NonNegative, "finite and >= 0", |x| x.is_finite() && x >= 0.0);
bounded!(Positive, "finite and > 0", |x| x.is_finite() && x > 0.0);
bounded!(Unit, "in [0, 1]", |x| (0.0..=1.0).contains(&x));
bounded!(OpenUnit, "in (0, 1)", |x| x > 0.0 && x < 1.0);

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(try_from = "i64")]
struct Count(usize);

impl TryFrom<i64> for Count {
    type Error = String;

    fn try_from(x: i64) -> std::result::Result<Self, String> {
        usize::try_from(x)
            .ok()
            .filter(|&n| n >= 1)
            .map(Count)
            .ok_or_else(|| format!("{x} is out of range: must be >= 1"))
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(try_from = "[f64; 2]")]
struct Interval([f64; 2]);

impl TryFrom<[f64; 2]> for Interval {
    type Error = String;

    fn try_from([lo, hi]: [f64; 2]) -> std::result::Result<Self, String> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval([lo, hi]))
        } else {
            Err(format!("[{lo}, {hi}] must be a finite interval with low <= high"))
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    n_arms: Option<Count>,
    n_tasks: Option<Count>,
    horizon: Option<Count>,
    generator: Option<RawGenerator>,
    #[serde(default)]
    policy: Vec<RawPolicy>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum GeneratorKind {
    Gaussian,
    Bernoulli,
    Fixed,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    kind: Option<GeneratorKind>,
    mean_mean: Option<Finite>,
    mean_std: Option<NonNegative>,
    std: Option<Positive>,
    std_range: Option<Interval>,
    p_range: Option<Interval>,
    r_range: Option<Interval>,
    arms: Option<Vec<ArmDistribution>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RawPolicyKind {
    Fm,
    EpsilonGreedy,
    Softmax,
    Mea,
    Uniform,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolicy {
    kind: RawPolicyKind,
    label: Option<String>,
    selection: Option<Selection>,
    beta: Option<Positive>,
    kappa: Option<Unit>,
    bin_width: Option<Positive>,
    epsilon: Option<Unit>,
    tau: Option<Positive>,
    delta: Option<OpenUnit>,
}

fn reject_keys(context: &str, present: &[(&str, bool)]) -> Result<()> {
    match present.iter().find(|(_, p)| *p) {
        Some((key, _)) => Err(Error::Config(format!("{context}: key `{key}` does not apply here"))),
        None => Ok(()),
    }
}

impl RawPolicy {
    fn into_spec(self, index: usize) -> Result<PolicySpec> {
        let ctx = format!("policy[{index}] ({:?})", self.kind);
        let fm_keys = [
            ("selection", self.selection.is_some()),
            ("beta", self.beta.is_some()),
            ("kappa", self.kappa.is_some()),
            ("bin_width", self.bin_width.is_some()),
        ];
        let base = BaselineConfig::default();
        let kind = match self.kind {
            RawPolicyKind::Fm => {
                reject_keys(&ctx, &[("epsilon", self.epsilon.is_some()), ("tau", self.tau.is_some()), ("delta", self.delta.is_some())])?;
                let d = FmAgentConfig::default();
                PolicyKind::Fm(FmAgentConfig {
                    beta: self.beta.map_or(d.beta, |b| b.0),
                    selection: self.selection.unwrap_or(d.selection),
                    kappa: self.kappa.map_or(d.kappa, |k| k.0),
                    bin_width: self.bin_width.map(|w| w.0),
                })
            }
            RawPolicyKind::EpsilonGreedy => {
                reject_keys(&ctx, &fm_keys)?;
                reject_keys(&ctx, &[("tau", self.tau.is_some()), ("delta", self.delta.is_some())])?;
                PolicyKind::EpsilonGreedy {
                    eps: self.epsilon.map_or(base.epsilon_greedy_eps, |e| e.0),
                }
            }
            RawPolicyKind::Softmax => {
                reject_keys(&ctx, &fm_keys)?;
                reject_keys(&ctx, &[("epsilon", self.epsilon.is_some()), ("delta", self.delta.is_some())])?;
                PolicyKind::Softmax {
                    tau: self.tau.map_or(base.softmax_tau, |t| t.0),
                }
            }
            RawPolicyKind::Mea => {
                reject_keys(&ctx, &fm_keys)?;
                reject_keys(&ctx, &[("tau", self.tau.is_some())])?;
                let eps = self.epsilon.map_or(base.mea_eps, |e| e.0);
                if !(eps > 0.0 && eps < 1.0) {
                    return Err(Error::Config(format!("{ctx}: epsilon {eps} must lie in (0, 1)")));
                }
                PolicyKind::MedianElimination {
                    eps,
                    delta: self.delta.map_or(base.mea_delta, |d| d.0),
                }
            }
            RawPolicyKind::Uniform => {
                reject_keys(&ctx, &fm_keys)?;
                reject_keys(&ctx, &[("epsilon", self.epsilon.is_some()), ("tau", self.tau.is_some()), ("delta", self.delta.is_some())])?;
                PolicyKind::Uniform
            }
        };
        Ok(PolicySpec::new(self.label.unwrap_or_else(|| kind.default_label().to_string()), kind))
    }
}

impl RawGenerator {
    fn into_generator(self, n_arms: Option<usize>) -> Result<TaskGenerator> {
        let kind = self.kind.unwrap_or(GeneratorKind::Gaussian);
        let ctx = format!("generator ({kind:?})");
        let gaussian_keys = [
            ("mean_mean", self.mean_mean.is_some()),
            ("mean_std", self.mean_std.is_some()),
            ("std", self.std.is_some()),
            ("std_range", self.std_range.is_some()),
        ];
        let bernoulli_keys = [("p_range", self.p_range.is_some()), ("r_range", self.r_range.is_some())];
        let n = n_arms.unwrap_or(DEFAULT_N_ARMS);
        let gen = match kind {
            GeneratorKind::Gaussian => {
                reject_keys(&ctx, &bernoulli_keys)?;
                reject_keys(&ctx, &[("arms", self.arms.is_some())])?;
                let std = match (self.std, self.std_range) {
                    (Some(_), Some(_)) => {
                        return Err(Error::Config(format!("{ctx}: give either `std` or `std_range`, not both")))
                    }
                    (_, Some(r)) => StdSpec::Uniform(r.0),
                    (s, None) => StdSpec::Fixed(s.map_or(1.0, |s| s.0)),
                };
                TaskGenerator::Gaussian {
                    n_arms: n,
                    mean_mean: self.mean_mean.map_or(0.0, |m| m.0),
                    mean_std: self.mean_std.map_or(1.0, |m| m.0),
                    std,
                }
            }
            GeneratorKind::Bernoulli => {
                reject_keys(&ctx, &gaussian_keys)?;
                reject_keys(&ctx, &[("arms", self.arms.is_some())])?;
                TaskGenerator::Bernoulli {
                    n_arms: n,
                    p_range: self.p_range.map_or([0.0, 1.0], |r| r.0),
                    r_range: self.r_range.map_or([1.0, 1.0], |r| r.0),
                }
            }
            GeneratorKind::Fixed => {
                reject_keys(&ctx, &gaussian_keys)?;
                reject_keys(&ctx, &bernoulli_keys)?;
                let arms = self
                    .arms
                    .ok_or_else(|| Error::Config(format!("{ctx}: `arms` is required")))?;
                for (i, arm) in arms.iter().enumerate() {
                    arm.validate()
                        .map_err(|e| Error::Config(format!("{ctx}: arms[{i}]: {e}")))?;
                }
                if let Some(n) = n_arms {
                    if n != arms.len() {
                        return Err(Error::Config(format!(
                            "{ctx}: n_arms = {n} but {} arms are listed",
                            arms.len()
                        )));
                    }
                }
                TaskGenerator::Fixed { arms }
            }
        };
        gen.validate().map_err(|e| Error::Config(format!("{ctx}: {e}")))?;
        Ok(gen)
    }
}

/// Parses and validates a TOML experiment description, applying defaults.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let n_arms = raw.n_arms.map(|c| c.0);
    let generator = match raw.generator {
        Some(g) => g.into_generator(n_arms)?,
        None => TaskGenerator::gaussian_testbed(n_arms.unwrap_or(DEFAULT_N_ARMS)),
    };
    if raw.policy.is_empty() {
        return Err(Error::Config("at least one policy required".into()));
    }
    let policies = raw
        .policy
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.into_spec(i))
        .collect::<Result<Vec<_>>>()?;
    let config = ExperimentConfig {
        n_tasks: raw.n_tasks.map_or(DEFAULT_N_TASKS, |c| c.0),
        horizon: raw.horizon.map_or(DEFAULT_HORIZON, |c| c.0),
        master_seed: raw.seed.unwrap_or(DEFAULT_SEED),
        generator,
        policies,
    };
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> String {
        parse_config(text).unwrap_err().to_string()
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config("[[policy]]\nkind = \"fm\"\n").unwrap();
        assert_eq!((c.n_tasks, c.horizon, c.n_arms(), c.master_seed), (2000, 1000, 10, 0));
        assert_eq!(c.generator, TaskGenerator::gaussian_testbed(10));
        let PolicyKind::Fm(fm) = c.policies[0].kind else { panic!() };
        assert_eq!(fm, FmAgentConfig::default());
        assert_eq!(fm.beta, 0.85);
        assert_eq!(c.policies[0].label, "fm-probabilistic");
    }

    #[test]
    fn baseline_defaults() {
        let c = parse_config(
            "[[policy]]\nkind = \"softmax\"\n[[policy]]\nkind = \"epsilon-greedy\"\n[[policy]]\nkind = \"mea\"\n",
        )
        .unwrap();
        let kinds: Vec<PolicyKind> = c.policies.iter().map(|p| p.kind).collect();
        assert_eq!(
            kinds,
            vec![
                PolicyKind::Softmax { tau: 0.24 },
                PolicyKind::EpsilonGreedy { eps: 0.1 },
                PolicyKind::MedianElimination { eps: 0.95, delta: 0.95 },
            ]
        );
    }

    #[test]
    fn missing_policies() {
        assert!(err("").contains("at least one policy required"));
        assert!(err("policy = []").contains("at least one policy required"));
    }

    #[test]
    fn range_errors_carry_position() {
        let e = err("n_tasks = 5\n\n[[policy]]\nkind = \"softmax\"\ntau = -1\n");
        assert!(e.contains("line 5"), "{e}");
        assert!(e.contains("must be finite and > 0"), "{e}");
        let e = err("horizon = 0\n[[policy]]\nkind = \"uniform\"\n");
        assert!(e.contains("line 1"), "{e}");
    }

    #[test]
    fn unknown_keys_rejected() {
        let e = err("n_task = 5\n[[policy]]\nkind = \"uniform\"\n");
        assert!(e.contains("n_task"), "{e}");
        let e = err("[[policy]]\nkind = \"uniform\"\ncolour = 1\n");
        assert!(e.contains("colour"), "{e}");
        let e = err("[[policy]]\nkind = \"thompson\"\n");
        assert!(e.contains("thompson"), "{e}");
    }

    #[test]
    fn inapplicable_keys_rejected() {
        let e = err("[[policy]]\nkind = \"softmax\"\nbeta = 0.5\n");
        assert!(e.contains("policy[0]") && e.contains("beta"), "{e}");
        let e = err("[generator]\nkind = \"bernoulli\"\nstd = 1.0\n[[policy]]\nkind = \"uniform\"\n");
        assert!(e.contains("std"), "{e}");
    }

    #[test]
    fn generators() {
        let c = parse_config(
            "n_arms = 4\n[generator]\nstd_range = [0.5, 1.5]\n[[policy]]\nkind = \"uniform\"\n",
        )
        .unwrap();
        assert_eq!(
            c.generator,
            TaskGenerator::Gaussian {
                n_arms: 4,
                mean_mean: 0.0,
                mean_std: 1.0,
                std: StdSpec::Uniform([0.5, 1.5])
            }
        );
        let c = parse_config(
            "[generator]\nkind = \"fixed\"\narms = [{ kind = \"bernoulli-scaled\", p = 0.5, r = 1.0 }, { kind = \"gaussian\", mean = 0.9, std = 1.0 }]\n[[policy]]\nkind = \"fm\"\n",
        )
        .unwrap();
        assert_eq!(c.n_arms(), 2);
        let e = err("n_arms = 3\n[generator]\nkind = \"fixed\"\narms = [{ kind = \"gaussian\", mean = 0.0, std = 1.0 }]\n[[policy]]\nkind = \"fm\"\n");
        assert!(e.contains("n_arms"), "{e}");
        let e = err("[generator]\nkind = \"fixed\"\narms = [{ kind = \"gaussian\", mean = 0.0, std = 0.0 }]\n[[policy]]\nkind = \"fm\"\n");
        assert!(e.contains("arms[0]"), "{e}");
    }

    #[test]
    fn semantic_errors() {
        let e = err("n_arms = 20\nhorizon = 10\n[[policy]]\nkind = \"fm\"\n");
        assert!(e.contains("initialization"), "{e}");
        let e = err("[[policy]]\nkind = \"uniform\"\n[[policy]]\nkind = \"uniform\"\n");
        assert!(e.contains("duplicate"), "{e}");
        assert!(err("[[policy]]\nkind = \"mea\"\nepsilon = 1.0\n").contains("(0, 1)"));
    }
}

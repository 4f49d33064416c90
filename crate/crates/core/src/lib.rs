//! Fractional-moment preference bandits.
//!
//! The agent keeps every reward it has seen per arm and scores arm `i`
//! against arm `j` by `A_ij`, the empirical expectation of the positive gap
//! `(R_i - R_j)^beta`. The product `A_i` over all opponents drives greedy or
//! proportional selection. The crate also ships the classic comparison
//! policies, closed-form sample-complexity bounds and a seeded testbed.
//!
//! ```
//! use fracbandit::agent::{Agent, FmAgent, FmAgentConfig};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let mut agent = FmAgent::new(3, FmAgentConfig::default()).unwrap();
//! for _ in 0..20 {
//!     let arm = agent.select(&mut rng);
//!     agent.update(arm, arm as f64).unwrap();
//! }
//! assert_eq!(agent.distributions()[2].max(), Some(2.0));
//! ```

pub mod accum;
pub mod agent;
pub mod baselines;
pub mod bounds;
pub mod config;
pub mod empirical;
mod error;
pub mod preference;
pub mod report;
pub mod select;
pub mod sim;

pub use error::{Error, Result};

//! Concentration bounds and sample-complexity formulas for the
//! fractional-moment policy under binary rewards `R_i in {0, r_i}`.
//!
//! Probability bounds are clamped to `[0, 1]`; sample sizes are rounded up
//! to whole pulls.

use crate::{Error, Result};

fn require(cond: bool, name: &'static str, reason: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::param(name, reason()))
    }
}

fn ceil_pulls(x: f64) -> Result<u64> {
    require(x.is_finite() && x >= 0.0, "sample size", || format!("evaluates to {x}"))?;
    Ok((x.ceil() as u64).max(1))
}

/// Chernoff-Hoeffding tail `exp(-2 a^2 n)` for the mean of `n` variables in `[0, 1]`.
pub fn hoeffding_tail(a: f64, n: u64) -> f64 {
    (-2.0 * a * a * n as f64).exp().clamp(0.0, 1.0)
}

/// The same tail under dependence, weakened by the fractional chromatic
/// number `chi_frac` of the dependency graph.
pub fn dependent_hoeffding_tail(a: f64, n: u64, chi_frac: f64) -> Result<f64> {
    require(chi_frac >= 1.0, "chi_frac", || format!("must be >= 1, got {chi_frac}"))?;
    Ok((-2.0 * a * a * n as f64 / chi_frac).exp().clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beta1SampleSpec {
    pub eps: f64,
    pub delta: f64,
    pub n: usize,
}

impl Beta1SampleSpec {
    pub fn validate(&self) -> Result<()> {
        require(self.eps > 0.0 && self.eps.is_finite(), "eps", || format!("must be > 0, got {}", self.eps))?;
        require(self.delta > 0.0 && self.delta < 1.0, "delta", || format!("must lie in (0, 1), got {}", self.delta))?;
        require(self.n >= 1, "n", || "must be >= 1".into())
    }
}

/// Per-arm pulls `l = ceil((2 / eps^2) ln(2n / delta))` that keep the chance
/// of preferring any non-eps-optimal arm below `delta` when `beta = 1`.
pub fn sample_size_beta1(spec: Beta1SampleSpec) -> Result<u64> {
    spec.validate()?;
    let Beta1SampleSpec { eps, delta, n } = spec;
    ceil_pulls(2.0 / (eps * eps) * (2.0 * n as f64 / delta).ln())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralBetaSpec {
    pub eps: f64,
    pub delta: f64,
    pub n: usize,
    /// Mean of the optimal arm.
    pub mu1: f64,
    /// Reward magnitude of the optimal arm.
    pub r1: f64,
    /// Reward magnitude of the competing arm.
    pub ri: f64,
    pub beta: f64,
}

impl GeneralBetaSpec {
    fn base(&self) -> Beta1SampleSpec {
        Beta1SampleSpec {
            eps: self.eps,
            delta: self.delta,
            n: self.n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.base().validate()?;
        require(self.r1 > 0.0 && self.ri > 0.0, "r1/ri", || {
            format!("reward magnitudes must be > 0, got {} and {}", self.r1, self.ri)
        })?;
        require(self.beta > 0.0 && self.beta.is_finite(), "beta", || format!("must be > 0, got {}", self.beta))?;
        require(self.mu1.is_finite(), "mu1", || format!("must be finite, got {}", self.mu1))
    }
}

/// `gamma_i = (r1 / ri)^(beta - 1) - 1` and `alpha_i = mu1 * gamma_i`.
///
/// Fails when `alpha_i <= -eps`, i.e. `beta` lies outside the admissible
/// range for this pair of arms.
pub fn gamma_alpha(spec: &GeneralBetaSpec) -> Result<(f64, f64)> {
    spec.validate()?;
    let gamma = (spec.r1 / spec.ri).powf(spec.beta - 1.0) - 1.0;
    let alpha = spec.mu1 * gamma;
    debug_assert!(gamma > -1.0);
    // gamma and beta - 1 share a sign whenever r1 > ri
    debug_assert!(spec.r1 < spec.ri || gamma * (spec.beta - 1.0) >= 0.0);
    require(alpha > -spec.eps, "beta", || {
        format!("alpha = {alpha} must exceed -eps = {}", -spec.eps)
    })?;
    Ok((gamma, alpha))
}

/// Upper bound on the chance the policy prefers a non-eps-optimal arm after
/// `l` pulls per arm:
/// `exp(-2((eps + alpha)/2)^2 l) + exp(-2((eps + alpha)/(2(1 + gamma)))^2 l)`.
pub fn misselect_bound(eps: f64, alpha: f64, gamma: f64, l: u64) -> Result<f64> {
    require(eps + alpha > 0.0, "eps + alpha", || format!("must be > 0, got {}", eps + alpha))?;
    require(gamma > -1.0, "gamma", || format!("must be > -1, got {gamma}"))?;
    require(l >= 1, "l", || "must be >= 1".into())?;
    let a = (eps + alpha) / 2.0;
    let b = (eps + alpha) / (2.0 * (1.0 + gamma));
    let l = l as f64;
    Ok(((-2.0 * a * a * l).exp() + (-2.0 * b * b * l).exp()).clamp(0.0, 1.0))
}

/// Coefficient multiplying `ln(2n / delta)` in the per-arm sample size.
pub fn general_coefficient(eps: f64, mu1: f64, gamma: f64) -> Result<f64> {
    let margin = eps + mu1 * gamma;
    require(margin > 0.0, "eps + mu1 * gamma", || format!("must be > 0, got {margin}"))?;
    Ok(if gamma > 0.0 {
        2.0 * (1.0 + gamma) * (1.0 + gamma) / (margin * margin)
    } else {
        2.0 / (margin * margin)
    })
}

/// Per-arm pulls for `beta != 1`, using the dominant term of the two-sided
/// misselection bound.
pub fn sample_size_general(spec: &GeneralBetaSpec) -> Result<u64> {
    let (gamma, _) = gamma_alpha(spec)?;
    sample_size_for_gamma(spec.eps, spec.delta, spec.n, spec.mu1, gamma)
}

/// As [`sample_size_general`] but with `gamma_i` supplied directly.
pub fn sample_size_for_gamma(eps: f64, delta: f64, n: usize, mu1: f64, gamma: f64) -> Result<u64> {
    Beta1SampleSpec { eps, delta, n }.validate()?;
    require(gamma > -1.0, "gamma", || format!("must be > -1, got {gamma}"))?;
    let coef = general_coefficient(eps, mu1, gamma)?;
    ceil_pulls(coef * (2.0 * n as f64 / delta).ln())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiBoundSpec {
    pub n: usize,
    /// Pulls per arm.
    pub m: Vec<u64>,
}

/// `1 + sqrt(n (q - prod(m_k - 1)))` with `q = prod m_k`: an upper bound on
/// the chromatic number of the dependency graph between product terms.
pub fn chi_upper_bound(spec: &ChiBoundSpec) -> Result<f64> {
    require(!spec.m.is_empty(), "m", || "needs at least one arm".into())?;
    require(spec.m.iter().all(|&m| m >= 1), "m", || "every m_k must be >= 1".into())?;
    let q: f64 = spec.m.iter().map(|&m| m as f64).product();
    let reduced: f64 = spec.m.iter().map(|&m| (m - 1) as f64).product();
    Ok(1.0 + (spec.n as f64 * (q - reduced)).sqrt())
}

/// Real-valued per-arm pulls `((n / mu_t^4) ln^2(n / delta))^(1/n)`.
pub fn dependent_rate(n: usize, mu_t: f64, delta: f64) -> Result<f64> {
    require(n >= 2, "n", || format!("must be >= 2, got {n}"))?;
    require(mu_t > 0.0 && mu_t.is_finite(), "mu_t", || format!("must be > 0, got {mu_t}"))?;
    require(delta > 0.0, "delta", || format!("must be > 0, got {delta}"))?;
    let nf = n as f64;
    require(nf / delta > 1.0, "delta", || format!("n / delta must exceed 1, got {}", nf / delta))?;
    let ln_nd = (nf / delta).ln();
    let log_base = nf.ln() - 4.0 * mu_t.ln() + 2.0 * ln_nd.ln();
    Ok((log_base / nf).exp())
}

/// Per-arm pulls from the dependent-variable bound, rounded up.
pub fn sample_size_dependent(n: usize, mu_t: f64, delta: f64) -> Result<u64> {
    require(delta > 0.0 && delta < 1.0, "delta", || format!("must lie in (0, 1), got {delta}"))?;
    ceil_pulls(dependent_rate(n, mu_t, delta)?)
}

/// `g(n) = (n ln^2 n)^(1/n)`, evaluated in log space.
pub fn g(n: u64) -> Result<f64> {
    require(n >= 2, "n", || format!("must be >= 2, got {n}"))?;
    let nf = n as f64;
    Ok(((nf.ln() + 2.0 * nf.ln().ln()) / nf).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GTableRow {
    pub n: u64,
    /// `n ln n`.
    pub weaker: f64,
    pub g: f64,
    /// `n g(n)`.
    pub proposed: f64,
}

impl GTableRow {
    pub fn weaker_rounded(&self) -> u64 {
        self.weaker.round() as u64
    }

    pub fn proposed_rounded(&self) -> u64 {
        self.proposed.round() as u64
    }
}

pub fn g_table_row(n: u64) -> Result<GTableRow> {
    let g = g(n)?;
    let nf = n as f64;
    Ok(GTableRow {
        n,
        weaker: nf * nf.ln(),
        g,
        proposed: nf * g,
    })
}

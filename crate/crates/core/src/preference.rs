//! Pairwise win probabilities and fractional-moment preferences between arms.
//!
//! For two arms with empirical distributions `d_i` and `d_j` the pairwise
//! preference is
//!
//! ```text
//! A_ij = sum_k p_i(r_k) * sum_{l : s_l < r_k} (r_k - s_l)^beta * p_j(s_l)
//! ```
//!
//! and the preference for arm `i` is the product `A_i = prod_{j != i} A_ij`.
//! Only strictly positive gaps enter the inner sum, so ties contribute
//! nothing and the fractional power is always real.
//!
//! Numerators are accumulated exactly (see [`ExactSum`]) as
//! `sum c_k c_l (r_k - s_l)^beta` and divided by `n_i n_j` once, which makes
//! the result independent of the order in which samples arrived.

use crate::accum::ExactSum;
use crate::empirical::EmpiricalDistribution;
use crate::{Error, Result};

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::param("beta", format!("must be finite and > 0, got {beta}")))
    }
}

fn nonempty(d: &EmpiricalDistribution) -> Result<()> {
    if d.is_empty() {
        Err(Error::EmptyDistribution)
    } else {
        Ok(())
    }
}

/// Empirical probability that an independent draw from `di` strictly exceeds
/// one from `dj`.
pub fn prob_greater(di: &EmpiricalDistribution, dj: &EmpiricalDistribution) -> Result<f64> {
    nonempty(di)?;
    nonempty(dj)?;
    let mut wins: u128 = 0;
    let mut below: u128 = 0;
    let mut l = 0;
    let sj = dj.support();
    for a in di.support() {
        while l < sj.len() && sj[l].value < a.value {
            below += sj[l].count as u128;
            l += 1;
        }
        wins += a.count as u128 * below;
    }
    Ok(wins as f64 / (di.n() as f64 * dj.n() as f64))
}

/// Probability that a draw from arm `i` beats every other arm:
/// `M_i = prod_{j != i} P(R_i > R_j)`.
pub fn win_product(dists: &[EmpiricalDistribution], i: usize) -> Result<f64> {
    if i >= dists.len() {
        return Err(Error::ArmOutOfRange {
            index: i,
            n_arms: dists.len(),
        });
    }
    let mut m = 1.0;
    for (j, dj) in dists.iter().enumerate() {
        if j != i {
            m *= prob_greater(&dists[i], dj)?;
        }
    }
    Ok(m)
}

/// Exact numerator `sum c_k c_l (r_k - s_l)^beta` over pairs with `r_k > s_l`.
pub(crate) fn pair_moment_sum(
    di: &EmpiricalDistribution,
    dj: &EmpiricalDistribution,
    beta: f64,
) -> Option<ExactSum> {
    let mut acc = ExactSum::new();
    for a in di.support() {
        for b in dj.below(a.value) {
            let term = (a.value - b.value).powf(beta);
            if !term.is_finite() {
                return None;
            }
            acc.add(a.count * b.count, term);
        }
    }
    Some(acc)
}

pub(crate) fn normalize_pair(sum: &ExactSum, n_i: u64, n_j: u64) -> f64 {
    sum.to_f64() / (n_i as f64 * n_j as f64)
}

/// Fractional-moment preference `A_ij` of the arm behind `di` over the arm
/// behind `dj`.
pub fn preference_pair(
    di: &EmpiricalDistribution,
    dj: &EmpiricalDistribution,
    beta: f64,
) -> Result<f64> {
    check_beta(beta)?;
    nonempty(di)?;
    nonempty(dj)?;
    let non_finite = Error::NonFinitePreference { i: 0, j: 1, beta };
    let sum = pair_moment_sum(di, dj, beta).ok_or(non_finite)?;
    let a = normalize_pair(&sum, di.n(), dj.n());
    if a.is_finite() {
        Ok(a)
    } else {
        Err(Error::NonFinitePreference { i: 0, j: 1, beta })
    }
}

/// Pairwise preferences `A_ij` and their row products `A_i` for one agent.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceState {
    beta: f64,
    /// Row-major `n x n`; the diagonal is unused and held at zero.
    pair_prefs: Vec<f64>,
    prefs: Vec<f64>,
    /// `ln A_i`, `-inf` when any factor is zero. Used for selection so that
    /// products which underflow keep their relative order.
    log_prefs: Vec<f64>,
    n: usize,
}

impl PreferenceState {
    /// Builds a state from a full matrix of pairwise preferences.
    pub fn from_pair_prefs(beta: f64, matrix: &[Vec<f64>]) -> Result<Self> {
        check_beta(beta)?;
        let n = matrix.len();
        if n == 0 {
            return Err(Error::TooFewArms { required: 1, got: 0 });
        }
        let mut flat = vec![0.0; n * n];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::param("pair_prefs", "matrix must be square"));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if !(a.is_finite() && a >= 0.0) {
                    return Err(Error::param(
                        "pair_prefs",
                        format!("entry ({i}, {j}) must be finite and >= 0, got {a}"),
                    ));
                }
                flat[i * n + j] = a;
            }
        }
        let mut state = Self {
            beta,
            pair_prefs: flat,
            prefs: vec![0.0; n],
            log_prefs: vec![f64::NEG_INFINITY; n],
            n,
        };
        state.refresh_products();
        Ok(state)
    }

    pub(crate) fn zeroed(beta: f64, n: usize) -> Self {
        Self {
            beta,
            pair_prefs: vec![0.0; n * n],
            prefs: vec![0.0; n],
            log_prefs: vec![f64::NEG_INFINITY; n],
            n,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n_arms(&self) -> usize {
        self.n
    }

    /// `A_ij`; zero on the diagonal.
    pub fn pair(&self, i: usize, j: usize) -> f64 {
        self.pair_prefs[i * self.n + j]
    }

    pub(crate) fn set_pair(&mut self, i: usize, j: usize, a: f64) {
        self.pair_prefs[i * self.n + j] = a;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.pair_prefs[i * self.n..(i + 1) * self.n]
    }

    /// `A_i` for every arm.
    pub fn prefs(&self) -> &[f64] {
        &self.prefs
    }

    pub fn log_prefs(&self) -> &[f64] {
        &self.log_prefs
    }

    /// Preferences rescaled so the largest is 1, computed from the log
    /// domain. All zeros when every `A_i` is zero.
    pub fn relative_weights(&self) -> Vec<f64> {
        let max = self
            .log_prefs
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        if max == f64::NEG_INFINITY {
            return vec![0.0; self.n];
        }
        self.log_prefs.iter().map(|&l| (l - max).exp()).collect()
    }

    pub(crate) fn refresh_products(&mut self) {
        for i in 0..self.n {
            let (p, l) = row_product(self.row(i), i);
            self.prefs[i] = p;
            self.log_prefs[i] = l;
        }
    }
}

/// `(prod_{j != i} row[j], sum_{j != i} ln row[j])`, with any zero factor
/// forcing `(0, -inf)`.
fn row_product(row: &[f64], i: usize) -> (f64, f64) {
    let mut prod = 1.0;
    let mut log = 0.0;
    for (j, &a) in row.iter().enumerate() {
        if j == i {
            continue;
        }
        if a == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        prod *= a;
        log += a.ln();
    }
    (prod, log)
}

/// Full recomputation of every `A_ij` and `A_i` from the arms' distributions.
pub fn preference_vector(dists: &[EmpiricalDistribution], beta: f64) -> Result<PreferenceState> {
    check_beta(beta)?;
    if dists.len() < 2 {
        return Err(Error::TooFewArms {
            required: 2,
            got: dists.len(),
        });
    }
    for d in dists {
        nonempty(d)?;
    }
    let n = dists.len();
    let mut state = PreferenceState::zeroed(beta, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let err = || Error::NonFinitePreference { i, j, beta };
            let sum = pair_moment_sum(&dists[i], &dists[j], beta).ok_or_else(err)?;
            let a = normalize_pair(&sum, dists[i].n(), dists[j].n());
            if !a.is_finite() {
                return Err(err());
            }
            state.set_pair(i, j, a);
        }
    }
    state.refresh_products();
    Ok(state)
}

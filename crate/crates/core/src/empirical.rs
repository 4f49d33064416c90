//! Per-arm empirical reward distributions.
//!
//! Every observed reward is retained as a `(value, count)` atom. Values are
//! grouped by exact bit equality (after folding `-0.0` into `0.0`), which is
//! what makes discrete rewards collapse onto a small support while
//! continuous rewards stay distinct.

use crate::{Error, Result};

/// One distinct observed value and how many times it was seen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub value: f64,
    pub count: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EmpiricalDistribution {
    support: Vec<Atom>,
    n: u64,
}

fn canonical(r: f64) -> f64 {
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl EmpiricalDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_samples<I: IntoIterator<Item = f64>>(samples: I) -> Result<Self> {
        let mut d = Self::new();
        for r in samples {
            d.observe(r)?;
        }
        Ok(d)
    }

    /// Builds a distribution from `(value, count)` pairs in any order.
    /// Zero counts are skipped and repeated values merged.
    pub fn from_counts<I: IntoIterator<Item = (f64, u64)>>(pairs: I) -> Result<Self> {
        let mut d = Self::new();
        for (v, c) in pairs {
            if c > 0 {
                d.observe_n(v, c)?;
            }
        }
        Ok(d)
    }

    /// Records one reward and returns the index of its atom in the support.
    pub fn observe(&mut self, r: f64) -> Result<usize> {
        self.observe_n(r, 1)
    }

    fn observe_n(&mut self, r: f64, count: u64) -> Result<usize> {
        if !r.is_finite() {
            return Err(Error::NonFiniteReward(r));
        }
        let r = canonical(r);
        let idx = match self.support.binary_search_by(|a| a.value.total_cmp(&r)) {
            Ok(i) => {
                self.support[i].count += count;
                i
            }
            Err(i) => {
                self.support.insert(i, Atom { value: r, count });
                i
            }
        };
        self.n += count;
        Ok(idx)
    }

    /// Total number of samples, counting repeats.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distinct values in ascending order.
    pub fn support(&self) -> &[Atom] {
        &self.support
    }

    pub fn unique_len(&self) -> usize {
        self.support.len()
    }

    /// Atoms whose value is strictly below `r`.
    pub fn below(&self, r: f64) -> &[Atom] {
        let k = self.support.partition_point(|a| a.value < r);
        &self.support[..k]
    }

    /// Atoms whose value is strictly above `r`.
    pub fn above(&self, r: f64) -> &[Atom] {
        let k = self.support.partition_point(|a| a.value <= r);
        &self.support[k..]
    }

    fn ensure_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyDistribution)
        } else {
            Ok(())
        }
    }

    /// Relative frequency of `r` among the samples; 0 for unseen values.
    pub fn pmf(&self, r: f64) -> Result<f64> {
        self.ensure_nonempty()?;
        let r = canonical(r);
        Ok(self
            .support
            .binary_search_by(|a| a.value.total_cmp(&r))
            .map(|i| self.support[i].count as f64 / self.n as f64)
            .unwrap_or(0.0))
    }

    /// `(value, probability)` pairs over the support.
    pub fn pmf_iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.n as f64;
        self.support.iter().map(move |a| (a.value, a.count as f64 / n))
    }

    pub fn mean(&self) -> Result<f64> {
        self.ensure_nonempty()?;
        let total: f64 = self.support.iter().map(|a| a.value * a.count as f64).sum();
        Ok(total / self.n as f64)
    }

    /// Population variance (divisor `n`).
    pub fn variance(&self) -> Result<f64> {
        let mu = self.mean()?;
        let ss: f64 = self
            .support
            .iter()
            .map(|a| {
                let d = a.value - mu;
                d * d * a.count as f64
            })
            .sum();
        Ok(ss / self.n as f64)
    }

    pub fn min(&self) -> Option<f64> {
        self.support.first().map(|a| a.value)
    }

    pub fn max(&self) -> Option<f64> {
        self.support.last().map(|a| a.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn atoms(d: &EmpiricalDistribution) -> Vec<(f64, u64)> {
        d.support().iter().map(|a| (a.value, a.count)).collect()
    }

    #[test]
    fn observe_first_duplicate_and_sorted_insert() {
        let mut d = EmpiricalDistribution::new();
        d.observe(1.0).unwrap();
        assert_eq!(atoms(&d), vec![(1.0, 1)]);
        assert_eq!(d.n(), 1);
        d.observe(1.0).unwrap();
        assert_eq!(atoms(&d), vec![(1.0, 2)]);
        assert_eq!(d.n(), 2);
        d.observe(0.5).unwrap();
        assert_eq!(atoms(&d), vec![(0.5, 1), (1.0, 2)]);
        assert_eq!(d.n(), 3);
    }

    #[test]
    fn observe_rejects_non_finite() {
        let mut d = EmpiricalDistribution::new();
        assert!(matches!(d.observe(f64::NAN), Err(Error::NonFiniteReward(_))));
        assert!(matches!(d.observe(f64::INFINITY), Err(Error::NonFiniteReward(_))));
        assert!(d.is_empty());
    }

    #[test]
    fn signed_zero_shares_an_atom() {
        let d = EmpiricalDistribution::from_samples([0.0, -0.0]).unwrap();
        assert_eq!(atoms(&d), vec![(0.0, 2)]);
    }

    #[test]
    fn pmf_examples() {
        let d = EmpiricalDistribution::from_counts([(0.5, 1), (1.0, 2)]).unwrap();
        assert_eq!(d.pmf(1.0).unwrap(), 2.0 / 3.0);
        assert_eq!(d.pmf(2.0).unwrap(), 0.0);
        let d = EmpiricalDistribution::from_counts([(7.0, 5)]).unwrap();
        assert_eq!(d.pmf(7.0).unwrap(), 1.0);
    }

    #[test]
    fn moments() {
        let d = EmpiricalDistribution::from_samples([1.0, 3.0]).unwrap();
        assert_eq!(d.mean().unwrap(), 2.0);
        assert_eq!(d.variance().unwrap(), 1.0);
        let d = EmpiricalDistribution::from_counts([(5.0, 4)]).unwrap();
        assert_eq!(d.variance().unwrap(), 0.0);
    }

    #[test]
    fn empty_queries_fail() {
        let d = EmpiricalDistribution::new();
        assert!(matches!(d.pmf(0.0), Err(Error::EmptyDistribution)));
        assert!(matches!(d.mean(), Err(Error::EmptyDistribution)));
        assert!(matches!(d.variance(), Err(Error::EmptyDistribution)));
    }

    #[test]
    fn below_and_above_are_strict() {
        let d = EmpiricalDistribution::from_samples([1.0, 2.0, 2.0, 3.0]).unwrap();
        assert_eq!(d.below(2.0).len(), 1);
        assert_eq!(d.above(2.0).len(), 1);
        assert_eq!(d.below(0.0).len(), 0);
        assert_eq!(d.above(3.0).len(), 0);
    }

    proptest! {
        #[test]
        fn invariants_hold(samples in prop::collection::vec(
            prop_oneof![(0u8..6).prop_map(|k| k as f64 * 0.5), -100.0f64..100.0], 1..200)
        ) {
            let d = EmpiricalDistribution::from_samples(samples.iter().copied()).unwrap();
            prop_assert_eq!(d.n(), samples.len() as u64);
            prop_assert_eq!(d.support().iter().map(|a| a.count).sum::<u64>(), d.n());
            prop_assert!(d.support().windows(2).all(|w| w[0].value < w[1].value));
            prop_assert!(d.support().iter().all(|a| a.count >= 1));
            let total: f64 = d.pmf_iter().map(|(_, p)| p).sum();
            prop_assert!((total - 1.0).abs() <= 1e-12);

            let naive_mean = samples.iter().sum::<f64>() / samples.len() as f64;
            prop_assert!((d.mean().unwrap() - naive_mean).abs() <= 1e-9);
        }
    }
}

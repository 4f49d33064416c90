//! Action selection over preference states and score vectors.

use rand::Rng;

use crate::preference::PreferenceState;
use crate::{Error, Result};

/// Index of the largest value, ties broken uniformly at random.
///
/// Panics on an empty slice.
pub fn argmax_uniform_ties<R: Rng + ?Sized>(values: &[f64], rng: &mut R) -> usize {
    assert!(!values.is_empty(), "argmax of an empty slice");
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == max)
        .map(|(i, _)| i)
        .collect();
    match ties.len() {
        // all NaN
        0 => rng.random_range(0..values.len()),
        1 => ties[0],
        k => ties[rng.random_range(0..k)],
    }
}

/// Draws an index from a probability vector with one uniform variate.
pub fn sample_categorical<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    assert!(!probs.is_empty(), "sampling from an empty distribution");
    let total: f64 = probs.iter().sum();
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1)
}

pub fn check_kappa(kappa: f64) -> Result<()> {
    if (0.0..=1.0).contains(&kappa) {
        Ok(())
    } else {
        Err(Error::param("kappa", format!("must lie in [0, 1], got {kappa}")))
    }
}

/// Greedy choice on `A_i` (compared in the log domain), uniform tie-break.
pub fn select_greedy<R: Rng + ?Sized>(state: &PreferenceState, rng: &mut R) -> usize {
    argmax_uniform_ties(state.log_prefs(), rng)
}

/// `pi_i = (1 - kappa) A_i / sum A + kappa / n`, or uniform when every
/// `A_i` is zero.
pub fn selection_probabilities(state: &PreferenceState, kappa: f64) -> Result<Vec<f64>> {
    check_kappa(kappa)?;
    let n = state.n_arms() as f64;
    let w = state.relative_weights();
    let total: f64 = w.iter().sum();
    if total == 0.0 {
        return Ok(vec![1.0 / n; w.len()]);
    }
    Ok(w.iter().map(|&x| (1.0 - kappa) * x / total + kappa / n).collect())
}

pub fn select_probabilistic<R: Rng + ?Sized>(
    state: &PreferenceState,
    kappa: f64,
    rng: &mut R,
) -> Result<usize> {
    let probs = selection_probabilities(state, kappa)?;
    Ok(sample_categorical(&probs, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// State whose `A_i` equal `prefs`: row i holds `prefs[i]` in one slot
    /// and ones elsewhere.
    fn state_with_prefs(prefs: &[f64]) -> PreferenceState {
        let n = prefs.len();
        let m: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match j {
                        _ if j == i => 0.0,
                        _ if j == (i + 1) % n => prefs[i],
                        _ => 1.0,
                    })
                    .collect()
            })
            .collect();
        let s = PreferenceState::from_pair_prefs(0.85, &m).unwrap();
        assert_eq!(s.prefs(), prefs);
        s
    }

    fn frequencies(draws: usize, n: usize, mut f: impl FnMut() -> usize) -> Vec<f64> {
        let mut counts = vec![0usize; n];
        for _ in 0..draws {
            counts[f()] += 1;
        }
        counts.iter().map(|&c| c as f64 / draws as f64).collect()
    }

    #[test]
    fn greedy_strict_argmax() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = state_with_prefs(&[0.1, 0.9]);
        for _ in 0..100 {
            assert_eq!(select_greedy(&s, &mut rng), 1);
        }
    }

    #[test]
    fn greedy_ties_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = state_with_prefs(&[0.5, 0.5]);
        let f = frequencies(10_000, 2, || select_greedy(&s, &mut rng));
        assert!((f[0] - 0.5).abs() <= 0.05, "{f:?}");

        let s = state_with_prefs(&[0.0, 0.0, 0.0]);
        let f = frequencies(10_000, 3, || select_greedy(&s, &mut rng));
        for p in f {
            assert!((p - 1.0 / 3.0).abs() <= 0.03);
        }
    }

    #[test]
    fn probabilistic_is_proportional() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = state_with_prefs(&[3.0, 1.0]);
        assert_eq!(selection_probabilities(&s, 0.0).unwrap(), vec![0.75, 0.25]);
        let f = frequencies(10_000, 2, || select_probabilistic(&s, 0.0, &mut rng).unwrap());
        assert!((f[0] - 0.75).abs() <= 0.02, "{f:?}");
    }

    #[test]
    fn probabilistic_point_mass_and_zero_fallback() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = state_with_prefs(&[1.0, 0.0, 0.0, 0.0]);
        for _ in 0..1000 {
            assert_eq!(select_probabilistic(&s, 0.0, &mut rng).unwrap(), 0);
        }
        let s = state_with_prefs(&[0.0, 0.0]);
        for kappa in [0.0, 0.3, 1.0] {
            assert_eq!(selection_probabilities(&s, kappa).unwrap(), vec![0.5, 0.5]);
        }
    }

    #[test]
    fn kappa_mixing_keeps_every_arm_reachable() {
        let s = state_with_prefs(&[1.0, 0.0, 0.0, 0.0]);
        let p = selection_probabilities(&s, 0.01).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((p[1] - 0.0025).abs() < 1e-15);
        assert!(selection_probabilities(&s, 1.5).is_err());
        assert!(selection_probabilities(&s, -0.1).is_err());
    }
}

//! Pairwise preferences between two small reward samples.

use fracbandit::empirical::EmpiricalDistribution;
use fracbandit::preference::{preference_pair, preference_vector, prob_greater};

fn main() -> fracbandit::Result<()> {
    let a = EmpiricalDistribution::from_samples([1.0, 1.0, 3.0, 0.0])?;
    let b = EmpiricalDistribution::from_samples([0.5, 2.0])?;
    let c = EmpiricalDistribution::from_samples([0.0, 0.0, 4.0])?;

    for (x, y) in a.pmf_iter() {
        println!("P(A = {x}) = {y}");
    }
    println!("P(A > B) = {:.4}", prob_greater(&a, &b)?);
    for beta in [0.5, 0.85, 1.0, 1.5] {
        println!(
            "beta {beta:<4}  A_ab = {:.4}  A_ba = {:.4}",
            preference_pair(&a, &b, beta)?,
            preference_pair(&b, &a, beta)?
        );
    }

    let state = preference_vector(&[a, b, c], 0.85)?;
    for i in 0..state.n_arms() {
        println!("arm {i}: row {:?}  A_i = {:.4}", state.row(i), state.prefs()[i]);
    }
    Ok(())
}

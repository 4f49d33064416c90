//! Sample sizes and tail bounds for binary rewards.

use fracbandit::bounds::*;
use fracbandit::report::{bounds_report, bounds_rows, BoundsParams, TableFormat};

fn main() -> fracbandit::Result<()> {
    let l = sample_size_beta1(Beta1SampleSpec { eps: 0.1, delta: 0.1, n: 10 })?;
    println!("beta = 1, eps = delta = 0.1, 10 arms: {l} pulls per arm");

    for beta in [0.9, 1.1, 1.5] {
        let spec = GeneralBetaSpec { eps: 0.1, delta: 0.1, n: 10, mu1: 0.5, r1: 2.0, ri: 1.0, beta };
        let (gamma, alpha) = gamma_alpha(&spec)?;
        let l = sample_size_general(&spec)?;
        let bound = misselect_bound(spec.eps, alpha, gamma, l)?;
        println!("beta = {beta}: gamma = {gamma:.4}, alpha = {alpha:.4}, l = {l}, misselection bound {bound:.4}");
    }

    let chi = chi_upper_bound(&ChiBoundSpec { n: 3, m: vec![4, 4, 4] })?;
    println!("chromatic bound for 3 arms x 4 pulls: {chi:.3}");
    println!("dependent tail a = 0.1, n = 500: {:.4}", dependent_hoeffding_tail(0.1, 500, chi)?);

    let rows = bounds_rows(&[2, 5, 10, 100, 1000, 1_000_000], BoundsParams { eps: Some(0.1), delta: Some(0.1), mu_t: Some(0.5) })?;
    print!("{}", bounds_report(&rows, TableFormat::Text));
    Ok(())
}

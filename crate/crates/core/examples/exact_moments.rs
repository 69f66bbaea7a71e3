//! Exact expected profiles and Fourier moments from generating functions,
//! checked against brute-force enumeration.
//!
//! ```text
//! cargo run -p treeprofile --example exact_moments
//! ```

use treeprofile::genfun::{exact_fourier_moments, exact_profile_moments, solve_A};
use treeprofile::oracle::{exact_conditioned_law, exact_moments, Statistic};
use treeprofile::weights::OffspringDistribution;

pub fn run_example() -> treeprofile::Result<()> {
    let p = OffspringDistribution::binary(0.5)?;

    let a = solve_A(&p, 8)?;
    println!("size law of the binary GW tree: {:?}", &a.coeffs()[1..]);

    let n = 7;
    let series = exact_profile_moments(&p, n, None)?;
    let ens = exact_conditioned_law(&p, n)?;
    let brute = exact_moments(&ens, Statistic::DistanceProfile);
    println!("n = {n}:  k   E Λ (series)   E Λ (enumeration)");
    for (k, (s, b)) in series.elambda.iter().zip(&brute).enumerate() {
        println!("        {k:2}   {s:12.8}   {b:12.8}");
    }

    let geo = OffspringDistribution::geometric(0.5)?;
    let n = 1024;
    let ts: Vec<f64> = [0.0, 2.0, 8.0].iter().map(|x| x / (n as f64).sqrt()).collect();
    for m in exact_fourier_moments(&geo, n, &ts)? {
        println!(
            "n = {n}, t = {:.4}: E|L̂|²/n² = {:.6}, E|Λ̂|²/n⁴ = {:.6}",
            m.xi,
            m.el2hat / (n * n) as f64,
            m.elambda2hat / (n as f64).powi(4)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> treeprofile::Result<()> {
    run_example()
}

//! Height profile, distance profile (naive and centroid-based) and the
//! Wiener index of sampled trees.
//!
//! ```text
//! cargo run -p treeprofile --example profiles_and_wiener
//! ```

use treeprofile::distprofile::distance_profile_fast;
use treeprofile::rng::RngStream;
use treeprofile::sampler::ConditionedSampler;
use treeprofile::tree::{
    distance_profile_naive, height_profile, wiener_from_sizes, wiener_index, LabelledTree,
};
use treeprofile::weights::OffspringDistribution;

pub fn run_example() -> treeprofile::Result<()> {
    let path = LabelledTree::from_csv("1,2\n2,3\n3,4\n")?;
    println!("path on 4 vertices: Λ = {:?}", distance_profile_fast(&path).counts);

    let p = OffspringDistribution::poisson(1.0)?;
    let mut rng = RngStream::new(7, 0);
    let t = ConditionedSampler::new(&p)?.sample(2_000, &mut rng)?;

    let l = height_profile(&t);
    println!("n = 2000: height {}, width {}", l.height(), l.width());

    let fast = distance_profile_fast(&t);
    let naive = distance_profile_naive(&t);
    assert_eq!(fast, naive);
    println!("diameter {}, Λ(0) = {}, Σ Λ = {}", fast.diameter(), fast.counts[0], fast.total());

    let w = wiener_index(&fast);
    assert_eq!(w, wiener_from_sizes(&t));
    println!("Wiener index {w}, scaled n^(-5/2) W = {:.4}", w as f64 / 2000f64.powf(2.5));
    Ok(())
}

#[allow(dead_code)]
fn main() -> treeprofile::Result<()> {
    run_example()
}

//! Exact-size samplers: conditioned, modified-root, forests and unrooted
//! trees under the three markings.
//!
//! ```text
//! cargo run -p treeprofile --example sample_trees
//! ```

use treeprofile::rng::RngStream;
use treeprofile::sampler::{
    sample_forest, ConditionedSampler, Marking, ModifiedSampler, UnrootedSampler,
};
use treeprofile::weights::OffspringDistribution;

pub fn run_example() -> treeprofile::Result<()> {
    let p = OffspringDistribution::geometric(0.5)?;
    let p0 = OffspringDistribution::poisson(1.0)?;
    let mut rng = RngStream::new(2024, 0);

    let cond = ConditionedSampler::new(&p)?;
    let t = cond.sample(12, &mut rng)?;
    println!("conditioned, n = 12: {}", t.to_parens());

    let m = ModifiedSampler::new(&p, &p0, 12)?;
    let t = m.sample(&mut rng)?;
    println!("modified root, n = 12: {} (root degree {})", t.to_parens(), t.outdegree(0));

    let forest = sample_forest(&p, 15, 3, &mut rng)?;
    let sizes: Vec<usize> = forest.iter().map(|t| t.len()).collect();
    println!("forest of 3 trees on 15 vertices: sizes {sizes:?}");

    for marking in [Marking::Vertex, Marking::Edge, Marking::Leaf] {
        let s = UnrootedSampler::from_laws(&p, &p0, 8, marking)?;
        let t = s.sample(&mut rng)?;
        println!("unrooted ({marking:?}), n = 8: edges {:?}", t.edges());
    }

    // Large trees are cheap: one draw at n = 10⁵.
    let big = cond.sample(100_000, &mut rng)?;
    println!("conditioned, n = 100000: {} leaves", big.leaf_count());
    Ok(())
}

#[allow(dead_code)]
fn main() -> treeprofile::Result<()> {
    run_example()
}

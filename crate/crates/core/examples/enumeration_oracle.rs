//! Enumeration of small trees, exact laws, the rerooting check and a
//! chi-square test of a sampler against its exact law.
//!
//! ```text
//! cargo run -p treeprofile --example enumeration_oracle
//! ```

use std::collections::BTreeMap;

use treeprofile::oracle::{
    check_reroot_preservation, chi_square_keyed, enumerate_labelled, enumerate_ordered,
    exact_conditioned_law, ordered_key,
};
use treeprofile::rng::RngStream;
use treeprofile::sampler::ConditionedSampler;
use treeprofile::weights::OffspringDistribution;

pub fn run_example() -> treeprofile::Result<()> {
    for n in 1..=6 {
        println!(
            "n = {n}: {} ordered trees, {} labelled trees",
            enumerate_ordered(n)?.len(),
            enumerate_labelled(n)?.len()
        );
    }

    let p = OffspringDistribution::binary(0.5)?;
    let law = exact_conditioned_law(&p, 4)?.law_by(ordered_key);
    println!("binary law at n = 4: {law:?}");

    let s = ConditionedSampler::new(&p)?;
    let mut rng = RngStream::new(11, 0);
    let mut seen: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..20_000 {
        *seen.entry(s.sample(4, &mut rng)?.to_parens()).or_default() += 1;
    }
    let chi = chi_square_keyed(&law, &seen)?;
    println!("sampler vs exact law: χ² = {:.3}, dof {}, p = {:.3}", chi.statistic, chi.dof, chi.p_value);

    let d = check_reroot_preservation(&OffspringDistribution::geometric(0.5)?, 6)?;
    println!("rerooting discrepancy up to size 6: {d:.3e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> treeprofile::Result<()> {
    run_example()
}

//! Weight specifications, criticalization and the unrooted-to-rooted
//! reduction.
//!
//! ```text
//! cargo run -p treeprofile --example weights_and_laws
//! ```

use treeprofile::weights::{criticalize, unrooted_critical, Model, WeightSpec};

pub fn run_example() -> treeprofile::Result<()> {
    // Any equivalent weight sequence gives the same conditioned tree; the
    // critical member is the one with mean 1.
    let spec = WeightSpec::from_json(r#"{"kind":"poisson","params":{"scale":1.0,"rate":3.0}}"#)?;
    let Model::Rooted(ws) = spec.to_model()? else {
        unreachable!("poisson without `unrooted` is rooted")
    };
    let (p, a, b) = criticalize(&ws)?;
    println!("poisson(rate 3) → critical law with a = {a:.6}, b = {b:.6}");
    println!("  mean {:.12}, σ² = {:.6}", p.mean(), p.variance());

    // Unrooted weights reduce to a pair (p, p°) by marking a vertex.
    let spec = WeightSpec::from_json(
        r#"{"kind":"factorial_unrooted","params":{"scale":1.0,"ratio":0.5,"shift":1}}"#,
    )?;
    let Model::Unrooted(w) = spec.to_model()? else {
        unreachable!("factorial weights are unrooted")
    };
    let (p, p0) = unrooted_critical(&w)?;
    println!("factorial unrooted weights:");
    println!("  p  = {:?}", &p.probs()[..5]);
    println!("  p° = {:?}", &p0.probs()[..5]);
    println!("  σ = {:.6}", p.sigma());
    Ok(())
}

#[allow(dead_code)]
fn main() -> treeprofile::Result<()> {
    run_example()
}

//! Running named experiments with a small JSON configuration, the same way
//! the `experiment` subcommand does.
//!
//! ```text
//! cargo run --release -p treeprofile --example run_experiment
//! ```

use treeprofile::experiments::{exp_profile_mean, run_named, ProfileMeanConfig};

pub fn run_example() -> treeprofile::Result<()> {
    let (echo, out) = run_named("root_degree", r#"{"n": 500, "reps": 2000}"#, 42)?;
    println!("config with defaults: {echo}");
    print!("{}", out.results.to_csv());
    println!("summary: {}", out.summary);

    let c: ProfileMeanConfig =
        serde_json::from_str(r#"{"n": 1000, "reps": 300, "delta": 0.25}"#).expect("valid config");
    let r = exp_profile_mean(&c, 42)?;
    println!("scaled height profile at n = 1000 ({} reps):", r.reps);
    for b in &r.bins {
        println!(
            "  [{:.2}, {:.2})  {:.4} ± {:.4}   limit {:.4}",
            b.x0, b.x1, b.estimate.value, b.estimate.stderr, b.reference
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> treeprofile::Result<()> {
    run_example()
}

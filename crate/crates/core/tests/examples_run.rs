//! Every example doubles as a smoke test.

#[allow(dead_code)]
#[path = "../examples/weights_and_laws.rs"]
mod weights_and_laws;

#[test]
fn weights_and_laws_runs() {
    weights_and_laws::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/sample_trees.rs"]
mod sample_trees;

#[test]
fn sample_trees_runs() {
    sample_trees::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/profiles_and_wiener.rs"]
mod profiles_and_wiener;

#[test]
fn profiles_and_wiener_runs() {
    profiles_and_wiener::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/exact_moments.rs"]
mod exact_moments;

#[test]
fn exact_moments_runs() {
    exact_moments::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/enumeration_oracle.rs"]
mod enumeration_oracle;

#[test]
fn enumeration_oracle_runs() {
    enumeration_oracle::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/run_experiment.rs"]
mod run_experiment;

#[test]
fn run_experiment_runs() {
    run_experiment::run_example().unwrap();
}

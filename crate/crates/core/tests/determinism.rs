use treeprofile::experiments::{run_named, EXPERIMENTS};

fn csv_under(threads: usize, name: &str, config: &str, seed: u64) -> (String, String, String) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let (_, out) = run_named(name, config, seed).unwrap();
        (out.results.to_csv(), out.reference.to_csv(), out.summary.to_string())
    })
}

/// Small configurations that run every experiment in well under a second.
fn small_config(name: &str) -> &'static str {
    match name {
        "profile_mean" => r#"{"n": 300, "reps": 40}"#,
        "distance_profile_mean" => r#"{"n": 200, "reps": 20}"#,
        "width" => r#"{"ns": [100, 200], "reps": 30}"#,
        "wiener" => r#"{"n": 300, "reps": 30}"#,
        "root_degree" => r#"{"n": 100, "reps": 200}"#,
        "big_branch" => r#"{"ns": [100, 200], "reps": 100}"#,
        "moment_bounds" => r#"{"ns": [64, 128], "reps": 30}"#,
        "fourier_decay" => {
            r#"{"ns": [16, 32], "xis": [1, 2], "mc_n": 32, "mc_reps": 40, "scaled_n": 64, "scaled_etas": [4]}"#
        }
        "holder" => r#"{"ns": [100, 200], "reps": 20, "bootstrap_resamples": 50}"#,
        "leafbias_proximity" => {
            r#"{"ns": [50, 100], "reps": 40, "exact_ns": [4], "exact_reps": 2000, "bootstrap_resamples": 20}"#
        }
        other => panic!("no small config for {other}"),
    }
}

#[test]
fn every_experiment_is_reproducible_and_thread_independent() {
    for &name in EXPERIMENTS {
        let c = small_config(name);
        let one = csv_under(1, name, c, 5);
        assert_eq!(one, csv_under(1, name, c, 5), "{name}: rerun");
        assert_eq!(one, csv_under(4, name, c, 5), "{name}: thread count");
        assert_ne!(one.0, csv_under(1, name, c, 6).0, "{name}: seed ignored");
    }
}

#[test]
fn unknown_experiment_and_fields_are_rejected() {
    assert!(run_named("nope", "{}", 1).is_err());
    assert!(run_named("width", r#"{"nss": [10]}"#, 1).is_err());
}

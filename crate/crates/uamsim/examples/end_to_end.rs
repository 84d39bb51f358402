//! The whole pipeline in one call: scenario, equilibrium, tasks, fleet,
//! capacity, reports, manifest — the same path the `uamsim run` command
//! takes.
//!
//! ```bash
//! cargo run -p uamsim --example end_to_end
//! ```

use uamsim::pipeline::{cmd_run, RunOptions};

fn main() {
    let dir = std::env::temp_dir().join("uamsim-end-to-end");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("config.toml");
    std::fs::write(
        &config_path,
        r#"
beta_promotion = 0.4
promotion_index_threshold = 3
convergence_tolerance = 0.005
time_saving_threshold = 1200
separation_default = 180.0
assignment_iterations = 6
random_seed = 7

[synthetic]
nodes = 100
airports = 3
trips = 800
"#,
    )
    .unwrap();

    let outcome = cmd_run(&RunOptions {
        config_path,
        out_root: dir.clone(),
        seed: None,
        threads: None,
        paper_compat: true,
    })
    .expect("pipeline runs");

    println!(
        "run finished: {} air trips, fleet of {}, converged = {}",
        outcome.n_uam, outcome.fleet_size, outcome.converged
    );
    println!("outputs in {}:", outcome.out_dir.display());
    let mut names: Vec<String> = std::fs::read_dir(&outcome.out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in names {
        println!("  {name}");
    }

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(outcome.out_dir.join("manifest.json")).unwrap())
            .unwrap();
    println!(
        "manifest hashes {} output file(s) under config hash {}",
        manifest["outputs"].as_object().unwrap().len(),
        manifest["config_hash"].as_str().unwrap()
    );
}

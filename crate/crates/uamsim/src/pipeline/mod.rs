//! End-to-end orchestration behind the `uamsim` command-line tool.
//!
//! `cmd_run` executes the whole pipeline — scenario, driving baseline,
//! equilibrium, task generation, fleet sizing, capacity comparison — and
//! writes every report plus a manifest into an output directory named by
//! the hash of the effective configuration, so distinct configs never
//! overwrite each other and reruns of the same config land in the same
//! place with identical bytes.

pub mod manifest;
pub mod reports;

pub use manifest::RunManifest;
pub use reports::{capacity_rows, read_tasks, CapacityRow};

use crate::equilibrium;
use crate::fleet::{self, TaskGeometry, TurnaroundTimes};
use crate::flight::{FlightError, FlightProfile};
use crate::scenario::{
    generate_synthetic_scenario_with_config, load_scenario, write_scenario_csvs, Scenario,
    ScenarioConfig, ScenarioError, ScenarioPaths,
};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Flight(#[from] FlightError),
    #[error(transparent)]
    Fleet(#[from] fleet::FleetError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub config_path: PathBuf,
    pub out_root: PathBuf,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    /// Forces the published climb distance and the 180 s separation
    /// default, regardless of the config file.
    pub paper_compat: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub converged: bool,
    pub n_uam: usize,
    pub fleet_size: u32,
}

/// Applies CLI overrides onto a loaded config.
fn effective_config(
    config_path: &Path,
    seed: Option<u64>,
    paper_compat: bool,
) -> Result<ScenarioConfig, ScenarioError> {
    let mut config = ScenarioConfig::from_toml_path(config_path)?;
    if let Some(seed) = seed {
        config.random_seed = seed;
    }
    if paper_compat {
        config.paper_compat_d1 = true;
        config.separation_default = 180.0;
    }
    Ok(config)
}

fn config_hash(config: &ScenarioConfig) -> String {
    let canonical = toml::to_string(config).expect("config serializes");
    manifest::sha256_hex(canonical.as_bytes())[..12].to_string()
}

fn build_scenario(
    config: &ScenarioConfig,
    manifest: &mut RunManifest,
) -> Result<Scenario, ScenarioError> {
    if let Some(paths) = &config.paths {
        for (name, path) in [
            ("nodes", &paths.nodes),
            ("links", &paths.links),
            ("airports", &paths.airports),
            ("aircraft", &paths.aircraft),
            ("demand", &paths.demand),
        ] {
            if let Ok(digest) = manifest::file_digest(path) {
                manifest.inputs.insert(name.to_string(), digest);
            }
        }
        load_scenario(paths, config.clone())
    } else if let Some(synth) = config.synthetic {
        manifest.inputs.insert(
            "synthetic".to_string(),
            format!(
                "seed={} nodes={} airports={} trips={}",
                config.random_seed, synth.nodes, synth.airports, synth.trips
            ),
        );
        generate_synthetic_scenario_with_config(
            config.random_seed,
            synth.nodes,
            synth.airports,
            synth.trips,
            config.clone(),
        )
    } else {
        Err(ScenarioError::InvariantViolation(
            "config must provide either [paths] or [synthetic]".to_string(),
        ))
    }
}

fn with_pool<T: Send>(
    threads: Option<usize>,
    work: impl FnOnce() -> T + Send,
) -> Result<T, PipelineError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| PipelineError::ThreadPool(e.to_string()))?;
    Ok(pool.install(work))
}

/// Runs the full pipeline and writes all reports. The caller maps the
/// outcome to an exit status: ingestion failures are errors, hitting the
/// iteration cap is reported through `converged` with outputs intact.
pub fn cmd_run(opts: &RunOptions) -> Result<RunOutcome, PipelineError> {
    let config = effective_config(&opts.config_path, opts.seed, opts.paper_compat)?;
    let hash = config_hash(&config);
    let out_dir = opts.out_root.join(format!("run-{hash}"));
    std::fs::create_dir_all(&out_dir)?;

    let threads = opts.threads;
    let mut manifest = RunManifest::new(hash, threads.unwrap_or(0));
    let scenario = build_scenario(&config, &mut manifest)?;
    let profile = FlightProfile::from_config(&config.flight_profile, config.paper_compat_d1)?;

    let (outcome, tasks, combined, capacity, stage_wall) = with_pool(threads, || {
        let mut wall: BTreeMap<String, f64> = BTreeMap::new();
        let clock = Instant::now();
        let outcome = equilibrium::run_to_equilibrium(&scenario)?;
        wall.insert("equilibrium".into(), clock.elapsed().as_secs_f64());

        let clock = Instant::now();
        let (tasks, geometry) = fleet::generate_tasks(
            &outcome.itineraries,
            &scenario.airports,
            &scenario.aircraft,
            &scenario.network,
        )?;
        wall.insert("task_generation".into(), clock.elapsed().as_secs_f64());

        let clock = Instant::now();
        let turnaround = fleet::scenario_turnaround(&scenario, &profile);
        let combined = fleet::size_combined(
            &tasks,
            &geometry,
            &scenario.aircraft,
            &turnaround,
            scenario.config.downward_substitution,
        )?;
        wall.insert("fleet_sizing".into(), clock.elapsed().as_secs_f64());

        let capacity = capacity_rows(&scenario, scenario.config.asr_s);
        Ok::<_, PipelineError>((outcome, tasks, combined, capacity, wall))
    })??;
    manifest.stage_wall_s = stage_wall;
    manifest.converged = outcome.report.converged;
    if !outcome.report.converged {
        manifest.warnings.push(format!(
            "equilibrium hit the iteration cap ({}) before the switch rate fell below {}",
            scenario.config.iteration_cap, scenario.config.convergence_tolerance
        ));
    }

    type Writer<'a> = Box<dyn Fn(&Path) -> std::io::Result<()> + 'a>;
    let files: Vec<(&str, Writer<'_>)> = vec![
        (
            "equilibrium_log.csv",
            Box::new(|p: &Path| reports::write_equilibrium_log(p, &outcome.report.log)),
        ),
        (
            "thresholds.csv",
            Box::new(|p: &Path| reports::write_thresholds(p, &outcome.report.threshold_curve)),
        ),
        (
            "report.csv",
            Box::new(|p: &Path| reports::write_report(p, &outcome.report)),
        ),
        (
            "departures.csv",
            Box::new(|p: &Path| reports::write_departures(p, &outcome.departures)),
        ),
        (
            "tasks.csv",
            Box::new(|p: &Path| reports::write_tasks(p, &tasks)),
        ),
        (
            "fleet_report.csv",
            Box::new(|p: &Path| reports::write_fleet_report(p, &combined)),
        ),
        (
            "rotations.csv",
            Box::new(|p: &Path| reports::write_rotations(p, &combined)),
        ),
        (
            "capacity_compare.csv",
            Box::new(|p: &Path| reports::write_capacity(p, &capacity)),
        ),
    ];
    for (name, write) in &files {
        let path = out_dir.join(name);
        write(&path)?;
        manifest.record_output(&path)?;
    }
    if scenario.config.dump_link_volumes {
        let path = out_dir.join("link_volumes.csv");
        reports::write_link_volumes(&path, &outcome.field)?;
        manifest.record_output(&path)?;
    }
    manifest.write(&out_dir.join("manifest.json"))?;

    Ok(RunOutcome {
        out_dir,
        converged: outcome.report.converged,
        n_uam: outcome.report.n_uam,
        fleet_size: combined.total_fleet,
    })
}

/// Writes just the land-side vs air-side capacity comparison.
pub fn cmd_capacity(
    config_path: &Path,
    out_dir: &Path,
    seed: Option<u64>,
    paper_compat: bool,
) -> Result<PathBuf, PipelineError> {
    let config = effective_config(config_path, seed, paper_compat)?;
    let mut manifest = RunManifest::new(config_hash(&config), 0);
    let scenario = build_scenario(&config, &mut manifest)?;
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join("capacity_compare.csv");
    reports::write_capacity(&path, &capacity_rows(&scenario, scenario.config.asr_s))?;
    Ok(path)
}

/// Solves the fleet model for an existing tasks.csv without running any
/// simulation. A config is only needed for repositioning distances,
/// charging times, and the substitution flag; without one, turnarounds
/// are zero and types never substitute.
pub fn cmd_fleet_only(
    tasks_path: &Path,
    out_dir: &Path,
    config_path: Option<&Path>,
) -> Result<PathBuf, PipelineError> {
    let tasks = read_tasks(tasks_path)?;
    let (turnaround, catalog, geometry, substitution) = match config_path {
        Some(config_path) => {
            let config = effective_config(config_path, None, false)?;
            let mut manifest = RunManifest::new(config_hash(&config), 0);
            let scenario = build_scenario(&config, &mut manifest)?;
            let profile =
                FlightProfile::from_config(&config.flight_profile, config.paper_compat_d1)?;
            let geometry = tasks
                .iter()
                .map(|t| {
                    let origin = scenario.airport(&t.origin_airport).ok_or_else(|| {
                        ScenarioError::DanglingReference(t.origin_airport.0.clone())
                    })?;
                    let dest = scenario.airport(&t.destination_airport).ok_or_else(|| {
                        ScenarioError::DanglingReference(t.destination_airport.0.clone())
                    })?;
                    Ok(TaskGeometry {
                        distance_mi: scenario.network.distance_miles(origin.anchor, dest.anchor),
                        runway_limit_ft: origin
                            .longest_runway_ft()
                            .min(dest.longest_runway_ft()),
                    })
                })
                .collect::<Result<Vec<_>, ScenarioError>>()?;
            (
                fleet::scenario_turnaround(&scenario, &profile),
                scenario.aircraft.clone(),
                geometry,
                config.downward_substitution,
            )
        }
        None => {
            let geometry = vec![
                TaskGeometry {
                    distance_mi: 0.0,
                    runway_limit_ft: 0.0,
                };
                tasks.len()
            ];
            (TurnaroundTimes::zero(&tasks), Vec::new(), geometry, false)
        }
    };
    let combined = fleet::size_combined(&tasks, &geometry, &catalog, &turnaround, substitution)?;
    std::fs::create_dir_all(out_dir)?;
    let report_path = out_dir.join("fleet_report.csv");
    reports::write_fleet_report(&report_path, &combined)?;
    reports::write_rotations(&out_dir.join("rotations.csv"), &combined)?;
    Ok(report_path)
}

/// Generates a synthetic scenario, writes its CSVs, and drops a ready-to-
/// run config.toml next to them.
pub fn cmd_synth(
    seed: u64,
    nodes: u32,
    airports: u32,
    trips: u32,
    out_dir: &Path,
) -> Result<PathBuf, PipelineError> {
    let scenario = crate::scenario::generate_synthetic_scenario(seed, nodes, airports, trips)?;
    write_scenario_csvs(&scenario, out_dir)?;
    let mut config = scenario.config.clone();
    config.paths = Some(ScenarioPaths {
        nodes: "nodes.csv".into(),
        links: "links.csv".into(),
        airports: "airports.csv".into(),
        aircraft: "aircraft.csv".into(),
        demand: "demand.csv".into(),
    });
    config.synthetic = None;
    let path = out_dir.join("config.toml");
    std::fs::write(&path, toml::to_string(&config).expect("config serializes"))?;
    Ok(path)
}


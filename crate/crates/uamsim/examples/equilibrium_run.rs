//! Run the mode-split equilibrium on a synthetic region and print the
//! iteration log plus the benefit curve.
//!
//! ```bash
//! cargo run -p uamsim --example equilibrium_run
//! ```

use uamsim::equilibrium::run_to_equilibrium;
use uamsim::scenario::generate_synthetic_scenario;

fn main() {
    let scenario = generate_synthetic_scenario(11, 196, 4, 1200).expect("valid dimensions");
    let outcome = run_to_equilibrium(&scenario).expect("profile is valid");
    let report = &outcome.report;

    println!("iter  n_air  n_ground  switched  median saving");
    for row in &report.log {
        println!(
            "{:4}  {:5}  {:8}  {:8}  {:9.1} s",
            row.iter, row.n_uam, row.n_ground, row.switched, row.median_uam_saving_s
        );
    }
    println!(
        "\nconverged: {} after {} iteration(s); {} air / {} ground trips",
        report.converged, report.iterations, report.n_uam, report.n_ground
    );
    println!(
        "aggregate benefit: air {:+.1} h, ground {:+.1} h (vs the all-driving baseline)",
        report.uam_benefit_s / 3600.0,
        report.ground_benefit_s / 3600.0
    );
    println!(
        "median driving baseline among air trips: {:.1} min",
        report.median_driving_among_uam_s / 60.0
    );

    println!("\nbenefited trips by minimum saving:");
    for point in &report.threshold_curve {
        println!(
            "  >= {:4.0} min saved: {:4} trips (median driving {:.1} min)",
            point.threshold_s as f64 / 60.0,
            point.n_benefited,
            point.median_driving_s / 60.0
        );
    }

    // No air trip is slower than its driving baseline at the fixed point.
    let violations = outcome
        .state
        .times
        .iter()
        .zip(&outcome.state.uam)
        .filter(|(t, &u)| u && t.t_uam > t.t_driving)
        .count();
    println!("\nair trips slower than their baseline: {violations}");
}

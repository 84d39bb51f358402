//! Generate a seeded synthetic scenario and write it out as CSV files.
//!
//! ```bash
//! cargo run -p uamsim --example synth_scenario
//! ```

use uamsim::scenario::{generate_synthetic_scenario, write_scenario_csvs};

fn main() {
    let scenario = generate_synthetic_scenario(7, 100, 3, 500).expect("valid dimensions");

    println!(
        "network: {} nodes, {} links",
        scenario.network.node_count(),
        scenario.network.link_count()
    );
    for airport in &scenario.airports {
        println!(
            "airport {} at node {} ({} runway(s), longest {:.0} ft, separation {:.0} s)",
            airport.id,
            scenario.network.node(airport.anchor).label,
            airport.runways.len(),
            airport.longest_runway_ft(),
            airport.separation_s
        );
    }
    println!(
        "catalog: {} aircraft types ({} .. {} seats)",
        scenario.aircraft.len(),
        scenario.aircraft.iter().map(|t| t.seats).min().unwrap(),
        scenario.aircraft.iter().map(|t| t.seats).max().unwrap()
    );
    let peak = scenario
        .demand
        .iter()
        .filter(|t| (25_200..32_400).contains(&t.departure_s))
        .count();
    println!(
        "demand: {} trips, {} departing 07:00-09:00",
        scenario.demand.len(),
        peak
    );

    let dir = std::env::temp_dir().join("uamsim-synth-example");
    write_scenario_csvs(&scenario, &dir).expect("writable temp dir");
    println!("wrote CSVs to {}", dir.display());

    // Generation is a pure function of (seed, dimensions).
    let again = generate_synthetic_scenario(7, 100, 3, 500).unwrap();
    assert_eq!(scenario, again);
    println!("re-generation with the same seed is identical");
}

//! Land-side vs air-side passenger throughput per airport, with the
//! binding constraint flagged.
//!
//! ```bash
//! cargo run -p uamsim --example capacity_compare
//! ```

use uamsim::pipeline::capacity_rows;
use uamsim::scenario::generate_synthetic_scenario;

fn main() {
    let scenario = generate_synthetic_scenario(3, 144, 5, 100).expect("valid dimensions");
    let rows = capacity_rows(&scenario, scenario.config.asr_s);

    println!("airport  landside pax/h  airside pax/h  largest fit  binding side");
    for row in &rows {
        println!(
            "{:7}  {:14.0}  {:13}  {:11}  {}",
            row.airport.0,
            row.landside_pax_hr,
            row.airside_pax_hr
                .map(|v| format!("{v:.0}"))
                .unwrap_or_else(|| "-".into()),
            row.aircraft.clone().unwrap_or_else(|| "-".into()),
            row.binding
        );
    }

    let landside_bound = rows.iter().filter(|r| r.binding == "landside").count();
    println!(
        "\n{} of {} airports are limited by ground access rather than runway throughput",
        landside_bound,
        rows.len()
    );
}

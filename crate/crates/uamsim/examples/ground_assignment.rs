//! Congestion-aware ground assignment: load a morning's demand onto the
//! network and compare realized times against the free-flow floor.
//!
//! ```bash
//! cargo run -p uamsim --example ground_assignment
//! ```

use uamsim::ground::{assign, free_flow_times, TripTime};
use uamsim::scenario::generate_synthetic_scenario;

fn main() {
    let scenario = generate_synthetic_scenario(21, 100, 2, 1500).expect("valid dimensions");

    let loaded = assign(&scenario.network, &scenario.demand, 8);
    let free = free_flow_times(&scenario.network, &scenario.demand);

    let mut reachable = 0usize;
    let mut unreachable = 0usize;
    let mut total_delay = 0.0;
    let mut worst: (f64, String) = (0.0, String::new());
    for trip in &scenario.demand {
        match loaded.time(&trip.id).unwrap() {
            TripTime::Reachable(t) => {
                reachable += 1;
                let floor = free.time(&trip.id).unwrap().seconds().unwrap();
                let delay = t - floor;
                total_delay += delay;
                if delay > worst.0 {
                    worst = (delay, trip.id.to_string());
                }
            }
            TripTime::Unreachable => unreachable += 1,
        }
    }
    println!(
        "{reachable} trips routed, {unreachable} unreachable, vehicle-hours {:.1}",
        loaded.total_vehicle_hours()
    );
    println!(
        "mean congestion delay {:.1} s; worst {:.1} s on trip {}",
        total_delay / reachable as f64,
        worst.0,
        worst.1
    );

    // The most loaded link/period buckets.
    let mut states = loaded.link_states();
    states.sort_by(|a, b| b.volume_vph.total_cmp(&a.volume_vph));
    println!("\nbusiest link/period buckets:");
    for s in states.iter().take(5) {
        let link = scenario.network.link(s.link);
        println!(
            "link {:4} period {:2}  volume {:6.1} vph (capacity {:6.1})  {:6.1} s vs {:6.1} s free",
            s.link,
            s.period,
            s.volume_vph,
            link.capacity_vph,
            s.congested_s,
            link.free_flow_s()
        );
    }
}

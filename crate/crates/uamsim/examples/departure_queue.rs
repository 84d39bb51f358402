//! The departure queue under pressure: a morning bank of flights leaving
//! one airport, with runway separation forcing holds.
//!
//! ```bash
//! cargo run -p uamsim --example departure_queue
//! ```

use uamsim::dispatch::{simulate_departures, FlightRequest};
use uamsim::scenario::{Airport, AirportId, NodeId, Runway, TripId};

fn airport(id: &str, runways: usize, separation_s: f64) -> Airport {
    Airport {
        id: AirportId(id.into()),
        anchor: NodeId(0),
        runways: vec![
            Runway {
                length_ft: 5000.0,
                width_ft: 100.0,
            };
            runways
        ],
        separation_s,
        landside_occupancy: 1.67,
        landside_cap_vph: 2000.0,
        hold_capacity: None,
    }
}

fn main() {
    let airports = vec![airport("ORIG", 1, 90.0), airport("DEST", 2, 90.0)];

    // Twelve flights all ready within the same minute.
    let requests: Vec<FlightRequest> = (0..12)
        .map(|i| FlightRequest {
            trip: TripId(format!("t{i:02}")),
            party: 2,
            origin_airport: 0,
            destination_airport: 1,
            ready_s: 28_800.0 + (i % 3) as f64 * 20.0,
            flight_base_s: 1_500.0,
            aircraft: "lift-9".into(),
            charging_s: 0.0,
        })
        .collect();

    let outcomes = simulate_departures(&requests, &airports);

    println!("trip   ready     depart    hold   runway  landing");
    for (request, outcome) in requests.iter().zip(&outcomes) {
        println!(
            "{}  {:8.0}  {:8.0}  {:5.0}  {:6}  {:8.0}",
            request.trip,
            request.ready_s,
            outcome.depart_s,
            outcome.hold_s,
            outcome.runway,
            outcome.land_s
        );
    }

    // Successive departures on the single runway sit >= 90 s apart.
    let mut departs: Vec<f64> = outcomes.iter().map(|o| o.depart_s).collect();
    departs.sort_by(f64::total_cmp);
    let min_gap = departs
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    println!("\nsmallest gap between departures: {min_gap:.0} s");
    let last_hold = outcomes.iter().map(|o| o.hold_s).fold(0.0, f64::max);
    println!("longest hold in the bank: {last_hold:.0} s");
}

//! Property tests over the pure kernels: the travel-time curve, the
//! volume-delay function, type selection, and itinerary decomposition.

use proptest::prelude::*;
use uamsim::dispatch::{simulate_departures, FlightRequest};
use uamsim::flight::{flight_time_minutes, FlightProfile};
use uamsim::fleet::select_aircraft;
use uamsim::ground::congested_link_time;
use uamsim::scenario::{AircraftType, Airport, AirportId, NodeId, Runway, TripId};

fn catalog() -> Vec<AircraftType> {
    let spec = [("a3", 3_u32, 1700.0), ("b9", 9, 2100.0), ("c78", 78, 4600.0)];
    spec.iter()
        .map(|&(name, seats, runway)| AircraftType {
            name: name.into(),
            seats,
            range_mi: 1000.0,
            min_runway_ft: runway,
            charging_s: 0.0,
            runway_occupancy_s: 45.0,
        })
        .collect()
}

proptest! {
    #[test]
    fn flight_time_non_negative_and_monotone(
        a in 0.0_f64..500.0,
        b in 0.0_f64..500.0,
    ) {
        let profile = FlightProfile::published();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let t_lo = flight_time_minutes(lo, &profile).unwrap();
        let t_hi = flight_time_minutes(hi, &profile).unwrap();
        prop_assert!(t_lo >= 0.0);
        // Monotone within each branch; across the boundary the curve
        // drops, so only compare when both sit on the same side.
        let split = profile.climb_distance_mi + profile.descent_distance_mi;
        if hi <= split || lo > split {
            prop_assert!(t_hi >= t_lo - 1e-12);
        }
    }

    #[test]
    fn volume_delay_monotone_and_floored(
        fft in 1.0_f64..2000.0,
        cap in 1.0_f64..2000.0,
        alpha in 0.0_f64..2.0,
        beta in 1.0_f64..6.0,
        v1 in 0.0_f64..4000.0,
        v2 in 0.0_f64..4000.0,
    ) {
        let (lo, hi) = if v1 <= v2 { (v1, v2) } else { (v2, v1) };
        let t_lo = congested_link_time(fft, lo, cap, alpha, beta);
        let t_hi = congested_link_time(fft, hi, cap, alpha, beta);
        prop_assert!(t_lo >= fft);
        prop_assert!(t_hi >= t_lo);
    }

    #[test]
    fn selection_always_covers_the_party(party in 1_u32..300) {
        let catalog = catalog();
        let assignment = select_aircraft(&catalog, party, 100.0, 5000.0).unwrap();
        prop_assert!(assignment.task_count * assignment.aircraft.seats >= party);
        if assignment.task_count == 1 {
            // Smallest sufficient type: nothing smaller would fit.
            for t in &catalog {
                if t.seats < assignment.aircraft.seats {
                    prop_assert!(t.seats < party);
                }
            }
        } else {
            // Splits only happen past the largest type.
            prop_assert!(party > 78);
        }
    }

    #[test]
    fn departure_outcomes_decompose_exactly(
        readies in proptest::collection::vec(0.0_f64..4000.0, 1..40),
    ) {
        let airports = vec![
            Airport {
                id: AirportId("A".into()),
                anchor: NodeId(0),
                runways: vec![Runway { length_ft: 5000.0, width_ft: 100.0 }],
                separation_s: 120.0,
                landside_occupancy: 1.67,
                landside_cap_vph: 1000.0,
                hold_capacity: None,
            },
            Airport {
                id: AirportId("B".into()),
                anchor: NodeId(1),
                runways: vec![Runway { length_ft: 5000.0, width_ft: 100.0 }],
                separation_s: 120.0,
                landside_occupancy: 1.67,
                landside_cap_vph: 1000.0,
                hold_capacity: None,
            },
        ];
        let requests: Vec<FlightRequest> = readies
            .iter()
            .enumerate()
            .map(|(i, &ready_s)| FlightRequest {
                trip: TripId(format!("t{i:03}")),
                party: 1,
                origin_airport: i % 2,
                destination_airport: (i + 1) % 2,
                ready_s: ready_s.floor(),
                flight_base_s: 900.0,
                aircraft: "a3".into(),
                charging_s: 0.0,
            })
            .collect();
        let outcomes = simulate_departures(&requests, &airports);
        for (request, outcome) in requests.iter().zip(&outcomes) {
            // hold = depart - ready, exactly.
            prop_assert!(
                (outcome.hold_s - (outcome.depart_s - request.ready_s)).abs() < 1e-6
            );
            prop_assert!(outcome.hold_s >= 0.0);
            prop_assert!(outcome.land_s >= outcome.depart_s + request.flight_base_s - 1e-9);
        }
    }
}

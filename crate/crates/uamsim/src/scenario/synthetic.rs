//! Seeded synthetic scenarios: a connected grid road network, spread-out
//! airports, and a morning-peaked trip table.
//!
//! The generator is a pure function of its arguments, so two calls with the
//! same seed and dimensions produce identical scenarios.

use super::{
    Airport, AirportId, AircraftType, CoordMode, GroundNetwork, Link, Node, NodeId, ODTrip,
    Runway, Scenario, ScenarioConfig, ScenarioError, TripId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID_SPACING_M: f64 = 3200.0;

/// Builds a deterministic synthetic scenario with the default config
/// (seeded with `seed`).
pub fn generate_synthetic_scenario(
    seed: u64,
    n_nodes: u32,
    n_airports: u32,
    n_trips: u32,
) -> Result<Scenario, ScenarioError> {
    let config = ScenarioConfig {
        random_seed: seed,
        ..ScenarioConfig::default()
    };
    generate_synthetic_scenario_with_config(seed, n_nodes, n_airports, n_trips, config)
}

/// Same generator, but keeps an externally supplied config.
pub fn generate_synthetic_scenario_with_config(
    seed: u64,
    n_nodes: u32,
    n_airports: u32,
    n_trips: u32,
    config: ScenarioConfig,
) -> Result<Scenario, ScenarioError> {
    if n_nodes < 4 {
        return Err(ScenarioError::InvalidDimension(format!(
            "need at least 4 nodes, got {n_nodes}"
        )));
    }
    if n_airports < 2 {
        return Err(ScenarioError::InvalidDimension(format!(
            "need at least 2 airports, got {n_airports}"
        )));
    }
    if n_trips < 1 {
        return Err(ScenarioError::InvalidDimension(format!(
            "need at least 1 trip, got {n_trips}"
        )));
    }
    if n_airports > n_nodes {
        return Err(ScenarioError::InvalidDimension(format!(
            "cannot place {n_airports} airports on {n_nodes} nodes"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let network = grid_network(&mut rng, n_nodes);
    let airports = place_airports(&mut rng, &network, n_airports, &config);
    let demand = draw_trips(&mut rng, n_nodes, n_trips);
    Scenario::assemble(network, airports, default_catalog(), demand, config)
}

fn grid_network(rng: &mut ChaCha8Rng, n_nodes: u32) -> GroundNetwork {
    let side = (n_nodes as f64).sqrt().ceil() as u32;
    let nodes: Vec<Node> = (0..n_nodes)
        .map(|i| {
            let (row, col) = (i / side, i % side);
            Node {
                label: format!("n{i}"),
                x: col as f64 * GRID_SPACING_M,
                y: row as f64 * GRID_SPACING_M,
            }
        })
        .collect();

    let mut links = Vec::new();
    for i in 0..n_nodes {
        let (row, col) = (i / side, i % side);
        for (nr, nc) in [(row, col + 1), (row + 1, col)] {
            if nc >= side {
                continue;
            }
            let j = nr * side + nc;
            if j >= n_nodes {
                continue;
            }
            // Capacities sit well below real-world lane throughput so that
            // desk-scale demand actually congests the grid.
            let fast = rng.gen_range(0.0..1.0) < 0.3;
            let (speed, cap) = if fast { (25.0, 160.0) } else { (13.9, 60.0) };
            let length = GRID_SPACING_M * rng.gen_range(1.0..1.25);
            for (from, to) in [(i, j), (j, i)] {
                links.push(Link {
                    from: NodeId(from),
                    to: NodeId(to),
                    length_m: length,
                    free_flow_mps: speed,
                    capacity_vph: cap,
                    alpha: 0.15,
                    beta: 4.0,
                });
            }
        }
    }
    GroundNetwork::new(CoordMode::PlanarMeters, nodes, links)
}

/// Farthest-point placement: a seeded first pick, then repeatedly the node
/// maximizing its distance to the airports chosen so far.
fn place_airports(
    rng: &mut ChaCha8Rng,
    network: &GroundNetwork,
    n_airports: u32,
    config: &ScenarioConfig,
) -> Vec<Airport> {
    let n_nodes = network.node_count() as u32;
    let mut anchors = vec![NodeId(rng.gen_range(0..n_nodes))];
    while anchors.len() < n_airports as usize {
        let next = (0..n_nodes)
            .map(NodeId)
            .filter(|c| !anchors.contains(c))
            .max_by(|a, b| {
                let da = anchors
                    .iter()
                    .map(|x| network.distance_miles(*a, *x))
                    .fold(f64::INFINITY, f64::min);
                let db = anchors
                    .iter()
                    .map(|x| network.distance_miles(*b, *x))
                    .fold(f64::INFINITY, f64::min);
                da.total_cmp(&db).then(b.cmp(a))
            })
            .expect("airport count was validated against node count");
        anchors.push(next);
    }

    anchors
        .into_iter()
        .enumerate()
        .map(|(i, anchor)| {
            let long = *pick(rng, &[2500.0, 3000.0, 4000.0, 5000.0, 6000.0]);
            let mut runways = vec![Runway {
                length_ft: long,
                width_ft: 100.0,
            }];
            if rng.gen_range(0.0..1.0) < 0.4 {
                runways.push(Runway {
                    length_ft: (long - 1000.0).max(1500.0),
                    width_ft: 75.0,
                });
            }
            let id = AirportId(format!("AP{i:02}"));
            Airport {
                hold_capacity: config.hold_capacity.get(&id.0).copied(),
                id,
                anchor,
                runways,
                separation_s: config.separation_default.max(90.0),
                landside_occupancy: 1.67,
                landside_cap_vph: rng.gen_range(500.0..3000.0),
            }
        })
        .collect()
}

fn draw_trips(rng: &mut ChaCha8Rng, n_nodes: u32, n_trips: u32) -> Vec<ODTrip> {
    let width = (n_trips as f64).log10().ceil().max(1.0) as usize;
    (0..n_trips)
        .map(|i| {
            let origin = NodeId(rng.gen_range(0..n_nodes));
            let destination = loop {
                let d = NodeId(rng.gen_range(0..n_nodes));
                if d != origin {
                    break d;
                }
            };
            ODTrip {
                id: TripId(format!("t{i:0width$}")),
                origin,
                destination,
                departure_s: morning_departure(rng),
                party_size: party_size(rng),
            }
        })
        .collect()
}

/// Departure times peak around 08:00 within the 00:00–12:00 window.
fn morning_departure(rng: &mut ChaCha8Rng) -> u32 {
    loop {
        let draw = 28_800.0 + 5_400.0 * standard_normal(rng);
        if (0.0..43_200.0).contains(&draw) {
            return draw as u32;
        }
    }
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller on two uniform draws.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn party_size(rng: &mut ChaCha8Rng) -> u32 {
    let u = rng.gen_range(0.0..1.0);
    match u {
        _ if u < 0.55 => 1,
        _ if u < 0.75 => 2,
        _ if u < 0.85 => 3,
        _ if u < 0.90 => 4,
        _ if u < 0.94 => 6,
        _ if u < 0.97 => 9,
        _ if u < 0.99 => 20,
        _ => 50,
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, options: &'a [T]) -> &'a T {
    &options[rng.gen_range(0..options.len())]
}

/// The bundled aircraft catalog used by synthetic scenarios: small general
/// aviation types through regional airliners, so runway limits and party
/// sizes both bite.
pub fn default_catalog() -> Vec<AircraftType> {
    let spec: [(&str, u32, f64, f64, f64, f64); 8] = [
        ("Cessna172", 3, 640.0, 1685.0, 0.0, 40.0),
        ("Cessna208", 9, 1070.0, 2055.0, 0.0, 45.0),
        ("KingAir350", 11, 1806.0, 3300.0, 0.0, 45.0),
        ("Skyvan", 19, 694.0, 1640.0, 0.0, 45.0),
        ("ERJ135", 37, 2000.0, 4900.0, 0.0, 55.0),
        ("ATR42", 48, 716.0, 3600.0, 0.0, 60.0),
        ("Dash8Q400", 78, 1100.0, 4600.0, 0.0, 60.0),
        ("CRJ900", 90, 1553.0, 5800.0, 0.0, 60.0),
    ];
    spec.iter()
        .map(
            |&(name, seats, range_mi, min_runway_ft, charging_s, rot_s)| AircraftType {
                name: name.to_string(),
                seats,
                range_mi,
                min_runway_ft,
                charging_s,
                runway_occupancy_s: rot_s,
            },
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = generate_synthetic_scenario(7, 100, 3, 500).unwrap();
        let b = generate_synthetic_scenario(7, 100, 3, 500).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_differ() {
        let a = generate_synthetic_scenario(7, 100, 3, 500).unwrap();
        let b = generate_synthetic_scenario(8, 100, 3, 500).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn too_few_nodes_rejected() {
        let err = generate_synthetic_scenario(7, 3, 2, 1).unwrap_err();
        assert!(matches!(err, ScenarioError::InvalidDimension(_)));
    }

    #[test]
    fn trips_reference_existing_nodes() {
        // Validation inside assemble already checks this; the scenario
        // coming back Ok is the assertion.
        let scenario = generate_synthetic_scenario(1, 25, 2, 50).unwrap();
        assert_eq!(scenario.demand.len(), 50);
        for trip in &scenario.demand {
            assert!(trip.origin.index() < scenario.network.node_count());
            assert!(trip.destination.index() < scenario.network.node_count());
        }
    }

    #[test]
    fn airports_on_distinct_nodes() {
        let scenario = generate_synthetic_scenario(3, 49, 5, 10).unwrap();
        let mut anchors: Vec<_> = scenario.airports.iter().map(|a| a.anchor).collect();
        anchors.sort();
        anchors.dedup();
        assert_eq!(anchors.len(), 5);
    }

    #[test]
    fn hold_capacity_table_reaches_airports() {
        let mut config = crate::scenario::ScenarioConfig::default();
        config.hold_capacity.insert("AP01".to_string(), 2);
        let scenario =
            generate_synthetic_scenario_with_config(5, 25, 3, 10, config).unwrap();
        assert_eq!(scenario.airports[0].hold_capacity, None);
        assert_eq!(scenario.airports[1].hold_capacity, Some(2));
    }

    #[test]
    fn departures_peak_in_the_morning() {
        let scenario = generate_synthetic_scenario(11, 25, 2, 400).unwrap();
        let mean: f64 = scenario
            .demand
            .iter()
            .map(|t| t.departure_s as f64)
            .sum::<f64>()
            / 400.0;
        assert!((mean - 28_800.0).abs() < 2_000.0, "mean departure {mean}");
        assert!(scenario.demand.iter().all(|t| t.departure_s < 43_200));
    }
}

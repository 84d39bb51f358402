//! Domain types, file ingestion, validation, and synthetic scenario
//! generation.
//!
//! A [`Scenario`] bundles everything a run needs: the road network, the
//! airports and aircraft catalog, the trip demand, and the configuration.
//! Once built it is immutable and can be shared freely across threads.

mod config;
mod load;
mod synthetic;
mod types;
mod write;

pub use config::{FlightProfileConfig, ScenarioConfig, ScenarioPaths, SyntheticSpec};
pub use load::load_scenario;
pub use synthetic::{
    default_catalog, generate_synthetic_scenario, generate_synthetic_scenario_with_config,
};
pub use types::{
    haversine_miles, Airport, AirportId, AircraftType, CoordMode, GroundNetwork, Link, Mode,
    ModePlan, Node, NodeId, ODTrip, Runway, TripId, UamLeg, METERS_PER_MILE,
};
pub use write::write_scenario_csvs;

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("missing input file: {0}")]
    MissingFile(PathBuf),
    #[error("{file}:{row} (column {column}): {message}")]
    SchemaViolation {
        file: String,
        row: usize,
        column: String,
        message: String,
    },
    #[error("dangling reference: {0}")]
    DanglingReference(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// A validated, immutable bundle of everything one run consumes.
///
/// Airports are sorted by id, aircraft by name, and demand by trip id, so
/// any iteration over a scenario is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub network: GroundNetwork,
    pub airports: Vec<Airport>,
    pub aircraft: Vec<AircraftType>,
    pub demand: Vec<ODTrip>,
    pub config: ScenarioConfig,
}

impl Scenario {
    /// Builds a scenario from already-parsed parts, sorting the catalogs
    /// and enforcing every structural invariant.
    pub fn assemble(
        network: GroundNetwork,
        mut airports: Vec<Airport>,
        mut aircraft: Vec<AircraftType>,
        mut demand: Vec<ODTrip>,
        config: ScenarioConfig,
    ) -> Result<Self, ScenarioError> {
        airports.sort_by(|a, b| a.id.cmp(&b.id));
        aircraft.sort_by(|a, b| a.name.cmp(&b.name));
        demand.sort_by(|a, b| a.id.cmp(&b.id));
        let scenario = Scenario {
            network,
            airports,
            aircraft,
            demand,
            config,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn airport(&self, id: &AirportId) -> Option<&Airport> {
        self.airports.iter().find(|a| &a.id == id)
    }

    pub fn airport_index(&self, id: &AirportId) -> Option<usize> {
        self.airports.iter().position(|a| &a.id == id)
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        self.config.validate()?;
        validate_network(&self.network)?;
        for airport in &self.airports {
            validate_airport(airport, &self.network)?;
        }
        for t in &self.aircraft {
            validate_aircraft(t)?;
        }
        let mut seen = std::collections::BTreeSet::new();
        for trip in &self.demand {
            validate_trip(trip, &self.network)?;
            if !seen.insert(&trip.id) {
                return Err(ScenarioError::InvariantViolation(format!(
                    "duplicate trip id {}",
                    trip.id
                )));
            }
        }
        validate_weak_connectivity(self)?;
        Ok(())
    }
}

fn validate_network(net: &GroundNetwork) -> Result<(), ScenarioError> {
    if net.node_count() == 0 {
        return Err(ScenarioError::InvariantViolation(
            "network has no nodes".into(),
        ));
    }
    for (i, link) in net.links().iter().enumerate() {
        if link.from.index() >= net.node_count() || link.to.index() >= net.node_count() {
            return Err(ScenarioError::InvariantViolation(format!(
                "link {i} references a node outside the network"
            )));
        }
        if link.length_m <= 0.0 || link.free_flow_mps <= 0.0 || link.capacity_vph <= 0.0 {
            return Err(ScenarioError::InvariantViolation(format!(
                "link {i}: length, free-flow speed, and capacity must be strictly positive"
            )));
        }
        if link.alpha < 0.0 {
            return Err(ScenarioError::InvariantViolation(format!(
                "link {i}: alpha must be non-negative"
            )));
        }
        if link.beta < 1.0 {
            return Err(ScenarioError::InvariantViolation(format!(
                "link {i}: beta must be at least 1"
            )));
        }
    }
    Ok(())
}

fn validate_airport(airport: &Airport, net: &GroundNetwork) -> Result<(), ScenarioError> {
    if airport.anchor.index() >= net.node_count() {
        return Err(ScenarioError::DanglingReference(format!(
            "airport {} anchors to an unknown node",
            airport.id
        )));
    }
    if airport.runways.is_empty() {
        return Err(ScenarioError::InvariantViolation(format!(
            "airport {} has no runways",
            airport.id
        )));
    }
    for r in &airport.runways {
        if r.length_ft <= 0.0 || r.width_ft <= 0.0 {
            return Err(ScenarioError::InvariantViolation(format!(
                "airport {}: runway dimensions must be positive",
                airport.id
            )));
        }
    }
    if airport.separation_s < 90.0 {
        return Err(ScenarioError::InvariantViolation(format!(
            "airport {}: separation interval must be at least 90 s",
            airport.id
        )));
    }
    if airport.landside_occupancy <= 0.0 {
        return Err(ScenarioError::InvariantViolation(format!(
            "airport {}: land-side occupancy factor must be positive",
            airport.id
        )));
    }
    Ok(())
}

fn validate_aircraft(t: &AircraftType) -> Result<(), ScenarioError> {
    if t.seats < 1 {
        return Err(ScenarioError::InvariantViolation(format!(
            "aircraft {}: seats must be at least 1",
            t.name
        )));
    }
    if t.range_mi <= 0.0 {
        return Err(ScenarioError::InvariantViolation(format!(
            "aircraft {}: range must be positive",
            t.name
        )));
    }
    if t.charging_s < 0.0 {
        return Err(ScenarioError::InvariantViolation(format!(
            "aircraft {}: charging time must be non-negative",
            t.name
        )));
    }
    Ok(())
}

fn validate_trip(trip: &ODTrip, net: &GroundNetwork) -> Result<(), ScenarioError> {
    if trip.origin.index() >= net.node_count() || trip.destination.index() >= net.node_count() {
        return Err(ScenarioError::DanglingReference(format!(
            "trip {} references an unknown node",
            trip.id
        )));
    }
    if trip.origin == trip.destination {
        return Err(ScenarioError::InvariantViolation(format!(
            "trip {}: origin equals destination",
            trip.id
        )));
    }
    if trip.departure_s >= 86_400 {
        return Err(ScenarioError::InvariantViolation(format!(
            "trip {}: departure time must be below 86400 s",
            trip.id
        )));
    }
    if trip.party_size < 1 {
        return Err(ScenarioError::InvariantViolation(format!(
            "trip {}: party size must be at least 1",
            trip.id
        )));
    }
    Ok(())
}

/// Every node referenced by demand or an airport must sit in a single
/// weakly-connected component.
fn validate_weak_connectivity(scenario: &Scenario) -> Result<(), ScenarioError> {
    let net = &scenario.network;
    let mut referenced: Vec<NodeId> = Vec::new();
    referenced.extend(scenario.airports.iter().map(|a| a.anchor));
    referenced.extend(
        scenario
            .demand
            .iter()
            .flat_map(|t| [t.origin, t.destination]),
    );
    let Some(&start) = referenced.first() else {
        return Ok(());
    };
    let mut seen = vec![false; net.node_count()];
    let mut stack = vec![start];
    seen[start.index()] = true;
    while let Some(node) = stack.pop() {
        for &l in net.out_links(node) {
            let next = net.link(l).to;
            if !seen[next.index()] {
                seen[next.index()] = true;
                stack.push(next);
            }
        }
        for &l in net.in_links(node) {
            let next = net.link(l).from;
            if !seen[next.index()] {
                seen[next.index()] = true;
                stack.push(next);
            }
        }
    }
    for id in referenced {
        if !seen[id.index()] {
            return Err(ScenarioError::InvariantViolation(format!(
                "node {} is disconnected from the rest of the referenced network",
                net.node(id).label
            )));
        }
    }
    Ok(())
}

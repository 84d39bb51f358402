//! Flight-task generation and minimum fleet sizing.
//!
//! Phase one turns the air-mode itineraries of a finished equilibrium run
//! into typed flight tasks (one per aircraft movement). Phase two builds a
//! time-expanded flow network over those tasks and solves for the smallest
//! fleet that covers them all, per aircraft type and combined.

pub mod graph;
pub mod mincost;
pub mod selection;

pub use graph::{
    build_graph, build_graph_substitution, solve_min_fleet, Edge, EdgeKind, FleetSolution,
    NodeRef, TimeExpandedGraph, TurnaroundTimes,
};
pub use selection::{feasible_types, select_aircraft, Assignment};

use crate::dispatch::UamItinerary;
use crate::scenario::{AircraftType, Airport, AirportId, Scenario};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FleetError {
    #[error(
        "no aircraft type can fly {distance_mi:.1} mi from a {runway_limit_ft:.0} ft runway"
    )]
    NoFeasibleType {
        distance_mi: f64,
        runway_limit_ft: f64,
    },
    #[error("the flow network admits no feasible fleet")]
    Infeasible,
}

/// One scheduled aircraft movement: an airport pair, an operating window,
/// the type it was planned for, and the passengers aboard.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightTask {
    pub id: String,
    pub origin_airport: AirportId,
    pub destination_airport: AirportId,
    pub start_s: f64,
    pub end_s: f64,
    /// Assigned aircraft type name.
    pub aircraft: String,
    pub passengers: u32,
}

/// Range/runway inputs of a task, kept beside the task list for
/// substitution feasibility checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskGeometry {
    pub distance_mi: f64,
    pub runway_limit_ft: f64,
}

/// Converts itineraries into flight tasks, re-running type selection per
/// party. Parties larger than every feasible type's seats split into the
/// minimal number of movements on the largest feasible type.
pub fn generate_tasks(
    itineraries: &[UamItinerary],
    airports: &[Airport],
    catalog: &[AircraftType],
    network: &crate::scenario::GroundNetwork,
) -> Result<(Vec<FlightTask>, Vec<TaskGeometry>), FleetError> {
    let mut tasks = Vec::new();
    let mut geometry = Vec::new();
    for itin in itineraries {
        let origin = &airports[itin.origin_airport];
        let destination = &airports[itin.destination_airport];
        let distance_mi = network.distance_miles(origin.anchor, destination.anchor);
        let runway_limit_ft = origin
            .longest_runway_ft()
            .min(destination.longest_runway_ft());
        let assignment = select_aircraft(catalog, itin.party, distance_mi, runway_limit_ft)?;
        let seats = assignment.aircraft.seats;
        let mut remaining = itin.party;
        for k in 0..assignment.task_count {
            let aboard = remaining.min(seats);
            remaining -= aboard;
            let id = if assignment.task_count == 1 {
                format!("{}", itin.trip)
            } else {
                format!("{}#{k}", itin.trip)
            };
            tasks.push(FlightTask {
                id,
                origin_airport: origin.id.clone(),
                destination_airport: destination.id.clone(),
                start_s: itin.depart_s,
                end_s: itin.land_s,
                aircraft: assignment.aircraft.name.clone(),
                passengers: aboard,
            });
            geometry.push(TaskGeometry {
                distance_mi,
                runway_limit_ft,
            });
        }
        debug_assert_eq!(remaining, 0);
    }
    Ok((tasks, geometry))
}

/// Turnaround times for a scenario: repositioning legs priced with the
/// flight profile over airport-to-airport distance, charging from the
/// catalog.
pub fn scenario_turnaround(
    scenario: &Scenario,
    profile: &crate::flight::FlightProfile,
) -> TurnaroundTimes {
    let n = scenario.airports.len();
    let mut reposition = vec![vec![0.0; n]; n];
    for (i, a) in scenario.airports.iter().enumerate() {
        for (j, b) in scenario.airports.iter().enumerate() {
            if i != j {
                let miles = scenario.network.distance_miles(a.anchor, b.anchor);
                reposition[i][j] =
                    crate::flight::flight_time_seconds(miles, profile).unwrap_or(f64::INFINITY);
            }
        }
    }
    let charging = scenario
        .aircraft
        .iter()
        .map(|t| (t.name.clone(), t.charging_s))
        .collect();
    TurnaroundTimes::new(
        scenario.airports.iter().map(|a| a.id.clone()).collect(),
        reposition,
        charging,
    )
}

/// Minimum fleet if only `aircraft` existed: restricts the tasks to that
/// type and solves.
pub fn size_homogeneous(
    tasks: &[FlightTask],
    aircraft: &str,
    turnaround: &TurnaroundTimes,
) -> Result<TypedSolution, FleetError> {
    let task_indices: Vec<usize> = tasks
        .iter()
        .enumerate()
        .filter(|(_, t)| t.aircraft == aircraft)
        .map(|(i, _)| i)
        .collect();
    let subset: Vec<FlightTask> = task_indices.iter().map(|&i| tasks[i].clone()).collect();
    let solution = if subset.is_empty() {
        FleetSolution {
            fleet_size: 0,
            objective: 0,
            rotations: Vec::new(),
            flows: Vec::new(),
        }
    } else {
        let g = build_graph(&subset, turnaround);
        solve_min_fleet(&g)?
    };
    Ok(TypedSolution {
        aircraft: aircraft.to_string(),
        task_indices,
        solution,
    })
}

#[derive(Debug, Clone)]
pub struct TypedSolution {
    pub aircraft: String,
    /// Positions of this type's tasks in the full task list.
    pub task_indices: Vec<usize>,
    pub solution: FleetSolution,
}

/// Per-type fleet statistics for the combined report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TypeStats {
    pub fleet_size: u32,
    pub n_tasks: usize,
    pub seats_offered: u64,
    pub passengers_carried: u64,
}

impl TypeStats {
    /// Occupied seats over offered seats across flown tasks.
    pub fn avg_occupancy(&self) -> f64 {
        if self.seats_offered == 0 {
            0.0
        } else {
            self.passengers_carried as f64 / self.seats_offered as f64
        }
    }
}

#[derive(Debug, Clone)]
pub struct CombinedSolution {
    pub total_fleet: u32,
    pub per_type: BTreeMap<String, TypeStats>,
    /// One record per aircraft: its type and the ordered task ids it flies.
    pub rotations: Vec<(String, Vec<String>)>,
}

/// Sizes the whole fleet. Under the default exact-type policy this is the
/// union of the per-type solves; with `substitution` a single joint graph
/// lets larger aircraft absorb smaller types' tasks (the rotation is then
/// flown by its first task's type).
pub fn size_combined(
    tasks: &[FlightTask],
    geometry: &[TaskGeometry],
    catalog: &[AircraftType],
    turnaround: &TurnaroundTimes,
    substitution: bool,
) -> Result<CombinedSolution, FleetError> {
    let mut per_type: BTreeMap<String, TypeStats> = BTreeMap::new();
    let seats_of: BTreeMap<&str, u32> = catalog.iter().map(|t| (t.name.as_str(), t.seats)).collect();
    for task in tasks {
        let seats = seats_of.get(task.aircraft.as_str()).copied().unwrap_or(0) as u64;
        let entry = per_type.entry(task.aircraft.clone()).or_default();
        entry.n_tasks += 1;
        entry.seats_offered += seats;
        entry.passengers_carried += task.passengers as u64;
    }

    let mut rotations = Vec::new();
    let mut total_fleet = 0;
    if substitution {
        let catalog_by_name: BTreeMap<&str, &AircraftType> =
            catalog.iter().map(|t| (t.name.as_str(), t)).collect();
        let geom_of: BTreeMap<&str, TaskGeometry> = tasks
            .iter()
            .zip(geometry)
            .map(|(t, g)| (t.id.as_str(), *g))
            .collect();
        let g = build_graph_substitution(tasks, turnaround, |a, b| {
            let (Some(ta), Some(tb)) = (
                catalog_by_name.get(a.aircraft.as_str()),
                catalog_by_name.get(b.aircraft.as_str()),
            ) else {
                return false;
            };
            let Some(gb) = geom_of.get(b.id.as_str()) else {
                return false;
            };
            ta.seats >= tb.seats
                && ta.range_mi >= gb.distance_mi
                && ta.min_runway_ft <= gb.runway_limit_ft
        });
        let solution = solve_min_fleet(&g)?;
        total_fleet = solution.fleet_size;
        for chain in &solution.rotations {
            let lead_type = tasks[chain[0] as usize].aircraft.clone();
            per_type.entry(lead_type.clone()).or_default().fleet_size += 1;
            rotations.push((
                lead_type,
                chain.iter().map(|&i| tasks[i as usize].id.clone()).collect(),
            ));
        }
    } else {
        let mut names: Vec<String> = tasks.iter().map(|t| t.aircraft.clone()).collect();
        names.sort();
        names.dedup();
        for name in names {
            let typed = size_homogeneous(tasks, &name, turnaround)?;
            total_fleet += typed.solution.fleet_size;
            per_type.entry(name.clone()).or_default().fleet_size =
                typed.solution.fleet_size;
            for chain in &typed.solution.rotations {
                rotations.push((
                    name.clone(),
                    chain
                        .iter()
                        .map(|&i| tasks[typed.task_indices[i as usize]].id.clone())
                        .collect(),
                ));
            }
        }
    }
    Ok(CombinedSolution {
        total_fleet,
        per_type,
        rotations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn task(id: &str, kind: &str, start: f64, end: f64, pax: u32) -> FlightTask {
        FlightTask {
            id: id.into(),
            origin_airport: AirportId("A".into()),
            destination_airport: AirportId("B".into()),
            start_s: start,
            end_s: end,
            aircraft: kind.into(),
            passengers: pax,
        }
    }

    fn catalog() -> Vec<AircraftType> {
        vec![
            AircraftType {
                name: "x".into(),
                seats: 4,
                range_mi: 500.0,
                min_runway_ft: 2000.0,
                charging_s: 0.0,
                runway_occupancy_s: 40.0,
            },
            AircraftType {
                name: "y".into(),
                seats: 9,
                range_mi: 500.0,
                min_runway_ft: 2000.0,
                charging_s: 0.0,
                runway_occupancy_s: 45.0,
            },
        ]
    }

    #[test]
    fn homogeneous_with_no_tasks_is_zero() {
        let tasks = vec![task("a", "x", 0.0, 10.0, 2)];
        let typed = size_homogeneous(&tasks, "y", &TurnaroundTimes::zero(&tasks)).unwrap();
        assert_eq!(typed.solution.fleet_size, 0);
    }

    #[test]
    fn single_type_homogeneous_equals_combined() {
        let tasks: Vec<FlightTask> = (0..6)
            .map(|i| task(&format!("t{i}"), "x", i as f64 * 500.0, i as f64 * 500.0 + 400.0, 2))
            .collect();
        let geometry = vec![
            TaskGeometry {
                distance_mi: 50.0,
                runway_limit_ft: 3000.0
            };
            6
        ];
        let turnaround = TurnaroundTimes::zero(&tasks);
        let homo = size_homogeneous(&tasks, "x", &turnaround).unwrap();
        let combined = size_combined(&tasks, &geometry, &catalog(), &turnaround, false).unwrap();
        assert_eq!(combined.total_fleet, homo.solution.fleet_size);
    }

    #[test]
    fn per_type_sizes_sum_to_combined_total() {
        let mut tasks = Vec::new();
        for i in 0..4 {
            tasks.push(task(&format!("x{i}"), "x", i as f64 * 100.0, i as f64 * 100.0 + 50.0, 2));
            tasks.push(task(&format!("y{i}"), "y", i as f64 * 100.0, i as f64 * 100.0 + 50.0, 6));
        }
        let geometry = vec![
            TaskGeometry {
                distance_mi: 50.0,
                runway_limit_ft: 3000.0
            };
            tasks.len()
        ];
        let turnaround = TurnaroundTimes::zero(&tasks);
        let combined = size_combined(&tasks, &geometry, &catalog(), &turnaround, false).unwrap();
        let sum: u32 = combined.per_type.values().map(|s| s.fleet_size).sum();
        assert_eq!(sum, combined.total_fleet);
    }

    #[test]
    fn substitution_lets_the_larger_type_absorb_a_chain() {
        // A 9-seat task finishing well before a 4-seat task starts at the
        // same airport: exact-type needs two aircraft, substitution one.
        let tasks = vec![
            FlightTask {
                id: "big".into(),
                origin_airport: AirportId("A".into()),
                destination_airport: AirportId("B".into()),
                start_s: 0.0,
                end_s: 1000.0,
                aircraft: "y".into(),
                passengers: 6,
            },
            FlightTask {
                id: "small".into(),
                origin_airport: AirportId("B".into()),
                destination_airport: AirportId("A".into()),
                start_s: 5000.0,
                end_s: 6000.0,
                aircraft: "x".into(),
                passengers: 2,
            },
        ];
        let geometry = vec![
            TaskGeometry {
                distance_mi: 50.0,
                runway_limit_ft: 3000.0
            };
            2
        ];
        let turnaround = TurnaroundTimes::zero(&tasks);
        let exact = size_combined(&tasks, &geometry, &catalog(), &turnaround, false).unwrap();
        assert_eq!(exact.total_fleet, 2);
        let relaxed = size_combined(&tasks, &geometry, &catalog(), &turnaround, true).unwrap();
        assert_eq!(relaxed.total_fleet, 1);
        // The chain is flown by its first task's (larger) type.
        assert_eq!(relaxed.rotations.len(), 1);
        assert_eq!(relaxed.rotations[0].0, "y");
        assert_eq!(relaxed.rotations[0].1, vec!["big", "small"]);
    }

    #[test]
    fn occupancy_is_pax_over_seats() {
        let tasks = vec![task("a", "y", 0.0, 10.0, 6), task("b", "y", 100.0, 110.0, 3)];
        let geometry = vec![
            TaskGeometry {
                distance_mi: 50.0,
                runway_limit_ft: 3000.0
            };
            2
        ];
        let combined = size_combined(
            &tasks,
            &geometry,
            &catalog(),
            &TurnaroundTimes::zero(&tasks),
            false,
        )
        .unwrap();
        let stats = &combined.per_type["y"];
        assert!((stats.avg_occupancy() - 9.0 / 18.0).abs() < 1e-12);
        assert!(stats.avg_occupancy() <= 1.0);
    }
}

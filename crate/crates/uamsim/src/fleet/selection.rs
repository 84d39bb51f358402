//! Aircraft-type assignment for one travel party.
//!
//! Feasibility first filters the catalog by operational range and runway
//! requirement, then the smallest type that seats the whole party wins.
//! Parties too large for any feasible type split across the largest one.

use super::FleetError;
use crate::scenario::AircraftType;

/// A party's assignment: the chosen type and how many aircraft of it the
/// party needs (1 unless the party overflows every feasible type).
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<'a> {
    pub aircraft: &'a AircraftType,
    pub task_count: u32,
}

/// Catalog entries able to fly `distance_mi` out of runways no longer than
/// `runway_limit_ft`, sorted by (seats, name).
pub fn feasible_types(
    catalog: &[AircraftType],
    distance_mi: f64,
    runway_limit_ft: f64,
) -> Vec<&AircraftType> {
    let mut types: Vec<&AircraftType> = catalog
        .iter()
        .filter(|t| t.range_mi >= distance_mi && t.min_runway_ft <= runway_limit_ft)
        .collect();
    types.sort_by(|a, b| a.seats.cmp(&b.seats).then(a.name.cmp(&b.name)));
    types
}

/// Picks the minimum-seats feasible type with `seats >= party` (ties by
/// name). When the party exceeds every feasible type, the largest feasible
/// type flies it in `ceil(party / seats)` aircraft.
pub fn select_aircraft<'a>(
    catalog: &'a [AircraftType],
    party: u32,
    distance_mi: f64,
    runway_limit_ft: f64,
) -> Result<Assignment<'a>, FleetError> {
    let feasible = feasible_types(catalog, distance_mi, runway_limit_ft);
    if feasible.is_empty() {
        return Err(FleetError::NoFeasibleType {
            distance_mi,
            runway_limit_ft,
        });
    }
    if let Some(t) = feasible.iter().find(|t| t.seats >= party) {
        return Ok(Assignment {
            aircraft: t,
            task_count: 1,
        });
    }
    let largest = *feasible.last().expect("non-empty");
    Ok(Assignment {
        aircraft: largest,
        task_count: party.div_ceil(largest.seats),
    })
}

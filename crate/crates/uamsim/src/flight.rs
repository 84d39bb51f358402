//! Flight kinematics and airport capacity.
//!
//! Flights follow a five-phase profile (take-off, climb, cruise, descent,
//! landing) collapsed into a piecewise runway-to-runway travel time: short
//! hops never reach cruise and fly at the climb/descent average speed;
//! longer trips climb, cruise the remaining distance, and descend.
//!
//! Note the two branches do not meet at `d1 + d2`: with the default
//! profile the short branch gives 18.29 min at 35.81 mi while the long
//! branch starts at 16.25 min. The boundary itself is resolved in favor of
//! the short branch.

use crate::scenario::{Airport, AircraftType};
use thiserror::Error;

/// Statute miles per international nautical mile.
pub const NM_TO_MI: f64 = 1.150_779_448;

#[derive(Debug, Error, PartialEq)]
pub enum FlightError {
    #[error("climb/descent rate must be positive")]
    NonPositiveRate,
    #[error("distance must be non-negative, got {0}")]
    NegativeDistance(f64),
    #[error("separation requirement must be positive, got {0}")]
    NonPositiveSeparation(f64),
    #[error("no aircraft in the catalog fits a {longest_runway_ft} ft runway")]
    NoSuitableAircraft { longest_runway_ft: f64 },
}

/// Times and distances of the climb and descent phases. Distances come out
/// in whatever distance-per-hour unit the speeds were given in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClimbDescentGeometry {
    pub climb_time_min: f64,
    pub climb_distance: f64,
    pub descent_time_min: f64,
    pub descent_distance: f64,
}

/// Evaluates the four phase formulas: `t = altitude / rate` and
/// `d = speed × t / 60`.
pub fn climb_descent_geometry(
    cruise_altitude_ft: f64,
    climb_rate_fpm: f64,
    descent_rate_fpm: f64,
    climb_speed: f64,
    descent_speed: f64,
) -> Result<ClimbDescentGeometry, FlightError> {
    if climb_rate_fpm <= 0.0 || descent_rate_fpm <= 0.0 {
        return Err(FlightError::NonPositiveRate);
    }
    let climb_time_min = cruise_altitude_ft / climb_rate_fpm;
    let descent_time_min = cruise_altitude_ft / descent_rate_fpm;
    Ok(ClimbDescentGeometry {
        climb_time_min,
        climb_distance: climb_speed * climb_time_min / 60.0,
        descent_time_min,
        descent_distance: descent_speed * descent_time_min / 60.0,
    })
}

/// The shared flight profile. Speeds are statute miles per hour in the
/// travel-time formula; the published climb/descent distances are kept as
/// defaults for output compatibility even though re-deriving them from
/// the phase parameters (speeds read as knots) gives a longer climb leg.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightProfile {
    pub climb_speed_mph: f64,
    pub descent_speed_mph: f64,
    pub cruise_speed_mph: f64,
    pub cruise_altitude_ft: f64,
    pub climb_rate_fpm: f64,
    pub descent_rate_fpm: f64,
    /// Ground distance covered during climb, statute miles.
    pub climb_distance_mi: f64,
    /// Ground distance covered during descent, statute miles.
    pub descent_distance_mi: f64,
}

/// Published climb distance, statute miles.
pub const DEFAULT_CLIMB_DISTANCE_MI: f64 = 12.79;
/// Published descent distance, statute miles.
pub const DEFAULT_DESCENT_DISTANCE_MI: f64 = 23.02;

impl FlightProfile {
    /// The default profile: 115/120/160 mph climb/descent/cruise, 5000 ft
    /// cruise altitude, 800 ft/min climb, 500 ft/min descent, and the
    /// published phase distances (12.79 / 23.02 mi).
    pub fn published() -> Self {
        FlightProfile {
            climb_speed_mph: 115.0,
            descent_speed_mph: 120.0,
            cruise_speed_mph: 160.0,
            cruise_altitude_ft: 5000.0,
            climb_rate_fpm: 800.0,
            descent_rate_fpm: 500.0,
            climb_distance_mi: DEFAULT_CLIMB_DISTANCE_MI,
            descent_distance_mi: DEFAULT_DESCENT_DISTANCE_MI,
        }
    }

    /// Builds a profile from the phase parameters, either keeping the
    /// published distances (`compat_distances`) or recomputing them from
    /// the geometry with speeds read as knots and converted to statute
    /// miles (yields a climb distance near 13.79 mi for the default
    /// profile).
    pub fn from_parameters(
        climb_speed_mph: f64,
        descent_speed_mph: f64,
        cruise_speed_mph: f64,
        cruise_altitude_ft: f64,
        climb_rate_fpm: f64,
        descent_rate_fpm: f64,
        compat_distances: bool,
    ) -> Result<Self, FlightError> {
        let (climb_distance_mi, descent_distance_mi) = if compat_distances {
            (DEFAULT_CLIMB_DISTANCE_MI, DEFAULT_DESCENT_DISTANCE_MI)
        } else {
            let g = climb_descent_geometry(
                cruise_altitude_ft,
                climb_rate_fpm,
                descent_rate_fpm,
                climb_speed_mph,
                descent_speed_mph,
            )?;
            (g.climb_distance * NM_TO_MI, g.descent_distance * NM_TO_MI)
        };
        if climb_rate_fpm <= 0.0 || descent_rate_fpm <= 0.0 {
            return Err(FlightError::NonPositiveRate);
        }
        Ok(FlightProfile {
            climb_speed_mph,
            descent_speed_mph,
            cruise_speed_mph,
            cruise_altitude_ft,
            climb_rate_fpm,
            descent_rate_fpm,
            climb_distance_mi,
            descent_distance_mi,
        })
    }

    /// Applies config overrides on top of the default profile.
    /// `compat_distances` keeps the published climb/descent distances; it
    /// only makes sense together with the default phase parameters.
    pub fn from_config(
        cfg: &crate::scenario::FlightProfileConfig,
        compat_distances: bool,
    ) -> Result<Self, FlightError> {
        let d = FlightProfile::published();
        FlightProfile::from_parameters(
            cfg.climb_speed_mph.unwrap_or(d.climb_speed_mph),
            cfg.descent_speed_mph.unwrap_or(d.descent_speed_mph),
            cfg.cruise_speed_mph.unwrap_or(d.cruise_speed_mph),
            cfg.cruise_altitude_ft.unwrap_or(d.cruise_altitude_ft),
            cfg.climb_rate_fpm.unwrap_or(d.climb_rate_fpm),
            cfg.descent_rate_fpm.unwrap_or(d.descent_rate_fpm),
            compat_distances,
        )
    }

    pub fn climb_time_min(&self) -> f64 {
        self.cruise_altitude_ft / self.climb_rate_fpm
    }

    pub fn descent_time_min(&self) -> f64 {
        self.cruise_altitude_ft / self.descent_rate_fpm
    }
}

/// Runway-to-runway travel time in minutes for a trip of `distance_mi`
/// statute miles.
pub fn flight_time_minutes(distance_mi: f64, profile: &FlightProfile) -> Result<f64, FlightError> {
    if distance_mi < 0.0 {
        return Err(FlightError::NegativeDistance(distance_mi));
    }
    let short_range = profile.climb_distance_mi + profile.descent_distance_mi;
    if distance_mi <= short_range {
        let avg_mph = (profile.climb_speed_mph + profile.descent_speed_mph) / 2.0;
        Ok(60.0 * distance_mi / avg_mph)
    } else {
        let cruise_mi = distance_mi - short_range;
        Ok(profile.climb_time_min()
            + profile.descent_time_min()
            + 60.0 * cruise_mi / profile.cruise_speed_mph)
    }
}

/// Convenience wrapper returning seconds.
pub fn flight_time_seconds(distance_mi: f64, profile: &FlightProfile) -> Result<f64, FlightError> {
    flight_time_minutes(distance_mi, profile).map(|m| m * 60.0)
}

/// Throughput of one runway under continuous operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirsideCapacity {
    /// Minimum interval between operations, seconds.
    pub min_interval_s: f64,
    pub ops_per_hour: u32,
    pub rot_s: f64,
    pub asr_s: f64,
}

/// Minimum operation interval for an aircraft type: runway occupancy time
/// plus the separation requirement. An operation is either a take-off or a
/// landing.
pub fn min_interval(aircraft: &AircraftType, asr_s: f64) -> Result<AirsideCapacity, FlightError> {
    if asr_s <= 0.0 {
        return Err(FlightError::NonPositiveSeparation(asr_s));
    }
    let min_interval_s = aircraft.runway_occupancy_s + asr_s;
    Ok(AirsideCapacity {
        min_interval_s,
        ops_per_hour: (3600.0 / min_interval_s).floor() as u32,
        rot_s: aircraft.runway_occupancy_s,
        asr_s,
    })
}

/// An airport's air-side passenger throughput estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct AirsideEstimate {
    pub passengers_per_hour: f64,
    /// Largest-capacity type whose runway requirement fits the longest
    /// runway.
    pub aircraft: String,
    pub capacity: AirsideCapacity,
}

/// Passengers per hour the runways can move at the physical minimum
/// interval, using the largest-capacity catalog type that fits the longest
/// runway.
pub fn airside_passenger_capacity(
    airport: &Airport,
    catalog: &[AircraftType],
    asr_s: f64,
) -> Result<AirsideEstimate, FlightError> {
    let longest = airport.longest_runway_ft();
    let best = catalog
        .iter()
        .filter(|t| t.min_runway_ft <= longest)
        .max_by(|a, b| a.seats.cmp(&b.seats).then(b.name.cmp(&a.name)))
        .ok_or(FlightError::NoSuitableAircraft {
            longest_runway_ft: longest,
        })?;
    let capacity = min_interval(best, asr_s)?;
    Ok(AirsideEstimate {
        passengers_per_hour: (airport.runways.len() as u32 * capacity.ops_per_hour * best.seats)
            as f64,
        aircraft: best.name.clone(),
        capacity,
    })
}

/// Passengers per hour the access road can deliver: link throughput times
/// the vehicle occupancy factor.
pub fn landside_passenger_capacity(airport: &Airport) -> f64 {
    airport.landside_cap_vph * airport.landside_occupancy
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{AirportId, NodeId, Runway};

    fn catalog_type(name: &str, seats: u32, min_runway_ft: f64, rot_s: f64) -> AircraftType {
        AircraftType {
            name: name.into(),
            seats,
            range_mi: 1000.0,
            min_runway_ft,
            charging_s: 0.0,
            runway_occupancy_s: rot_s,
        }
    }

    fn airport(runways: Vec<Runway>) -> Airport {
        Airport {
            id: AirportId("A".into()),
            anchor: NodeId(0),
            runways,
            separation_s: 180.0,
            landside_occupancy: 1.67,
            landside_cap_vph: 3000.0,
            hold_capacity: None,
        }
    }

    #[test]
    fn climb_and_descent_times_match_published_profile() {
        let g = climb_descent_geometry(5000.0, 800.0, 500.0, 115.0, 120.0).unwrap();
        assert!((g.climb_time_min - 6.25).abs() / 6.25 < 1e-9);
        assert!((g.descent_time_min - 10.0).abs() / 10.0 < 1e-9);
        // 120 × 10/60 = 20 in speed units; ≈ 23.02 statute miles when the
        // speed was knots.
        assert!((g.descent_distance - 20.0).abs() < 1e-12);
        assert!((g.descent_distance * NM_TO_MI - 23.02).abs() < 0.005);
    }

    #[test]
    fn geometry_distance_speed_time_consistent() {
        let g = climb_descent_geometry(5000.0, 800.0, 500.0, 115.0, 120.0).unwrap();
        assert!((g.climb_distance / 115.0 - g.climb_time_min / 60.0).abs() < 1e-9);
        assert!((g.descent_distance / 120.0 - g.descent_time_min / 60.0).abs() < 1e-9);
    }

    #[test]
    fn zero_altitude_degenerates() {
        let g = climb_descent_geometry(0.0, 800.0, 500.0, 115.0, 120.0).unwrap();
        assert_eq!(g.climb_time_min, 0.0);
        assert_eq!(g.climb_distance, 0.0);
    }

    #[test]
    fn non_positive_rate_rejected() {
        assert_eq!(
            climb_descent_geometry(5000.0, 0.0, 500.0, 115.0, 120.0),
            Err(FlightError::NonPositiveRate)
        );
    }

    #[test]
    fn hundred_mile_flight_time() {
        let profile = FlightProfile::published();
        let t = flight_time_minutes(100.0, &profile).unwrap();
        // 6.25 + 10 + 60 × (100 − 35.81) / 160
        assert!((t - 40.32).abs() < 0.01, "got {t}");
    }

    #[test]
    fn short_branch_at_boundary() {
        let profile = FlightProfile::published();
        let t = flight_time_minutes(35.81, &profile).unwrap();
        // 60 × 35.81 / 117.5
        assert!((t - 18.29).abs() < 0.01, "got {t}");
    }

    #[test]
    fn zero_distance_zero_minutes() {
        let profile = FlightProfile::published();
        assert_eq!(flight_time_minutes(0.0, &profile).unwrap(), 0.0);
    }

    #[test]
    fn negative_distance_rejected() {
        let profile = FlightProfile::published();
        assert!(matches!(
            flight_time_minutes(-1.0, &profile),
            Err(FlightError::NegativeDistance(_))
        ));
    }

    #[test]
    fn recomputed_climb_distance() {
        let p = FlightProfile::from_parameters(115.0, 120.0, 160.0, 5000.0, 800.0, 500.0, false)
            .unwrap();
        assert!((p.climb_distance_mi - 13.79).abs() < 0.01, "{}", p.climb_distance_mi);
        assert!((p.descent_distance_mi - 23.02).abs() < 0.01);
    }

    #[test]
    fn long_branch_slope_is_inverse_cruise_speed() {
        let profile = FlightProfile::published();
        for d in [50.0, 90.0, 140.0] {
            let h = 0.5;
            let slope = (flight_time_minutes(d + h, &profile).unwrap()
                - flight_time_minutes(d - h, &profile).unwrap())
                / (2.0 * h);
            assert!((slope - 60.0 / 160.0).abs() < 1e-9, "slope {slope} at {d}");
        }
    }

    #[test]
    fn rot_plus_asr_interval() {
        let t = catalog_type("evtol", 4, 1000.0, 30.0);
        let cap = min_interval(&t, 60.0).unwrap();
        assert_eq!(cap.min_interval_s, 90.0);
        assert_eq!(cap.ops_per_hour, 40);

        let slow = catalog_type("ga", 4, 1000.0, 60.0);
        let cap = min_interval(&slow, 60.0).unwrap();
        assert_eq!(cap.min_interval_s, 120.0);
        assert_eq!(cap.ops_per_hour, 30);
    }

    #[test]
    fn zero_asr_rejected() {
        let t = catalog_type("evtol", 4, 1000.0, 30.0);
        assert!(matches!(
            min_interval(&t, 0.0),
            Err(FlightError::NonPositiveSeparation(_))
        ));
    }

    #[test]
    fn airside_largest_fitting_type() {
        let catalog = vec![
            catalog_type("small", 9, 2000.0, 30.0),
            catalog_type("regional", 78, 4600.0, 30.0),
            catalog_type("jet", 90, 5800.0, 30.0),
        ];
        let ap = airport(vec![Runway {
            length_ft: 5000.0,
            width_ft: 150.0,
        }]);
        let est = airside_passenger_capacity(&ap, &catalog, 60.0).unwrap();
        // The 90-seat jet needs 5800 ft, so the 78-seat type wins: 40 ops
        // at 78 seats.
        assert_eq!(est.aircraft, "regional");
        assert_eq!(est.passengers_per_hour, 3120.0);
    }

    #[test]
    fn two_runways_double_capacity() {
        let catalog = vec![catalog_type("regional", 78, 4600.0, 30.0)];
        let one = airport(vec![Runway {
            length_ft: 5000.0,
            width_ft: 150.0,
        }]);
        let two = airport(vec![
            Runway {
                length_ft: 5000.0,
                width_ft: 150.0,
            },
            Runway {
                length_ft: 5000.0,
                width_ft: 150.0,
            },
        ]);
        let a = airside_passenger_capacity(&one, &catalog, 60.0).unwrap();
        let b = airside_passenger_capacity(&two, &catalog, 60.0).unwrap();
        assert_eq!(b.passengers_per_hour, 2.0 * a.passengers_per_hour);
    }

    #[test]
    fn no_suitable_aircraft() {
        let catalog = vec![catalog_type("regional", 78, 2400.0, 30.0)];
        let ap = airport(vec![Runway {
            length_ft: 1000.0,
            width_ft: 60.0,
        }]);
        assert!(matches!(
            airside_passenger_capacity(&ap, &catalog, 60.0),
            Err(FlightError::NoSuitableAircraft { .. })
        ));
    }

    #[test]
    fn airside_monotone_in_runway_length_and_count() {
        let catalog = vec![
            catalog_type("s", 9, 2000.0, 30.0),
            catalog_type("m", 48, 3600.0, 30.0),
            catalog_type("l", 78, 4600.0, 30.0),
        ];
        let mut last = 0.0;
        for length in [2000.0, 3000.0, 4000.0, 5000.0, 6000.0] {
            let ap = airport(vec![Runway {
                length_ft: length,
                width_ft: 100.0,
            }]);
            let pax = airside_passenger_capacity(&ap, &catalog, 60.0)
                .unwrap()
                .passengers_per_hour;
            assert!(pax >= last, "capacity dropped as the runway grew");
            last = pax;
        }
        for count in 1..4 {
            let ap = airport(vec![
                Runway {
                    length_ft: 5000.0,
                    width_ft: 100.0
                };
                count
            ]);
            let pax = airside_passenger_capacity(&ap, &catalog, 60.0)
                .unwrap()
                .passengers_per_hour;
            assert!(pax >= last, "capacity dropped as runways were added");
            last = pax;
        }
    }

    #[test]
    fn landside_is_occupancy_times_throughput() {
        let ap = airport(vec![Runway {
            length_ft: 5000.0,
            width_ft: 150.0,
        }]);
        assert!((landside_passenger_capacity(&ap) - 5010.0).abs() < 1e-9);

        let mut unit = ap.clone();
        unit.landside_occupancy = 1.0;
        assert_eq!(landside_passenger_capacity(&unit), unit.landside_cap_vph);

        let mut closed = ap;
        closed.landside_cap_vph = 0.0;
        assert_eq!(landside_passenger_capacity(&closed), 0.0);
    }
}

//! The five-phase flight profile: climb/descent geometry, the piecewise
//! runway-to-runway travel time, and runway operation intervals.
//!
//! ```bash
//! cargo run -p uamsim --example flight_profile
//! ```

use uamsim::flight::{
    climb_descent_geometry, flight_time_minutes, min_interval, FlightProfile, NM_TO_MI,
};
use uamsim::scenario::default_catalog;

fn main() {
    let geometry = climb_descent_geometry(5000.0, 800.0, 500.0, 115.0, 120.0).unwrap();
    println!(
        "climb:   {:.2} min covering {:.2} ({:.2} mi after knot conversion)",
        geometry.climb_time_min,
        geometry.climb_distance,
        geometry.climb_distance * NM_TO_MI
    );
    println!(
        "descent: {:.2} min covering {:.2} ({:.2} mi after knot conversion)",
        geometry.descent_time_min,
        geometry.descent_distance,
        geometry.descent_distance * NM_TO_MI
    );

    let profile = FlightProfile::published();
    println!(
        "\nprofile: climb {} mph / descent {} mph / cruise {} mph, d1+d2 = {:.2} mi",
        profile.climb_speed_mph,
        profile.descent_speed_mph,
        profile.cruise_speed_mph,
        profile.climb_distance_mi + profile.descent_distance_mi
    );
    println!("\n distance    time");
    for miles in [5.0, 15.0, 35.81, 50.0, 100.0, 156.0] {
        println!(
            "{:7.2} mi  {:6.2} min",
            miles,
            flight_time_minutes(miles, &profile).unwrap()
        );
    }
    println!("(the two branches do not meet at 35.81 mi; short-range wins the boundary)");

    println!("\nrunway intervals at a 60 s separation requirement:");
    for aircraft in default_catalog() {
        let cap = min_interval(&aircraft, 60.0).unwrap();
        println!(
            "{:12} rot {:3.0} s -> interval {:3.0} s, {:2} ops/hour",
            aircraft.name, cap.rot_s, cap.min_interval_s, cap.ops_per_hour
        );
    }
}

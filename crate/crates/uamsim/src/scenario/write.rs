//! Writes a scenario back out in the same CSV schemas the loader reads, so
//! load → write → load is lossless.

use super::{Scenario, ScenarioError};
use std::io::Write;
use std::path::Path;

/// Emits `nodes.csv`, `links.csv`, `airports.csv`, `aircraft.csv`, and
/// `demand.csv` under `dir`.
pub fn write_scenario_csvs(scenario: &Scenario, dir: &Path) -> Result<(), ScenarioError> {
    std::fs::create_dir_all(dir)?;
    let net = &scenario.network;

    let mut nodes = create(dir, "nodes.csv")?;
    writeln!(nodes, "id,x,y")?;
    for node in net.nodes() {
        writeln!(nodes, "{},{},{}", node.label, node.x, node.y)?;
    }

    let mut links = create(dir, "links.csv")?;
    writeln!(links, "from,to,length_m,ffs_mps,cap_vph,alpha,beta")?;
    for link in net.links() {
        writeln!(
            links,
            "{},{},{},{},{},{},{}",
            net.node(link.from).label,
            net.node(link.to).label,
            link.length_m,
            link.free_flow_mps,
            link.capacity_vph,
            link.alpha,
            link.beta
        )?;
    }

    let mut airports = create(dir, "airports.csv")?;
    writeln!(airports, "id,node,runways,sep_s,occupancy,landside_cap_vph")?;
    for airport in &scenario.airports {
        let runways = airport
            .runways
            .iter()
            .map(|r| format!("{} x {}", r.length_ft, r.width_ft))
            .collect::<Vec<_>>()
            .join(";")
            .to_string();
        writeln!(
            airports,
            "{},{},{},{},{},{}",
            airport.id,
            net.node(airport.anchor).label,
            runways,
            airport.separation_s,
            airport.landside_occupancy,
            airport.landside_cap_vph
        )?;
    }

    let mut aircraft = create(dir, "aircraft.csv")?;
    writeln!(aircraft, "name,seats,range_mi,min_runway_ft,charge_s,rot_s")?;
    for t in &scenario.aircraft {
        writeln!(
            aircraft,
            "{},{},{},{},{},{}",
            t.name, t.seats, t.range_mi, t.min_runway_ft, t.charging_s, t.runway_occupancy_s
        )?;
    }

    let mut demand = create(dir, "demand.csv")?;
    writeln!(demand, "trip_id,origin,destination,dep_s,party")?;
    for trip in &scenario.demand {
        writeln!(
            demand,
            "{},{},{},{},{}",
            trip.id,
            net.node(trip.origin).label,
            net.node(trip.destination).label,
            trip.departure_s,
            trip.party_size
        )?;
    }
    Ok(())
}

fn create(dir: &Path, name: &str) -> Result<std::io::BufWriter<std::fs::File>, ScenarioError> {
    Ok(std::io::BufWriter::new(std::fs::File::create(
        dir.join(name),
    )?))
}

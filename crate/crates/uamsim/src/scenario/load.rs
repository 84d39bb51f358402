//! CSV ingestion for the five scenario input files.

use super::{
    Airport, AirportId, AircraftType, GroundNetwork, Link, Node, NodeId, ODTrip, Runway, Scenario,
    ScenarioConfig, ScenarioError, ScenarioPaths, TripId,
};
use std::path::Path;

/// Loads and validates a scenario from its CSV inputs.
///
/// All cross-references (node labels, airport ids) are resolved here;
/// the returned [`Scenario`] only carries resolved ids.
pub fn load_scenario(
    paths: &ScenarioPaths,
    config: ScenarioConfig,
) -> Result<Scenario, ScenarioError> {
    let nodes = read_nodes(&paths.nodes)?;
    let mut network_nodes = Vec::with_capacity(nodes.len());
    let mut index = std::collections::HashMap::with_capacity(nodes.len());
    for (i, (label, x, y)) in nodes.iter().enumerate() {
        network_nodes.push(Node {
            label: label.clone(),
            x: *x,
            y: *y,
        });
        index.insert(label.as_str(), NodeId(i as u32));
    }
    let resolve = |label: &str| -> Result<NodeId, ScenarioError> {
        index
            .get(label)
            .copied()
            .ok_or_else(|| ScenarioError::DanglingReference(label.to_string()))
    };

    let links = read_links(&paths.links, &resolve)?;
    let network = GroundNetwork::new(config.coord_mode, network_nodes, links);
    let mut airports = read_airports(&paths.airports, &resolve, config.separation_default)?;
    for airport in &mut airports {
        airport.hold_capacity = config.hold_capacity.get(&airport.id.0).copied();
    }
    let aircraft = read_aircraft(&paths.aircraft)?;
    let demand = read_demand(&paths.demand, &resolve)?;
    Scenario::assemble(network, airports, aircraft, demand, config)
}

struct CsvFile {
    name: String,
    rows: Vec<(usize, csv::StringRecord)>,
    headers: csv::StringRecord,
}

fn open_csv(path: &Path, expected_columns: usize) -> Result<CsvFile, ScenarioError> {
    if !path.exists() {
        return Err(ScenarioError::MissingFile(path.to_path_buf()));
    }
    let name = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| ScenarioError::SchemaViolation {
            file: name.clone(),
            row: 1,
            column: "-".into(),
            message: e.to_string(),
        })?;
    let headers = reader
        .headers()
        .map_err(|e| ScenarioError::SchemaViolation {
            file: name.clone(),
            row: 1,
            column: "-".into(),
            message: e.to_string(),
        })?
        .clone();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2; // 1-based, after the header
        let record = record.map_err(|e| ScenarioError::SchemaViolation {
            file: name.clone(),
            row,
            column: "-".into(),
            message: e.to_string(),
        })?;
        if record.len() != expected_columns {
            return Err(ScenarioError::SchemaViolation {
                file: name.clone(),
                row,
                column: "-".into(),
                message: format!(
                    "expected {expected_columns} columns, found {}",
                    record.len()
                ),
            });
        }
        rows.push((row, record));
    }
    Ok(CsvFile {
        name,
        rows,
        headers,
    })
}

impl CsvFile {
    fn field<'a>(&self, record: &'a csv::StringRecord, idx: usize) -> &'a str {
        record.get(idx).unwrap_or("")
    }

    fn column_name(&self, idx: usize) -> String {
        self.headers
            .get(idx)
            .map(str::to_string)
            .unwrap_or_else(|| format!("column {idx}"))
    }

    fn parse<T: std::str::FromStr>(
        &self,
        row: usize,
        record: &csv::StringRecord,
        idx: usize,
    ) -> Result<T, ScenarioError> {
        let raw = self.field(record, idx);
        raw.parse().map_err(|_| ScenarioError::SchemaViolation {
            file: self.name.clone(),
            row,
            column: self.column_name(idx),
            message: format!("cannot parse {raw:?}"),
        })
    }
}

fn read_nodes(path: &Path) -> Result<Vec<(String, f64, f64)>, ScenarioError> {
    let file = open_csv(path, 3)?;
    let mut out = Vec::with_capacity(file.rows.len());
    for (row, record) in &file.rows {
        let label = file.field(record, 0).to_string();
        let x: f64 = file.parse(*row, record, 1)?;
        let y: f64 = file.parse(*row, record, 2)?;
        out.push((label, x, y));
    }
    Ok(out)
}

fn read_links(
    path: &Path,
    resolve: &dyn Fn(&str) -> Result<NodeId, ScenarioError>,
) -> Result<Vec<Link>, ScenarioError> {
    let file = open_csv(path, 7)?;
    let mut out = Vec::with_capacity(file.rows.len());
    for (row, record) in &file.rows {
        out.push(Link {
            from: resolve(file.field(record, 0))?,
            to: resolve(file.field(record, 1))?,
            length_m: file.parse(*row, record, 2)?,
            free_flow_mps: file.parse(*row, record, 3)?,
            capacity_vph: file.parse(*row, record, 4)?,
            alpha: file.parse(*row, record, 5)?,
            beta: file.parse(*row, record, 6)?,
        });
    }
    Ok(out)
}

/// Runway lists are encoded as `"5000 x 150;3000 x 75"` (feet).
fn parse_runways(raw: &str, file: &str, row: usize) -> Result<Vec<Runway>, ScenarioError> {
    let mut runways = Vec::new();
    for part in raw.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let mut dims = part.split('x').map(str::trim);
        let (len, wid) = (dims.next(), dims.next());
        let parse_dim = |v: Option<&str>| -> Result<f64, ScenarioError> {
            v.and_then(|s| s.parse().ok())
                .ok_or_else(|| ScenarioError::SchemaViolation {
                    file: file.to_string(),
                    row,
                    column: "runways".into(),
                    message: format!("cannot parse runway {part:?}, expected \"len_ft x wid_ft\""),
                })
        };
        runways.push(Runway {
            length_ft: parse_dim(len)?,
            width_ft: parse_dim(wid)?,
        });
    }
    Ok(runways)
}

fn read_airports(
    path: &Path,
    resolve: &dyn Fn(&str) -> Result<NodeId, ScenarioError>,
    separation_default: f64,
) -> Result<Vec<Airport>, ScenarioError> {
    let file = open_csv(path, 6)?;
    let mut out = Vec::with_capacity(file.rows.len());
    for (row, record) in &file.rows {
        let sep_raw = file.field(record, 3);
        let separation_s = if sep_raw.is_empty() {
            separation_default
        } else {
            file.parse(*row, record, 3)?
        };
        out.push(Airport {
            id: AirportId(file.field(record, 0).to_string()),
            anchor: resolve(file.field(record, 1))?,
            runways: parse_runways(file.field(record, 2), &file.name, *row)?,
            separation_s,
            landside_occupancy: file.parse(*row, record, 4)?,
            landside_cap_vph: file.parse(*row, record, 5)?,
            hold_capacity: None,
        });
    }
    Ok(out)
}

fn read_aircraft(path: &Path) -> Result<Vec<AircraftType>, ScenarioError> {
    let file = open_csv(path, 6)?;
    let mut out = Vec::with_capacity(file.rows.len());
    for (row, record) in &file.rows {
        out.push(AircraftType {
            name: file.field(record, 0).to_string(),
            seats: file.parse(*row, record, 1)?,
            range_mi: file.parse(*row, record, 2)?,
            min_runway_ft: file.parse(*row, record, 3)?,
            charging_s: file.parse(*row, record, 4)?,
            runway_occupancy_s: file.parse(*row, record, 5)?,
        });
    }
    Ok(out)
}

fn read_demand(
    path: &Path,
    resolve: &dyn Fn(&str) -> Result<NodeId, ScenarioError>,
) -> Result<Vec<ODTrip>, ScenarioError> {
    let file = open_csv(path, 5)?;
    let mut out = Vec::with_capacity(file.rows.len());
    for (row, record) in &file.rows {
        out.push(ODTrip {
            id: TripId(file.field(record, 0).to_string()),
            origin: resolve(file.field(record, 1))?,
            destination: resolve(file.field(record, 2))?,
            departure_s: file.parse(*row, record, 3)?,
            party_size: file.parse(*row, record, 4)?,
        });
    }
    Ok(out)
}

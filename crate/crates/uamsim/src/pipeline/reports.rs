//! CSV emission for every report, plus the tasks.csv reader used by the
//! standalone fleet solve. Output formatting is fixed so identical runs
//! produce byte-identical files.

use crate::dispatch::DepartureRecord;
use crate::equilibrium::{EquilibriumReport, IterationRow, ThresholdPoint};
use crate::fleet::{CombinedSolution, FlightTask};
use crate::flight::{self, FlightError};
use crate::ground::TravelTimeField;
use crate::scenario::{AirportId, Scenario, ScenarioError};
use std::io::{BufWriter, Write};
use std::path::Path;

type Out = BufWriter<std::fs::File>;

fn create(path: &Path) -> std::io::Result<Out> {
    Ok(BufWriter::new(std::fs::File::create(path)?))
}

/// Fixed-point seconds; keeps files diffable and deterministic.
fn secs(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.3}")
    } else {
        "inf".to_string()
    }
}

pub fn write_equilibrium_log(path: &Path, rows: &[IterationRow]) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "iter,n_uam,n_ground,switched,median_uam_saving_s")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.iter,
            r.n_uam,
            r.n_ground,
            r.switched,
            secs(r.median_uam_saving_s)
        )?;
    }
    Ok(())
}

pub fn write_thresholds(path: &Path, curve: &[ThresholdPoint]) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "threshold_s,n_benefited,median_driving_s")?;
    for p in curve {
        writeln!(
            out,
            "{},{},{}",
            p.threshold_s,
            p.n_benefited,
            secs(p.median_driving_s)
        )?;
    }
    Ok(())
}

pub fn write_report(path: &Path, report: &EquilibriumReport) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "metric,value")?;
    writeln!(out, "converged,{}", report.converged)?;
    writeln!(out, "iterations,{}", report.iterations)?;
    writeln!(out, "n_uam,{}", report.n_uam)?;
    writeln!(out, "n_ground,{}", report.n_ground)?;
    writeln!(
        out,
        "median_driving_among_uam_s,{}",
        secs(report.median_driving_among_uam_s)
    )?;
    writeln!(out, "uam_benefit_s,{}", secs(report.uam_benefit_s))?;
    writeln!(out, "ground_benefit_s,{}", secs(report.ground_benefit_s))?;
    writeln!(
        out,
        "n_benefited_at_{}s,{}",
        report.headline.threshold_s, report.headline.n_benefited
    )?;
    Ok(())
}

pub fn write_departures(path: &Path, records: &[DepartureRecord]) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "trip,airport,runway,ready_s,depart_s,hold_s,aircraft")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trip,
            r.airport,
            r.runway,
            secs(r.ready_s),
            secs(r.depart_s),
            secs(r.hold_s),
            r.aircraft
        )?;
    }
    Ok(())
}

pub fn write_tasks(path: &Path, tasks: &[FlightTask]) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "task,origin,dest,start_s,end_s,type,pax")?;
    for t in tasks {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            t.id,
            t.origin_airport,
            t.destination_airport,
            secs(t.start_s),
            secs(t.end_s),
            t.aircraft,
            t.passengers
        )?;
    }
    Ok(())
}

pub fn read_tasks(path: &Path) -> Result<Vec<FlightTask>, ScenarioError> {
    if !path.exists() {
        return Err(ScenarioError::MissingFile(path.to_path_buf()));
    }
    let name = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| ScenarioError::SchemaViolation {
            file: name.clone(),
            row: 1,
            column: "-".into(),
            message: e.to_string(),
        })?;
    let mut tasks = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| ScenarioError::SchemaViolation {
            file: name.clone(),
            row,
            column: "-".into(),
            message: e.to_string(),
        })?;
        let field = |idx: usize| record.get(idx).unwrap_or("");
        let parse_f64 = |idx: usize, column: &str| -> Result<f64, ScenarioError> {
            field(idx)
                .parse()
                .map_err(|_| ScenarioError::SchemaViolation {
                    file: name.clone(),
                    row,
                    column: column.to_string(),
                    message: format!("cannot parse {:?}", field(idx)),
                })
        };
        if record.len() != 7 {
            return Err(ScenarioError::SchemaViolation {
                file: name.clone(),
                row,
                column: "-".into(),
                message: format!("expected 7 columns, found {}", record.len()),
            });
        }
        tasks.push(FlightTask {
            id: field(0).to_string(),
            origin_airport: AirportId(field(1).to_string()),
            destination_airport: AirportId(field(2).to_string()),
            start_s: parse_f64(3, "start_s")?,
            end_s: parse_f64(4, "end_s")?,
            aircraft: field(5).to_string(),
            passengers: field(6)
                .parse()
                .map_err(|_| ScenarioError::SchemaViolation {
                    file: name.clone(),
                    row,
                    column: "pax".into(),
                    message: format!("cannot parse {:?}", field(6)),
                })?,
        });
    }
    Ok(tasks)
}

pub fn write_fleet_report(path: &Path, combined: &CombinedSolution) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "type,fleet_size,n_tasks,avg_occupancy")?;
    for (name, stats) in &combined.per_type {
        // Occupancy needs seat counts; without a catalog it stays blank.
        let occupancy = if stats.seats_offered > 0 {
            format!("{:.4}", stats.avg_occupancy())
        } else {
            String::new()
        };
        writeln!(
            out,
            "{},{},{},{}",
            name, stats.fleet_size, stats.n_tasks, occupancy
        )?;
    }
    writeln!(out, "TOTAL,{},{},", combined.total_fleet, combined
        .per_type
        .values()
        .map(|s| s.n_tasks)
        .sum::<usize>())?;
    Ok(())
}

pub fn write_rotations(path: &Path, combined: &CombinedSolution) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "aircraft_id,type,tasks")?;
    for (i, (aircraft_type, task_ids)) in combined.rotations.iter().enumerate() {
        writeln!(out, "AC{:04},{},{}", i, aircraft_type, task_ids.join(";"))?;
    }
    Ok(())
}

/// One airport's land-side vs air-side comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityRow {
    pub airport: AirportId,
    pub landside_pax_hr: f64,
    pub airside_pax_hr: Option<f64>,
    pub aircraft: Option<String>,
    /// The smaller side: "landside", "airside", "tie", or
    /// "no-suitable-aircraft".
    pub binding: String,
}

/// Land-side vs air-side passenger throughput per airport. Airports whose
/// runways fit no catalog type are flagged, not fatal.
pub fn capacity_rows(scenario: &Scenario, asr_s: f64) -> Vec<CapacityRow> {
    scenario
        .airports
        .iter()
        .map(|airport| {
            let landside = flight::landside_passenger_capacity(airport);
            match flight::airside_passenger_capacity(airport, &scenario.aircraft, asr_s) {
                Ok(est) => {
                    let binding = if landside < est.passengers_per_hour {
                        "landside"
                    } else if landside > est.passengers_per_hour {
                        "airside"
                    } else {
                        "tie"
                    };
                    CapacityRow {
                        airport: airport.id.clone(),
                        landside_pax_hr: landside,
                        airside_pax_hr: Some(est.passengers_per_hour),
                        aircraft: Some(est.aircraft),
                        binding: binding.to_string(),
                    }
                }
                Err(FlightError::NoSuitableAircraft { .. }) => CapacityRow {
                    airport: airport.id.clone(),
                    landside_pax_hr: landside,
                    airside_pax_hr: None,
                    aircraft: None,
                    binding: "no-suitable-aircraft".to_string(),
                },
                Err(e) => unreachable!("airside capacity only fails on catalog fit: {e}"),
            }
        })
        .collect()
}

pub fn write_capacity(path: &Path, rows: &[CapacityRow]) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "airport,landside_pax_hr,airside_pax_hr,aircraft,binding")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.1},{},{},{}",
            r.airport,
            r.landside_pax_hr,
            r.airside_pax_hr
                .map(|v| format!("{v:.1}"))
                .unwrap_or_default(),
            r.aircraft.clone().unwrap_or_default(),
            r.binding
        )?;
    }
    Ok(())
}

pub fn write_link_volumes(path: &Path, field: &TravelTimeField) -> std::io::Result<()> {
    let mut out = create(path)?;
    writeln!(out, "link,period,volume,congested_s")?;
    for s in field.link_states() {
        writeln!(
            out,
            "{},{},{},{}",
            s.link,
            s.period,
            secs(s.volume_vph),
            secs(s.congested_s)
        )?;
    }
    Ok(())
}

//! Minimum fleet sizing over a day of flight tasks: per-type solves, the
//! combined fleet, and the aircraft rotations behind the numbers.
//!
//! ```bash
//! cargo run -p uamsim --example fleet_sizing
//! ```

use std::collections::BTreeMap;
use uamsim::fleet::{
    build_graph, size_combined, size_homogeneous, solve_min_fleet, FlightTask, TaskGeometry,
    TurnaroundTimes,
};
use uamsim::scenario::{default_catalog, AirportId};

fn main() {
    // A hand-built day: two commuter waves between three airports.
    let mut tasks = Vec::new();
    let airports = ["AP0", "AP1", "AP2"];
    for wave in 0..2 {
        for i in 0..9 {
            let start = 25_200.0 + wave as f64 * 7_200.0 + i as f64 * 420.0;
            let (from, to) = (airports[i % 3], airports[(i + 1) % 3]);
            tasks.push(FlightTask {
                id: format!("w{wave}f{i}"),
                origin_airport: AirportId(from.into()),
                destination_airport: AirportId(to.into()),
                start_s: start,
                end_s: start + 1_500.0,
                aircraft: if i % 3 == 0 { "Cessna208" } else { "Cessna172" }.into(),
                passengers: if i % 3 == 0 { 7 } else { 2 },
            });
        }
    }
    // Repositioning between distinct airports costs ten minutes.
    let ids: Vec<AirportId> = airports.iter().map(|a| AirportId(a.to_string())).collect();
    let mut reposition = vec![vec![600.0; 3]; 3];
    for (i, row) in reposition.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    let turnaround = TurnaroundTimes::new(ids, reposition, BTreeMap::new());

    let graph = build_graph(&tasks, &turnaround);
    println!(
        "time-expanded graph: {} nodes, {} edges ({} transitions)",
        graph.node_count(),
        graph.edges.len(),
        graph.transitions().count()
    );
    let solution = solve_min_fleet(&graph).expect("feasible by construction");
    solution.verify(&graph).expect("flow constraints hold");
    println!(
        "joint minimum for all {} tasks if one aircraft type flew them: {}",
        tasks.len(),
        solution.fleet_size
    );

    for kind in ["Cessna172", "Cessna208"] {
        let typed = size_homogeneous(&tasks, kind, &turnaround).unwrap();
        println!(
            "{kind}: {} tasks need {} aircraft",
            typed.task_indices.len(),
            typed.solution.fleet_size
        );
    }

    let geometry = vec![
        TaskGeometry {
            distance_mi: 40.0,
            runway_limit_ft: 4000.0,
        };
        tasks.len()
    ];
    let combined = size_combined(&tasks, &geometry, &default_catalog(), &turnaround, false).unwrap();
    println!("\ncombined fleet: {} aircraft", combined.total_fleet);
    for (name, stats) in &combined.per_type {
        println!(
            "  {:10} fleet {:2}, {:2} tasks, occupancy {:.0}%",
            name,
            stats.fleet_size,
            stats.n_tasks,
            100.0 * stats.avg_occupancy()
        );
    }
    println!("\nrotations:");
    for (i, (kind, chain)) in combined.rotations.iter().enumerate() {
        println!("  AC{i:02} ({kind}): {}", chain.join(" -> "));
    }
}

//! The time-expanded flow network over a set of flight tasks, and the
//! minimum-fleet solve.
//!
//! Every task contributes a start node and an end node. Task edges
//! (start → end) are forced to carry one unit; edges out of the global
//! source cost one unit each, so minimizing cost minimizes the number of
//! aircraft drawn from the source. A transition edge `end_i → start_j`
//! exists when one aircraft can finish task `i`, reposition, charge, and
//! still make task `j`: `end_i + Δt_ij ≤ start_j` with
//! `Δt_ij = f_ij + c_i`.

use super::mincost::MinCostFlow;
use super::{FleetError, FlightTask};
use crate::scenario::AirportId;
use std::collections::BTreeMap;

/// Repositioning and charging components of the turnaround time.
#[derive(Debug, Clone)]
pub struct TurnaroundTimes {
    airport_index: BTreeMap<AirportId, usize>,
    /// `[from][to]` repositioning flight seconds; zero on the diagonal.
    reposition_s: Vec<Vec<f64>>,
    /// Charging seconds per aircraft type name; absent types charge 0.
    charging_s: BTreeMap<String, f64>,
}

impl TurnaroundTimes {
    pub fn new(
        airports: Vec<AirportId>,
        reposition_s: Vec<Vec<f64>>,
        charging_s: BTreeMap<String, f64>,
    ) -> Self {
        let airport_index = airports
            .into_iter()
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect();
        TurnaroundTimes {
            airport_index,
            reposition_s,
            charging_s,
        }
    }

    /// No repositioning cost and no charging: any aircraft may chain any
    /// two time-compatible tasks. Used when no network context exists.
    pub fn zero(tasks: &[FlightTask]) -> Self {
        let mut airports: Vec<AirportId> = tasks
            .iter()
            .flat_map(|t| [t.origin_airport.clone(), t.destination_airport.clone()])
            .collect();
        airports.sort();
        airports.dedup();
        let n = airports.len();
        TurnaroundTimes::new(airports, vec![vec![0.0; n]; n], BTreeMap::new())
    }

    /// Total turnaround between consecutive tasks:
    /// repositioning(i.destination → j.origin) plus charging of `i`'s type.
    pub fn delta_s(&self, task_i: &FlightTask, task_j: &FlightTask) -> f64 {
        let reposition = if task_i.destination_airport == task_j.origin_airport {
            0.0
        } else {
            let from = self.airport_index[&task_i.destination_airport];
            let to = self.airport_index[&task_j.origin_airport];
            self.reposition_s[from][to]
        };
        reposition + self.charging_s.get(&task_i.aircraft).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRef {
    Source,
    Sink,
    Start(u32),
    End(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Task,
    Source,
    Sink,
    Transition,
}

/// One edge of the literal network, with unit capacity everywhere and the
/// forced lower bound on task edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: NodeRef,
    pub head: NodeRef,
    pub kind: EdgeKind,
    pub cost: u32,
    pub capacity: u32,
    pub lower: u32,
}

#[derive(Debug, Clone)]
pub struct TimeExpandedGraph {
    pub tasks: Vec<FlightTask>,
    pub edges: Vec<Edge>,
    /// Source supply magnitude N (the sink demands the same amount).
    pub supply: u32,
}

impl TimeExpandedGraph {
    /// Task starts, task ends, source, sink.
    pub fn node_count(&self) -> usize {
        2 * self.tasks.len() + 2
    }

    pub fn transitions(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().filter_map(|e| match (e.kind, e.tail, e.head) {
            (EdgeKind::Transition, NodeRef::End(i), NodeRef::Start(j)) => Some((i, j)),
            _ => None,
        })
    }
}

/// Default graph: transitions only chain tasks assigned the same type.
pub fn build_graph(tasks: &[FlightTask], turnaround: &TurnaroundTimes) -> TimeExpandedGraph {
    build_graph_filtered(tasks, turnaround, |a, b| a.aircraft == b.aircraft)
}

/// Graph with downward substitution: a transition may hand task `j` to the
/// aircraft that flew task `i` when that aircraft also satisfies `j`'s
/// seating, range, and runway needs. `fits` decides that relaxed
/// compatibility.
pub fn build_graph_substitution(
    tasks: &[FlightTask],
    turnaround: &TurnaroundTimes,
    fits: impl Fn(&FlightTask, &FlightTask) -> bool,
) -> TimeExpandedGraph {
    build_graph_filtered(tasks, turnaround, |a, b| a.aircraft == b.aircraft || fits(a, b))
}

fn build_graph_filtered(
    tasks: &[FlightTask],
    turnaround: &TurnaroundTimes,
    compatible: impl Fn(&FlightTask, &FlightTask) -> bool,
) -> TimeExpandedGraph {
    let n = tasks.len() as u32;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push(Edge {
            tail: NodeRef::Start(i),
            head: NodeRef::End(i),
            kind: EdgeKind::Task,
            cost: 0,
            capacity: 1,
            lower: 1,
        });
    }
    for i in 0..n {
        edges.push(Edge {
            tail: NodeRef::Source,
            head: NodeRef::Start(i),
            kind: EdgeKind::Source,
            cost: 1,
            capacity: 1,
            lower: 0,
        });
    }
    for i in 0..n {
        edges.push(Edge {
            tail: NodeRef::End(i),
            head: NodeRef::Sink,
            kind: EdgeKind::Sink,
            cost: 0,
            capacity: 1,
            lower: 0,
        });
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (ti, tj) = (&tasks[i as usize], &tasks[j as usize]);
            if !compatible(ti, tj) {
                continue;
            }
            if ti.end_s + turnaround.delta_s(ti, tj) <= tj.start_s {
                edges.push(Edge {
                    tail: NodeRef::End(i),
                    head: NodeRef::Start(j),
                    kind: EdgeKind::Transition,
                    cost: 0,
                    capacity: 1,
                    lower: 0,
                });
            }
        }
    }
    TimeExpandedGraph {
        tasks: tasks.to_vec(),
        edges,
        supply: n,
    }
}

/// An integral solution: edge flows on the literal network plus its
/// decomposition into per-aircraft task chains.
#[derive(Debug, Clone)]
pub struct FleetSolution {
    pub fleet_size: u32,
    /// Objective value of the min-cost flow; equals `fleet_size`.
    pub objective: u32,
    /// Task index chains, one per aircraft, each in time order.
    pub rotations: Vec<Vec<u32>>,
    /// Flow per edge, parallel to `graph.edges`.
    pub flows: Vec<u32>,
}

/// Minimizes total cost subject to unit capacities, conservation, and the
/// forced unit flow on every task edge. The task-edge lower bounds are
/// folded into node imbalances (start nodes demand one unit, end nodes
/// supply one), and a zero-cost source→sink bypass absorbs the slack of
/// the fixed supply N, so the optimizer is free to choose how many
/// aircraft actually leave the source.
pub fn solve_min_fleet(graph: &TimeExpandedGraph) -> Result<FleetSolution, FleetError> {
    let n = graph.tasks.len();
    let supply = graph.supply as i64;
    // Node layout: 0 source, 1 sink, 2+i starts, 2+n+i ends, then the
    // wrapper source/sink that realize node imbalances.
    let source = 0;
    let sink = 1;
    let start = |i: u32| 2 + i as usize;
    let end = |i: u32| 2 + n + i as usize;
    let wrapper_source = 2 + 2 * n;
    let wrapper_sink = wrapper_source + 1;
    let mut flow = MinCostFlow::new(wrapper_sink + 1);

    let mut arc_ids = vec![usize::MAX; graph.edges.len()];
    for (idx, e) in graph.edges.iter().enumerate() {
        match e.kind {
            // Task edges are fixed at one unit and leave the solve.
            EdgeKind::Task => {}
            EdgeKind::Source => {
                if let NodeRef::Start(i) = e.head {
                    arc_ids[idx] = flow.add_edge(source, start(i), 1, 1);
                }
            }
            EdgeKind::Sink => {
                if let NodeRef::End(i) = e.tail {
                    arc_ids[idx] = flow.add_edge(end(i), sink, 1, 0);
                }
            }
            EdgeKind::Transition => {
                if let (NodeRef::End(i), NodeRef::Start(j)) = (e.tail, e.head) {
                    arc_ids[idx] = flow.add_edge(end(i), start(j), 1, 0);
                }
            }
        }
    }
    // Slack for the fixed supply.
    flow.add_edge(source, sink, supply, 0);
    // Imbalances: source ships N, sink absorbs N, each start node must
    // receive one unit and each end node must emit one.
    flow.add_edge(wrapper_source, source, supply, 0);
    flow.add_edge(sink, wrapper_sink, supply, 0);
    for i in 0..n as u32 {
        flow.add_edge(wrapper_source, end(i), 1, 0);
        flow.add_edge(start(i), wrapper_sink, 1, 0);
    }

    let want = supply + n as i64;
    let (shipped, cost) = flow.solve(wrapper_source, wrapper_sink, want);
    if shipped != want {
        return Err(FleetError::Infeasible);
    }

    let flows: Vec<u32> = graph
        .edges
        .iter()
        .enumerate()
        .map(|(idx, e)| match e.kind {
            EdgeKind::Task => 1,
            _ => flow.flow(arc_ids[idx]) as u32,
        })
        .collect();

    // Chain decomposition: follow transition flow from every source-fed
    // start.
    let mut next = vec![None; n];
    let mut source_fed = vec![false; n];
    for (idx, e) in graph.edges.iter().enumerate() {
        if flows[idx] == 0 {
            continue;
        }
        match (e.kind, e.tail, e.head) {
            (EdgeKind::Source, _, NodeRef::Start(i)) => source_fed[i as usize] = true,
            (EdgeKind::Transition, NodeRef::End(i), NodeRef::Start(j)) => {
                next[i as usize] = Some(j)
            }
            _ => {}
        }
    }
    let mut rotations = Vec::new();
    let mut covered = vec![false; n];
    for i in 0..n as u32 {
        if !source_fed[i as usize] {
            continue;
        }
        let mut chain = vec![i];
        covered[i as usize] = true;
        let mut cursor = i;
        while let Some(j) = next[cursor as usize] {
            chain.push(j);
            covered[j as usize] = true;
            cursor = j;
        }
        rotations.push(chain);
    }
    if covered.iter().any(|&c| !c) {
        return Err(FleetError::Infeasible);
    }

    Ok(FleetSolution {
        fleet_size: rotations.len() as u32,
        objective: cost as u32,
        rotations,
        flows,
    })
}

impl FleetSolution {
    /// Checks conservation at every internal node, the forced task flows,
    /// and the 0/1 bounds against the literal edge list.
    pub fn verify(&self, graph: &TimeExpandedGraph) -> Result<(), String> {
        let n = graph.tasks.len();
        let mut balance = vec![0_i64; 2 * n]; // starts then ends
        for (idx, e) in graph.edges.iter().enumerate() {
            let f = self.flows[idx] as i64;
            if f > e.capacity as i64 || (self.flows[idx] as i64) < e.lower as i64 {
                return Err(format!("edge {idx} flow {f} outside its bounds"));
            }
            if e.kind == EdgeKind::Task && f != 1 {
                return Err(format!("task edge {idx} carries {f}, expected 1"));
            }
            for (node, sign) in [(e.tail, -1_i64), (e.head, 1)] {
                match node {
                    NodeRef::Start(i) => balance[i as usize] += sign * f,
                    NodeRef::End(i) => balance[n + i as usize] += sign * f,
                    _ => {}
                }
            }
        }
        if let Some(node) = balance.iter().position(|&b| b != 0) {
            return Err(format!(
                "conservation violated at internal node {node}: residual {}",
                balance[node]
            ));
        }
        if self.fleet_size != self.objective {
            return Err("fleet size and objective disagree".to_string());
        }
        // Consecutive rotation tasks must ride a flowed transition edge;
        // transition edges only exist where the turnaround condition
        // held, so the chains are temporally consistent by construction.
        let flowed: std::collections::HashSet<(u32, u32)> = graph
            .edges
            .iter()
            .enumerate()
            .filter(|(idx, e)| e.kind == EdgeKind::Transition && self.flows[*idx] == 1)
            .filter_map(|(_, e)| match (e.tail, e.head) {
                (NodeRef::End(i), NodeRef::Start(j)) => Some((i, j)),
                _ => None,
            })
            .collect();
        let mut seen = vec![false; graph.tasks.len()];
        for chain in &self.rotations {
            for &task in chain {
                if std::mem::replace(&mut seen[task as usize], true) {
                    return Err(format!(
                        "task {} appears in more than one rotation",
                        graph.tasks[task as usize].id
                    ));
                }
            }
            for pair in chain.windows(2) {
                if !flowed.contains(&(pair[0], pair[1])) {
                    return Err(format!(
                        "rotation jumps from {} to {} without a transition edge",
                        graph.tasks[pair[0] as usize].id, graph.tasks[pair[1] as usize].id
                    ));
                }
                let (a, b) = (
                    &graph.tasks[pair[0] as usize],
                    &graph.tasks[pair[1] as usize],
                );
                if a.end_s > b.start_s {
                    return Err(format!(
                        "rotation visits task {} after it already started",
                        b.id
                    ));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err("a task is missing from every rotation".to_string());
        }
        Ok(())
    }
}

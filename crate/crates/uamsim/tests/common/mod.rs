//! Test-only oracles and instance generators for the fleet solver.
//!
//! Both oracles recompute task compatibility from first principles and
//! share no code with the production solver: an exhaustive chain-cover
//! search for small instances and Hopcroft–Karp maximum matching for
//! larger ones.

// Each integration test binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use uamsim::fleet::{FlightTask, TurnaroundTimes};
use uamsim::scenario::AirportId;

/// Compatibility adjacency computed directly from the task fields:
/// `i -> j` when one same-type aircraft can fly `i`, turn around, and
/// still start `j`.
pub fn compatibility(
    tasks: &[FlightTask],
    reposition_s: &BTreeMap<(String, String), f64>,
    charging_s: &BTreeMap<String, f64>,
) -> Vec<Vec<usize>> {
    let n = tasks.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i == j || tasks[i].aircraft != tasks[j].aircraft {
                continue;
            }
            let reposition = if tasks[i].destination_airport == tasks[j].origin_airport {
                0.0
            } else {
                reposition_s
                    [&(tasks[i].destination_airport.0.clone(), tasks[j].origin_airport.0.clone())]
            };
            let charge = charging_s.get(&tasks[i].aircraft).copied().unwrap_or(0.0);
            if tasks[i].end_s + reposition + charge <= tasks[j].start_s {
                adj[i].push(j);
            }
        }
    }
    adj
}

/// Exhaustive minimum chain cover: dynamic programming over task subsets.
/// Compatibility edges always point from an earlier-starting task to a
/// later one, so the earliest-starting task in the remaining set must head
/// some chain; every simple path out of it is tried. Exact for n <= ~14.
pub fn exhaustive_min_path_cover(adj: &[Vec<usize>], starts: &[f64]) -> usize {
    let n = adj.len();
    assert!(n <= 16, "exhaustive oracle is for small instances");
    if n == 0 {
        return 0;
    }
    let full: u32 = (1 << n) - 1;
    let mut memo: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();

    fn walk(
        current: usize,
        remaining: u32,
        adj: &[Vec<usize>],
        starts: &[f64],
        memo: &mut std::collections::HashMap<u32, usize>,
        best: &mut usize,
    ) {
        // End the chain here.
        *best = (*best).min(1 + cover(remaining, adj, starts, memo));
        for &next in &adj[current] {
            if remaining & (1 << next) != 0 {
                walk(next, remaining & !(1 << next), adj, starts, memo, best);
            }
        }
    }

    fn cover(
        mask: u32,
        adj: &[Vec<usize>],
        starts: &[f64],
        memo: &mut std::collections::HashMap<u32, usize>,
    ) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let first = (0..adj.len())
            .filter(|i| mask & (1 << i) != 0)
            .min_by(|&a, &b| starts[a].total_cmp(&starts[b]).then(a.cmp(&b)))
            .expect("mask is non-empty");
        let mut best = usize::MAX;
        walk(first, mask & !(1 << first), adj, starts, memo, &mut best);
        memo.insert(mask, best);
        best
    }

    cover(full, adj, starts, &mut memo)
}

/// Hopcroft–Karp maximum matching on the bipartite compatibility graph
/// (left: task ends, right: task starts). The minimum fleet equals
/// `n - matching`.
pub fn hopcroft_karp_matching(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    const NIL: usize = usize::MAX;
    let mut pair_left = vec![NIL; n];
    let mut pair_right = vec![NIL; n];
    let mut dist = vec![0_usize; n];

    fn bfs(
        adj: &[Vec<usize>],
        pair_left: &[usize],
        pair_right: &[usize],
        dist: &mut [usize],
    ) -> bool {
        const NIL: usize = usize::MAX;
        let mut queue = std::collections::VecDeque::new();
        let mut found = false;
        for u in 0..adj.len() {
            if pair_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = pair_right[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(
        u: usize,
        adj: &[Vec<usize>],
        pair_left: &mut [usize],
        pair_right: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        const NIL: usize = usize::MAX;
        for &v in &adj[u] {
            let w = pair_right[v];
            if w == NIL || (dist[w] == dist[u] + 1 && dfs(w, adj, pair_left, pair_right, dist)) {
                pair_left[u] = v;
                pair_right[v] = u;
                return true;
            }
        }
        dist[u] = NIL;
        false
    }

    let mut matching = 0;
    while bfs(adj, &pair_left, &pair_right, &mut dist) {
        for u in 0..n {
            if pair_left[u] == NIL && dfs(u, adj, &mut pair_left, &mut pair_right, &mut dist) {
                matching += 1;
            }
        }
    }
    matching
}

/// A random fleet-sizing instance plus the turnaround tables in both the
/// solver's format and the oracle's raw maps.
pub struct Instance {
    pub tasks: Vec<FlightTask>,
    pub turnaround: TurnaroundTimes,
    pub reposition_raw: BTreeMap<(String, String), f64>,
    pub charging_raw: BTreeMap<String, f64>,
}

pub fn random_instance(seed: u64, n_tasks: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let airports = ["A", "B", "C"];
    let types = ["small", "medium", "large"];
    let charging_raw: BTreeMap<String, f64> = types
        .iter()
        .enumerate()
        .map(|(i, t)| (t.to_string(), i as f64 * 300.0))
        .collect();
    let mut reposition_raw = BTreeMap::new();
    let mut matrix = vec![vec![0.0; 3]; 3];
    for (i, from) in airports.iter().enumerate() {
        for (j, to) in airports.iter().enumerate() {
            let s = if i == j {
                0.0
            } else {
                rng.gen_range(200.0..900.0)
            };
            reposition_raw.insert((from.to_string(), to.to_string()), s);
            matrix[i][j] = s;
        }
    }
    let tasks: Vec<FlightTask> = (0..n_tasks)
        .map(|i| {
            let start = rng.gen_range(0.0..20_000.0_f64).floor();
            let duration = rng.gen_range(600.0..4_000.0_f64).floor();
            let origin = airports[rng.gen_range(0..3)];
            let destination = airports[rng.gen_range(0..3)];
            FlightTask {
                id: format!("k{i:03}"),
                origin_airport: AirportId(origin.into()),
                destination_airport: AirportId(destination.into()),
                start_s: start,
                end_s: start + duration,
                aircraft: types[rng.gen_range(0..3)].into(),
                passengers: rng.gen_range(1..7),
            }
        })
        .collect();
    let turnaround = TurnaroundTimes::new(
        airports.iter().map(|a| AirportId(a.to_string())).collect(),
        matrix,
        charging_raw.clone(),
    );
    Instance {
        tasks,
        turnaround,
        reposition_raw,
        charging_raw,
    }
}

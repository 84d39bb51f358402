//! Small integral min-cost max-flow via successive shortest paths with
//! Johnson potentials. All costs here are non-negative, so potentials
//! start at zero and Dijkstra suffices throughout.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    residual: i64,
    cost: i64,
    /// Index of the reverse arc in `arcs`.
    twin: usize,
}

#[derive(Debug, Default)]
pub struct MinCostFlow {
    arcs: Vec<Arc>,
    adjacency: Vec<Vec<usize>>,
}

struct QueueEntry {
    dist: i64,
    node: usize,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for QueueEntry {}
impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow {
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    /// Adds a directed arc and returns its id for later flow queries.
    pub fn add_edge(&mut self, from: usize, to: usize, capacity: i64, cost: i64) -> usize {
        assert!(cost >= 0, "solver requires non-negative costs");
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            residual: capacity,
            cost,
            twin: id + 1,
        });
        self.arcs.push(Arc {
            to: from,
            residual: 0,
            cost: -cost,
            twin: id,
        });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }

    /// Flow currently on the forward arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[self.arcs[id].twin].residual
    }

    /// Pushes up to `target` units from `source` to `sink` at minimum cost.
    /// Returns (flow shipped, total cost).
    pub fn solve(&mut self, source: usize, sink: usize, target: i64) -> (i64, i64) {
        let n = self.adjacency.len();
        let mut potential = vec![0_i64; n];
        let mut shipped = 0;
        let mut total_cost = 0;
        while shipped < target {
            // Dijkstra on reduced costs.
            let mut dist = vec![i64::MAX; n];
            let mut parent_arc = vec![usize::MAX; n];
            let mut heap = BinaryHeap::new();
            dist[source] = 0;
            heap.push(QueueEntry {
                dist: 0,
                node: source,
            });
            while let Some(QueueEntry { dist: d, node }) = heap.pop() {
                if d > dist[node] {
                    continue;
                }
                for &a in &self.adjacency[node] {
                    let arc = &self.arcs[a];
                    if arc.residual <= 0 {
                        continue;
                    }
                    let reduced = d + arc.cost + potential[node] - potential[arc.to];
                    if reduced < dist[arc.to] {
                        dist[arc.to] = reduced;
                        parent_arc[arc.to] = a;
                        heap.push(QueueEntry {
                            dist: reduced,
                            node: arc.to,
                        });
                    }
                }
            }
            if parent_arc[sink] == usize::MAX {
                break;
            }
            for (node, p) in potential.iter_mut().enumerate() {
                if dist[node] < i64::MAX {
                    *p += dist[node];
                }
            }
            // Bottleneck along the augmenting path.
            let mut push = target - shipped;
            let mut node = sink;
            while node != source {
                let a = parent_arc[node];
                push = push.min(self.arcs[a].residual);
                node = self.arcs[self.arcs[a].twin].to;
            }
            let mut node = sink;
            while node != source {
                let a = parent_arc[node];
                self.arcs[a].residual -= push;
                let twin = self.arcs[a].twin;
                self.arcs[twin].residual += push;
                total_cost += push * self.arcs[a].cost;
                node = self.arcs[twin].to;
            }
            shipped += push;
        }
        (shipped, total_cost)
    }
}

//! Binary-heap Dijkstra over link costs, forward or reverse.

use crate::scenario::{GroundNetwork, NodeId};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

pub const NO_LINK: u32 = u32::MAX;

struct HeapEntry {
    cost: f64,
    node: u32,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on cost, ties by node id for determinism.
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// One-to-all distances from `source`, with the incoming link of each
/// settled node for path extraction.
pub struct ShortestPathTree {
    pub dist: Vec<f64>,
    pub parent_link: Vec<u32>,
}

impl ShortestPathTree {
    /// Links of the path from the tree's source to `target`, in travel
    /// order, or `None` when unreachable.
    pub fn path_links(&self, net: &GroundNetwork, target: NodeId) -> Option<Vec<u32>> {
        if !self.dist[target.index()].is_finite() {
            return None;
        }
        let mut links = Vec::new();
        let mut node = target;
        while self.parent_link[node.index()] != NO_LINK {
            let l = self.parent_link[node.index()];
            links.push(l);
            node = net.link(l).from;
        }
        links.reverse();
        Some(links)
    }
}

/// Forward Dijkstra on per-link costs (seconds).
pub fn forward(net: &GroundNetwork, costs: &[f64], source: NodeId) -> ShortestPathTree {
    let n = net.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent_link = vec![NO_LINK; n];
    let mut heap = BinaryHeap::new();
    dist[source.index()] = 0.0;
    heap.push(HeapEntry {
        cost: 0.0,
        node: source.0,
    });
    while let Some(HeapEntry { cost, node }) = heap.pop() {
        if cost > dist[node as usize] {
            continue;
        }
        for &l in net.out_links(NodeId(node)) {
            let link = net.link(l);
            let next = cost + costs[l as usize];
            let to = link.to.index();
            if next < dist[to] {
                dist[to] = next;
                parent_link[to] = l;
                heap.push(HeapEntry {
                    cost: next,
                    node: link.to.0,
                });
            }
        }
    }
    ShortestPathTree { dist, parent_link }
}

/// All-to-one distances: Dijkstra on the reversed graph from `target`.
pub fn backward(net: &GroundNetwork, costs: &[f64], target: NodeId) -> Vec<f64> {
    let n = net.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[target.index()] = 0.0;
    heap.push(HeapEntry {
        cost: 0.0,
        node: target.0,
    });
    while let Some(HeapEntry { cost, node }) = heap.pop() {
        if cost > dist[node as usize] {
            continue;
        }
        for &l in net.in_links(NodeId(node)) {
            let link = net.link(l);
            let next = cost + costs[l as usize];
            let from = link.from.index();
            if next < dist[from] {
                dist[from] = next;
                heap.push(HeapEntry {
                    cost: next,
                    node: link.from.0,
                });
            }
        }
    }
    dist
}

//! Congestion-aware ground travel times.
//!
//! The assignment loads trips onto the network in repeated rounds: each
//! round routes every trip on the current congested link times, then
//! refreshes each link's time from the volume-delay curve
//! `free_flow × (1 + alpha × (volume / capacity)^beta)`. Link volumes are
//! averaged across rounds with the method of successive averages (round `k`
//! enters with weight `1/k`), which damps the route-flapping a naive
//! reload would produce. Departures are bucketed into 15-minute periods;
//! volumes and congested times are tracked per period.

pub mod dijkstra;

use crate::scenario::{GroundNetwork, NodeId, ODTrip, TripId};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Width of a departure period, seconds.
pub const PERIOD_S: u32 = 900;
/// Periods per day.
pub const PERIODS: usize = 86_400 / PERIOD_S as usize;

/// Period index for a time of day; times past midnight clamp to the last
/// period.
pub fn period_of(seconds: f64) -> usize {
    ((seconds / PERIOD_S as f64) as usize).min(PERIODS - 1)
}

/// Realized ground time for one trip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TripTime {
    Reachable(f64),
    /// No directed path existed between the trip's endpoints.
    Unreachable,
}

impl TripTime {
    pub fn seconds(self) -> Option<f64> {
        match self {
            TripTime::Reachable(s) => Some(s),
            TripTime::Unreachable => None,
        }
    }

    /// Seconds, with unreachable mapped to infinity.
    pub fn seconds_or_inf(self) -> f64 {
        self.seconds().unwrap_or(f64::INFINITY)
    }
}

/// One link's loading in one departure period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkState {
    pub link: u32,
    pub period: u16,
    /// Averaged assigned volume, vehicles per hour.
    pub volume_vph: f64,
    pub congested_s: f64,
}

/// Output of an assignment: per-trip realized times plus the per-period
/// congested link times they were measured on.
#[derive(Debug, Clone)]
pub struct TravelTimeField {
    trip_ids: Vec<TripId>,
    times: Vec<TripTime>,
    /// `[period][link]` congested seconds.
    congested: Vec<Vec<f64>>,
    /// `[period][link]` averaged volumes, vehicles per hour.
    volumes: Vec<Vec<f64>>,
}

impl TravelTimeField {
    /// Realized time for a trip that was part of the assignment.
    pub fn time(&self, trip: &TripId) -> Option<TripTime> {
        self.trip_ids
            .binary_search(trip)
            .ok()
            .map(|i| self.times[i])
    }

    pub fn times_map(&self) -> BTreeMap<TripId, TripTime> {
        self.trip_ids
            .iter()
            .cloned()
            .zip(self.times.iter().copied())
            .collect()
    }

    pub fn congested_time(&self, period: usize, link: u32) -> f64 {
        self.congested[period][link as usize]
    }

    pub fn link_costs(&self, period: usize) -> &[f64] {
        &self.congested[period]
    }

    /// Congested one-to-all distances from `origin` in `period`.
    pub fn one_to_all(&self, net: &GroundNetwork, period: usize, origin: NodeId) -> Vec<f64> {
        dijkstra::forward(net, &self.congested[period], origin).dist
    }

    /// Congested all-to-one distances into `target` in `period`.
    pub fn all_to_one(&self, net: &GroundNetwork, period: usize, target: NodeId) -> Vec<f64> {
        dijkstra::backward(net, &self.congested[period], target)
    }

    /// Loaded link/period states, volumes above zero only.
    pub fn link_states(&self) -> Vec<LinkState> {
        let mut out = Vec::new();
        for (period, vols) in self.volumes.iter().enumerate() {
            for (link, &v) in vols.iter().enumerate() {
                if v > 0.0 {
                    out.push(LinkState {
                        link: link as u32,
                        period: period as u16,
                        volume_vph: v,
                        congested_s: self.congested[period][link],
                    });
                }
            }
        }
        out
    }

    /// Total vehicle-hours over all assigned trips (unreachable trips
    /// excluded).
    pub fn total_vehicle_hours(&self) -> f64 {
        self.times
            .iter()
            .filter_map(|t| t.seconds())
            .sum::<f64>()
            / 3600.0
    }
}

/// The volume-delay curve.
pub fn congested_link_time(
    free_flow_s: f64,
    volume_vph: f64,
    capacity_vph: f64,
    alpha: f64,
    beta: f64,
) -> f64 {
    free_flow_s * (1.0 + alpha * (volume_vph / capacity_vph).powf(beta))
}

/// Iteratively loads `trips` onto the network and returns their realized
/// times. One trip contributes one vehicle to its departure period
/// regardless of party size (parties ride together).
///
/// Deterministic for a fixed trip ordering; `trips` is processed sorted by
/// trip id.
pub fn assign(net: &GroundNetwork, trips: &[ODTrip], iterations: u32) -> TravelTimeField {
    assert!(iterations >= 1, "assignment needs at least one round");
    let mut order: Vec<usize> = (0..trips.len()).collect();
    order.sort_by(|&a, &b| trips[a].id.cmp(&trips[b].id));

    // (period, origin) -> positions in `order`, deterministic iteration.
    let mut groups: BTreeMap<(usize, NodeId), Vec<usize>> = BTreeMap::new();
    for (slot, &idx) in order.iter().enumerate() {
        let t = &trips[idx];
        groups
            .entry((period_of(t.departure_s as f64), t.origin))
            .or_default()
            .push(slot);
    }
    let groups: Vec<((usize, NodeId), Vec<usize>)> = groups.into_iter().collect();

    let free_flow: Vec<f64> = net.links().iter().map(|l| l.free_flow_s()).collect();
    let n_links = net.link_count();
    let mut avg_volumes = vec![vec![0.0_f64; n_links]; PERIODS];
    let mut congested = vec![free_flow.clone(); PERIODS];
    // Last routed path per slot, links in travel order.
    let mut paths: Vec<Option<Vec<u32>>> = vec![None; order.len()];
    let vph_per_vehicle = 3600.0 / PERIOD_S as f64;

    for round in 1..=iterations {
        let routed: Vec<Vec<(usize, Option<Vec<u32>>)>> = groups
            .par_iter()
            .map(|((period, origin), slots)| {
                let tree = dijkstra::forward(net, &congested[*period], *origin);
                slots
                    .iter()
                    .map(|&slot| {
                        let trip = &trips[order[slot]];
                        (slot, tree.path_links(net, trip.destination))
                    })
                    .collect()
            })
            .collect();

        let mut round_volumes = vec![vec![0.0_f64; n_links]; PERIODS];
        for (((period, _), _), results) in groups.iter().zip(routed) {
            for (slot, path) in results {
                if let Some(links) = &path {
                    for &l in links {
                        round_volumes[*period][l as usize] += vph_per_vehicle;
                    }
                }
                paths[slot] = path;
            }
        }

        let weight = 1.0 / round as f64;
        for period in 0..PERIODS {
            for link in 0..n_links {
                let avg = &mut avg_volumes[period][link];
                *avg += (round_volumes[period][link] - *avg) * weight;
                let l = net.link(link as u32);
                congested[period][link] = congested_link_time(
                    free_flow[link],
                    *avg,
                    l.capacity_vph,
                    l.alpha,
                    l.beta,
                );
            }
        }
    }

    // Realized times: the final round's routes priced at the final
    // congested times.
    let mut trip_ids = Vec::with_capacity(order.len());
    let mut times = Vec::with_capacity(order.len());
    for (slot, &idx) in order.iter().enumerate() {
        let trip = &trips[idx];
        trip_ids.push(trip.id.clone());
        let period = period_of(trip.departure_s as f64);
        times.push(match &paths[slot] {
            Some(links) => TripTime::Reachable(
                links
                    .iter()
                    .map(|&l| congested[period][l as usize])
                    .sum(),
            ),
            None => TripTime::Unreachable,
        });
    }
    TravelTimeField {
        trip_ids,
        times,
        congested,
        volumes: avg_volumes,
    }
}

/// The all-ground driving baseline: every trip loaded, congestion included.
/// Computed once per run and then frozen as each trip's `t_driving`.
pub fn baseline_driving_times(
    net: &GroundNetwork,
    all_trips: &[ODTrip],
    iterations: u32,
) -> TravelTimeField {
    assign(net, all_trips, iterations)
}

/// Baseline variant that prices every trip at free-flow times (no loading).
pub fn free_flow_times(net: &GroundNetwork, trips: &[ODTrip]) -> TravelTimeField {
    let free_flow: Vec<f64> = net.links().iter().map(|l| l.free_flow_s()).collect();
    let mut order: Vec<usize> = (0..trips.len()).collect();
    order.sort_by(|&a, &b| trips[a].id.cmp(&trips[b].id));

    let mut by_origin: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for (slot, &idx) in order.iter().enumerate() {
        by_origin.entry(trips[idx].origin).or_default().push(slot);
    }
    let mut times = vec![TripTime::Unreachable; order.len()];
    for (origin, slots) in by_origin {
        let tree = dijkstra::forward(net, &free_flow, origin);
        for slot in slots {
            let d = tree.dist[trips[order[slot]].destination.index()];
            if d.is_finite() {
                times[slot] = TripTime::Reachable(d);
            }
        }
    }
    TravelTimeField {
        trip_ids: order.iter().map(|&i| trips[i].id.clone()).collect(),
        times,
        congested: vec![free_flow; PERIODS],
        volumes: vec![vec![0.0; net.link_count()]; PERIODS],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{CoordMode, Link, Node};

    fn line_network(n: u32, alpha: f64) -> GroundNetwork {
        let nodes = (0..n)
            .map(|i| Node {
                label: format!("n{i}"),
                x: i as f64 * 1000.0,
                y: 0.0,
            })
            .collect();
        let mut links = Vec::new();
        for i in 0..n - 1 {
            for (a, b) in [(i, i + 1), (i + 1, i)] {
                links.push(Link {
                    from: NodeId(a),
                    to: NodeId(b),
                    length_m: 1000.0,
                    free_flow_mps: 10.0,
                    capacity_vph: 100.0,
                    alpha,
                    beta: 4.0,
                });
            }
        }
        GroundNetwork::new(CoordMode::PlanarMeters, nodes, links)
    }

    fn trip(id: &str, from: u32, to: u32, dep: u32) -> ODTrip {
        ODTrip {
            id: TripId(id.to_string()),
            origin: NodeId(from),
            destination: NodeId(to),
            departure_s: dep,
            party_size: 1,
        }
    }

    #[test]
    fn zero_alpha_gives_free_flow_sum() {
        let net = line_network(3, 0.0);
        let trips = vec![trip("t1", 0, 2, 28_800)];
        let field = assign(&net, &trips, 1);
        let t = field.time(&TripId("t1".into())).unwrap().seconds().unwrap();
        // Two 1000 m links at 10 m/s.
        assert!((t - 200.0).abs() < 1e-9, "got {t}");
    }

    #[test]
    fn volume_delay_formula_hand_value() {
        // 100 s free-flow at volume == capacity with alpha 0.15, beta 4.
        let t = congested_link_time(100.0, 100.0, 100.0, 0.15, 4.0);
        assert!((t - 115.0).abs() < 1e-12, "got {t}");
    }

    #[test]
    fn one_period_of_trips_congests_the_link() {
        // 25 trips in one 15-minute period = 100 veh/h on a 100 veh/h link.
        let net = line_network(2, 0.15);
        let trips: Vec<ODTrip> = (0..25)
            .map(|i| trip(&format!("t{i:02}"), 0, 1, 28_800 + i))
            .collect();
        let field = assign(&net, &trips, 1);
        let t = field.time(&TripId("t00".into())).unwrap().seconds().unwrap();
        assert!((t - 115.0).abs() < 1e-9, "got {t}");
    }

    #[test]
    fn isolated_origin_is_unreachable() {
        let mut nodes: Vec<Node> = line_network(3, 0.15).nodes().to_vec();
        nodes.push(Node {
            label: "island".into(),
            x: -1e6,
            y: 0.0,
        });
        let net = GroundNetwork::new(
            CoordMode::PlanarMeters,
            nodes,
            line_network(3, 0.15).links().to_vec(),
        );
        let trips = vec![trip("t1", 3, 0, 100)];
        let field = assign(&net, &trips, 1);
        assert_eq!(
            field.time(&TripId("t1".into())),
            Some(TripTime::Unreachable)
        );
    }

    #[test]
    fn empty_trip_set_gives_empty_map() {
        let net = line_network(3, 0.15);
        let field = baseline_driving_times(&net, &[], 4);
        assert!(field.times_map().is_empty());
    }

    #[test]
    fn baseline_at_least_free_flow_shortest_path() {
        let net = line_network(4, 0.15);
        let trips = vec![
            trip("a", 0, 3, 28_800),
            trip("b", 1, 3, 29_000),
            trip("c", 3, 0, 30_000),
        ];
        let baseline = baseline_driving_times(&net, &trips, 8);
        let free = free_flow_times(&net, &trips);
        for t in &trips {
            let b = baseline.time(&t.id).unwrap().seconds().unwrap();
            let f = free.time(&t.id).unwrap().seconds().unwrap();
            assert!(b >= f - 1e-9, "trip {}: baseline {b} < free-flow {f}", t.id);
        }
    }

    #[test]
    fn delay_monotone_in_volume() {
        let mut last = 0.0;
        for v in [0.0, 50.0, 100.0, 200.0, 400.0] {
            let t = congested_link_time(100.0, v, 100.0, 0.15, 4.0);
            assert!(t >= last);
            last = t;
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let net = line_network(5, 0.15);
        let trips: Vec<ODTrip> = (0..40)
            .map(|i| trip(&format!("t{i:02}"), i % 4, 4 - (i % 3), 28_000 + 60 * i))
            .filter(|t| t.origin != t.destination)
            .collect();
        let a = assign(&net, &trips, 6);
        let b = assign(&net, &trips, 6);
        assert_eq!(a.times_map(), b.times_map());
    }

    #[test]
    fn shrinking_trip_set_never_raises_vehicle_hours() {
        let net = line_network(6, 0.15);
        let trips: Vec<ODTrip> = (0..60)
            .map(|i| trip(&format!("t{i:02}"), i % 5, 5 - (i % 4), 28_000 + 30 * i))
            .filter(|t| t.origin != t.destination)
            .collect();
        let full = assign(&net, &trips, 20);
        let reduced = assign(&net, &trips[..trips.len() / 2], 20);
        assert!(reduced.total_vehicle_hours() <= full.total_vehicle_hours() + 1e-9);
    }
}

//! Core domain types shared by every stage.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Index of a node in its [`GroundNetwork`]. The human-readable label from
/// `nodes.csv` is kept on the [`Node`] itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Identifier of a travel party's trip, unique within a scenario.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TripId(pub String);

impl fmt::Display for TripId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Identifier of an airport, unique within a scenario.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AirportId(pub String);

impl fmt::Display for AirportId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// How node coordinates are interpreted when measuring airport-to-airport
/// distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CoordMode {
    /// `x`/`y` are planar meters; distances are Euclidean.
    #[default]
    PlanarMeters,
    /// `x` is longitude and `y` latitude in degrees; distances are
    /// great-circle.
    LonLat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub label: String,
    pub x: f64,
    pub y: f64,
}

/// One directed road link with its volume-delay parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub from: NodeId,
    pub to: NodeId,
    pub length_m: f64,
    pub free_flow_mps: f64,
    pub capacity_vph: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Link {
    /// Travel time at zero volume, in seconds.
    pub fn free_flow_s(&self) -> f64 {
        self.length_m / self.free_flow_mps
    }
}

/// Directed road graph with per-link congestion parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundNetwork {
    pub coord_mode: CoordMode,
    nodes: Vec<Node>,
    links: Vec<Link>,
    #[serde(skip)]
    out_links: Vec<Vec<u32>>,
    #[serde(skip)]
    in_links: Vec<Vec<u32>>,
}

impl GroundNetwork {
    pub fn new(coord_mode: CoordMode, nodes: Vec<Node>, links: Vec<Link>) -> Self {
        let mut net = GroundNetwork {
            coord_mode,
            nodes,
            links,
            out_links: Vec::new(),
            in_links: Vec::new(),
        };
        net.rebuild_adjacency();
        net
    }

    pub(crate) fn rebuild_adjacency(&mut self) {
        self.out_links = vec![Vec::new(); self.nodes.len()];
        self.in_links = vec![Vec::new(); self.nodes.len()];
        for (i, link) in self.links.iter().enumerate() {
            self.out_links[link.from.index()].push(i as u32);
            self.in_links[link.to.index()].push(i as u32);
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn link(&self, idx: u32) -> &Link {
        &self.links[idx as usize]
    }

    pub fn out_links(&self, node: NodeId) -> &[u32] {
        &self.out_links[node.index()]
    }

    pub fn in_links(&self, node: NodeId) -> &[u32] {
        &self.in_links[node.index()]
    }

    /// Resolves a node label to its id.
    pub fn resolve(&self, label: &str) -> Option<NodeId> {
        self.nodes
            .iter()
            .position(|n| n.label == label)
            .map(|i| NodeId(i as u32))
    }

    /// Distance between two nodes in statute miles, honoring the coordinate
    /// convention.
    pub fn distance_miles(&self, a: NodeId, b: NodeId) -> f64 {
        let na = self.node(a);
        let nb = self.node(b);
        match self.coord_mode {
            CoordMode::PlanarMeters => {
                let dx = na.x - nb.x;
                let dy = na.y - nb.y;
                (dx * dx + dy * dy).sqrt() / METERS_PER_MILE
            }
            CoordMode::LonLat => haversine_miles(na.x, na.y, nb.x, nb.y),
        }
    }
}

pub const METERS_PER_MILE: f64 = 1609.344;

/// Great-circle distance between two lon/lat points in statute miles.
pub fn haversine_miles(lon1: f64, lat1: f64, lon2: f64, lat2: f64) -> f64 {
    const EARTH_RADIUS_MI: f64 = 3958.7613;
    let (lat1, lat2) = (lat1.to_radians(), lat2.to_radians());
    let dlat = lat2 - lat1;
    let dlon = (lon2 - lon1).to_radians();
    let a = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_MI * a.sqrt().asin()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Runway {
    pub length_ft: f64,
    pub width_ft: f64,
}

/// A ground-attached airport with its runway set and land-side parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Airport {
    pub id: AirportId,
    /// Node the airport hangs off in the ground network.
    pub anchor: NodeId,
    pub runways: Vec<Runway>,
    /// Interval between successive runway operations, seconds.
    pub separation_s: f64,
    /// Persons per vehicle on the access road.
    pub landside_occupancy: f64,
    /// Access road throughput, vehicles per hour.
    pub landside_cap_vph: f64,
    /// Maximum simultaneous ground-held aircraft; `None` means unlimited.
    #[serde(default)]
    pub hold_capacity: Option<u32>,
}

impl Airport {
    /// Length of the longest runway in feet.
    pub fn longest_runway_ft(&self) -> f64 {
        self.runways
            .iter()
            .map(|r| r.length_ft)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AircraftType {
    pub name: String,
    /// Passenger capacity.
    pub seats: u32,
    pub range_mi: f64,
    pub min_runway_ft: f64,
    /// Charging/turnaround time after completing a task, seconds.
    pub charging_s: f64,
    /// Runway occupancy time, seconds.
    pub runway_occupancy_s: f64,
}

/// One travel party's demand record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ODTrip {
    pub id: TripId,
    pub origin: NodeId,
    pub destination: NodeId,
    /// Seconds since midnight, in `[0, 86400)`.
    pub departure_s: u32,
    pub party_size: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Ground,
    Uam,
}

/// Air-leg details present only when a plan's mode is [`Mode::Uam`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UamLeg {
    pub origin_airport: AirportId,
    pub destination_airport: AirportId,
    pub hold_s: f64,
}

/// A trip's realized mode and door-to-door time after a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModePlan {
    pub trip: TripId,
    pub mode: Mode,
    pub door_to_door_s: f64,
    pub baseline_driving_s: f64,
    pub uam: Option<UamLeg>,
}

//! Airport-pair selection, capacity-gated departures, and door-to-door
//! air itineraries.
//!
//! Departures run through a discrete-event simulator. Each airport keeps a
//! first-come-first-served queue of flights waiting to leave, per-runway
//! next-free times, and a count of recently landed aircraft still inside
//! their charging window. A flight departs at the earliest time at or
//! after it is ready when a runway slot is open (successive operations on
//! one runway sit at least the separation interval apart) and the airport
//! is not over its ground-hold capacity. Landings book runway slots the
//! same way — an operation is an operation — and arrivals requested
//! earlier win ties against waiting departures.
//!
//! Ground-hold bookkeeping: a landing adds one aircraft to the airport's
//! count for the duration of its type's charging time; a departure removes
//! the longest-waiting one (the aircraft flies out). Airports default to
//! unlimited hold capacity.

use crate::flight::{flight_time_seconds, FlightProfile};
use crate::ground::{period_of, TravelTimeField};
use crate::scenario::{Airport, AirportId, GroundNetwork, NodeId, ODTrip, Scenario, TripId};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DispatchError {
    #[error("trip {0}: no usable airport pair")]
    NoFeasiblePair(TripId),
    #[error("trip {0}: no ground path to or from any airport")]
    UnreachablePair(TripId),
    #[error("trip {0}: no aircraft type fits the selected pair")]
    NoFeasibleType(TripId),
}

/// A flight wanting to depart: everything the simulator needs, with times
/// already composed up to the origin airport.
#[derive(Debug, Clone, PartialEq)]
pub struct FlightRequest {
    pub trip: TripId,
    pub party: u32,
    pub origin_airport: usize,
    pub destination_airport: usize,
    /// When the party is at the origin airport ready to go.
    pub ready_s: f64,
    /// Unimpeded airborne time for the pair distance.
    pub flight_base_s: f64,
    /// Phase-one aircraft assignment (type name).
    pub aircraft: String,
    /// Charging window the aircraft needs after landing.
    pub charging_s: f64,
}

/// What the simulator decided for one request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepartureOutcome {
    pub depart_s: f64,
    pub hold_s: f64,
    pub runway: usize,
    /// Touchdown time, including any wait for a landing slot.
    pub land_s: f64,
    pub land_runway: usize,
}

/// One row of the departure event log.
#[derive(Debug, Clone, PartialEq)]
pub struct DepartureRecord {
    pub trip: TripId,
    pub airport: AirportId,
    pub runway: usize,
    pub ready_s: f64,
    pub depart_s: f64,
    pub hold_s: f64,
    pub aircraft: String,
}

/// A completed air itinerary with its exact decomposition:
/// `total = access + hold + flight + egress`.
#[derive(Debug, Clone, PartialEq)]
pub struct UamItinerary {
    pub trip: TripId,
    pub party: u32,
    pub origin_airport: usize,
    pub destination_airport: usize,
    pub access_s: f64,
    pub hold_s: f64,
    pub flight_s: f64,
    pub egress_s: f64,
    pub total_s: f64,
    pub ready_s: f64,
    pub depart_s: f64,
    pub land_s: f64,
    pub runway: usize,
    pub aircraft: String,
}

/// Live state of one airport during a simulation run.
#[derive(Debug, Clone)]
pub struct AirportQueue {
    pub airport: usize,
    /// Maximum simultaneous ground-held aircraft; `None` is unlimited.
    pub hold_capacity: Option<u32>,
    /// Aircraft currently on the ground inside a charging window.
    pub current_count: u32,
    pub runway_next_free: Vec<f64>,
    /// Flights ready to depart, in request order.
    pub pending: VecDeque<u32>,
    separation_s: f64,
    /// Release times of the charging windows behind `current_count`.
    turnarounds: BinaryHeap<std::cmp::Reverse<TimeKey>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct TimeKey(f64);
impl Eq for TimeKey {}
impl PartialOrd for TimeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for TimeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl AirportQueue {
    fn new(airport: usize, spec: &Airport) -> Self {
        AirportQueue {
            airport,
            hold_capacity: spec.hold_capacity,
            current_count: 0,
            runway_next_free: vec![f64::NEG_INFINITY; spec.runways.len()],
            pending: VecDeque::new(),
            separation_s: spec.separation_s,
            turnarounds: BinaryHeap::new(),
        }
    }

    fn expire_turnarounds(&mut self, now: f64) {
        while let Some(std::cmp::Reverse(TimeKey(t))) = self.turnarounds.peek().copied() {
            if t <= now {
                self.turnarounds.pop();
                self.current_count -= 1;
            } else {
                break;
            }
        }
    }

    fn next_release(&self) -> Option<f64> {
        self.turnarounds.peek().map(|std::cmp::Reverse(TimeKey(t))| *t)
    }

    /// Runway with the earliest next-free time, lowest index on ties.
    fn best_runway(&self) -> usize {
        self.runway_next_free
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
            .map(|(i, _)| i)
            .expect("airports have at least one runway")
    }

    fn book_operation(&mut self, requested_s: f64) -> (usize, f64) {
        let runway = self.best_runway();
        let slot = requested_s.max(self.runway_next_free[runway]);
        self.runway_next_free[runway] = slot + self.separation_s;
        (runway, slot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EventKind {
    /// A flight touches down (requested at its unimpeded arrival time).
    Landing,
    /// A flight reaches its origin airport and joins the queue.
    Ready,
    /// Re-examine the head of an airport's departure queue.
    Wake,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    kind: EventKind,
    /// Flight index for Landing/Ready, airport index for Wake.
    subject: u32,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Event {}
impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |k: EventKind| match k {
            EventKind::Landing => 0_u8,
            EventKind::Ready => 1,
            EventKind::Wake => 2,
        };
        // BinaryHeap is a max-heap; invert for earliest-first.
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| rank(other.kind).cmp(&rank(self.kind)))
            .then_with(|| other.subject.cmp(&self.subject))
    }
}

/// Runs the departure/landing timeline for a set of flights and fills in
/// each one's departure time, hold, and touchdown.
///
/// Holds never fail a flight; an over-committed airport just makes them
/// grow. Identical inputs produce an identical event log.
pub fn simulate_departures(
    requests: &[FlightRequest],
    airports: &[Airport],
) -> Vec<DepartureOutcome> {
    // Process flights in (ready time, trip id) order regardless of the
    // caller's ordering.
    let mut order: Vec<u32> = (0..requests.len() as u32).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (&requests[a as usize], &requests[b as usize]);
        ra.ready_s
            .total_cmp(&rb.ready_s)
            .then_with(|| ra.trip.cmp(&rb.trip))
    });
    let seq_of: HashMap<u32, u32> = order
        .iter()
        .enumerate()
        .map(|(seq, &idx)| (idx, seq as u32))
        .collect();

    let mut queues: Vec<AirportQueue> = airports
        .iter()
        .enumerate()
        .map(|(i, a)| AirportQueue::new(i, a))
        .collect();
    let mut outcomes: Vec<Option<DepartureOutcome>> = vec![None; requests.len()];
    let mut events = BinaryHeap::new();
    for &idx in &order {
        events.push(Event {
            time: requests[idx as usize].ready_s,
            kind: EventKind::Ready,
            subject: seq_of[&idx],
        });
    }

    while let Some(event) = events.pop() {
        match event.kind {
            EventKind::Ready => {
                let flight = order[event.subject as usize];
                let airport = requests[flight as usize].origin_airport;
                queues[airport].pending.push_back(flight);
                if queues[airport].pending.len() == 1 {
                    try_depart(
                        event.time,
                        airport,
                        requests,
                        &mut queues,
                        &mut outcomes,
                        &mut events,
                        &seq_of,
                    );
                }
            }
            EventKind::Wake => {
                try_depart(
                    event.time,
                    event.subject as usize,
                    requests,
                    &mut queues,
                    &mut outcomes,
                    &mut events,
                    &seq_of,
                );
            }
            EventKind::Landing => {
                let flight = order[event.subject as usize] as usize;
                let request = &requests[flight];
                let queue = &mut queues[request.destination_airport];
                queue.expire_turnarounds(event.time);
                let (runway, slot) = queue.book_operation(event.time);
                if request.charging_s > 0.0 {
                    queue.turnarounds.push(std::cmp::Reverse(TimeKey(
                        slot + request.charging_s,
                    )));
                    queue.current_count += 1;
                }
                let outcome = outcomes[flight]
                    .as_mut()
                    .expect("landing only happens after departure");
                outcome.land_s = slot;
                outcome.land_runway = runway;
            }
        }
    }

    outcomes
        .into_iter()
        .map(|o| o.expect("every flight departs eventually"))
        .collect()
}

fn try_depart(
    now: f64,
    airport: usize,
    requests: &[FlightRequest],
    queues: &mut [AirportQueue],
    outcomes: &mut [Option<DepartureOutcome>],
    events: &mut BinaryHeap<Event>,
    seq_of: &HashMap<u32, u32>,
) {
    let queue = &mut queues[airport];
    let Some(&flight) = queue.pending.front() else {
        return;
    };
    let request = &requests[flight as usize];
    queue.expire_turnarounds(now);

    // Ground-hold gate: over-capacity airports stall departures until a
    // charging window expires.
    if let Some(capacity) = queue.hold_capacity {
        if queue.current_count > capacity {
            let release = queue
                .next_release()
                .expect("count is positive, so a release is scheduled");
            events.push(Event {
                time: release,
                kind: EventKind::Wake,
                subject: airport as u32,
            });
            return;
        }
    }

    let runway = queue.best_runway();
    let earliest = queue.runway_next_free[runway].max(request.ready_s);
    if earliest > now {
        events.push(Event {
            time: earliest,
            kind: EventKind::Wake,
            subject: airport as u32,
        });
        return;
    }

    // Depart now.
    queue.pending.pop_front();
    let (runway, slot) = queue.book_operation(now);
    debug_assert_eq!(slot, now);
    if queue.current_count > 0 {
        // The aircraft flying out clears the oldest charging window.
        queue.turnarounds.pop();
        queue.current_count -= 1;
    }
    outcomes[flight as usize] = Some(DepartureOutcome {
        depart_s: slot,
        hold_s: slot - request.ready_s,
        runway,
        land_s: f64::NAN,
        land_runway: usize::MAX,
    });
    events.push(Event {
        time: slot + request.flight_base_s,
        kind: EventKind::Landing,
        subject: seq_of[&flight],
    });
    if !queue.pending.is_empty() {
        events.push(Event {
            time: now,
            kind: EventKind::Wake,
            subject: airport as u32,
        });
    }
}

/// Lazy access/egress tables: congested travel times between every demand
/// node and each airport anchor, per departure period, computed on first
/// use.
pub struct AnchorTimes<'a> {
    network: &'a GroundNetwork,
    airports: &'a [Airport],
    field: &'a TravelTimeField,
    /// (airport, period) -> distances from every node to the anchor.
    access: HashMap<(usize, usize), Vec<f64>>,
    /// (airport, period) -> distances from the anchor to every node.
    egress: HashMap<(usize, usize), Vec<f64>>,
}

impl<'a> AnchorTimes<'a> {
    pub fn new(
        network: &'a GroundNetwork,
        airports: &'a [Airport],
        field: &'a TravelTimeField,
    ) -> Self {
        AnchorTimes {
            network,
            airports,
            field,
            access: HashMap::new(),
            egress: HashMap::new(),
        }
    }

    /// Seconds from `origin` to the airport's anchor, departing in `period`.
    pub fn access_s(&mut self, airport: usize, period: usize, origin: NodeId) -> f64 {
        let anchor = self.airports[airport].anchor;
        let (network, field) = (self.network, self.field);
        self.access
            .entry((airport, period))
            .or_insert_with(|| field.all_to_one(network, period, anchor))[origin.index()]
    }

    /// Seconds from the airport's anchor to `destination` in `period`.
    pub fn egress_s(&mut self, airport: usize, period: usize, destination: NodeId) -> f64 {
        let anchor = self.airports[airport].anchor;
        let (network, field) = (self.network, self.field);
        self.egress
            .entry((airport, period))
            .or_insert_with(|| field.one_to_all(network, period, anchor))[destination.index()]
    }
}

/// The pair of airports minimizing `access + flight + egress` for a trip
/// under current ground times, ties broken by airport id (airports are
/// sorted by id, so index order is id order).
pub fn select_airport_pair(
    trip: &ODTrip,
    anchor_times: &mut AnchorTimes<'_>,
    pair_distance_mi: &[Vec<f64>],
    profile: &FlightProfile,
) -> Result<(usize, usize), DispatchError> {
    let n = anchor_times.airports.len();
    if n < 2 {
        return Err(DispatchError::NoFeasiblePair(trip.id.clone()));
    }
    let depart_period = period_of(trip.departure_s as f64);
    let mut best: Option<(f64, usize, usize)> = None;
    let mut saw_pair = false;
    for (origin_airport, distances) in pair_distance_mi.iter().enumerate() {
        let access = anchor_times.access_s(origin_airport, depart_period, trip.origin);
        for (destination_airport, &distance) in distances.iter().enumerate() {
            if origin_airport == destination_airport {
                continue;
            }
            saw_pair = true;
            if !access.is_finite() {
                continue;
            }
            let fly = flight_time_seconds(distance, profile)
                .expect("pair distances are non-negative");
            let arrival_period = period_of(trip.departure_s as f64 + access + fly);
            let egress =
                anchor_times.egress_s(destination_airport, arrival_period, trip.destination);
            if !egress.is_finite() {
                continue;
            }
            let total = access + fly + egress;
            let better = match best {
                None => true,
                Some((t, _, _)) => total < t,
            };
            if better {
                best = Some((total, origin_airport, destination_airport));
            }
        }
    }
    match best {
        Some((_, a, b)) => Ok((a, b)),
        None if saw_pair => Err(DispatchError::UnreachablePair(trip.id.clone())),
        None => Err(DispatchError::NoFeasiblePair(trip.id.clone())),
    }
}

/// Airport-to-airport distances in statute miles.
pub fn pair_distances(scenario: &Scenario) -> Vec<Vec<f64>> {
    scenario
        .airports
        .iter()
        .map(|from| {
            scenario
                .airports
                .iter()
                .map(|to| {
                    if from.id == to.id {
                        0.0
                    } else {
                        scenario.network.distance_miles(from.anchor, to.anchor)
                    }
                })
                .collect()
        })
        .collect()
}

/// An itinerary before queueing: pair, assignment, and the hold-free legs.
#[derive(Debug, Clone, PartialEq)]
pub struct UamEstimate {
    pub origin_airport: usize,
    pub destination_airport: usize,
    pub access_s: f64,
    pub flight_base_s: f64,
    pub egress_s: f64,
    pub aircraft: String,
    pub charging_s: f64,
}

impl UamEstimate {
    /// Door-to-door seconds assuming no hold.
    pub fn total_s(&self) -> f64 {
        self.access_s + self.flight_base_s + self.egress_s
    }
}

/// Pair selection plus type assignment for one trip, no queueing.
pub fn estimate_uam(
    trip: &ODTrip,
    scenario: &Scenario,
    anchor_times: &mut AnchorTimes<'_>,
    pair_distance_mi: &[Vec<f64>],
    profile: &FlightProfile,
) -> Result<UamEstimate, DispatchError> {
    let (origin_airport, destination_airport) =
        select_airport_pair(trip, anchor_times, pair_distance_mi, profile)?;
    let distance = pair_distance_mi[origin_airport][destination_airport];
    let origin = &scenario.airports[origin_airport];
    let destination = &scenario.airports[destination_airport];
    let runway_limit = origin
        .longest_runway_ft()
        .min(destination.longest_runway_ft());
    let assignment =
        crate::fleet::select_aircraft(&scenario.aircraft, trip.party_size, distance, runway_limit)
            .map_err(|_| DispatchError::NoFeasibleType(trip.id.clone()))?;

    let depart_period = period_of(trip.departure_s as f64);
    let access = anchor_times.access_s(origin_airport, depart_period, trip.origin);
    let fly = flight_time_seconds(distance, profile).expect("distance is non-negative");
    let arrival_period = period_of(trip.departure_s as f64 + access + fly);
    let egress = anchor_times.egress_s(destination_airport, arrival_period, trip.destination);
    Ok(UamEstimate {
        origin_airport,
        destination_airport,
        access_s: access,
        flight_base_s: fly,
        egress_s: egress,
        aircraft: assignment.aircraft.name.clone(),
        charging_s: assignment.aircraft.charging_s,
    })
}

/// Plans and simulates the air mode for a set of trips under the given
/// ground congestion: pair selection, type assignment, the departure
/// timeline, and the final four-leg composition.
///
/// Returns per-trip results in the input order plus the departure log.
pub fn plan_uam(
    trips: &[&ODTrip],
    scenario: &Scenario,
    field: &TravelTimeField,
    profile: &FlightProfile,
) -> (
    Vec<Result<UamItinerary, DispatchError>>,
    Vec<DepartureRecord>,
) {
    let mut anchor_times = AnchorTimes::new(&scenario.network, &scenario.airports, field);
    let pair_distance_mi = pair_distances(scenario);

    let mut results: Vec<Result<UamItinerary, DispatchError>> = Vec::with_capacity(trips.len());
    let mut requests = Vec::new();
    let mut request_trip_slots = Vec::new();
    for (slot, trip) in trips.iter().enumerate() {
        match estimate_uam(trip, scenario, &mut anchor_times, &pair_distance_mi, profile) {
            Ok(estimate) => {
                requests.push(FlightRequest {
                    trip: trip.id.clone(),
                    party: trip.party_size,
                    origin_airport: estimate.origin_airport,
                    destination_airport: estimate.destination_airport,
                    ready_s: trip.departure_s as f64 + estimate.access_s,
                    flight_base_s: estimate.flight_base_s,
                    aircraft: estimate.aircraft.clone(),
                    charging_s: estimate.charging_s,
                });
                request_trip_slots.push(slot);
                results.push(Ok(UamItinerary {
                    trip: trip.id.clone(),
                    party: trip.party_size,
                    origin_airport: estimate.origin_airport,
                    destination_airport: estimate.destination_airport,
                    access_s: estimate.access_s,
                    hold_s: 0.0,
                    flight_s: estimate.flight_base_s,
                    egress_s: estimate.egress_s,
                    total_s: 0.0,
                    ready_s: trip.departure_s as f64 + estimate.access_s,
                    depart_s: 0.0,
                    land_s: 0.0,
                    runway: 0,
                    aircraft: estimate.aircraft,
                }));
            }
            Err(e) => results.push(Err(e)),
        }
    }

    let outcomes = simulate_departures(&requests, &scenario.airports);

    let mut records = Vec::with_capacity(requests.len());
    for ((request, outcome), &slot) in requests.iter().zip(&outcomes).zip(&request_trip_slots) {
        let trip = trips[slot];
        let itinerary = results[slot]
            .as_mut()
            .expect("slot was planned successfully");
        itinerary.hold_s = outcome.hold_s;
        itinerary.depart_s = outcome.depart_s;
        itinerary.land_s = outcome.land_s;
        itinerary.runway = outcome.runway;
        // Airborne time includes any wait for a landing slot.
        itinerary.flight_s = outcome.land_s - outcome.depart_s;
        // Egress re-read at the period the flight actually lands.
        itinerary.egress_s = anchor_times.egress_s(
            itinerary.destination_airport,
            period_of(outcome.land_s),
            trip.destination,
        );
        itinerary.total_s =
            itinerary.access_s + itinerary.hold_s + itinerary.flight_s + itinerary.egress_s;
        records.push(DepartureRecord {
            trip: request.trip.clone(),
            airport: scenario.airports[request.origin_airport].id.clone(),
            runway: outcome.runway,
            ready_s: request.ready_s,
            depart_s: outcome.depart_s,
            hold_s: outcome.hold_s,
            aircraft: request.aircraft.clone(),
        });
    }
    records.sort_by(|a, b| {
        a.depart_s
            .total_cmp(&b.depart_s)
            .then_with(|| a.trip.cmp(&b.trip))
    });
    (results, records)
}

/// Single-trip composition through an otherwise empty system.
pub fn uam_travel_time(
    trip: &ODTrip,
    scenario: &Scenario,
    field: &TravelTimeField,
    profile: &FlightProfile,
) -> Result<UamItinerary, DispatchError> {
    let (mut results, _) = plan_uam(&[trip], scenario, field, profile);
    results.remove(0)
}

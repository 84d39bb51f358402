//! The mode-allocation equilibrium loop.
//!
//! Trips start on whichever mode looks faster against the frozen driving
//! baseline, then iterate: air times are re-simulated (holds included) and
//! non-beneficial trips demoted to ground; ground times are re-assigned
//! and a β fraction of the trips suffering worst against the baseline are
//! promoted to air. The loop stops once the share of switching trips drops
//! below the configured tolerance, or gives up at the iteration cap with a
//! non-convergence flag. A closing demotion sweep then re-simulates the
//! final air set until no trip is slower than its baseline, so the
//! reported allocation is an exact fixed point of the demotion rule.

use crate::dispatch::{self, AnchorTimes, DepartureRecord, UamItinerary};
use crate::flight::{FlightError, FlightProfile};
use crate::ground::{self, TravelTimeField};
use crate::scenario::{Mode, ModePlan, ODTrip, Scenario, UamLeg};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The three times tracked per trip; unreachable or not-yet-computed
/// values are infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripTimes {
    pub t_uam: f64,
    pub t_ground: f64,
    pub t_driving: f64,
}

/// Allocation state. The boolean vector makes the partition structural:
/// every trip is on exactly one mode at all times.
#[derive(Debug, Clone)]
pub struct EquilibriumState {
    pub iteration: u32,
    pub uam: Vec<bool>,
    pub times: Vec<TripTimes>,
    pub switched_this_iter: u32,
}

impl EquilibriumState {
    pub fn n_uam(&self) -> usize {
        self.uam.iter().filter(|&&u| u).count()
    }

    pub fn n_ground(&self) -> usize {
        self.uam.len() - self.n_uam()
    }

    pub fn uam_indices(&self) -> Vec<usize> {
        (0..self.uam.len()).filter(|&i| self.uam[i]).collect()
    }

    pub fn ground_indices(&self) -> Vec<usize> {
        (0..self.uam.len()).filter(|&i| !self.uam[i]).collect()
    }
}

/// First-pass allocation: a trip starts on air when its hold-free air
/// estimate under baseline congestion beats its driving baseline.
pub fn initialize(
    scenario: &Scenario,
    baseline: &TravelTimeField,
    profile: &FlightProfile,
) -> EquilibriumState {
    let trips = &scenario.demand;
    let mut anchor_times = AnchorTimes::new(&scenario.network, &scenario.airports, baseline);
    let pair_distance_mi = dispatch::pair_distances(scenario);
    let mut uam = vec![false; trips.len()];
    let mut times = Vec::with_capacity(trips.len());
    for (i, trip) in trips.iter().enumerate() {
        let t_driving = baseline
            .time(&trip.id)
            .map(|t| t.seconds_or_inf())
            .unwrap_or(f64::INFINITY);
        let estimate =
            dispatch::estimate_uam(trip, scenario, &mut anchor_times, &pair_distance_mi, profile);
        if let Ok(est) = &estimate {
            let total = est.total_s();
            if total.is_finite() && total <= t_driving {
                uam[i] = true;
            }
        }
        times.push(TripTimes {
            t_uam: f64::INFINITY,
            t_ground: t_driving,
            t_driving,
        });
    }
    EquilibriumState {
        iteration: 0,
        uam,
        times,
        switched_this_iter: 0,
    }
}

/// Moves every air trip slower than its driving baseline back to ground.
/// Returns the number demoted.
pub fn demote(state: &mut EquilibriumState) -> u32 {
    let mut demoted = 0;
    for i in 0..state.uam.len() {
        if state.uam[i] && state.times[i].t_uam > state.times[i].t_driving {
            state.uam[i] = false;
            demoted += 1;
        }
    }
    demoted
}

/// Promotion inputs beyond the state itself.
pub struct PromotionRule<'a> {
    pub beta: f64,
    pub index_threshold: u32,
    /// Eligibility slack on `t_ground > t_driving`, seconds.
    pub slack_s: f64,
    /// Hold-free air estimates per trip, used once the iteration index
    /// passes the threshold; `None` means no estimate exists.
    pub estimates: &'a [Option<f64>],
    /// Seeded selection instead of largest-benefit-first.
    pub rng: Option<&'a mut ChaCha8Rng>,
}

/// Promotes `ceil(beta × |eligible|)` eligible ground trips to air.
/// Before the index threshold, eligibility is `t_ground > t_driving +
/// slack`; from it on, the trip's air estimate must also beat its ground
/// time. Selection is largest-gap-first with ties by trip id, or seeded
/// random when a generator is supplied. Returns the number promoted.
pub fn promote(state: &mut EquilibriumState, trips: &[ODTrip], rule: PromotionRule<'_>) -> u32 {
    let mut eligible: Vec<usize> = (0..state.uam.len())
        .filter(|&i| {
            if state.uam[i] {
                return false;
            }
            let t = &state.times[i];
            if !t.t_ground.is_finite() || t.t_ground <= t.t_driving + rule.slack_s {
                return false;
            }
            if state.iteration >= rule.index_threshold {
                match rule.estimates[i] {
                    Some(est) => est.is_finite() && est <= t.t_ground,
                    None => false,
                }
            } else {
                true
            }
        })
        .collect();
    if eligible.is_empty() {
        return 0;
    }
    let quota = ((rule.beta * eligible.len() as f64).ceil() as usize).min(eligible.len());
    let chosen: Vec<usize> = match rule.rng {
        Some(rng) => {
            eligible.sort_by(|&a, &b| trips[a].id.cmp(&trips[b].id));
            eligible.choose_multiple(rng, quota).copied().collect()
        }
        None => {
            eligible.sort_by(|&a, &b| {
                let gap_a = state.times[a].t_ground - state.times[a].t_driving;
                let gap_b = state.times[b].t_ground - state.times[b].t_driving;
                gap_b
                    .total_cmp(&gap_a)
                    .then_with(|| trips[a].id.cmp(&trips[b].id))
            });
            eligible.truncate(quota);
            eligible
        }
    };
    for i in &chosen {
        state.uam[*i] = true;
    }
    chosen.len() as u32
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRow {
    pub iter: u32,
    pub n_uam: usize,
    pub n_ground: usize,
    pub switched: u32,
    pub median_uam_saving_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdPoint {
    pub threshold_s: u32,
    pub n_benefited: usize,
    pub median_driving_s: f64,
}

#[derive(Debug, Clone)]
pub struct EquilibriumReport {
    pub converged: bool,
    pub iterations: u32,
    pub n_uam: usize,
    pub n_ground: usize,
    /// Benefited-trip counts by minimum time saving; non-increasing in the
    /// threshold by construction.
    pub threshold_curve: Vec<ThresholdPoint>,
    /// The curve point at the configured headline threshold.
    pub headline: ThresholdPoint,
    pub median_driving_among_uam_s: f64,
    /// Aggregate `t_driving − realized` over air trips, seconds.
    pub uam_benefit_s: f64,
    /// Aggregate `t_driving − realized` over ground trips, seconds.
    pub ground_benefit_s: f64,
    pub log: Vec<IterationRow>,
}

/// Everything a finished run hands to reporting and fleet sizing.
pub struct EquilibriumOutcome {
    pub report: EquilibriumReport,
    pub state: EquilibriumState,
    pub plans: Vec<ModePlan>,
    /// Final itineraries of the air trips, sorted by trip id.
    pub itineraries: Vec<UamItinerary>,
    pub departures: Vec<DepartureRecord>,
    /// Ground congestion of the final allocation.
    pub field: TravelTimeField,
    pub baseline: TravelTimeField,
}

pub fn run_to_equilibrium(scenario: &Scenario) -> Result<EquilibriumOutcome, FlightError> {
    let config = &scenario.config;
    let profile = FlightProfile::from_config(&config.flight_profile, config.paper_compat_d1)?;
    let trips = &scenario.demand;
    let rounds = config.assignment_iterations;

    let baseline = if config.baseline_free_flow {
        ground::free_flow_times(&scenario.network, trips)
    } else {
        ground::baseline_driving_times(&scenario.network, trips, rounds)
    };
    let mut state = initialize(scenario, &baseline, &profile);
    let mut field = baseline.clone();
    let mut log = Vec::new();
    let mut converged = trips.is_empty();
    let pair_distance_mi = dispatch::pair_distances(scenario);
    let mut itineraries: Vec<UamItinerary>;
    let mut departures: Vec<DepartureRecord>;

    while !converged && state.iteration < config.iteration_cap {
        state.iteration += 1;

        // Air times for the current air set, holds included.
        let uam_idx = state.uam_indices();
        let uam_refs: Vec<&ODTrip> = uam_idx.iter().map(|&i| &trips[i]).collect();
        let (results, _) = dispatch::plan_uam(&uam_refs, scenario, &field, &profile);
        for (&i, result) in uam_idx.iter().zip(&results) {
            state.times[i].t_uam = match result {
                Ok(itin) => itin.total_s,
                Err(_) => f64::INFINITY,
            };
        }

        let demoted = demote(&mut state);

        // Ground times for the post-demotion ground set.
        let ground_trips: Vec<ODTrip> = state
            .ground_indices()
            .iter()
            .map(|&i| trips[i].clone())
            .collect();
        field = ground::assign(&scenario.network, &ground_trips, rounds);
        for i in state.ground_indices() {
            state.times[i].t_ground = field
                .time(&trips[i].id)
                .map(|t| t.seconds_or_inf())
                .unwrap_or(f64::INFINITY);
        }

        // Hold-free air estimates, needed once promotion starts checking
        // the benefit condition.
        let estimates: Vec<Option<f64>> = if state.iteration >= config.promotion_index_threshold {
            let mut anchor_times =
                AnchorTimes::new(&scenario.network, &scenario.airports, &field);
            trips
                .iter()
                .enumerate()
                .map(|(i, trip)| {
                    if state.uam[i] {
                        return None;
                    }
                    dispatch::estimate_uam(
                        trip,
                        scenario,
                        &mut anchor_times,
                        &pair_distance_mi,
                        &profile,
                    )
                    .ok()
                    .map(|e| e.total_s())
                })
                .collect()
        } else {
            vec![None; trips.len()]
        };
        let mut rng;
        let rule = PromotionRule {
            beta: config.beta_promotion,
            index_threshold: config.promotion_index_threshold,
            slack_s: config.eligibility_slack_s,
            estimates: &estimates,
            rng: if config.promotion_random {
                rng = ChaCha8Rng::seed_from_u64(
                    config.random_seed.wrapping_add(state.iteration as u64),
                );
                Some(&mut rng)
            } else {
                None
            },
        };
        let promoted = promote(&mut state, trips, rule);

        state.switched_this_iter = demoted + promoted;
        log.push(IterationRow {
            iter: state.iteration,
            n_uam: state.n_uam(),
            n_ground: state.n_ground(),
            switched: state.switched_this_iter,
            median_uam_saving_s: median_saving(&state),
        });
        if (state.switched_this_iter as f64) < config.convergence_tolerance * trips.len() as f64 {
            converged = true;
            break;
        }
    }

    // Closing sweep: re-simulate the final air set and demote until the
    // allocation is a fixed point of the demotion rule.
    loop {
        let uam_idx = state.uam_indices();
        let uam_refs: Vec<&ODTrip> = uam_idx.iter().map(|&i| &trips[i]).collect();
        let (results, records) = dispatch::plan_uam(&uam_refs, scenario, &field, &profile);
        for (&i, result) in uam_idx.iter().zip(&results) {
            state.times[i].t_uam = match result {
                Ok(itin) => itin.total_s,
                Err(_) => f64::INFINITY,
            };
        }
        itineraries = results.into_iter().flatten().collect();
        departures = records;
        if demote(&mut state) == 0 {
            break;
        }
    }
    let ground_trips: Vec<ODTrip> = state
        .ground_indices()
        .iter()
        .map(|&i| trips[i].clone())
        .collect();
    field = ground::assign(&scenario.network, &ground_trips, rounds);
    for i in state.ground_indices() {
        state.times[i].t_ground = field
            .time(&trips[i].id)
            .map(|t| t.seconds_or_inf())
            .unwrap_or(f64::INFINITY);
    }

    let plans = build_plans(scenario, &state, &itineraries);
    let report = build_report(scenario, &state, converged, log);
    Ok(EquilibriumOutcome {
        report,
        state,
        plans,
        itineraries,
        departures,
        field,
        baseline,
    })
}

fn median_saving(state: &EquilibriumState) -> f64 {
    let savings: Vec<f64> = state
        .times
        .iter()
        .zip(&state.uam)
        .filter(|(t, &u)| u && t.t_uam.is_finite() && t.t_driving.is_finite())
        .map(|(t, _)| t.t_driving - t.t_uam)
        .collect();
    median(savings)
}

fn median(mut values: Vec<f64>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

fn build_plans(
    scenario: &Scenario,
    state: &EquilibriumState,
    itineraries: &[UamItinerary],
) -> Vec<ModePlan> {
    scenario
        .demand
        .iter()
        .enumerate()
        .map(|(i, trip)| {
            if state.uam[i] {
                let itin = itineraries
                    .iter()
                    .find(|it| it.trip == trip.id)
                    .expect("air trips keep their final itinerary");
                ModePlan {
                    trip: trip.id.clone(),
                    mode: Mode::Uam,
                    door_to_door_s: state.times[i].t_uam,
                    baseline_driving_s: state.times[i].t_driving,
                    uam: Some(UamLeg {
                        origin_airport: scenario.airports[itin.origin_airport].id.clone(),
                        destination_airport: scenario.airports[itin.destination_airport]
                            .id
                            .clone(),
                        hold_s: itin.hold_s,
                    }),
                }
            } else {
                ModePlan {
                    trip: trip.id.clone(),
                    mode: Mode::Ground,
                    door_to_door_s: state.times[i].t_ground,
                    baseline_driving_s: state.times[i].t_driving,
                    uam: None,
                }
            }
        })
        .collect()
}

fn build_report(
    scenario: &Scenario,
    state: &EquilibriumState,
    converged: bool,
    log: Vec<IterationRow>,
) -> EquilibriumReport {
    let curve = threshold_curve(state, &scenario.config.threshold_grid_s);
    let headline = threshold_curve(state, &[scenario.config.time_saving_threshold]).remove(0);
    let driving_among_uam: Vec<f64> = state
        .times
        .iter()
        .zip(&state.uam)
        .filter(|(t, &u)| u && t.t_driving.is_finite())
        .map(|(t, _)| t.t_driving)
        .collect();
    let mut uam_benefit_s = 0.0;
    let mut ground_benefit_s = 0.0;
    for (t, &u) in state.times.iter().zip(&state.uam) {
        if u {
            if t.t_uam.is_finite() && t.t_driving.is_finite() {
                uam_benefit_s += t.t_driving - t.t_uam;
            }
        } else if t.t_ground.is_finite() && t.t_driving.is_finite() {
            ground_benefit_s += t.t_driving - t.t_ground;
        }
    }
    EquilibriumReport {
        converged,
        iterations: state.iteration,
        n_uam: state.n_uam(),
        n_ground: state.n_ground(),
        threshold_curve: curve,
        headline,
        median_driving_among_uam_s: median(driving_among_uam),
        uam_benefit_s,
        ground_benefit_s,
        log,
    }
}

/// Benefited-trip counts and median driving times at each saving
/// threshold.
pub fn threshold_curve(state: &EquilibriumState, grid_s: &[u32]) -> Vec<ThresholdPoint> {
    grid_s
        .iter()
        .map(|&threshold_s| {
            let driving: Vec<f64> = state
                .times
                .iter()
                .zip(&state.uam)
                .filter(|(t, &u)| {
                    u && t.t_uam.is_finite()
                        && t.t_driving.is_finite()
                        && t.t_driving - t.t_uam >= threshold_s as f64
                })
                .map(|(t, _)| t.t_driving)
                .collect();
            ThresholdPoint {
                threshold_s,
                n_benefited: driving.len(),
                median_driving_s: median(driving),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{generate_synthetic_scenario, ScenarioConfig, TripId};

    fn times(t_uam: f64, t_ground: f64, t_driving: f64) -> TripTimes {
        TripTimes {
            t_uam,
            t_ground,
            t_driving,
        }
    }

    fn dummy_trips(n: usize) -> Vec<ODTrip> {
        (0..n)
            .map(|i| ODTrip {
                id: TripId(format!("t{i}")),
                origin: crate::scenario::NodeId(0),
                destination: crate::scenario::NodeId(1),
                departure_s: 28_800,
                party_size: 1,
            })
            .collect()
    }

    #[test]
    fn demote_strict_inequality() {
        let mut state = EquilibriumState {
            iteration: 1,
            uam: vec![true, true, true],
            times: vec![
                times(1000.0, 0.0, 1000.0), // equal: stays
                times(1001.0, 0.0, 1000.0), // one second over: demoted
                times(900.0, 0.0, 1000.0),  // beneficial: stays
            ],
            switched_this_iter: 0,
        };
        assert_eq!(demote(&mut state), 1);
        assert_eq!(state.uam, vec![true, false, true]);
    }

    #[test]
    fn demote_is_idempotent_at_fixed_point() {
        let mut state = EquilibriumState {
            iteration: 1,
            uam: vec![true, true],
            times: vec![times(500.0, 0.0, 1000.0), times(999.0, 0.0, 1000.0)],
            switched_this_iter: 0,
        };
        assert_eq!(demote(&mut state), 0);
        assert_eq!(state.uam, vec![true, true]);
    }

    #[test]
    fn promote_full_fraction_takes_everyone() {
        let trips = dummy_trips(3);
        let mut state = EquilibriumState {
            iteration: 0,
            uam: vec![false, false, false],
            times: vec![
                times(f64::INFINITY, 2000.0, 1000.0),
                times(f64::INFINITY, 1500.0, 1000.0),
                times(f64::INFINITY, 1000.0, 1000.0), // not eligible: no gap
            ],
            switched_this_iter: 0,
        };
        let estimates = vec![None; 3];
        let promoted = promote(
            &mut state,
            &trips,
            PromotionRule {
                beta: 1.0,
                index_threshold: 5,
                slack_s: 60.0,
                estimates: &estimates,
                rng: None,
            },
        );
        assert_eq!(promoted, 2);
        assert_eq!(state.uam, vec![true, true, false]);
    }

    #[test]
    fn promote_half_takes_largest_gaps() {
        let trips = dummy_trips(4);
        let mut state = EquilibriumState {
            iteration: 0,
            uam: vec![false; 4],
            times: vec![
                times(f64::INFINITY, 1200.0, 1000.0),
                times(f64::INFINITY, 2000.0, 1000.0),
                times(f64::INFINITY, 1500.0, 1000.0),
                times(f64::INFINITY, 1800.0, 1000.0),
            ],
            switched_this_iter: 0,
        };
        let estimates = vec![None; 4];
        let promoted = promote(
            &mut state,
            &trips,
            PromotionRule {
                beta: 0.5,
                index_threshold: 5,
                slack_s: 60.0,
                estimates: &estimates,
                rng: None,
            },
        );
        // Gaps are 200/1000/500/800: the two largest are trips 1 and 3.
        assert_eq!(promoted, 2);
        assert_eq!(state.uam, vec![false, true, false, true]);
    }

    #[test]
    fn promote_with_no_eligible_is_a_noop() {
        let trips = dummy_trips(2);
        let mut state = EquilibriumState {
            iteration: 0,
            uam: vec![false, false],
            times: vec![
                times(f64::INFINITY, 1000.0, 1000.0),
                times(f64::INFINITY, 1030.0, 1000.0), // inside the slack
            ],
            switched_this_iter: 0,
        };
        let estimates = vec![None; 2];
        let promoted = promote(
            &mut state,
            &trips,
            PromotionRule {
                beta: 1.0,
                index_threshold: 5,
                slack_s: 60.0,
                estimates: &estimates,
                rng: None,
            },
        );
        assert_eq!(promoted, 0);
    }

    #[test]
    fn post_threshold_requires_air_benefit() {
        let trips = dummy_trips(2);
        let mut state = EquilibriumState {
            iteration: 7,
            uam: vec![false, false],
            times: vec![
                times(f64::INFINITY, 2000.0, 1000.0),
                times(f64::INFINITY, 2000.0, 1000.0),
            ],
            switched_this_iter: 0,
        };
        // Trip 0's estimate beats its ground time; trip 1's does not.
        let estimates = vec![Some(1500.0), Some(2500.0)];
        let promoted = promote(
            &mut state,
            &trips,
            PromotionRule {
                beta: 1.0,
                index_threshold: 3,
                slack_s: 60.0,
                estimates: &estimates,
                rng: None,
            },
        );
        assert_eq!(promoted, 1);
        assert_eq!(state.uam, vec![true, false]);
    }

    #[test]
    fn random_promotion_is_seeded_and_respects_the_quota() {
        let trips = dummy_trips(10);
        let build = || EquilibriumState {
            iteration: 0,
            uam: vec![false; 10],
            times: (0..10)
                .map(|i| times(f64::INFINITY, 1500.0 + i as f64, 1000.0))
                .collect(),
            switched_this_iter: 0,
        };
        let estimates = vec![None; 10];
        let run = |seed: u64| {
            let mut state = build();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let promoted = promote(
                &mut state,
                &trips,
                PromotionRule {
                    beta: 0.3,
                    index_threshold: 5,
                    slack_s: 60.0,
                    estimates: &estimates,
                    rng: Some(&mut rng),
                },
            );
            (promoted, state.uam)
        };
        let (promoted, picks) = run(99);
        assert_eq!(promoted, 3); // ceil(0.3 × 10)
        assert_eq!(run(99), (promoted, picks.clone()));
        // A different seed is allowed to pick differently, but the same
        // number of trips.
        assert_eq!(run(100).0, 3);
    }

    #[test]
    fn partition_survives_demote_and_promote() {
        let trips = dummy_trips(6);
        let mut state = EquilibriumState {
            iteration: 1,
            uam: vec![true, false, true, false, true, false],
            times: (0..6)
                .map(|i| times(900.0 + 50.0 * i as f64, 1300.0, 1000.0))
                .collect(),
            switched_this_iter: 0,
        };
        demote(&mut state);
        let estimates = vec![Some(900.0); 6];
        promote(
            &mut state,
            &trips,
            PromotionRule {
                beta: 0.5,
                index_threshold: 0,
                slack_s: 60.0,
                estimates: &estimates,
                rng: None,
            },
        );
        // Structural partition: each trip has exactly one mode.
        assert_eq!(state.uam.len(), 6);
    }

    #[test]
    fn tolerance_of_one_terminates_after_one_iteration() {
        let mut scenario = generate_synthetic_scenario(5, 25, 2, 40).unwrap();
        scenario.config.convergence_tolerance = 1.0;
        let outcome = run_to_equilibrium(&scenario).unwrap();
        assert!(outcome.report.converged);
        assert_eq!(outcome.report.iterations, 1);
    }

    #[test]
    fn equilibrium_fixed_point_and_determinism() {
        let scenario = generate_synthetic_scenario(42, 25, 2, 60).unwrap();
        let a = run_to_equilibrium(&scenario).unwrap();
        let b = run_to_equilibrium(&scenario).unwrap();
        assert!(a.report.converged);
        for (t, &u) in a.state.times.iter().zip(&a.state.uam) {
            if u {
                assert!(t.t_uam <= t.t_driving, "air trip slower than baseline");
            }
        }
        assert_eq!(a.state.uam, b.state.uam);
        assert_eq!(a.report.log, b.report.log);
        // Curve is non-increasing in the threshold.
        for pair in a.report.threshold_curve.windows(2) {
            assert!(pair[1].n_benefited <= pair[0].n_benefited);
        }
    }

    #[test]
    fn empty_demand_is_trivially_converged() {
        let scenario = generate_synthetic_scenario(5, 25, 2, 1).unwrap();
        let mut empty = scenario.clone();
        empty.demand.clear();
        let outcome = run_to_equilibrium(&empty).unwrap();
        assert!(outcome.report.converged);
        assert_eq!(outcome.report.n_uam, 0);
        assert_eq!(outcome.report.n_ground, 0);
    }

    #[test]
    fn config_default_threshold_grid_is_sorted() {
        let grid = ScenarioConfig::default().threshold_grid_s;
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    // -- initialization over a hand-built corridor --

    use crate::flight::FlightProfile;
    use crate::scenario::{
        Airport, AirportId, AircraftType, CoordMode, GroundNetwork, Link, Node, NodeId, Runway,
    };

    /// Line of `n` nodes 20 km apart with airports at the given nodes;
    /// `into_anchors` controls whether anchors are reachable by road.
    fn corridor(n: u32, airport_nodes: &[u32], into_anchors: bool, trips: Vec<ODTrip>) -> Scenario {
        let nodes = (0..n)
            .map(|i| Node {
                label: format!("n{i}"),
                x: i as f64 * 20_000.0,
                y: 0.0,
            })
            .collect();
        let mut links = Vec::new();
        for i in 0..n - 1 {
            for (a, b) in [(i, i + 1), (i + 1, i)] {
                if !into_anchors && airport_nodes.contains(&b) {
                    continue;
                }
                links.push(Link {
                    from: NodeId(a),
                    to: NodeId(b),
                    length_m: 20_000.0,
                    free_flow_mps: 20.0,
                    capacity_vph: 600.0,
                    alpha: 0.15,
                    beta: 4.0,
                });
            }
        }
        let airports = airport_nodes
            .iter()
            .enumerate()
            .map(|(k, &node)| Airport {
                id: AirportId(format!("A{k}")),
                anchor: NodeId(node),
                runways: vec![Runway {
                    length_ft: 5000.0,
                    width_ft: 100.0,
                }],
                separation_s: 180.0,
                landside_occupancy: 1.67,
                landside_cap_vph: 1000.0,
                hold_capacity: None,
            })
            .collect();
        let aircraft = vec![AircraftType {
            name: "lift9".into(),
            seats: 9,
            range_mi: 1000.0,
            min_runway_ft: 2000.0,
            charging_s: 0.0,
            runway_occupancy_s: 45.0,
        }];
        Scenario::assemble(
            GroundNetwork::new(CoordMode::PlanarMeters, nodes, links),
            airports,
            aircraft,
            trips,
            ScenarioConfig::default(),
        )
        .unwrap()
    }

    fn corridor_trip(id: &str, from: u32, to: u32) -> ODTrip {
        ODTrip {
            id: TripId(id.into()),
            origin: NodeId(from),
            destination: NodeId(to),
            departure_s: 28_800,
            party_size: 2,
        }
    }

    #[test]
    fn initialize_splits_on_the_first_pass_estimate() {
        // End-to-end trip: 60 km drive (3000 s) vs a ~1100 s flight with
        // zero access. Middle trip: 20 km drive (1000 s) vs flying with
        // 1000 s access and 1000 s egress on top.
        let scenario = corridor(
            4,
            &[0, 3],
            true,
            vec![corridor_trip("far", 0, 3), corridor_trip("near", 1, 2)],
        );
        let baseline =
            crate::ground::baseline_driving_times(&scenario.network, &scenario.demand, 4);
        let profile = FlightProfile::published();
        let state = initialize(&scenario, &baseline, &profile);
        assert_eq!(state.uam, vec![true, false]);
    }

    #[test]
    fn initialize_empty_when_flying_never_pays() {
        // Both airports sit at one end; every trip runs along the far end.
        let scenario = corridor(
            8,
            &[0, 1],
            true,
            vec![corridor_trip("a", 5, 7), corridor_trip("b", 6, 4)],
        );
        let baseline =
            crate::ground::baseline_driving_times(&scenario.network, &scenario.demand, 4);
        let profile = FlightProfile::published();
        let state = initialize(&scenario, &baseline, &profile);
        assert_eq!(state.n_uam(), 0);
    }

    #[test]
    fn unreachable_airports_leave_everything_on_the_ground() {
        // Anchors can be exited but not reached: no usable air mode.
        let scenario = corridor(
            4,
            &[0, 3],
            false,
            vec![corridor_trip("a", 1, 2), corridor_trip("b", 2, 1)],
        );
        let outcome = run_to_equilibrium(&scenario).unwrap();
        assert!(outcome.report.converged);
        assert_eq!(outcome.report.n_uam, 0);
        assert!(outcome.report.threshold_curve.iter().all(|p| p.n_benefited == 0));
        assert!(outcome.itineraries.is_empty());
    }
}

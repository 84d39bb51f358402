//! Co-simulation of regional air mobility and ground transportation.
//!
//! The crate models a metropolitan region where travelers choose between
//! driving and short-hop flights out of existing regional airports. It is
//! organized as a pipeline of independent stages:
//!
//! * [`scenario`] — domain types, CSV/TOML ingestion, and a seeded
//!   synthetic scenario generator.
//! * [`ground`] — congestion-aware ground travel times via iterative
//!   volume-delay assignment with successive averaging.
//! * [`flight`] — the five-phase flight profile, runway-to-runway travel
//!   time, runway separation intervals, and airport capacity estimates.
//! * [`dispatch`] — airport-pair selection and a discrete-event departure
//!   simulator that enforces runway separation and ground-hold capacity.
//! * [`equilibrium`] — the iterative demotion/promotion loop that splits
//!   demand between air and ground until the mode allocation stabilizes.
//! * [`fleet`] — flight-task generation with aircraft-type assignment and
//!   minimum fleet sizing via min-cost flow on a time-expanded graph.
//! * [`pipeline`] — end-to-end orchestration, CSV report emission, and the
//!   run manifest backing the `uamsim` command-line tool.
//!
//! Every stage is deterministic for a fixed scenario and seed; reports are
//! emitted as plain CSV so they can be plotted or diffed externally.

pub mod dispatch;
pub mod equilibrium;
pub mod fleet;
pub mod flight;
pub mod ground;
pub mod pipeline;
pub mod scenario;

pub use scenario::{Scenario, ScenarioConfig, ScenarioError};

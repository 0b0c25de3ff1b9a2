//! Grid-world path-planning benchmark toolkit.
//!
//! The crate covers the full benchmark life cycle:
//!
//! * [`world`] — coordinates, actions, and deterministic plan simulation;
//! * [`envgen`] — seeded environment/placement generation and dataset splits;
//! * [`planner`] — A* shortest paths and exact precedence-constrained visit
//!   ordering used to compute gold plans;
//! * [`verbalize`] — natural-language rendering of task instances (and the
//!   companion parser);
//! * [`metrics`] — per-instance scoring and corpus-level aggregation;
//! * [`episode`] — the interactive feedback loop with local observations and
//!   a bounded trial budget;
//! * [`prompts`] / [`agents`] / [`client`] — prompt construction, baseline
//!   agents, and a generic chat-completion HTTP client;
//! * [`dataset`] / [`config`] / [`pipeline`] — JSONL persistence, run
//!   configuration, and the end-to-end generation/evaluation pipeline.

pub mod agents;
pub mod client;
pub mod config;
pub mod dataset;
pub mod envgen;
pub mod episode;
pub mod metrics;
pub mod pipeline;
pub mod planner;
pub mod prompts;
pub mod rng;
pub mod verbalize;
pub mod world;

pub use envgen::{GenConfig, OrderingConstraint, Setting, Split, TaskInstance};
pub use metrics::{InstanceResult, MetricsReport};
pub use planner::{Gold, Plan};
pub use world::{Action, Coordinate, EgoAction, Environment, ExecutionTrace, Prediction};

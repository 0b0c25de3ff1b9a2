//! Seeded generation of environments, placements, ordering constraints,
//! and dataset splits.
//!
//! Everything is a pure function of the configuration: each environment
//! and placement draws from its own RNG stream derived from
//! `(master_seed, stable id)`, so results do not depend on generation
//! order or worker count.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planner::reachable_set;
use crate::rng::derive_rng;
use crate::world::{Coordinate, Environment};

/// Fraction of in-distribution environments reserved for development
/// (train/dev/unseen-placement); the rest are held out entirely.
pub const DEFAULT_ENV_DEV_FRACTION: f64 = 0.8;

/// Train/dev/test fractions for per-environment placement splits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
}

impl SplitRatios {
    pub const PAPER_DEFAULT: SplitRatios = SplitRatios {
        train: 0.8,
        dev: 0.1,
        test: 0.1,
    };

    pub fn is_valid(&self) -> bool {
        let sum = self.train + self.dev + self.test;
        (sum - 1.0).abs() < 1e-9 && self.train >= 0.0 && self.dev >= 0.0 && self.test >= 0.0
    }
}

/// Generation parameters for one environment family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenConfig {
    pub grid_size: usize,
    /// Inclusive obstacle-count range.
    pub obstacle_count_range: (usize, usize),
    /// Requested environments per obstacle count. Buckets are capped at
    /// the number of distinct obstacle sets that exist.
    pub envs_per_obstacle_count: std::collections::BTreeMap<usize, usize>,
    pub placements_single: usize,
    pub placements_multi_per_goal_count: usize,
    /// Inclusive goal-count range for multi-goal placements.
    pub goal_count_range: (usize, usize),
    pub split_ratios: SplitRatios,
    pub master_seed: u64,
    /// Fraction of environments used for development splits.
    #[serde(default = "default_env_dev_fraction")]
    pub env_dev_fraction: f64,
}

fn default_env_dev_fraction() -> f64 {
    DEFAULT_ENV_DEV_FRACTION
}

/// Generation failures.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{count} obstacles cannot fit a {n}x{n} grid")]
    InfeasibleObstacleCount { count: usize, n: usize },
    #[error("placement needs {needed} free cells but the environment has {available}")]
    InsufficientFreeCells { needed: usize, available: usize },
    #[error("ordering constraints need at least 2 goals, got {0}")]
    GoalCountTooSmall(usize),
    #[error("invalid generation config: {0}")]
    InvalidConfig(String),
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.grid_size < 2 {
            return Err(GenError::InvalidConfig(format!(
                "grid_size must be at least 2, got {}",
                self.grid_size
            )));
        }
        if !self.split_ratios.is_valid() {
            return Err(GenError::InvalidConfig(
                "split ratios must be non-negative and sum to 1.0".into(),
            ));
        }
        let (lo, hi) = self.obstacle_count_range;
        if lo == 0 || lo > hi {
            return Err(GenError::InvalidConfig(format!(
                "obstacle count range [{lo},{hi}] is empty or starts at zero"
            )));
        }
        if hi >= self.grid_size * self.grid_size {
            return Err(GenError::InfeasibleObstacleCount {
                count: hi,
                n: self.grid_size,
            });
        }
        let (glo, ghi) = self.goal_count_range;
        if glo < 2 || glo > ghi || ghi > 6 {
            return Err(GenError::InvalidConfig(format!(
                "goal count range [{glo},{ghi}] must lie within [2,6]"
            )));
        }
        if self.placements_single == 0 || self.placements_multi_per_goal_count == 0 {
            return Err(GenError::InvalidConfig("placement counts must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.env_dev_fraction) {
            return Err(GenError::InvalidConfig(
                "env_dev_fraction must lie in [0,1]".into(),
            ));
        }
        Ok(())
    }
}

/// Which goals must be inspected before which.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingConstraint {
    pub before: BTreeSet<usize>,
    pub after: BTreeSet<usize>,
}

/// Constraint construction error.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("before and after sets must both be nonempty")]
    EmptySide,
    #[error("goal index {0} appears on both sides")]
    Overlap(usize),
    #[error("before and after must partition 0..{expected}, missing index {missing}")]
    NotAPartition { expected: usize, missing: usize },
}

impl OrderingConstraint {
    /// Build a constraint; `before` and `after` must be disjoint, nonempty,
    /// and together cover exactly `0..(|before| + |after|)`.
    pub fn new(before: BTreeSet<usize>, after: BTreeSet<usize>) -> Result<Self, ConstraintError> {
        if before.is_empty() || after.is_empty() {
            return Err(ConstraintError::EmptySide);
        }
        if let Some(&i) = before.intersection(&after).next() {
            return Err(ConstraintError::Overlap(i));
        }
        let expected = before.len() + after.len();
        for i in 0..expected {
            if !before.contains(&i) && !after.contains(&i) {
                return Err(ConstraintError::NotAPartition { expected, missing: i });
            }
        }
        Ok(OrderingConstraint { before, after })
    }

    pub fn goal_count(&self) -> usize {
        self.before.len() + self.after.len()
    }

    /// True when `order` (a visit order over goal indices) satisfies the
    /// constraint: every before-goal precedes every after-goal.
    pub fn is_satisfied_by(&self, order: &[usize]) -> bool {
        let mut seen_before = 0usize;
        for &g in order {
            if self.before.contains(&g) {
                seen_before += 1;
            } else if self.after.contains(&g) && seen_before < self.before.len() {
                return false;
            }
        }
        true
    }
}

/// Task setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Setting {
    Single,
    MultiUnconstrained,
    MultiConstrained,
}

/// Dataset split label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Dev,
    TestUnseenPlacement,
    TestUnseenEnvironment,
    #[serde(rename = "ood_5x5")]
    Ood5x5,
    #[serde(rename = "ood_7x7")]
    Ood7x7,
    OodObstacles,
}

impl Split {
    pub fn as_str(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::TestUnseenPlacement => "test_unseen_placement",
            Split::TestUnseenEnvironment => "test_unseen_environment",
            Split::Ood5x5 => "ood_5x5",
            Split::Ood7x7 => "ood_7x7",
            Split::OodObstacles => "ood_obstacles",
        }
    }

    pub fn parse(s: &str) -> Option<Split> {
        Some(match s {
            "train" => Split::Train,
            "dev" => Split::Dev,
            "test_unseen_placement" => Split::TestUnseenPlacement,
            "test_unseen_environment" => Split::TestUnseenEnvironment,
            "ood_5x5" => Split::Ood5x5,
            "ood_7x7" => Split::Ood7x7,
            "ood_obstacles" => Split::OodObstacles,
            _ => return None,
        })
    }
}

/// One benchmark query.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskInstance {
    pub id: String,
    /// Environment this instance was drawn in; used for split assignment
    /// and breakdowns.
    pub env_id: String,
    /// Placement index within the environment (and goal count, for multi).
    pub placement: usize,
    pub env: Environment,
    pub start: Coordinate,
    pub goals: Vec<Coordinate>,
    pub constraint: Option<OrderingConstraint>,
    pub setting: Setting,
    pub split: Split,
    pub reachable: bool,
}

/// Instance invariant violation, reported with the offending field.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("{field} {cell} is not a free in-bounds cell")]
    CellNotFree { field: &'static str, cell: Coordinate },
    #[error("start and goals must be pairwise distinct, {cell} repeats")]
    DuplicateCell { cell: Coordinate },
    #[error("setting {setting:?} is inconsistent with {goals} goal(s)")]
    GoalCountMismatch { setting: Setting, goals: usize },
    #[error("constraint covers {constraint} goals but the instance has {goals}")]
    ConstraintArity { constraint: usize, goals: usize },
    #[error("constrained setting requires a constraint (and vice versa)")]
    ConstraintPresence,
}

impl TaskInstance {
    pub fn is_multi_goal(&self) -> bool {
        !matches!(self.setting, Setting::Single)
    }

    /// Check the type invariants (bounds, distinctness, arity).
    pub fn validate(&self) -> Result<(), InstanceError> {
        if !self.env.is_free(self.start) {
            return Err(InstanceError::CellNotFree {
                field: "start",
                cell: self.start,
            });
        }
        let mut seen = BTreeSet::new();
        seen.insert(self.start);
        for &g in &self.goals {
            if !self.env.is_free(g) {
                return Err(InstanceError::CellNotFree {
                    field: "goal",
                    cell: g,
                });
            }
            if !seen.insert(g) {
                return Err(InstanceError::DuplicateCell { cell: g });
            }
        }
        let l = self.goals.len();
        let arity_ok = match self.setting {
            Setting::Single => l == 1,
            Setting::MultiUnconstrained | Setting::MultiConstrained => (2..=6).contains(&l),
        };
        if !arity_ok {
            return Err(InstanceError::GoalCountMismatch {
                setting: self.setting,
                goals: l,
            });
        }
        match (&self.setting, &self.constraint) {
            (Setting::MultiConstrained, Some(c)) => {
                if c.goal_count() != l {
                    return Err(InstanceError::ConstraintArity {
                        constraint: c.goal_count(),
                        goals: l,
                    });
                }
            }
            (Setting::MultiConstrained, None) => return Err(InstanceError::ConstraintPresence),
            (_, Some(_)) => return Err(InstanceError::ConstraintPresence),
            (_, None) => {}
        }
        Ok(())
    }
}

/// An environment plus the stable id its placements derive streams from.
#[derive(Clone, Debug)]
pub struct GeneratedEnv {
    pub id: String,
    pub env: Environment,
}

/// `n choose k`, saturating; enough to cap bucket sizes.
fn combinations(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    result
}

/// Generate the configured number of distinct environments per obstacle
/// count, obstacles placed uniformly at random without replacement.
/// Disconnected free regions are kept. Deterministic in `master_seed`.
pub fn generate_environments(config: &GenConfig, family: &str) -> Result<Vec<GeneratedEnv>, GenError> {
    config.validate()?;
    let n = config.grid_size;
    let cells = n * n;
    let mut seen: BTreeSet<BTreeSet<Coordinate>> = BTreeSet::new();
    let mut out = Vec::new();
    let (lo, hi) = config.obstacle_count_range;
    for k in lo..=hi {
        if k >= cells {
            return Err(GenError::InfeasibleObstacleCount { count: k, n });
        }
        let requested = config.envs_per_obstacle_count.get(&k).copied().unwrap_or(0);
        let bucket = (requested as u128).min(combinations(cells, k)) as usize;
        for i in 0..bucket {
            let mut attempt = 0usize;
            let obstacles = loop {
                let scope = format!("{family}/env/k{k}/i{i}/t{attempt}");
                let mut rng = derive_rng(config.master_seed, &scope);
                let picked: BTreeSet<Coordinate> = index::sample(&mut rng, cells, k)
                    .into_iter()
                    .map(|idx| Coordinate::new(idx / n, idx % n))
                    .collect();
                if seen.insert(picked.clone()) {
                    break picked;
                }
                attempt += 1;
            };
            let id = format!("{family}-o{k}-e{i:03}");
            out.push(GeneratedEnv {
                id,
                env: Environment::new(n, obstacles).expect("sampled obstacles are in bounds"),
            });
        }
    }
    Ok(out)
}

/// What to place in an environment.
#[derive(Clone, Copy, Debug)]
pub enum PlacementKind {
    Single,
    /// Inclusive goal-count range; each arrangement yields an
    /// unconstrained and a constrained instance.
    Multi { goal_counts: (usize, usize) },
}

/// Draw `count` placements (per goal count, for multi) in `env`.
///
/// Start and goals are drawn uniformly without replacement from the free
/// cells. The `reachable` flag marks whether every goal lies in the
/// start's connected free component; unreachable instances are retained.
pub fn sample_placements(
    generated: &GeneratedEnv,
    kind: PlacementKind,
    count: usize,
    master_seed: u64,
    split: Split,
) -> Result<Vec<TaskInstance>, GenError> {
    let env = &generated.env;
    let env_id = &generated.id;
    let free = env.free_cells();
    let mut out = Vec::new();

    match kind {
        PlacementKind::Single => {
            if free.len() < 2 {
                return Err(GenError::InsufficientFreeCells {
                    needed: 2,
                    available: free.len(),
                });
            }
            for p in 0..count {
                let mut rng = derive_rng(master_seed, &format!("{env_id}/sg/p{p}"));
                let picked = index::sample(&mut rng, free.len(), 2);
                let start = free[picked.index(0)];
                let goal = free[picked.index(1)];
                let reachable = reachable_set(env, start).contains(&goal);
                out.push(TaskInstance {
                    id: format!("{env_id}-sg-p{p:02}"),
                    env_id: env_id.clone(),
                    placement: p,
                    env: env.clone(),
                    start,
                    goals: vec![goal],
                    constraint: None,
                    setting: Setting::Single,
                    split,
                    reachable,
                });
            }
        }
        PlacementKind::Multi { goal_counts: (glo, ghi) } => {
            for l in glo..=ghi {
                if free.len() < l + 1 {
                    return Err(GenError::InsufficientFreeCells {
                        needed: l + 1,
                        available: free.len(),
                    });
                }
                for p in 0..count {
                    let mut rng = derive_rng(master_seed, &format!("{env_id}/mg{l}/p{p}"));
                    let picked = index::sample(&mut rng, free.len(), l + 1);
                    let start = free[picked.index(0)];
                    let goals: Vec<Coordinate> =
                        (1..=l).map(|j| free[picked.index(j)]).collect();
                    let component = reachable_set(env, start);
                    let reachable = goals.iter().all(|g| component.contains(g));
                    let mut constraint_rng =
                        derive_rng(master_seed, &format!("{env_id}/mg{l}/p{p}/constraint"));
                    let constraint = sample_constraint(l, &mut constraint_rng)?;

                    out.push(TaskInstance {
                        id: format!("{env_id}-mg{l}-p{p:02}-u"),
                        env_id: env_id.clone(),
                        placement: p,
                        env: env.clone(),
                        start,
                        goals: goals.clone(),
                        constraint: None,
                        setting: Setting::MultiUnconstrained,
                        split,
                        reachable,
                    });
                    out.push(TaskInstance {
                        id: format!("{env_id}-mg{l}-p{p:02}-c"),
                        env_id: env_id.clone(),
                        placement: p,
                        env: env.clone(),
                        start,
                        goals,
                        constraint: Some(constraint),
                        setting: Setting::MultiConstrained,
                        split,
                        reachable,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Sample a uniform ordering constraint: split size `s` drawn uniformly
/// from `[1, goal_count - 1]`, then a uniform `s`-subset as the before set.
pub fn sample_constraint<R: Rng>(goal_count: usize, rng: &mut R) -> Result<OrderingConstraint, GenError> {
    if goal_count < 2 {
        return Err(GenError::GoalCountTooSmall(goal_count));
    }
    let s = rng.random_range(1..goal_count);
    let before: BTreeSet<usize> = index::sample(rng, goal_count, s).into_iter().collect();
    let after: BTreeSet<usize> = (0..goal_count).filter(|i| !before.contains(i)).collect();
    Ok(OrderingConstraint::new(before, after).expect("sampled sets partition the goal indices"))
}

/// Instances of one environment, the unit the splitter works on.
#[derive(Debug)]
pub struct EnvGroup {
    pub env_id: String,
    pub obstacle_count: usize,
    pub instances: Vec<TaskInstance>,
}

fn assign_slices(count: usize, ratios: &SplitRatios) -> (usize, usize) {
    let train = (count as f64 * ratios.train).floor() as usize;
    let dev = (count as f64 * ratios.dev).floor() as usize;
    (train, dev)
}

/// Assign splits for the in-distribution family.
///
/// Per obstacle-count bucket, `env_dev_fraction` of the environments are
/// development environments whose placements split train/dev/unseen-placement
/// by `ratios`; the rest become the unseen-environment test set wholesale.
/// Multi-goal arrangements move as a unit: the unconstrained and
/// constrained instances of one placement always share a split.
pub fn split_dataset(
    groups: &mut [EnvGroup],
    ratios: &SplitRatios,
    env_dev_fraction: f64,
    master_seed: u64,
) {
    use std::collections::BTreeMap;

    let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (gi, group) in groups.iter().enumerate() {
        buckets.entry(group.obstacle_count).or_default().push(gi);
    }

    for (k, mut bucket) in buckets {
        bucket.sort_by(|&a, &b| groups[a].env_id.cmp(&groups[b].env_id));
        let mut rng = derive_rng(master_seed, &format!("split/env/k{k}"));
        shuffle(&mut bucket, &mut rng);
        let dev_envs = (bucket.len() as f64 * env_dev_fraction).floor() as usize;

        for (pos, &gi) in bucket.iter().enumerate() {
            let group = &mut groups[gi];
            if pos >= dev_envs {
                for inst in &mut group.instances {
                    inst.split = Split::TestUnseenEnvironment;
                }
                continue;
            }
            split_dev_env(group, ratios, master_seed);
        }
    }
}

fn split_dev_env(group: &mut EnvGroup, ratios: &SplitRatios, master_seed: u64) {
    use std::collections::BTreeMap;

    // (scope key, placement) -> instance indices; multi-goal pairs share one key
    let mut units: BTreeMap<(String, usize), Vec<usize>> = BTreeMap::new();
    for (ii, inst) in group.instances.iter().enumerate() {
        let scope = match inst.setting {
            Setting::Single => "sg".to_string(),
            _ => format!("mg{}", inst.goals.len()),
        };
        units.entry((scope, inst.placement)).or_default().push(ii);
    }

    let mut by_scope: BTreeMap<String, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
    for ((scope, placement), members) in units {
        by_scope.entry(scope).or_default().push((placement, members));
    }

    for (scope, mut placements) in by_scope {
        placements.sort_by_key(|(p, _)| *p);
        let mut order: Vec<usize> = (0..placements.len()).collect();
        let mut rng = derive_rng(master_seed, &format!("split/plc/{}/{scope}", group.env_id));
        shuffle(&mut order, &mut rng);
        let (train, dev) = assign_slices(placements.len(), ratios);
        for (rank, &pi) in order.iter().enumerate() {
            let split = if rank < train {
                Split::Train
            } else if rank < train + dev {
                Split::Dev
            } else {
                Split::TestUnseenPlacement
            };
            for &ii in &placements[pi].1 {
                group.instances[ii].split = split;
            }
        }
    }
}

fn shuffle<T, R: Rng>(items: &mut [T], rng: &mut R) {
    use rand::seq::SliceRandom;
    items.shuffle(rng);
}

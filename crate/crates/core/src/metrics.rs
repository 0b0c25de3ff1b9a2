//! Per-instance scoring of predictions and corpus-level aggregation.
//!
//! Reachable instances are scored on the four boolean metrics plus the
//! distance-to-goal; unreachable instances are scored only on whether the
//! prediction declared them unreachable. The boolean chain
//! `exact_match <= optimal <= success <= feasible` holds by construction.

use serde::{Deserialize, Serialize};

use crate::envgen::{Setting, TaskInstance};
use crate::planner::{self, Gold};
use crate::world::{
    ego_plan_text, execute_plan, from_egocentric, plan_text, to_egocentric, Action, Failure,
    Prediction,
};

/// Penalty distance for out-of-grid paths under the legacy distance rule.
pub const LEGACY_OUT_OF_GRID_PENALTY: usize = 100;

/// Why a prediction scored all-false, for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionIssue {
    Unparseable,
    /// Declared unreachable although the instance is reachable.
    UnreachableClaimOnReachable,
}

/// Scores for one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub success: bool,
    pub optimal: bool,
    pub exact_match: bool,
    pub feasible: bool,
    /// Minimal actions still needed to finish the task; populated only
    /// when feasible but unsuccessful and the task can still be finished.
    pub distance: Option<usize>,
    /// Populated only on unreachable instances.
    pub unreachable_correct: Option<bool>,
    pub issue: Option<PredictionIssue>,
}

impl InstanceResult {
    fn all_false() -> Self {
        InstanceResult {
            success: false,
            optimal: false,
            exact_match: false,
            feasible: false,
            distance: None,
            unreachable_correct: None,
            issue: None,
        }
    }

    /// The monotone metric chain.
    pub fn chain_holds(&self) -> bool {
        (!self.exact_match || self.optimal)
            && (!self.optimal || self.success)
            && (!self.success || self.feasible)
    }
}

/// Scoring options.
#[derive(Clone, Copy, Debug, Default)]
pub struct EvalOptions {
    /// Use the legacy distance rule: sum of pairwise distances to the
    /// missed goals and a flat 100 penalty for paths leaving the grid.
    pub legacy_distance: bool,
}

/// Score `prediction` against `instance` and its planner-computed `gold`.
pub fn evaluate_prediction(
    instance: &TaskInstance,
    gold: &Gold,
    prediction: &Prediction,
) -> InstanceResult {
    evaluate_prediction_with(instance, gold, prediction, &EvalOptions::default())
}

pub fn evaluate_prediction_with(
    instance: &TaskInstance,
    gold: &Gold,
    prediction: &Prediction,
    opts: &EvalOptions,
) -> InstanceResult {
    if !instance.reachable {
        let mut result = InstanceResult::all_false();
        result.unreachable_correct =
            Some(matches!(prediction, Prediction::UnreachableDeclared));
        if matches!(prediction, Prediction::Unparseable { .. }) {
            result.issue = Some(PredictionIssue::Unparseable);
        }
        return result;
    }

    let (actions, ego): (Vec<Action>, Option<&[crate::world::EgoAction]>) = match prediction {
        Prediction::Actions { actions } => (actions.clone(), None),
        Prediction::EgoActions { actions } => (from_egocentric(actions), Some(actions)),
        Prediction::UnreachableDeclared => {
            let mut result = InstanceResult::all_false();
            result.issue = Some(PredictionIssue::UnreachableClaimOnReachable);
            return result;
        }
        Prediction::Unparseable { .. } => {
            let mut result = InstanceResult::all_false();
            result.issue = Some(PredictionIssue::Unparseable);
            return result;
        }
    };

    let gold_plan = gold
        .as_plan()
        .expect("reachable instance must carry a gold plan");

    let trace = execute_plan(&instance.env, instance.start, &actions, &instance.goals);
    let feasible = trace.is_feasible();

    // first inspection of each goal, in inspection order
    let mut first_inspections: Vec<usize> = Vec::new();
    for &g in &trace.inspected {
        if !first_inspections.contains(&g) {
            first_inspections.push(g);
        }
    }

    let success = feasible
        && match instance.setting {
            Setting::Single => trace.final_pos == instance.goals[0],
            Setting::MultiUnconstrained | Setting::MultiConstrained => {
                let covered = first_inspections.len() == instance.goals.len();
                let order_ok = instance
                    .constraint
                    .as_ref()
                    .is_none_or(|c| c.is_satisfied_by(&first_inspections));
                covered && order_ok
            }
        };

    let optimal = success && actions.len() == gold_plan.len();
    let exact_match = optimal
        && match ego {
            None => plan_text(&actions) == gold_plan.text(),
            Some(ego_actions) => {
                let gold_ego = to_egocentric(&gold_plan.actions)
                    .expect("single-goal gold plans carry no inspect");
                ego_plan_text(ego_actions) == ego_plan_text(&gold_ego)
            }
        };

    let distance = if opts.legacy_distance {
        legacy_distance(instance, &trace, &first_inspections, feasible, success)
    } else if feasible && !success {
        remaining_actions(instance, trace.final_pos, &first_inspections)
    } else {
        None
    };

    InstanceResult {
        success,
        optimal,
        exact_match,
        feasible,
        distance,
        unreachable_correct: None,
        issue: None,
    }
}

/// Minimal remaining action count (moves plus the outstanding inspects)
/// to finish the task from `from`. `None` when nothing can complete the
/// task anymore (e.g. the constraint was already violated).
fn remaining_actions(
    instance: &TaskInstance,
    from: crate::world::Coordinate,
    inspected: &[usize],
) -> Option<usize> {
    match instance.setting {
        Setting::Single => planner::astar_shortest_path(&instance.env, from, instance.goals[0])
            .map(|p| p.len()),
        Setting::MultiUnconstrained | Setting::MultiConstrained => {
            let outstanding = instance.goals.len() - inspected.len();
            if outstanding == 0 {
                // everything inspected yet unsuccessful: the ordering was
                // violated and the task cannot be completed anymore
                return None;
            }
            if let Some(c) = &instance.constraint {
                // an after-goal inspected ahead of some before-goal is a
                // violation no suffix can repair
                if !c.is_satisfied_by(inspected) {
                    return None;
                }
            }
            planner::remaining_task_cost(
                &instance.env,
                from,
                &instance.goals,
                instance.constraint.as_ref(),
                inspected,
            )
            .map(|moves| moves + outstanding)
        }
    }
}

fn legacy_distance(
    instance: &TaskInstance,
    trace: &crate::world::ExecutionTrace,
    inspected: &[usize],
    feasible: bool,
    success: bool,
) -> Option<usize> {
    if matches!(trace.failure, Some(Failure::OutOfBounds { .. })) {
        return Some(LEGACY_OUT_OF_GRID_PENALTY);
    }
    if !feasible || success {
        return None;
    }
    match instance.setting {
        Setting::Single => {
            planner::astar_shortest_path(&instance.env, trace.final_pos, instance.goals[0])
                .map(|p| p.len())
        }
        Setting::MultiUnconstrained | Setting::MultiConstrained => {
            let mut total = 0usize;
            for (i, &goal) in instance.goals.iter().enumerate() {
                if inspected.contains(&i) {
                    continue;
                }
                total += planner::astar_shortest_path(&instance.env, trace.final_pos, goal)
                    .map(|p| p.len())?;
            }
            Some(total)
        }
    }
}

/// Corpus-level aggregation of the six metrics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub success_rate: f64,
    pub optimal_rate: f64,
    pub exact_match_rate: f64,
    pub feasible_rate: f64,
    pub mean_distance: f64,
    pub unreachable_accuracy: f64,
    /// Reachable instances entering the four rates.
    pub n_scored: usize,
    /// Unreachable instances entering `unreachable_accuracy`.
    pub n_unreachable: usize,
}

/// Aggregate per-instance results. Rates run over reachable instances
/// only; `mean_distance` over populated distances; unreachable accuracy
/// over unreachable instances.
pub fn aggregate(results: &[InstanceResult]) -> MetricsReport {
    let mut n_scored = 0usize;
    let mut n_unreachable = 0usize;
    let (mut success, mut optimal, mut exact, mut feasible) = (0usize, 0usize, 0usize, 0usize);
    let mut unreachable_hits = 0usize;
    let mut distance_sum = 0usize;
    let mut distance_count = 0usize;

    for r in results {
        match r.unreachable_correct {
            Some(hit) => {
                n_unreachable += 1;
                if hit {
                    unreachable_hits += 1;
                }
            }
            None => {
                n_scored += 1;
                success += r.success as usize;
                optimal += r.optimal as usize;
                exact += r.exact_match as usize;
                feasible += r.feasible as usize;
                if let Some(d) = r.distance {
                    distance_sum += d;
                    distance_count += 1;
                }
            }
        }
    }

    let rate = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    MetricsReport {
        success_rate: rate(success, n_scored),
        optimal_rate: rate(optimal, n_scored),
        exact_match_rate: rate(exact, n_scored),
        feasible_rate: rate(feasible, n_scored),
        mean_distance: rate(distance_sum, distance_count),
        unreachable_accuracy: rate(unreachable_hits, n_unreachable),
        n_scored,
        n_unreachable,
    }
}

impl MetricsReport {
    /// The rate chain mirrored from the per-instance chain.
    pub fn chain_holds(&self) -> bool {
        self.exact_match_rate <= self.optimal_rate + 1e-12
            && self.optimal_rate <= self.success_rate + 1e-12
            && self.success_rate <= self.feasible_rate + 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envgen::{OrderingConstraint, Split};
    use crate::planner::{assemble_multigoal_plan, single_goal_plan};
    use crate::world::{parse_prediction, Coordinate, Environment};

    fn c(r: usize, col: usize) -> Coordinate {
        Coordinate::new(r, col)
    }

    fn instance(
        obstacles: &[(usize, usize)],
        start: (usize, usize),
        goals: &[(usize, usize)],
        constraint: Option<OrderingConstraint>,
    ) -> (TaskInstance, Gold) {
        let env = Environment::new(
            6,
            obstacles.iter().map(|&(r, col)| c(r, col)).collect(),
        )
        .unwrap();
        let start = c(start.0, start.1);
        let goals: Vec<Coordinate> = goals.iter().map(|&(r, col)| c(r, col)).collect();
        let setting = match (goals.len(), &constraint) {
            (1, _) => Setting::Single,
            (_, None) => Setting::MultiUnconstrained,
            (_, Some(_)) => Setting::MultiConstrained,
        };
        let gold = match setting {
            Setting::Single => single_goal_plan(&env, start, goals[0]),
            _ => assemble_multigoal_plan(&env, start, &goals, constraint.as_ref()),
        };
        let reachable = !matches!(gold, Gold::Unreachable);
        let inst = TaskInstance {
            id: "m".into(),
            env_id: "e".into(),
            placement: 0,
            env,
            start,
            goals,
            constraint,
            setting,
            split: Split::Train,
            reachable,
        };
        (inst, gold)
    }

    fn pred(text: &str, multi: bool) -> Prediction {
        parse_prediction(text, multi, false)
    }

    #[test]
    fn gold_scores_perfect_on_its_own_instance() {
        let (inst, gold) = instance(&[(2, 1)], (0, 1), &[(3, 4)], None);
        let r = evaluate_prediction(&inst, &gold, &pred(&gold.text(), false));
        assert!(r.success && r.optimal && r.exact_match && r.feasible);
        assert_eq!(r.distance, None);
        assert_eq!(r.unreachable_correct, None);
    }

    #[test]
    fn multi_gold_scores_perfect() {
        let constraint = OrderingConstraint::new([1].into(), [0].into()).unwrap();
        let (inst, gold) = instance(&[(2, 1)], (5, 3), &[(2, 5), (2, 2)], Some(constraint));
        let r = evaluate_prediction(&inst, &gold, &pred(&gold.text(), true));
        assert!(r.success && r.optimal && r.exact_match && r.feasible);
    }

    #[test]
    fn short_feasible_path_gets_distance() {
        let (inst, gold) = instance(&[(2, 1)], (0, 1), &[(3, 4)], None);
        let r = evaluate_prediction(&inst, &gold, &pred("right right right down down", false));
        assert!(r.feasible && !r.success);
        assert_eq!(r.distance, Some(1));
    }

    #[test]
    fn unreachable_instance_scores_only_the_declaration() {
        let (inst, gold) = instance(&[(0, 4), (1, 5)], (0, 5), &[(1, 1)], None);
        assert!(!inst.reachable);
        let r = evaluate_prediction(&inst, &gold, &pred("Goal not reachable", false));
        assert_eq!(r.unreachable_correct, Some(true));
        assert!(!r.success && !r.feasible);

        let r = evaluate_prediction(&inst, &gold, &pred("up up", false));
        assert_eq!(r.unreachable_correct, Some(false));
    }

    #[test]
    fn unreachable_claim_on_reachable_scores_all_false() {
        let (inst, gold) = instance(&[], (0, 0), &[(3, 3)], None);
        let r = evaluate_prediction(&inst, &gold, &pred("Goal not reachable", false));
        assert!(!r.success && !r.feasible);
        assert_eq!(r.issue, Some(PredictionIssue::UnreachableClaimOnReachable));
        assert_eq!(r.unreachable_correct, None);
    }

    #[test]
    fn unparseable_scores_all_false() {
        let (inst, gold) = instance(&[], (0, 0), &[(3, 3)], None);
        let r = evaluate_prediction(&inst, &gold, &pred("fly north", false));
        assert!(!r.feasible);
        assert_eq!(r.issue, Some(PredictionIssue::Unparseable));
    }

    #[test]
    fn success_requires_ending_on_the_goal() {
        let (inst, gold) = instance(&[], (0, 0), &[(0, 2)], None);
        // passes through the goal and keeps going
        let r = evaluate_prediction(&inst, &gold, &pred("right right right", false));
        assert!(r.feasible && !r.success);
        assert_eq!(r.distance, Some(1));
    }

    #[test]
    fn multi_success_requires_inspections_in_constraint_order() {
        let constraint = OrderingConstraint::new([1].into(), [0].into()).unwrap();
        let (inst, gold) = instance(&[], (0, 0), &[(0, 1), (0, 3)], Some(constraint));
        // inspects p0 first, violating "p1 before p0"
        let r = evaluate_prediction(
            &inst,
            &gold,
            &pred("right inspect right right inspect", true),
        );
        assert!(r.feasible && !r.success);
        // everything inspected, so no completion exists anymore
        assert_eq!(r.distance, None);
    }

    #[test]
    fn stopping_on_uninspected_goal_needs_one_action() {
        let (inst, gold) = instance(&[], (0, 0), &[(0, 1), (0, 2)], None);
        let r = evaluate_prediction(&inst, &gold, &pred("right inspect right", true));
        assert!(r.feasible && !r.success);
        assert_eq!(r.distance, Some(1));
    }

    #[test]
    fn moving_over_goal_without_inspect_does_not_count() {
        let (inst, gold) = instance(&[], (0, 0), &[(0, 1), (0, 3)], None);
        let r = evaluate_prediction(
            &inst,
            &gold,
            &pred("right right right inspect", true),
        );
        assert!(!r.success);
        // p0 at (0,1) was crossed but never inspected: 2 moves back + inspect
        assert_eq!(r.distance, Some(3));
    }

    #[test]
    fn egocentric_prediction_scores_against_ego_gold() {
        let (inst, gold) = instance(&[], (2, 2), &[(4, 2)], None);
        let ego_gold = to_egocentric(&gold.as_plan().unwrap().actions).unwrap();
        let r = evaluate_prediction(
            &inst,
            &gold,
            &parse_prediction(&ego_plan_text(&ego_gold), false, true),
        );
        assert!(r.success && r.optimal && r.exact_match);
    }

    #[test]
    fn legacy_distance_penalizes_leaving_the_grid() {
        let (inst, gold) = instance(&[], (0, 0), &[(3, 3)], None);
        let opts = EvalOptions { legacy_distance: true };
        let r = evaluate_prediction_with(&inst, &gold, &pred("up", false), &opts);
        assert!(!r.feasible);
        assert_eq!(r.distance, Some(LEGACY_OUT_OF_GRID_PENALTY));
    }

    #[test]
    fn legacy_distance_sums_over_missed_goals() {
        let (inst, gold) = instance(&[], (0, 0), &[(0, 2), (2, 0)], None);
        let opts = EvalOptions { legacy_distance: true };
        let r = evaluate_prediction_with(&inst, &gold, &pred("right", true), &opts);
        assert!(r.feasible && !r.success);
        // from (0,1): 1 to (0,2) plus 3 to (2,0)
        assert_eq!(r.distance, Some(4));
    }

    #[test]
    fn aggregate_all_gold_is_all_ones() {
        let mut results = Vec::new();
        for goals in [&[(3, 4)][..], &[(1, 1)][..]] {
            let (inst, gold) = instance(&[(2, 1)], (0, 1), goals, None);
            results.push(evaluate_prediction(&inst, &gold, &pred(&gold.text(), false)));
        }
        let report = aggregate(&results);
        assert_eq!(report.success_rate, 1.0);
        assert_eq!(report.optimal_rate, 1.0);
        assert_eq!(report.exact_match_rate, 1.0);
        assert_eq!(report.feasible_rate, 1.0);
        assert_eq!(report.n_scored, 2);
    }

    #[test]
    fn aggregate_hand_built_counts() {
        let mk = |success, optimal, exact, feasible, distance| InstanceResult {
            success,
            optimal,
            exact_match: exact,
            feasible,
            distance,
            unreachable_correct: None,
            issue: None,
        };
        let mut results = vec![
            mk(true, true, true, true, None),
            mk(true, true, false, true, None),
            mk(true, false, false, true, None),
            mk(false, false, false, true, Some(2)),
            mk(false, false, false, true, Some(4)),
            mk(false, false, false, false, None),
            mk(false, false, false, false, None),
            mk(false, false, false, false, None),
        ];
        results.push(InstanceResult {
            unreachable_correct: Some(true),
            ..InstanceResult::all_false()
        });
        results.push(InstanceResult {
            unreachable_correct: Some(false),
            ..InstanceResult::all_false()
        });

        let report = aggregate(&results);
        assert_eq!(report.n_scored, 8);
        assert_eq!(report.n_unreachable, 2);
        assert!((report.success_rate - 3.0 / 8.0).abs() < 1e-12);
        assert!((report.optimal_rate - 2.0 / 8.0).abs() < 1e-12);
        assert!((report.exact_match_rate - 1.0 / 8.0).abs() < 1e-12);
        assert!((report.feasible_rate - 5.0 / 8.0).abs() < 1e-12);
        assert!((report.mean_distance - 3.0).abs() < 1e-12);
        assert!((report.unreachable_accuracy - 0.5).abs() < 1e-12);
        assert!(report.chain_holds());
    }

    #[test]
    fn empty_aggregation_is_zeroed() {
        let report = aggregate(&[]);
        assert_eq!(report.n_scored, 0);
        assert_eq!(report.success_rate, 0.0);
        assert!(report.chain_holds());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn metric_chain_always_holds(
                obstacle in 0usize..36,
                start in 0usize..36,
                goal in 0usize..36,
                tokens in proptest::collection::vec(0usize..5, 0..12),
            ) {
                let cells: Vec<(usize, usize)> = vec![obstacle, start, goal]
                    .into_iter()
                    .map(|i| (i / 6, i % 6))
                    .collect();
                prop_assume!(cells[0] != cells[1] && cells[1] != cells[2] && cells[0] != cells[2]);
                let (inst, gold) = instance(&cells[..1], cells[1], &cells[2..3], None);
                let text: Vec<&str> = tokens
                    .iter()
                    .map(|&t| ["up", "down", "left", "right", "inspect"][t])
                    .collect();
                let r = evaluate_prediction(&inst, &gold, &pred(&text.join(" "), false));
                prop_assert!(r.chain_holds());
                if let Some(d) = r.distance {
                    prop_assert!(d > 0);
                }
            }
        }
    }
}

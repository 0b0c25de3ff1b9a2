//! Interactive evaluation episodes.
//!
//! The environment executes the longest safe prefix of each proposal and
//! answers with a local observation: task solved, obstacle one step ahead,
//! or boundary one step ahead. Nothing beyond the current position and the
//! single offending cell is ever revealed. An agent may adjust its plan
//! for a bounded number of trials.
//!
//! Multi-goal episodes run hierarchically: the agent is first asked for a
//! visiting order, then one sub-episode per leg with its own trial budget;
//! an `Inspect` is committed automatically when a leg completes.

use thiserror::Error;

use crate::agents::{Agent, AgentError, DialogueTurn, OrderRequest, PlanRequest};
use crate::envgen::{Setting, TaskInstance};
use crate::metrics::{evaluate_prediction, InstanceResult};
use crate::planner::{Gold, Plan};
use crate::prompts::{
    build_ordering_prompt, build_prompt, extract_react_act, Method, OrderParseError, PromptError,
    PromptSpec,
};
use crate::verbalize::verbalize_task;
use crate::world::{
    apply_action, parse_prediction, plan_text, Action, Coordinate, Environment, Prediction,
    StepOutcome,
};

/// Grid edge named in out-of-bounds observations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Top,
    Bottom,
    Left,
    Right,
}

impl Boundary {
    fn of(action: Action) -> Boundary {
        match action {
            Action::Up => Boundary::Top,
            Action::Down => Boundary::Bottom,
            Action::Left => Boundary::Left,
            Action::Right => Boundary::Right,
            Action::Inspect => unreachable!("inspect never leaves the grid"),
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Boundary::Top => "top",
            Boundary::Bottom => "bottom",
            Boundary::Left => "left",
            Boundary::Right => "right",
        }
    }
}

/// Environment feedback for one proposal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observation {
    /// The executed sequence ends on the goal.
    Solved { final_pos: Coordinate },
    /// The whole proposal executed safely but the goal was not reached.
    Incomplete { final_pos: Coordinate, executed: usize },
    /// The next step would hit an obstacle; emitted one step before
    /// contact, with the agent left on the last safe cell.
    Blocked {
        last_safe: Coordinate,
        executed: usize,
        obstacle: Coordinate,
    },
    /// The next step would leave the grid.
    OutOfBounds {
        last_safe: Coordinate,
        executed: usize,
        boundary: Boundary,
    },
    /// Acknowledges an unreachable declaration; ends the episode.
    UnreachableAck,
}

impl Observation {
    /// The exact feedback string re-fed into agent prompts.
    pub fn message(&self) -> String {
        match self {
            Observation::Solved { final_pos } => format!(
                "Performing the action sequence leads to {final_pos}. The task has been solved."
            ),
            Observation::Incomplete { final_pos, .. } => {
                format!("Performing the action sequence leads to {final_pos}.")
            }
            Observation::Blocked {
                last_safe,
                executed,
                obstacle,
            } => match executed {
                0 => format!("If I execute the first step I will run into the obstacle at {obstacle}."),
                1 => format!(
                    "After executing the first step, I am at {last_safe}. If I execute the next step I will run into the obstacle at {obstacle}."
                ),
                n => format!(
                    "After executing the first {n} steps, I am at {last_safe}. If I execute the next step I will run into the obstacle at {obstacle}."
                ),
            },
            Observation::OutOfBounds {
                last_safe,
                executed,
                boundary,
            } => {
                let side = boundary.as_str();
                match executed {
                    0 => format!(
                        "If I execute the first step I will run into the {side} boundary of the world."
                    ),
                    1 => format!(
                        "After executing the first step, I am at {last_safe}. If I execute the next step I will run into the {side} boundary of the world."
                    ),
                    n => format!(
                        "After executing the first {n} steps, I am at {last_safe}. If I execute the next step I will run into the {side} boundary of the world."
                    ),
                }
            }
            Observation::UnreachableAck => {
                "No action is to be performed. The goal is not reachable. The task has been solved."
                    .to_string()
            }
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, Observation::Solved { .. })
    }
}

/// Execute the longest safe prefix of `proposed` from `current`.
///
/// Returns the observation and the new (safe) position. The offending
/// action of a blocked or out-of-bounds proposal is never executed. A
/// proposal whose safe prefix ends on `goal` counts as solved even when
/// later steps would have failed.
pub fn observe(
    env: &Environment,
    current: Coordinate,
    proposed: &[Action],
    goal: Coordinate,
) -> (Observation, Coordinate) {
    let mut pos = current;
    let mut executed = 0usize;
    for &action in proposed {
        match apply_action(env, pos, action) {
            StepOutcome::Moved(next) => {
                pos = next;
                executed += 1;
            }
            StepOutcome::Inspected => {}
            StepOutcome::HitObstacle(obstacle) => {
                let obs = if pos == goal {
                    Observation::Solved { final_pos: pos }
                } else {
                    Observation::Blocked {
                        last_safe: pos,
                        executed,
                        obstacle,
                    }
                };
                return (obs, pos);
            }
            StepOutcome::OutOfBounds => {
                let obs = if pos == goal {
                    Observation::Solved { final_pos: pos }
                } else {
                    Observation::OutOfBounds {
                        last_safe: pos,
                        executed,
                        boundary: Boundary::of(action),
                    }
                };
                return (obs, pos);
            }
        }
    }
    let obs = if pos == goal {
        Observation::Solved { final_pos: pos }
    } else {
        Observation::Incomplete {
            final_pos: pos,
            executed,
        }
    };
    (obs, pos)
}

/// Outcome of one interactive episode.
#[derive(Clone, Debug)]
pub struct EpisodeResult {
    /// Task completed (or unreachable correctly declared).
    pub success: bool,
    /// Maximum number of proposals any single leg needed.
    pub trials_used: usize,
    /// Union of the executed safe prefixes, inspects included.
    pub concatenated_path: Plan,
    /// Raw agent text paired with the observation it drew.
    pub transcript: Vec<(String, Observation)>,
    /// Ordering exchange of hierarchical multi-goal episodes.
    pub ordering: Option<(String, Vec<usize>)>,
    /// The agent declared the goal unreachable.
    pub declared_unreachable: bool,
    /// Metric scoring of the episode outcome.
    pub score: InstanceResult,
}

#[derive(Debug, Error)]
pub enum EpisodeError {
    #[error("agent failure during {stage}: {source}")]
    Agent {
        stage: &'static str,
        #[source]
        source: AgentError,
    },
    #[error("cannot parse goal ordering {response:?}: {source}")]
    Ordering {
        response: String,
        #[source]
        source: OrderParseError,
    },
    #[error(transparent)]
    Prompt(#[from] PromptError),
}

fn is_no_action(text: &str) -> bool {
    text.trim().trim_end_matches('.').eq_ignore_ascii_case("no action")
}

enum LegOutcome {
    Solved,
    Exhausted,
    DeclaredUnreachable,
}

struct LegRun<'a> {
    instance: &'a TaskInstance,
    transcript: &'a mut Vec<(String, Observation)>,
    concatenated: &'a mut Vec<Action>,
}

fn leg_instance(instance: &TaskInstance, leg: usize, from: Coordinate, target: Coordinate) -> TaskInstance {
    TaskInstance {
        id: format!("{}/leg{leg}", instance.id),
        env_id: instance.env_id.clone(),
        placement: instance.placement,
        env: instance.env.clone(),
        start: from,
        goals: vec![target],
        constraint: None,
        setting: Setting::Single,
        split: instance.split,
        reachable: true,
    }
}

fn run_leg(
    run: &mut LegRun<'_>,
    agent: &mut dyn Agent,
    leg: usize,
    from: Coordinate,
    target: Coordinate,
    max_trials: usize,
) -> Result<(LegOutcome, usize, Coordinate), EpisodeError> {
    let leg_inst = leg_instance(run.instance, leg, from, target);
    let base_prompt = build_prompt(&PromptSpec::stock(Method::React), &leg_inst)?;
    let mut dialogue: Vec<DialogueTurn> = Vec::new();
    let mut pos = from;

    for trial in 1..=max_trials {
        let mut prompt = base_prompt.clone();
        for (i, turn) in dialogue.iter().enumerate() {
            prompt.push_str(&format!(
                " {}\nObs {}: {}\nThought {}:",
                turn.agent_text,
                i + 1,
                turn.observation_text,
                i + 2
            ));
        }
        let request = PlanRequest {
            instance: run.instance,
            current_pos: pos,
            leg_goal: target,
            prompt,
            dialogue: &dialogue,
            trial,
        };
        let raw = agent
            .propose_plan(&request)
            .map_err(|source| EpisodeError::Agent {
                stage: "plan proposal",
                source,
            })?;
        let act_text = extract_react_act(&raw).to_string();

        if is_no_action(&act_text)
            || matches!(
                parse_prediction(&act_text, false, false),
                Prediction::UnreachableDeclared
            )
        {
            let obs = Observation::UnreachableAck;
            run.transcript.push((raw, obs));
            return Ok((LegOutcome::DeclaredUnreachable, trial, pos));
        }

        let (obs, new_pos) = match parse_prediction(&act_text, false, false) {
            Prediction::Actions { actions } => {
                let (obs, new_pos) = observe(&run.instance.env, pos, &actions, target);
                let executed = match &obs {
                    Observation::Solved { .. } | Observation::Incomplete { .. } => {
                        // full prefix up to the solved/ending cell
                        count_safe_moves(&run.instance.env, pos, &actions)
                    }
                    Observation::Blocked { executed, .. }
                    | Observation::OutOfBounds { executed, .. } => *executed,
                    Observation::UnreachableAck => 0,
                };
                run.concatenated.extend(actions.into_iter().take(executed));
                (obs, new_pos)
            }
            // an unparseable proposal executes nothing; the trial still counts
            _ => (
                Observation::Incomplete {
                    final_pos: pos,
                    executed: 0,
                },
                pos,
            ),
        };
        pos = new_pos;
        let solved = obs.is_solved();
        dialogue.push(DialogueTurn {
            agent_text: act_text,
            observation_text: obs.message(),
        });
        run.transcript.push((raw, obs));
        if solved {
            return Ok((LegOutcome::Solved, trial, pos));
        }
    }
    Ok((LegOutcome::Exhausted, max_trials, pos))
}

/// Moves executable from `pos` before any failure. The solved case may
/// truncate a proposal whose failing suffix was never reached.
fn count_safe_moves(env: &Environment, mut pos: Coordinate, actions: &[Action]) -> usize {
    let mut executed = 0;
    for &action in actions {
        match apply_action(env, pos, action) {
            StepOutcome::Moved(next) => {
                pos = next;
                executed += 1;
            }
            StepOutcome::Inspected => {}
            _ => break,
        }
    }
    executed
}

/// Run one interactive episode with at most `max_trials` proposals per leg.
pub fn run_episode(
    instance: &TaskInstance,
    gold: &Gold,
    agent: &mut dyn Agent,
    max_trials: usize,
) -> Result<EpisodeResult, EpisodeError> {
    let mut transcript = Vec::new();
    let mut concatenated: Vec<Action> = Vec::new();
    let mut trials_used = 0usize;
    let mut declared_unreachable = false;
    let mut ordering = None;

    match instance.setting {
        Setting::Single => {
            let mut run = LegRun {
                instance,
                transcript: &mut transcript,
                concatenated: &mut concatenated,
            };
            let (outcome, trials, _) =
                run_leg(&mut run, agent, 0, instance.start, instance.goals[0], max_trials)?;
            trials_used = trials;
            declared_unreachable = matches!(outcome, LegOutcome::DeclaredUnreachable);
        }
        Setting::MultiUnconstrained | Setting::MultiConstrained => {
            let prompt = build_ordering_prompt(instance, false)?;
            let response = agent
                .propose_order(&OrderRequest { instance, prompt })
                .map_err(|source| EpisodeError::Agent {
                    stage: "ordering",
                    source,
                })?;
            let order = crate::prompts::parse_order_response(&response, instance.goals.len())
                .map_err(|source| EpisodeError::Ordering {
                    response: response.clone(),
                    source,
                })?;
            ordering = Some((response, order.clone()));

            let mut pos = instance.start;
            for (leg, &goal_idx) in order.iter().enumerate() {
                let target = instance.goals[goal_idx];
                let mut run = LegRun {
                    instance,
                    transcript: &mut transcript,
                    concatenated: &mut concatenated,
                };
                let (outcome, trials, new_pos) =
                    run_leg(&mut run, agent, leg, pos, target, max_trials)?;
                trials_used = trials_used.max(trials);
                pos = new_pos;
                match outcome {
                    LegOutcome::Solved => concatenated.push(Action::Inspect),
                    LegOutcome::DeclaredUnreachable => {
                        declared_unreachable = true;
                        break;
                    }
                    LegOutcome::Exhausted => break,
                }
            }
        }
    }

    let prediction = if declared_unreachable {
        Prediction::UnreachableDeclared
    } else {
        Prediction::Actions {
            actions: concatenated.clone(),
        }
    };
    let score = evaluate_prediction(instance, gold, &prediction);
    let success = score.success || score.unreachable_correct == Some(true);

    Ok(EpisodeResult {
        success,
        trials_used,
        concatenated_path: Plan::from_actions(concatenated),
        transcript,
        ordering,
        declared_unreachable,
        score,
    })
}

/// Serialize a transcript entry for audit logs.
pub fn transcript_record(
    instance_id: &str,
    entry_index: usize,
    agent_text: &str,
    observation: &Observation,
) -> serde_json::Value {
    serde_json::json!({
        "instance_id": instance_id,
        "turn": entry_index,
        "agent_text": agent_text,
        "observation": observation.message(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agents::{baseline_agent, BaselineKind, RepeatAgent};
    use crate::envgen::{OrderingConstraint, Split};
    use crate::planner::{assemble_multigoal_plan, single_goal_plan};
    use crate::prompts::fixtures;
    use crate::verbalize::parse_task_text;
    use crate::world::{Coordinate, Environment};

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
        (
            TaskInstance {
                id: "ep".into(),
                env_id: "e".into(),
                placement: 0,
                env,
                start,
                goals,
                constraint,
                setting,
                split: Split::Train,
                reachable,
            },
            gold,
        )
    }

    #[test]
    fn observation_strings_match_the_reference_formats() {
        // solved
        let env = Environment::new(6, [c(2, 3), c(5, 5), c(5, 2)].into()).unwrap();
        let actions = parse_prediction("left left left left down down down down down", false, false);
        let Prediction::Actions { actions } = actions else { panic!() };
        let (obs, pos) = observe(&env, c(0, 4), &actions, c(5, 0));
        assert_eq!(
            obs.message(),
            "Performing the action sequence leads to (5,0). The task has been solved."
        );
        assert_eq!(pos, c(5, 0));

        // one safe step, then an obstacle one step ahead
        let env = Environment::new(6, [c(3, 0), c(1, 5), c(3, 4), c(5, 2), c(5, 3)].into()).unwrap();
        let Prediction::Actions { actions } =
            parse_prediction("down down down left left left left", false, false)
        else {
            panic!()
        };
        let (obs, pos) = observe(&env, c(1, 4), &actions, c(4, 0));
        assert_eq!(
            obs.message(),
            "After executing the first step, I am at (2,4). If I execute the next step I will run into the obstacle at (3,4)."
        );
        assert_eq!(pos, c(2, 4));

        // immediate obstacle
        let env = Environment::new(6, [c(0, 3), c(1, 2), c(3, 5), c(0, 1)].into()).unwrap();
        let Prediction::Actions { actions } =
            parse_prediction("down down down left", false, false)
        else {
            panic!()
        };
        let (obs, pos) = observe(&env, c(0, 2), &actions, c(3, 1));
        assert_eq!(
            obs.message(),
            "If I execute the first step I will run into the obstacle at (1,2)."
        );
        assert_eq!(pos, c(0, 2));
    }

    #[test]
    fn out_of_bounds_observation_names_the_boundary() {
        let env = Environment::new(6, [].into()).unwrap();
        let Prediction::Actions { actions } = parse_prediction("up up", false, false) else {
            panic!()
        };
        let (obs, _) = observe(&env, c(1, 0), &actions, c(5, 5));
        assert_eq!(
            obs.message(),
            "After executing the first step, I am at (0,0). If I execute the next step I will run into the top boundary of the world."
        );
    }

    #[test]
    fn reference_transcripts_replay_through_observe() {
        for ex in fixtures::REACT {
            let parsed = parse_task_text(ex.task).unwrap();
            let env = Environment::new(parsed.grid_size, parsed.obstacles.clone()).unwrap();
            let goal = parsed.goals[0];
            let mut pos = parsed.start;
            for turn in ex.turns {
                if is_no_action(turn.act) {
                    assert_eq!(Observation::UnreachableAck.message(), turn.obs, "{}", ex.id);
                    continue;
                }
                let Prediction::Actions { actions } = parse_prediction(turn.act, false, false)
                else {
                    panic!("unparseable act in {}: {:?}", ex.id, turn.act);
                };
                let (obs, new_pos) = observe(&env, pos, &actions, goal);
                assert_eq!(obs.message(), turn.obs, "{} drifted", ex.id);
                pos = new_pos;
            }
        }
    }

    #[test]
    fn oracle_solves_every_leg_in_one_trial() {
        let (inst, gold) = instance(&[(2, 1)], (0, 1), &[(3, 4)], None);
        let mut agent = baseline_agent(BaselineKind::Oracle, 0);
        let result = run_episode(&inst, &gold, agent.as_mut(), 3).unwrap();
        assert!(result.success);
        assert_eq!(result.trials_used, 1);
        assert!(result.score.optimal);

        let constraint = OrderingConstraint::new([1].into(), [0].into()).unwrap();
        let (inst, gold) = instance(&[(2, 1)], (5, 3), &[(2, 5), (2, 2)], Some(constraint));
        let mut agent = baseline_agent(BaselineKind::Oracle, 0);
        let result = run_episode(&inst, &gold, agent.as_mut(), 3).unwrap();
        assert!(result.success);
        assert_eq!(result.trials_used, 1);
        assert_eq!(result.concatenated_path.inspect_count, 2);
        assert!(result.score.optimal, "tour stitched from optimal legs");
    }

    #[test]
    fn repeating_blocked_agent_fails_after_exactly_three_trials() {
        let (inst, gold) = instance(&[(2, 1)], (0, 1), &[(5, 1)], None);
        let mut agent = RepeatAgent {
            text: "down down down down down".into(),
        };
        let result = run_episode(&inst, &gold, &mut agent, 3).unwrap();
        assert!(!result.success);
        assert_eq!(result.trials_used, 3);
        assert_eq!(result.transcript.len(), 3);
        // only the single safe step before the obstacle was ever committed
        assert_eq!(result.concatenated_path.move_count, 1);
    }

    #[test]
    fn plan_fixed_on_second_trial_succeeds() {
        struct Scripted {
            responses: Vec<&'static str>,
            i: usize,
        }
        impl Agent for Scripted {
            fn name(&self) -> &str {
                "scripted"
            }
            fn predict(
                &mut self,
                _i: &TaskInstance,
                _p: &str,
            ) -> Result<String, AgentError> {
                unreachable!()
            }
            fn propose_plan(&mut self, _r: &PlanRequest<'_>) -> Result<String, AgentError> {
                let text = self.responses[self.i.min(self.responses.len() - 1)];
                self.i += 1;
                Ok(text.to_string())
            }
            fn propose_order(&mut self, _r: &OrderRequest<'_>) -> Result<String, AgentError> {
                unreachable!()
            }
        }

        // obstacle at (2,1); going straight down is blocked at step 1
        let (inst, gold) = instance(&[(2, 1)], (0, 1), &[(3, 1)], None);
        let mut agent = Scripted {
            responses: vec!["down down down", "right down down down left up"],
            i: 0,
        };
        let result = run_episode(&inst, &gold, &mut agent, 3).unwrap();
        assert!(result.success);
        assert_eq!(result.trials_used, 2);
        // 1 committed step + 6 corrective steps; longer than the gold 5
        assert_eq!(result.concatenated_path.move_count, 7);
        assert!(result.score.success && !result.score.optimal);
    }

    #[test]
    fn unreachable_declaration_is_acknowledged() {
        let (inst, gold) = instance(&[(0, 4), (1, 5)], (0, 5), &[(3, 3)], None);
        assert!(!inst.reachable);
        let mut agent = baseline_agent(BaselineKind::Oracle, 0);
        let result = run_episode(&inst, &gold, agent.as_mut(), 3).unwrap();
        assert!(result.success);
        assert!(result.declared_unreachable);
        assert_eq!(result.score.unreachable_correct, Some(true));
        let (_, obs) = result.transcript.last().unwrap();
        assert_eq!(obs, &Observation::UnreachableAck);
    }

    #[test]
    fn concatenated_path_is_always_feasible() {
        let (inst, gold) = instance(&[(2, 1), (3, 3)], (0, 1), &[(5, 5)], None);
        for seed in 0..20 {
            let mut agent = baseline_agent(BaselineKind::Random, seed);
            let result = run_episode(&inst, &gold, agent.as_mut(), 3).unwrap();
            let trace = crate::world::execute_plan(
                &inst.env,
                inst.start,
                &result.concatenated_path.actions,
                &inst.goals,
            );
            assert!(trace.is_feasible(), "seed {seed}");
        }
    }

    #[test]
    fn episodes_are_deterministic_for_deterministic_agents() {
        let (inst, gold) = instance(&[(2, 1), (1, 4)], (0, 1), &[(5, 5)], None);
        let run = |seed| {
            let mut agent = baseline_agent(BaselineKind::Random, seed);
            let r = run_episode(&inst, &gold, agent.as_mut(), 3).unwrap();
            (
                plan_text(&r.concatenated_path.actions),
                r.transcript.iter().map(|(_, o)| o.message()).collect::<Vec<_>>(),
            )
        };
        assert_eq!(run(5), run(5));
    }
}

//! The agent abstraction and the baseline agents used to exercise the
//! evaluation harness.
//!
//! Agents receive fully rendered prompts (plus structured task context so
//! baselines can act without a language model) and return raw text; all
//! parsing happens in the harness.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::client::{ClientError, LlmClient};
use crate::envgen::TaskInstance;
use crate::planner;
use crate::rng::derive_rng;
use crate::world::{plan_text, Action, Coordinate, UNREACHABLE_TEXT};

/// One completed exchange inside an interactive episode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DialogueTurn {
    pub agent_text: String,
    pub observation_text: String,
}

/// A request for a (leg) plan inside an episode or a one-shot prediction.
#[derive(Debug)]
pub struct PlanRequest<'a> {
    pub instance: &'a TaskInstance,
    /// Position the plan must start from.
    pub current_pos: Coordinate,
    /// Target of the current leg (the goal itself for single-goal tasks).
    pub leg_goal: Coordinate,
    /// Rendered prompt, dialogue included.
    pub prompt: String,
    pub dialogue: &'a [DialogueTurn],
    /// 0-based leg index within the episode.
    pub leg: usize,
    /// 1-based proposal number within the current leg.
    pub trial: usize,
}

/// A request for a goal visiting order (multi-goal hierarchical step).
#[derive(Debug)]
pub struct OrderRequest<'a> {
    pub instance: &'a TaskInstance,
    pub prompt: String,
}

#[derive(Debug, Error)]
pub enum AgentError {
    #[error(transparent)]
    Client(#[from] ClientError),
}

/// Anything that can answer prompts.
pub trait Agent {
    fn name(&self) -> &str;

    /// One-shot full-task prediction (non-interactive evaluation).
    fn predict(&mut self, instance: &TaskInstance, prompt: &str) -> Result<String, AgentError>;

    /// Propose an action sequence for the current leg of an episode.
    fn propose_plan(&mut self, request: &PlanRequest<'_>) -> Result<String, AgentError>;

    /// Answer the ordering prompt.
    fn propose_order(&mut self, request: &OrderRequest<'_>) -> Result<String, AgentError>;
}

/// Built-in baseline agents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaselineKind {
    /// Replays planner gold; the harness soundness reference.
    Oracle,
    /// Manhattan-reducing moves, obstacles ignored, vertical first.
    Greedy,
    /// Seeded uniform action sequence of bounded length.
    Random,
}

impl BaselineKind {
    pub fn parse(s: &str) -> Option<BaselineKind> {
        Some(match s {
            "oracle" => BaselineKind::Oracle,
            "greedy" => BaselineKind::Greedy,
            "random" => BaselineKind::Random,
            _ => return None,
        })
    }
}

/// Construct a baseline agent. `seed` only matters for `Random`.
pub fn baseline_agent(kind: BaselineKind, seed: u64) -> Box<dyn Agent + Send> {
    match kind {
        BaselineKind::Oracle => Box::new(OracleAgent),
        BaselineKind::Greedy => Box::new(GreedyAgent),
        BaselineKind::Random => Box::new(RandomAgent { seed, calls: 0 }),
    }
}

/// Replays the exact gold plan (or the unreachable declaration).
pub struct OracleAgent;

impl Agent for OracleAgent {
    fn name(&self) -> &str {
        "oracle"
    }

    fn predict(&mut self, instance: &TaskInstance, _prompt: &str) -> Result<String, AgentError> {
        let gold = match instance.setting {
            crate::envgen::Setting::Single => {
                planner::single_goal_plan(&instance.env, instance.start, instance.goals[0])
            }
            _ => planner::assemble_multigoal_plan(
                &instance.env,
                instance.start,
                &instance.goals,
                instance.constraint.as_ref(),
            ),
        };
        Ok(gold.text())
    }

    fn propose_plan(&mut self, request: &PlanRequest<'_>) -> Result<String, AgentError> {
        Ok(
            match planner::astar_shortest_path(
                &request.instance.env,
                request.current_pos,
                request.leg_goal,
            ) {
                Some(plan) => plan.text(),
                None => UNREACHABLE_TEXT.to_string(),
            },
        )
    }

    fn propose_order(&mut self, request: &OrderRequest<'_>) -> Result<String, AgentError> {
        let instance = request.instance;
        let dm = planner::pairwise_distances(&instance.env, instance.start, &instance.goals);
        let order = planner::solve_visit_order(&dm, instance.constraint.as_ref())
            .map(|v| v.order)
            .unwrap_or_else(|| (0..instance.goals.len()).collect());
        Ok(order
            .iter()
            .map(|i| format!("p{i}"))
            .collect::<Vec<_>>()
            .join(", "))
    }
}

fn staircase(from: Coordinate, to: Coordinate) -> Vec<Action> {
    let mut actions = Vec::new();
    let vertical = if to.row >= from.row { Action::Down } else { Action::Up };
    let horizontal = if to.col >= from.col { Action::Right } else { Action::Left };
    actions.extend(std::iter::repeat_n(vertical, to.row.abs_diff(from.row)));
    actions.extend(std::iter::repeat_n(horizontal, to.col.abs_diff(from.col)));
    actions
}

/// Moves straight at the target, vertical leg first, blind to obstacles.
pub struct GreedyAgent;

impl GreedyAgent {
    fn goal_order(instance: &TaskInstance) -> Vec<usize> {
        match &instance.constraint {
            Some(c) => c.before.iter().chain(c.after.iter()).copied().collect(),
            None => (0..instance.goals.len()).collect(),
        }
    }
}

impl Agent for GreedyAgent {
    fn name(&self) -> &str {
        "greedy"
    }

    fn predict(&mut self, instance: &TaskInstance, _prompt: &str) -> Result<String, AgentError> {
        let mut actions = Vec::new();
        let mut pos = instance.start;
        match instance.setting {
            crate::envgen::Setting::Single => {
                actions = staircase(pos, instance.goals[0]);
            }
            _ => {
                for idx in Self::goal_order(instance) {
                    let goal = instance.goals[idx];
                    actions.extend(staircase(pos, goal));
                    actions.push(Action::Inspect);
                    pos = goal;
                }
            }
        }
        Ok(plan_text(&actions))
    }

    fn propose_plan(&mut self, request: &PlanRequest<'_>) -> Result<String, AgentError> {
        Ok(plan_text(&staircase(request.current_pos, request.leg_goal)))
    }

    fn propose_order(&mut self, request: &OrderRequest<'_>) -> Result<String, AgentError> {
        Ok(Self::goal_order(request.instance)
            .iter()
            .map(|i| format!("p{i}"))
            .collect::<Vec<_>>()
            .join(", "))
    }
}

/// Emits a seeded uniform move sequence; a floor for the other agents.
pub struct RandomAgent {
    seed: u64,
    calls: u64,
}

impl RandomAgent {
    fn sequence(&mut self, instance: &TaskInstance) -> String {
        let scope = format!("random-agent/{}/call{}", instance.id, self.calls);
        self.calls += 1;
        let mut rng = derive_rng(self.seed, &scope);
        let n = instance.env.grid_size();
        let len = rng.random_range(1..=2 * n);
        let actions: Vec<Action> = (0..len)
            .map(|_| Action::MOVES[rng.random_range(0..4)])
            .collect();
        plan_text(&actions)
    }
}

impl Agent for RandomAgent {
    fn name(&self) -> &str {
        "random"
    }

    fn predict(&mut self, instance: &TaskInstance, _prompt: &str) -> Result<String, AgentError> {
        Ok(self.sequence(instance))
    }

    fn propose_plan(&mut self, request: &PlanRequest<'_>) -> Result<String, AgentError> {
        Ok(self.sequence(request.instance))
    }

    fn propose_order(&mut self, request: &OrderRequest<'_>) -> Result<String, AgentError> {
        Ok((0..request.instance.goals.len())
            .map(|i| format!("p{i}"))
            .collect::<Vec<_>>()
            .join(", "))
    }
}

/// Always answers with the same text; exercises the trial budget.
pub struct RepeatAgent {
    pub text: String,
}

impl Agent for RepeatAgent {
    fn name(&self) -> &str {
        "repeat"
    }

    fn predict(&mut self, _instance: &TaskInstance, _prompt: &str) -> Result<String, AgentError> {
        Ok(self.text.clone())
    }

    fn propose_plan(&mut self, _request: &PlanRequest<'_>) -> Result<String, AgentError> {
        Ok(self.text.clone())
    }

    fn propose_order(&mut self, request: &OrderRequest<'_>) -> Result<String, AgentError> {
        Ok((0..request.instance.goals.len())
            .map(|i| format!("p{i}"))
            .collect::<Vec<_>>()
            .join(", "))
    }
}

/// Forwards rendered prompts to a remote chat-completion endpoint.
pub struct LlmAgent {
    client: Arc<LlmClient>,
    name: String,
}

impl LlmAgent {
    pub fn new(client: Arc<LlmClient>) -> Self {
        let name = format!("llm:{}", client.config().model);
        LlmAgent { client, name }
    }
}

impl Agent for LlmAgent {
    fn name(&self) -> &str {
        &self.name
    }

    fn predict(&mut self, _instance: &TaskInstance, prompt: &str) -> Result<String, AgentError> {
        Ok(self.client.complete(prompt)?)
    }

    fn propose_plan(&mut self, request: &PlanRequest<'_>) -> Result<String, AgentError> {
        Ok(self.client.complete(&request.prompt)?)
    }

    fn propose_order(&mut self, request: &OrderRequest<'_>) -> Result<String, AgentError> {
        Ok(self.client.complete(&request.prompt)?)
    }
}

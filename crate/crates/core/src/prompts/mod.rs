//! Prompt construction for the five prompting strategies.
//!
//! Exemplars live in [`fixtures`] as literal data; builders only assemble
//! header, `###` separators, and the target task, so the stock prompts are
//! byte-stable and covered by golden-file tests.

pub mod fixtures;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::envgen::TaskInstance;
use crate::verbalize::verbalize_task;
use fixtures::{Exemplar, ReactExemplar};

/// Prompting strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Naive,
    ActionEffect,
    Cot,
    React,
    Ordering,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::ActionEffect => "action_effect",
            Method::Cot => "cot",
            Method::React => "react",
            Method::Ordering => "ordering",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Some(match s {
            "naive" => Method::Naive,
            "action_effect" => Method::ActionEffect,
            "cot" => Method::Cot,
            "react" => Method::React,
            "ordering" => Method::Ordering,
            _ => return None,
        })
    }

    /// Default exemplar count: naive varies, the rest use 7-shot stock
    /// sets (ordering uses its 5 stock demonstrations).
    pub fn default_shots(&self) -> usize {
        match self {
            Method::Naive => 5,
            Method::Ordering => 5,
            _ => 7,
        }
    }
}

/// A prompt request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub method: Method,
    pub shots: usize,
    /// Ordering prompts only: ask for the optimal order.
    #[serde(default)]
    pub optimality_variant: bool,
    /// Explicit exemplar selection; empty means the stock set.
    #[serde(default)]
    pub exemplar_ids: Vec<String>,
}

impl PromptSpec {
    pub fn stock(method: Method) -> Self {
        PromptSpec {
            method,
            shots: method.default_shots(),
            optimality_variant: false,
            exemplar_ids: Vec::new(),
        }
    }

    pub fn naive(shots: usize) -> Self {
        PromptSpec {
            method: Method::Naive,
            shots,
            optimality_variant: false,
            exemplar_ids: Vec::new(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PromptError {
    #[error("naive prompting ships stock sets for 5, 10 and 15 shots, not {0}")]
    UnsupportedNaiveShots(usize),
    #[error("method {0} has {1} stock exemplars, cannot serve {2} shots")]
    NotEnoughExemplars(&'static str, usize, usize),
    #[error("unknown exemplar id {0}")]
    UnknownExemplar(String),
    #[error("optimality variant only applies to ordering prompts")]
    OptimalityOutsideOrdering,
}

fn find_exemplar(id: &str) -> Option<&'static Exemplar> {
    [
        fixtures::NAIVE_5,
        fixtures::NAIVE_10,
        fixtures::NAIVE_15,
        fixtures::ACTION_EFFECT,
        fixtures::COT,
        fixtures::ORDERING,
    ]
    .into_iter()
    .flatten()
    .find(|e| e.id == id)
}

fn find_react_exemplar(id: &str) -> Option<&'static ReactExemplar> {
    fixtures::REACT.iter().find(|e| e.id == id)
}

fn selected_exemplars(
    spec: &PromptSpec,
) -> Result<Option<Vec<&'static Exemplar>>, PromptError> {
    if spec.exemplar_ids.is_empty() {
        return Ok(None);
    }
    spec.exemplar_ids
        .iter()
        .map(|id| find_exemplar(id).ok_or_else(|| PromptError::UnknownExemplar(id.clone())))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn stock_exemplars(method: Method, shots: usize) -> Result<&'static [Exemplar], PromptError> {
    let set: &'static [Exemplar] = match method {
        Method::Naive => match shots {
            5 => fixtures::NAIVE_5,
            10 => fixtures::NAIVE_10,
            15 => fixtures::NAIVE_15,
            other => return Err(PromptError::UnsupportedNaiveShots(other)),
        },
        Method::ActionEffect => fixtures::ACTION_EFFECT,
        Method::Cot => fixtures::COT,
        Method::Ordering => fixtures::ORDERING,
        Method::React => unreachable!("react exemplars carry dialogue turns"),
    };
    if shots > set.len() {
        return Err(PromptError::NotEnoughExemplars(method.as_str(), set.len(), shots));
    }
    Ok(&set[..shots])
}

fn push_separator(out: &mut String) {
    out.push_str("\n###\n");
}

fn render_react_exemplar(out: &mut String, ex: &ReactExemplar) {
    write!(out, "Task: {}", ex.task).unwrap();
    for (i, turn) in ex.turns.iter().enumerate() {
        let n = i + 1;
        write!(out, "\nThought {n}: {}", turn.thought).unwrap();
        write!(out, "\nAct {n}: {}", turn.act).unwrap();
        write!(out, "\nObs {n}: {}", turn.obs).unwrap();
    }
}

/// Header plus the stock exemplar block for a method, ending in a newline.
/// This is exactly the text pinned by the golden files.
pub fn exemplar_block(spec: &PromptSpec) -> Result<String, PromptError> {
    if spec.optimality_variant && spec.method != Method::Ordering {
        return Err(PromptError::OptimalityOutsideOrdering);
    }
    let mut out = String::new();
    match spec.method {
        Method::React => {
            out.push_str(fixtures::TASK_HEADER);
            let chosen: Vec<&'static ReactExemplar> = if spec.exemplar_ids.is_empty() {
                if spec.shots > fixtures::REACT.len() {
                    return Err(PromptError::NotEnoughExemplars(
                        "react",
                        fixtures::REACT.len(),
                        spec.shots,
                    ));
                }
                fixtures::REACT[..spec.shots].iter().collect()
            } else {
                spec.exemplar_ids
                    .iter()
                    .map(|id| {
                        find_react_exemplar(id)
                            .ok_or_else(|| PromptError::UnknownExemplar(id.clone()))
                    })
                    .collect::<Result<_, _>>()?
            };
            for ex in chosen {
                push_separator(&mut out);
                render_react_exemplar(&mut out, ex);
            }
        }
        Method::Ordering => {
            out.push_str(if spec.optimality_variant {
                fixtures::ORDERING_OPTIMAL_HEADER
            } else {
                fixtures::ORDERING_HEADER
            });
            let chosen = match selected_exemplars(spec)? {
                Some(list) => list,
                None => stock_exemplars(Method::Ordering, spec.shots)?.iter().collect(),
            };
            for ex in chosen {
                push_separator(&mut out);
                write!(out, "Task: {}", ex.task).unwrap();
                if spec.optimality_variant {
                    write!(out, "\nOrder: {}{}", fixtures::OPTIMAL_ORDER_PREFIX, ex.response)
                        .unwrap();
                } else {
                    write!(out, "\nOrder: {}", ex.response).unwrap();
                }
            }
        }
        _ => {
            out.push_str(fixtures::TASK_HEADER);
            let chosen = match selected_exemplars(spec)? {
                Some(list) => list,
                None => stock_exemplars(spec.method, spec.shots)?.iter().collect(),
            };
            for ex in chosen {
                push_separator(&mut out);
                write!(out, "Task: {}\nActions: {}", ex.task, ex.response).unwrap();
            }
        }
    }
    out.push('\n');
    Ok(out)
}

/// The line the model completes after the target task.
fn cue(method: Method) -> &'static str {
    match method {
        Method::React => "Thought 1:",
        Method::Ordering => "Order:",
        _ => "Actions:",
    }
}

/// Build the full prompt for `task_text`.
pub fn build_prompt_for_text(spec: &PromptSpec, task_text: &str) -> Result<String, PromptError> {
    let mut out = exemplar_block(spec)?;
    write!(out, "###\nTask: {task_text}\n{}", cue(spec.method)).unwrap();
    Ok(out)
}

/// Build the full prompt for an instance (verbalized on the fly).
pub fn build_prompt(spec: &PromptSpec, instance: &TaskInstance) -> Result<String, PromptError> {
    build_prompt_for_text(spec, &verbalize_task(instance).text)
}

/// The 5-shot ordering prompt for a multi-goal instance.
pub fn build_ordering_prompt(
    instance: &TaskInstance,
    optimality: bool,
) -> Result<String, PromptError> {
    let spec = PromptSpec {
        method: Method::Ordering,
        shots: 5,
        optimality_variant: optimality,
        exemplar_ids: Vec::new(),
    };
    build_prompt(&spec, instance)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderParseError {
    #[error("cannot read a goal order from {0:?}")]
    Malformed(String),
    #[error("order names goal p{0} outside 0..{1}")]
    IndexOutOfRange(usize, usize),
    #[error("order must name each goal exactly once, p{0} repeats or is missing")]
    NotAPermutation(usize),
}

/// Parse an ordering response like `"p1, p0"` into goal indices.
///
/// Tolerates an `Order:` label and the `The optimal plan is:` prefix used
/// by the optimality variant, plus a trailing period.
pub fn parse_order_response(text: &str, goal_count: usize) -> Result<Vec<usize>, OrderParseError> {
    let mut body = text.trim();
    if let Some(at) = body.rfind("Order:") {
        body = body[at + "Order:".len()..].trim();
    }
    let lower = body.to_ascii_lowercase();
    if let Some(at) = lower.rfind("the optimal plan is:") {
        body = body[at + "the optimal plan is:".len()..].trim();
    }
    let body = body.trim().trim_end_matches('.');
    let mut order = Vec::new();
    for part in body.split(',') {
        let token = part.trim();
        let Some(rest) = token.strip_prefix(['p', 'P']) else {
            return Err(OrderParseError::Malformed(text.to_string()));
        };
        let idx: usize = rest
            .trim()
            .parse()
            .map_err(|_| OrderParseError::Malformed(text.to_string()))?;
        if idx >= goal_count {
            return Err(OrderParseError::IndexOutOfRange(idx, goal_count));
        }
        order.push(idx);
    }
    for i in 0..goal_count {
        if order.iter().filter(|&&x| x == i).count() != 1 {
            return Err(OrderParseError::NotAPermutation(i));
        }
    }
    Ok(order)
}

/// Pull the action-sequence portion out of a raw model response.
///
/// Reasoning-style responses embed the plan after `action sequence is:`;
/// naive responses may carry an `Actions:` label; anything else is
/// returned trimmed as-is.
pub fn extract_plan_text(raw: &str) -> &str {
    let lower = raw.to_ascii_lowercase();
    if let Some(at) = lower.rfind("action sequence is:") {
        return raw[at + "action sequence is:".len()..].trim();
    }
    if let Some(at) = lower.rfind("actions:") {
        return raw[at + "actions:".len()..].trim();
    }
    raw.trim()
}

/// Pull the proposal out of a ReAct-style response: the content of the
/// last `Act N:` line, or the whole text when no such line exists.
pub fn extract_react_act(raw: &str) -> &str {
    for line in raw.lines().rev() {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("Act") {
            if let Some(at) = rest.find(':') {
                return rest[at + 1..].trim();
            }
        }
    }
    raw.trim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_shots_are_restricted_to_stock_sizes() {
        assert!(matches!(
            exemplar_block(&PromptSpec::naive(7)),
            Err(PromptError::UnsupportedNaiveShots(7))
        ));
        for shots in [5, 10, 15] {
            exemplar_block(&PromptSpec::naive(shots)).unwrap();
        }
    }

    #[test]
    fn react_block_interleaves_turns() {
        let block = exemplar_block(&PromptSpec::stock(Method::React)).unwrap();
        assert!(block.contains("Thought 1:"));
        assert!(block.contains("Act 3: right down down left"));
        assert!(block.contains("Obs 2: After executing the first 4 steps"));
        assert_eq!(block.matches("\n###\n").count(), 7);
    }

    #[test]
    fn zero_shot_cot_is_header_plus_target() {
        let spec = PromptSpec {
            method: Method::Cot,
            shots: 0,
            optimality_variant: false,
            exemplar_ids: Vec::new(),
        };
        let prompt = build_prompt_for_text(&spec, "You are in a 2 by 2 world. Go from (0,0) to (1,1)").unwrap();
        assert_eq!(
            prompt,
            format!(
                "{}\n###\nTask: You are in a 2 by 2 world. Go from (0,0) to (1,1)\nActions:",
                fixtures::TASK_HEADER
            )
        );
    }

    #[test]
    fn ordering_variants_differ_only_in_header_and_prefix() {
        let plain = exemplar_block(&PromptSpec {
            method: Method::Ordering,
            shots: 5,
            optimality_variant: false,
            exemplar_ids: Vec::new(),
        })
        .unwrap();
        let optimal = exemplar_block(&PromptSpec {
            method: Method::Ordering,
            shots: 5,
            optimality_variant: true,
            exemplar_ids: Vec::new(),
        })
        .unwrap();
        assert!(plain.starts_with("Provide a plan to navigate"));
        assert!(optimal.starts_with("Provide an optimal plan to navigate"));
        assert!(optimal.contains("Order: The optimal plan is: p1, p0"));
        assert!(plain.contains("Order: p1, p0"));
    }

    #[test]
    fn order_response_parsing() {
        assert_eq!(parse_order_response("p1, p0", 2).unwrap(), vec![1, 0]);
        assert_eq!(
            parse_order_response("Order: The optimal plan is: p2, p0, p1", 3).unwrap(),
            vec![2, 0, 1]
        );
        assert_eq!(parse_order_response("p1, p0.", 2).unwrap(), vec![1, 0]);
        assert!(matches!(
            parse_order_response("p1, p1", 2),
            Err(OrderParseError::NotAPermutation(0))
        ));
        assert!(matches!(
            parse_order_response("p5, p0", 2),
            Err(OrderParseError::IndexOutOfRange(5, 2))
        ));
        assert!(parse_order_response("first p1 then p0", 2).is_err());
    }

    #[test]
    fn plan_extraction_finds_embedded_sequences() {
        assert_eq!(
            extract_plan_text("Therefore, my action sequence is: right right down."),
            "right right down."
        );
        assert_eq!(extract_plan_text("Actions: up up"), "up up");
        assert_eq!(extract_plan_text("  up up  "), "up up");
    }

    #[test]
    fn react_act_extraction_takes_last_act_line() {
        let raw = "Thought 1: go left.\nAct 1: left left\nObs 1: blocked\nThought 2: retry\nAct 2: down down";
        assert_eq!(extract_react_act(raw), "down down");
        assert_eq!(extract_react_act("up up"), "up up");
    }
}

//! Rendering task instances into their natural-language templates, plus
//! the companion parser used to verify the rendering is lossless.
//!
//! List formatting uses `", "` with `" and "` before the final item, and
//! obstacle-free environments omit the obstacle sentence entirely.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::envgen::{OrderingConstraint, Setting, TaskInstance};
use crate::world::Coordinate;

/// A rendered task description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskText {
    pub text: String,
    pub instance_id: String,
}

fn and_join(items: &[String]) -> String {
    match items.len() {
        0 => String::new(),
        1 => items[0].clone(),
        _ => format!(
            "{} and {}",
            items[..items.len() - 1].join(", "),
            items[items.len() - 1]
        ),
    }
}

fn goal_names(indices: impl Iterator<Item = usize>) -> String {
    and_join(&indices.map(|i| format!("p{i}")).collect::<Vec<_>>())
}

/// Render `instance` into its canonical task text.
pub fn verbalize_task(instance: &TaskInstance) -> TaskText {
    let mut text = String::new();
    let n = instance.env.grid_size();
    write!(text, "You are in a {n} by {n} world.").unwrap();

    if instance.env.obstacle_count() > 0 {
        let obstacles: Vec<String> = instance
            .env
            .obstacles()
            .iter()
            .map(|c| c.to_string())
            .collect();
        write!(
            text,
            " There are obstacles that you have to avoid at: {}.",
            and_join(&obstacles)
        )
        .unwrap();
    }

    match instance.setting {
        Setting::Single => {
            write!(text, " Go from {} to {}", instance.start, instance.goals[0]).unwrap();
        }
        Setting::MultiUnconstrained | Setting::MultiConstrained => {
            write!(text, " You are at {}.", instance.start).unwrap();
            write!(
                text,
                " You have to visit {}.",
                goal_names(0..instance.goals.len())
            )
            .unwrap();
            let located: Vec<String> = instance
                .goals
                .iter()
                .enumerate()
                .map(|(i, g)| format!("p{i} is located at {g}"))
                .collect();
            write!(text, " {}.", and_join(&located)).unwrap();
            if let Some(constraint) = &instance.constraint {
                write!(
                    text,
                    " Visit {} before {}",
                    goal_names(constraint.before.iter().copied()),
                    goal_names(constraint.after.iter().copied())
                )
                .unwrap();
            }
        }
    }

    TaskText {
        text,
        instance_id: instance.id.clone(),
    }
}

/// Fields recovered from a task text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTask {
    pub grid_size: usize,
    pub obstacles: BTreeSet<Coordinate>,
    pub start: Coordinate,
    pub goals: Vec<Coordinate>,
    pub constraint: Option<OrderingConstraint>,
    pub setting: Setting,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse task text: {0}")]
pub struct ParseTaskError(String);

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { rest: s }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseTaskError> {
        self.rest = self
            .rest
            .strip_prefix(lit)
            .ok_or_else(|| ParseTaskError(format!("expected {lit:?} at {:?}", head(self.rest))))?;
        Ok(())
    }

    fn eat(&mut self, lit: &str) -> bool {
        match self.rest.strip_prefix(lit) {
            Some(r) => {
                self.rest = r;
                true
            }
            None => false,
        }
    }

    fn take_until(&mut self, lit: &str) -> Result<&'a str, ParseTaskError> {
        let at = self
            .rest
            .find(lit)
            .ok_or_else(|| ParseTaskError(format!("missing {lit:?} after {:?}", head(self.rest))))?;
        let taken = &self.rest[..at];
        self.rest = &self.rest[at + lit.len()..];
        Ok(taken)
    }

    fn number(&mut self) -> Result<usize, ParseTaskError> {
        let digits: usize = self.rest.bytes().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err(ParseTaskError(format!("expected number at {:?}", head(self.rest))));
        }
        let value = self.rest[..digits]
            .parse()
            .map_err(|_| ParseTaskError("number out of range".into()))?;
        self.rest = &self.rest[digits..];
        Ok(value)
    }

    fn coordinate(&mut self) -> Result<Coordinate, ParseTaskError> {
        self.expect("(")?;
        let row = self.number()?;
        self.expect(",")?;
        let col = self.number()?;
        self.expect(")")?;
        Ok(Coordinate::new(row, col))
    }

    fn done(&self) -> bool {
        self.rest.is_empty()
    }
}

fn head(s: &str) -> &str {
    &s[..s.len().min(24)]
}

fn parse_coord_list(list: &str) -> Result<Vec<Coordinate>, ParseTaskError> {
    let mut cur = Cursor::new(list);
    let mut out = vec![cur.coordinate()?];
    loop {
        if cur.eat(", ") || cur.eat(" and ") {
            out.push(cur.coordinate()?);
        } else if cur.done() {
            return Ok(out);
        } else {
            return Err(ParseTaskError(format!(
                "unexpected text in coordinate list: {:?}",
                head(cur.rest)
            )));
        }
    }
}

fn parse_goal_name_list(list: &str) -> Result<Vec<usize>, ParseTaskError> {
    let mut cur = Cursor::new(list);
    let mut out = Vec::new();
    loop {
        cur.expect("p")?;
        out.push(cur.number()?);
        if cur.eat(", ") || cur.eat(" and ") {
            continue;
        }
        if cur.done() {
            return Ok(out);
        }
        return Err(ParseTaskError(format!(
            "unexpected text in goal list: {:?}",
            head(cur.rest)
        )));
    }
}

/// Recover the instance fields from a canonical task text.
pub fn parse_task_text(text: &str) -> Result<ParsedTask, ParseTaskError> {
    let mut cur = Cursor::new(text);
    cur.expect("You are in a ")?;
    let grid_size = cur.number()?;
    cur.expect(" by ")?;
    let n2 = cur.number()?;
    if n2 != grid_size {
        return Err(ParseTaskError(format!("grid sides differ: {grid_size} vs {n2}")));
    }
    cur.expect(" world.")?;

    let mut obstacles = BTreeSet::new();
    if cur.eat(" There are obstacles that you have to avoid at: ") {
        let list = cur.take_until(".")?;
        obstacles = parse_coord_list(list)?.into_iter().collect();
    }

    if cur.eat(" Go from ") {
        let start = cur.coordinate()?;
        cur.expect(" to ")?;
        let goal = cur.coordinate()?;
        if !cur.done() {
            return Err(ParseTaskError(format!("trailing text {:?}", head(cur.rest))));
        }
        return Ok(ParsedTask {
            grid_size,
            obstacles,
            start,
            goals: vec![goal],
            constraint: None,
            setting: Setting::Single,
        });
    }

    cur.expect(" You are at ")?;
    let start = cur.coordinate()?;
    cur.expect(".")?;
    cur.expect(" You have to visit ")?;
    let names = parse_goal_name_list(cur.take_until(".")?)?;
    cur.expect(" ")?;
    let located = cur.take_until(".")?;
    let mut goals: Vec<Option<Coordinate>> = vec![None; names.len()];
    {
        let mut lcur = Cursor::new(located);
        loop {
            lcur.expect("p")?;
            let idx = lcur.number()?;
            lcur.expect(" is located at ")?;
            let coord = lcur.coordinate()?;
            let slot = goals
                .get_mut(idx)
                .ok_or_else(|| ParseTaskError(format!("goal p{idx} out of range")))?;
            if slot.replace(coord).is_some() {
                return Err(ParseTaskError(format!("goal p{idx} located twice")));
            }
            if lcur.eat(", ") || lcur.eat(" and ") {
                continue;
            }
            if lcur.done() {
                break;
            }
            return Err(ParseTaskError(format!(
                "unexpected text in locations: {:?}",
                head(lcur.rest)
            )));
        }
    }
    let goals: Vec<Coordinate> = goals
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.ok_or_else(|| ParseTaskError(format!("goal p{i} never located"))))
        .collect::<Result<_, _>>()?;

    let constraint = if cur.eat(" Visit ") {
        let before = parse_goal_name_list(cur.take_until(" before ")?)?;
        let after = parse_goal_name_list(cur.rest)?;
        Some(
            OrderingConstraint::new(before.into_iter().collect(), after.into_iter().collect())
                .map_err(|e| ParseTaskError(e.to_string()))?,
        )
    } else {
        if !cur.done() {
            return Err(ParseTaskError(format!("trailing text {:?}", head(cur.rest))));
        }
        None
    };

    let setting = if constraint.is_some() {
        Setting::MultiConstrained
    } else {
        Setting::MultiUnconstrained
    };
    Ok(ParsedTask {
        grid_size,
        obstacles,
        start,
        goals,
        constraint,
        setting,
    })
}

/// True when `parsed` matches every template-exposed field of `instance`.
pub fn round_trips(instance: &TaskInstance, parsed: &ParsedTask) -> bool {
    parsed.grid_size == instance.env.grid_size()
        && parsed.obstacles == *instance.env.obstacles()
        && parsed.start == instance.start
        && parsed.goals == instance.goals
        && parsed.constraint == instance.constraint
        && parsed.setting == instance.setting
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envgen::Split;
    use crate::world::Environment;

    fn instance(
        n: usize,
        obstacles: &[(usize, usize)],
        start: (usize, usize),
        goals: &[(usize, usize)],
        constraint: Option<OrderingConstraint>,
    ) -> TaskInstance {
        let setting = match (goals.len(), &constraint) {
            (1, None) => Setting::Single,
            (_, None) => Setting::MultiUnconstrained,
            (_, Some(_)) => Setting::MultiConstrained,
        };
        TaskInstance {
            id: "test".into(),
            env_id: "env".into(),
            placement: 0,
            env: Environment::new(
                n,
                obstacles
                    .iter()
                    .map(|&(r, c)| Coordinate::new(r, c))
                    .collect(),
            )
            .unwrap(),
            start: Coordinate::new(start.0, start.1),
            goals: goals.iter().map(|&(r, c)| Coordinate::new(r, c)).collect(),
            constraint,
            setting,
            split: Split::Train,
            reachable: true,
        }
    }

    #[test]
    fn single_goal_reference_text() {
        let inst = instance(6, &[(2, 1)], (0, 1), &[(3, 4)], None);
        assert_eq!(
            verbalize_task(&inst).text,
            "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). Go from (0,1) to (3,4)"
        );
    }

    #[test]
    fn constrained_reference_text() {
        let constraint = OrderingConstraint::new([1].into(), [0].into()).unwrap();
        let inst = instance(6, &[(2, 1)], (5, 3), &[(2, 5), (2, 2)], Some(constraint));
        assert_eq!(
            verbalize_task(&inst).text,
            "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). \
             You are at (5,3). You have to visit p0 and p1. p0 is located at (2,5) and \
             p1 is located at (2,2). Visit p1 before p0"
        );
    }

    #[test]
    fn multi_obstacle_list_uses_and_before_last() {
        let inst = instance(6, &[(0, 3), (2, 5), (5, 2)], (4, 2), &[(0, 5)], None);
        assert_eq!(
            verbalize_task(&inst).text,
            "You are in a 6 by 6 world. There are obstacles that you have to avoid at: \
             (0,3), (2,5) and (5,2). Go from (4,2) to (0,5)"
        );
    }

    #[test]
    fn zero_obstacles_omit_the_sentence() {
        let inst = instance(6, &[], (0, 0), &[(5, 5)], None);
        assert_eq!(
            verbalize_task(&inst).text,
            "You are in a 6 by 6 world. Go from (0,0) to (5,5)"
        );
    }

    #[test]
    fn round_trip_each_setting() {
        let cases = vec![
            instance(6, &[(2, 1)], (0, 1), &[(3, 4)], None),
            instance(6, &[], (0, 0), &[(5, 5)], None),
            instance(
                7,
                &[(1, 1), (3, 4)],
                (0, 2),
                &[(5, 5), (2, 2), (6, 0)],
                None,
            ),
            instance(
                6,
                &[(2, 1)],
                (5, 3),
                &[(2, 5), (2, 2), (0, 0), (4, 4), (1, 3)],
                Some(OrderingConstraint::new([1, 3].into(), [0, 2, 4].into()).unwrap()),
            ),
        ];
        for inst in cases {
            let text = verbalize_task(&inst);
            let parsed = parse_task_text(&text.text).unwrap();
            assert!(round_trips(&inst, &parsed), "{}", text.text);
        }
    }

    #[test]
    fn constrained_text_matches_multi_goal_phrasing() {
        let inst = instance(
            6,
            &[(5, 2), (2, 3), (5, 0)],
            (0, 2),
            &[(3, 5), (5, 4), (2, 4), (3, 2), (4, 4)],
            Some(OrderingConstraint::new([1, 3].into(), [0, 2, 4].into()).unwrap()),
        );
        assert_eq!(
            verbalize_task(&inst).text,
            "You are in a 6 by 6 world. There are obstacles that you have to avoid at: \
             (2,3), (5,0) and (5,2). You are at (0,2). You have to visit p0, p1, p2, p3 and p4. \
             p0 is located at (3,5), p1 is located at (5,4), p2 is located at (2,4), \
             p3 is located at (3,2) and p4 is located at (4,4). Visit p1 and p3 before p0, p2 and p4"
        );
    }

    #[test]
    fn parser_rejects_mangled_text() {
        assert!(parse_task_text("You are in a 6 by 7 world. Go from (0,0) to (1,1)").is_err());
        assert!(parse_task_text("Go from (0,0) to (1,1)").is_err());
        assert!(parse_task_text("You are in a 6 by 6 world. Go from (0,0) to (1,1) extra").is_err());
    }
}

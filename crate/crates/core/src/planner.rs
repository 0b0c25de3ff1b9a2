//! Exact gold-plan computation.
//!
//! Free cells form an undirected 4-connected graph. Shortest paths come
//! from A* with the Manhattan heuristic; multi-goal visit orders come from
//! a dynamic program over goal subsets that is exact and honors precedence
//! constraints, so no external optimizer is involved.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::envgen::OrderingConstraint;
use crate::world::{plan_text, Action, Coordinate, Environment, UNREACHABLE_TEXT};

/// Largest goal count the subset DP will solve exactly.
pub const EXACT_SOLVE_CAP: usize = 12;

/// Neighbor expansion order. Fixing it (together with a stable priority
/// queue) makes every returned path deterministic.
const EXPANSION_ORDER: [Action; 4] = [Action::Down, Action::Right, Action::Up, Action::Left];

/// In-bounds, obstacle-free neighbors of `cell` in expansion order.
pub fn neighbors(env: &Environment, cell: Coordinate) -> Vec<Coordinate> {
    EXPANSION_ORDER
        .iter()
        .filter_map(|&a| env.target_of(cell, a))
        .filter(|&c| !env.is_obstacle(c))
        .collect()
}

/// Degree of `cell` in the free-cell graph.
pub fn degree(env: &Environment, cell: Coordinate) -> usize {
    neighbors(env, cell).len()
}

/// Breadth-first closure of the free-cell graph from `start`.
pub fn reachable_set(env: &Environment, start: Coordinate) -> BTreeSet<Coordinate> {
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(cell) = queue.pop_front() {
        for next in neighbors(env, cell) {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// A concrete action sequence with its move/inspect composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub actions: Vec<Action>,
    pub move_count: usize,
    pub inspect_count: usize,
}

impl Plan {
    pub fn from_actions(actions: Vec<Action>) -> Self {
        let move_count = actions.iter().filter(|a| a.is_move()).count();
        let inspect_count = actions.len() - move_count;
        Plan {
            actions,
            move_count,
            inspect_count,
        }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn text(&self) -> String {
        plan_text(&self.actions)
    }
}

/// A gold plan, or the unreachable verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gold {
    Plan(Plan),
    Unreachable,
}

impl Gold {
    /// Canonical serialization: plan tokens, or the literal declaration.
    pub fn text(&self) -> String {
        match self {
            Gold::Plan(p) => p.text(),
            Gold::Unreachable => UNREACHABLE_TEXT.to_string(),
        }
    }

    pub fn as_plan(&self) -> Option<&Plan> {
        match self {
            Gold::Plan(p) => Some(p),
            Gold::Unreachable => None,
        }
    }
}

/// Minimum-length action sequence from `start` to `goal`, or `None` when
/// the goal lies outside the start's connected component.
///
/// Ties are broken by the fixed expansion order and a FIFO rule among
/// equal priorities, so the returned path is a deterministic function of
/// the environment and endpoints.
pub fn astar_shortest_path(
    env: &Environment,
    start: Coordinate,
    goal: Coordinate,
) -> Option<Plan> {
    debug_assert!(env.is_free(start) && env.is_free(goal));
    if start == goal {
        return Some(Plan::from_actions(Vec::new()));
    }

    let n = env.grid_size();
    let idx = |c: Coordinate| c.row * n + c.col;
    let mut g_score: Vec<Option<usize>> = vec![None; n * n];
    let mut parent: Vec<Option<(Coordinate, Action)>> = vec![None; n * n];
    let mut open = BinaryHeap::new();
    let mut seq = 0u64;

    g_score[idx(start)] = Some(0);
    open.push(Reverse((start.manhattan(&goal), seq, start)));

    while let Some(Reverse((_, _, cell))) = open.pop() {
        let g = g_score[idx(cell)].expect("queued cell has a g-score");
        if cell == goal {
            let mut actions = Vec::with_capacity(g);
            let mut cur = cell;
            while let Some((prev, action)) = parent[idx(cur)] {
                actions.push(action);
                cur = prev;
            }
            actions.reverse();
            return Some(Plan::from_actions(actions));
        }
        for &action in &EXPANSION_ORDER {
            let Some(next) = env.target_of(cell, action) else {
                continue;
            };
            if env.is_obstacle(next) {
                continue;
            }
            let tentative = g + 1;
            if g_score[idx(next)].is_none_or(|best| tentative < best) {
                g_score[idx(next)] = Some(tentative);
                parent[idx(next)] = Some((cell, action));
                seq += 1;
                open.push(Reverse((tentative + next.manhattan(&goal), seq, next)));
            }
        }
    }
    None
}

/// Pairwise shortest-path lengths among `start` (index 0) and `goals`.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    /// Index 0 is the start; goal `i` sits at index `i + 1`.
    pub points: Vec<Coordinate>,
    /// `dist[i][j]` in steps; `None` where no path exists.
    pub dist: Vec<Vec<Option<usize>>>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Build the distance matrix from A* runs on each pair.
pub fn pairwise_distances(
    env: &Environment,
    start: Coordinate,
    goals: &[Coordinate],
) -> DistanceMatrix {
    let mut points = Vec::with_capacity(goals.len() + 1);
    points.push(start);
    points.extend_from_slice(goals);
    let k = points.len();
    let mut dist = vec![vec![None; k]; k];
    for i in 0..k {
        dist[i][i] = Some(0);
        for j in i + 1..k {
            let d = astar_shortest_path(env, points[i], points[j]).map(|p| p.len());
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    DistanceMatrix { points, dist }
}

/// An optimal visit order over the goals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisitOrder {
    /// Goal indices (`0..l`) in visiting order.
    pub order: Vec<usize>,
    /// Total moves along the open tour starting at the start point.
    pub total_cost: usize,
}

/// Exact minimum-cost open tour from the start visiting all goals.
///
/// With a constraint, every `before` goal is visited ahead of every
/// `after` goal. Among equal-cost tours the lexicographically smallest
/// order wins. Returns `None` when no feasible tour exists (some needed
/// distance is infinite).
pub fn solve_visit_order(
    dm: &DistanceMatrix,
    constraint: Option<&OrderingConstraint>,
) -> Option<VisitOrder> {
    let l = dm.len().checked_sub(1)?;
    let (before_mask, after_mask) = match constraint {
        Some(c) => {
            let mut b = 0u32;
            let mut a = 0u32;
            for &i in &c.before {
                b |= 1 << i;
            }
            for &i in &c.after {
                a |= 1 << i;
            }
            (b, a)
        }
        None => (0, 0),
    };
    solve_visit_order_masked(dm, before_mask, after_mask, l)
}

/// Core subset DP. `before_mask`/`after_mask` encode the precedence rule:
/// a goal in `after_mask` may only be appended once every goal in
/// `before_mask` has been visited.
fn solve_visit_order_masked(
    dm: &DistanceMatrix,
    before_mask: u32,
    after_mask: u32,
    l: usize,
) -> Option<VisitOrder> {
    debug_assert!(l <= EXACT_SOLVE_CAP, "goal count {l} beyond exact-solve cap");
    if l == 0 {
        return Some(VisitOrder {
            order: Vec::new(),
            total_cost: 0,
        });
    }

    let full: u32 = (1 << l) - 1;
    let masks = 1usize << l;
    // remaining[mask][last]: cheapest completion after visiting `mask`,
    // standing at `last` (0 = start, i + 1 = goal i)
    let mut remaining: Vec<Vec<Option<usize>>> = vec![vec![None; l + 1]; masks];

    let appendable = |goal: usize, mask: u32| -> bool {
        (after_mask >> goal) & 1 == 0 || (mask & before_mask) == before_mask
    };

    for mask in (0..masks as u32).rev() {
        for last in 0..=l {
            // `last` must be consistent with the visited set
            if last > 0 && (mask >> (last - 1)) & 1 == 0 {
                continue;
            }
            if last == 0 && mask != 0 {
                continue;
            }
            if mask == full {
                remaining[mask as usize][last] = Some(0);
                continue;
            }
            let mut best: Option<usize> = None;
            for goal in 0..l {
                if (mask >> goal) & 1 == 1 || !appendable(goal, mask) {
                    continue;
                }
                let Some(step) = dm.dist[last][goal + 1] else {
                    continue;
                };
                let Some(rest) = remaining[(mask | (1 << goal)) as usize][goal + 1] else {
                    continue;
                };
                let cost = step + rest;
                if best.is_none_or(|b| cost < b) {
                    best = Some(cost);
                }
            }
            remaining[mask as usize][last] = best;
        }
    }

    let total_cost = remaining[0][0]?;

    // Greedy forward reconstruction; ties resolved toward the smallest
    // goal index, which yields the lexicographically smallest optimum.
    let mut order = Vec::with_capacity(l);
    let mut mask = 0u32;
    let mut last = 0usize;
    while mask != full {
        let mut chosen = None;
        for goal in 0..l {
            if (mask >> goal) & 1 == 1 || !appendable(goal, mask) {
                continue;
            }
            let (Some(step), Some(rest)) = (
                dm.dist[last][goal + 1],
                remaining[(mask | (1 << goal)) as usize][goal + 1],
            ) else {
                continue;
            };
            if step + rest == remaining[mask as usize][last].unwrap() {
                chosen = Some(goal);
                break;
            }
        }
        let goal = chosen.expect("optimal completion always has a next goal");
        order.push(goal);
        mask |= 1 << goal;
        last = goal + 1;
    }

    Some(VisitOrder { order, total_cost })
}

/// Full multi-goal gold plan: A* segments stitched along the optimal visit
/// order, with an `Inspect` emitted on arrival at each goal.
pub fn assemble_multigoal_plan(
    env: &Environment,
    start: Coordinate,
    goals: &[Coordinate],
    constraint: Option<&OrderingConstraint>,
) -> Gold {
    let dm = pairwise_distances(env, start, goals);
    let Some(visit) = solve_visit_order(&dm, constraint) else {
        return Gold::Unreachable;
    };
    let mut actions = Vec::with_capacity(visit.total_cost + goals.len());
    let mut pos = start;
    for &goal_idx in &visit.order {
        let goal = goals[goal_idx];
        let leg = astar_shortest_path(env, pos, goal)
            .expect("visit order only spans connected points");
        actions.extend(leg.actions);
        actions.push(Action::Inspect);
        pos = goal;
    }
    let plan = Plan::from_actions(actions);
    debug_assert_eq!(plan.move_count, visit.total_cost);
    Gold::Plan(plan)
}

/// Single-goal gold plan.
pub fn single_goal_plan(env: &Environment, start: Coordinate, goal: Coordinate) -> Gold {
    match astar_shortest_path(env, start, goal) {
        Some(plan) => Gold::Plan(plan),
        None => Gold::Unreachable,
    }
}

/// Minimum moves still needed to finish a multi-goal task from `from`,
/// given the goals already inspected. Remaining precedence is induced
/// from the original constraint restricted to un-inspected goals.
/// Returns `None` when the remainder cannot be completed.
pub fn remaining_task_cost(
    env: &Environment,
    from: Coordinate,
    goals: &[Coordinate],
    constraint: Option<&OrderingConstraint>,
    inspected: &[usize],
) -> Option<usize> {
    let done: BTreeSet<usize> = inspected.iter().copied().collect();
    let remaining: Vec<usize> = (0..goals.len()).filter(|i| !done.contains(i)).collect();
    if remaining.is_empty() {
        return Some(0);
    }
    let remaining_goals: Vec<Coordinate> = remaining.iter().map(|&i| goals[i]).collect();
    let (mut before_mask, mut after_mask) = (0u32, 0u32);
    if let Some(c) = constraint {
        for (new_idx, &orig) in remaining.iter().enumerate() {
            if c.before.contains(&orig) {
                before_mask |= 1 << new_idx;
            }
            if c.after.contains(&orig) {
                after_mask |= 1 << new_idx;
            }
        }
    }
    let dm = pairwise_distances(env, from, &remaining_goals);
    solve_visit_order_masked(&dm, before_mask, after_mask, remaining.len())
        .map(|v| v.total_cost)
}

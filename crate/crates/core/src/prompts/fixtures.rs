//! Stock prompt exemplars, stored as literal data so prompt bytes never
//! depend on solver behavior.

/// A task demonstration with its expected response line.
#[derive(Clone, Copy, Debug)]
pub struct Exemplar {
    pub id: &'static str,
    pub task: &'static str,
    pub response: &'static str,
}

/// One reason/act/observe round of an interactive demonstration.
#[derive(Clone, Copy, Debug)]
pub struct ReactTurn {
    pub thought: &'static str,
    pub act: &'static str,
    pub obs: &'static str,
}

/// An interactive demonstration: a task plus its dialogue turns.
#[derive(Clone, Copy, Debug)]
pub struct ReactExemplar {
    pub id: &'static str,
    pub task: &'static str,
    pub turns: &'static [ReactTurn],
}

pub const TASK_HEADER: &str = "Provide a sequence of actions to navigate a world to reach a goal similarly to the examples below. (0,0) is located in the upper-left corner and (M, N) lies in the M row and N column.";

pub const ORDERING_HEADER: &str = "Provide a plan to navigate a world to reach all the goals while satisfying any constraints similarly to the examples below. (0,0) is located in the upper-left corner and (M, N) lies in the M row and N column.";

pub const ORDERING_OPTIMAL_HEADER: &str = "Provide an optimal plan to navigate a world to reach all the goals while satisfying any constraints similarly to the examples below. (0,0) is located in the upper-left corner and (M, N) lies in the M row and N column. A path is optimal if it satisfies the constraints using the minimum number of actions";

/// Prefix carried by responses in the optimal-ordering variant.
pub const OPTIMAL_ORDER_PREFIX: &str = "The optimal plan is: ";

pub const NAIVE_5: &[Exemplar] = &[
    Exemplar {
        id: "naive5/0",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). Go from (0,1) to (3,4)",
        response: "right right right down down down",
    },
    Exemplar {
        id: "naive5/1",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,5) and (1,2). Go from (5,4) to (0,5)",
        response: "up up up up up right",
    },
    Exemplar {
        id: "naive5/2",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (2,5) and (5,2). Go from (4,2) to (0,5)",
        response: "up up up right right up right",
    },
    Exemplar {
        id: "naive5/3",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (3,5), (4,2), (3,3) and (0,4). Go from (1,5) to (3,1)",
        response: "left left left left down down",
    },
    Exemplar {
        id: "naive5/4",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,5), (5,2), (0,4), (1,4) and (0,1). Go from (4,2) to (1,2)",
        response: "up up up",
    },
];

pub const NAIVE_10: &[Exemplar] = &[
    Exemplar {
        id: "naive10/0",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). Go from (0,1) to (3,4)",
        response: "right right right down down down",
    },
    Exemplar {
        id: "naive10/1",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,4). Go from (5,4) to (2,4)",
        response: "up up up",
    },
    Exemplar {
        id: "naive10/2",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,4) and (1,5). Go from (0,5) to (1,1)",
        response: "Goal not reachable",
    },
    Exemplar {
        id: "naive10/3",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,5) and (5,0). Go from (5,5) to (0,1)",
        response: "up up up left up up left left left",
    },
    Exemplar {
        id: "naive10/4",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (2,5) and (5,2). Go from (4,2) to (0,5)",
        response: "up up up right right up right",
    },
    Exemplar {
        id: "naive10/5",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (2,1) and (4,2). Go from (1,5) to (0,5)",
        response: "up",
    },
    Exemplar {
        id: "naive10/6",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,4), (4,4), (5,3) and (4,5). Go from (0,4) to (5,5)",
        response: "Goal not reachable",
    },
    Exemplar {
        id: "naive10/7",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (5,1), (4,4), (1,4) and (1,5). Go from (5,5) to (3,0)",
        response: "up up left left left left left",
    },
    Exemplar {
        id: "naive10/8",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,5), (5,2), (0,4), (1,4) and (0,1). Go from (4,2) to (1,2)",
        response: "up up up",
    },
    Exemplar {
        id: "naive10/9",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,5), (5,0), (5,4), (0,0) and (5,3). Go from (5,2) to (2,4)",
        response: "up up up right right",
    },
];

pub const NAIVE_15: &[Exemplar] = &[
    Exemplar {
        id: "naive15/0",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). Go from (0,1) to (3,4)",
        response: "right right right down down down",
    },
    Exemplar {
        id: "naive15/1",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,4). Go from (5,4) to (2,4)",
        response: "up up up",
    },
    Exemplar {
        id: "naive15/2",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (5,3). Go from (2,4) to (4,3)",
        response: "left down down",
    },
    Exemplar {
        id: "naive15/3",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,4) and (1,5). Go from (0,5) to (1,1)",
        response: "Goal not reachable",
    },
    Exemplar {
        id: "naive15/4",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,5) and (5,0). Go from (5,5) to (0,1)",
        response: "up up up left up up left left left",
    },
    Exemplar {
        id: "naive15/5",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (4,3) and (2,3). Go from (5,5) to (5,4)",
        response: "left",
    },
    Exemplar {
        id: "naive15/6",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (2,5) and (5,2). Go from (4,2) to (0,5)",
        response: "up up up right right up right",
    },
    Exemplar {
        id: "naive15/7",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (2,1) and (4,2). Go from (1,5) to (0,5)",
        response: "up",
    },
    Exemplar {
        id: "naive15/8",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,0), (0,0) and (1,3). Go from (3,2) to (3,1)",
        response: "left",
    },
    Exemplar {
        id: "naive15/9",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (3,5), (4,2), (3,3) and (0,4). Go from (1,5) to (3,1)",
        response: "left left left left down down",
    },
    Exemplar {
        id: "naive15/10",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (5,1), (4,4), (1,4) and (1,5). Go from (5,5) to (3,0)",
        response: "up up left left left left left",
    },
    Exemplar {
        id: "naive15/11",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,4), (4,4), (5,3) and (4,5). Go from (0,4) to (5,5)",
        response: "Goal not reachable.",
    },
    Exemplar {
        id: "naive15/12",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,5), (5,2), (0,4), (1,4) and (0,1). Go from (4,2) to (1,2)",
        response: "up up up",
    },
    Exemplar {
        id: "naive15/13",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,5), (5,0), (5,4), (0,0) and (5,3). Go from (5,2) to (2,4)",
        response: "up up up right right",
    },
    Exemplar {
        id: "naive15/14",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (3,0), (2,3), (1,2), (2,5) and (0,0). Go from (4,3) to (5,4)",
        response: "right down",
    },
];

pub const ACTION_EFFECT: &[Exemplar] = &[
    Exemplar {
        id: "ae/0",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). Go from (0,1) to (3,4)",
        response: "Go right. You are now at (0,2). Go right. You are now at (0,3). Go right. You are now at (0,4). Go down. You are now at (1,4). Go down. You are now at (2,4). Go down. You are now at (3,4). Hence, the action sequence is: right right right down down down",
    },
    Exemplar {
        id: "ae/1",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,5) and (1,2). Go from (5,4) to (0,5)",
        response: "Go up. You are now at (4,4). Go up. You are now at (3,4). Go up. You are now at (2,4). Go up. You are now at (1,4). Go up. You are now at (0,4). Go right. You are now at (0,5). Hence, the action sequence is: up up up up up right",
    },
    Exemplar {
        id: "ae/2",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (2,5) and (5,2). Go from (4,2) to (0,5)",
        response: "Go up. You are now at (3,2). Go up. You are now at (2,2). Go up. You are now at (1,2). Go right. You are now at (1,3). Go right. You are now at (1,4). Go up. You are now at (0,4). Go right. You are now at (0,5). Hence, the action sequence is: up up up right right up right",
    },
    Exemplar {
        id: "ae/3",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (3,5), (4,2), (3,3) and (0,4). Go from (1,5) to (3,1)",
        response: "Go left. You are now at (1,4). Go left. You are now at (1,3). Go left. You are now at (1,2). Go left. You are now at (1,1). Go down. You are now at (2,1). Go down. You are now at (3,1). Hence, the action sequence is: left left left left down down",
    },
    Exemplar {
        id: "ae/4",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,5), (5,2), (0,4), (1,4) and (0,1). Go from (4,2) to (1,2)",
        response: "Go up. You are now at (3,2). Go up. You are now at (2,2). Go up. You are now at (1,2). Hence, the action sequence is: up up up",
    },
    Exemplar {
        id: "ae/5",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,4) and (1,5). Go from (0,5) to (1,1)",
        response: "Goal not reachable.",
    },
    Exemplar {
        id: "ae/6",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,4), (4,4), (5,3) and (4,5). Go from (0,4) to (5,5)",
        response: "Goal not reachable.",
    },
];

pub const COT: &[Exemplar] = &[
    Exemplar {
        id: "cot/0",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). Go from (0,1) to (3,4)",
        response: "(3,4) is 3 steps down and 3 steps to the right of (0,1). To avoid the obstacle at (2,1), which is 2 steps down from (0,1), I should start by moving right. Therefore, my action sequence is: right right right down down down.",
    },
    Exemplar {
        id: "cot/1",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,5) and (1,2). Go from (5,4) to (0,5)",
        response: "(0,5) is 5 steps up and 1 step to the right of (5,4). To avoid the obstacle at (1,5), which is 4 steps up and 1 step to the right from (5,4), I should move right last. Therefore, my action sequence is: up up up up up right.",
    },
    Exemplar {
        id: "cot/2",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (2,5) and (5,2). Go from (4,2) to (0,5)",
        response: "(0,5) is 4 steps up and 3 steps to the right of (4,2). I can start by going up. To avoid the obstacle at (0,3), which is 4 steps up and 1 step to the right of (4,2), I should take a right at (1,3). Therefore my action sequence is: up up up right right up right",
    },
    Exemplar {
        id: "cot/3",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (3,5), (4,2), (3,3) and (0,4). Go from (1,5) to (3,1)",
        response: "(3,1) is 4 steps to the left and 2 steps to the right of (1,5). No obstacles fall on this path. Therefore my action sequence is: left left left left down down.",
    },
    Exemplar {
        id: "cot/4",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,5), (5,2), (0,4), (1,4) and (0,1). Go from (4,2) to (1,2)",
        response: "(1,2) is 3 steps up from (4,2). No obstacles fall on this path. Therefore my action sequence is: up up up.",
    },
    Exemplar {
        id: "cot/5",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,4) and (1,5). Go from (0,5) to (1,1)",
        response: "(0,5) is surrounded by obstacles. Therefore, the goal is not reachable from my location.",
    },
    Exemplar {
        id: "cot/6",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,4), (4,4), (5,3) and (4,5). Go from (0,4) to (5,5)",
        response: "(5,5) is surrounded by obstacles. Therefore, the goal is not reachable from my location.",
    },
];

// The second demonstration originally misprinted the blocking obstacle as
// (4,3); the observation and thought lines below name the cells actually
// hit so that re-simulating every turn reproduces the transcript.
pub const REACT: &[ReactExemplar] = &[
    ReactExemplar {
        id: "react/0",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,3), (5,5) and (5,2). Go from (0,4) to (5,0)",
        turns: &[ReactTurn {
            thought: "(5,0) is 5 steps down and 4 steps to the left of (0,4). To avoid the obstacle at (2,3), which is 2 steps down and 1 step to the left from (0,4), I should move left first.",
            act: "left left left left down down down down down.",
            obs: "Performing the action sequence leads to (5,0). The task has been solved.",
        }],
    },
    ReactExemplar {
        id: "react/1",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (3,0), (1,5), (3,4), (5,2) and (5,3). Go from (1,4) to (4,0)",
        turns: &[
            ReactTurn {
                thought: "(4,0) is 3 steps down and 4 steps to the left of (1,4). To avoid the obstacle at (3,0), which is 2 steps down and 4 steps to the left from (1,4), I should move left last.",
                act: "down down down left left left left.",
                obs: "After executing the first step, I am at (2,4). If I execute the next step I will run into the obstacle at (3,4).",
            },
            ReactTurn {
                thought: "I have to find a path to get to (4,0) from (2,4). (4,0) is 2 steps down and 4 steps to the left from (2,4). In order to avoid the obstacle at (3,4), which is one step down, I have to start by moving left first.",
                act: "left left left left down down",
                obs: "After executing the first 4 steps, I am at (2,0). If I execute the next step I will run into the obstacle at (3,0).",
            },
            ReactTurn {
                thought: "I have to find a path to get to (4,0) from (2,0). (4,0) is 2 steps down from (2,0). In order to avoid the obstacle at (3,0), which is one step down, I have to move right, then take two steps down, then move left.",
                act: "right down down left",
                obs: "Performing the action sequence leads to (4,0). The task has been solved.",
            },
        ],
    },
    ReactExemplar {
        id: "react/2",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,5), (3,5), (0,0), (4,5) and (4,4). Go from (1,1) to (5,0)",
        turns: &[ReactTurn {
            thought: "(5,0) is 4 steps down and 1 step to the left of (1,1). To avoid the obstacle at (0,0), which is 1 step up and 1 step to the left from (1,1), I should move down first.",
            act: "down down down down left.",
            obs: "Performing the action sequence leads to (5,0). The task has been solved.",
        }],
    },
    ReactExemplar {
        id: "react/3",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (5,5), (5,0), (3,5) and (4,0). Go from (3,4) to (1,3)",
        turns: &[ReactTurn {
            thought: "(1,3) is 2 steps up and 1 step to the left of (3,4). No obstacles fall on this path.",
            act: "up up left",
            obs: "Performing the action sequence leads to (1,3). The task has been solved.",
        }],
    },
    ReactExemplar {
        id: "react/4",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,3), (4,2), (3,3) and (1,4). Go from (3,2) to (4,4)",
        turns: &[
            ReactTurn {
                thought: "(4,4) is 1 step down and 2 step to the right of (3,2). To avoid the obstacle at (3,3) which is one step to the right, I have to go down first",
                act: "down left left",
                obs: "If I execute the first step I will run into the obstacle at (4,2).",
            },
            ReactTurn {
                thought: "I have to find a path to get to (4,4) from (3,2). (4,4) is 1 step down and 2 step to the right of (3,2). In order to avoid the obstacle at (4,2) which is one step down, and the obstacle at (3,3) which one step to the right, I have to move up, take two steps to the right and two steps down.",
                act: "up right right down down",
                obs: "Performing the action sequence leads to (4,4). The task has been solved.",
            },
        ],
    },
    ReactExemplar {
        id: "react/5",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,3), (1,2), (3,5) and (0,1). Go from (0,2) to (3,1)",
        turns: &[
            ReactTurn {
                thought: "(3,1) is 3 steps down and 1 step to the left of (0,2). To avoid the obstacle at (1,2), which is 1 step down from (0,2), I should start by moving down.",
                act: "down down down left",
                obs: "If I execute the first step I will run into the obstacle at (1,2).",
            },
            ReactTurn {
                thought: "(0,2) is surrounded by obstacles. Therefore, the goal is not reachable from my location.",
                act: "No action",
                obs: "No action is to be performed. The goal is not reachable. The task has been solved.",
            },
        ],
    },
    ReactExemplar {
        id: "react/6",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,5), (5,2), (0,4), (1,4) and (0,1). Go from (4,1) to (1,5)",
        turns: &[
            ReactTurn {
                thought: "(1,5) is 3 steps up and 4 steps to the right of (4,1). To avoid the obstacle at (2,5), which is 2 steps up and 4 steps to the right from (4,1), I should move right last.",
                act: "up up up right right right right",
                obs: "After executing the first 5 steps, I am at (1,3). If I execute the next step I will run into the obstacle at (1,4).",
            },
            ReactTurn {
                thought: "(1,5) is surrounded by obstacles. Therefore, the goal is not reachable from my location.",
                act: "No action",
                obs: "No action is to be performed. The goal is not reachable. The task has been solved.",
            },
        ],
    },
];

pub const ORDERING: &[Exemplar] = &[
    Exemplar {
        id: "ordering/0",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (5,2), (2,3) and (5,0). You are at (0,2). You have to visit p0, p1, p2, p3 and p4. p0 is located at (3,5), p1 is located at (5,4), p2 is located at (2,4), p3 is located at (3,2) and p4 is located at (4,4). Visit p1 and p3 before p0, p2 and p4.",
        response: "p3, p1, p4, p2, p0",
    },
    Exemplar {
        id: "ordering/1",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,5), (0,2) and (4,5). You are at (4,2). You have to visit p0, p1, p2, p3 and p4. p0 is located at (0,1), p1 is located at (2,2), p2 is located at (1,2), p3 is located at (5,3) and p4 is located at (5,5).",
        response: "p3, p4, p1, p2, p0",
    },
    Exemplar {
        id: "ordering/2",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (1,0), (3,3) and (1,1). You are at (3,5). You have to visit p0, p1, p2, p3, p4 and p5. p0 is located at (1,3), p1 is located at (0,4), p2 is located at (4,0), p3 is located at (2,4), p4 is located at (5,0) and p5 is located at (5,4). Visit p4, p3 and p2 before p0, p1 and p5.",
        response: "p3, p2, p4, p5, p0, p1",
    },
    Exemplar {
        id: "ordering/3",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (0,1). You are at (4,0). You have to visit p0, p1, p2, p3 and p4. p0 is located at (3,2), p1 is located at (1,1), p2 is located at (2,2), p3 is located at (0,4) and p4 is located at (1,5). Visit p2 and p3 before p0, p1 and p4",
        response: "p2, p3, p4, p1, p0",
    },
    Exemplar {
        id: "ordering/4",
        task: "You are in a 6 by 6 world. There are obstacles that you have to avoid at: (2,1). You are at (5,3). You have to visit p0 and p1. p0 is located at (2,5) and p1 is located at (2,2). Visit p1 before p0",
        response: "p1, p0",
    },
];

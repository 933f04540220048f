use obtower_core::Budget;
use serde_json::{json, Value};

use crate::run::execute;
use crate::schema::ProblemSpec;

/// A named built-in problem and the check applied to its result.
struct Check {
    name: &'static str,
    problem: Value,
    accept: fn(&Value) -> bool,
}

fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "Q8 tower, identity on V4 is obstructed at level 2",
            problem: json!({"schema": 1, "kind": "tower", "pi": {"catalog": "Q8"}, "depth": 2, "start_level": 1, "psi0": "identity", "verify": true}),
            accept: |r| {
                let l = &r["lift"]["levels"][0];
                l["level"] == 2 && l["obstruction_zero"] == false && l["verified"] == true
            },
        },
        Check {
            name: "Q8 tower, Z/4 onto a Z/2 factor lifts",
            problem: json!({"schema": 1, "kind": "tower", "pi": {"catalog": "Q8"}, "depth": 2, "start_level": 1,
                            "source": {"catalog": "C4"}, "psi0": {"images": [1]}, "verify": true}),
            accept: |r| r["lift"]["complete"] == true && r["lift"]["levels"][0]["verified"] == true,
        },
        Check {
            name: "cohomology of Z/2 with Z/2 coefficients",
            problem: json!({"schema": 1, "kind": "cohomology", "group": {"catalog": "C2"}, "module": {"factors": [2]}, "up_to": 3}),
            accept: |r| (0..4).all(|n| r["cohomology"][n]["invariants"] == json!([2])),
        },
        Check {
            name: "two-place diagonal system",
            problem: json!({"schema": 1, "kind": "reciprocity", "global": {"catalog": "C2"},
                            "places": [{"label": "p"}, {"label": "q"}], "module": {"factors": [2]}, "up_to": 3,
                            "local_classes": [[[1], [0]], [[1], [1]]]}),
            accept: |r| {
                r["degrees"][2]["compact_support"] == json!([2])
                    && r["les"]["exact"] == true
                    && r["reciprocity"][0]["vanishes"] == false
                    && r["reciprocity"][1]["vanishes"] == true
            },
        },
        Check {
            name: "L_1 weights for m_max = 10",
            problem: json!({"schema": 1, "kind": "lie", "ls": {"m_max": 10, "s": 1}}),
            accept: |r| {
                r["weights"] == json!({"1": 22, "4": 3, "6": 5, "8": 7, "10": 9, "12": 11}) && r["positive_weights"] == true
            },
        },
        Check {
            name: "Hall basis against Witt for two generators",
            problem: json!({"schema": 1, "kind": "lie", "hall": {"generator_weights": [0, 0], "max_degree": 8}}),
            accept: |r| r["degrees"].as_array().is_some_and(|d| d.iter().all(|x| x["agree"] == true)) && r["degrees"][4]["hall"] == 6,
        },
        Check {
            name: "simplicial suites at truncation 3",
            problem: json!({"schema": 1, "kind": "simplicial-check", "truncation": 3, "seed": 1,
                            "extensions": 4, "abelian_inputs": 4, "bisimplicial": 4,
                            "explicit": [{"group": {"catalog": "S3"}, "kernel": [2]}, {"group": {"catalog": "C4"}, "kernel": [2]}]}),
            accept: |r| r["all_pass"] == true,
        },
    ]
}

/// Runs every built-in check; the flag is whether all of them passed.
pub fn run(budget: &Budget, jobs: usize) -> (Value, bool) {
    let mut rows = Vec::new();
    for c in checks() {
        let spec: ProblemSpec = serde_json::from_value(c.problem).expect("built-in problems parse");
        let (pass, detail) = match execute(&spec.problem, budget, jobs) {
            Ok(r) => ((c.accept)(&r), Value::Null),
            Err(e) => (false, Value::String(e.to_string())),
        };
        rows.push(json!({ "name": c.name, "pass": pass, "error": detail }));
    }
    let all_pass = rows.iter().all(|r| r["pass"] == true);
    (json!({ "checks": rows, "all_pass": all_pass }), all_pass)
}

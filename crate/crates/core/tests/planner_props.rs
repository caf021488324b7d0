mod common;

use common::random_instance;
use obtea_core::bt::{simulate, tick};
use obtea_core::planner::{
    baseline_subgoals, compact, obtea_subgoals, plan_subgoal, reachable_states, shortest_plan,
    PlanError,
};
use obtea_core::world::{AtomId, ConditionSet, Lit};
use obtea_core::Cost;
use proptest::prelude::*;

const BOUND: usize = 1 << 12;

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn optimal_cost_matches_forward_search(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let oracle = shortest_plan(&inst.s0, &inst.goals, &inst.domain, BOUND).unwrap();
        match obtea_subgoals(&inst.goals, &inst.s0, &inst.domain, 3) {
            Ok(r) => {
                let oracle = oracle.expect("planner found a plan the oracle missed");
                prop_assert_eq!(r.cost(), oracle.cost);
                prop_assert_eq!(r.min_cost(), oracle.cost);
            }
            Err(PlanError::NoFeasibleSubgoal) => prop_assert!(oracle.is_none()),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn regression_candidates_match_the_definition(
        seed in any::<u64>(),
        picks in proptest::collection::vec((0u32..7, any::<bool>()), 0..5),
    ) {
        let inst = random_instance(seed);
        let n = inst.domain.literal_count() as u32;
        let c = ConditionSet::from_lits(
            picks.iter().filter(|(a, _)| *a < n).map(|&(a, neg)| Lit::new(AtomId(a), neg)),
        );
        prop_assume!(c.is_consistent());
        let expected: Vec<_> = inst
            .domain
            .action_ids()
            .filter(|&id| {
                let a = inst.domain.action(id);
                !c.intersects(a.eff_del())
                    && (c.intersects(a.pre()) || c.intersects(a.eff_add()))
                    && a.pre().union(&c.difference(a.eff_add())).is_consistent()
            })
            .collect();
        prop_assert_eq!(inst.domain.regression_candidates(&c), expected);
    }

    #[test]
    fn planned_tree_executes_at_reported_cost(seed in any::<u64>(), depth in 0usize..5) {
        let inst = random_instance(seed);
        let Ok(r) = obtea_subgoals(&inst.goals, &inst.s0, &inst.domain, depth) else { return Ok(()) };
        let budget = r.stats.expanded as u64 + 1;
        let tr = simulate(&r.tree, &inst.s0, &inst.domain, budget).unwrap();
        prop_assert!(tr.succeeded());
        prop_assert_eq!(tr.total_cost, r.cost());
        prop_assert!(tr.root_ticks <= budget);
    }

    #[test]
    fn baseline_never_beats_optimal(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let o = obtea_subgoals(&inst.goals, &inst.s0, &inst.domain, 3);
        let b = baseline_subgoals(&inst.goals, &inst.s0, &inst.domain);
        match (o, b) {
            (Ok(o), Ok(b)) => {
                let tr = simulate(&b.tree, &inst.s0, &inst.domain, 10_000).unwrap();
                prop_assert!(tr.succeeded());
                prop_assert_eq!(tr.total_cost, b.cost());
                prop_assert!(o.cost() <= b.cost());
            }
            (Err(PlanError::NoFeasibleSubgoal), Err(PlanError::NoFeasibleSubgoal)) => {}
            (o, b) => panic!("feasibility differs: {:?} vs {:?}", o.is_ok(), b.is_ok()),
        }
    }

    #[test]
    fn compaction_preserves_selection(seed in any::<u64>(), depth in 1usize..6) {
        let inst = random_instance(seed);
        let states = reachable_states(&inst.s0, &inst.domain, BOUND).unwrap();
        for g in &inst.goals {
            let plan = plan_subgoal(g, &inst.s0, &inst.domain).unwrap();
            let small = compact(&plan.tree, depth);
            prop_assert_eq!(small.action_leaf_count(), plan.tree.action_leaf_count());
            for s in &states {
                prop_assert_eq!(tick(&small, s).status, tick(&plan.tree, s).status);
            }
        }
    }

    #[test]
    fn expanded_conditions_are_optimal_entry_points(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let states = reachable_states(&inst.s0, &inst.domain, BOUND).unwrap();
        for g in &inst.goals {
            let plan = plan_subgoal(g, &inst.s0, &inst.domain).unwrap();
            let d_of = |c: &obtea_core::world::ConditionSet| {
                if c == g {
                    Cost::ZERO
                } else {
                    plan.records.iter().find(|r| &r.condition == c).unwrap().cost_to_goal
                }
            };
            for rec in &plan.records {
                let step = inst.domain.action(rec.via_action).cost();
                prop_assert_eq!(rec.cost_to_goal, d_of(&rec.target) + step);
                for s in states.iter().filter(|s| rec.condition.holds(s)) {
                    let tr = simulate(&plan.tree, s, &inst.domain, 1_000).unwrap();
                    prop_assert!(tr.succeeded());
                    prop_assert!(tr.total_cost <= rec.cost_to_goal);
                    let best = shortest_plan(s, std::slice::from_ref(g), &inst.domain, BOUND)
                        .unwrap()
                        .unwrap();
                    prop_assert!(best.cost <= tr.total_cost);
                }
            }
        }
    }
}

#[test]
fn remaining_cost_along_execution_equals_recorded_cost() {
    for seed in 0..300u64 {
        let inst = random_instance(seed);
        let Ok(r) = obtea_subgoals(&inst.goals, &inst.s0, &inst.domain, 0) else {
            continue;
        };
        let first = &r.per_subgoal[0];
        let plan = plan_subgoal(&first.goal, &inst.s0, &inst.domain).unwrap();
        let tr = simulate(&plan.tree, &inst.s0, &inst.domain, 1_000).unwrap();
        assert!(tr.succeeded());
        for (k, s) in tr.states[..tr.executed.len()].iter().enumerate() {
            let rec = plan
                .records
                .iter()
                .find(|rec| rec.condition.holds(s))
                .unwrap();
            let remaining: Cost = tr.executed[k..]
                .iter()
                .map(|&a| inst.domain.action(a).cost())
                .sum();
            assert_eq!(remaining, rec.cost_to_goal, "seed {seed} step {k}");
        }
    }
}

#[test]
fn generator_produces_nontrivial_instances() {
    let mut planned = 0;
    let mut multi_step = 0;
    for seed in 0..200u64 {
        let inst = random_instance(seed);
        if let Ok(r) = obtea_subgoals(&inst.goals, &inst.s0, &inst.domain, 3) {
            planned += 1;
            let tr = simulate(&r.tree, &inst.s0, &inst.domain, 1_000).unwrap();
            if tr.executed.len() >= 2 {
                multi_step += 1;
            }
        }
    }
    assert!(planned >= 100, "{planned}");
    assert!(multi_step >= 30, "{multi_step}");
}

#[test]
fn compaction_lowers_total_condition_ticks() {
    let (mut uncompacted, mut compacted) = (0u64, 0u64);
    for seed in 0..1000u64 {
        let inst = random_instance(seed);
        let Ok(nc) = obtea_subgoals(&inst.goals, &inst.s0, &inst.domain, 0) else {
            continue;
        };
        let c = obtea_subgoals(&inst.goals, &inst.s0, &inst.domain, 3).unwrap();
        uncompacted += simulate(&nc.tree, &inst.s0, &inst.domain, 1_000)
            .unwrap()
            .condition_ticks;
        compacted += simulate(&c.tree, &inst.s0, &inst.domain, 1_000)
            .unwrap()
            .condition_ticks;
    }
    assert!(compacted < uncompacted, "{compacted} >= {uncompacted}");
}

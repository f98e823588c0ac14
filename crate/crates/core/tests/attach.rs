mod common;

use pcn_attach::attach::{
    brute_force_oracle, brute_force_with_cap, continuous_local_search, exhaustive_discrete,
    exhaustive_discrete_with_cap, greedy_fixed, greedy_with_locks, local_search, AttachProblem,
};
use pcn_attach::equilibrium::{make_topology, Topology};
use pcn_attach::utility::ObjectiveKind;
use pcn_attach::{Action, Coins, Error, ExtReal, GlobalParams, Node, NodeId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_connected, random_joiner, random_params};

fn star_problem(budget: u64) -> AttachProblem {
    let g = make_topology(Topology::Star, 4).unwrap();
    let params = GlobalParams { c: Coins(2), f_avg_t: 0.2, ..GlobalParams::default() };
    AttachProblem::new(g, Node::new("j", 2.0, 1.0), Coins(budget), params).unwrap()
}

fn fixed_actions(p: &AttachProblem, lock: u64) -> Vec<Action> {
    p.candidates.iter().map(|v| Action::new(v.clone(), lock)).collect()
}

#[test]
fn problem_construction_is_checked() {
    let g = make_topology(Topology::Path, 3).unwrap();
    let p = GlobalParams::default();
    let j = Node::new("j", 1.0, 1.0);
    assert!(AttachProblem::new(g.clone(), j.clone(), Coins(0), p.clone()).is_err());
    assert!(matches!(
        AttachProblem::new(g.clone(), Node::new("v1", 1.0, 1.0), Coins(5), p.clone()),
        Err(Error::DuplicateNode(_))
    ));
    assert!(matches!(
        AttachProblem::with_candidates(g.clone(), j.clone(), Coins(5), p.clone(), vec!["zz".into()]),
        Err(Error::UnknownNode(_))
    ));
    let only = AttachProblem::with_candidates(g, j, Coins(5), p, vec!["v2".into(), "v0".into(), "v2".into()]).unwrap();
    assert_eq!(only.candidates, vec![NodeId::new("v0"), NodeId::new("v2")]);
}

#[test]
fn greedy_with_one_candidate_takes_it() {
    let g = make_topology(Topology::Star, 3).unwrap();
    let p = AttachProblem::with_candidates(g, Node::new("j", 1.0, 1.0), Coins(10), GlobalParams::default(), vec!["v2".into()])
        .unwrap();
    let r = greedy_fixed(&p, Coins(1)).unwrap();
    assert_eq!(r.strategy.actions, vec![Action::new("v2", 1u64)]);
    assert!(r.objective_value.is_finite());
}

#[test]
fn greedy_prefers_the_hub() {
    let r = greedy_fixed(&star_problem(6), Coins(1)).unwrap();
    assert_eq!(r.strategy.actions[0].peer, NodeId::new("v0"));
}

#[test]
fn greedy_is_deterministic() {
    let p = star_problem(12);
    let a = greedy_fixed(&p, Coins(1)).unwrap();
    let b = greedy_fixed(&p, Coins(1)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn error_cases() {
    let p = star_problem(5);
    assert!(matches!(greedy_fixed(&p, Coins(4)), Err(Error::EmptyBudget)));
    assert!(matches!(
        exhaustive_discrete_with_cap(&p, Coins(1), 3),
        Err(Error::DivisionSpaceTooLarge { cap: 3, .. })
    ));
    let omega = fixed_actions(&p, 0);
    assert!(matches!(
        brute_force_with_cap(&p, &omega, ObjectiveKind::Utility, None, 3),
        Err(Error::SpaceTooLarge { cap: 3, .. })
    ));
    // Fees of at least f_T per payment beat any on-chain saving of C / 2.
    let g = make_topology(Topology::Path, 3).unwrap();
    let pricey = GlobalParams { c: Coins(2), f_avg_t: 5.0, ..GlobalParams::default() };
    let q = AttachProblem::new(g, Node::new("j", 1.0, 1.0), Coins(16), pricey).unwrap();
    assert!(matches!(continuous_local_search(&q, 0.01), Err(Error::NoFeasibleCandidate)));
}

#[test]
fn brute_force_on_nothing() {
    let p = star_problem(5);
    let r = brute_force_oracle(&p, &[], ObjectiveKind::Utility).unwrap();
    assert!(r.strategy.is_empty());
    assert_eq!(r.objective_value, ExtReal::NegInf);
    // Nothing affordable either.
    let r = brute_force_oracle(&p, &[Action::new("v0", 10u64)], ObjectiveKind::Utility).unwrap();
    assert!(r.strategy.is_empty());
}

#[test]
fn whole_budget_unit_matches_zero_lock_greedy() {
    // With one unit equal to B every positive lock breaks the budget, so only
    // zero-lock channels remain.
    for budget in [4, 7, 10] {
        let p = star_problem(budget);
        let ex = exhaustive_discrete(&p, Coins(budget)).unwrap();
        let gr = greedy_fixed(&p, Coins(0)).unwrap();
        assert!(ex.strategy.actions.iter().all(|a| a.lock == Coins(0)));
        assert_eq!(ex.objective_value, gr.objective_value);
    }
}

#[test]
fn continuous_search_stays_in_budget() {
    // A busy joiner: the on-chain saving dwarfs fees and channel costs.
    let g = make_topology(Topology::Star, 4).unwrap();
    let params = GlobalParams { c: Coins(2), r: 0.01, f_avg_t: 0.05, ..GlobalParams::default() };
    let p = AttachProblem::new(g, Node::new("j", 100.0, 1.0), Coins(24), params).unwrap();
    let r = continuous_local_search(&p, 0.01).unwrap();
    assert!(p.is_feasible(&r.strategy.actions));
    assert!(r.objective_value.is_finite());
    assert!(r.strategy.actions.iter().all(|a| a.lock > Coins(0)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn results_are_feasible_and_ordered(seed in any::<u64>(), n in 2usize..=5, budget in 3u64..=8, lock in 0u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, 0.3);
        let p = AttachProblem::new(g, random_joiner(&mut rng), Coins(budget), random_params(&mut rng)).unwrap();
        let Ok(gr) = greedy_fixed(&p, Coins(lock)) else { return Ok(()); };
        prop_assert!(p.is_feasible(&gr.strategy.actions));
        let bf = brute_force_oracle(&p, &fixed_actions(&p, lock), ObjectiveKind::Simplified).unwrap();
        prop_assert!(p.is_feasible(&bf.strategy.actions));
        prop_assert!(bf.objective_value.to_f64() >= gr.objective_value.to_f64() - 1e-9);
        let ex = exhaustive_discrete(&p, Coins(1)).unwrap();
        prop_assert!(p.is_feasible(&ex.strategy.actions));
        // Every fixed-lock greedy run is one of the divisions searched.
        prop_assert!(ex.objective_value.to_f64() >= gr.objective_value.to_f64() - 1e-9);
    }

    #[test]
    fn greedy_gains_shrink(seed in any::<u64>(), n in 2usize..=6, lock in 0u64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, 0.3);
        let p = AttachProblem::new(g, random_joiner(&mut rng), Coins(1000), random_params(&mut rng)).unwrap();
        let ev = p.evaluator().unwrap();
        let run = greedy_with_locks(&ev, &vec![Coins(lock); n]).unwrap();
        prop_assert_eq!(run.gains[0], ExtReal::PosInf);
        for w in run.gains[1..].windows(2) {
            prop_assert!(w[1].to_f64() <= w[0].to_f64() + 1e-9);
        }
    }

    #[test]
    fn local_search_beats_every_singleton(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(&mut rng, n, 0.3);
        let p = AttachProblem::new(g, random_joiner(&mut rng), Coins(12), random_params(&mut rng)).unwrap();
        let ev = p.evaluator().unwrap();
        let omega: Vec<Action> = [0u64, 2].iter().flat_map(|&l| fixed_actions(&p, l)).collect();
        let found = local_search(&ev, &omega, 0.01).unwrap();
        prop_assert!(p.is_feasible(&found.actions));
        for a in &omega {
            let single = ev.objective(std::slice::from_ref(a), ObjectiveKind::Benefit).unwrap();
            prop_assert!(found.value.to_f64() >= single.to_f64() - 1e-9);
        }
    }
}

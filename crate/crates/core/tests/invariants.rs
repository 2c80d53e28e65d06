use proptest::prelude::*;
use qaoa_mis::oracle::reference_evolve;
use qaoa_mis::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), m))
            .prop_map(|(n, pairs, keep)| {
                let edges: Vec<_> = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
                Graph::new(n, &edges).unwrap()
            })
    })
}

fn params_strategy() -> impl Strategy<Value = AnsatzParams> {
    (1usize..=3).prop_flat_map(|p| {
        (
            proptest::collection::vec(0.0..AnsatzParams::GAMMA_MAX, p),
            proptest::collection::vec(0.0..AnsatzParams::BETA_MAX, p),
        )
            .prop_map(|(g, b)| AnsatzParams::new(g, b).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mis_mixer_keeps_independent_sets(g in graph_strategy(), params in params_strategy(), pick in any::<prop::sample::Index>()) {
        let feasible = g.enumerate_feasible().unwrap();
        let init = InitialState::Basis(feasible[pick.index(feasible.len())]);
        let inst = Instance::new(Problem::Mis, &g, Some(init)).unwrap();
        let state = inst.evolve(&params).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-10);
        prop_assert!(inst.leakage(&probabilities(&state)) < 1e-10);
    }

    #[test]
    fn simulator_matches_dense_reference(g in graph_strategy(), params in params_strategy(), mis in any::<bool>()) {
        let problem = if mis { Problem::Mis } else { Problem::MaxCut };
        let inst = Instance::new(problem, &g, None).unwrap();
        let reference = reference_evolve(&problem.cost(&g), &problem.mixer(&g), &params, &inst.initial).unwrap();
        prop_assert!(inst.evolve(&params).unwrap().distance(&reference) < 1e-8);
    }

    #[test]
    fn expectation_never_exceeds_optimum(g in graph_strategy(), params in params_strategy(), mis in any::<bool>()) {
        let problem = if mis { Problem::Mis } else { Problem::MaxCut };
        let inst = Instance::new(problem, &g, None).unwrap();
        let value = inst.expectation(&params).unwrap();
        prop_assert!(value <= inst.c_max + 1e-10);
        prop_assert!(value >= -1e-10);
    }

    #[test]
    fn maxcut_distribution_is_flip_symmetric(g in graph_strategy(), params in params_strategy()) {
        let inst = Instance::new(Problem::MaxCut, &g, None).unwrap();
        let probs = probabilities(&inst.evolve(&params).unwrap());
        let mask = probs.len() - 1;
        for (x, &p) in probs.iter().enumerate() {
            prop_assert!((p - probs[x ^ mask]).abs() < 1e-9);
        }
    }
}

#[test]
fn weighted_mis_prefers_heavy_node() {
    // star with a heavy centre: the centre alone beats all three leaves
    let g = Graph::new(4, &[(1, 2), (1, 3), (1, 4)]).unwrap().with_node_weights(vec![5.0, 1.0, 1.0, 1.0]).unwrap();
    let opt = brute_force_optimum(Problem::Mis, &g).unwrap();
    assert_eq!(opt.optimal_value, 5.0);
    assert_eq!(opt.optimizers.iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["0001"]);

    let out = vqe_optimize(Problem::Mis, &g, &VqeRunConfig::new(3, 10, 1)).unwrap();
    assert!(out.feasibility_leakage < 1e-10);
    assert!(out.approximation_ratio() <= 1.0 + 1e-12);
}

#[test]
fn weighted_maxcut_matches_enumeration() {
    let g = Graph::with_edge_weights(3, &[(1, 2, 2.5), (2, 3, 1.0), (1, 3, 0.5)]).unwrap();
    let cost = maxcut_cost(&g).diagonal_values().unwrap();
    for x in 0..8u64 {
        let s = NodeSubset::from_index(3, x);
        assert!((cost[x as usize] - g.cut_value(&s).unwrap()).abs() < 1e-12);
    }
    assert_eq!(brute_force_optimum(Problem::MaxCut, &g).unwrap().optimal_value, 3.5);
}

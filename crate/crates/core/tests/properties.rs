mod common;

use common::{block_sum, brute_min_cut, cut_value, random_instance, rng, Reference};
use cubic_persistency::instance::to_cubic_multicut;
use cubic_persistency::maps::{contract_edge, cut_map, join_map};
use cubic_persistency::oracle::{enumerate_feasible, Fixations};
use cubic_persistency::reductions::{cut_problem_to_qubo, fold_triples_into_edges, min_constrained_cut};
use cubic_persistency::{EdgeLabeling, Instance};
use proptest::prelude::*;
use rand::Rng;

fn random_labeling(inst: &Instance, r: &mut impl Rng) -> EdgeLabeling {
    let n = inst.vertex_count();
    let k = r.random_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| r.random_range(0..k)).collect();
    // same-label edges; a label class may split into several clusters
    let bits: Vec<u8> = inst.edges().iter().map(|&(p, q)| (labels[p] == labels[q]) as u8).collect();
    EdgeLabeling::from_bits(&bits)
}

fn random_subset(n: usize, r: &mut impl Rng) -> Vec<usize> {
    (0..n).filter(|_| r.random_bool(0.5)).collect()
}

/// Nonnegative integer or half-integer weights.
fn random_weights(len: usize, r: &mut impl Rng) -> Vec<f64> {
    (0..len).map(|_| r.random_range(0..=8) as f64 / 2.0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn objective_matches_block_sums(seed in any::<u64>(), n in 2usize..8, density in 0.3f64..1.0) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, density, 3);
        let x = random_labeling(&inst, &mut r);
        prop_assert!(inst.is_feasible(&x).unwrap());
        let part = inst.partition_from_labeling(&x).unwrap();
        let labels = part.assignment(n).unwrap();
        let value = inst.objective(&x).unwrap();
        prop_assert_eq!(value, inst.partition_objective(&part));
        prop_assert_eq!(value, block_sum(&inst, &labels));
        prop_assert_eq!(inst.labeling_from_partition(&part).unwrap(), x);
    }

    #[test]
    fn maps_stay_feasible(seed in any::<u64>(), n in 2usize..9, density in 0.3f64..1.0) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, density, 3);
        let x = random_labeling(&inst, &mut r);
        let u = random_subset(n, &mut r);
        let cut = cut_map(&inst, &x, &u).unwrap();
        let join = join_map(&inst, &x, &u).unwrap();
        prop_assert!(inst.is_feasible(&cut).unwrap());
        prop_assert!(inst.is_feasible(&join).unwrap());
        prop_assert!(x.dominates(&cut));
        prop_assert!(join.dominates(&x));
        for (e, &(p, q)) in inst.edges().iter().enumerate() {
            let (a, b) = (u.contains(&p), u.contains(&q));
            if a != b {
                prop_assert!(!cut.get(e));
            } else {
                prop_assert_eq!(cut.get(e), x.get(e));
            }
            if a && b {
                prop_assert!(join.get(e));
            }
        }
    }

    #[test]
    fn contraction_keeps_the_constrained_minimum(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, 0.8, 3);
        prop_assume!(inst.edge_count() > 0);
        let e = r.random_range(0..inst.edge_count());
        let (p, q) = inst.edge(e);
        let res = contract_edge(&inst, p, q).unwrap();
        let fix = Fixations { edges: vec![(e, true)], ..Default::default() };
        let before = Reference::new(&inst).constrained_minimum(&inst, &fix).unwrap();
        prop_assert_eq!(before, Reference::new(&res.instance).minimum);
        prop_assert_eq!(res.instance.vertex_count(), n - 1);
        prop_assert_eq!(res.vertex_map[p], res.vertex_map[q]);
    }

    #[test]
    fn multicut_mirrors_the_objective(seed in any::<u64>(), n in 2usize..7, density in 0.3f64..1.0) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, density, 3).with_offset(r.random_range(-3..=3) as f64);
        let mc = to_cubic_multicut(&inst);
        for x in enumerate_feasible(&inst).unwrap() {
            let (z, y) = mc.image(&inst, &x).unwrap();
            prop_assert_eq!(inst.objective(&x).unwrap(), mc.constant - mc.objective(&z, &y).unwrap());
        }
    }

    #[test]
    fn constrained_cut_matches_subsets(seed in any::<u64>(), n in 2usize..11, density in 0.3f64..1.0) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, density, 1);
        let ew = random_weights(inst.edge_count(), &mut r);
        let tw = random_weights(inst.triple_count(), &mut r);
        let source = r.random_range(0..n);
        let forbidden: Vec<usize> = (0..n).filter(|&v| v != source && r.random_bool(0.3)).collect();
        let (value, side) = min_constrained_cut(&inst, &ew, &tw, source, &forbidden).unwrap();
        prop_assert_eq!(value, brute_min_cut(&inst, &ew, &tw, source, &forbidden));
        let inside: Vec<bool> = (0..n).map(|v| side.contains(&v)).collect();
        prop_assert!(inside[source]);
        prop_assert!(forbidden.iter().all(|&f| !inside[f]));
        prop_assert_eq!(cut_value(&inst, &ew, &tw, &inside), value);
    }

    #[test]
    fn qubo_evaluates_cut_values(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, n, 0.7, 1);
        let ew = random_weights(inst.edge_count(), &mut r);
        let tw = random_weights(inst.triple_count(), &mut r);
        let folded = fold_triples_into_edges(&inst, &ew, &tw).unwrap();
        let source = r.random_range(0..n);
        let forbidden: Vec<usize> = (0..n).filter(|&v| v != source && r.random_bool(0.3)).collect();
        let qubo = cut_problem_to_qubo(&inst, &folded, source, &forbidden).unwrap();
        prop_assert!(qubo.quadratic.iter().all(|&(_, _, c)| c <= 0.0));
        for _ in 0..8 {
            let y: Vec<bool> = (0..qubo.len()).map(|_| r.random_bool(0.5)).collect();
            let mut inside = vec![false; n];
            inside[source] = true;
            for (k, &v) in qubo.variables.iter().enumerate() {
                inside[v] = y[k];
            }
            prop_assert_eq!(qubo.evaluate(&y), cut_value(&inst, &ew, &tw, &inside));
        }
    }
}

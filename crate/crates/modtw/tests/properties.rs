//! Randomized structural invariants, driven by proptest shrinking.

use modtw::cutcount::count_consistent_cuts;
use modtw::gen::{kappa, kappa_inv, substitute};
use modtw::graph::{
    connected_components, parse_instance, CostFn, Graph, Problem, ProblemInstance,
};
use modtw::md::{is_module, modular_decomposition};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if (mask >> k) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

proptest! {
    /// The number of 2-colorings with no bichromatic edge is exactly
    /// 2^(components of the induced subgraph), for every vertex subset.
    #[test]
    fn cut_count_is_power_of_components(
        n in 1usize..=7,
        mask in any::<u64>(),
        xmask in any::<u8>(),
    ) {
        let g = graph_from_mask(n, mask);
        let x: Vec<usize> = (0..n).filter(|&v| (xmask >> v) & 1 == 1).collect();
        let cc = connected_components(&g, Some(&x)).len();
        prop_assert_eq!(count_consistent_cuts(&g, &x), 1u128 << cc);
    }

    /// The strong-module tree never exceeds 2n nodes, is rooted at the full
    /// vertex set, and every node really is a module.
    #[test]
    fn md_tree_structure(n in 1usize..=8, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        let md = modular_decomposition(&g);
        prop_assert!(md.nodes.len() <= 2 * n);
        prop_assert_eq!(md.nodes[md.root].module.len(), n);
        for node in &md.nodes {
            prop_assert!(is_module(&g, &node.module));
        }
    }

    /// The base-5 group encoding is a bijection below 5^p.
    #[test]
    fn digit_codec_roundtrip(p in 1usize..=6, raw in any::<u32>()) {
        let value = raw as usize % 5usize.pow(p as u32);
        let digits = kappa(value, p);
        prop_assert_eq!(digits.len(), p);
        prop_assert!(digits.iter().all(|&d| (1..=5).contains(&d)));
        prop_assert_eq!(kappa_inv(&digits), value);
    }

    /// Writing an instance and parsing it back preserves everything.
    #[test]
    fn instance_roundtrip(
        n in 1usize..=8,
        mask in any::<u64>(),
        costs in prop::collection::vec(1u64..=9, 8),
        budget in prop::option::of(0u64..100),
    ) {
        let g = graph_from_mask(n, mask);
        let inst = ProblemInstance {
            problem: Problem::Cvc,
            graph: g.clone(),
            costs: CostFn::new(costs[..n].to_vec()).unwrap(),
            terminals: vec![],
            budget,
        };
        let back = parse_instance(&inst.to_mtw(), Problem::Cvc).unwrap();
        prop_assert_eq!(back.graph, g);
        prop_assert_eq!(back.costs, inst.costs);
        prop_assert_eq!(back.budget, budget);
    }

    /// Substitution plants its factor blocks as modules of the result.
    #[test]
    fn substitution_plants_modules(
        qmask in any::<u8>(),
        sizes in prop::collection::vec(1usize..=3, 4),
    ) {
        let q = graph_from_mask(4, qmask as u64);
        let factors: Vec<Graph> = sizes.iter().map(|&s| Graph::new(s)).collect();
        let (g, blocks) = substitute(&q, &factors);
        prop_assert_eq!(g.n(), sizes.iter().sum::<usize>());
        for b in &blocks {
            prop_assert!(is_module(&g, b));
        }
    }
}

//! Maximum-cost independent set over the modular decomposition.
//!
//! Independent set composes cleanly across modules - inside a series node
//! pick the best child, inside a parallel node take everything - so only the
//! prime quotients need a dynamic program over a tree decomposition, and the
//! whole solver is deterministic (no isolation weights, no repetitions).
//!
//! Run with: cargo run --example solve_independent_set

use modtw::gen::substitute;
use modtw::graph::{CostFn, Graph};
use modtw::is::solve_is;
use modtw::md::modular_decomposition;
use modtw::oracle::brute_max_is;
use modtw::td::{modtw, EXACT_TD_CAP};

fn main() {
    // A prime 5-cycle whose vertices are blown up into: triangle, single
    // vertex, edgeless pair, edge, triangle. Substitution keeps the blown-up
    // blocks as modules, so the solver works on the small quotients only.
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    let factors = vec![
        Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]),
        Graph::new(1),
        Graph::new(2),
        Graph::from_edges(2, &[(0, 1)]),
        Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]),
    ];
    let (g, blocks) = substitute(&c5, &factors);
    println!("substituted graph: n = {}, m = {}", g.n(), g.m());
    for (i, b) in blocks.iter().enumerate() {
        let members: Vec<usize> = b.iter().map(|&v| v + 1).collect();
        println!("  quotient vertex {} -> block {members:?}", i + 1);
    }

    // Non-uniform costs make the weighted variant visible.
    let costs = CostFn::new((0..g.n() as u64).map(|v| 1 + v % 4).collect()).unwrap();

    let md = modular_decomposition(&g);
    let info = modtw(&md, EXACT_TD_CAP);
    println!(
        "modular treewidth {} from {} prime quotient(s)",
        info.k, info.prime_node_count
    );

    let best = solve_is(&g, &costs, &md, &info.vntds);
    let picked: Vec<usize> = best.set.iter().map(|&v| v + 1).collect();
    println!("maximum independent set cost: {}", best.cost);
    println!("witness set: {picked:?}");

    // The witness really is independent and really has that cost.
    assert!(!g.has_any_edge_within(&best.set));
    assert_eq!(costs.sum(&best.set), best.cost);

    // And it matches exhaustive search.
    let (brute, _) = brute_max_is(&g, &costs).expect("small enough for the oracle");
    assert_eq!(best.cost, brute);
    println!("exhaustive check: {brute} (agrees)");
}

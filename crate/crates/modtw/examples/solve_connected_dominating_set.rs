//! Minimum-cost connected dominating set: every vertex is in the set or
//! adjacent to it, and the set induces a connected subgraph.
//!
//! Run with: cargo run --example solve_connected_dominating_set

use modtw::cds::{solve_cds, solve_cds_per_rep};
use modtw::graph::{CostFn, Graph};
use modtw::oracle::brute_cds;
use modtw::td::EXACT_TD_CAP;

fn main() {
    // A "spider": three legs of length 3 glued to a center. Dominating the
    // leg tips forces the set deep into each leg, and connectivity then
    // forces the center in as well.
    let g = Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3), // leg A: 1-2-3-4
            (0, 4),
            (4, 5),
            (5, 6), // leg B: 1-5-6-7
            (0, 7),
            (7, 8),
            (8, 9), // leg C: 1-8-9-10
        ],
    );
    let costs = CostFn::unit(g.n());
    println!("spider with three length-3 legs: n = {}, m = {}", g.n(), g.m());

    let seed = 7;
    let reps = 20;
    let answer = solve_cds(&g, &costs, seed, reps, EXACT_TD_CAP);
    println!("minimum connected dominating set cost: {answer:?}");

    let brute = brute_cds(&g, &costs).expect("oracle-sized");
    assert_eq!(answer, brute);
    println!("exhaustive check: {brute:?} (agrees)");

    // Middle-of-leg vertices + center: {1,2,3,5,6,8,9} dominates every tip
    // and is connected; nothing smaller works.
    assert_eq!(answer, Some(7));

    // Per-repetition view: entries are independent one-sided estimates.
    let per_rep = solve_cds_per_rep(&g, &costs, seed, reps, EXACT_TD_CAP);
    println!("per-repetition outcomes: {per_rep:?}");
    assert!(per_rep.iter().flatten().all(|&v| v >= 7));

    // A graph with an isolated vertex has no dominating connected set
    // (two components can never be dominated by one connected set).
    let mut lonely = Graph::new(4);
    lonely.add_edge(0, 1);
    lonely.add_edge(1, 2);
    lonely.finish();
    let none = solve_cds(&lonely, &CostFn::unit(4), seed, reps, EXACT_TD_CAP);
    println!("P3 plus an isolated vertex: {none:?} (infeasible)");
    assert_eq!(none, None);
}

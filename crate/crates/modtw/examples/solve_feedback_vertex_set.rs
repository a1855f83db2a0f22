//! Minimum feedback vertex set: fewest vertices whose removal leaves a
//! forest. Unit costs only; the dynamic program counts (component, edge)
//! -graded forests instead of cuts, and its join step has both a naive
//! quadratic form and a faster Möbius-style form - this example checks one
//! against the other.
//!
//! Run with: cargo run --example solve_feedback_vertex_set

use modtw::fvs::{solve_fvs, solve_fvs_per_rep};
use modtw::graph::Graph;
use modtw::oracle::brute_fvs;
use modtw::td::EXACT_TD_CAP;

fn main() {
    // K4 glued to a 5-cycle sharing one vertex, plus a pendant tree.
    let g = Graph::from_edges(
        10,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3), // K4 on 1..4
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 3), // 5-cycle through vertex 4
            (7, 8),
            (8, 9), // pendant path
        ],
    );
    println!("K4 + 5-cycle sharing a vertex + pendant path: n = {}, m = {}", g.n(), g.m());

    let seed = 123;
    let reps = 20;
    let answer = solve_fvs(&g, seed, reps, EXACT_TD_CAP);
    println!("minimum feedback vertex set size: {answer}");

    let brute = brute_fvs(&g).expect("oracle-sized");
    assert_eq!(answer, brute);
    println!("exhaustive check: {brute} (agrees)");

    // K4 alone already needs 2 deletions, and deleting the shared vertex 4
    // (plus any other K4 vertex) also opens the 5-cycle, so 2 suffices.
    assert_eq!(answer, 2);

    // Per-repetition: feedback vertex set never reports "no answer" (the
    // whole vertex set always works), and no entry undercuts the optimum.
    let per_rep = solve_fvs_per_rep(&g, seed, reps, EXACT_TD_CAP, false);
    println!("per-repetition outcomes: {per_rep:?}");
    assert!(per_rep.iter().all(|&v| v >= answer));

    // Cross-check the two join implementations on the same instance.
    let naive = solve_fvs_per_rep(&g, seed, reps, EXACT_TD_CAP, true);
    assert_eq!(per_rep, naive);
    println!("fast join and naive join agree on every repetition");

    // Forests need no deletions at all.
    let path = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
    assert_eq!(solve_fvs(&path, seed, reps, EXACT_TD_CAP), 0);
    println!("a path needs 0 deletions");
}

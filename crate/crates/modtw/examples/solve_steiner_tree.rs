//! Minimum-cost Steiner tree: connect all terminals by a connected induced
//! superset of minimum total vertex cost.
//!
//! Connectivity does not decompose across modules the way independence does,
//! so the solver counts 2-colorings (consistent cuts) of candidate sets
//! modulo 4 under random isolation weights. Each repetition can only fail
//! toward "no answer", never toward an answer better than the optimum, so
//! the minimum over repetitions is exact with probability >= 1 - 2^-R.
//!
//! Run with: cargo run --example solve_steiner_tree

use modtw::graph::{parse_instance, Problem};
use modtw::oracle::brute_steiner;
use modtw::steiner::{solve_st, solve_st_per_rep};
use modtw::td::EXACT_TD_CAP;

fn main() {
    // Two distant terminals on a 3x3 grid with a costly center.
    let text = "\
c 3x3 grid, terminals at opposite corners, expensive center
p mtw 9 12
e 1 2
e 2 3
e 4 5
e 5 6
e 7 8
e 8 9
e 1 4
e 4 7
e 2 5
e 5 8
e 3 6
e 6 9
v 5 10
k 1
k 9
";
    let inst = parse_instance(text, Problem::St).expect("well-formed");
    let g = &inst.graph;
    let terminals: Vec<usize> = inst.terminals.iter().map(|&t| t + 1).collect();
    println!("grid n = {}, m = {}, terminals {:?}", g.n(), g.m(), terminals);

    let seed = 2024;
    let reps = 20;
    let per_rep = solve_st_per_rep(g, &inst.costs, &inst.terminals, seed, reps, EXACT_TD_CAP);
    println!("per-repetition outcomes: {per_rep:?}");

    let answer = solve_st(g, &inst.costs, &inst.terminals, seed, reps, EXACT_TD_CAP);
    println!("minimum Steiner tree cost: {answer:?}");

    let brute = brute_steiner(g, &inst.costs, &inst.terminals).expect("oracle-sized");
    println!("exhaustive check: {brute:?}");
    assert_eq!(answer, brute);

    // One-sided error in action: no repetition ever undercuts the optimum.
    let opt = brute.unwrap();
    for (r, outcome) in per_rep.iter().enumerate() {
        if let Some(v) = outcome {
            assert!(*v >= opt, "repetition {r} undercut the optimum");
        }
    }
    println!("no repetition ever reported a value below the optimum");

    // The expensive center (cost 10) is avoided: going around costs less.
    assert_eq!(opt, 5, "corner-to-corner path along the rim: 5 unit vertices");
}

//! The two counting identities behind every randomized solver in this crate,
//! plus the isolation trick that turns them into algorithms.
//!
//! 1. Counting cuts detects connectivity. A consistent cut of an induced
//!    subgraph is a 2-coloring with no bichromatic edge; a set X with c
//!    components has exactly 2^c of them. So X is connected iff its count
//!    is 2, i.e. iff the count is nonzero modulo 4 (every disconnected set
//!    contributes a multiple of 4 and vanishes).
//!
//! 2. Random weights isolate. Summing counts over all candidate sets of a
//!    given size destroys the signal unless exactly one candidate attains
//!    the optimum. Drawing vertex weights uniformly from 1..=2N makes the
//!    minimum-weight candidate unique with probability at least 1/2, so the
//!    parity signal of that single set survives the sum.
//!
//! Run with: cargo run --example cut_and_count_basics

use modtw::cutcount::{count_consistent_cuts, isolates, sample_weights, IsolationGoal};
use modtw::graph::{connected_components, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]); // P3 + P2 + isolated 5
    println!("graph: P3 (1-2-3) + edge (4-5) + isolated vertex 6\n");

    for x in [
        vec![0, 1, 2],       // connected: 2 cuts
        vec![0, 1, 2, 3, 4], // two components: 4 cuts
        vec![0, 2, 5],       // three singletons: 8 cuts
        vec![],              // empty set: the empty cut only
    ] {
        let count = count_consistent_cuts(&g, &x);
        let cc = if x.is_empty() {
            0
        } else {
            connected_components(&g, Some(&x)).len()
        };
        let labels: Vec<usize> = x.iter().map(|&v| v + 1).collect();
        println!(
            "X = {labels:?}: {count} consistent cuts = 2^{cc}; X connected: {}",
            !x.is_empty() && count % 4 != 0
        );
        assert_eq!(count, 1u128 << cc);
        if !x.is_empty() {
            assert_eq!(cc == 1, count % 4 != 0);
        }
    }

    // Isolation: weight a fixed 6-member family at random many times and
    // measure how often the minimum-weight member is unique. The guarantee
    // is >= 1/2; in practice it is much higher.
    let universe = 10;
    let family: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![1, 2, 3],
        vec![2, 3, 4],
        vec![3, 4, 5],
        vec![0, 2, 4],
        vec![1, 3, 5],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let trials = 10_000;
    let mut unique = 0;
    for _ in 0..trials {
        let w = sample_weights(&mut rng, universe);
        if isolates(&w, &family, IsolationGoal::Min) {
            unique += 1;
        }
    }
    println!(
        "\nisolation: unique minimum in {unique}/{trials} trials \
         (guarantee: >= {:.2})",
        1.0 - family.len() as f64 / (2 * universe) as f64
    );
    assert!(unique * 2 >= trials);
}

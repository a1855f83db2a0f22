//! Randomized agreement sweep: solve a batch of random module-structured
//! graphs with every solver and compare each answer against exhaustive
//! search. A compact version of what the acceptance suite does at scale.
//!
//! Run with: cargo run --release --example oracle_check

use modtw::cds::solve_cds;
use modtw::cvc::solve_cvc;
use modtw::fvs::solve_fvs;
use modtw::gen::random_modular_graph;
use modtw::graph::{CostFn, Graph};
use modtw::is::solve_is;
use modtw::md::modular_decomposition;
use modtw::oracle::{brute_cds, brute_cvc, brute_fvs, brute_max_is, brute_steiner};
use modtw::steiner::solve_st;
use modtw::td::{modtw, EXACT_TD_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = if rng.gen_bool(0.5) {
            // Erdos-Renyi flavor.
            let n = rng.gen_range(4..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges)
        } else {
            // Two-level substitution: guaranteed module structure.
            random_modular_graph(2, 3, 0.6, rng).0
        };
        if g.n() <= 9 && g.is_connected() && g.m() >= 1 {
            return g;
        }
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let trials = 40;
    let reps = 20;
    let mut per_problem = [0usize; 5];

    for trial in 0..trials {
        let g = random_connected(&mut rng);
        let costs =
            CostFn::new((0..g.n()).map(|_| rng.gen_range(1..=5)).collect()).unwrap();
        let seed = rng.gen();

        // Independent set (deterministic path).
        let md = modular_decomposition(&g);
        let info = modtw(&md, EXACT_TD_CAP);
        let is_got = solve_is(&g, &costs, &md, &info.vntds).cost;
        let is_want = brute_max_is(&g, &costs).unwrap().0;
        assert_eq!(is_got, is_want, "IS mismatch on trial {trial}");
        per_problem[0] += 1;

        // Steiner tree on 1-3 random terminals.
        let k = rng.gen_range(1..=3.min(g.n()));
        let mut terminals: Vec<usize> = (0..g.n()).collect();
        for i in (1..terminals.len()).rev() {
            terminals.swap(i, rng.gen_range(0..=i));
        }
        terminals.truncate(k);
        let st_got = solve_st(&g, &costs, &terminals, seed, reps, EXACT_TD_CAP);
        let st_want = brute_steiner(&g, &costs, &terminals).unwrap();
        assert_eq!(st_got, st_want, "ST mismatch on trial {trial}");
        per_problem[1] += 1;

        // Connected dominating set.
        let cds_got = solve_cds(&g, &costs, seed, reps, EXACT_TD_CAP);
        let cds_want = brute_cds(&g, &costs).unwrap();
        assert_eq!(cds_got, cds_want, "CDS mismatch on trial {trial}");
        per_problem[2] += 1;

        // Connected vertex cover.
        let cvc_got = solve_cvc(&g, &costs, None, seed, reps, EXACT_TD_CAP);
        let cvc_want = brute_cvc(&g, &costs).unwrap();
        assert_eq!(cvc_got, cvc_want, "CVC mismatch on trial {trial}");
        per_problem[3] += 1;

        // Feedback vertex set (unit costs by definition).
        let fvs_got = solve_fvs(&g, seed, reps, EXACT_TD_CAP);
        let fvs_want = brute_fvs(&g).unwrap();
        assert_eq!(fvs_got, fvs_want, "FVS mismatch on trial {trial}");
        per_problem[4] += 1;
    }

    for (name, count) in ["IS", "ST", "CDS", "CVC", "FVS"].iter().zip(per_problem) {
        println!("{name}: {count}/{trials} random graphs agree with exhaustive search");
    }
    println!("all solvers agree with the oracle on every trial");
}

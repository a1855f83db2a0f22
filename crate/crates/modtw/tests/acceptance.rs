//! Acceptance battery: eleven end-to-end checks, one test per criterion,
//! each finishing with a single `ACCEPTANCE <nn> <name>: PASS` line
//! (visible under `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;

use modtw::cds::{solve_cds, solve_cds_per_rep};
use modtw::cutcount::{
    count_consistent_cuts, count_homogeneous_cuts, isolates, sample_weights, IsolationGoal,
};
use modtw::cvc::{
    cvc_block_data, cvc_prime_root_counts, enumerate_nice_covers, solve_cvc, solve_cvc_per_rep,
};
use modtw::fvs::{
    enumerate_fvs_family, fvs_data_per_node, fvs_join_fast, fvs_join_naive, fvs_root_counts,
    solve_fvs, solve_fvs_per_rep, FvsChildData, FvsMap, FvsTable,
};
use modtw::gen::{
    build_cvc_witness, build_fvs_witness, cvc_gadget_cover, cvc_gadget_matching,
    cvc_interface_state, cvc_single_gadget, gen_cvc_lb, gen_fvs_lb, random_modular_graph,
    random_satisfiable_cnf, substitute, verify_cvc_witness, verify_fvs_packing,
    verify_fvs_witness, CVC_COVER_SIZE, CVC_GADGET_MATCHING_SIZE, CVC_GADGET_VERTICES,
    CVC_STATE_TABLE,
};
use modtw::graph::{connected_components, quotient, CostFn, Graph, Partition};
use modtw::is::solve_is;
use modtw::md::{is_module, modular_decomposition, strong_modules_bruteforce, MdKind};
use modtw::oracle::{brute_cds, brute_cvc, brute_fvs, brute_max_is, brute_steiner};
use modtw::steiner::{solve_st, solve_st_per_rep};
use modtw::td::{
    heuristic_td, modtw, to_very_nice, validate_td, validate_very_nice, VnKind, EXACT_TD_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const REPS: u32 = 20;

fn pass(n: u32, name: &str) {
    println!("ACCEPTANCE {n:02} {name}: PASS");
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// No individual repetition may ever beat the optimum or invent a solution
/// on an infeasible instance.
fn assert_one_sided(per: &[Option<u64>], want: Option<u64>, what: &str) {
    match want {
        Some(opt) => {
            for (r, entry) in per.iter().enumerate() {
                if let Some(v) = entry {
                    assert!(*v >= opt, "{what}: repetition {r} reported {v} < optimum {opt}");
                }
            }
        }
        None => {
            assert!(
                per.iter().all(|e| e.is_none()),
                "{what}: a repetition claimed a solution on an infeasible instance"
            );
        }
    }
}

fn erdos_renyi(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// A connected graph on at most `max_n` vertices, alternating plain random
/// graphs with two- and three-level substitution structures. Rejects draws
/// whose widest prime quotient exceeds width 7 so the 5^(width+1) tables of
/// the cover/forest programs stay small on modest hardware.
fn random_connected_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let g = if rng.gen_bool(0.5) {
            let n = rng.gen_range(4..=max_n);
            let p = rng.gen_range(0.2..0.55);
            erdos_renyi(rng, n, p)
        } else {
            let (levels, fanout) = *[(2u32, 3usize), (3, 2), (2, 2)]
                .iter()
                .nth(rng.gen_range(0..3))
                .unwrap();
            random_modular_graph(levels, fanout, rng.gen_range(0.35..0.8), rng).0
        };
        if g.n() < 2 || g.n() > max_n || g.m() == 0 || !g.is_connected() {
            continue;
        }
        let info = modtw(&modular_decomposition(&g), EXACT_TD_CAP);
        if info.max_quotient_width <= 7 {
            return g;
        }
    }
}

// ---------------------------------------------------------------------------
// 1. Solver optimum = exhaustive optimum on 300 random connected graphs per
//    problem; no repetition ever reports better than the optimum.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_01_oracle_equivalence() {
    let trials = 300;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa11ce + trial as u64);
        let g = random_connected_graph(&mut rng, 12);
        let n = g.n();
        let costs = CostFn::new((0..n).map(|_| rng.gen_range(1..=5)).collect()).unwrap();
        let seed: u64 = rng.gen();

        // Independent set: deterministic, exact on every run.
        let md = modular_decomposition(&g);
        let info = modtw(&md, EXACT_TD_CAP);
        let best = solve_is(&g, &costs, &md, &info.vntds);
        assert!(!g.has_any_edge_within(&best.set), "IS witness not independent");
        assert_eq!(costs.sum(&best.set), best.cost, "IS witness cost mismatch");
        assert_eq!(best.cost, brute_max_is(&g, &costs).unwrap().0, "IS trial {trial}");

        // Steiner tree on up to three random terminals.
        let k = rng.gen_range(1..=3.min(n));
        let mut terminals = BTreeSet::new();
        while terminals.len() < k {
            terminals.insert(rng.gen_range(0..n));
        }
        let terminals: Vec<usize> = terminals.into_iter().collect();
        let per = solve_st_per_rep(&g, &costs, &terminals, seed, REPS, EXACT_TD_CAP);
        let want = brute_steiner(&g, &costs, &terminals).unwrap();
        assert_one_sided(&per, want, "ST");
        assert_eq!(per.iter().copied().fold(None, min_opt), want, "ST trial {trial}");

        // Connected dominating set.
        let per = solve_cds_per_rep(&g, &costs, seed, REPS, EXACT_TD_CAP);
        let want = brute_cds(&g, &costs).unwrap();
        assert_one_sided(&per, want, "CDS");
        assert_eq!(per.iter().copied().fold(None, min_opt), want, "CDS trial {trial}");

        // Connected vertex cover.
        let per = solve_cvc_per_rep(&g, &costs, None, seed, REPS, EXACT_TD_CAP);
        let want = brute_cvc(&g, &costs).unwrap();
        assert_one_sided(&per, want, "CVC");
        assert_eq!(per.iter().copied().fold(None, min_opt), want, "CVC trial {trial}");

        // Feedback vertex set (unit costs by definition).
        let per = solve_fvs_per_rep(&g, seed, REPS, EXACT_TD_CAP, false);
        let want = brute_fvs(&g).unwrap();
        for (r, &v) in per.iter().enumerate() {
            assert!(v >= want, "FVS repetition {r} reported {v} < optimum {want}");
        }
        assert_eq!(per.iter().copied().min().unwrap(), want, "FVS trial {trial}");
    }
    pass(1, "oracle-equivalence");
}

// ---------------------------------------------------------------------------
// 2. Counting identities: consistent cuts = 2^components on every subset;
//    homogeneous cuts = 2^(quotient components); connected iff the count
//    survives modulo 4.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_02_counting_identities() {
    // Part 1: every subset of 100 random graphs on up to 8 vertices.
    for round in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0de + round);
        let n = rng.gen_range(1..=8);
        let g = erdos_renyi(&mut rng, n, 0.15 + 0.08 * (round % 10) as f64);
        for mask in 0u32..(1 << n) {
            let x: Vec<usize> = (0..n).filter(|&v| (mask >> v) & 1 == 1).collect();
            let cc = connected_components(&g, Some(&x)).len();
            let count = count_consistent_cuts(&g, &x);
            assert_eq!(count, 1u128 << cc, "2^components identity");
            // The mod-4 signal separates connected from disconnected among
            // nonempty sets (the empty set contributes its single cut).
            if !x.is_empty() {
                assert_eq!(cc == 1, count % 4 != 0, "mod-4 connectivity signal");
            }
        }
    }

    // Part 2: block-constant cuts on 100 two-level structured graphs.
    for round in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x2fa + round);
        let (g, blocks) = random_modular_graph(2, 3, 0.3 + 0.05 * (round % 10) as f64, &mut rng);
        let part = Partition::new(blocks.clone(), g.n());
        let q = quotient(&g, &part);
        for _ in 0..25 {
            let sel: Vec<usize> =
                (0..part.len()).filter(|_| rng.gen_bool(0.5)).collect();
            let x: Vec<usize> =
                sel.iter().flat_map(|&b| part.blocks[b].iter().copied()).collect();
            // Block-constant cut count against the quotient's components.
            let homog = count_homogeneous_cuts(&g, &part, &x);
            let (qi, _) = q.induced(&sel);
            let ccq = connected_components(&qi, None).len();
            assert_eq!(homog, 1u128 << ccq, "quotient identity");
            // Plain count on the same union-of-blocks set.
            let cc = connected_components(&g, Some(&x)).len();
            let full = count_consistent_cuts(&g, &x);
            assert_eq!(full, 1u128 << cc);
            if !sel.is_empty() {
                assert_eq!(ccq == 1, homog % 4 != 0);
                assert_eq!(cc == 1, full % 4 != 0);
            }
        }
    }
    pass(2, "counting-identities");
}

// ---------------------------------------------------------------------------
// 3. Feedback vertex set 2-adic congruence: on planted two-level instances
//    the root tracker counts (member, block-constant cut) pairs exactly, and
//    per tracker the pair count is congruent to 2^(v-e) times the forest
//    count modulo 2^(v-e+1).
// ---------------------------------------------------------------------------
#[test]
fn acceptance_03_fvs_congruence() {
    for round in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xf5 + round);
        let qn = 4 + (round as usize) % 3; // 4..=6 modules
        let sizes: Vec<usize> = (0..qn).map(|_| rng.gen_range(1..=2)).collect();
        let offset: Vec<usize> = sizes
            .iter()
            .scan(0, |a, &s| {
                let o = *a;
                *a += s;
                Some(o)
            })
            .collect();
        let n: usize = sizes.iter().sum();
        let mut g = Graph::new(n);
        for blk in 0..qn {
            if sizes[blk] == 2 && rng.gen_bool(0.5) {
                g.add_edge(offset[blk], offset[blk] + 1);
            }
        }
        for blk in 0..qn - 1 {
            for i in 0..sizes[blk] {
                for j in 0..sizes[blk + 1] {
                    g.add_edge(offset[blk] + i, offset[blk + 1] + j);
                }
            }
        }
        g.finish();

        let md = modular_decomposition(&g);
        assert_eq!(md.nodes[md.root].kind, MdKind::Prime);
        assert_eq!(md.nodes[md.root].children.len(), qn);
        let info = modtw(&md, EXACT_TD_CAP);
        let mut wrng = ChaCha8Rng::seed_from_u64(9000 + round);
        let w = sample_weights(&mut wrng, n);
        let data = fvs_data_per_node(&g, &w, &md, &info.vntds, false);
        let children: Vec<FvsChildData> =
            md.nodes[md.root].children.iter().map(|&c| data[c].clone()).collect();
        let root = fvs_root_counts(&children, &info.vntds[&md.root], false);
        let part: Vec<Vec<usize>> =
            md.nodes[md.root].children.iter().map(|&c| md.nodes[c].module.clone()).collect();
        let q = md.nodes[md.root].quotient.as_ref().unwrap();
        let want = enumerate_fvs_family(&g, q, &part, &children, &w);

        for (key, &(pairs, forests)) in &want {
            // Inner program counts the relaxed family exactly.
            assert_eq!(root.get(key).copied().unwrap_or(0), pairs, "tracker {key:?}");
            let (_, _, v, e) = *key;
            if v >= e {
                let modulus = 1u128 << (v - e + 1).min(127);
                assert_eq!(
                    pairs % modulus,
                    (forests << (v - e)) % modulus,
                    "2-adic congruence at {key:?}"
                );
            }
        }
        for (key, &c) in &root {
            assert!(c == 0 || want.contains_key(key), "spurious tracker {key:?}");
        }
    }
    pass(3, "fvs-congruence");
}

// ---------------------------------------------------------------------------
// 4. Connected-vertex-cover root congruence: the mod-4 root tracker equals
//    the directly enumerated (cover, cut) pair count, which is twice the
//    connected-cover count whenever at least two blocks are touched.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_04_cvc_congruence() {
    for round in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xcc + round);
        let qn = 4 + (round as usize) % 2; // 4..=5 modules
        let sizes: Vec<usize> = (0..qn).map(|_| rng.gen_range(1..=3)).collect();
        let offset: Vec<usize> = sizes
            .iter()
            .scan(0, |a, &s| {
                let o = *a;
                *a += s;
                Some(o)
            })
            .collect();
        let n: usize = sizes.iter().sum();
        let mut g = Graph::new(n);
        for blk in 0..qn {
            for i in 0..sizes[blk] {
                for j in i + 1..sizes[blk] {
                    if rng.gen_bool(0.5) {
                        g.add_edge(offset[blk] + i, offset[blk] + j);
                    }
                }
            }
        }
        for blk in 0..qn - 1 {
            for i in 0..sizes[blk] {
                for j in 0..sizes[blk + 1] {
                    g.add_edge(offset[blk] + i, offset[blk + 1] + j);
                }
            }
        }
        g.finish();
        let costs = CostFn::new((0..n).map(|_| rng.gen_range(1..=4)).collect()).unwrap();

        let md = modular_decomposition(&g);
        assert_eq!(md.nodes[md.root].kind, MdKind::Prime);
        assert_eq!(md.nodes[md.root].children.len(), qn);
        let info = modtw(&md, EXACT_TD_CAP);
        let mut wrng = ChaCha8Rng::seed_from_u64(7000 + round);
        let w = sample_weights(&mut wrng, n);
        let blocks = cvc_block_data(&g, &costs, &w, &md, &info.vntds);
        let got = cvc_prime_root_counts(&blocks, &info.vntds[&md.root], None);
        let q = md.nodes[md.root].quotient.as_ref().unwrap();
        let want = enumerate_nice_covers(&g, q, &blocks);

        for (key, &(pairs, connected)) in &want {
            let dp = got.get(key).copied().unwrap_or(0);
            assert_eq!(dp as u128, pairs % 4, "tracker {key:?}");
            if key.2 >= 2 {
                assert_eq!(pairs % 4, (2 * connected) % 4, "pair/connected link {key:?}");
            }
        }
        for (key, &c) in &got {
            assert!(c == 0 || want.contains_key(key), "spurious tracker {key:?}");
        }
    }
    pass(4, "cvc-root-congruence");
}

// ---------------------------------------------------------------------------
// 5. The fast forest join equals the reference join entrywise on 200 random
//    inputs with bags of up to 6 positions.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_05_join_equivalence() {
    let pow5 = |e: usize| 5usize.pow(e as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(0x301);
    for _ in 0..200 {
        let b = rng.gen_range(0..=6usize);
        let cliques: Vec<bool> = (0..b).map(|_| rng.gen_bool(0.4)).collect();
        let make = |rng: &mut ChaCha8Rng| -> FvsTable {
            let mut t: FvsTable = vec![FvsMap::new(); pow5(b)];
            for _ in 0..25 {
                let mut s = 0usize;
                for p in 0..b {
                    // States 0..5; a clique position never holds state 3
                    // ("2+ vertices, nothing consumed" is impossible there).
                    let choices: &[usize] =
                        if cliques[p] { &[0, 1, 2, 4] } else { &[0, 1, 2, 3, 4] };
                    s += choices[rng.gen_range(0..choices.len())] * pow5(p);
                }
                let key = (
                    rng.gen_range(0..6u32),
                    rng.gen_range(0..20u64),
                    rng.gen_range(0..6u32),
                    rng.gen_range(0..4u32),
                );
                *t[s].entry(key).or_insert(0) += rng.gen_range(1..50u128);
            }
            t
        };
        let left = make(&mut rng);
        let right = make(&mut rng);
        assert_eq!(
            fvs_join_fast(&left, &right, &cliques),
            fvs_join_naive(&left, &right, &cliques),
            "joins disagree on bag {cliques:?}"
        );
    }
    pass(5, "join-equivalence");
}

// ---------------------------------------------------------------------------
// 6. Isolation rate: random weights in 1..=40 over a 20-element universe
//    leave a unique minimum-weight member in a 50-member family at least
//    45% of the time (guarantee 50%, tolerance 5%).
// ---------------------------------------------------------------------------
#[test]
fn acceptance_06_isolation_rate() {
    let universe = 20usize;
    let trials = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    let mut hits = 0usize;
    for _ in 0..trials {
        let mut family_masks: BTreeSet<u32> = BTreeSet::new();
        while family_masks.len() < 50 {
            let mask = rng.gen_range(1u32..(1 << universe));
            family_masks.insert(mask);
        }
        let family: Vec<Vec<usize>> = family_masks
            .iter()
            .map(|&m| (0..universe).filter(|&v| (m >> v) & 1 == 1).collect())
            .collect();
        let w = sample_weights(&mut rng, universe); // uniform in 1..=40
        if isolates(&w, &family, IsolationGoal::Min) {
            hits += 1;
        }
    }
    let rate = hits as f64 / trials as f64;
    println!("isolation rate: {rate:.3} over {trials} trials");
    assert!(rate >= 1.0 - 20.0 / 40.0 - 0.05, "rate {rate} below guarantee minus tolerance");
    pass(6, "isolation-rate");
}

// ---------------------------------------------------------------------------
// 7. Modular decomposition equals brute-force strong modules on 500 graphs;
//    node kinds follow the parallel/series/prime trichotomy; at most 2n
//    nodes.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_07_modular_decomposition() {
    for round in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x3d + round);
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.9);
        let g = match round % 10 {
            0 => Graph::new(n),                 // edgeless
            1 => erdos_renyi(&mut rng, n, 1.0), // complete
            _ => erdos_renyi(&mut rng, n, p),
        };
        let md = modular_decomposition(&g);

        assert!(md.nodes.len() <= 2 * n, "node bound violated");
        let mut got = md.modules_sorted();
        let mut want = strong_modules_bruteforce(&g).unwrap();
        got.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        want.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        assert_eq!(got, want, "strong module set mismatch, n={n} m={}", g.m());

        for node in &md.nodes {
            let reps: Vec<usize> = node.children.iter().map(|&c| md.nodes[c].module[0]).collect();
            match node.kind {
                MdKind::Leaf => assert_eq!(node.module.len(), 1),
                MdKind::Parallel => {
                    assert!(reps.len() >= 2);
                    for i in 0..reps.len() {
                        for j in i + 1..reps.len() {
                            assert!(!g.has_edge(reps[i], reps[j]), "parallel children adjacent");
                        }
                    }
                }
                MdKind::Series => {
                    assert!(reps.len() >= 2);
                    for i in 0..reps.len() {
                        for j in i + 1..reps.len() {
                            assert!(g.has_edge(reps[i], reps[j]), "series children non-adjacent");
                        }
                    }
                }
                MdKind::Prime => {
                    let k = reps.len();
                    assert!(k >= 4, "prime node with fewer than 4 children");
                    let q = node.quotient.as_ref().expect("prime node carries its quotient");
                    assert_eq!(q.n(), k);
                    // No subset of 2..k-1 quotient vertices is a module.
                    for mask in 1u32..(1 << k) {
                        let s: Vec<usize> = (0..k).filter(|&v| (mask >> v) & 1 == 1).collect();
                        if s.len() >= 2 && s.len() < k {
                            assert!(!is_module(q, &s), "prime quotient has a module {s:?}");
                        }
                    }
                }
            }
        }
    }
    pass(7, "modular-decomposition");
}

// ---------------------------------------------------------------------------
// 8. Very nice decomposition normal form on 300 random graphs: width kept,
//    empty root bag, one introduce-edge node per edge, and the three
//    decomposition axioms.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_08_very_nice_decomposition() {
    for round in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7d + round);
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.0..0.7);
        let g = erdos_renyi(&mut rng, n, p);

        let td = heuristic_td(&g);
        validate_td(&g, &td).expect("axioms: coverage, edges, connected occurrences");

        let vn = to_very_nice(&g, &td);
        validate_very_nice(&g, &vn).expect("normal-form axioms");
        assert_eq!(vn.width, td.width, "width changed by normalization");
        assert!(vn.nodes[vn.root()].bag.is_empty(), "nonempty root bag");
        let ie = vn
            .nodes
            .iter()
            .filter(|nd| matches!(nd.kind, VnKind::IntroduceEdge(_, _)))
            .count();
        assert_eq!(ie, g.m(), "every edge is introduced exactly once");
    }
    pass(8, "very-nice-decomposition");
}

// ---------------------------------------------------------------------------
// 9. Hardness-family certificates: the cover gadget's five tight covers and
//    its 21-edge matching; generated instances of both families carry
//    verified witnesses of size exactly the budget, and the deletion family
//    a verified vertex-disjoint packing summing to it.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_09_lower_bound_certificates() {
    // The column gadget: five covers of size exactly 35 realizing the five
    // distinct interface states, plus a 21-edge internal matching.
    let (g, root) = cvc_single_gadget();
    let matching = cvc_gadget_matching();
    assert_eq!(matching.len(), CVC_GADGET_MATCHING_SIZE);
    let mut used = vec![false; g.n()];
    for &(u, v) in &matching {
        assert!(u < CVC_GADGET_VERTICES && v < CVC_GADGET_VERTICES, "matching edge not internal");
        assert!(g.has_edge(u, v), "matching pair not an edge");
        assert!(!used[u] && !used[v], "matching edges overlap");
        used[u] = true;
        used[v] = true;
    }
    for state in 0..5 {
        let cover = cvc_gadget_cover(state);
        assert_eq!(cover.len(), CVC_COVER_SIZE, "cover size");
        let inc: Vec<bool> = {
            let mut m = vec![false; g.n()];
            for &v in &cover {
                m[v] = true;
            }
            m
        };
        for (u, v) in g.edges() {
            if u < CVC_GADGET_VERTICES && v < CVC_GADGET_VERTICES {
                assert!(inc[u] || inc[v], "internal edge ({u},{v}) uncovered in state {state}");
            }
        }
        assert_eq!(
            cvc_interface_state(&g, root, &cover),
            CVC_STATE_TABLE[state],
            "interface state {state}"
        );
    }

    // Twenty random satisfiable 3-CNF formulas through both generators.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1b);
    for round in 0..20 {
        let n_vars = rng.gen_range(3..=8);
        let m_clauses = rng.gen_range(2..=5);
        let (cnf, assignment) = random_satisfiable_cnf(n_vars, m_clauses, 3, &mut rng);
        let beta = 2;

        let (gc, budget_c, idx_c) = gen_cvc_lb(&cnf, beta);
        let (t, p, fp) = (idx_c.t as u64, idx_c.p as u64, idx_c.five_pow_p as u64);
        let cols = cnf.m_clauses() as u64 * (4 * t * p + 1);
        assert_eq!(idx_c.columns as u64, cols, "column count");
        assert_eq!(
            budget_c,
            (35 * t * p + (fp + 2) * t + 1) * cols + 1,
            "cover budget formula, round {round}"
        );
        let wc = build_cvc_witness(&cnf, &assignment, &idx_c);
        let rc = verify_cvc_witness(&gc, &wc, budget_c);
        assert!(rc.ok(), "cover witness rejected in round {round}: {:?}", rc.failure);
        assert_eq!(rc.actual_size as u64, budget_c, "cover witness size");

        let (gf, budget_f, idx_f, packing) = gen_fvs_lb(&cnf, beta);
        verify_fvs_packing(&gf, &packing, budget_f)
            .unwrap_or_else(|e| panic!("packing rejected in round {round}: {e}"));
        let wf = build_fvs_witness(&cnf, &assignment, &idx_f);
        let rf = verify_fvs_witness(&gf, &wf, budget_f);
        assert!(rf.ok(), "deletion witness rejected in round {round}: {:?}", rf.failure);
        assert_eq!(rf.actual_size as u64, budget_f, "deletion witness size");
        assert_eq!(idx_f.columns, idx_c.columns, "families agree on the column count");
    }
    pass(9, "lower-bound-certificates");
}

// ---------------------------------------------------------------------------
// 10. Table-size instrumentation: every dynamic program asserts its table
//     dimension (2^/3^/4^/5^ per bag position) and, where states are
//     restricted, the exact legal-signature census, on every run. This test
//     drives all five programs through module-structured inputs so those
//     assertions execute here as they do in every other criterion.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_10_table_instrumentation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e);
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    let factors: Vec<Graph> = (0..5)
        .map(|i| {
            if i % 2 == 0 {
                Graph::from_edges(2, &[(0, 1)])
            } else {
                Graph::new(2)
            }
        })
        .collect();
    let (g, _) = substitute(&c5, &factors);
    let costs = CostFn::new((0..g.n()).map(|_| rng.gen_range(1..=5)).collect()).unwrap();
    let seed: u64 = rng.gen();

    let md = modular_decomposition(&g);
    let info = modtw(&md, EXACT_TD_CAP);
    let is = solve_is(&g, &costs, &md, &info.vntds);
    assert_eq!(is.cost, brute_max_is(&g, &costs).unwrap().0);
    let st = solve_st(&g, &costs, &[0, 5], seed, REPS, EXACT_TD_CAP);
    assert_eq!(st, brute_steiner(&g, &costs, &[0, 5]).unwrap());
    let cds = solve_cds(&g, &costs, seed, REPS, EXACT_TD_CAP);
    assert_eq!(cds, brute_cds(&g, &costs).unwrap());
    let cvc = solve_cvc(&g, &costs, None, seed, REPS, EXACT_TD_CAP);
    assert_eq!(cvc, brute_cvc(&g, &costs).unwrap());
    let fvs = solve_fvs(&g, seed, REPS, EXACT_TD_CAP);
    assert_eq!(fvs, brute_fvs(&g).unwrap());
    pass(10, "table-instrumentation");
}

// ---------------------------------------------------------------------------
// 11. Determinism: the same seed yields byte-identical machine-readable
//     reports across independent process runs.
// ---------------------------------------------------------------------------
#[test]
fn acceptance_11_determinism() {
    use std::process::Command;

    let dir = tempfile::tempdir().unwrap();
    let base = "p mtw 8 9\ne 1 2\ne 2 3\ne 3 1\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 8\ne 8 6\n";
    let plain = dir.path().join("det.mtw");
    std::fs::write(&plain, base).unwrap();
    let with_terminals = dir.path().join("det_st.mtw");
    std::fs::write(&with_terminals, format!("{base}k 1\nk 8\n")).unwrap();

    for (problem, input) in [("cvc", &plain), ("fvs", &plain), ("st", &with_terminals)] {
        let run = || {
            let out = Command::new(env!("CARGO_BIN_EXE_modtw"))
                .args(["solve", "--problem", problem, "--json", "--seed", "424242"])
                .arg("--input")
                .arg(input)
                .output()
                .expect("solver process runs");
            assert!(out.status.success(), "solver exited with {:?}", out.status);
            out.stdout
        };
        let first = run();
        let second = run();
        assert!(!first.is_empty());
        assert_eq!(first, second, "reports differ between runs for {problem}");
    }
    pass(11, "determinism");
}

//! Connected vertex cover over the modular decomposition. Covers restricted
//! to one maximal module are enumerated exactly; series roots admit a
//! closed-form candidate list; prime roots run a randomized cut-and-count
//! program over block states (empty / canonical partial cover / full block),
//! counting homogeneous consistent cuts so that a tracker entry survives
//! modulo 4 exactly when a connected cover of that cost exists.

use crate::cutcount::sample_weights;
use crate::graph::{connected_components, CostFn, Graph};
use crate::is::max_is_per_node;
use crate::md::{modular_decomposition, MdKind, MdTree};
use crate::td::{modtw, VeryNiceTd, VnKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Count map keyed by (cost, weight, touched-block count); counts in Z/4.
type Tracker = BTreeMap<(u64, u64, u32), u8>;

const EMPTY: usize = 0;
const PART_L: usize = 1;
const PART_R: usize = 2;
const ALL_L: usize = 3;
const ALL_R: usize = 4;

/// cons[s1][s2]: may a quotient edge join blocks in states s1, s2? A cross
/// edge bundle is covered only if one block is fully in the cover, and
/// nonempty intersections on opposite cut sides are inconsistent.
const CONS: [[u8; 5]; 5] = [
    [0, 0, 0, 1, 1],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
    [1, 1, 0, 1, 0],
    [1, 0, 1, 0, 1],
];

/// Per maximal-module data for the cover states: the full block cost and
/// the canonical partial cover Y (minimum-(cost, weight) vertex cover of the
/// block's inside, i.e. the complement of its maximum independent set; for
/// edgeless blocks of size >= 2 a single cheapest vertex stands in).
#[derive(Debug, Clone)]
pub struct CvcBlockData {
    pub module: Vec<usize>,
    pub size: usize,
    pub edgeless: bool,
    pub cost_all: u64,
    pub weight_all: u64,
    pub y_set: Vec<usize>,
    pub y_cost: u64,
    pub y_weight: u64,
}

/// Compute block data for every child of the MD root, under weights `w`.
pub fn cvc_block_data(
    g: &Graph,
    costs: &CostFn,
    w: &[u64],
    md: &MdTree,
    vntds: &std::collections::HashMap<usize, VeryNiceTd>,
) -> Vec<CvcBlockData> {
    let is_data = max_is_per_node(g, costs, w, md, vntds);
    md.nodes[md.root]
        .children
        .iter()
        .map(|&c| {
            let module = md.nodes[c].module.clone();
            let size = module.len();
            let edgeless = !g.has_any_edge_within(&module);
            let cost_all: u64 = module.iter().map(|&v| costs.get(v)).sum();
            let weight_all: u64 = module.iter().map(|&v| w[v]).sum();
            let (y_set, y_cost, y_weight) = if edgeless {
                let rep = module.iter().copied().min_by_key(|&v| (costs.get(v), w[v], v)).unwrap();
                (vec![rep], costs.get(rep), w[rep])
            } else {
                let is = &is_data[c];
                let y: Vec<usize> =
                    module.iter().copied().filter(|v| is.set.binary_search(v).is_err()).collect();
                (y, cost_all - is.cost, weight_all - is.weight)
            };
            CvcBlockData {
                module,
                size,
                edgeless,
                cost_all,
                weight_all,
                y_set,
                y_cost,
                y_weight,
            }
        })
        .collect()
}

fn pow5(e: usize) -> usize {
    5usize.pow(e as u32)
}

fn digit(sig: usize, p: usize) -> usize {
    (sig / pow5(p)) % 5
}

fn insert_digit(sig: usize, p: usize, d: usize) -> usize {
    let low = sig % pow5(p);
    let high = sig / pow5(p) * pow5(p + 1);
    low + high + d * pow5(p)
}

fn bump(map: &mut Tracker, key: (u64, u64, u32), by: u8, prune: Option<u64>) {
    if let Some(b) = prune {
        if key.0 > b {
            return;
        }
    }
    let e = map.entry(key).or_insert(0);
    *e = (*e + by) & 3;
}

fn state_delta(blocks: &[CvcBlockData], v: usize, d: usize) -> (u64, u64, u32) {
    match d {
        EMPTY => (0, 0, 0),
        PART_L | PART_R => (blocks[v].y_cost, blocks[v].y_weight, 1),
        ALL_L | ALL_R => (blocks[v].cost_all, blocks[v].weight_all, 1),
        _ => unreachable!(),
    }
}

fn legal(blocks: &[CvcBlockData], v: usize, d: usize) -> bool {
    match d {
        EMPTY => blocks[v].edgeless,
        PART_L | PART_R => blocks[v].size > 1,
        _ => true,
    }
}

/// Root tracker of the prime-quotient program: for each
/// (cost, weight, touched blocks) the number of (nice cover, homogeneous
/// consistent cut) pairs modulo 4. Trackers include bag contributions
/// throughout, so the root (empty bag) holds totals.
pub fn cvc_prime_root_counts(
    blocks: &[CvcBlockData],
    vntd: &VeryNiceTd,
    prune: Option<u64>,
) -> Tracker {
    let mut tables: Vec<Vec<Tracker>> = Vec::with_capacity(vntd.nodes.len());
    for node in &vntd.nodes {
        let bag = &node.bag;
        let pos = |v: usize| bag.binary_search(&v).expect("bag member");
        let table: Vec<Tracker> = match node.kind {
            VnKind::Leaf => vec![Tracker::from([((0, 0, 0), 1)])],
            VnKind::IntroduceVertex(v) => {
                let child = &tables[node.children[0]];
                let p = pos(v);
                let mut t = vec![Tracker::new(); child.len() * 5];
                for (s, map) in child.iter().enumerate() {
                    for d in 0..5 {
                        if !legal(blocks, v, d) {
                            continue;
                        }
                        let (dc, dw, dm) = state_delta(blocks, v, d);
                        let tgt = &mut t[insert_digit(s, p, d)];
                        for (&(c, w, m), &n) in map {
                            bump(tgt, (c + dc, w + dw, m + dm), n, prune);
                        }
                    }
                }
                t
            }
            VnKind::IntroduceEdge(u, v) => {
                let child = &tables[node.children[0]];
                let (pu, pv) = (pos(u), pos(v));
                child
                    .iter()
                    .enumerate()
                    .map(|(s, map)| {
                        if CONS[digit(s, pu)][digit(s, pv)] == 1 {
                            map.clone()
                        } else {
                            Tracker::new()
                        }
                    })
                    .collect()
            }
            VnKind::Forget(v) => {
                let child = &tables[node.children[0]];
                let p = vntd.nodes[node.children[0]].bag.binary_search(&v).expect("bag member");
                let mut t = vec![Tracker::new(); child.len() / 5];
                for (s, map) in child.iter().enumerate() {
                    let tgt = &mut t[s % pow5(p) + s / pow5(p + 1) * pow5(p)];
                    for (&key, &n) in map {
                        bump(tgt, key, n, prune);
                    }
                }
                t
            }
            VnKind::Join => {
                let left = &tables[node.children[0]];
                let right = &tables[node.children[1]];
                (0..left.len())
                    .map(|s| {
                        let mut cf = 0u64;
                        let mut wf = 0u64;
                        let mut mf = 0u32;
                        for p in 0..bag.len() {
                            let (dc, dw, dm) = state_delta(blocks, bag[p], digit(s, p));
                            cf += dc;
                            wf += dw;
                            mf += dm;
                        }
                        let mut out = Tracker::new();
                        for (&(c1, w1, m1), &n1) in &left[s] {
                            for (&(c2, w2, m2), &n2) in &right[s] {
                                bump(
                                    &mut out,
                                    (c1 + c2 - cf, w1 + w2 - wf, m1 + m2 - mf),
                                    n1 * n2,
                                    prune,
                                );
                            }
                        }
                        out
                    })
                    .collect()
            }
        };
        // State-space audit: five states per bag block, minus the documented
        // exclusions (no partial state for singleton blocks, no empty state
        // for blocks with inside edges).
        assert_eq!(table.len(), pow5(bag.len()), "cover table dimension");
        let expected: usize = bag
            .iter()
            .map(|&v| if blocks[v].size == 1 { 3 } else if blocks[v].edgeless { 5 } else { 4 })
            .product();
        let enumerated = (0..table.len())
            .filter(|&s| (0..bag.len()).all(|p| legal(blocks, bag[p], digit(s, p))))
            .count();
        assert_eq!(enumerated, expected, "legal cover signature count");
        for (s, map) in table.iter().enumerate() {
            if (0..bag.len()).any(|p| !legal(blocks, bag[p], digit(s, p))) {
                assert!(map.is_empty(), "illegal cover state carries counts");
            }
        }
        tables.push(table);
    }
    tables[vntd.root()][0].clone()
}

/// Exhaustive check of the nice-cover counting identity on small quotients:
/// for each tracker key, the total number of (nice cover, homogeneous
/// consistent cut) pairs and how many of those covers induce a connected
/// subgraph. Block states are enumerated directly.
pub fn enumerate_nice_covers(
    h: &Graph,
    q: &Graph,
    blocks: &[CvcBlockData],
) -> BTreeMap<(u64, u64, u32), (u128, u128)> {
    let b = blocks.len();
    assert!(b <= 8, "nice-cover enumeration is for small quotients");
    let mut out: BTreeMap<(u64, u64, u32), (u128, u128)> = BTreeMap::new();
    // States per block: 0 empty, 1 partial, 2 all (sides handled by the
    // cut-counting factor afterwards).
    let mut phi = vec![0usize; b];
    loop {
        let legal_phi = (0..b).all(|v| match phi[v] {
            0 => blocks[v].edgeless,
            1 => blocks[v].size > 1,
            _ => true,
        });
        if legal_phi {
            let covering = q.edges().iter().all(|&(u, v)| phi[u] == 2 || phi[v] == 2);
            if covering {
                let touched: Vec<usize> = (0..b).filter(|&v| phi[v] != 0).collect();
                let mut x: Vec<usize> = Vec::new();
                let mut c = 0u64;
                let mut w = 0u64;
                for &v in &touched {
                    let set = if phi[v] == 1 { &blocks[v].y_set } else { &blocks[v].module };
                    x.extend_from_slice(set);
                    if phi[v] == 1 {
                        c += blocks[v].y_cost;
                        w += blocks[v].y_weight;
                    } else {
                        c += blocks[v].cost_all;
                        w += blocks[v].weight_all;
                    }
                }
                x.sort_unstable();
                // Homogeneous consistent cuts = 2^(components of the quotient
                // induced on the touched blocks).
                let cc = connected_components(q, Some(&touched)).len();
                let pairs = 1u128 << cc;
                let connected = h.is_connected_subset(&x) && !x.is_empty();
                let e = out.entry((c, w, touched.len() as u32)).or_insert((0, 0));
                e.0 += pairs;
                if connected {
                    e.1 += 1;
                }
            }
        }
        // Next assignment in base 3.
        let mut i = 0;
        while i < b {
            phi[i] += 1;
            if phi[i] < 3 {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
        if i == b {
            break;
        }
    }
    out
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Candidates with all edges covered from within a single maximal module M:
/// then X = M exactly (every M-vertex has an outside neighbor), all other
/// edges must be absent, and G[M] must be connected.
fn single_module_candidates(h: &Graph, costs: &CostFn, md: &MdTree) -> Option<u64> {
    let mut best = None;
    for &c in &md.nodes[md.root].children {
        let module = &md.nodes[c].module;
        let in_mod = {
            let mut m = vec![false; h.n()];
            for &v in module {
                m[v] = true;
            }
            m
        };
        let outside_edge =
            h.edges().iter().any(|&(u, v)| !in_mod[u] && !in_mod[v]);
        if outside_edge || !h.is_connected_subset(module) {
            continue;
        }
        best = min_opt(best, Some(module.iter().map(|&v| costs.get(v)).sum()));
    }
    best
}

/// Series-root candidates: at most one block may be less than fully chosen,
/// so per block M try V∖M, (V∖M) ∪ Y_M, and V. Each candidate is validated
/// directly (covers all edges, induces a connected subgraph).
fn series_candidates(h: &Graph, costs: &CostFn, blocks: &[CvcBlockData]) -> Option<u64> {
    let validate = |x: &[usize]| -> bool {
        let in_x = {
            let mut m = vec![false; h.n()];
            for &v in x {
                m[v] = true;
            }
            m
        };
        h.edges().iter().all(|&(u, v)| in_x[u] || in_x[v]) && h.is_connected_subset(x)
    };
    let total_cost: u64 = (0..h.n()).map(|v| costs.get(v)).sum();
    let mut best = Some(total_cost); // X = V is always a connected cover here
    for bd in blocks {
        let rest: Vec<usize> = {
            let mut m = vec![true; h.n()];
            for &v in &bd.module {
                m[v] = false;
            }
            (0..h.n()).filter(|&v| m[v]).collect()
        };
        let rest_cost = total_cost - bd.cost_all;
        if bd.edgeless && validate(&rest) {
            best = min_opt(best, Some(rest_cost));
        }
        let with_y: Vec<usize> = {
            let mut x = rest.clone();
            x.extend_from_slice(&bd.y_set);
            x.sort_unstable();
            x
        };
        if validate(&with_y) {
            best = min_opt(best, Some(rest_cost + bd.y_cost));
        }
    }
    best
}

/// Minimum cost of a vertex cover inducing a connected subgraph (empty for
/// edgeless graphs), or None when no such cover exists. Any Some value is
/// achievable; the optimum is found with probability at least 1 - 2^-reps.
pub fn solve_cvc(
    g: &Graph,
    costs: &CostFn,
    budget: Option<u64>,
    seed: u64,
    reps: u32,
    exact_cap: usize,
) -> Option<u64> {
    solve_cvc_per_rep(g, costs, budget, seed, reps, exact_cap).into_iter().fold(None, min_opt)
}

/// Outcome of each repetition separately; repetition r draws its isolation
/// weights from stream r of the seed. No entry is ever below the optimum;
/// candidates that need no randomness appear in every entry.
pub fn solve_cvc_per_rep(
    g: &Graph,
    costs: &CostFn,
    budget: Option<u64>,
    seed: u64,
    reps: u32,
    exact_cap: usize,
) -> Vec<Option<u64>> {
    assert!(reps >= 1);
    if g.m() == 0 {
        return vec![Some(0); reps as usize];
    }
    // All edges must live in one component; other components contribute
    // nothing (isolated vertices can never join a connected cover).
    let comps = connected_components(g, None);
    let edge_comps: Vec<&Vec<usize>> =
        comps.iter().filter(|comp| comp.iter().any(|&v| g.degree(v) > 0)).collect();
    if edge_comps.len() != 1 {
        return vec![None; reps as usize];
    }
    let (h, _names) = g.induced(edge_comps[0]);
    let costs_h = costs.restrict(edge_comps[0]);

    let md = modular_decomposition(&h);
    let info = modtw(&md, exact_cap);
    let root_kind = md.nodes[md.root].kind;
    assert!(
        matches!(root_kind, MdKind::Series | MdKind::Prime),
        "a connected graph with an edge has a series or prime root"
    );

    // Deterministic part: candidates do not depend on isolation weights
    // (weights only break ties inside Y, never its cost).
    let zero_w = vec![0u64; h.n()];
    let blocks0 = cvc_block_data(&h, &costs_h, &zero_w, &md, &info.vntds);
    let deterministic = match root_kind {
        MdKind::Series => series_candidates(&h, &costs_h, &blocks0),
        MdKind::Prime => single_module_candidates(&h, &costs_h, &md),
        _ => unreachable!(),
    };

    let randomized: Vec<Option<u64>> = if root_kind == MdKind::Prime {
        let vntd = &info.vntds[&md.root];
        (0..reps)
            .into_par_iter()
            .map(|rep| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(rep as u64);
                let w = sample_weights(&mut rng, h.n());
                let blocks = cvc_block_data(&h, &costs_h, &w, &md, &info.vntds);
                let root = cvc_prime_root_counts(&blocks, vntd, budget);
                root.iter()
                    .filter(|&(&(_, _, m), &n)| m >= 2 && n & 3 != 0)
                    .map(|(&(c, _, _), _)| c)
                    .min()
            })
            .collect()
    } else {
        vec![None; reps as usize]
    };

    randomized
        .into_iter()
        .map(|r| match (min_opt(deterministic, r), budget) {
            (Some(v), Some(b)) if v > b => None,
            (best, _) => best,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_cvc;
    use crate::td::EXACT_TD_CAP;
    use rand::{Rng, SeedableRng};

    #[test]
    fn matches_bruteforce_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for round in 0..60 {
            let n = rng.gen_range(1..=9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.2 + 0.06 * (round % 9) as f64) {
                        g.add_edge(u, v);
                    }
                }
            }
            g.finish();
            let costs = CostFn::new((0..n).map(|_| rng.gen_range(1..=5)).collect()).unwrap();
            let want = brute_cvc(&g, &costs).unwrap();
            let got = solve_cvc(&g, &costs, None, 4000 + round as u64, 12, EXACT_TD_CAP);
            assert_eq!(got, want, "n={n} m={}", g.m());
        }
    }

    #[test]
    fn single_repetitions_never_undershoot() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(62);
        for round in 0..40 {
            let n = rng.gen_range(2..=8);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        g.add_edge(u, v);
                    }
                }
            }
            g.finish();
            let costs = CostFn::new((0..n).map(|_| rng.gen_range(1..=4)).collect()).unwrap();
            let want = brute_cvc(&g, &costs).unwrap();
            for rep in 0..8u64 {
                let got = solve_cvc(&g, &costs, None, 300 * round + rep, 1, EXACT_TD_CAP);
                match (got, want) {
                    (Some(v), Some(opt)) => assert!(v >= opt),
                    (Some(_), None) => panic!("claimed a cover on an infeasible instance"),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn known_values_and_budgets() {
        // P4: cover {1,2}, connected.
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let unit = CostFn::unit(4);
        assert_eq!(solve_cvc(&p4, &unit, None, 7, 8, EXACT_TD_CAP), Some(2));
        assert_eq!(solve_cvc(&p4, &unit, Some(2), 7, 8, EXACT_TD_CAP), Some(2));
        assert_eq!(solve_cvc(&p4, &unit, Some(1), 7, 8, EXACT_TD_CAP), None);
        // Edgeless: the empty cover.
        assert_eq!(solve_cvc(&Graph::new(3), &CostFn::unit(3), None, 7, 8, EXACT_TD_CAP), Some(0));
        // Edges in two components: infeasible.
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(solve_cvc(&g, &CostFn::unit(4), None, 7, 8, EXACT_TD_CAP), None);
    }

    #[test]
    fn root_counts_match_direct_enumeration() {
        // Substituted P4: blocks of sizes 1..3 planted on a prime quotient.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(63);
        for _ in 0..25 {
            let base = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
            let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=3)).collect();
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
            for b in 0..4 {
                for i in 0..sizes[b] {
                    for j in i + 1..sizes[b] {
                        if rng.gen_bool(0.5) {
                            g.add_edge(offset[b] + i, offset[b] + j);
                        }
                    }
                }
            }
            for (u, v) in base.edges() {
                for i in 0..sizes[u] {
                    for j in 0..sizes[v] {
                        g.add_edge(offset[u] + i, offset[v] + j);
                    }
                }
            }
            g.finish();
            let costs = CostFn::new((0..n).map(|_| rng.gen_range(1..=4)).collect()).unwrap();
            let md = modular_decomposition(&g);
            assert_eq!(md.nodes[md.root].kind, MdKind::Prime);
            assert_eq!(md.nodes[md.root].children.len(), 4);
            let info = modtw(&md, EXACT_TD_CAP);
            let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(999);
            let w = sample_weights(&mut rng2, n);
            let blocks = cvc_block_data(&g, &costs, &w, &md, &info.vntds);
            let vntd = &info.vntds[&md.root];
            let got = cvc_prime_root_counts(&blocks, vntd, None);
            let q = md.nodes[md.root].quotient.as_ref().unwrap();
            let want = enumerate_nice_covers(&g, q, &blocks);
            // Every enumerated tracker matches modulo 4, and for two or more
            // touched blocks the pair count is twice the connected count.
            for (key, &(pairs, connected)) in &want {
                let dp = got.get(key).copied().unwrap_or(0);
                assert_eq!(dp as u128, pairs % 4, "tracker {key:?}");
                if key.2 >= 2 {
                    assert_eq!(pairs % 4, (2 * connected) % 4, "tracker {key:?}");
                }
            }
            for (key, &n) in &got {
                if n != 0 {
                    assert!(want.contains_key(key), "spurious tracker {key:?}");
                }
            }
        }
    }
}

//! Feedback vertex set (unit costs) via its complement, the maximum induced
//! forest, over the modular decomposition. Parallel and series nodes have
//! closed forms; prime nodes run a counting program over quotient states
//! whose root entries, reduced modulo a power of two depending on the
//! (vertices, edges) trackers, reveal which (size, weight) pairs are
//! attained by genuine induced forests. Repetitions never report a forest
//! larger than the true maximum, so the deletion count never undershoots.

use crate::cutcount::sample_weights;
use crate::graph::{CostFn, Graph};
use crate::is::max_is_per_node;
use crate::md::{modular_decomposition, MdKind, MdTree};
use crate::td::{modtw, VeryNiceTd, VnKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Tracker key: (forest size, forest weight, touched modules, quotient edges
/// among touched modules). Counts are exact modulo 2^128, which suffices for
/// quotients of at most 127 modules.
pub type FvsKey = (u32, u64, u32, u32);
pub type FvsMap = BTreeMap<FvsKey, u128>;
pub type FvsTable = Vec<FvsMap>;

pub const FVS_QUOTIENT_CAP: usize = 127;

const S0: usize = 0; // module untouched
const S1L: usize = 1; // single vertex, left side
const S1R: usize = 2; // single vertex, right side
const S20: usize = 3; // two or more vertices, no touched neighbor so far
const S21: usize = 4; // two or more vertices, one single-vertex neighbor consumed

/// cons[s1][s2]: may a quotient edge join modules in these states? Edges
/// into a 2-marked module are only allowed while consuming its single
/// permitted single-vertex neighbor (handled by the state rewrite).
const CONS: [[u8; 5]; 5] = [
    [1, 1, 1, 1, 1],
    [1, 1, 0, 0, 1],
    [1, 0, 1, 0, 1],
    [1, 0, 0, 0, 0],
    [1, 1, 1, 0, 0],
];

/// Aggregated data of one quotient vertex (= child module) consumed by the
/// inner program and the outer recursion.
#[derive(Debug, Clone)]
pub struct FvsChildData {
    pub size: usize,
    pub is_clique: bool,
    /// Maximum vertex weight in the module and its canonical vertex
    /// (smallest id among maximizers).
    pub w1: u64,
    pub y1_vertex: usize,
    /// Maximum independent set: size, weight, explicit sorted set.
    pub c_is: u32,
    pub w_is: u64,
    pub is_set: Vec<usize>,
    /// Maximum induced forest: size and weight (value only).
    pub c_if: u32,
    pub w_if: u64,
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

fn set_digit(sig: usize, p: usize, d: usize) -> usize {
    sig - digit(sig, p) * pow5(p) + d * pow5(p)
}

fn legal_state(child: &FvsChildData, d: usize) -> bool {
    match d {
        S0 | S1L | S1R => true,
        S20 => !child.is_clique,
        S21 => child.size > 1, // cliques enter here, non-cliques by rewrite
        _ => unreachable!(),
    }
}

fn legal_count(child: &FvsChildData) -> usize {
    if child.size == 1 {
        3
    } else if child.is_clique {
        4
    } else {
        5
    }
}

fn bump(map: &mut FvsMap, key: FvsKey, by: u128) {
    let e = map.entry(key).or_insert(0);
    *e = e.wrapping_add(by);
}

/// Naive reference join: every compatible pair of child signatures, states
/// combined per position (clique positions must match exactly; 2-marked
/// non-clique positions may consume on at most one side).
pub fn fvs_join_naive(left: &FvsTable, right: &FvsTable, bag_clique: &[bool]) -> FvsTable {
    let b = bag_clique.len();
    let mut out: FvsTable = vec![FvsMap::new(); pow5(b)];
    let nonempty = |t: &FvsTable| -> Vec<usize> {
        (0..t.len()).filter(|&s| !t[s].is_empty()).collect()
    };
    for &s1 in &nonempty(left) {
        for &s2 in &nonempty(right) {
            let mut s_out = 0usize;
            let mut ok = true;
            for p in 0..b {
                let (d1, d2) = (digit(s1, p), digit(s2, p));
                let d = if bag_clique[p] {
                    if d1 == d2 {
                        d1
                    } else {
                        ok = false;
                        break;
                    }
                } else {
                    match (d1, d2) {
                        (a, c) if a == c && a != S21 => a,
                        (S20, S21) | (S21, S20) => S21,
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                };
                s_out += d * pow5(p);
            }
            if !ok {
                continue;
            }
            for (&(c1, w1, v1, e1), &n1) in &left[s1] {
                for (&(c2, w2, v2, e2), &n2) in &right[s2] {
                    bump(
                        &mut out[s_out],
                        (c1 + c2, w1 + w2, v1 + v2, e1 + e2),
                        n1.wrapping_mul(n2),
                    );
                }
            }
        }
    }
    out
}

/// Fast join: fix the exact-match positions from the output signature and
/// convolve the non-clique 2-marked positions as a disjoint-union of the
/// consumed subsets.
pub fn fvs_join_fast(left: &FvsTable, right: &FvsTable, bag_clique: &[bool]) -> FvsTable {
    let b = bag_clique.len();
    let mut out: FvsTable = vec![FvsMap::new(); pow5(b)];
    for s_out in 0..pow5(b) {
        let consumed: Vec<usize> = (0..b)
            .filter(|&p| !bag_clique[p] && digit(s_out, p) == S21)
            .collect();
        // A clique position can never rewrite into the consumed state, and
        // signatures violating that carry no counts anyway; the loop below
        // also matches non-clique "unconsumed" (S20) positions exactly.
        for a_mask in 0u32..(1 << consumed.len()) {
            let mut s1 = s_out;
            let mut s2 = s_out;
            for (i, &p) in consumed.iter().enumerate() {
                if (a_mask >> i) & 1 == 1 {
                    s2 = set_digit(s2, p, S20);
                } else {
                    s1 = set_digit(s1, p, S20);
                }
            }
            if left[s1].is_empty() || right[s2].is_empty() {
                continue;
            }
            for (&(c1, w1, v1, e1), &n1) in &left[s1] {
                for (&(c2, w2, v2, e2), &n2) in &right[s2] {
                    bump(
                        &mut out[s_out],
                        (c1 + c2, w1 + w2, v1 + v2, e1 + e2),
                        n1.wrapping_mul(n2),
                    );
                }
            }
        }
    }
    out
}

/// Run the inner counting program over a prime quotient; returns the root
/// tracker map. Trackers exclude the bag: module contributions enter at the
/// forget step, quotient-edge counts at edge introduction. `naive_join`
/// selects the reference join (quadratic in table entries) over the
/// partition-based one; results are identical.
pub fn fvs_root_counts(
    children: &[FvsChildData],
    vntd: &VeryNiceTd,
    naive_join: bool,
) -> FvsMap {
    assert!(children.len() <= FVS_QUOTIENT_CAP, "quotient too large for exact 2-adic counting");
    let mut tables: Vec<FvsTable> = Vec::with_capacity(vntd.nodes.len());
    for node in &vntd.nodes {
        let bag = &node.bag;
        let pos = |v: usize| bag.binary_search(&v).expect("bag member");
        let table: FvsTable = match node.kind {
            VnKind::Leaf => vec![FvsMap::from([((0, 0, 0, 0), 1)])],
            VnKind::IntroduceVertex(v) => {
                let child = &tables[node.children[0]];
                let p = pos(v);
                let mut t: FvsTable = vec![FvsMap::new(); child.len() * 5];
                for (s, map) in child.iter().enumerate() {
                    for d in 0..5 {
                        // Cliques of size >= 2 enter the 2-marked lane in the
                        // consumed-slot so that any later touched neighbor
                        // finds their unconsumed slot empty and kills them.
                        let enter = match d {
                            S0 | S1L | S1R => true,
                            S20 => !children[v].is_clique,
                            S21 => children[v].is_clique && children[v].size > 1,
                            _ => unreachable!(),
                        };
                        if enter {
                            t[insert_digit(s, p, d)] = map.clone();
                        }
                    }
                }
                t
            }
            VnKind::IntroduceEdge(u, v) => {
                let child = &tables[node.children[0]];
                let (pu, pv) = (pos(u), pos(v));
                let mut t: FvsTable = vec![FvsMap::new(); child.len()];
                for (s, tgt) in t.iter_mut().enumerate() {
                    let (du, dv) = (digit(s, pu), digit(s, pv));
                    if CONS[du][dv] == 0 {
                        continue;
                    }
                    let newedge = du != S0 && dv != S0;
                    // Consuming a 2-marked module's single allowed neighbor
                    // pulls counts from its unconsumed slot.
                    let mut src_sig = s;
                    if newedge && du == S21 {
                        src_sig = set_digit(src_sig, pu, S20);
                    }
                    if newedge && dv == S21 {
                        src_sig = set_digit(src_sig, pv, S20);
                    }
                    let src = &child[src_sig];
                    if newedge {
                        for (&(c, w, vv, e), &n) in src {
                            bump(tgt, (c, w, vv, e + 1), n);
                        }
                    } else {
                        *tgt = src.clone();
                    }
                }
                t
            }
            VnKind::Forget(v) => {
                let child = &tables[node.children[0]];
                let p = vntd.nodes[node.children[0]].bag.binary_search(&v).expect("bag member");
                let cd = &children[v];
                let mut t: FvsTable = vec![FvsMap::new(); child.len() / 5];
                for (s, map) in child.iter().enumerate() {
                    if map.is_empty() {
                        continue;
                    }
                    let d = digit(s, p);
                    let tgt_sig = s % pow5(p) + s / pow5(p + 1) * pow5(p);
                    // (size, weight, multiplicity): the factor 2 is the free
                    // cut side of a module with no touched neighbors.
                    let contribs: &[(u32, u64, u128)] = match d {
                        S0 => &[(0, 0, 1)],
                        S1L | S1R => &[(1, cd.w1, 1)],
                        S20 => &[(cd.c_if, cd.w_if, 2)],
                        S21 if cd.is_clique => &[(cd.c_if, cd.w_if, 2)],
                        S21 => &[(cd.c_is, cd.w_is, 1)],
                        _ => unreachable!(),
                    };
                    let dv_count = if d == S0 { 0 } else { 1 };
                    for &(dc, dw, mult) in contribs {
                        let tgt = &mut t[tgt_sig];
                        for (&(c, w, vv, e), &n) in map {
                            bump(tgt, (c + dc, w + dw, vv + dv_count, e), n.wrapping_mul(mult));
                        }
                    }
                }
                t
            }
            VnKind::Join => {
                let clique_flags: Vec<bool> =
                    bag.iter().map(|&v| children[v].is_clique).collect();
                let (l, r) = (&tables[node.children[0]], &tables[node.children[1]]);
                if naive_join {
                    fvs_join_naive(l, r, &clique_flags)
                } else {
                    fvs_join_fast(l, r, &clique_flags)
                }
            }
        };
        // State-space audit: singleton modules have three legal states,
        // cliques four (no unconsumed 2-lane), everything else five.
        assert_eq!(table.len(), pow5(bag.len()), "forest table dimension");
        let expected: usize = bag.iter().map(|&v| legal_count(&children[v])).product();
        let enumerated = (0..table.len())
            .filter(|&s| (0..bag.len()).all(|p| legal_state(&children[bag[p]], digit(s, p))))
            .count();
        assert_eq!(enumerated, expected, "legal forest signature count");
        for (s, map) in table.iter().enumerate() {
            if (0..bag.len()).any(|p| !legal_state(&children[bag[p]], digit(s, p))) {
                assert!(map.is_empty(), "illegal forest state carries counts");
            }
        }
        tables.push(table);
    }
    tables[vntd.root()][0].clone()
}

/// (size, weight) pairs certified by the root counts: an entry survives
/// modulo 2^(v-e+1) only if an odd number of genuine induced forests with
/// those trackers exists.
pub fn attained_forest_values(root: &FvsMap) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    for (&(c, w, v, e), &n) in root {
        if e > v {
            continue;
        }
        let bits = (v - e + 1) as u32;
        let reduced = if bits >= 128 { n } else { n & ((1u128 << bits) - 1) };
        if reduced != 0 {
            out.push((c, w));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Greedy fallback forest: extend the module's maximum independent set by
/// ascending vertex ids, keeping the induced subgraph acyclic (union-find).
fn greedy_forest(g: &Graph, module: &[usize], is_set: &[usize], w: &[u64]) -> (u32, u64) {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut in_f = vec![false; n];
    let mut size = 0u32;
    let mut weight = 0u64;
    let add = |v: usize, parent: &mut Vec<usize>, in_f: &mut Vec<bool>| -> bool {
        // Adding v is safe if its forest neighbors lie in distinct components.
        let nbrs: Vec<usize> = g.adj(v).iter().copied().filter(|&u| in_f[u]).collect();
        let mut roots: Vec<usize> = nbrs.iter().map(|&u| find(parent, u)).collect();
        roots.sort_unstable();
        for pair in roots.windows(2) {
            if pair[0] == pair[1] {
                return false;
            }
        }
        for &u in &nbrs {
            let ru = find(parent, u);
            let rv = find(parent, v);
            parent[ru] = rv;
        }
        in_f[v] = true;
        true
    };
    for &v in is_set {
        let ok = add(v, &mut parent, &mut in_f);
        debug_assert!(ok, "an independent set is acyclic");
        size += 1;
        weight += w[v];
    }
    for &v in module {
        if in_f[v] {
            continue;
        }
        if add(v, &mut parent, &mut in_f) {
            size += 1;
            weight += w[v];
        }
    }
    (size, weight)
}

/// Bottom-up per-MD-node data under weights `w` (one repetition).
pub fn fvs_data_per_node(
    g: &Graph,
    w: &[u64],
    md: &MdTree,
    vntds: &std::collections::HashMap<usize, VeryNiceTd>,
    naive_join: bool,
) -> Vec<FvsChildData> {
    let unit = CostFn::unit(g.n());
    let is_data = max_is_per_node(g, &unit, w, md, vntds);
    let mut out: Vec<Option<FvsChildData>> = vec![None; md.nodes.len()];
    for id in (0..md.nodes.len()).rev() {
        let node = &md.nodes[id];
        let module = &node.module;
        let (y1_vertex, w1) = module
            .iter()
            .map(|&v| (v, w[v]))
            .fold((module[0], w[module[0]]), |acc, (v, wt)| if wt > acc.1 { (v, wt) } else { acc });
        let is = &is_data[id];
        let (c_is, w_is, is_set) = (is.cost as u32, is.weight, is.set.clone());
        let (is_clique, c_if, w_if) = match node.kind {
            MdKind::Leaf => (true, 1, w[module[0]]),
            MdKind::Parallel => {
                let mut c = 0u32;
                let mut wt = 0u64;
                for &ch in &node.children {
                    let d = out[ch].as_ref().unwrap();
                    c += d.c_if;
                    wt += d.w_if;
                }
                (false, c, wt)
            }
            MdKind::Series => {
                // Inside one part, or a star: an independent set in one part
                // plus a single vertex of another.
                let mut best = (0u32, 0u64);
                for &ch in &node.children {
                    let d = out[ch].as_ref().unwrap();
                    best = best.max((d.c_if, d.w_if));
                }
                for &c1 in &node.children {
                    for &c2 in &node.children {
                        if c1 == c2 {
                            continue;
                        }
                        let d1 = out[c1].as_ref().unwrap();
                        let d2 = out[c2].as_ref().unwrap();
                        best = best.max((d1.c_is + 1, d1.w_is + d2.w1));
                    }
                }
                let clique = node.children.iter().all(|&ch| out[ch].as_ref().unwrap().is_clique);
                (clique, best.0, best.1)
            }
            MdKind::Prime => {
                let vntd = vntds.get(&id).expect("decomposition for every prime node");
                let children: Vec<FvsChildData> =
                    node.children.iter().map(|&ch| out[ch].as_ref().unwrap().clone()).collect();
                let root = fvs_root_counts(&children, vntd, naive_join);
                let attained = attained_forest_values(&root);
                let best = attained.last().copied().unwrap_or((0, 0));
                let (c_if, w_if) = if best.0 > c_is {
                    best
                } else {
                    let (sub, names) = g.induced(module);
                    let w_local: Vec<u64> = names.iter().map(|&v| w[v]).collect();
                    let is_local: Vec<usize> = {
                        let inv: std::collections::HashMap<usize, usize> =
                            names.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                        is_set.iter().map(|v| inv[v]).collect()
                    };
                    let all: Vec<usize> = (0..sub.n()).collect();
                    greedy_forest(&sub, &all, &is_local, &w_local)
                };
                (false, c_if, w_if)
            }
        };
        out[id] = Some(FvsChildData {
            size: module.len(),
            is_clique,
            w1,
            y1_vertex,
            c_is,
            w_is,
            is_set,
            c_if,
            w_if,
        });
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Minimum number of deletions leaving a forest. Always feasible; every
/// repetition reports at least the true optimum, which is attained with
/// probability at least 1 - 2^-reps.
pub fn solve_fvs(g: &Graph, seed: u64, reps: u32, exact_cap: usize) -> u64 {
    solve_fvs_per_rep(g, seed, reps, exact_cap, false).into_iter().min().unwrap()
}

/// Outcome of each repetition separately; repetition r draws its isolation
/// weights from stream r of the seed. No entry is ever below the optimum.
pub fn solve_fvs_per_rep(
    g: &Graph,
    seed: u64,
    reps: u32,
    exact_cap: usize,
    naive_join: bool,
) -> Vec<u64> {
    assert!(reps >= 1);
    let n = g.n();
    if n == 0 {
        return vec![0; reps as usize];
    }
    let md = modular_decomposition(g);
    let info = modtw(&md, exact_cap);
    (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(rep as u64);
            let w = sample_weights(&mut rng, n);
            let data = fvs_data_per_node(g, &w, &md, &info.vntds, naive_join);
            n as u64 - data[md.root].c_if as u64
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Reference enumeration of the relaxed solution family on two-level graphs
// ---------------------------------------------------------------------------

/// For a host graph with planted modules (quotient q, block data), enumerate
/// the relaxed family directly: per tracker, the number of
/// (member, homogeneous consistent cut) pairs and the number of members
/// inducing a real forest. Block sizes must be at most 2 so all canonical
/// substructures are forced.
pub fn enumerate_fvs_family(
    h: &Graph,
    q: &Graph,
    part: &[Vec<usize>],
    data: &[FvsChildData],
    w: &[u64],
) -> BTreeMap<FvsKey, (u128, u128)> {
    let b = part.len();
    assert!(b <= 6 && part.iter().all(|m| m.len() <= 2), "enumeration oracle is for tiny graphs");
    let n = h.n();
    let mut out: BTreeMap<FvsKey, (u128, u128)> = BTreeMap::new();
    for xmask in 0u32..(1 << n) {
        let x: Vec<usize> = (0..n).filter(|&v| (xmask >> v) & 1 == 1).collect();
        // Per-block intersection sizes and membership in the family.
        let marks: Vec<usize> =
            (0..b).map(|i| part[i].iter().filter(|&&v| (xmask >> v) & 1 == 1).count()).collect();
        let touched: Vec<usize> = (0..b).filter(|&i| marks[i] > 0).collect();
        let mut ok = true;
        for i in 0..b {
            match marks[i] {
                0 => {}
                1 => {
                    // Canonical single vertex.
                    let v = part[i].iter().copied().find(|&v| (xmask >> v) & 1 == 1).unwrap();
                    if v != data[i].y1_vertex {
                        ok = false;
                    }
                }
                _ => {
                    let nonzero_nbrs: Vec<usize> = q
                        .adj(i)
                        .iter()
                        .copied()
                        .filter(|&j| marks[j] > 0)
                        .collect();
                    let xset: Vec<usize> =
                        part[i].iter().copied().filter(|&v| (xmask >> v) & 1 == 1).collect();
                    if nonzero_nbrs.is_empty() {
                        // Promotion: must be the canonical forest set; for
                        // blocks of size two that is the whole block.
                        if xset != part[i] {
                            ok = false;
                        }
                    } else if nonzero_nbrs.len() == 1 && marks[nonzero_nbrs[0]] == 1 {
                        // One single-vertex neighbor: must be the canonical
                        // independent set, which requires a non-clique block.
                        if data[i].is_clique || xset != data[i].is_set {
                            ok = false;
                        }
                    } else {
                        ok = false;
                    }
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        let e_q: u32 = {
            let mut cnt = 0;
            for (i, &ti) in touched.iter().enumerate() {
                for &tj in &touched[i + 1..] {
                    if q.has_edge(ti, tj) {
                        cnt += 1;
                    }
                }
            }
            cnt
        };
        let cc = crate::graph::connected_components(q, Some(&touched)).len();
        let pairs = 1u128 << cc;
        let key: FvsKey = (
            x.len() as u32,
            x.iter().map(|&v| w[v]).sum(),
            touched.len() as u32,
            e_q,
        );
        let e = out.entry(key).or_insert((0, 0));
        e.0 += pairs;
        if crate::graph::is_forest(&h.induced(&x).0) {
            e.1 += 1;
        }
    }
    out
}

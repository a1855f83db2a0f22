//! Maximum-cost independent sets over the modular decomposition, computed
//! exactly for every MD node (bottom-up), with a deterministic
//! union-compatible tie-break on the witness sets. The per-node witnesses
//! feed the connected-vertex-cover and feedback-vertex-set solvers; the root
//! entry solves the independent set problem itself.

use crate::graph::{CostFn, Graph};
use crate::md::{MdKind, MdTree};
use crate::td::{VeryNiceTd, VnKind};
use std::collections::HashMap;

/// Maximizer of (cost, weight) lexicographically over independent sets of
/// one MD-node module; `set` holds sorted original vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsData {
    pub cost: u64,
    pub weight: u64,
    pub set: Vec<usize>,
}

/// Scale factor folding (cost, weight) into one integer: value = SCALE*cost
/// + weight compares lexicographically as long as total weight stays below
/// SCALE. Weights are also capped at 2n per vertex.
fn weight_scale(n: usize) -> u128 {
    (n as u128 + 1) * (2 * n.max(1) as u128)
}

/// Tie order on disjoint-union-composable witness sets: the set containing
/// the smallest element of the symmetric difference wins. Equivalent to an
/// additive mask valuation, so per-branch maxima compose across disjoint
/// unions. Returns true when `a` strictly beats `b`.
pub fn set_beats(a: &[usize], b: &[usize]) -> bool {
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            i += 1;
            j += 1;
        } else {
            return a[i] < b[j];
        }
    }
    i < a.len()
}

fn better(a: &(u128, Vec<usize>), b: &(u128, Vec<usize>)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && set_beats(&a.1, &b.1))
}

fn insert_bit(mask: usize, p: usize, bit: usize) -> usize {
    let low = mask & ((1 << p) - 1);
    let high = (mask >> p) << (p + 1);
    low | high | (bit << p)
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] <= b[j]) {
            if j < b.len() && i < a.len() && a[i] == b[j] {
                j += 1;
            }
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out
}

/// Maximum-value independent set of a quotient graph whose vertices carry
/// aggregated child values; two states per bag vertex (out/in).
fn prime_quotient_is(vntd: &VeryNiceTd, child_vals: &[u128]) -> (u128, Vec<usize>) {
    type Entry = Option<(u128, Vec<usize>)>;
    let mut tables: Vec<Vec<Entry>> = Vec::with_capacity(vntd.nodes.len());
    for node in &vntd.nodes {
        let bag = &node.bag;
        let pos = |v: usize| bag.binary_search(&v).expect("bag member");
        let table: Vec<Entry> = match node.kind {
            VnKind::Leaf => vec![Some((0, Vec::new()))],
            VnKind::IntroduceVertex(v) => {
                let child = &tables[node.children[0]];
                let p = pos(v);
                let mut t: Vec<Entry> = vec![None; 1 << bag.len()];
                for (m, e) in child.iter().enumerate() {
                    if let Some((val, set)) = e {
                        t[insert_bit(m, p, 0)] = Some((*val, set.clone()));
                        let mut s = set.clone();
                        let at = s.partition_point(|&u| u < v);
                        s.insert(at, v);
                        t[insert_bit(m, p, 1)] = Some((val + child_vals[v], s));
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
                    .map(|(m, e)| {
                        if (m >> pu) & 1 == 1 && (m >> pv) & 1 == 1 {
                            None
                        } else {
                            e.clone()
                        }
                    })
                    .collect()
            }
            VnKind::Forget(v) => {
                let child = &tables[node.children[0]];
                let child_bag = &vntd.nodes[node.children[0]].bag;
                let p = child_bag.binary_search(&v).expect("bag member");
                (0..1usize << bag.len())
                    .map(|m| {
                        let a = &child[insert_bit(m, p, 0)];
                        let b = &child[insert_bit(m, p, 1)];
                        match (a, b) {
                            (Some(x), Some(y)) => {
                                Some(if better(x, y) { x.clone() } else { y.clone() })
                            }
                            (Some(x), None) => Some(x.clone()),
                            (None, y) => y.clone(),
                        }
                    })
                    .collect()
            }
            VnKind::Join => {
                let left = &tables[node.children[0]];
                let right = &tables[node.children[1]];
                (0..1usize << bag.len())
                    .map(|m| match (&left[m], &right[m]) {
                        (Some((va, sa)), Some((vb, sb))) => {
                            let dup: u128 = (0..bag.len())
                                .filter(|&p| (m >> p) & 1 == 1)
                                .map(|p| child_vals[bag[p]])
                                .sum();
                            Some((va + vb - dup, merge_sorted(sa, sb)))
                        }
                        _ => None,
                    })
                    .collect()
            }
        };
        // Two states per bag member, no exclusions.
        assert_eq!(table.len(), 1usize << bag.len(), "independent-set table dimension");
        tables.push(table);
    }
    tables[vntd.root()][0].clone().expect("empty choice is always feasible")
}

/// For every MD node (indexed by node id), the lexicographic
/// (cost, weight)-maximum independent set of the node's module. Weights must
/// not exceed 2n per vertex (pass zeros when no isolation weights apply).
pub fn max_is_per_node(
    g: &Graph,
    costs: &CostFn,
    weights: &[u64],
    md: &MdTree,
    vntds: &HashMap<usize, VeryNiceTd>,
) -> Vec<IsData> {
    let n = g.n();
    let scale = weight_scale(n);
    assert!(weights.iter().all(|&w| (w as u128) < scale / (n as u128 + 1) + 1));
    let mut out: Vec<Option<IsData>> = vec![None; md.nodes.len()];
    // Children carry larger ids than parents, so reverse order is bottom-up.
    for id in (0..md.nodes.len()).rev() {
        let node = &md.nodes[id];
        let data = match node.kind {
            MdKind::Leaf => {
                let v = node.module[0];
                IsData { cost: costs.get(v), weight: weights[v], set: vec![v] }
            }
            MdKind::Parallel => {
                let mut cost = 0u64;
                let mut weight = 0u64;
                let mut set = Vec::new();
                for &c in &node.children {
                    let d = out[c].as_ref().unwrap();
                    cost += d.cost;
                    weight += d.weight;
                    set = merge_sorted(&set, &d.set);
                }
                IsData { cost, weight, set }
            }
            MdKind::Series => {
                let mut best: Option<&IsData> = None;
                for &c in &node.children {
                    let d = out[c].as_ref().unwrap();
                    let beats = match best {
                        None => true,
                        Some(b) => {
                            let ea = scale * d.cost as u128 + d.weight as u128;
                            let eb = scale * b.cost as u128 + b.weight as u128;
                            ea > eb || (ea == eb && set_beats(&d.set, &b.set))
                        }
                    };
                    if beats {
                        best = Some(d);
                    }
                }
                best.unwrap().clone()
            }
            MdKind::Prime => {
                let vntd = vntds.get(&id).expect("decomposition for every prime node");
                let child_vals: Vec<u128> = node
                    .children
                    .iter()
                    .map(|&c| {
                        let d = out[c].as_ref().unwrap();
                        scale * d.cost as u128 + d.weight as u128
                    })
                    .collect();
                let (_, chosen) = prime_quotient_is(vntd, &child_vals);
                let mut cost = 0u64;
                let mut weight = 0u64;
                let mut set = Vec::new();
                for q in chosen {
                    let d = out[node.children[q]].as_ref().unwrap();
                    cost += d.cost;
                    weight += d.weight;
                    set = merge_sorted(&set, &d.set);
                }
                IsData { cost, weight, set }
            }
        };
        out[id] = Some(data);
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Exact maximum-cost independent set of the whole graph: value and a
/// deterministic witness.
pub fn solve_is(
    g: &Graph,
    costs: &CostFn,
    md: &MdTree,
    vntds: &HashMap<usize, VeryNiceTd>,
) -> IsData {
    let zeros = vec![0u64; g.n()];
    let per_node = max_is_per_node(g, costs, &zeros, md, vntds);
    per_node[md.root].clone()
}

//! Modular decomposition: the tree of strong modules with the
//! parallel / series / prime trichotomy, plus a brute-force strong-module
//! enumerator used as a test oracle.

use crate::graph::{connected_components, quotient, Graph, Partition};
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MdKind {
    Leaf,
    Parallel,
    Series,
    Prime,
}

#[derive(Debug, Clone)]
pub struct MdNode {
    pub kind: MdKind,
    /// Sorted vertex ids of the module.
    pub module: Vec<usize>,
    /// Child node ids, ordered by the minimum vertex of each child module.
    pub children: Vec<usize>,
    /// Quotient graph over the children (None for leaves). Quotient vertex i
    /// corresponds to children[i].
    pub quotient: Option<Graph>,
}

#[derive(Debug, Clone)]
pub struct MdTree {
    /// Preorder storage; nodes[0] is the root.
    pub nodes: Vec<MdNode>,
    pub root: usize,
}

#[derive(Debug, Error)]
pub enum MdError {
    #[error("brute-force module enumeration capped at {cap} vertices, got {n}")]
    TooLarge { n: usize, cap: usize },
}

pub const BRUTE_MODULE_CAP: usize = 12;

/// Is `set` a module of g: every vertex outside sees either all or none of it.
pub fn is_module(g: &Graph, set: &[usize]) -> bool {
    let inset: HashSet<usize> = set.iter().copied().collect();
    for out in 0..g.n() {
        if inset.contains(&out) {
            continue;
        }
        let hits = g.adj(out).iter().filter(|w| inset.contains(w)).count();
        if hits != 0 && hits != set.len() {
            return false;
        }
    }
    true
}

/// All strong modules (modules overlapping no other module partially),
/// sorted by (size, content). Exhaustive: guarded at BRUTE_MODULE_CAP.
pub fn strong_modules_bruteforce(g: &Graph) -> Result<Vec<Vec<usize>>, MdError> {
    let n = g.n();
    if n > BRUTE_MODULE_CAP {
        return Err(MdError::TooLarge { n, cap: BRUTE_MODULE_CAP });
    }
    let adj_mask: Vec<u32> = (0..n)
        .map(|v| g.adj(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut modules: Vec<u32> = Vec::new();
    for set in 1u32..(1 << n) {
        let mut ok = true;
        for out in 0..n {
            if set & (1 << out) != 0 {
                continue;
            }
            let hits = (adj_mask[out] & set).count_ones();
            if hits != 0 && hits != set.count_ones() {
                ok = false;
                break;
            }
        }
        if ok {
            modules.push(set);
        }
    }
    let strong: Vec<u32> = modules
        .iter()
        .copied()
        .filter(|&a| {
            modules.iter().all(|&b| {
                let (i, da, db) = (a & b, a & !b, b & !a);
                i == 0 || da == 0 || db == 0
            })
        })
        .collect();
    let mut out: Vec<Vec<usize>> = strong
        .into_iter()
        .map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

/// Smallest module of g containing seed (grown by absorbing splitters).
/// Returns the member set as a bool vector.
fn modular_closure(g: &Graph, seed: &[usize]) -> Vec<bool> {
    let n = g.n();
    let mut inset = vec![false; n];
    let mut size = 0usize;
    let mut hits = vec![0usize; n]; // |N(x) ∩ M| for every vertex
    let add = |v: usize, inset: &mut Vec<bool>, hits: &mut Vec<usize>, size: &mut usize| {
        if !inset[v] {
            inset[v] = true;
            *size += 1;
            for &w in g.adj(v) {
                hits[w] += 1;
            }
        }
    };
    for &v in seed {
        add(v, &mut inset, &mut hits, &mut size);
    }
    loop {
        let mut grew = false;
        for x in 0..n {
            if !inset[x] && hits[x] != 0 && hits[x] != size {
                add(x, &mut inset, &mut hits, &mut size);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    inset
}

/// Components of the complement graph, computed without materializing it.
fn co_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut unvisited: HashSet<usize> = (0..n).collect();
    let mut comps = Vec::new();
    while let Some(&start) = unvisited.iter().min() {
        unvisited.remove(&start);
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let nb: HashSet<usize> = g.adj(u).iter().copied().collect();
            let mut grab: Vec<usize> = unvisited.iter().copied().filter(|w| !nb.contains(w)).collect();
            for &w in &grab {
                unvisited.remove(&w);
            }
            comp.append(&mut grab.clone());
            stack.append(&mut grab);
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Maximal proper strong modules of a connected, co-connected graph (the
/// prime case). Every proper module then lies inside one block, so
/// block(u) = {u} ∪ union of all proper modular closures closure({u, x}).
fn prime_blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        let mut block = vec![false; n];
        block[u] = true;
        for x in 0..n {
            if x == u || block[x] {
                continue;
            }
            let cl = modular_closure(g, &[u, x]);
            if cl.iter().filter(|&&b| b).count() < n {
                for v in 0..n {
                    block[v] |= cl[v];
                }
            }
        }
        let members: Vec<usize> = (0..n).filter(|&v| block[v]).collect();
        for &v in &members {
            assigned[v] = true;
        }
        blocks.push(members);
    }
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Modular decomposition tree of g (n ≥ 1). O(n^3)-flavored recursive
/// partitioning; intended for the moderate sizes this library targets.
pub fn modular_decomposition(g: &Graph) -> MdTree {
    try_modular_decomposition(g, usize::MAX).expect("uncapped decomposition cannot be refused")
}

/// Like [`modular_decomposition`], but refuses (with a message) to split any
/// prime module on more than `prime_cap` vertices. Splitting a prime module
/// runs quadratically many modular closures, which dominates the cost on
/// large prime graphs; callers that must stay responsive set a cap and treat
/// the error as "too large to decompose". Parallel and series splits are
/// near-linear and never refused.
pub fn try_modular_decomposition(g: &Graph, prime_cap: usize) -> Result<MdTree, String> {
    assert!(g.n() >= 1, "modular decomposition needs at least one vertex");
    let mut nodes: Vec<MdNode> = Vec::new();
    let all: Vec<usize> = (0..g.n()).collect();
    build(g, &all, &mut nodes, prime_cap)?;
    Ok(MdTree { nodes, root: 0 })
}

fn build(
    g: &Graph,
    module: &[usize],
    nodes: &mut Vec<MdNode>,
    prime_cap: usize,
) -> Result<usize, String> {
    let id = nodes.len();
    nodes.push(MdNode { kind: MdKind::Leaf, module: module.to_vec(), children: Vec::new(), quotient: None });
    if module.len() == 1 {
        return Ok(id);
    }
    let (sub, local_to_orig) = g.induced(module);
    let comps = connected_components(&sub, None);
    let (kind, blocks_local) = if comps.len() >= 2 {
        (MdKind::Parallel, comps)
    } else {
        let cocomps = co_components(&sub);
        if cocomps.len() >= 2 {
            (MdKind::Series, cocomps)
        } else {
            if sub.n() > prime_cap {
                return Err(format!(
                    "prime module on {} vertices: splitting it takes quadratically many \
                     modular closures; the decomposition cap is {prime_cap}",
                    sub.n()
                ));
            }
            let blocks = prime_blocks(&sub);
            assert!(
                blocks.len() >= 4,
                "prime quotient on {} vertices; connected co-connected graphs have prime quotients of order >= 4",
                blocks.len()
            );
            (MdKind::Prime, blocks)
        }
    };
    let part = Partition::new(blocks_local.clone(), sub.n());
    let q = quotient(&sub, &part);
    let mut children = Vec::with_capacity(part.len());
    for block in &part.blocks {
        let orig: Vec<usize> = block.iter().map(|&v| local_to_orig[v]).collect();
        children.push(build(g, &orig, nodes, prime_cap)?);
    }
    nodes[id].kind = kind;
    nodes[id].children = children;
    nodes[id].quotient = Some(q);
    Ok(id)
}

impl MdTree {
    /// Child index (quotient vertex) within `node` whose module contains v.
    pub fn child_index_of(&self, node: usize, v: usize) -> usize {
        self.nodes[node]
            .children
            .iter()
            .position(|&c| self.nodes[c].module.binary_search(&v).is_ok())
            .expect("vertex not under node")
    }

    pub fn prime_node_ids(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].kind == MdKind::Prime).collect()
    }

    /// Quotients of the prime nodes; their total order is at most 2n.
    pub fn prime_quotients(&self) -> Vec<(usize, &Graph)> {
        self.prime_node_ids()
            .into_iter()
            .map(|i| (i, self.nodes[i].quotient.as_ref().expect("prime node has quotient")))
            .collect()
    }

    pub fn modules_sorted(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.nodes.iter().map(|n| n.module.clone()).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// JSON view with 1-indexed original labels, preorder node ids.
    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| {
                serde_json::json!({
                    "id": id,
                    "kind": n.kind,
                    "module": n.module.iter().map(|v| v + 1).collect::<Vec<usize>>(),
                    "children": n.children,
                    "quotient_edges": n.quotient.as_ref().map(|q| q.edges()),
                })
            })
            .collect();
        serde_json::json!({ "root": self.root, "nodes": nodes })
    }
}

/// C5 with every vertex substituted by a triangle (test fixture shared
/// across modules: its MD tree is a prime root over five series children).
#[cfg(test)]
pub fn c5_of_triangles() -> Graph {
    let mut g = Graph::new(15);
    for b in 0..5 {
        let o = 3 * b;
        g.add_edge(o, o + 1);
        g.add_edge(o + 1, o + 2);
        g.add_edge(o, o + 2);
    }
    for b in 0..5 {
        let nb = (b + 1) % 5;
        for x in 0..3 {
            for y in 0..3 {
                g.add_edge(3 * b + x, 3 * nb + y);
            }
        }
    }
    g.finish();
    g
}

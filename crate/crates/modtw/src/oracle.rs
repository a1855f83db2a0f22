//! Exhaustive reference solvers over bitmask-encoded vertex subsets. These
//! are deliberately simple and slow; they exist to cross-check the real
//! solvers on small instances.

use crate::graph::{CostFn, Graph, Problem, ProblemInstance};
use thiserror::Error;

pub const BRUTE_CAP: usize = 16;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("brute force capped at {cap} vertices, got {n}")]
    TooLarge { n: usize, cap: usize },
}

fn guard(n: usize) -> Result<(), OracleError> {
    if n > BRUTE_CAP {
        Err(OracleError::TooLarge { n, cap: BRUTE_CAP })
    } else {
        Ok(())
    }
}

fn adj_masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.adj(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect()
}

fn mask_cost(c: &CostFn, mask: u32) -> u64 {
    let mut m = mask;
    let mut sum = 0u64;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        sum += c.get(v);
    }
    sum
}

/// Empty and singleton sets count as connected.
fn mask_connected(adj: &[u32], mask: u32) -> bool {
    if mask == 0 {
        return true;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    loop {
        let mut grow = seen;
        let mut m = seen;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            grow |= adj[v] & mask;
        }
        if grow == seen {
            break;
        }
        seen = grow;
    }
    seen == mask
}

fn mask_is_independent(g: &Graph, mask: u32) -> bool {
    g.edges().iter().all(|&(u, v)| (mask >> u) & 1 == 0 || (mask >> v) & 1 == 0)
}

fn mask_is_forest(adj: &[u32], n: usize, mask: u32) -> bool {
    // Components minus vertices plus edges must be zero for a forest.
    let mut edges = 0usize;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        edges += (adj[v] & mask).count_ones() as usize;
    }
    edges /= 2;
    let verts = mask.count_ones() as usize;
    let mut comps = 0usize;
    let mut left = mask;
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        loop {
            let mut grow = seen;
            let mut s = seen;
            while s != 0 {
                let v = s.trailing_zeros() as usize;
                s &= s - 1;
                grow |= adj[v] & mask;
            }
            if grow == seen {
                break;
            }
            seen = grow;
        }
        comps += 1;
        left &= !seen;
    }
    let _ = n;
    verts == edges + comps
}

/// Minimum cost of a connected vertex set containing all terminals.
pub fn brute_steiner(g: &Graph, c: &CostFn, terminals: &[usize]) -> Result<Option<u64>, OracleError> {
    guard(g.n())?;
    assert!(!terminals.is_empty());
    let adj = adj_masks(g);
    let kmask = terminals.iter().fold(0u32, |m, &v| m | (1 << v));
    let full = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    let mut best: Option<u64> = None;
    // Enumerate supersets of the terminal mask only.
    let rest = full & !kmask;
    let mut sub = 0u32;
    loop {
        let mask = sub | kmask;
        if mask_connected(&adj, mask) {
            let cost = mask_cost(c, mask);
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        if sub == rest {
            break;
        }
        sub = (sub.wrapping_sub(rest)) & rest;
    }
    Ok(best)
}

/// Minimum cost of a nonempty connected set dominating every vertex.
pub fn brute_cds(g: &Graph, c: &CostFn) -> Result<Option<u64>, OracleError> {
    guard(g.n())?;
    let n = g.n();
    if n == 0 {
        return Ok(None);
    }
    let adj = adj_masks(g);
    let full = (1u32 << n) - 1;
    let mut best: Option<u64> = None;
    for mask in 1u32..=full {
        let mut dominated = mask;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            dominated |= adj[v];
        }
        if dominated == full && mask_connected(&adj, mask) {
            let cost = mask_cost(c, mask);
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
    }
    Ok(best)
}

/// Minimum cost of a vertex cover inducing a connected subgraph (the empty
/// cover is allowed for edgeless graphs).
pub fn brute_cvc(g: &Graph, c: &CostFn) -> Result<Option<u64>, OracleError> {
    guard(g.n())?;
    let adj = adj_masks(g);
    let n = g.n();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let edges = g.edges();
    let mut best: Option<u64> = None;
    for mask in 0u32..=full {
        let covers = edges.iter().all(|&(u, v)| (mask >> u) & 1 == 1 || (mask >> v) & 1 == 1);
        if covers && mask_connected(&adj, mask) {
            let cost = mask_cost(c, mask);
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        if mask == full {
            break;
        }
    }
    Ok(best)
}

/// Minimum number of deletions leaving a forest (unit costs).
pub fn brute_fvs(g: &Graph) -> Result<u64, OracleError> {
    guard(g.n())?;
    let adj = adj_masks(g);
    let n = g.n();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best = n as u64;
    for mask in 0u32..=full {
        if mask_is_forest(&adj, n, full & !mask) {
            best = best.min(mask.count_ones() as u64);
        }
        if mask == full {
            break;
        }
    }
    Ok(best)
}

/// Maximum cost of an independent set, together with one maximizer
/// (ties: lexicographically smallest sorted vertex list).
pub fn brute_max_is(g: &Graph, c: &CostFn) -> Result<(u64, Vec<usize>), OracleError> {
    guard(g.n())?;
    let n = g.n();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best: (u64, Vec<usize>) = (0, Vec::new());
    for mask in 0u32..=full {
        if mask_is_independent(g, mask) {
            let cost = mask_cost(c, mask);
            let set: Vec<usize> = (0..n).filter(|&v| (mask >> v) & 1 == 1).collect();
            if cost > best.0 || (cost == best.0 && !set.is_empty() && set < best.1) {
                best = (cost, set);
            }
        }
        if mask == full {
            break;
        }
    }
    Ok(best)
}

/// Dispatch on the instance problem; the result is the optimum value
/// (max for independent set, min otherwise), None when infeasible.
pub fn brute_optimum(inst: &ProblemInstance) -> Result<Option<u64>, OracleError> {
    let g = &inst.graph;
    let c = &inst.costs;
    Ok(match inst.problem {
        Problem::Is => Some(brute_max_is(g, c)?.0),
        Problem::St => brute_steiner(g, c, &inst.terminals)?,
        Problem::Cds => brute_cds(g, c)?,
        Problem::Cvc => brute_cvc(g, c)?,
        Problem::Fvs => Some(brute_fvs(g)?),
    })
}

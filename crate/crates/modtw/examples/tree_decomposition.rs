//! Tree decompositions: exact (small graphs), heuristic, and the "very nice"
//! normal form the dynamic programs consume.
//!
//! The parameter used throughout this crate is modular treewidth: the largest
//! treewidth over the prime quotients of the modular decomposition (floored
//! at 2). A very nice decomposition is rooted with empty root and leaf bags
//! and exactly five node kinds - leaf, introduce-vertex, introduce-edge
//! (bag unchanged; both endpoints present), forget, and join (two children
//! sharing the parent's bag) - with every edge introduced exactly once.
//!
//! Run with: cargo run --example tree_decomposition

use modtw::graph::Graph;
use modtw::md::modular_decomposition;
use modtw::td::{
    heuristic_td, modtw, td_to_pace, to_very_nice, treewidth_exact, validate_td,
    validate_very_nice, VnKind, EXACT_TD_CAP,
};

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
        edges.push((i, 5 + i)); // spokes
    }
    Graph::from_edges(10, &edges)
}

fn main() {
    let g = petersen();
    println!("Petersen graph: n = {}, m = {}", g.n(), g.m());

    let (width, order) = treewidth_exact(&g).expect("within exact cap");
    println!("exact treewidth: {width} (elimination order found: {order:?})");

    let td = heuristic_td(&g);
    validate_td(&g, &td).expect("heuristic decomposition is valid");
    println!("heuristic (min-fill) width: {} over {} bags", td.width, td.bags.len());

    let vn = to_very_nice(&g, &td);
    validate_very_nice(&g, &vn).expect("normal form is valid");
    let mut counts = [0usize; 5];
    for node in &vn.nodes {
        match node.kind {
            VnKind::Leaf => counts[0] += 1,
            VnKind::IntroduceVertex(_) => counts[1] += 1,
            VnKind::IntroduceEdge(_, _) => counts[2] += 1,
            VnKind::Forget(_) => counts[3] += 1,
            VnKind::Join => counts[4] += 1,
        }
    }
    println!(
        "very nice: {} nodes (leaf {}, introduce-vertex {}, introduce-edge {}, forget {}, join {})",
        vn.nodes.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4]
    );
    assert_eq!(counts[2], g.m(), "each edge is introduced exactly once");
    assert!(vn.nodes[vn.root()].bag.is_empty(), "root bag is empty");

    // Interchange format for external decomposition tools.
    let pace = td_to_pace(&td, g.n());
    println!("\nPACE-style encoding of the heuristic decomposition:");
    for line in pace.lines().take(4) {
        println!("  {line}");
    }
    println!("  ... ({} lines total)", pace.lines().count());

    // Modular treewidth of a graph whose only prime quotient is this graph:
    // the Petersen graph is prime, so its modular treewidth is its treewidth.
    let md = modular_decomposition(&g);
    let info = modtw(&md, EXACT_TD_CAP);
    println!(
        "\nmodular treewidth: {} (exact: {}, prime quotients: {}, widest: {})",
        info.k, !info.approximate, info.prime_node_count, info.max_quotient_width
    );
}

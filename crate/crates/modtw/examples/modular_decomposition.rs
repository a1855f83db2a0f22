//! Compute the modular decomposition tree of a graph.
//!
//! A module is a vertex set whose members are indistinguishable from outside:
//! every outside vertex sees all of the set or none of it. The strong modules
//! (those overlapping no other module) form a tree with the whole vertex set
//! at the root and singletons at the leaves. Every internal node is one of
//!   parallel - the quotient of its children is edgeless,
//!   series   - the quotient is complete,
//!   prime    - the quotient has no nontrivial module at all.
//! The tree has at most 2n nodes, and only the prime quotients carry any
//! structural complexity; everything else is recursive composition.
//!
//! Run with: cargo run --example modular_decomposition

use modtw::gen::substitute;
use modtw::graph::Graph;
use modtw::md::{is_module, modular_decomposition, MdKind};

fn describe(g: &Graph, name: &str) {
    let md = modular_decomposition(g);
    println!("{name}: n = {}, m = {}", g.n(), g.m());
    println!("  {} tree nodes (bound: 2n = {})", md.nodes.len(), 2 * g.n());
    for (id, node) in md.nodes.iter().enumerate() {
        let members: Vec<usize> = node.module.iter().map(|&v| v + 1).collect();
        let kind = match node.kind {
            MdKind::Leaf => "leaf",
            MdKind::Parallel => "parallel",
            MdKind::Series => "series",
            MdKind::Prime => "prime",
        };
        if node.module.len() > 1 || md.nodes.len() == 1 {
            println!("  node {id}: {kind:<8} module {members:?}");
        }
        // Every tree node's vertex set really is a module.
        assert!(is_module(g, &node.module));
    }
    for (id, q) in md.prime_quotients() {
        println!("  prime node {id}: quotient on {} vertices, {} edges", q.n(), q.m());
    }
    println!();
}

fn main() {
    // A 5-cycle where every vertex was replaced by a triangle. The triangles
    // are modules; the root quotient is the prime 5-cycle.
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
    let (blown_up, _) = substitute(&c5, &vec![triangle; 5]);
    describe(&blown_up, "C5 with each vertex blown up into a triangle");

    // A cograph: complement-reducible, hence no prime node anywhere.
    // join(union(K1, K2), K1) has series root over a parallel part.
    let cograph = Graph::from_edges(4, &[(0, 3), (1, 3), (2, 3), (1, 2)]);
    describe(&cograph, "cograph (paw)");

    // The path P4 is the smallest prime graph: its only modules are trivial.
    let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
    describe(&p4, "P4, smallest prime graph");
}

//! Random graphs with planted module structure, built by recursive
//! substitution: a random quotient whose vertices are replaced by smaller
//! recursively-built graphs. The planted blocks come back out of the
//! modular decomposition, which keeps the effective parameter (largest
//! prime quotient width) small even as the graph grows.
//!
//! Run with: cargo run --example random_modular_instances

use modtw::gen::{is_twinclass_pair, random_modular_graph, substitute};
use modtw::graph::{twinclasses, Graph};
use modtw::md::{is_module, modular_decomposition};
use modtw::td::{modtw, EXACT_TD_CAP};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2718);

    for levels in [1u32, 2, 3] {
        let (g, blocks) = random_modular_graph(levels, 3, 0.55, &mut rng);
        let md = modular_decomposition(&g);
        let info = modtw(&md, EXACT_TD_CAP);
        println!(
            "levels {levels}: n = {:>2}, m = {:>3}, md nodes = {:>2}, \
             modular treewidth = {} (prime quotients: {}, widest: {})",
            g.n(),
            g.m(),
            md.nodes.len(),
            info.k,
            info.prime_node_count,
            info.max_quotient_width
        );
        // Every planted top-level block is a module of the result.
        for b in &blocks {
            assert!(is_module(&g, b));
        }
    }

    // Substitution under the hood: plant three specific factors into a path.
    let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
    let factors = vec![
        Graph::from_edges(2, &[(0, 1)]), // an edge
        Graph::new(2),                   // two isolated vertices
        Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]), // a triangle
    ];
    let (g, blocks) = substitute(&p3, &factors);
    println!("\nP3 with factors (K2, 2K1, K3): n = {}, m = {}", g.n(), g.m());
    for (i, b) in blocks.iter().enumerate() {
        let members: Vec<usize> = b.iter().map(|&v| v + 1).collect();
        println!("  block {}: {members:?} (module: {})", i + 1, is_module(&g, b));
    }

    // The two vertices of the edgeless middle block are twins: same
    // neighbors outside the pair. Twinclasses recover exactly the maximal
    // such classes; they are the unit the hardness constructions count in.
    let part = twinclasses(&g);
    println!("twinclasses: {} classes", part.len());
    assert!(is_twinclass_pair(&g, blocks[1][0], blocks[1][1]));

    // Anti-example: the endpoints of a 4-path see different neighbors.
    let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
    assert!(!is_twinclass_pair(&p4, 0, 3));
}

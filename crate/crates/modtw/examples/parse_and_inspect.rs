//! Parse the `.mtw` instance format, inspect the result, and write it back.
//!
//! The format is line based and 1-indexed:
//!   c <comment>          anywhere
//!   p mtw <n> <m>        exactly once, before any other data line
//!   e <u> <v>            one per edge
//!   v <u> <cost>         optional vertex cost (default 1)
//!   k <u>                terminal, Steiner tree instances only
//!   b <budget>           optional decision budget
//!
//! Run with: cargo run --example parse_and_inspect

use modtw::graph::{connected_components, parse_instance, Problem};

fn main() {
    let text = "\
c a 6-cycle with a chord and one expensive vertex
p mtw 6 7
e 1 2
e 2 3
e 3 4
e 4 5
e 5 6
e 6 1
e 2 5
v 4 9
b 7
";

    let inst = parse_instance(text, Problem::Cvc).expect("well-formed instance");
    let g = &inst.graph;

    println!("problem: {}", inst.problem.code());
    println!("n = {}, m = {}", g.n(), g.m());
    println!("budget = {:?}", inst.budget);
    println!("unit costs: {}", inst.costs.is_unit());
    for v in 0..g.n() {
        let nbrs: Vec<usize> = g.adj(v).iter().map(|&u| u + 1).collect();
        println!(
            "  vertex {} (cost {}): degree {}, neighbors {:?}",
            v + 1,
            inst.costs.get(v),
            g.degree(v),
            nbrs
        );
    }
    println!("connected: {}", g.is_connected());
    println!("components: {}", connected_components(g, None).len());

    // Round-trip: the writer emits the same canonical form the parser accepts.
    let out = inst.to_mtw();
    let again = parse_instance(&out, Problem::Cvc).expect("round-trip");
    assert_eq!(again.graph, inst.graph);
    assert_eq!(again.budget, inst.budget);
    println!("\ncanonical form:\n{out}");

    // Malformed input reports the offending line.
    let bad = "p mtw 3 1\ne 1 4\n";
    let err = parse_instance(bad, Problem::Is).unwrap_err();
    println!("parse error demo -> line {}: {}", err.line, err.msg);
}

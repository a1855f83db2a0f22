//! The feedback-vertex-set hardness family. Same shape as the cover family -
//! columns of 133-vertex gadgets transmit one of five states per twinclass
//! pair - but optimality is certified combinatorially: the generator emits a
//! vertex-disjoint packing of small subgraphs whose individual deletion
//! requirements sum to exactly the budget, so no solution can beat it.
//!
//! Run with: cargo run --example generate_lower_bound_fvs

use modtw::gen::{
    build_fvs_witness, fvs_gadget_cover, gen_fvs_lb, verify_fvs_packing, verify_fvs_witness,
    CnfFormula, PackingKind, FVS_COVER_SIZE, FVS_GADGET_VERTICES,
};
use modtw::graph::is_forest;
use std::collections::BTreeMap;

fn main() {
    // The per-gadget deletion sets: 16 vertices for each of the 5 states.
    println!("per-gadget deletion sets (gadget has {FVS_GADGET_VERTICES} vertices):");
    for state in 0..5 {
        let cover = fvs_gadget_cover(state);
        assert_eq!(cover.len(), FVS_COVER_SIZE);
        println!("  state {}: {} deletions", state + 1, cover.len());
    }

    // Assemble an instance from a small formula.
    let cnf = CnfFormula::parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n").unwrap();
    let beta = 2;
    let (graph, budget, index, packing) = gen_fvs_lb(&cnf, beta);
    println!(
        "\nencoded {} vars / {} clauses at beta={beta}: n = {}, m = {}, budget = {budget}",
        cnf.n_vars,
        cnf.clauses.len(),
        graph.n(),
        graph.m()
    );
    println!("  {} columns, clause cycle length {}", index.columns, index.cycle_len);

    // The packing certifies the lower bound: disjoint subgraphs, each
    // needing a known number of deletions, summing to the whole budget.
    verify_fvs_packing(&graph, &packing, budget).expect("packing certificate");
    let mut by_kind: BTreeMap<&str, (usize, u64)> = BTreeMap::new();
    for el in &packing {
        let name = match el.kind {
            PackingKind::ConnectorTriangle => "connector triangle",
            PackingKind::CliqueBlock => "clique block",
            PackingKind::OutputBlock => "output block",
            PackingKind::InputBlock => "input block",
            PackingKind::DecodeTriangle => "decode triangle",
            PackingKind::ArrowTriangle => "arrow triangle",
        };
        let entry = by_kind.entry(name).or_insert((0, 0));
        entry.0 += 1;
        entry.1 += el.kind.deletions();
    }
    println!("  packing certificate ({} elements):", packing.len());
    let mut total = 0;
    for (name, (count, deletions)) in &by_kind {
        println!("    {count:>5} x {name:<18} -> {deletions} forced deletions");
        total += deletions;
    }
    assert_eq!(total, budget);
    println!("    forced deletions sum to the budget: {total} = {budget}");

    // A satisfying assignment turns into a deletion set of exactly that
    // size whose removal leaves a forest.
    let assignment = [false, true]; // satisfies both clauses
    assert!(cnf.satisfied_by(&assignment));
    let witness = build_fvs_witness(&cnf, &assignment, &index);
    let report = verify_fvs_witness(&graph, &witness, budget);
    println!(
        "\nwitness from satisfying assignment: size {} / budget {}, \
         remainder is a forest: {}",
        report.actual_size, report.expected_size, report.structure_ok
    );
    assert!(report.ok());

    // Removing the witness really leaves a forest (re-derived here).
    let keep: Vec<usize> = {
        let mut in_w = vec![false; graph.n()];
        for &v in &witness {
            in_w[v] = true;
        }
        (0..graph.n()).filter(|&v| !in_w[v]).collect()
    };
    let (rest, _) = graph.induced(&keep);
    assert!(is_forest(&rest));
    println!("packing certificate + matching witness: the optimum is exactly {budget}");
}

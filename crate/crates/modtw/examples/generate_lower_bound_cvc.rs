//! The connected-vertex-cover hardness family: instances whose modular
//! structure packs 5^p assignments into p-vertex twinclass interfaces, so
//! any solver faster than 5^k per unit of modular treewidth would break
//! standard hypotheses. This example dissects the column gadget first, then
//! assembles a full instance from a CNF formula and certifies a witness.
//!
//! Run with: cargo run --example generate_lower_bound_cvc

use modtw::gen::{
    build_cvc_witness, cvc_gadget_cover, cvc_gadget_matching, cvc_interface_state,
    cvc_single_gadget, gen_cvc_lb, verify_cvc_witness, CnfFormula, CVC_COVER_SIZE,
    CVC_GADGET_INTERNAL_EDGES, CVC_GADGET_MATCHING_SIZE, CVC_GADGET_ROOT_DEGREE,
    CVC_GADGET_VERTICES, CVC_STATE_TABLE,
};

fn main() {
    // --- The 63-vertex column gadget ------------------------------------
    let (g, root) = cvc_single_gadget();
    println!("column gadget + root: n = {}, m = {}", g.n(), g.m());
    assert_eq!(g.n(), CVC_GADGET_VERTICES + 1);
    assert_eq!(g.m(), CVC_GADGET_INTERNAL_EDGES + CVC_GADGET_ROOT_DEGREE);
    println!(
        "  {} internal edges, root degree {}",
        CVC_GADGET_INTERNAL_EDGES,
        g.degree(root)
    );

    // A 21-edge matching certifies that 21 vertices are always necessary
    // before connectivity costs are even considered.
    let matching = cvc_gadget_matching();
    assert_eq!(matching.len(), CVC_GADGET_MATCHING_SIZE);
    let mut seen = vec![false; g.n()];
    for &(u, v) in &matching {
        assert!(g.has_edge(u, v) && !seen[u] && !seen[v]);
        seen[u] = true;
        seen[v] = true;
    }
    println!("  matching of {} disjoint edges verified", matching.len());

    // Exactly five tight covers, one per interface state. Their traces on
    // the four interface vertices (u1, u2, out', out) are pairwise distinct,
    // which is what lets one column transmit log2(5) bits per interface
    // vertex pair to the next.
    println!("  five tight covers of size {CVC_COVER_SIZE}:");
    for state in 0..5 {
        let cover = cvc_gadget_cover(state);
        assert_eq!(cover.len(), CVC_COVER_SIZE);
        let atoms = cvc_interface_state(&g, root, &cover);
        assert_eq!(atoms, CVC_STATE_TABLE[state]);
        println!("    state {}: interface (u1, u2, out', out) = {atoms:?}", state + 1);
    }

    // --- A full instance from a CNF formula -----------------------------
    let cnf = CnfFormula::parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n").unwrap();
    let beta = 2; // variables per group
    let (graph, budget, index) = gen_cvc_lb(&cnf, beta);
    println!(
        "\nencoded {} vars / {} clauses at beta={beta}: n = {}, m = {}, budget = {budget}",
        cnf.n_vars,
        cnf.clauses.len(),
        graph.n(),
        graph.m()
    );
    println!(
        "  {} columns, {} groups of <= {beta} vars, 5^p with p = {}",
        index.columns, index.t, index.p
    );

    // A satisfying assignment yields a connected cover of size exactly
    // `budget`; x1=T, x2=T, x3=F satisfies both clauses.
    let assignment = [true, true, false];
    assert!(cnf.satisfied_by(&assignment));
    let witness = build_cvc_witness(&cnf, &assignment, &index);
    let report = verify_cvc_witness(&graph, &witness, budget);
    println!(
        "  witness from satisfying assignment: size {} / budget {}, \
         covers: {}, connected: {}",
        report.actual_size, report.expected_size, report.structure_ok, report.connectivity_ok
    );
    assert!(report.ok());

    // A falsifying assignment still covers, but connectivity fails: the
    // clause vertex for the violated clause is stranded from the root.
    let bad = [false, true, false]; // clause (x1 v -x2) violated
    assert!(!cnf.satisfied_by(&bad));
    let bad_witness = build_cvc_witness(&cnf, &bad, &index);
    let bad_report = verify_cvc_witness(&graph, &bad_witness, budget);
    println!(
        "  witness from falsifying assignment: covers: {}, connected: {}",
        bad_report.structure_ok, bad_report.connectivity_ok
    );
    assert!(bad_report.structure_ok && !bad_report.connectivity_ok);
}

//! Exact solvers for connectivity problems (Steiner tree, connected
//! dominating set, connected vertex cover, feedback vertex set, independent
//! set) parameterized by the treewidth of prime quotients in the modular
//! decomposition, using randomized cut-and-count dynamic programming with
//! weight isolation, plus the supporting machinery: modular decomposition,
//! (very nice) tree decompositions, brute-force reference solvers, and
//! hard-instance generators.

pub mod graph;
pub mod md;
pub mod td;
pub mod cutcount;
pub mod oracle;
pub mod is;
pub mod steiner;
pub mod cds;
pub mod cvc;
pub mod fvs;
pub mod gen;
pub mod runner;

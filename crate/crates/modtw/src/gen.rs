//! Instance generators.
//!
//! Three families live here:
//!
//! 1. [`random_modular_graph`]: random graphs built by recursive substitution,
//!    so the planted blocks are guaranteed modules — handy test instances with
//!    nontrivial modular structure.
//! 2. [`gen_cvc_lb`]: a CNF-encoding family for connected vertex cover. The
//!    emitted graph has a connected vertex cover of size exactly `budget` iff
//!    the formula is satisfiable, and any satisfying assignment converts into
//!    a verified witness via [`build_cvc_witness`].
//! 3. [`gen_fvs_lb`]: the analogous CNF-encoding family for feedback vertex
//!    set, together with a vertex-disjoint packing of subgraphs certifying
//!    that no smaller deletion set exists, and [`build_fvs_witness`].
//!
//! Both CNF families share the same column structure. Variables are split
//! into `t` groups of at most `beta`; each group's truth assignments embed
//! injectively into five-valued digit strings of length `p` (the smallest
//! power with `5^p >= 2^beta`, see [`kappa`]). The graph is a matrix of
//! `t * p` horizontal chains times `m * (4tp + 1)` columns; each cell is a
//! fixed path gadget supporting exactly five tight local solutions, and the
//! chain order of those five states can only ever advance, so some window of
//! `m` consecutive columns is drift-free and its decoded digit strings read
//! off a satisfying assignment. Decoding gadgets per group/column and one
//! clause gadget per column tie the digit strings to clause satisfaction.
//!
//! The witness verifiers in this module are deliberately independent of the
//! solver stack: they only use breadth-first search and forest checks from
//! the graph core.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::Graph;

// ---------------------------------------------------------------------------
// CNF formulas
// ---------------------------------------------------------------------------

/// A CNF formula with 1-based signed literals, e.g. `[1, -3]` is x1 or not-x3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub n_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Maximum clause length (0 only for empty clause lists).
    pub width: usize,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<Vec<i32>>) -> Result<CnfFormula, String> {
        if n_vars == 0 {
            return Err("formula needs at least one variable".into());
        }
        if n_vars > 10_000 {
            return Err(format!("variable count {n_vars} is unreasonably large"));
        }
        let mut width = 0;
        for (ci, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(format!("clause {} is empty", ci + 1));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > n_vars {
                    return Err(format!(
                        "literal {lit} in clause {} is outside 1..={n_vars}",
                        ci + 1
                    ));
                }
            }
            width = width.max(clause.len());
        }
        Ok(CnfFormula { n_vars, clauses, width })
    }

    pub fn m_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Parse DIMACS CNF: `c` comments, one `p cnf <vars> <clauses>` header,
    /// whitespace-separated literals with `0` terminating each clause.
    pub fn parse_dimacs(text: &str) -> Result<CnfFormula, String> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if header.is_some() {
                    return Err("duplicate p line".into());
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 3 || toks[0] != "cnf" {
                    return Err("expected 'p cnf <vars> <clauses>'".into());
                }
                let n: usize = toks[1].parse().map_err(|_| "bad variable count".to_string())?;
                let m: usize = toks[2].parse().map_err(|_| "bad clause count".to_string())?;
                header = Some((n, m));
                continue;
            }
            if header.is_none() {
                return Err("literals before the p header".into());
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| format!("bad literal '{tok}'"))?;
                if lit == 0 {
                    if current.is_empty() {
                        return Err("empty clause (bare 0)".into());
                    }
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let (n, m) = header.ok_or_else(|| "missing p header".to_string())?;
        if !current.is_empty() {
            return Err("last clause is not 0-terminated".into());
        }
        if clauses.len() != m {
            return Err(format!("header promises {m} clauses, found {}", clauses.len()));
        }
        CnfFormula::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.n_vars);
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment[lit.unsigned_abs() as usize - 1];
                (lit > 0) == value
            })
        })
    }
}

/// Random CNF that is satisfiable by construction: a planted assignment is
/// drawn first and every clause receives at least one literal it satisfies.
/// Returns the formula and the planted assignment.
pub fn random_satisfiable_cnf(
    n_vars: usize,
    m_clauses: usize,
    width: usize,
    rng: &mut impl Rng,
) -> (CnfFormula, Vec<bool>) {
    assert!(n_vars >= 1 && width >= 1);
    let planted: Vec<bool> = (0..n_vars).map(|_| rng.gen_bool(0.5)).collect();
    let mut clauses = Vec::with_capacity(m_clauses);
    for _ in 0..m_clauses {
        let len = rng.gen_range(1..=width.min(n_vars));
        let mut vars: Vec<usize> = Vec::new();
        while vars.len() < len {
            let v = rng.gen_range(0..n_vars);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        let forced = rng.gen_range(0..len);
        let clause: Vec<i32> = vars
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let positive = if k == forced { planted[v] } else { rng.gen_bool(0.5) };
                if positive { (v + 1) as i32 } else { -((v + 1) as i32) }
            })
            .collect();
        clauses.push(clause);
    }
    (CnfFormula::new(n_vars, clauses).unwrap(), planted)
}

// ---------------------------------------------------------------------------
// Variable groups and the five-valued digit encoding
// ---------------------------------------------------------------------------

/// Grouping parameters: `t` groups of at most `beta` variables, digit strings
/// of length `p` where `p` is minimal with `5^p >= 2^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupParams {
    pub beta: u32,
    pub t: usize,
    pub p: usize,
    pub five_pow_p: usize,
}

pub fn group_params(n_vars: usize, beta: u32) -> GroupParams {
    assert!((1..=16).contains(&beta), "group size must be in 1..=16");
    let t = n_vars.div_ceil(beta as usize);
    let mut p = 1usize;
    let mut five_pow_p = 5usize;
    while five_pow_p < (1usize << beta) {
        p += 1;
        five_pow_p *= 5;
    }
    GroupParams { beta, t, p, five_pow_p }
}

/// Encode a group-assignment value as a width-`p` digit string over 1..=5:
/// the value written in base 5, most significant digit first, each digit + 1.
pub fn kappa(value: usize, p: usize) -> Vec<u8> {
    assert!(value < 5usize.pow(p as u32));
    let mut digits = vec![1u8; p];
    let mut rest = value;
    for slot in (0..p).rev() {
        digits[slot] = (rest % 5) as u8 + 1;
        rest /= 5;
    }
    digits
}

/// Inverse of [`kappa`]: the value whose base-5 digits (each - 1) these are.
pub fn kappa_inv(digits: &[u8]) -> usize {
    digits.iter().fold(0usize, |acc, &d| {
        assert!((1..=5).contains(&d));
        acc * 5 + (d as usize - 1)
    })
}

/// Variable index range of group `i`: `start..start+len`. The last group may
/// be smaller than `beta`.
fn group_range(n_vars: usize, beta: u32, i: usize) -> (usize, usize) {
    let start = i * beta as usize;
    let len = (n_vars - start).min(beta as usize);
    (start, len)
}

/// Value of a group assignment: first variable of the group is the most
/// significant bit.
fn group_value(assignment: &[bool], start: usize, len: usize) -> usize {
    assignment[start..start + len].iter().fold(0usize, |acc, &b| acc * 2 + b as usize)
}

/// Does the group assignment encoded by `value` already force the clause to
/// hold, i.e. does it satisfy some literal whose variable lies in the group?
fn group_satisfies_clause(
    clause: &[i32],
    start: usize,
    len: usize,
    value: usize,
) -> bool {
    clause.iter().any(|&lit| {
        let v = lit.unsigned_abs() as usize - 1;
        if v < start || v >= start + len {
            return false;
        }
        let bit = (value >> (len - 1 - (v - start))) & 1 == 1;
        (lit > 0) == bit
    })
}

// ---------------------------------------------------------------------------
// Edge accumulation with duplicate detection
// ---------------------------------------------------------------------------

/// Collects edges for a graph under construction; duplicate or loop edges
/// indicate a wiring bug and abort immediately.
struct EdgeSink {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSink {
    fn new(n: usize) -> EdgeSink {
        EdgeSink { n, edges: BTreeSet::new() }
    }

    fn add(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop edge at {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range {}", self.n);
        let key = (u.min(v), u.max(v));
        assert!(self.edges.insert(key), "duplicate edge ({u},{v})");
    }

    fn into_graph(self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges.into_iter().collect();
        Graph::from_edges(self.n, &edges)
    }
}

// ---------------------------------------------------------------------------
// Shared index for the two CNF-encoding families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LbFamily {
    Cvc,
    Fvs,
}

/// One deletion-propagation link (used by the feedback vertex set family):
/// three fresh vertices x, y, z wired so that any optimal deletion set either
/// contains y ("passive", tail kept) or the head ("active", tail deleted).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Id maps and construction parameters for a generated CNF-encoding instance:
/// translates (group `i`, chain slot `j`, column `l`) plus gadget-local names
/// into global vertex ids, and records the budget and census data.
#[derive(Debug, Clone)]
pub struct GadgetIndex {
    pub family: LbFamily,
    pub beta: u32,
    pub t: usize,
    pub p: usize,
    pub five_pow_p: usize,
    pub n_vars: usize,
    pub m_clauses: usize,
    pub clause_width: usize,
    pub columns: usize,
    pub budget: u64,
    pub root: usize,
    pub root_pendant: Option<usize>,
    /// Claimed upper bound on the pathwidth of the quotient by twinclasses.
    /// Emitted as metadata only; nothing in this crate checks it.
    pub tcpw_bound_unverified: u64,
    /// Cycle length of the per-column clause cycle (feedback family only).
    pub cycle_len: usize,
    pub arrows: Vec<Arrow>,
    gadget_base: Vec<usize>,
    decode_base: Vec<usize>,
    clause_base: Vec<usize>,
}

impl GadgetIndex {
    fn gadget_ord(&self, i: usize, j: usize, l: usize) -> usize {
        assert!(i < self.t && j < self.p && l < self.columns);
        (l * self.t + i) * self.p + j
    }

    /// Global id of a gadget-local vertex (see [`cvc_local`] / [`fvs_local`]).
    pub fn gadget_vertex(&self, i: usize, j: usize, l: usize, local: usize) -> usize {
        let len = match self.family {
            LbFamily::Cvc => cvc_local::COUNT,
            LbFamily::Fvs => fvs_local::COUNT,
        };
        assert!(local < len);
        self.gadget_base[self.gadget_ord(i, j, l)] + local
    }

    fn cvc_decode(&self, i: usize, l: usize) -> usize {
        assert!(self.family == LbFamily::Cvc && i < self.t && l < self.columns);
        self.decode_base[l * self.t + i]
    }

    pub fn cvc_decode_x(&self, i: usize, l: usize, h: usize) -> usize {
        assert!(h < self.five_pow_p);
        self.cvc_decode(i, l) + 3 * h
    }

    pub fn cvc_decode_xbar(&self, i: usize, l: usize, h: usize) -> usize {
        self.cvc_decode_x(i, l, h) + 1
    }

    pub fn cvc_decode_y(&self, i: usize, l: usize, h: usize) -> usize {
        self.cvc_decode_x(i, l, h) + 2
    }

    pub fn cvc_decode_z(&self, i: usize, l: usize) -> usize {
        self.cvc_decode(i, l) + 3 * self.five_pow_p
    }

    pub fn cvc_decode_zbar(&self, i: usize, l: usize) -> usize {
        self.cvc_decode_z(i, l) + 1
    }

    pub fn cvc_clause_o(&self, l: usize) -> usize {
        assert!(self.family == LbFamily::Cvc && l < self.columns);
        self.clause_base[l]
    }

    pub fn cvc_clause_obar(&self, l: usize) -> usize {
        self.cvc_clause_o(l) + 1
    }

    fn fvs_decode(&self, i: usize, l: usize, h: usize) -> usize {
        assert!(self.family == LbFamily::Fvs && i < self.t && l < self.columns);
        assert!(h < self.five_pow_p);
        self.decode_base[(l * self.t + i) * self.five_pow_p + h]
    }

    pub fn fvs_decode_x(&self, i: usize, l: usize, h: usize, slot: usize) -> usize {
        assert!(slot < 4 * self.p);
        self.fvs_decode(i, l, h) + slot
    }

    pub fn fvs_decode_xhat(&self, i: usize, l: usize, h: usize) -> usize {
        self.fvs_decode(i, l, h) + 4 * self.p
    }

    pub fn fvs_decode_y(&self, i: usize, l: usize, h: usize, which: usize) -> usize {
        assert!(which < 2);
        self.fvs_decode(i, l, h) + 4 * self.p + 1 + which
    }

    pub fn fvs_cycle_vertex(&self, l: usize, slot: usize) -> usize {
        assert!(self.family == LbFamily::Fvs && l < self.columns && slot < self.cycle_len);
        self.clause_base[l] + slot
    }

    /// Digit string (values 1..=5) encoding group `i` of an assignment.
    pub fn group_state(&self, assignment: &[bool], i: usize) -> Vec<u8> {
        assert_eq!(assignment.len(), self.n_vars);
        let (start, len) = group_range(self.n_vars, self.beta, i);
        kappa(group_value(assignment, start, len), self.p)
    }
}

// ---------------------------------------------------------------------------
// Connected vertex cover family: the 63-vertex column gadget
// ---------------------------------------------------------------------------

/// Local vertex numbering inside one 63-vertex column gadget of the connected
/// vertex cover family. The gadget has five central classes of three vertices
/// (exactly one class stays outside any tight cover; which one encodes the
/// gadget's state), two shared input vertices, four cost vertices that
/// equalize the five states' prices, a five-clique plus complement vertices
/// feeding the decoders, and six guard blocks whose covered/uncovered pattern
/// transports the state to the outputs.
pub mod cvc_local {
    /// Central vertex `k` of class `class` (both 0-based; 15 vertices).
    pub const fn w(class: usize, k: usize) -> usize {
        3 * class + k
    }
    pub const U1: usize = 15;
    pub const U2: usize = 16;
    /// Cost vertex `f` in 0..4.
    pub const fn w_plus(f: usize) -> usize {
        17 + f
    }
    /// Clique vertex of class `class`.
    pub const fn v(class: usize) -> usize {
        21 + class
    }
    /// Complement vertex of class `class`.
    pub const fn v_bar(class: usize) -> usize {
        26 + class
    }
    /// Entry vertex `k` in 0..2 of input-side guard block `f` in 0..4.
    pub const fn a(k: usize, f: usize) -> usize {
        31 + 6 * f + k
    }
    /// Indicator vertex `k` in 0..2 of input-side guard block `f`.
    pub const fn b(k: usize, f: usize) -> usize {
        31 + 6 * f + 2 + k
    }
    /// Connector vertex `k` in 0..2 of input-side guard block `f`.
    pub const fn c(k: usize, f: usize) -> usize {
        31 + 6 * f + 4 + k
    }
    /// Entry vertex `k` in 0..2 of output-side guard block `i` in 0..2.
    pub const fn a_bar(k: usize, i: usize) -> usize {
        55 + 4 * i + k
    }
    /// Connector vertex `k` in 0..2 of output-side guard block `i`.
    pub const fn c_bar(k: usize, i: usize) -> usize {
        55 + 4 * i + 2 + k
    }
    pub const COUNT: usize = 63;
    /// First output vertex: entry 0 of input-side guard block 3.
    pub const OUT_A: usize = a(0, 3);
    /// Second output vertex: entry 0 of output-side guard block 1.
    pub const OUT_ABAR: usize = a_bar(0, 1);
}

pub const CVC_GADGET_VERTICES: usize = 63;
pub const CVC_GADGET_INTERNAL_EDGES: usize = 320;
/// Number of gadget vertices adjacent to the global root.
pub const CVC_GADGET_ROOT_DEGREE: usize = 53;
pub const CVC_GADGET_MATCHING_SIZE: usize = 21;
/// Every vertex cover contains at least this many gadget vertices.
pub const CVC_COVER_FLOOR: usize = 33;
/// Every *connected* cover contains at least this many; the five tight local
/// covers attain it exactly.
pub const CVC_COVER_SIZE: usize = 35;

/// Per-state wiring selectors, indexed by the gadget state 0..5 (the state is
/// the index of the central class left uncovered). Row choices are what make
/// the five covered/uncovered patterns at the interface pairwise distinct.
const B_ROW: [usize; 5] = [1, 1, 1, 0, 0];
const C_ROW: [usize; 5] = [1, 0, 0, 1, 1];
const CBAR_ROW: [[usize; 5]; 2] = [[1, 0, 1, 0, 1], [1, 1, 0, 1, 0]];
/// Which entry row of each input-side guard block a tight cover picks.
const A_COVER_ROW: [usize; 5] = [0, 0, 0, 1, 1];
/// How many input vertices a tight cover picks (always u1 before u2).
const U_COVER_COUNT: [usize; 5] = [0, 1, 1, 2, 2];
/// Which cost vertices a tight cover picks (they pad all states to one size).
const W_PLUS_COVER: [&[usize]; 5] = [&[0, 1], &[2], &[3], &[], &[]];

/// Emit the 320 internal edges of one column gadget at id offset `base`.
fn cvc_gadget_edges(base: usize, sink: &mut EdgeSink) {
    use cvc_local::*;
    // Central classes: complete 5-partite.
    for c1 in 0..5 {
        for c2 in c1 + 1..5 {
            for k1 in 0..3 {
                for k2 in 0..3 {
                    sink.add(base + w(c1, k1), base + w(c2, k2));
                }
            }
        }
    }
    // Clique vertices.
    for x in 0..5 {
        for y in x + 1..5 {
            sink.add(base + v(x), base + v(y));
        }
    }
    // Complement vertices: each sees its class and its clique vertex.
    for class in 0..5 {
        sink.add(base + v_bar(class), base + v(class));
        for k in 0..3 {
            sink.add(base + v_bar(class), base + w(class, k));
        }
    }
    // Cost vertices: two on class 0, one each on classes 1 and 2.
    const W_PLUS_CLASS: [usize; 4] = [0, 0, 1, 2];
    for (f, &class) in W_PLUS_CLASS.iter().enumerate() {
        for k in 0..3 {
            sink.add(base + w_plus(f), base + w(class, k));
        }
    }
    // Input-side guard blocks: a 4-cycle a0-a1-b1-b0 plus a connector pair.
    for f in 0..4 {
        sink.add(base + a(0, f), base + a(1, f));
        sink.add(base + a(1, f), base + b(1, f));
        sink.add(base + b(1, f), base + b(0, f));
        sink.add(base + b(0, f), base + a(0, f));
        sink.add(base + a(0, f), base + c(1, f));
        sink.add(base + c(0, f), base + c(1, f));
    }
    // Output-side guard blocks: a pendant entry pair plus a connector pair.
    for i in 0..2 {
        sink.add(base + a_bar(0, i), base + a_bar(1, i));
        sink.add(base + a_bar(0, i), base + c_bar(1, i));
        sink.add(base + c_bar(0, i), base + c_bar(1, i));
    }
    // Inputs reach the entries of the first three guard blocks and block 0
    // of the output side.
    for u in [U1, U2] {
        for f in 0..3 {
            sink.add(base + u, base + a(0, f));
        }
        sink.add(base + u, base + a_bar(0, 0));
    }
    // State wiring: class s is adjacent to one row of each guard family;
    // covering class s forces exactly those rows into the cover.
    for s in 0..5 {
        for k in 0..3 {
            let wv = base + w(s, k);
            for f in 0..4 {
                sink.add(wv, base + b(B_ROW[s], f));
                sink.add(wv, base + c(C_ROW[s], f));
            }
            sink.add(wv, base + c_bar(CBAR_ROW[0][s], 0));
            sink.add(wv, base + c_bar(CBAR_ROW[1][s], 1));
        }
    }
}

/// Gadget-local ids adjacent to the global root: everything except the guard
/// entries and the inputs.
fn cvc_gadget_root_locals() -> Vec<usize> {
    use cvc_local::*;
    let mut excluded = vec![U1, U2];
    for f in 0..4 {
        excluded.push(a(0, f));
    }
    for i in 0..2 {
        excluded.push(a_bar(0, i));
        excluded.push(a_bar(1, i));
    }
    (0..COUNT).filter(|x| !excluded.contains(x)).collect()
}

/// One column gadget plus a root vertex (id 63) wired as in the full
/// construction, for certificate checks on a single gadget.
pub fn cvc_single_gadget() -> (Graph, usize) {
    let root = cvc_local::COUNT;
    let mut sink = EdgeSink::new(root + 1);
    cvc_gadget_edges(0, &mut sink);
    for local in cvc_gadget_root_locals() {
        sink.add(local, root);
    }
    (sink.into_graph(), root)
}

/// The canonical 21-edge matching of one column gadget (local id pairs):
/// three pairs per input-side guard block, two per output-side block, and
/// each clique vertex with its complement vertex.
pub fn cvc_gadget_matching() -> Vec<(usize, usize)> {
    use cvc_local::*;
    let mut m = Vec::new();
    for f in 0..4 {
        m.push((a(0, f), a(1, f)));
        m.push((b(0, f), b(1, f)));
        m.push((c(0, f), c(1, f)));
    }
    for i in 0..2 {
        m.push((a_bar(0, i), a_bar(1, i)));
        m.push((c_bar(0, i), c_bar(1, i)));
    }
    for class in 0..5 {
        m.push((v(class), v_bar(class)));
    }
    m
}

/// The tight 35-vertex cover of one column gadget realizing `state` (0..5):
/// all central classes and clique vertices except those of `state`, the
/// output-side entries, one entry row of the input-side blocks, a state-sized
/// prefix of the inputs, and the whole neighborhood of the uncovered class.
pub fn cvc_gadget_cover(state: usize) -> Vec<usize> {
    use cvc_local::*;
    assert!(state < 5);
    let mut x = Vec::new();
    for class in 0..5 {
        if class != state {
            for k in 0..3 {
                x.push(w(class, k));
            }
            x.push(v(class));
        }
    }
    x.push(a_bar(0, 0));
    x.push(a_bar(0, 1));
    for f in 0..4 {
        x.push(a(A_COVER_ROW[state], f));
    }
    if U_COVER_COUNT[state] >= 1 {
        x.push(U1);
    }
    if U_COVER_COUNT[state] >= 2 {
        x.push(U2);
    }
    // Neighborhood of the uncovered class.
    x.push(v_bar(state));
    x.push(c_bar(CBAR_ROW[0][state], 0));
    x.push(c_bar(CBAR_ROW[1][state], 1));
    for f in 0..4 {
        x.push(b(B_ROW[state], f));
        x.push(c(C_ROW[state], f));
    }
    for &f in W_PLUS_COVER[state] {
        x.push(w_plus(f));
    }
    x.sort_unstable();
    x
}

/// Status of one interface vertex relative to a vertex set: outside the set,
/// inside but with no path to the root through the set, or root-connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterfaceAtom {
    Absent,
    Stranded,
    Rooted,
}

/// Expected interface pattern (u1, u2, second output, first output) of the
/// five tight covers, in chain order.
pub const CVC_STATE_TABLE: [[InterfaceAtom; 4]; 5] = {
    use InterfaceAtom::*;
    [
        [Absent, Absent, Rooted, Rooted],
        [Stranded, Absent, Rooted, Stranded],
        [Rooted, Absent, Stranded, Stranded],
        [Stranded, Stranded, Rooted, Absent],
        [Rooted, Rooted, Stranded, Absent],
    ]
};

/// Interface pattern of a vertex set on the single-gadget graph: membership
/// and root-reachability of (u1, u2, second output, first output).
pub fn cvc_interface_state(g: &Graph, root: usize, cover: &[usize]) -> [InterfaceAtom; 4] {
    use cvc_local::*;
    let mut inside = vec![false; g.n()];
    for &v in cover {
        inside[v] = true;
    }
    inside[root] = true;
    let mut seen = vec![false; g.n()];
    let mut queue = std::collections::VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        for &w in g.adj(u) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    [U1, U2, OUT_ABAR, OUT_A].map(|iv| {
        if !inside[iv] {
            InterfaceAtom::Absent
        } else if seen[iv] {
            InterfaceAtom::Rooted
        } else {
            InterfaceAtom::Stranded
        }
    })
}

// ---------------------------------------------------------------------------
// Connected vertex cover family: full construction
// ---------------------------------------------------------------------------

/// Build the connected vertex cover instance encoding `cnf` with group size
/// `beta`. Returns the graph, the budget (the instance has a connected cover
/// of that size iff the formula is satisfiable), and the id maps.
pub fn gen_cvc_lb(cnf: &CnfFormula, beta: u32) -> (Graph, u64, GadgetIndex) {
    let gp = group_params(cnf.n_vars, beta);
    let (t, p, fp) = (gp.t, gp.p, gp.five_pow_p);
    let m = cnf.m_clauses();
    let columns = m * (4 * t * p + 1);

    // Layout: root, pendant, then per column all gadgets, decoders, and the
    // clause pair.
    let mut next = 0usize;
    let mut alloc = |k: usize| {
        let base = next;
        next += k;
        base
    };
    let root = alloc(1);
    let pendant = alloc(1);
    let mut gadget_base = vec![0usize; columns * t * p];
    let mut decode_base = vec![0usize; columns * t];
    let mut clause_base = vec![0usize; columns];
    for l in 0..columns {
        for i in 0..t {
            for j in 0..p {
                gadget_base[(l * t + i) * p + j] = alloc(cvc_local::COUNT);
            }
        }
        for i in 0..t {
            decode_base[l * t + i] = alloc(3 * fp + 2);
        }
        clause_base[l] = alloc(2);
    }

    let budget = ((35 * t * p + (fp + 2) * t + 1) * columns + 1) as u64;
    let index = GadgetIndex {
        family: LbFamily::Cvc,
        beta,
        t,
        p,
        five_pow_p: fp,
        n_vars: cnf.n_vars,
        m_clauses: m,
        clause_width: cnf.width,
        columns,
        budget,
        root,
        root_pendant: Some(pendant),
        tcpw_bound_unverified: (t * p + 3 * fp + 67) as u64,
        cycle_len: 0,
        arrows: Vec::new(),
        gadget_base,
        decode_base,
        clause_base,
    };

    let mut sink = EdgeSink::new(next);
    sink.add(root, pendant);

    let root_locals = cvc_gadget_root_locals();
    for l in 0..columns {
        for i in 0..t {
            for j in 0..p {
                use cvc_local::{OUT_A, OUT_ABAR, U1, U2};
                let base = index.gadget_vertex(i, j, l, 0);
                cvc_gadget_edges(base, &mut sink);
                for &local in &root_locals {
                    sink.add(base + local, root);
                }
                if l == 0 {
                    sink.add(base + U1, root);
                    sink.add(base + U2, root);
                } else {
                    // Chain join: previous column's outputs to these inputs.
                    let prev = index.gadget_vertex(i, j, l - 1, 0);
                    for out in [OUT_A, OUT_ABAR] {
                        for u in [U1, U2] {
                            sink.add(prev + out, base + u);
                        }
                    }
                }
                if l + 1 == columns {
                    sink.add(base + OUT_A, root);
                    sink.add(base + OUT_ABAR, root);
                }
            }
        }
        // Decoders: one triple per digit string, reading the clique vertices.
        for i in 0..t {
            for h in 0..fp {
                let x = index.cvc_decode_x(i, l, h);
                sink.add(x, index.cvc_decode_xbar(i, l, h));
                sink.add(x, index.cvc_decode_y(i, l, h));
                sink.add(index.cvc_decode_y(i, l, h), root);
                let digits = kappa(h, p);
                for (j, &d) in digits.iter().enumerate() {
                    sink.add(x, index.gadget_vertex(i, j, l, cvc_local::v(d as usize - 1)));
                }
            }
            let z = index.cvc_decode_z(i, l);
            sink.add(z, index.cvc_decode_zbar(i, l));
            for h in 0..fp {
                sink.add(z, index.cvc_decode_y(i, l, h));
            }
        }
        // Clause pair: the o vertex sees the y of every group state whose
        // decoded assignment already satisfies this column's clause.
        let o = index.cvc_clause_o(l);
        sink.add(o, index.cvc_clause_obar(l));
        let clause = &cnf.clauses[l % m];
        for i in 0..t {
            let (start, len) = group_range(cnf.n_vars, beta, i);
            for value in 0..(1usize << len) {
                if group_satisfies_clause(clause, start, len, value) {
                    sink.add(o, index.cvc_decode_y(i, l, value));
                }
            }
        }
    }

    (sink.into_graph(), budget, index)
}

/// The canonical connected vertex cover of a generated instance for a given
/// assignment: root, clause vertices, per group/column the full x-row plus
/// the y and z of the group's digit string, and per gadget the tight cover of
/// the digit-selected state. Has size exactly `budget`; it is a *connected*
/// cover iff the assignment satisfies the formula.
pub fn build_cvc_witness(
    cnf: &CnfFormula,
    assignment: &[bool],
    index: &GadgetIndex,
) -> Vec<usize> {
    assert!(index.family == LbFamily::Cvc);
    assert_eq!(assignment.len(), cnf.n_vars);
    assert_eq!(cnf.n_vars, index.n_vars);
    let digit_strings: Vec<Vec<u8>> =
        (0..index.t).map(|i| index.group_state(assignment, i)).collect();
    let values: Vec<usize> = digit_strings.iter().map(|d| kappa_inv(d)).collect();

    let mut x: BTreeSet<usize> = BTreeSet::new();
    x.insert(index.root);
    for l in 0..index.columns {
        x.insert(index.cvc_clause_o(l));
        for i in 0..index.t {
            x.insert(index.cvc_decode_z(i, l));
            x.insert(index.cvc_decode_y(i, l, values[i]));
            for h in 0..index.five_pow_p {
                x.insert(index.cvc_decode_x(i, l, h));
            }
            for j in 0..index.p {
                let state = digit_strings[i][j] as usize - 1;
                for local in cvc_gadget_cover(state) {
                    x.insert(index.gadget_vertex(i, j, l, local));
                }
            }
        }
    }
    let out: Vec<usize> = x.into_iter().collect();
    assert_eq!(out.len() as u64, index.budget);
    out
}

// ---------------------------------------------------------------------------
// Witness verification
// ---------------------------------------------------------------------------

/// Outcome of a witness check. `structure_ok` means "covers every edge" for
/// vertex cover witnesses and "leaves a forest" for deletion witnesses.
#[derive(Debug, Clone, serde::Serialize)]
pub struct WitnessReport {
    pub expected_size: u64,
    pub actual_size: u64,
    pub size_ok: bool,
    pub structure_ok: bool,
    pub connectivity_ok: bool,
    pub failure: Option<String>,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.size_ok && self.structure_ok && self.connectivity_ok
    }
}

/// Check a connected vertex cover witness: exact size, every edge covered,
/// and the induced subgraph connected.
pub fn verify_cvc_witness(g: &Graph, witness: &[usize], budget: u64) -> WitnessReport {
    let mut inside = vec![false; g.n()];
    for &v in witness {
        assert!(v < g.n(), "witness vertex {v} out of range");
        inside[v] = true;
    }
    let actual = inside.iter().filter(|&&b| b).count() as u64;
    let mut failure = None;
    let size_ok = actual == budget;
    if !size_ok {
        failure = Some(format!("witness has {actual} vertices, wanted {budget}"));
    }

    let mut structure_ok = true;
    'cover: for u in 0..g.n() {
        for &v in g.adj(u) {
            if u < v && !inside[u] && !inside[v] {
                structure_ok = false;
                failure.get_or_insert(format!("edge ({u},{v}) is uncovered"));
                break 'cover;
            }
        }
    }

    let mut connectivity_ok = true;
    if let Some(&start) = witness.first() {
        let mut seen = vec![false; g.n()];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut reached = 1usize;
        while let Some(u) = queue.pop_front() {
            for &w in g.adj(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != witness.len() {
            connectivity_ok = false;
            let stray = witness.iter().find(|&&v| !seen[v]).unwrap();
            failure.get_or_insert(format!(
                "witness vertex {stray} is disconnected from the rest ({} of {} reached)",
                reached,
                witness.len()
            ));
        }
    }

    WitnessReport {
        expected_size: budget,
        actual_size: actual,
        size_ok,
        structure_ok,
        connectivity_ok,
        failure,
    }
}

/// Check a feedback vertex set witness: exact size and acyclic remainder.
pub fn verify_fvs_witness(g: &Graph, witness: &[usize], budget: u64) -> WitnessReport {
    let mut inside = vec![false; g.n()];
    for &v in witness {
        assert!(v < g.n(), "witness vertex {v} out of range");
        inside[v] = true;
    }
    let actual = inside.iter().filter(|&&b| b).count() as u64;
    let mut failure = None;
    let size_ok = actual == budget;
    if !size_ok {
        failure = Some(format!("witness has {actual} vertices, wanted {budget}"));
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !inside[v]).collect();
    let (rest, _) = g.induced(&keep);
    let structure_ok = crate::graph::is_forest(&rest);
    if !structure_ok {
        failure.get_or_insert("the remainder after deletion still contains a cycle".into());
    }
    WitnessReport {
        expected_size: budget,
        actual_size: actual,
        size_ok,
        structure_ok,
        connectivity_ok: true,
        failure,
    }
}

// ---------------------------------------------------------------------------
// Feedback vertex set family: the 133-vertex column gadget
// ---------------------------------------------------------------------------

/// Local vertex numbering inside one 133-vertex column gadget of the feedback
/// vertex set family: a 23-vertex core (two inputs forming a non-adjacent
/// twin pair, four auxiliaries, two connectivity vertices, five selector
/// vertices of which exactly one survives, and five output pairs), plus one
/// guard vertex per guarded pair. A guarded pair (u, v) is u-v plus a fresh
/// degree-2 vertex adjacent to both, so every deletion set hits {u, v}.
pub mod fvs_local {
    pub const U1: usize = 0;
    pub const U2: usize = 1;
    /// Auxiliary vertex `k` in 0..4.
    pub const fn a(k: usize) -> usize {
        2 + k
    }
    pub const C0: usize = 6;
    pub const C1: usize = 7;
    /// Selector vertex `phi` in 0..5.
    pub const fn v(phi: usize) -> usize {
        8 + phi
    }
    /// Output vertex `gamma` in 0..2 of pair `phi` in 0..5.
    pub const fn b(phi: usize, gamma: usize) -> usize {
        13 + 2 * phi + gamma
    }
    pub const CORE: usize = 23;
    pub const COUNT: usize = 133;

    const fn pair_offset(lo: usize) -> usize {
        lo * (9 - lo) / 2
    }
    /// Guard of the pair (a3, a_k), k in 0..3.
    pub const fn tri_a4(k: usize) -> usize {
        23 + k
    }
    /// Guard of the pair (c0, c1).
    pub const TRI_C: usize = 26;
    /// Guard of the selector pair (v_phi, v_psi), phi < psi.
    pub const fn tri_vv(phi: usize, psi: usize) -> usize {
        27 + pair_offset(phi) + (psi - phi - 1)
    }
    /// Guard of the output pair (b(phi, gamma), b(phi2, gamma2)), phi < phi2.
    pub const fn tri_bb(phi: usize, gamma: usize, phi2: usize, gamma2: usize) -> usize {
        37 + 4 * (pair_offset(phi) + (phi2 - phi - 1)) + 2 * gamma + gamma2
    }
    /// Guard of the pair (v_phi, b(psi, gamma)), psi != phi.
    pub const fn tri_vb(phi: usize, psi: usize, gamma: usize) -> usize {
        let rank = if psi < phi { psi } else { psi - 1 };
        77 + 8 * phi + 2 * rank + gamma
    }
    /// Guard `k` of the wiring from selector `phi` to its targets.
    pub const fn tri_target(phi: usize, k: usize) -> usize {
        const PREFIX: [usize; 5] = [0, 2, 5, 8, 12];
        117 + PREFIX[phi] + k
    }
}

/// Wiring targets of each selector vertex (local core ids): deleting selector
/// set-minus-phi forces exactly these auxiliaries/connectors into a tight
/// deletion set.
const FVS_TARGETS: [&[usize]; 5] = {
    use fvs_local::{a, C0, C1};
    [
        &[a(3), C1],
        &[a(2), a(3), C1],
        &[a(2), a(3), C0],
        &[a(0), a(1), a(2), C1],
        &[a(1), a(2), a(3), C1],
    ]
};

/// The non-selector part of the tight per-gadget deletion set for each state.
const FVS_COVER_EXTRAS: [&[usize]; 5] = {
    use fvs_local::{a, C0, C1, U1, U2};
    [
        &[C1, a(3), U1, U2],
        &[C1, a(2), a(3), U1],
        &[C0, a(2), a(3), U1],
        &[C1, a(0), a(1), a(2)],
        &[C1, a(1), a(2), a(3)],
    ]
};

pub const FVS_GADGET_VERTICES: usize = 133;
pub const FVS_GADGET_INTERNAL_EDGES: usize = 339;
pub const FVS_GADGET_ROOT_DEGREE: usize = 2;
/// Size of the tight per-gadget deletion set (each of the five states).
pub const FVS_COVER_SIZE: usize = 16;

/// Emit the 339 internal edges of one column gadget at id offset `base`.
fn fvs_gadget_edges(base: usize, sink: &mut EdgeSink) {
    use fvs_local::*;
    let guarded = |sink: &mut EdgeSink, u: usize, v: usize, slot: usize| {
        sink.add(base + u, base + v);
        sink.add(base + u, base + slot);
        sink.add(base + slot, base + v);
    };
    // Plain edges.
    for u in [U1, U2] {
        for k in 0..3 {
            sink.add(base + u, base + a(k));
        }
    }
    sink.add(base + a(1), base + a(2));
    sink.add(base + a(0), base + C1);
    sink.add(base + b(0, 0), base + b(0, 1));
    // Guarded pairs.
    for k in 0..3 {
        guarded(sink, a(3), a(k), tri_a4(k));
    }
    guarded(sink, C0, C1, TRI_C);
    for phi in 0..5 {
        for psi in phi + 1..5 {
            guarded(sink, v(phi), v(psi), tri_vv(phi, psi));
        }
    }
    for phi in 0..5 {
        for phi2 in phi + 1..5 {
            for gamma in 0..2 {
                for gamma2 in 0..2 {
                    guarded(sink, b(phi, gamma), b(phi2, gamma2), tri_bb(phi, gamma, phi2, gamma2));
                }
            }
        }
    }
    for phi in 0..5 {
        for psi in 0..5 {
            if psi != phi {
                for gamma in 0..2 {
                    guarded(sink, v(phi), b(psi, gamma), tri_vb(phi, psi, gamma));
                }
            }
        }
    }
    for (phi, targets) in FVS_TARGETS.iter().enumerate() {
        for (k, &target) in targets.iter().enumerate() {
            guarded(sink, v(phi), target, tri_target(phi, k));
        }
    }
}

/// The tight 16-vertex per-gadget deletion set realizing `state` (0..5): all
/// selector vertices and output pairs except those of `state`, plus the
/// state's extras.
pub fn fvs_gadget_cover(state: usize) -> Vec<usize> {
    use fvs_local::{b, v};
    assert!(state < 5);
    let mut x = Vec::new();
    for phi in 0..5 {
        if phi != state {
            x.push(v(phi));
            x.push(b(phi, 0));
            x.push(b(phi, 1));
        }
    }
    x.extend_from_slice(FVS_COVER_EXTRAS[state]);
    x.sort_unstable();
    assert_eq!(x.len(), FVS_COVER_SIZE);
    x
}

// ---------------------------------------------------------------------------
// Feedback vertex set family: full construction and packing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackingKind {
    /// The guarded connector pair of one gadget (3 vertices, 1 deletion).
    ConnectorTriangle,
    /// One gadget's selectors with their guards (15 vertices, 4 deletions).
    CliqueBlock,
    /// One gadget's outputs with their guards (50 vertices, 8 deletions).
    OutputBlock,
    /// One gadget's inputs and auxiliaries with guards (9 vertices, 3 deletions).
    InputBlock,
    /// The apex triangle of one decoder (3 vertices, 1 deletion).
    DecodeTriangle,
    /// The head-side triangle of one arrow (3 vertices, 1 deletion).
    ArrowTriangle,
}

impl PackingKind {
    pub fn deletions(self) -> u64 {
        match self {
            PackingKind::ConnectorTriangle => 1,
            PackingKind::CliqueBlock => 4,
            PackingKind::OutputBlock => 8,
            PackingKind::InputBlock => 3,
            PackingKind::DecodeTriangle => 1,
            PackingKind::ArrowTriangle => 1,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            PackingKind::ConnectorTriangle => 3,
            PackingKind::CliqueBlock => 15,
            PackingKind::OutputBlock => 50,
            PackingKind::InputBlock => 9,
            PackingKind::DecodeTriangle => 3,
            PackingKind::ArrowTriangle => 3,
        }
    }
}

/// One element of the vertex-disjoint packing: a subgraph (given by its
/// vertex set) every feedback vertex set must hit `deletions` times.
#[derive(Debug, Clone)]
pub struct PackingElement {
    pub kind: PackingKind,
    pub vertices: Vec<usize>,
}

impl PackingElement {
    pub fn deletions(&self) -> u64 {
        self.kind.deletions()
    }
}

/// Build the feedback vertex set instance encoding `cnf` with group size
/// `beta`. Returns the graph, the budget (the instance has a feedback vertex
/// set of that size iff the formula is satisfiable; smaller is impossible),
/// the id maps, and the certifying packing.
pub fn gen_fvs_lb(
    cnf: &CnfFormula,
    beta: u32,
) -> (Graph, u64, GadgetIndex, Vec<PackingElement>) {
    let gp = group_params(cnf.n_vars, beta);
    let (t, p, fp) = (gp.t, gp.p, gp.five_pow_p);
    let m = cnf.m_clauses();
    let columns = m * (4 * t * p + 1);
    let q = cnf.width;
    let cycle_len = q * fp;

    // First pass: compute which (group, digit string) pairs satisfy each
    // column's clause; these get arrows into the clause cycle.
    let mut sat_pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(columns);
    for l in 0..columns {
        let clause = &cnf.clauses[l % m.max(1)];
        let mut pairs = Vec::new();
        for i in 0..t {
            let (start, len) = group_range(cnf.n_vars, beta, i);
            for value in 0..(1usize << len) {
                if group_satisfies_clause(clause, start, len, value) {
                    pairs.push((i, value));
                }
            }
        }
        assert!(pairs.len() <= cycle_len, "clause cycle too short");
        sat_pairs.push(pairs);
    }

    // Layout: root, then per column all gadgets, decoders, the clause cycle,
    // and that column's arrows (three fresh vertices each).
    let mut next = 0usize;
    let mut alloc = |k: usize| {
        let base = next;
        next += k;
        base
    };
    let root = alloc(1);
    let mut gadget_base = vec![0usize; columns * t * p];
    let mut decode_base = vec![0usize; columns * t * fp];
    let mut clause_base = vec![0usize; columns];
    let mut arrows: Vec<Arrow> = Vec::new();
    for l in 0..columns {
        for i in 0..t {
            for j in 0..p {
                gadget_base[(l * t + i) * p + j] = alloc(fvs_local::COUNT);
            }
        }
        for i in 0..t {
            for h in 0..fp {
                decode_base[(l * t + i) * fp + h] = alloc(4 * p + 3);
            }
        }
        clause_base[l] = alloc(cycle_len);
        // Decoder arrows: from every non-selected selector vertex to a
        // private x slot of the decoder.
        for i in 0..t {
            for h in 0..fp {
                let digits = kappa(h, p);
                let mut slot = 0usize;
                for (j, &d) in digits.iter().enumerate() {
                    for phi in 0..5 {
                        if phi != d as usize - 1 {
                            let tail = gadget_base[(l * t + i) * p + j] + fvs_local::v(phi);
                            let head = decode_base[(l * t + i) * fp + h] + slot;
                            let x = alloc(3);
                            arrows.push(Arrow { tail, head, x, y: x + 1, z: x + 2 });
                            slot += 1;
                        }
                    }
                }
                assert_eq!(slot, 4 * p);
            }
        }
        // Clause arrows: from the decoder apex of every satisfying pair to a
        // private cycle vertex.
        for (slot, &(i, value)) in sat_pairs[l].iter().enumerate() {
            let tail = decode_base[(l * t + i) * fp + value] + 4 * p;
            let head = clause_base[l] + slot;
            let x = alloc(3);
            arrows.push(Arrow { tail, head, x, y: x + 1, z: x + 2 });
        }
    }

    let n_arrows = arrows.len();
    let budget = (16 * t * p * columns + t * columns * fp) as u64 + n_arrows as u64;
    let index = GadgetIndex {
        family: LbFamily::Fvs,
        beta,
        t,
        p,
        five_pow_p: fp,
        n_vars: cnf.n_vars,
        m_clauses: m,
        clause_width: q,
        columns,
        budget,
        root,
        root_pendant: None,
        tcpw_bound_unverified: (t * p + (4 * p + 3 + q) * fp + 137) as u64,
        cycle_len,
        arrows,
        gadget_base,
        decode_base,
        clause_base,
    };

    let mut sink = EdgeSink::new(next);
    for l in 0..columns {
        for i in 0..t {
            for j in 0..p {
                use fvs_local::{b, C1, U1, U2};
                let base = index.gadget_vertex(i, j, l, 0);
                fvs_gadget_edges(base, &mut sink);
                sink.add(base + C1, root);
                sink.add(base + b(1, 0), root);
                if l > 0 {
                    // Chain join: output pairs 0..3 fully, pair 3 only at
                    // slot 0, each to both inputs of the next gadget.
                    let prev = index.gadget_vertex(i, j, l - 1, 0);
                    for u in [U1, U2] {
                        for phi in 0..3 {
                            sink.add(prev + b(phi, 0), base + u);
                            sink.add(prev + b(phi, 1), base + u);
                        }
                        sink.add(prev + b(3, 0), base + u);
                    }
                }
            }
        }
        for i in 0..t {
            for h in 0..fp {
                let y1 = index.fvs_decode_y(i, l, h, 0);
                let y2 = index.fvs_decode_y(i, l, h, 1);
                sink.add(y1, y2);
                sink.add(y1, index.fvs_decode_xhat(i, l, h));
                sink.add(y2, index.fvs_decode_xhat(i, l, h));
                for slot in 0..4 * p {
                    sink.add(y1, index.fvs_decode_x(i, l, h, slot));
                    sink.add(y2, index.fvs_decode_x(i, l, h, slot));
                }
            }
        }
        for slot in 0..cycle_len {
            sink.add(
                index.fvs_cycle_vertex(l, slot),
                index.fvs_cycle_vertex(l, (slot + 1) % cycle_len),
            );
        }
    }
    for arrow in &index.arrows {
        sink.add(arrow.tail, arrow.x);
        sink.add(arrow.tail, arrow.y);
        sink.add(arrow.x, arrow.y);
        sink.add(arrow.y, arrow.z);
        sink.add(arrow.y, arrow.head);
        sink.add(arrow.z, arrow.head);
    }
    let g = sink.into_graph();

    // Assemble the packing.
    let mut packing: Vec<PackingElement> = Vec::new();
    for l in 0..columns {
        for i in 0..t {
            for j in 0..p {
                use fvs_local::*;
                let base = index.gadget_vertex(i, j, l, 0);
                packing.push(PackingElement {
                    kind: PackingKind::ConnectorTriangle,
                    vertices: vec![base + C0, base + C1, base + TRI_C],
                });
                let mut clique = Vec::new();
                for phi in 0..5 {
                    clique.push(base + v(phi));
                    for psi in phi + 1..5 {
                        clique.push(base + tri_vv(phi, psi));
                    }
                }
                packing.push(PackingElement { kind: PackingKind::CliqueBlock, vertices: clique });
                let mut outputs = Vec::new();
                for phi in 0..5 {
                    for gamma in 0..2 {
                        outputs.push(base + b(phi, gamma));
                    }
                    for phi2 in phi + 1..5 {
                        for gamma in 0..2 {
                            for gamma2 in 0..2 {
                                outputs.push(base + tri_bb(phi, gamma, phi2, gamma2));
                            }
                        }
                    }
                }
                packing.push(PackingElement { kind: PackingKind::OutputBlock, vertices: outputs });
                let mut inputs = vec![base + U1, base + U2];
                for k in 0..4 {
                    inputs.push(base + a(k));
                }
                for k in 0..3 {
                    inputs.push(base + tri_a4(k));
                }
                packing.push(PackingElement { kind: PackingKind::InputBlock, vertices: inputs });
            }
        }
        for i in 0..t {
            for h in 0..fp {
                packing.push(PackingElement {
                    kind: PackingKind::DecodeTriangle,
                    vertices: vec![
                        index.fvs_decode_xhat(i, l, h),
                        index.fvs_decode_y(i, l, h, 0),
                        index.fvs_decode_y(i, l, h, 1),
                    ],
                });
            }
        }
    }
    for arrow in &index.arrows {
        packing.push(PackingElement {
            kind: PackingKind::ArrowTriangle,
            vertices: vec![arrow.y, arrow.z, arrow.head],
        });
    }
    let total: u64 = packing.iter().map(|e| e.deletions()).sum();
    assert_eq!(total, budget);

    (g, budget, index, packing)
}

/// The canonical feedback vertex set of a generated instance for a given
/// assignment: per gadget the tight deletion set of the digit-selected
/// state, per decoder either its apex (selected digit string) or one base
/// vertex (all others), then one deletion per arrow (the head if the tail is
/// deleted, else the middle vertex). Always has size exactly `budget`;
/// the remainder is a forest iff the assignment satisfies the formula.
pub fn build_fvs_witness(
    cnf: &CnfFormula,
    assignment: &[bool],
    index: &GadgetIndex,
) -> Vec<usize> {
    assert!(index.family == LbFamily::Fvs);
    assert_eq!(assignment.len(), cnf.n_vars);
    assert_eq!(cnf.n_vars, index.n_vars);
    let digit_strings: Vec<Vec<u8>> =
        (0..index.t).map(|i| index.group_state(assignment, i)).collect();
    let values: Vec<usize> = digit_strings.iter().map(|d| kappa_inv(d)).collect();

    let mut x: BTreeSet<usize> = BTreeSet::new();
    for l in 0..index.columns {
        for i in 0..index.t {
            for j in 0..index.p {
                let state = digit_strings[i][j] as usize - 1;
                for local in fvs_gadget_cover(state) {
                    x.insert(index.gadget_vertex(i, j, l, local));
                }
            }
            for h in 0..index.five_pow_p {
                if h == values[i] {
                    x.insert(index.fvs_decode_xhat(i, l, h));
                } else {
                    x.insert(index.fvs_decode_y(i, l, h, 0));
                }
            }
        }
    }
    // Propagate deletions along arrows. Heads are never tails of other
    // arrows, so one pass suffices.
    for arrow in &index.arrows {
        if x.contains(&arrow.tail) {
            assert!(x.insert(arrow.head));
        } else {
            assert!(x.insert(arrow.y));
        }
    }
    let out: Vec<usize> = x.into_iter().collect();
    assert_eq!(out.len() as u64, index.budget);
    out
}

/// Validate a packing: every element has the size and shape of its kind, the
/// elements are pairwise vertex-disjoint, and the deletion counts sum to the
/// budget.
pub fn verify_fvs_packing(
    g: &Graph,
    packing: &[PackingElement],
    budget: u64,
) -> Result<(), String> {
    let mut seen = vec![false; g.n()];
    let mut total = 0u64;
    for (idx, elem) in packing.iter().enumerate() {
        if elem.vertices.len() != elem.kind.vertex_count() {
            return Err(format!(
                "element {idx} has {} vertices, expected {}",
                elem.vertices.len(),
                elem.kind.vertex_count()
            ));
        }
        for &v in &elem.vertices {
            if v >= g.n() {
                return Err(format!("element {idx} mentions out-of-range vertex {v}"));
            }
            if seen[v] {
                return Err(format!("vertex {v} appears in two packing elements"));
            }
            seen[v] = true;
        }
        if elem.vertices.len() == 3 {
            let t = &elem.vertices;
            let triangle =
                g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[0], t[2]);
            if !triangle {
                return Err(format!("element {idx} is not a triangle"));
            }
        }
        total += elem.deletions();
    }
    if total != budget {
        return Err(format!("packing certifies {total} deletions, budget is {budget}"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Twin pair check
// ---------------------------------------------------------------------------

/// Is {u, v} a twinclass of `g`, i.e. u and v have the same neighbors apart
/// from each other, and no third vertex shares that neighborhood?
pub fn is_twinclass_pair(g: &Graph, u: usize, v: usize) -> bool {
    fn twins(g: &Graph, a: usize, b: usize) -> bool {
        let strip = |list: &[usize], x: usize, y: usize| -> Vec<usize> {
            list.iter().copied().filter(|&w| w != x && w != y).collect()
        };
        strip(g.adj(a), a, b) == strip(g.adj(b), a, b)
    }
    if u == v || !twins(g, u, v) {
        return false;
    }
    (0..g.n()).all(|w| w == u || w == v || !twins(g, u, w))
}

// ---------------------------------------------------------------------------
// Random module-structured graphs
// ---------------------------------------------------------------------------

/// Substitute `factors[i]` for vertex `i` of `quotient`: factor vertex sets
/// become modules, joined completely whenever their quotient vertices are
/// adjacent. Returns the graph and the planted blocks.
pub fn substitute(quotient: &Graph, factors: &[Graph]) -> (Graph, Vec<Vec<usize>>) {
    assert_eq!(quotient.n(), factors.len());
    let mut bases = Vec::with_capacity(factors.len());
    let mut n = 0usize;
    for f in factors {
        assert!(f.n() >= 1);
        bases.push(n);
        n += f.n();
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for (u, v) in f.edges() {
            edges.push((bases[i] + u, bases[i] + v));
        }
    }
    for (qu, qv) in quotient.edges() {
        for du in 0..factors[qu].n() {
            for dv in 0..factors[qv].n() {
                edges.push((bases[qu] + du, bases[qv] + dv));
            }
        }
    }
    let blocks: Vec<Vec<usize>> =
        bases.iter().zip(factors).map(|(&b, f)| (b..b + f.n()).collect()).collect();
    (Graph::from_edges(n, &edges), blocks)
}

/// Random graph built by `levels` rounds of substitution with `fanout`
/// children per node and edge probability `density` in each quotient.
/// Returns the graph and the planted top-level blocks (always modules).
pub fn random_modular_graph(
    levels: u32,
    fanout: usize,
    density: f64,
    rng: &mut impl Rng,
) -> (Graph, Vec<Vec<usize>>) {
    assert!(fanout >= 1, "fanout must be positive");
    assert!((0.0..=1.0).contains(&density), "density must be a probability");
    if levels == 0 || fanout == 1 {
        return (Graph::new(1), vec![vec![0]]);
    }
    let factors: Vec<Graph> =
        (0..fanout).map(|_| random_modular_graph(levels - 1, fanout, density, rng).0).collect();
    let mut quotient = Graph::new(fanout);
    for u in 0..fanout {
        for v in u + 1..fanout {
            if rng.gen_bool(density) {
                quotient.add_edge(u, v);
            }
        }
    }
    quotient.finish();
    substitute(&quotient, &factors)
}

// ---------------------------------------------------------------------------

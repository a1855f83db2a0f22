//! Core graph types: undirected simple graphs with dense 0-based vertex ids,
//! cost functions, problem instances, vertex partitions, and the `.mtw`
//! text format.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

pub const MAX_VERTICES: usize = 100_000;
pub const MAX_COST: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Is,
    St,
    Cds,
    Cvc,
    Fvs,
}

impl Problem {
    pub fn code(self) -> &'static str {
        match self {
            Problem::Is => "is",
            Problem::St => "st",
            Problem::Cds => "cds",
            Problem::Cvc => "cvc",
            Problem::Fvs => "fvs",
        }
    }

    pub fn from_code(s: &str) -> Option<Problem> {
        match s.to_ascii_lowercase().as_str() {
            "is" => Some(Problem::Is),
            "st" => Some(Problem::St),
            "cds" => Some(Problem::Cds),
            "cvc" => Some(Problem::Cvc),
            "fvs" => Some(Problem::Fvs),
            _ => None,
        }
    }

    pub const ALL: [Problem; 5] = [Problem::Is, Problem::St, Problem::Cds, Problem::Cvc, Problem::Fvs];
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Undirected simple graph; adjacency lists kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, adj: vec![Vec::new(); n], m: 0 }
    }

    /// Panics on out-of-range endpoints, self-loops, or duplicate edges;
    /// internal construction paths are expected to produce valid data
    /// (the parser validates separately with line numbers).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g.finish();
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        assert_ne!(u, v, "self-loop");
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
    }

    /// Sort adjacency lists and assert simplicity.
    pub fn finish(&mut self) {
        for l in &mut self.adj {
            l.sort_unstable();
            debug_assert!(l.windows(2).all(|w| w[0] != w[1]), "duplicate edge");
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on `verts` (need not be sorted); returns the subgraph
    /// and the local→original vertex map (sorted ascending).
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut order: Vec<usize> = verts.to_vec();
        order.sort_unstable();
        order.dedup();
        let mut local = HashMap::with_capacity(order.len());
        for (i, &v) in order.iter().enumerate() {
            local.insert(v, i);
        }
        let mut g = Graph::new(order.len());
        for (i, &v) in order.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(&j) = local.get(&w) {
                    if i < j {
                        g.add_edge(i, j);
                    }
                }
            }
        }
        g.finish();
        (g, order)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let all: Vec<usize> = (0..self.n).collect();
        connected_components(self, Some(&all)).len() == 1
    }

    /// True iff the induced subgraph on `x` is connected. Empty and
    /// single-vertex sets count as connected.
    pub fn is_connected_subset(&self, x: &[usize]) -> bool {
        if x.len() <= 1 {
            return true;
        }
        connected_components(self, Some(x)).len() == 1
    }

    pub fn is_clique_subset(&self, x: &[usize]) -> bool {
        for (i, &u) in x.iter().enumerate() {
            for &v in &x[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn has_any_edge_within(&self, x: &[usize]) -> bool {
        let set: HashSet<usize> = x.iter().copied().collect();
        for &u in x {
            if self.adj[u].iter().any(|w| set.contains(w)) {
                return true;
            }
        }
        false
    }
}

/// Connected components of the subgraph induced by `restriction`
/// (or the whole graph if None). Components are sorted internally and
/// ordered by their minimum vertex.
pub fn connected_components(g: &Graph, restriction: Option<&[usize]>) -> Vec<Vec<usize>> {
    let verts: Vec<usize> = match restriction {
        Some(r) => {
            let mut v = r.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
        None => (0..g.n()).collect(),
    };
    let inset: HashSet<usize> = verts.iter().copied().collect();
    let mut seen: HashSet<usize> = HashSet::with_capacity(verts.len());
    let mut comps = Vec::new();
    for &s in &verts {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen.insert(s);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.adj(u) {
                if inset.contains(&w) && !seen.contains(&w) {
                    seen.insert(w);
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Forest test via the component-count identity: an n-vertex, m-edge graph
/// is acyclic iff it has exactly n - m connected components.
pub fn is_forest(g: &Graph) -> bool {
    let cc = connected_components(g, None).len();
    g.m() <= g.n() && cc == g.n() - g.m()
}

/// Degeneracy of g: the largest minimum degree over all induced subgraphs,
/// found by repeatedly deleting a minimum-degree vertex (bucket queue with
/// lazy entries, O(n + m) up to bucket scans). Every tree decomposition has
/// width at least the degeneracy, which makes this a cheap infeasibility
/// test before running any decomposition heuristic.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.adj(v).len()).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut best = 0;
    let mut cur = 0;
    for _ in 0..n {
        let v = loop {
            while buckets[cur].is_empty() {
                cur += 1;
            }
            let v = buckets[cur].pop().expect("nonempty bucket");
            // Entries go stale when a degree drops; skip them.
            if !removed[v] && deg[v] == cur {
                break v;
            }
        };
        removed[v] = true;
        best = best.max(cur);
        for &u in g.adj(v) {
            if !removed[u] {
                deg[u] -= 1;
                buckets[deg[u]].push(u);
            }
        }
        cur = cur.saturating_sub(1);
    }
    best
}

/// Per-vertex costs, each in [1, MAX_COST].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFn(Vec<u64>);

impl CostFn {
    pub fn unit(n: usize) -> CostFn {
        CostFn(vec![1; n])
    }

    pub fn new(costs: Vec<u64>) -> Result<CostFn, String> {
        if let Some(c) = costs.iter().find(|&&c| c == 0 || c > MAX_COST) {
            return Err(format!("cost {c} out of range [1, {MAX_COST}]"));
        }
        Ok(CostFn(costs))
    }

    pub fn get(&self, v: usize) -> u64 {
        self.0[v]
    }

    pub fn sum(&self, x: &[usize]) -> u64 {
        x.iter().map(|&v| self.0[v]).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&c| c == 1)
    }

    pub fn restrict(&self, verts: &[usize]) -> CostFn {
        CostFn(verts.iter().map(|&v| self.0[v]).collect())
    }
}

/// Partition of 0..n into nonempty blocks; blocks sorted internally and
/// ordered by their minimum element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>, n: usize) -> Partition {
        for b in &mut blocks {
            b.sort_unstable();
            assert!(!b.is_empty(), "empty partition block");
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                assert!(v < n, "partition element out of range");
                assert_eq!(block_of[v], usize::MAX, "overlapping partition blocks");
                block_of[v] = i;
            }
        }
        assert!(block_of.iter().all(|&b| b != usize::MAX), "partition does not cover 0..n");
        Partition { blocks, block_of }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Distinct block indices hit by `x`, ascending.
    pub fn project(&self, x: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = x.iter().map(|&v| self.block_of[v]).collect();
        p.sort_unstable();
        p.dedup();
        p
    }
}

/// Quotient graph over the blocks of a partition: block i ~ block j iff any
/// cross edge exists in g.
pub fn quotient(g: &Graph, part: &Partition) -> Graph {
    let mut edges = HashSet::new();
    for (u, v) in g.edges() {
        let (bu, bv) = (part.block_of[u], part.block_of[v]);
        if bu != bv {
            edges.insert((bu.min(bv), bu.max(bv)));
        }
    }
    let mut list: Vec<(usize, usize)> = edges.into_iter().collect();
    list.sort_unstable();
    Graph::from_edges(part.len(), &list)
}

/// Twinclasses: equivalence classes of u ~ v iff N(u)\{v} = N(v)\{u}.
/// Each class induces a clique (true twins) or an independent set
/// (false twins); mixed classes are impossible.
pub fn twinclasses(g: &Graph) -> Partition {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        let mut r = v;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = v;
        while parent[c] != c {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    // False twins: identical open neighborhoods.
    let mut open: HashMap<&[usize], usize> = HashMap::new();
    for v in 0..n {
        match open.entry(g.adj(v)) {
            std::collections::hash_map::Entry::Occupied(e) => union(&mut parent, *e.get(), v),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(v);
            }
        }
    }
    // True twins: identical closed neighborhoods.
    let mut closed: HashMap<Vec<usize>, usize> = HashMap::new();
    for v in 0..n {
        let mut nb = g.adj(v).to_vec();
        nb.push(v);
        nb.sort_unstable();
        match closed.entry(nb) {
            std::collections::hash_map::Entry::Occupied(e) => union(&mut parent, *e.get(), v),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(v);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    Partition::new(groups.into_values().collect(), n)
}

#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub problem: Problem,
    pub graph: Graph,
    pub costs: CostFn,
    /// Nonempty iff problem == St.
    pub terminals: Vec<usize>,
    pub budget: Option<u64>,
}

/// Parse the `.mtw` format for the given problem. Vertices are 1-indexed in
/// the file and remapped to 0-based ids; original labels are id+1.
///
/// Line types: `c` comment, `p mtw <n> <m>` (exactly once, first non-comment),
/// `e <u> <v>`, `v <u> <cost>`, `k <u>` (ST only), `b <budget>`.
pub fn parse_instance(text: &str, problem: Problem) -> Result<ProblemInstance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_seen: HashSet<(usize, usize)> = HashSet::new();
    let mut costs: Vec<Option<u64>> = Vec::new();
    let mut terminals: Vec<usize> = Vec::new();
    let mut term_seen: HashSet<usize> = HashSet::new();
    let mut budget: Option<u64> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap();
        let rest: Vec<&str> = tok.collect();
        let parse_vertex = |s: &str, what: &str| -> Result<usize, ParseError> {
            let raw: usize = s
                .parse()
                .map_err(|_| ParseError { line: lineno, msg: format!("bad {what} '{s}'") })?;
            let (n, _) = header.ok_or(ParseError {
                line: lineno,
                msg: "vertex line before p header".into(),
            })?;
            if raw == 0 || raw > n {
                return perr(lineno, format!("{what} {raw} out of range 1..={n}"));
            }
            Ok(raw - 1)
        };
        match head {
            "p" => {
                if header.is_some() {
                    return perr(lineno, "duplicate p line");
                }
                if rest.len() != 3 || rest[0] != "mtw" {
                    return perr(lineno, "expected 'p mtw <n> <m>'");
                }
                let n: usize = rest[1]
                    .parse()
                    .map_err(|_| ParseError { line: lineno, msg: format!("bad vertex count '{}'", rest[1]) })?;
                let m: usize = rest[2]
                    .parse()
                    .map_err(|_| ParseError { line: lineno, msg: format!("bad edge count '{}'", rest[2]) })?;
                if n > MAX_VERTICES {
                    return perr(lineno, format!("n = {n} exceeds cap {MAX_VERTICES}"));
                }
                costs = vec![None; n];
                header = Some((n, m));
            }
            "e" => {
                if rest.len() != 2 {
                    return perr(lineno, "expected 'e <u> <v>'");
                }
                let u = parse_vertex(rest[0], "endpoint")?;
                let v = parse_vertex(rest[1], "endpoint")?;
                if u == v {
                    return perr(lineno, format!("self-loop at vertex {}", u + 1));
                }
                if !edge_seen.insert((u.min(v), u.max(v))) {
                    return perr(lineno, format!("duplicate edge {} {}", u.min(v) + 1, u.max(v) + 1));
                }
                edges.push((u, v));
            }
            "v" => {
                if rest.len() != 2 {
                    return perr(lineno, "expected 'v <u> <cost>'");
                }
                let u = parse_vertex(rest[0], "vertex")?;
                let c: u64 = rest[1]
                    .parse()
                    .map_err(|_| ParseError { line: lineno, msg: format!("bad cost '{}'", rest[1]) })?;
                if c == 0 || c > MAX_COST {
                    return perr(lineno, format!("cost {c} out of range [1, {MAX_COST}]"));
                }
                if costs[u].is_some() {
                    return perr(lineno, format!("duplicate cost for vertex {}", u + 1));
                }
                costs[u] = Some(c);
            }
            "k" => {
                if problem != Problem::St {
                    return perr(lineno, format!("terminal line for non-ST problem {}", problem.code()));
                }
                if rest.len() != 1 {
                    return perr(lineno, "expected 'k <u>'");
                }
                let u = parse_vertex(rest[0], "terminal")?;
                if !term_seen.insert(u) {
                    return perr(lineno, format!("duplicate terminal {}", u + 1));
                }
                terminals.push(u);
            }
            "b" => {
                if rest.len() != 1 {
                    return perr(lineno, "expected 'b <budget>'");
                }
                if budget.is_some() {
                    return perr(lineno, "duplicate b line");
                }
                budget = Some(rest[0].parse().map_err(|_| ParseError {
                    line: lineno,
                    msg: format!("bad budget '{}'", rest[0]),
                })?);
            }
            other => {
                return perr(lineno, format!("unknown line type '{other}'"));
            }
        }
    }

    let (n, m) = header.ok_or(ParseError { line: text.lines().count(), msg: "missing p line".into() })?;
    if edges.len() != m {
        return perr(
            text.lines().count(),
            format!("header declares {m} edges but {} e lines found", edges.len()),
        );
    }
    if problem == Problem::St && terminals.is_empty() {
        return perr(text.lines().count(), "ST instance without terminals".to_string());
    }
    let cost_vec: Vec<u64> = costs.into_iter().map(|c| c.unwrap_or(1)).collect();
    if problem == Problem::Fvs && cost_vec.iter().any(|&c| c != 1) {
        return perr(text.lines().count(), "FVS instances carry unit costs only".to_string());
    }
    let mut graph = Graph::new(n);
    for (u, v) in edges {
        graph.add_edge(u, v);
    }
    graph.finish();
    terminals.sort_unstable();
    Ok(ProblemInstance {
        problem,
        graph,
        costs: CostFn::new(cost_vec).expect("validated above"),
        terminals,
        budget,
    })
}

impl ProblemInstance {
    /// Canonical `.mtw` serialization (1-indexed labels, sorted lines).
    pub fn to_mtw(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p mtw {} {}\n", self.graph.n(), self.graph.m()));
        for (u, v) in self.graph.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        for v in 0..self.graph.n() {
            if self.costs.get(v) != 1 {
                out.push_str(&format!("v {} {}\n", v + 1, self.costs.get(v)));
            }
        }
        for &t in &self.terminals {
            out.push_str(&format!("k {}\n", t + 1));
        }
        if let Some(b) = self.budget {
            out.push_str(&format!("b {b}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, &e)
    }

    #[test]
    fn degeneracy_of_known_families() {
        assert_eq!(degeneracy(&Graph::new(4)), 0);
        assert_eq!(degeneracy(&path(6)), 1);
        assert_eq!(degeneracy(&cycle(6)), 2);
        // Star: every subgraph keeps a degree-<=1 vertex.
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(degeneracy(&star), 1);
        let k5 = Graph::from_edges(
            5,
            &(0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect::<Vec<_>>(),
        );
        assert_eq!(degeneracy(&k5), 4);
        // K4 with a pendant: the pendant peels first, then the clique rules.
        let k4p = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]);
        assert_eq!(degeneracy(&k4p), 3);
    }

    #[test]
    fn parse_roundtrip() {
        let text = "c demo\np mtw 4 3\ne 1 2\ne 2 3\ne 3 4\nv 2 5\nb 7\n";
        let inst = parse_instance(text, Problem::Cvc).unwrap();
        assert_eq!(inst.graph.n(), 4);
        assert_eq!(inst.graph.m(), 3);
        assert!(inst.graph.has_edge(0, 1));
        assert_eq!(inst.costs.get(1), 5);
        assert_eq!(inst.costs.get(0), 1);
        assert_eq!(inst.budget, Some(7));
        let again = parse_instance(&inst.to_mtw(), Problem::Cvc).unwrap();
        assert_eq!(again.graph, inst.graph);
        assert_eq!(again.costs, inst.costs);
        assert_eq!(again.budget, inst.budget);
    }

    #[test]
    fn parse_errors_name_lines() {
        let dup = "p mtw 3 2\ne 1 2\ne 2 1\n";
        let err = parse_instance(dup, Problem::Is).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.msg.contains("duplicate edge"));

        let selfloop = "p mtw 2 1\ne 1 1\n";
        let err = parse_instance(selfloop, Problem::Is).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains("self-loop"));

        let range = "p mtw 2 1\ne 1 5\n";
        let err = parse_instance(range, Problem::Is).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains("out of range"));

        let term = "p mtw 2 1\ne 1 2\nk 1\n";
        let err = parse_instance(term, Problem::Cds).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.msg.contains("non-ST"));

        let unknown = "p mtw 2 1\ne 1 2\nq zzz\n";
        let err = parse_instance(unknown, Problem::Is).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.msg.contains("unknown line type"));
    }

    #[test]
    fn twinclasses_on_c4_and_p4() {
        // C4 on a,b,c,d: {a,c} and {b,d} are false twins.
        let c4 = cycle(4);
        let part = twinclasses(&c4);
        assert_eq!(part.blocks, vec![vec![0, 2], vec![1, 3]]);
        // P4 has no twins at all.
        let p4 = path(4);
        let part = twinclasses(&p4);
        assert_eq!(part.len(), 4);
        // True twins: triangle plus a pendant on one vertex.
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g.add_edge(2, 3);
        g.finish();
        let part = twinclasses(&g);
        assert!(part.blocks.contains(&vec![0, 1]));
    }

    #[test]
    fn quotient_of_c4_twins() {
        let c4 = cycle(4);
        let part = twinclasses(&c4);
        let q = quotient(&c4, &part);
        assert_eq!(q.n(), 2);
        assert_eq!(q.m(), 1);
    }

    #[test]
    fn forest_identity() {
        assert!(is_forest(&path(5)));
        assert!(!is_forest(&cycle(5)));
        let mut g = Graph::new(5);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        g.finish();
        assert!(is_forest(&g));
    }

    #[test]
    fn components_respect_restriction() {
        let g = path(5);
        let comps = connected_components(&g, Some(&[0, 1, 3, 4]));
        assert_eq!(comps, vec![vec![0, 1], vec![3, 4]]);
        assert_eq!(connected_components(&g, None).len(), 1);
    }
}

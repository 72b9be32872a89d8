//! Graphs as packed adjacency bit-rows, Cayley graphs, strong regularity by
//! direct counting, and PDS extraction from a regular group action.

use crate::group::FiniteGroup;
use crate::{Error, Result};

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    pub vertex_labels: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, bits: vec![0; n * words], vertex_labels: None }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Construction(format!("edge ({a},{b}) outside 0..{n}")));
            }
            if a == b {
                return Err(Error::Construction(format!("loop at vertex {a}")));
            }
            g.set_edge(a, b);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn set_edge(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
        self.bits[b * self.words + a / 64] |= 1 << (a % 64);
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| self.adjacent(a, b)).collect()
    }

    pub fn common_neighbors(&self, a: usize, b: usize) -> usize {
        self.row(a).iter().zip(self.row(b)).map(|(x, y)| (x & y).count_ones() as usize).sum()
    }

    /// Edges `(a, b)` with `a < b`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| (a + 1..self.n).filter(move |&b| self.adjacent(a, b)).map(move |b| (a, b))).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(a) = stack.pop() {
            for b in self.neighbors(a) {
                if !seen[b] {
                    seen[b] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count == self.n
    }
}

/// `Cay(G, S)`: `x ~ y` iff `xy⁻¹ ∈ S`.
pub fn cayley(g: &FiniteGroup, s: &[usize]) -> Result<Graph> {
    let v = g.order();
    let mut member = vec![false; v];
    for &x in s {
        if x >= v {
            return Err(Error::Construction(format!("element index {x} out of range")));
        }
        member[x] = true;
    }
    if member[0] {
        return Err(Error::Construction("the connection set contains the identity".into()));
    }
    if let Some(&x) = s.iter().find(|&&x| !member[g.inv(x)]) {
        return Err(Error::Construction(format!("{} is in S but its inverse is not", g.label(x))));
    }
    let mut graph = Graph::empty(v);
    for y in 0..v {
        // x = s·y for s ∈ S.
        for &x in s {
            let a = g.mul(x, y);
            graph.bits[a * graph.words + y / 64] |= 1 << (y % 64);
        }
    }
    graph.vertex_labels = g.labels().map(<[String]>::to_vec);
    Ok(graph)
}

/// Outcome of counting common neighbors over all pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SrgCheck {
    /// Strongly regular. `lambda` is `None` without edges, `mu` is `None`
    /// without non-adjacent pairs.
    Strong { k: usize, lambda: Option<usize>, mu: Option<usize> },
    NotRegular { vertex: usize, degree: usize, expected: usize },
    /// The first pair (row-major, `x < y`) whose count differs from the first
    /// pair of the same kind.
    Violation { x: usize, y: usize, adjacent: bool, common: usize, expected: usize },
}

impl SrgCheck {
    /// `(k, λ, μ)` with vacuous counts reported as 0.
    pub fn params(&self) -> Option<(usize, usize, usize)> {
        match self {
            SrgCheck::Strong { k, lambda, mu } => Some((*k, lambda.unwrap_or(0), mu.unwrap_or(0))),
            _ => None,
        }
    }

    /// Empty, complete, or a disjoint union of cliques (`μ = 0`).
    pub fn is_trivial(&self) -> bool {
        matches!(self, SrgCheck::Strong { lambda: None, .. } | SrgCheck::Strong { mu: None | Some(0), .. })
    }
}

pub fn verify_srg(g: &Graph) -> SrgCheck {
    let n = g.n;
    if n == 0 {
        return SrgCheck::Strong { k: 0, lambda: None, mu: None };
    }
    let k = g.degree(0);
    if let Some(vertex) = (1..n).find(|&a| g.degree(a) != k) {
        return SrgCheck::NotRegular { vertex, degree: g.degree(vertex), expected: k };
    }
    let mut lambda = None;
    let mut mu = None;
    for x in 0..n {
        for y in x + 1..n {
            let adjacent = g.adjacent(x, y);
            let common = g.common_neighbors(x, y);
            let slot = if adjacent { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(expected) if expected != common => {
                    return SrgCheck::Violation { x, y, adjacent, common, expected };
                }
                _ => {}
            }
        }
    }
    SrgCheck::Strong { k, lambda, mu }
}

/// `T_n`: 2-subsets of `0..n` in lexicographic order, adjacent when they share one point.
pub fn triangular_graph(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::Construction(format!("triangular graph needs n >= 4, got {n}")));
    }
    let pairs = two_subsets(n);
    let mut g = Graph::empty(pairs.len());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            let shared = [a == c, a == d, b == c, b == d].iter().filter(|&&t| t).count();
            if shared == 1 {
                g.set_edge(i, j);
            }
        }
    }
    g.vertex_labels = Some(pairs.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect());
    Ok(g)
}

/// 2-subsets `(a, b)` with `a < b`, lexicographic.
pub fn two_subsets(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Edge complement without loops.
pub fn complement(g: &Graph) -> Graph {
    let mut c = Graph::empty(g.n);
    for a in 0..g.n {
        for b in a + 1..g.n {
            if !g.adjacent(a, b) {
                c.set_edge(a, b);
            }
        }
    }
    c.vertex_labels = g.vertex_labels.clone();
    c
}

/// A group acting on `0..n` with `action[g·n + x] = g(x)`.
#[derive(Clone, Debug)]
pub struct RegularAction<'g> {
    pub group: &'g FiniteGroup,
    pub n: usize,
    action: Vec<u32>,
}

impl<'g> RegularAction<'g> {
    /// Validates that `g ↦ (x ↦ action(g, x))` is a homomorphism into the
    /// permutations of `0..n`: `(gh)(x) = g(h(x))`.
    pub fn new(group: &'g FiniteGroup, n: usize, action: Vec<u32>) -> Result<Self> {
        let v = group.order();
        if action.len() != v * n {
            return Err(Error::Group(format!("action table has {} entries, expected {}", action.len(), v * n)));
        }
        let a = RegularAction { group, n, action };
        for g in 0..v {
            let mut seen = vec![false; n];
            for x in 0..n {
                let y = a.apply(g, x);
                if y >= n || std::mem::replace(&mut seen[y], true) {
                    return Err(Error::Group(format!("element {} does not act as a permutation", group.label(g))));
                }
            }
            if g == 0 && (0..n).any(|x| a.apply(0, x) != x) {
                return Err(Error::Group("the identity moves a point".into()));
            }
        }
        for g in 0..v {
            for &h in group.generators() {
                let gh = group.mul(g, h);
                if let Some(x) = (0..n).find(|&x| a.apply(gh, x) != a.apply(g, a.apply(h, x))) {
                    return Err(Error::Group(format!(
                        "not an action: ({}·{})({x}) differs from {}({}({x}))",
                        group.label(g),
                        group.label(h),
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
        }
        Ok(a)
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.action[g * self.n + x] as usize
    }

    /// The orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..self.group.order()).map(|g| self.apply(g, x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Checks that `g ↦ g(v₀)` is a bijection onto `0..n`.
    pub fn check_sharply_transitive(&self, v0: usize) -> Result<()> {
        let v = self.group.order();
        let orbit = self.orbit(v0);
        if orbit.len() != self.n {
            return Err(Error::NotSharplyTransitive(format!(
                "the orbit of vertex {v0} has {} of {} vertices",
                orbit.len(),
                self.n
            )));
        }
        if v != self.n {
            let g = (1..v).find(|&g| self.apply(g, v0) == v0).unwrap_or(0);
            return Err(Error::NotSharplyTransitive(format!(
                "group order {v} differs from {} vertices; {} fixes vertex {v0}",
                self.n,
                self.group.label(g)
            )));
        }
        Ok(())
    }
}

/// `S = {g : g(v₀) ∈ N(v₀)}` together with the vertex bijection `x ↦ x⁻¹(v₀)`
/// carrying `Cay(G, S)` onto the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractedPds {
    pub subset: Vec<usize>,
    /// `bijection[x]` is the vertex matched with group element `x`.
    pub bijection: Vec<usize>,
}

pub fn pds_from_regular_action(graph: &Graph, action: &RegularAction<'_>, v0: usize) -> Result<ExtractedPds> {
    let g = action.group;
    if action.n != graph.n() {
        return Err(Error::Construction(format!("action on {} points, graph on {}", action.n, graph.n())));
    }
    action.check_sharply_transitive(v0)?;
    let subset: Vec<usize> = (0..g.order()).filter(|&h| graph.adjacent(v0, action.apply(h, v0))).collect();
    let bijection: Vec<usize> = (0..g.order()).map(|x| action.apply(g.inv(x), v0)).collect();
    let cay = cayley(g, &subset)?;
    for x in 0..g.order() {
        for y in x + 1..g.order() {
            if cay.adjacent(x, y) != graph.adjacent(bijection[x], bijection[y]) {
                return Err(Error::Construction(format!(
                    "Cayley graph and input graph disagree on elements {} and {}",
                    g.label(x),
                    g.label(y)
                )));
            }
        }
    }
    Ok(ExtractedPds { subset, bijection })
}

const GRAPH6_BIAS: u8 = 63;

/// Header-free graph6 encoding, for up to 258047 vertices.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n;
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + GRAPH6_BIAS);
    } else {
        assert!(n < 258_048, "graph6 short form holds at most 258047 vertices");
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + GRAPH6_BIAS);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adjacent(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + GRAPH6_BIAS);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + GRAPH6_BIAS);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim().strip_prefix(">>graph6<<").unwrap_or(s.trim());
    let bytes = s.as_bytes();
    let bad = |msg: &str| Error::parse(1, msg);
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("graph6 characters must lie in '?'..'~'"));
    }
    let (n, rest) = match bytes.first() {
        None => return Err(bad("empty graph6 string")),
        Some(126) => {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(bad("unsupported graph6 size prefix"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - GRAPH6_BIAS) as usize);
            (n, &bytes[4..])
        }
        Some(&b) => ((b - GRAPH6_BIAS) as usize, &bytes[1..]),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != needed {
        return Err(bad(&format!("{n} vertices need {needed} data bytes, found {}", rest.len())));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[bit / 6] - GRAPH6_BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// `# vertices N` followed by one `a b` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("# vertices {}\n", g.n);
    for (a, b) in g.edges() {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("vertices") {
                n = Some(v.trim().parse().map_err(|_| Error::parse(i + 1, "bad vertex count"))?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = parts[..] else {
            return Err(Error::parse(i + 1, "expected two vertex indices"));
        };
        let a: usize = a.parse().map_err(|_| Error::parse(i + 1, "bad vertex index"))?;
        let b: usize = b.parse().map_err(|_| Error::parse(i + 1, "bad vertex index"))?;
        edges.push((a, b));
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

//! Finite multigraphs and the constructors used throughout the crate.
//!
//! Vertices are the indices `0..n`. Parallel edges are stored as a
//! multiplicity on the unordered pair, never as duplicate entries, and
//! self-loops are rejected. Connectivity is not an invariant of
//! [`Multigraph`]: intermediate graphs may be disconnected, and operations
//! that need connectivity check it themselves.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Unordered vertex pair, always stored as `(min, max)`.
pub type Pair = (usize, usize);

fn ordered(u: usize, v: usize) -> Pair {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A loopless multigraph on the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<Pair, u64>,
}

impl Multigraph {
    /// Graph with `n` vertices and no edges.
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Builds a graph from `(u, v, multiplicity)` triples. Repeated pairs accumulate.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = Multigraph::new(n);
        for (u, v, m) in edges {
            g.add_edges(u, v, m)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Number of distinct adjacent pairs.
    pub fn pair_count(&self) -> usize {
        self.edges.len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Adds `mult` parallel edges between `u` and `v`.
    pub fn add_edges(&mut self, u: usize, v: usize, mult: u64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoopForbidden(u));
        }
        if mult == 0 {
            return Err(Error::InvalidParameter(
                "edge multiplicity must be at least 1".into(),
            ));
        }
        *self.edges.entry(ordered(u, v)).or_insert(0) += mult;
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_edges(u, v, 1)
    }

    /// Removes every edge between `u` and `v`, returning how many there were.
    pub fn remove_all_edges(&mut self, u: usize, v: usize) -> u64 {
        self.edges.remove(&ordered(u, v)).unwrap_or(0)
    }

    /// Removes a single edge between `u` and `v`. Returns false if there was none.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let key = ordered(u, v);
        match self.edges.get_mut(&key) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.edges.remove(&key);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.edges.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    /// Iterates over `((u, v), multiplicity)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Pair, u64)> + '_ {
        self.edges.iter().map(|(&p, &m)| (p, m))
    }

    /// Each edge instance as its own entry; parallel edges repeat.
    pub fn edge_instances(&self) -> Vec<Pair> {
        self.edges
            .iter()
            .flat_map(|(&p, &m)| std::iter::repeat_n(p, m as usize))
            .collect()
    }

    /// Degree of `v`, counting multiplicity.
    pub fn degree(&self, v: usize) -> u64 {
        self.edges
            .iter()
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(_, m)| m)
            .sum()
    }

    /// Neighbour lists with multiplicities, indexed by vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(u, v), &m) in &self.edges {
            adj[u].push((v, m));
            adj[v].push((u, m));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self)
    }

    /// Graphviz rendering; parallel edges are written once per instance.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edge_instances() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Writes the line-based text format: `n <count>` followed by `e <u> <v> [mult]`.
impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (&(u, v), &m) in &self.edges {
            if m == 1 {
                writeln!(f, "e {u} {v}")?;
            } else {
                writeln!(f, "e {u} {v} {m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut graph: Option<Multigraph> = None;
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            let mut fields = line.split_whitespace();
            let tag = fields.next().unwrap_or_default();
            let nums: Vec<u64> = fields
                .map(|t| {
                    t.parse::<u64>().map_err(|_| {
                        parse_err(format!("expected a nonnegative integer, got `{t}`"))
                    })
                })
                .collect::<Result<_>>()?;
            match (tag, graph.as_mut()) {
                ("n", None) => {
                    if nums.len() != 1 {
                        return Err(parse_err("`n` takes exactly one value".into()));
                    }
                    graph = Some(Multigraph::new(nums[0] as usize));
                }
                ("n", Some(_)) => return Err(parse_err("duplicate `n` line".into())),
                ("e", None) => return Err(parse_err("`e` before `n`".into())),
                ("e", Some(g)) => {
                    let (u, v, m) = match nums.as_slice() {
                        [u, v] => (*u, *v, 1),
                        [u, v, m] => (*u, *v, *m),
                        _ => return Err(parse_err("`e` takes two or three values".into())),
                    };
                    g.add_edges(u as usize, v as usize, m)
                        .map_err(|e| parse_err(e.to_string()))?;
                }
                (other, _) => return Err(parse_err(format!("unknown directive `{other}`"))),
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n` line".into(),
        })
    }
}

/// True iff every vertex is reachable from vertex 0. The empty and
/// single-vertex graphs are connected.
pub fn is_connected(g: &Multigraph) -> bool {
    if g.n <= 1 {
        return true;
    }
    let adj = g.adjacency();
    let mut seen = vec![false; g.n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(u, _) in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == g.n
}

/// The cycle on `m` vertices with edges `(i, i+1 mod m)`. For `m = 2` this
/// is a single pair with multiplicity 2.
pub fn cycle_graph(m: usize) -> Result<Multigraph> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 2 vertices, got {m}"
        )));
    }
    Multigraph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m, 1)))
}

pub fn complete_graph(m: usize) -> Result<Multigraph> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "complete graph needs at least 1 vertex".into(),
        ));
    }
    Multigraph::from_edges(m, (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j, 1))))
}

/// The path `0 - 1 - ... - (m-1)`.
pub fn path_graph(m: usize) -> Result<Multigraph> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "path needs at least 1 vertex".into(),
        ));
    }
    Multigraph::from_edges(m, (1..m).map(|i| (i - 1, i, 1)))
}

/// Glues `g2` onto `g1` by identifying `v2` with `v1`.
///
/// Returns the new graph and the image of every vertex of `g2`. Vertices of
/// `g1` keep their labels. A vertex `w` of `g2` maps to `v1` if `w == v2`,
/// to `g1.n + w` if `w < v2`, and to `g1.n + w - 1` if `w > v2`.
pub fn wedge_sum_with_map(
    g1: &Multigraph,
    v1: usize,
    g2: &Multigraph,
    v2: usize,
) -> Result<(Multigraph, Vec<usize>)> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let map: Vec<usize> = (0..g2.n)
        .map(|w| match w.cmp(&v2) {
            std::cmp::Ordering::Equal => v1,
            std::cmp::Ordering::Less => g1.n + w,
            std::cmp::Ordering::Greater => g1.n + w - 1,
        })
        .collect();
    let mut g = g1.clone();
    g.n = g1.n + g2.n - 1;
    for ((u, v), m) in g2.edges() {
        g.add_edges(map[u], map[v], m)?;
    }
    Ok((g, map))
}

/// One-point union of two graphs; see [`wedge_sum_with_map`] for labels.
pub fn wedge_sum(g1: &Multigraph, v1: usize, g2: &Multigraph, v2: usize) -> Result<Multigraph> {
    wedge_sum_with_map(g1, v1, g2, v2).map(|(g, _)| g)
}

/// Attaches a path of `len` edges from `x` to `y` and returns the graph
/// together with the path's vertices `x = p_0, p_1, ..., p_len = y`.
///
/// The `len - 1` interior vertices are appended as `g.n, g.n + 1, ...`.
pub fn attach_path(
    g: &Multigraph,
    x: usize,
    y: usize,
    len: usize,
) -> Result<(Multigraph, Vec<usize>)> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::SelfLoopForbidden(x));
    }
    if len == 0 {
        return Err(Error::InvalidParameter(
            "path must have at least one edge".into(),
        ));
    }
    let mut out = g.clone();
    out.n = g.n + len - 1;
    let mut path = Vec::with_capacity(len + 1);
    path.push(x);
    path.extend(g.n..g.n + len - 1);
    path.push(y);
    for w in path.windows(2) {
        out.add_edge(w[0], w[1])?;
    }
    Ok((out, path))
}

pub fn add_path(g: &Multigraph, x: usize, y: usize, len: usize) -> Result<Multigraph> {
    attach_path(g, x, y, len).map(|(g, _)| g)
}

/// The polygon sizes `(k_1, ..., k_n)` of a stack, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StackSpec(Vec<u64>);

impl StackSpec {
    pub fn new(ks: Vec<u64>) -> Result<Self> {
        if let Some(&k) = ks.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidParameter(format!(
                "polygon sizes must be at least 2, got {k}"
            )));
        }
        Ok(StackSpec(ks))
    }

    pub fn empty() -> Self {
        StackSpec(Vec::new())
    }

    pub fn ks(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The first `len` polygons.
    pub fn prefix(&self, len: usize) -> StackSpec {
        StackSpec(self.0[..len].to_vec())
    }

    /// Vertex count of the stacked graph: `k_1 + sum_{i>1} (k_i - 2)`, or 1 when empty.
    pub fn vertex_count(&self) -> usize {
        match self.0.split_first() {
            None => 1,
            Some((&k1, rest)) => (k1 + rest.iter().map(|k| k - 2).sum::<u64>()) as usize,
        }
    }

    /// Edge count with multiplicity: `sum k_i - (n - 1)`.
    pub fn edge_count(&self) -> u64 {
        if self.0.is_empty() {
            return 0;
        }
        self.0.iter().sum::<u64>() - (self.0.len() as u64 - 1)
    }
}

impl fmt::Display for StackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for StackSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(StackSpec::empty());
        }
        let ks = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u64>().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad polygon size `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StackSpec::new(ks)
    }
}

/// A polygon stack together with the bookkeeping of how it was assembled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackGraph {
    pub spec: StackSpec,
    pub graph: Multigraph,
    /// `level_edges[i]` is the pair the `(i+2)`-th polygon was attached across.
    pub level_edges: Vec<Pair>,
    /// Consecutive pair on the last path offered for the next attachment.
    pub active_pair: Option<Pair>,
    /// Vertex sequence of each level. The first level is the closed cycle
    /// `0, 1, ..., k_1 - 1, 0`; later levels run `x, p_1, ..., y` across the
    /// attachment pair.
    pub paths: Vec<Vec<usize>>,
    /// For each level after the first, the position on the previous level's
    /// path where it was attached.
    pub attachment_positions: Vec<usize>,
}

impl StackGraph {
    /// Path of the most recently added polygon, if any.
    pub fn top_path(&self) -> Option<&[usize]> {
        self.paths.last().map(Vec::as_slice)
    }

    /// The consecutive pair at `pos` on the top path.
    pub fn top_pair(&self, pos: usize) -> Option<Pair> {
        let path = self.top_path()?;
        (pos + 1 < path.len()).then(|| (path[pos], path[pos + 1]))
    }
}

/// Builds the canonical polygon stack: the first polygon is `cycle_graph(k_1)`
/// and each later polygon is attached across the first pair of the previous
/// path.
pub fn polygon_stack(spec: &StackSpec) -> Result<StackGraph> {
    polygon_stack_with(spec, |_, _| 0)
}

/// Builds a polygon stack where `choose(level, positions)` picks the
/// attachment position (in `0..positions`) on the previous level's path for
/// every level after the first. `level` is 1-based.
pub fn polygon_stack_with<F>(spec: &StackSpec, mut choose: F) -> Result<StackGraph>
where
    F: FnMut(usize, usize) -> usize,
{
    let Some((&k1, rest)) = spec.0.split_first() else {
        return Ok(StackGraph {
            spec: spec.clone(),
            graph: Multigraph::new(1),
            level_edges: Vec::new(),
            active_pair: None,
            paths: Vec::new(),
            attachment_positions: Vec::new(),
        });
    };
    let k1 = k1 as usize;
    let mut graph = cycle_graph(k1)?;
    let mut first: Vec<usize> = (0..k1).collect();
    first.push(0);
    let mut paths = vec![first];
    let mut level_edges = Vec::with_capacity(rest.len());
    let mut attachment_positions = Vec::with_capacity(rest.len());
    for (offset, &k) in rest.iter().enumerate() {
        let prev = paths.last().expect("at least one level");
        let positions = prev.len() - 1;
        let pos = choose(offset + 2, positions);
        if pos >= positions {
            return Err(Error::InvalidParameter(format!(
                "attachment position {pos} out of range 0..{positions}"
            )));
        }
        let (x, y) = (prev[pos], prev[pos + 1]);
        let (next, path) = attach_path(&graph, x, y, k as usize - 1)?;
        graph = next;
        level_edges.push((x, y));
        attachment_positions.push(pos);
        paths.push(path);
    }
    let top = paths.last().expect("nonempty");
    let active_pair = Some((top[0], top[1]));
    Ok(StackGraph {
        spec: spec.clone(),
        graph,
        level_edges,
        active_pair,
        paths,
        attachment_positions,
    })
}

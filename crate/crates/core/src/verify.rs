//! Independent oracles and theorem checks.
//!
//! The brute-force counters here never touch the linear algebra: they
//! enumerate edge subsets directly, treating parallel edges as distinct
//! labelled instances. The coprimality checks and the search harness use the
//! critical-group pipeline and report what they find without asserting
//! anything about open questions.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::graph::{attach_path, Multigraph};
use crate::group::critical_group;
use crate::{Error, Result};

/// Default cap on edge instances for the brute-force enumerators.
pub const DEFAULT_EDGE_LIMIT: usize = 20;

#[derive(Clone)]
struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&self, mut v: usize) -> usize {
        while self.0[v] != v {
            v = self.0[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

fn enumeration_guard(g: &Multigraph, limit: usize) -> Result<Vec<(usize, usize)>> {
    let edges = g.edge_instances();
    if edges.len() > limit {
        return Err(Error::TooLarge {
            edges: edges.len(),
            limit,
        });
    }
    if !g.is_connected() {
        return Err(Error::RequiresConnected);
    }
    Ok(edges)
}

/// Counts acyclic subsets of `edges` of size `target`, where `allowed`
/// vetoes merges.
fn count_forests<F>(
    edges: &[(usize, usize)],
    idx: usize,
    remaining: usize,
    uf: &UnionFind,
    allowed: &F,
) -> u64
where
    F: Fn(&UnionFind, usize, usize) -> bool,
{
    if remaining == 0 {
        return 1;
    }
    if edges.len() - idx < remaining {
        return 0;
    }
    let (u, v) = edges[idx];
    let mut total = count_forests(edges, idx + 1, remaining, uf, allowed);
    let (ru, rv) = (uf.find(u), uf.find(v));
    if ru != rv && allowed(uf, ru, rv) {
        let mut next = uf.clone();
        next.union(ru, rv);
        total += count_forests(edges, idx + 1, remaining - 1, &next, allowed);
    }
    total
}

/// Spanning trees counted by enumeration, with the default edge limit.
pub fn brute_spanning_trees(g: &Multigraph) -> Result<BigInt> {
    brute_spanning_trees_with_limit(g, DEFAULT_EDGE_LIMIT)
}

pub fn brute_spanning_trees_with_limit(g: &Multigraph, limit: usize) -> Result<BigInt> {
    let edges = enumeration_guard(g, limit)?;
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(BigInt::one());
    }
    let uf = UnionFind::new(n);
    Ok(count_forests(&edges, 0, n - 1, &uf, &|_, _, _| true).into())
}

/// Two-tree spanning forests with `x` and `y` in different trees.
pub fn brute_spanning_forests(g: &Multigraph, x: usize, y: usize) -> Result<BigInt> {
    brute_spanning_forests_with_limit(g, x, y, DEFAULT_EDGE_LIMIT)
}

pub fn brute_spanning_forests_with_limit(
    g: &Multigraph,
    x: usize,
    y: usize,
    limit: usize,
) -> Result<BigInt> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::InvalidPair(x));
    }
    let edges = enumeration_guard(g, limit)?;
    let n = g.vertex_count();
    let uf = UnionFind::new(n);
    let keep_apart = |uf: &UnionFind, ru: usize, rv: usize| {
        let (rx, ry) = (uf.find(x), uf.find(y));
        !((ru == rx && rv == ry) || (ru == ry && rv == rx))
    };
    Ok(count_forests(&edges, 0, n - 2, &uf, &keep_apart).into())
}

/// Configurations reachable from the zero configuration by at most `depth`
/// single fire/borrow moves.
pub fn move_search_ball(g: &Multigraph, depth: usize) -> HashSet<Vec<i64>> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let start = vec![0i64; n];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((c, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for v in 0..n {
            for sign in [1i64, -1] {
                let mut next = c.clone();
                for &(u, m) in &adj[v] {
                    next[v] -= sign * m as i64;
                    next[u] += sign * m as i64;
                }
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
    }
    seen
}

/// Outcome of checking the coprimality criterion on one adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LorenziniReport {
    pub x: usize,
    pub y: usize,
    /// Number of parallel edges between `x` and `y`.
    pub multiplicity: u64,
    pub order_g: BigInt,
    /// Order of the group of `G` with every `x`-`y` edge deleted; 0 when that
    /// graph is disconnected.
    pub order_g1: BigInt,
    pub g1_connected: bool,
    pub coprime: bool,
    pub cyclic_g: bool,
    /// Whether `delta(x, y)` generates; `None` when the deleted graph is disconnected.
    pub pair_generates: Option<bool>,
}

impl LorenziniReport {
    /// Coprime orders must force a cyclic group.
    pub fn theorem_holds(&self) -> bool {
        !self.coprime || self.cyclic_g
    }

    /// Coprime orders yet `delta(x, y)` fails to generate.
    pub fn is_question_counterexample(&self) -> bool {
        self.coprime && self.pair_generates == Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x,
            "y": self.y,
            "multiplicity": self.multiplicity,
            "order_g": self.order_g.to_string(),
            "order_g1": self.order_g1.to_string(),
            "g1_connected": self.g1_connected,
            "coprime": self.coprime,
            "cyclic_g": self.cyclic_g,
            "pair_generates": self.pair_generates,
        })
    }
}

/// Compares `|K(G)|` with `|K(G_1)|`, where `G_1` drops every edge between
/// `x` and `y`, and records cyclicity and whether `delta(x, y)` generates.
pub fn lorenzini_check(g: &Multigraph, x: usize, y: usize) -> Result<LorenziniReport> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::InvalidPair(x));
    }
    let multiplicity = g.multiplicity(x, y);
    if multiplicity == 0 {
        return Err(Error::PreconditionViolated(format!(
            "no edge between {x} and {y}"
        )));
    }
    let kg = critical_group(g)?;
    let mut g1 = g.clone();
    g1.remove_all_edges(x, y);
    let g1_connected = g1.is_connected();
    let (order_g1, coprime, pair_generates) = if g1_connected {
        let order_g1 = critical_group(&g1)?.order;
        let coprime = kg.order.gcd(&order_g1).is_one();
        (order_g1, coprime, Some(kg.pair_report(x, y)?.generates))
    } else {
        (BigInt::zero(), false, None)
    };
    Ok(LorenziniReport {
        x,
        y,
        multiplicity,
        cyclic_g: kg.is_cyclic(),
        order_g: kg.order,
        order_g1,
        g1_connected,
        coprime,
        pair_generates,
    })
}

/// One consecutive pair of the attached chain in [`lorenzini_path_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPairCheck {
    pub x: usize,
    pub y: usize,
    /// Order of the group of `G'` with this single chain edge deleted.
    pub order_g1_prime: BigInt,
    /// Whether that order is coprime to `|K(G_1)|` of the base report.
    pub coprime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LorenziniPathReport {
    pub base: LorenziniReport,
    /// The chain `x = p_0, ..., p_len = y` in the extended graph.
    pub path: Vec<usize>,
    pub order_g_prime: BigInt,
    pub cyclic_g_prime: bool,
    pub chain: Vec<ChainPairCheck>,
}

impl LorenziniPathReport {
    pub fn all_coprime(&self) -> bool {
        self.chain.iter().all(|c| c.coprime)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.base.to_json(),
            "path": self.path,
            "order_g_prime": self.order_g_prime.to_string(),
            "cyclic_g_prime": self.cyclic_g_prime,
            "chain": self.chain.iter().map(|c| json!({
                "x": c.x,
                "y": c.y,
                "order_g1_prime": c.order_g1_prime.to_string(),
                "coprime": c.coprime,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Attaches a chain of `len` edges across `(x, y)` and checks, for every
/// chain edge, that deleting it gives an order coprime to `|K(G_1)|`, along
/// with cyclicity of the extended graph.
pub fn lorenzini_path_check(
    g: &Multigraph,
    x: usize,
    y: usize,
    len: usize,
) -> Result<LorenziniPathReport> {
    let base = lorenzini_check(g, x, y)?;
    if !base.coprime {
        return Err(Error::PreconditionViolated(format!(
            "|K(G)| = {} and |K(G_1)| = {} are not coprime",
            base.order_g, base.order_g1
        )));
    }
    let (extended, path) = attach_path(g, x, y, len)?;
    let kg = critical_group(&extended)?;
    let mut chain = Vec::with_capacity(len);
    for w in path.windows(2) {
        let mut cut = extended.clone();
        cut.remove_edge(w[0], w[1]);
        let order = if cut.is_connected() {
            critical_group(&cut)?.order
        } else {
            BigInt::zero()
        };
        let coprime = order.gcd(&base.order_g1).is_one();
        chain.push(ChainPairCheck {
            x: w[0],
            y: w[1],
            order_g1_prime: order,
            coprime,
        });
    }
    Ok(LorenziniPathReport {
        base,
        path,
        cyclic_g_prime: kg.is_cyclic(),
        order_g_prime: kg.order,
        chain,
    })
}

/// Every connected simple graph on exactly `n` labelled vertices.
pub fn connected_simple_graphs(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    assert!(
        pairs.len() < 32,
        "too many vertices for exhaustive enumeration"
    );
    (0u32..1 << pairs.len())
        .map(|mask| {
            let mut g = Multigraph::new(n);
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v).expect("valid pair");
                }
            }
            g
        })
        .filter(Multigraph::is_connected)
        .collect()
}

/// A connected multigraph on `n` vertices: each pair joins with probability
/// `p` (resampled until connected), then `extra` random existing pairs get
/// one more parallel edge.
pub fn random_connected_multigraph<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    extra: usize,
) -> Multigraph {
    loop {
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).expect("valid pair");
                }
            }
        }
        if !g.is_connected() {
            continue;
        }
        let pairs: Vec<(usize, usize)> = g.edges().map(|(pair, _)| pair).collect();
        for _ in 0..extra {
            if let Some(&(u, v)) = pairs.get(rng.gen_range(0..pairs.len().max(1))) {
                g.add_edge(u, v).expect("valid pair");
            }
        }
        return g;
    }
}

/// Parameters of [`question1_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    pub max_vertices: usize,
    /// Upper bound on parallel-edge bumps per sampled graph.
    pub max_extra_edges: usize,
    pub trials: usize,
    pub seed: u64,
    /// Also scan every connected simple graph on `2..=max_vertices` vertices.
    pub exhaustive: bool,
    pub edge_probability: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            max_vertices: 6,
            max_extra_edges: 2,
            trials: 100,
            seed: 0,
            exhaustive: false,
            edge_probability: 0.5,
        }
    }
}

impl SearchParams {
    pub fn to_json(&self) -> Value {
        json!({
            "max_vertices": self.max_vertices,
            "max_extra_edges": self.max_extra_edges,
            "trials": self.trials,
            "seed": self.seed.to_string(),
            "exhaustive": self.exhaustive,
            "edge_probability": self.edge_probability,
        })
    }
}

/// A graph and adjacent pair singled out by the search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Finding {
    pub graph_text: String,
    pub x: usize,
    pub y: usize,
}

impl Finding {
    pub fn graph(&self) -> Multigraph {
        self.graph_text
            .parse()
            .expect("written by Multigraph::to_string")
    }

    fn to_json(&self) -> Value {
        json!({ "graph": self.graph_text, "x": self.x, "y": self.y })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub params: SearchParams,
    pub graphs_examined: usize,
    /// Graph and adjacent-pair combinations examined.
    pub instances_examined: usize,
    pub coprime_instances: usize,
    /// Coprime orders with `delta(x, y)` not generating.
    pub counterexamples: Vec<Finding>,
    /// Coprime orders with a non-cyclic group.
    pub theorem_violations: Vec<Finding>,
}

impl SearchOutcome {
    /// Recomputes every finding and checks it still has its defining properties.
    pub fn reverify(&self) -> Result<bool> {
        for f in &self.counterexamples {
            if !lorenzini_check(&f.graph(), f.x, f.y)?.is_question_counterexample() {
                return Ok(false);
            }
        }
        for f in &self.theorem_violations {
            if lorenzini_check(&f.graph(), f.x, f.y)?.theorem_holds() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "params": self.params.to_json(),
            "graphs_examined": self.graphs_examined,
            "instances_examined": self.instances_examined,
            "coprime_instances": self.coprime_instances,
            "counterexamples": self.counterexamples.iter().map(Finding::to_json).collect::<Vec<_>>(),
            "theorem_violations": self.theorem_violations.iter().map(Finding::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Looks for adjacent pairs with coprime `|K(G)|`, `|K(G_1)|` where
/// `delta(x, y)` does not generate, over seeded random multigraphs and
/// optionally every small connected simple graph.
pub fn question1_search(params: &SearchParams) -> Result<SearchOutcome> {
    let mut outcome = SearchOutcome {
        params: params.clone(),
        graphs_examined: 0,
        instances_examined: 0,
        coprime_instances: 0,
        counterexamples: Vec::new(),
        theorem_violations: Vec::new(),
    };
    if params.exhaustive {
        for n in 2..=params.max_vertices {
            for g in connected_simple_graphs(n) {
                examine(&g, &mut outcome)?;
            }
        }
    }
    if params.max_vertices >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..params.trials {
            let n = rng.gen_range(2..=params.max_vertices);
            let extra = rng.gen_range(0..=params.max_extra_edges);
            let g = random_connected_multigraph(&mut rng, n, params.edge_probability, extra);
            examine(&g, &mut outcome)?;
        }
    }
    outcome.counterexamples.sort();
    outcome.counterexamples.dedup();
    outcome.theorem_violations.sort();
    outcome.theorem_violations.dedup();
    Ok(outcome)
}

fn examine(g: &Multigraph, outcome: &mut SearchOutcome) -> Result<()> {
    outcome.graphs_examined += 1;
    for ((x, y), _) in g.edges() {
        let report = lorenzini_check(g, x, y)?;
        outcome.instances_examined += 1;
        if report.coprime {
            outcome.coprime_instances += 1;
        }
        let finding = || Finding {
            graph_text: g.to_string(),
            x,
            y,
        };
        if report.is_question_counterexample() {
            outcome.counterexamples.push(finding());
        }
        if !report.theorem_holds() {
            outcome.theorem_violations.push(finding());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{add_path, cycle_graph, path_graph};

    fn house() -> Multigraph {
        add_path(&cycle_graph(3).unwrap(), 0, 1, 3).unwrap()
    }

    #[test]
    fn tree_enumeration() {
        assert_eq!(
            brute_spanning_trees(&cycle_graph(4).unwrap()).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(brute_spanning_trees(&house()).unwrap(), BigInt::from(11));
        let triple = Multigraph::from_edges(2, [(0, 1, 3)]).unwrap();
        assert_eq!(brute_spanning_trees(&triple).unwrap(), BigInt::from(3));
        let c4_plus = add_path(&cycle_graph(4).unwrap(), 0, 1, 1).unwrap();
        assert_eq!(brute_spanning_trees(&c4_plus).unwrap(), BigInt::from(7));
        assert_eq!(
            brute_spanning_trees(&Multigraph::new(1)).unwrap(),
            BigInt::from(1)
        );

        let big = crate::graph::complete_graph(7).unwrap();
        assert!(matches!(
            brute_spanning_trees(&big),
            Err(Error::TooLarge {
                edges: 21,
                limit: 20
            })
        ));
        assert_eq!(
            brute_spanning_trees(&Multigraph::new(2)),
            Err(Error::RequiresConnected)
        );
    }

    #[test]
    fn forest_enumeration() {
        assert_eq!(
            brute_spanning_forests(&cycle_graph(4).unwrap(), 0, 1).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            brute_spanning_forests(&house(), 3, 4).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            brute_spanning_forests(&path_graph(3).unwrap(), 0, 2).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            brute_spanning_forests(&cycle_graph(3).unwrap(), 0, 1).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            brute_spanning_forests(&house(), 2, 2),
            Err(Error::InvalidPair(2))
        );
    }

    #[test]
    fn triangle_report() {
        let r = lorenzini_check(&cycle_graph(3).unwrap(), 0, 1).unwrap();
        assert_eq!(r.order_g, BigInt::from(3));
        assert_eq!(r.order_g1, BigInt::from(1));
        assert!(r.coprime && r.cyclic_g && r.theorem_holds());
        assert_eq!(r.pair_generates, Some(true));
        assert!(matches!(
            lorenzini_check(&path_graph(3).unwrap(), 0, 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn bridge_gives_disconnected_g1() {
        let r = lorenzini_check(&path_graph(3).unwrap(), 0, 1).unwrap();
        assert!(!r.g1_connected);
        assert_eq!(r.order_g1, BigInt::from(0));
        assert!(!r.coprime);
        assert_eq!(r.pair_generates, None);
    }

    #[test]
    fn roof_edge_report_is_consistent() {
        let g = house();
        let r = lorenzini_check(&g, 0, 1).unwrap();
        assert_eq!(r.order_g, BigInt::from(11));
        // deleting the roof edge leaves a pentagon
        assert_eq!(r.order_g1, BigInt::from(5));
        assert_eq!(
            r.order_g1,
            brute_spanning_trees(&{
                let mut g1 = g.clone();
                g1.remove_all_edges(0, 1);
                g1
            })
            .unwrap()
        );
        assert!(r.coprime && r.cyclic_g);
        assert_eq!(r, lorenzini_check(&g, 0, 1).unwrap());
    }

    #[test]
    fn path_checks() {
        let c3 = cycle_graph(3).unwrap();
        let r = lorenzini_path_check(&c3, 0, 1, 4).unwrap();
        assert!(r.cyclic_g_prime && r.all_coprime());
        assert_eq!(
            r.order_g_prime,
            brute_spanning_trees(&add_path(&c3, 0, 1, 4).unwrap()).unwrap()
        );
        assert_eq!(r.chain.len(), 4);

        let r1 = lorenzini_path_check(&c3, 0, 1, 1).unwrap();
        assert!(r1.cyclic_g_prime && r1.all_coprime());
        assert_eq!(r1.path, vec![0, 1]);

        // C_4 across an edge: |K(G)| = 4, |K(G_1)| = 1 is coprime; K_4 is not
        let k4 = crate::graph::complete_graph(4).unwrap();
        assert!(matches!(
            lorenzini_path_check(&k4, 0, 1, 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn move_ball_contains_single_fires() {
        let g = cycle_graph(3).unwrap();
        let ball = move_search_ball(&g, 1);
        assert!(ball.contains(&vec![-2, 1, 1]));
        assert!(ball.contains(&vec![2, -1, -1]));
        assert_eq!(ball.len(), 7);
    }

    #[test]
    fn search_determinism_and_edge_cases() {
        let params = SearchParams {
            trials: 30,
            seed: 7,
            max_vertices: 5,
            ..SearchParams::default()
        };
        let a = question1_search(&params).unwrap();
        assert_eq!(a, question1_search(&params).unwrap());
        assert_eq!(a.graphs_examined, 30);
        assert!(a.reverify().unwrap());

        let none = question1_search(&SearchParams {
            trials: 0,
            ..params
        })
        .unwrap();
        assert_eq!(none.instances_examined, 0);
        assert!(none.counterexamples.is_empty());
    }

    #[test]
    fn connected_graph_counts() {
        // labelled connected graphs on 1..=5 vertices (OEIS A001187)
        let counts: Vec<usize> = (1..=5).map(|n| connected_simple_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }
}

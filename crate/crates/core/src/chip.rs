//! Chip configurations, fire/borrow moves and constructive reductions.
//!
//! Chips may go negative; no move is ever illegal. A move is recorded as a
//! vertex and a signed count: positive fires that many times, negative
//! borrows.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::{cycle_graph, polygon_stack_with, Multigraph, StackGraph};
use crate::{Error, Result};

/// An integer number of chips on every vertex of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    chips: Vec<BigInt>,
}

impl Configuration {
    pub fn new(chips: Vec<BigInt>) -> Self {
        Configuration { chips }
    }

    pub fn zeros(n: usize) -> Self {
        Configuration {
            chips: vec![BigInt::zero(); n],
        }
    }

    pub fn from_i64(chips: &[i64]) -> Self {
        Configuration {
            chips: chips.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    pub fn chips(&self) -> &[BigInt] {
        &self.chips
    }

    pub fn into_chips(self) -> Vec<BigInt> {
        self.chips
    }

    /// Total number of chips.
    pub fn degree(&self) -> BigInt {
        self.chips.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.chips.iter().all(Zero::is_zero)
    }

    /// Vertices holding a nonzero number of chips.
    pub fn support(&self) -> Vec<usize> {
        (0..self.chips.len())
            .filter(|&v| !self.chips[v].is_zero())
            .collect()
    }

    pub fn is_supported_on(&self, vertices: &[usize]) -> bool {
        self.support().iter().all(|v| vertices.contains(v))
    }

    pub fn scaled(&self, k: &BigInt) -> Configuration {
        Configuration {
            chips: self.chips.iter().map(|x| x * k).collect(),
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.chips.len() == n {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "configuration has {} entries, graph has {n} vertices",
                self.chips.len()
            )))
        }
    }
}

/// Total number of chips on `c`.
pub fn degree(c: &Configuration) -> BigInt {
    c.degree()
}

impl Add for &Configuration {
    type Output = Configuration;

    fn add(self, rhs: &Configuration) -> Configuration {
        assert_eq!(self.len(), rhs.len(), "configuration length mismatch");
        Configuration::new(
            self.chips
                .iter()
                .zip(&rhs.chips)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &Configuration {
    type Output = Configuration;

    fn sub(self, rhs: &Configuration) -> Configuration {
        assert_eq!(self.len(), rhs.len(), "configuration length mismatch");
        Configuration::new(
            self.chips
                .iter()
                .zip(&rhs.chips)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Configuration {
    type Output = Configuration;

    fn neg(self) -> Configuration {
        Configuration::new(self.chips.iter().map(|a| -a).collect())
    }
}

/// Comma-separated chip counts in vertex order, e.g. `0,4,-1,-1`.
impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.chips.iter().map(BigInt::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Configuration::new(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad chip count `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Configuration::new)
    }
}

/// Ordered list of counted moves.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveLog {
    moves: Vec<(usize, BigInt)>,
}

impl MoveLog {
    pub fn new() -> Self {
        MoveLog::default()
    }

    /// Records `times` firings at `v`; zero counts are dropped.
    pub fn push(&mut self, v: usize, times: BigInt) {
        if !times.is_zero() {
            self.moves.push((v, times));
        }
    }

    pub fn extend(&mut self, other: MoveLog) {
        self.moves.extend(other.moves);
    }

    pub fn moves(&self) -> &[(usize, BigInt)] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Applies every move in order to `start` on `g`.
    pub fn replay(&self, g: &Multigraph, start: &Configuration) -> Result<Configuration> {
        let mut c = start.clone();
        for (v, t) in &self.moves {
            c = fire(g, &c, *v, t.clone())?;
        }
        Ok(c)
    }
}

/// Fires `v` the given number of times; a negative count borrows.
pub fn fire(
    g: &Multigraph,
    c: &Configuration,
    v: usize,
    times: impl Into<BigInt>,
) -> Result<Configuration> {
    g.check_vertex(v)?;
    c.check_len(g.vertex_count())?;
    let times = times.into();
    let mut out = c.clone();
    fire_in_place(g, &mut out, v, &times);
    Ok(out)
}

fn fire_in_place(g: &Multigraph, c: &mut Configuration, v: usize, times: &BigInt) {
    if times.is_zero() {
        return;
    }
    for ((a, b), m) in g.edges() {
        let other = if a == v {
            b
        } else if b == v {
            a
        } else {
            continue;
        };
        let moved = times * m;
        c.chips[v] -= &moved;
        c.chips[other] += moved;
    }
}

/// Walks `order = v_0, v_1, ..., v_m` and, for each `k < m`, borrows at
/// `v_{k+1}` as many times as `v_k` holds chips, zeroing `v_k`.
///
/// Each `v_{k+1}` must be joined to `v_k` by a single edge and must not be
/// adjacent to `v_0, ..., v_{k-1}`.
fn sweep(g: &Multigraph, c: &mut Configuration, log: &mut MoveLog, order: &[usize]) {
    for w in order.windows(2) {
        let times = -c.chips[w[0]].clone();
        fire_in_place(g, c, w[1], &times);
        log.push(w[1], times);
    }
}

/// Result of [`reduce_on_cycle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReduction {
    /// Equivalent configuration supported on the last two vertices.
    pub config: Configuration,
    pub log: MoveLog,
    /// `m` with `config = m * delta(n-2, n-1)`.
    pub multiple: BigInt,
}

/// Moves all chips of a degree-zero configuration on the cycle
/// `cycle_graph(n)` onto its last two vertices, sweeping from vertex 0.
pub fn reduce_on_cycle(g: &Multigraph, c: &Configuration) -> Result<CycleReduction> {
    let n = g.vertex_count();
    if n < 3 || *g != cycle_graph(n)? {
        return Err(Error::WrongShape(
            "expected the labelled cycle 0 - 1 - ... - (n-1) - 0 with n >= 3".into(),
        ));
    }
    c.check_len(n)?;
    check_degree_zero(c)?;
    let mut config = c.clone();
    let mut log = MoveLog::new();
    let order: Vec<usize> = (0..n - 1).collect();
    sweep(g, &mut config, &mut log, &order);
    let multiple = config.chips[n - 2].clone();
    Ok(CycleReduction {
        config,
        log,
        multiple,
    })
}

fn check_degree_zero(c: &Configuration) -> Result<()> {
    let d = c.degree();
    if d.is_zero() {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            expected: "0".into(),
            found: d.to_string(),
        })
    }
}

/// Result of [`reduce_to_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub config: Configuration,
    pub log: MoveLog,
    /// The two vertices the output is supported on.
    pub pair: (usize, usize),
}

/// Reduces a degree-zero configuration on a polygon stack to one supported
/// on the consecutive pair at position `pos` of the top path.
///
/// Works level by level from the innermost polygon: the lower levels are
/// first cleared onto the pair the top path hangs from, then two sweeps
/// along the top path push everything onto the requested pair.
pub fn reduce_to_pair(sg: &StackGraph, c: &Configuration, pos: usize) -> Result<Reduction> {
    c.check_len(sg.graph.vertex_count())?;
    check_degree_zero(c)?;
    let pair = sg.top_pair(pos).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "position {pos} is not a consecutive pair on the top path"
        ))
    })?;
    let prefixes = (1..=sg.spec.len())
        .map(|len| {
            polygon_stack_with(&sg.spec.prefix(len), |level, _| {
                sg.attachment_positions[level - 2]
            })
            .map(|s| s.graph)
        })
        .collect::<Result<Vec<_>>>()?;
    let log = clear_level(sg, &prefixes, sg.spec.len(), c.clone(), pos);
    let config = log.replay(&sg.graph, c)?;
    debug_assert!(config.is_supported_on(&[pair.0, pair.1]));
    Ok(Reduction { config, log, pair })
}

/// Moves on the first `level` polygons that push `c` (any degree) onto the
/// pair at `pos` of that level's path.
fn clear_level(
    sg: &StackGraph,
    prefixes: &[Multigraph],
    level: usize,
    mut c: Configuration,
    pos: usize,
) -> MoveLog {
    let g = &prefixes[level - 1];
    let mut log = MoveLog::new();
    if level == 1 {
        let k = sg.spec.ks()[0] as usize;
        let order: Vec<usize> = (pos + 2..=pos + k).map(|i| i % k).collect();
        sweep(g, &mut c, &mut log, &order);
        return log;
    }
    let below = prefixes[level - 2].vertex_count();
    let lower = Configuration::new(c.chips[..below].to_vec());
    let lower_log = clear_level(
        sg,
        prefixes,
        level - 1,
        lower,
        sg.attachment_positions[level - 2],
    );
    for (v, t) in lower_log.moves() {
        fire_in_place(g, &mut c, *v, t);
    }
    log.extend(lower_log);
    let path = &sg.paths[level - 1];
    sweep(g, &mut c, &mut log, &path[..=pos]);
    let tail: Vec<usize> = path[pos + 1..].iter().rev().copied().collect();
    sweep(g, &mut c, &mut log, &tail);
    log
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{polygon_stack, Multigraph};

    fn fig1_graph() -> Multigraph {
        Multigraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(
            Configuration::from_i64(&[0, 4, -1, -1]).degree(),
            BigInt::from(2)
        );
        assert_eq!(Configuration::zeros(5).degree(), BigInt::from(0));
        assert_eq!(
            degree(&Configuration::from_i64(&[1, 0, -1])),
            BigInt::from(0)
        );
    }

    #[test]
    fn firing_the_center() {
        let g = fig1_graph();
        let before = Configuration::from_i64(&[0, 4, -1, -1]);
        let after = fire(&g, &before, 1, 1).unwrap();
        assert_eq!(after, Configuration::from_i64(&[1, 1, 0, 0]));
        assert_eq!(fire(&g, &before, 1, 0).unwrap(), before);
        assert_eq!(fire(&g, &after, 1, -1).unwrap(), before);
        assert!(matches!(
            fire(&g, &before, 4, 1),
            Err(Error::InvalidVertex { .. })
        ));
        assert!(matches!(
            fire(&g, &Configuration::zeros(3), 0, 1),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn parallel_edges_move_multiple_chips() {
        let g = cycle_graph(2).unwrap();
        let c = fire(&g, &Configuration::zeros(2), 0, 3).unwrap();
        assert_eq!(c, Configuration::from_i64(&[-6, 6]));
    }

    #[test]
    fn text_form() {
        let c: Configuration = "0, 4,-1,-1".parse().unwrap();
        assert_eq!(c, Configuration::from_i64(&[0, 4, -1, -1]));
        assert_eq!(c.to_string(), "0,4,-1,-1");
        assert!("1,a".parse::<Configuration>().is_err());
    }

    #[test]
    fn cycle_reduction() {
        let c4 = cycle_graph(4).unwrap();
        let r = reduce_on_cycle(&c4, &Configuration::from_i64(&[1, -1, 0, 0])).unwrap();
        assert!(r.config.is_supported_on(&[2, 3]));
        assert_eq!(r.config.chips()[2], r.multiple);
        assert_eq!(
            r.log
                .replay(&c4, &Configuration::from_i64(&[1, -1, 0, 0]))
                .unwrap(),
            r.config
        );

        let c5 = cycle_graph(5).unwrap();
        let start = Configuration::from_i64(&[2, -1, -1, 0, 0]);
        let r = reduce_on_cycle(&c5, &start).unwrap();
        assert!(r.config.is_supported_on(&[3, 4]));
        assert_eq!(r.log.replay(&c5, &start).unwrap(), r.config);

        let r = reduce_on_cycle(&c5, &Configuration::zeros(5)).unwrap();
        assert!(r.log.is_empty());
        assert!(r.config.is_zero());

        assert!(matches!(
            reduce_on_cycle(&c5, &Configuration::from_i64(&[1, 0, 0, 0, 0])),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            reduce_on_cycle(&fig1_graph(), &Configuration::zeros(4)),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn house_reduction() {
        let house = polygon_stack(&"3,4".parse().unwrap()).unwrap();
        let c = Configuration::from_i64(&[1, 0, 0, -1, 0]);
        // (x_1, x_2) = (3, 4) sits at position 1 of the top path 0, 3, 4, 1
        let r = reduce_to_pair(&house, &c, 1).unwrap();
        assert_eq!(r.pair, (3, 4));
        assert!(r.config.is_supported_on(&[3, 4]));
        assert_eq!(r.log.replay(&house.graph, &c).unwrap(), r.config);

        let delta = Configuration::from_i64(&[1, 0, 0, -1, 0]);
        let r = reduce_to_pair(&house, &delta, 0).unwrap();
        assert_eq!(r.config, delta);
        assert!(r.log.is_empty());

        assert!(matches!(
            reduce_to_pair(&house, &c, 3),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            reduce_to_pair(&house, &Configuration::from_i64(&[1, 0, 0, 0, 0]), 0),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}

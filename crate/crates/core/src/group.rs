//! Critical groups from the Smith normal form of the reduced Laplacian.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chip::Configuration;
use crate::graph::Multigraph;
use crate::linalg::{smith_normal_form, IntMatrix, SnfDecomposition};
use crate::{Error, Result};

/// Laplacian with the row and column of `q` deleted. Row `i` of the result
/// is vertex `i` if `i < q` and vertex `i + 1` otherwise.
pub fn reduced_laplacian(g: &Multigraph, q: usize) -> Result<IntMatrix> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooSmall(2));
    }
    g.check_vertex(q)?;
    if !g.is_connected() {
        return Err(Error::RequiresConnected);
    }
    Ok(laplacian_minor(g, q))
}

fn laplacian_minor(g: &Multigraph, q: usize) -> IntMatrix {
    let n = g.vertex_count();
    let idx = |v: usize| if v < q { v } else { v - 1 };
    let mut m = IntMatrix::zeros(n - 1, n - 1);
    for ((u, v), mult) in g.edges() {
        let mult = BigInt::from(mult);
        for (a, b) in [(u, v), (v, u)] {
            if a != q {
                m[(idx(a), idx(a))] += &mult;
                if b != q {
                    m[(idx(a), idx(b))] -= &mult;
                }
            }
        }
    }
    m
}

/// Invariant factors and the data needed to answer order/equivalence queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalGroup {
    /// Number of vertices of the underlying graph.
    pub n: usize,
    /// Nontrivial invariant factors, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// Group order, equal to the number of spanning trees.
    pub order: BigInt,
    pub deleted_vertex: usize,
    pub snf: SnfDecomposition,
}

/// Critical group using the last vertex as the deleted vertex.
pub fn critical_group(g: &Multigraph) -> Result<CriticalGroup> {
    critical_group_at(g, g.vertex_count().saturating_sub(1))
}

/// Critical group computed from the reduced Laplacian at `q`.
pub fn critical_group_at(g: &Multigraph, q: usize) -> Result<CriticalGroup> {
    g.check_vertex(q)?;
    if !g.is_connected() {
        return Err(Error::RequiresConnected);
    }
    let n = g.vertex_count();
    let lap = if n == 1 {
        IntMatrix::zeros(0, 0)
    } else {
        laplacian_minor(g, q)
    };
    let snf = smith_normal_form(&lap);
    let diag = snf.diagonal();
    let order = diag.iter().product::<BigInt>();
    let invariant_factors = diag.into_iter().filter(|d| !d.is_one()).collect();
    Ok(CriticalGroup {
        n,
        invariant_factors,
        order,
        deleted_vertex: q,
        snf,
    })
}

/// The configuration with one chip at `x` and minus one at `y`.
pub fn delta_config(g: &Multigraph, x: usize, y: usize) -> Result<Configuration> {
    delta_on(g.vertex_count(), x, y)
}

fn delta_on(n: usize, x: usize, y: usize) -> Result<Configuration> {
    for v in [x, y] {
        if v >= n {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
    }
    if x == y {
        return Err(Error::InvalidPair(x));
    }
    let mut chips = vec![BigInt::zero(); n];
    chips[x] = BigInt::one();
    chips[y] = -BigInt::one();
    Ok(Configuration::new(chips))
}

/// Whether the group has at most one invariant factor.
pub fn is_cyclic(kg: &CriticalGroup) -> bool {
    kg.is_cyclic()
}

/// Order of `delta(x, y)` and whether it generates the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub x: usize,
    pub y: usize,
    pub element_order: BigInt,
    pub generates: bool,
}

impl CriticalGroup {
    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// `c` with the deleted vertex removed, after checking its length.
    fn restrict(&self, c: &Configuration) -> Result<Vec<BigInt>> {
        if c.len() != self.n {
            return Err(Error::Shape(format!(
                "configuration has {} entries, graph has {} vertices",
                c.len(),
                self.n
            )));
        }
        Ok(c.chips()
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != self.deleted_vertex)
            .map(|(_, x)| x.clone())
            .collect())
    }

    /// Smallest `k >= 1` with `k * c` equivalent to zero.
    ///
    /// Writing `w = U * c'` for the restriction `c'`, the order is the lcm of
    /// `d_i / gcd(d_i, w_i)` over the diagonal of the Smith form.
    pub fn configuration_order(&self, c: &Configuration) -> Result<BigInt> {
        let b = self.restrict(c)?;
        let deg = c.degree();
        if !deg.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: "0".into(),
                found: deg.to_string(),
            });
        }
        let w = self.snf.u.mul_vec(&b)?;
        Ok(self
            .snf
            .diagonal()
            .iter()
            .zip(&w)
            .fold(BigInt::one(), |acc, (d, wi)| acc.lcm(&(d / d.gcd(wi)))))
    }

    /// Whether `c1` can be turned into `c2` by fire/borrow moves.
    pub fn are_equivalent(&self, c1: &Configuration, c2: &Configuration) -> Result<bool> {
        let (b1, b2) = (self.restrict(c1)?, self.restrict(c2)?);
        if c1.degree() != c2.degree() {
            return Ok(false);
        }
        let diff: Vec<BigInt> = b1.iter().zip(&b2).map(|(a, b)| a - b).collect();
        self.snf.contains(&diff)
    }

    pub fn pair_report(&self, x: usize, y: usize) -> Result<PairReport> {
        let delta = delta_on(self.n, x, y)?;
        let element_order = self.configuration_order(&delta)?;
        let generates = element_order == self.order;
        Ok(PairReport {
            x,
            y,
            element_order,
            generates,
        })
    }

    /// Reports for every unordered pair `x < y`, in lexicographic order.
    pub fn pair_reports(&self) -> Result<Vec<PairReport>> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                out.push(self.pair_report(x, y)?);
            }
        }
        Ok(out)
    }

    /// First generating pair in lexicographic order, if any.
    pub fn first_generating_pair(&self) -> Result<Option<PairReport>> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                let r = self.pair_report(x, y)?;
                if r.generates {
                    return Ok(Some(r));
                }
            }
        }
        Ok(None)
    }
}

/// Reports for all unordered vertex pairs of `g`.
pub fn find_generating_pairs(g: &Multigraph) -> Result<Vec<PairReport>> {
    critical_group(g)?.pair_reports()
}

/// Prime-power decomposition of a positive integer by trial division.
pub fn prime_powers(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut e = 0;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of the direct sum of two groups given by their
/// invariant factors.
///
/// Both sides are split into prime powers; the largest power of each prime
/// goes into the largest factor, the next largest into the next, and so on.
pub fn direct_sum(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for f in a.iter().chain(b) {
        for (p, e) in prime_powers(f) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![BigInt::one(); len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|x, y| y.cmp(x));
        for (slot, e) in exps.into_iter().enumerate() {
            factors[len - 1 - slot] *= num_traits::pow(p.clone(), e as usize);
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{add_path, complete_graph, cycle_graph, path_graph, wedge_sum};

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn house() -> Multigraph {
        add_path(&cycle_graph(3).unwrap(), 0, 1, 3).unwrap()
    }

    #[test]
    fn reduced_laplacians() {
        let l = reduced_laplacian(&cycle_graph(3).unwrap(), 2).unwrap();
        assert_eq!(l, IntMatrix::from_rows(&[[2, -1], [-1, 2]]).unwrap());
        let l = reduced_laplacian(&cycle_graph(2).unwrap(), 1).unwrap();
        assert_eq!(l, IntMatrix::from_rows(&[[2]]).unwrap());
        let l = reduced_laplacian(&house(), 4).unwrap();
        assert_eq!(crate::linalg::determinant(&l).unwrap(), BigInt::from(11));

        assert_eq!(
            reduced_laplacian(&Multigraph::new(1), 0),
            Err(Error::TooSmall(2))
        );
        assert_eq!(
            reduced_laplacian(&Multigraph::new(2), 0),
            Err(Error::RequiresConnected)
        );
    }

    #[test]
    fn groups() {
        let tri_pent = wedge_sum(&cycle_graph(3).unwrap(), 0, &cycle_graph(5).unwrap(), 0).unwrap();
        assert_eq!(
            critical_group(&tri_pent).unwrap().invariant_factors,
            big(&[15])
        );
        let k5 = critical_group(&complete_graph(5).unwrap()).unwrap();
        assert_eq!(k5.invariant_factors, big(&[5, 5, 5]));
        assert_eq!(k5.order, BigInt::from(125));
        let tree = critical_group(&path_graph(6).unwrap()).unwrap();
        assert!(tree.invariant_factors.is_empty());
        assert!(tree.is_cyclic());
        let point = critical_group(&Multigraph::new(1)).unwrap();
        assert_eq!(point.order, BigInt::from(1));
        assert!(!is_cyclic(
            &critical_group(&complete_graph(4).unwrap()).unwrap()
        ));
    }

    #[test]
    fn deltas() {
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(
            delta_config(&c4, 0, 1).unwrap(),
            Configuration::from_i64(&[1, -1, 0, 0])
        );
        assert_eq!(
            delta_config(&c4, 2, 1).unwrap(),
            -&delta_config(&c4, 1, 2).unwrap()
        );
        assert!(delta_config(&c4, 3, 0).unwrap().degree().is_zero());
        assert_eq!(delta_config(&c4, 2, 2), Err(Error::InvalidPair(2)));
    }

    #[test]
    fn orders_in_the_triangle_pentagon_wedge() {
        // triangle on {0, 1, 2}, pentagon 0 - 3 - 4 - 5 - 6 - 0
        let g = wedge_sum(&cycle_graph(3).unwrap(), 0, &cycle_graph(5).unwrap(), 0).unwrap();
        let kg = critical_group(&g).unwrap();
        assert_eq!(kg.pair_report(0, 1).unwrap().element_order, BigInt::from(3));
        assert_eq!(kg.pair_report(3, 4).unwrap().element_order, BigInt::from(5));
        for ((u, v), _) in g.edges() {
            let ord = kg.pair_report(u, v).unwrap().element_order;
            assert!(ord == BigInt::from(3) || ord == BigInt::from(5));
        }
        let ab = kg.pair_report(1, 4).unwrap();
        assert_eq!(ab.element_order, BigInt::from(15));
        assert!(ab.generates);
        assert_eq!(
            kg.configuration_order(&Configuration::zeros(7)).unwrap(),
            BigInt::from(1)
        );
        assert!(matches!(
            kg.configuration_order(&Configuration::from_i64(&[1, 0, 0, 0, 0, 0, 0])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn equivalence() {
        let g = Multigraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        let kg = critical_group(&g).unwrap();
        let before = Configuration::from_i64(&[0, 4, -1, -1]);
        let after = Configuration::from_i64(&[1, 1, 0, 0]);
        assert!(kg.are_equivalent(&before, &after).unwrap());
        assert!(!kg
            .are_equivalent(&before, &Configuration::from_i64(&[1, 1, 0, 1]))
            .unwrap());
        assert!(!kg
            .are_equivalent(&before, &Configuration::from_i64(&[0, 0, 1, 0]))
            .unwrap());
        let fired = crate::chip::fire(&g, &before, 2, -3).unwrap();
        assert!(kg.are_equivalent(&before, &fired).unwrap());
        assert!(kg
            .are_equivalent(&before, &Configuration::zeros(3))
            .is_err());
    }

    #[test]
    fn house_pairs() {
        let kg = critical_group(&house()).unwrap();
        assert!(kg.pair_report(3, 4).unwrap().generates);
        assert!(kg.pair_report(0, 3).unwrap().generates);
        assert!(kg.pair_report(4, 1).unwrap().generates);
    }

    #[test]
    fn direct_sums() {
        assert_eq!(direct_sum(&big(&[3]), &big(&[5])), big(&[15]));
        assert_eq!(direct_sum(&big(&[2, 4]), &big(&[6])), big(&[2, 2, 12]));
        assert_eq!(direct_sum(&big(&[]), &big(&[])), big(&[]));
        assert_eq!(direct_sum(&big(&[4]), &big(&[])), big(&[4]));
        assert_eq!(direct_sum(&big(&[3, 3]), &big(&[9])), big(&[3, 3, 9]));
        assert_eq!(
            prime_powers(&BigInt::from(360)),
            vec![
                (BigInt::from(2), 3),
                (BigInt::from(3), 2),
                (BigInt::from(5), 1)
            ]
        );
    }
}

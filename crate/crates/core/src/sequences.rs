//! Spanning tree counts of polygon stacks.
//!
//! For a stack `(k_1, ..., k_n)` the tree count satisfies
//! `T(k_1..k_n) = k_n T(k_1..k_{n-1}) - T(k_1..k_{n-2})` with `T() = 1` and
//! `T(k_1) = k_1`. Rooted two-forest counts follow as differences of
//! consecutive tree counts. Closed forms are evaluated in exact quadratic
//! arithmetic so that the irrational parts cancel exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graph::StackSpec;
use crate::{Error, Result};

/// An element `a + b * sqrt(d)` of a quadratic field, with `a`, `b` rational.
///
/// When `d` is a perfect square the value is folded into `a`, so equality is
/// structural. Binary operations require both operands to share `d` and
/// panic otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "negative discriminant {d}");
        let root = d.sqrt();
        if &root * &root == d {
            let a = a + b * BigRational::from_integer(root);
            return QuadraticNumber {
                a,
                b: BigRational::zero(),
                d,
            };
        }
        QuadraticNumber { a, b, d }
    }

    pub fn from_integer(x: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        QuadraticNumber::new(
            BigRational::from_integer(x.into()),
            BigRational::zero(),
            d.into(),
        )
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: impl Into<BigInt>) -> Self {
        QuadraticNumber::new(BigRational::zero(), BigRational::one(), d.into())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// `a^2 - d b^2`, the product with the conjugate.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The exact integer value, if there is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadraticNumber::from_integer(1, self.d.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.d, other.d,
            "quadratic numbers over different discriminants"
        );
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self.same_field(rhs);
        QuadraticNumber::new(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone())
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self.same_field(rhs);
        QuadraticNumber::new(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone())
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self.same_field(rhs);
        let d = BigRational::from_integer(self.d.clone());
        QuadraticNumber::new(
            &self.a * &rhs.a + d * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
            self.d.clone(),
        )
    }
}

impl Div for &QuadraticNumber {
    type Output = QuadraticNumber;

    /// Panics on division by zero.
    fn div(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self.same_field(rhs);
        let norm = rhs.norm();
        assert!(!norm.is_zero(), "division by zero");
        let num = self * &rhs.conjugate();
        QuadraticNumber::new(num.a / &norm, num.b / &norm, self.d.clone())
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }
}

/// A sequence of exact integers indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: String,
    pub values: Vec<BigInt>,
}

impl SequenceTable {
    /// `(index, value)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate()
    }
}

/// Tree counts of every prefix of `spec`, from the empty stack up to `spec` itself.
pub fn prefix_tree_counts(spec: &StackSpec) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(spec.len() + 1);
    out.push(BigInt::one());
    for (i, &k) in spec.ks().iter().enumerate() {
        let next = if i == 0 {
            BigInt::from(k)
        } else {
            BigInt::from(k) * &out[i] - &out[i - 1]
        };
        out.push(next);
    }
    out
}

/// Number of spanning trees of the polygon stack `spec`.
pub fn tree_count(spec: &StackSpec) -> BigInt {
    prefix_tree_counts(spec).pop().expect("never empty")
}

/// Number of spanning forests of the stack rooted at a consecutive pair of
/// the last polygon other than its attachment edge.
pub fn forest_count(spec: &StackSpec) -> Result<BigInt> {
    if spec.is_empty() {
        return Err(Error::InvalidParameter(
            "forest count needs at least one polygon".into(),
        ));
    }
    let t = prefix_tree_counts(spec);
    Ok(&t[t.len() - 1] - &t[t.len() - 2])
}

/// Tree counts `T_0..=T_{n_max}` for stacks of `n` equal `k`-gons.
pub fn constant_k_table(k: u64, n_max: usize) -> Result<SequenceTable> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "polygon size must be at least 2, got {k}"
        )));
    }
    let spec = StackSpec::new(vec![k; n_max])?;
    Ok(SequenceTable {
        name: format!("T(k={k})"),
        values: prefix_tree_counts(&spec),
    })
}

/// Tree counts of the `n`-story house `(3, 4, ..., 4)` for `n = 0..=n_max`.
pub fn house_table(n_max: usize) -> SequenceTable {
    let mut ks = vec![3];
    ks.extend(std::iter::repeat_n(4, n_max));
    let spec = StackSpec::new(ks).expect("valid sizes");
    SequenceTable {
        name: "house".into(),
        values: prefix_tree_counts(&spec)[1..].to_vec(),
    }
}

/// `T_n` for a stack of `k`-gons from the closed form in `Q(sqrt(k^2 - 4))`.
pub fn constant_k_closed_form(k: u64, n: u32) -> Result<BigInt> {
    if k < 3 {
        return Err(Error::DiscriminantDegenerate(k));
    }
    let d = BigInt::from(k * k - 4);
    let q = |x: i64| QuadraticNumber::from_integer(x, d.clone());
    let kq = q(k as i64);
    let root = QuadraticNumber::sqrt(d.clone());
    let two = q(2);
    let alpha = &(&kq + &root) / &two;
    let beta = &(&kq - &root) / &two;
    let ratio = &kq / &root;
    let lead = &(&q(1) + &ratio) * &alpha.pow(n);
    let tail = &(&q(1) - &ratio) * &beta.pow(n);
    let value = &(&lead + &tail) / &two;
    Ok(value
        .to_integer()
        .expect("irrational parts cancel in the closed form"))
}

/// Tree count of the `n`-story house from its closed form in `Q(sqrt(3))`.
pub fn house_closed_form(n: u32) -> BigInt {
    let q = |x: i64| QuadraticNumber::from_integer(x, 3);
    let root = QuadraticNumber::sqrt(3);
    let three_root = &q(3) * &root;
    let lead = &(&three_root + &q(5)) * &(&q(2) + &root).pow(n);
    let tail = &(&three_root - &q(5)) * &(&q(2) - &root).pow(n);
    let value = &(&lead + &tail) / &(&q(2) * &root);
    value
        .to_integer()
        .expect("irrational parts cancel in the closed form")
}

/// The alternating stack `k1, k2, k1, k2, ...` of the given length.
pub fn alternating_spec(k1: u64, k2: u64, len: usize) -> Result<StackSpec> {
    StackSpec::new((0..len).map(|i| if i % 2 == 0 { k1 } else { k2 }).collect())
}

/// `A_n` (length `2n` alternating stacks) and `B_n` (length `2n - 1`,
/// starting and ending with `k1`) for `n = 0..=n_max`.
///
/// Built from the coupled recurrences `A_n = k2 B_n - A_{n-1}` and
/// `B_n = k1 A_{n-1} - B_{n-1}`, then checked against the decoupled
/// recurrences with multiplier `k1 k2 - 2`.
pub fn alternating_tables(
    k1: u64,
    k2: u64,
    n_max: usize,
) -> Result<(SequenceTable, SequenceTable)> {
    if k1 < 2 || k2 < 2 {
        return Err(Error::InvalidParameter(format!(
            "polygon sizes must be at least 2, got ({k1}, {k2})"
        )));
    }
    let (k1b, k2b) = (BigInt::from(k1), BigInt::from(k2));
    let mut a = vec![BigInt::one()];
    let mut b = vec![BigInt::zero()];
    for n in 1..=n_max {
        let bn = &k1b * &a[n - 1] - &b[n - 1];
        let an = &k2b * &bn - &a[n - 1];
        a.push(an);
        b.push(bn);
    }
    let mult = BigInt::from(k1 * k2 - 2);
    for seq in [&a, &b] {
        for n in 2..seq.len() {
            assert_eq!(
                seq[n],
                &mult * &seq[n - 1] - &seq[n - 2],
                "decoupled recurrence failed at n = {n}"
            );
        }
    }
    Ok((
        SequenceTable {
            name: format!("A(k1={k1},k2={k2})"),
            values: a,
        },
        SequenceTable {
            name: format!("B(k1={k1},k2={k2})"),
            values: b,
        },
    ))
}

//! Exact upper-triangular matrices and the Jordan product `a o b = ab + ba`.
//!
//! Entries are stored packed, row-major over the slots `(i, j)` with
//! `1 <= i <= j <= n`: `e_11, e_12, ..., e_1n, e_22, ..., e_nn`. This ordering
//! is also the coordinate ordering used by [`crate::subspace::Subspace`].

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Dimension of `UJ_n`.
pub const fn ambient_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Packed position of the slot `(i, j)`, 1-based, `i <= j`.
pub fn slot_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= n);
    (i - 1) * (2 * n + 2 - i) / 2 + (j - i)
}

/// The slots of `UJ_n` in coordinate order.
pub fn slots(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(ambient_dim(n));
    for i in 1..=n {
        for j in i..=n {
            out.push((i, j));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UTMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl UTMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![Scalar::zero(); ambient_dim(n)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Matrix unit `e_ij`, 1-based.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!(1 <= i && i <= j && j <= n, "no slot ({i},{j}) in UJ_{n}");
        let mut m = Self::zero(n);
        m.entries[slot_index(n, i, j)] = Scalar::one();
        m
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let n = values.len();
        let mut m = Self::zero(n);
        for (k, v) in values.iter().enumerate() {
            m.set(k + 1, k + 1, v.clone());
        }
        m
    }

    /// Builds a matrix from packed coordinates.
    pub fn from_coords(n: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), ambient_dim(n));
        Self { n, entries }
    }

    /// Builds a matrix from 1-based `(i, j, value)` triples; repeated slots add up.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Self::zero(n);
        for (i, j, v) in entries {
            if !(1 <= i && i <= j && j <= n) {
                return Err(Error::IndexOutOfRange(format!("slot ({i},{j}) in UJ_{n}")));
            }
            m.entries[slot_index(n, i, j)] += v;
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[slot_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let k = slot_index(self.n, i, j);
        self.entries[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_strictly_upper(&self) -> bool {
        (1..=self.n).all(|i| self.get(i, i).is_zero())
    }

    /// Nonzero entries as 1-based `(i, j, value)`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Scalar)> {
        slots(self.n)
            .into_iter()
            .zip(&self.entries)
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| (i, j, v.clone()))
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    fn assert_same_size(&self, other: &Self) {
        assert_eq!(self.n, other.n, "UJ_{} vs UJ_{}", self.n, other.n);
    }

    /// Associative matrix product.
    pub fn matmul(&self, other: &Self) -> Self {
        self.assert_same_size(other);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 1..=n {
            for k in i..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in k..=n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[slot_index(n, i, j)] += a * b;
                }
            }
        }
        out
    }

    /// Jordan product `ab + ba`.
    pub fn circ(&self, other: &Self) -> Self {
        let mut out = self.matmul(other);
        out += &other.matmul(self);
        out
    }

    /// Associative power `a^k`, `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Inverse of an upper-triangular matrix with nonzero diagonal.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        if (1..=n).any(|i| self.get(i, i).is_zero()) {
            return Err(Error::Singular);
        }
        let mut inv = Self::zero(n);
        for j in 1..=n {
            inv.set(j, j, self.get(j, j).recip());
            for i in (1..j).rev() {
                let mut acc = Scalar::zero();
                for k in i + 1..=j {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * inv.get(k, j);
                    }
                }
                let v = -acc / self.get(i, i);
                inv.set(i, j, v);
            }
        }
        Ok(inv)
    }

    /// Anti-transpose `e_ij -> e_{n-j+1, n-i+1}`.
    pub fn mirror(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for (i, j) in slots(n) {
            out.set(n - j + 1, n - i + 1, self.get(i, j).clone());
        }
        out
    }
}

impl fmt::Debug for UTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UJ{}[", self.n)?;
        for (k, (i, j, v)) in self.nonzero_entries().into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j}):{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for UTMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl AddAssign<&UTMatrix> for UTMatrix {
    fn add_assign(&mut self, rhs: &UTMatrix) {
        self.assert_same_size(rhs);
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&UTMatrix> for UTMatrix {
    fn sub_assign(&mut self, rhs: &UTMatrix) {
        self.assert_same_size(rhs);
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Add<&UTMatrix> for &UTMatrix {
    type Output = UTMatrix;
    fn add(self, rhs: &UTMatrix) -> UTMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&UTMatrix> for &UTMatrix {
    type Output = UTMatrix;
    fn sub(self, rhs: &UTMatrix) -> UTMatrix {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &UTMatrix {
    type Output = UTMatrix;
    fn neg(self) -> UTMatrix {
        UTMatrix {
            n: self.n,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }
}

fn check_sizes(a: &UTMatrix, b: &UTMatrix) -> Result<()> {
    if a.n != b.n {
        return Err(Error::SizeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

pub fn jordan_product(a: &UTMatrix, b: &UTMatrix) -> Result<UTMatrix> {
    check_sizes(a, b)?;
    Ok(a.circ(b))
}

/// `(a, b, c) = (a o b) o c - a o (b o c)`.
pub fn associator(a: &UTMatrix, b: &UTMatrix, c: &UTMatrix) -> Result<UTMatrix> {
    check_sizes(a, b)?;
    check_sizes(b, c)?;
    Ok(assoc(a, b, c))
}

pub(crate) fn assoc(a: &UTMatrix, b: &UTMatrix, c: &UTMatrix) -> UTMatrix {
    &a.circ(b).circ(c) - &a.circ(&b.circ(c))
}

/// Left-normed Jordan power `a o a o ... o a` (`k` factors).
pub fn circle_power(a: &UTMatrix, k: u32) -> UTMatrix {
    assert!(k >= 1, "circle power needs k >= 1");
    let mut out = a.clone();
    for _ in 1..k {
        out = out.circ(a);
    }
    let two_pow = Scalar::from_integer(BigInt::from(2).pow(k - 1));
    assert_eq!(out, a.pow(k).scale(&two_pow), "power associativity");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// Mirror unit `Y_{i:m}^{+/-} = e_{i,i+m} +/- e_{n-i-m+1, n-i+1}`.
pub fn mirror_unit(n: usize, i: usize, m: usize, sign: Sign) -> Result<UTMatrix> {
    if i < 1 || i + m > n {
        return Err(Error::IndexOutOfRange(format!(
            "mirror unit ({i}:{m}) in UJ_{n}"
        )));
    }
    let mut y = UTMatrix::unit(n, i, i + m);
    let partner = UTMatrix::unit(n, n - i - m + 1, n - i + 1);
    match sign {
        Sign::Plus => y += &partner,
        Sign::Minus => y -= &partner,
    }
    Ok(y)
}

/// The involution `e_{i:m} -> e_{-i:m}`, a Jordan automorphism of `UJ_n`.
pub fn mirror_map(x: &UTMatrix) -> UTMatrix {
    x.mirror()
}

/// `P x P^{-1}` for an invertible upper-triangular `P`.
pub fn conjugate(x: &UTMatrix, p: &UTMatrix) -> Result<UTMatrix> {
    check_sizes(x, p)?;
    let inv = p.inverse()?;
    Ok(p.matmul(x).matmul(&inv))
}

#[cfg(test)]
pub(crate) fn is_nonzero_power_of_two(c: &Scalar) -> bool {
    if *c <= Scalar::zero() {
        return false;
    }
    let is_pow2 = |v: &BigInt| *v > BigInt::zero() && (v & (v - BigInt::one())).is_zero();
    is_pow2(c.numer()) && is_pow2(c.denom())
}

//! Linear subspaces of `UJ_n` in reduced row-echelon form.
//!
//! Two equal subspaces always have identical stored bases, so equality of
//! [`Subspace`] values is equality of subspaces.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ambient_dim, slots, Scalar, UTMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: Vec<UTMatrix>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.basis).finish()
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of `UJ_n`.
    pub fn full(n: usize) -> Self {
        Self::span(n, slots(n).into_iter().map(|(i, j)| UTMatrix::unit(n, i, j)))
    }

    /// Span of the given matrix units `(i, j)`.
    pub fn of_units<I: IntoIterator<Item = (usize, usize)>>(n: usize, units: I) -> Self {
        Self::span(n, units.into_iter().map(|(i, j)| UTMatrix::unit(n, i, j)))
    }

    pub fn span<I: IntoIterator<Item = UTMatrix>>(n: usize, vectors: I) -> Self {
        let mut s = Self::zero(n);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == ambient_dim(self.n)
    }

    pub fn basis(&self) -> &[UTMatrix] {
        &self.basis
    }

    /// Leading coordinates of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot coordinates; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &UTMatrix) -> UTMatrix {
        assert_eq!(v.size(), self.n);
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r.coords()[p].clone();
            if !c.is_zero() {
                r -= &b.scale(&c);
            }
        }
        r
    }

    pub fn contains(&self, v: &UTMatrix) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: UTMatrix) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.coords().iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let lead = r.coords()[p].clone();
        if !lead.is_one() {
            r = r.scale(&lead.recip());
        }
        for b in self.basis.iter_mut() {
            let c = b.coords()[p].clone();
            if !c.is_zero() {
                *b -= &r.scale(&c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let columns: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|u| other.reduce(u).coords().to_vec())
            .collect();
        let kernel = kernel(&columns, ambient_dim(self.n));
        Subspace::span(self.n, kernel.iter().map(|c| combine(&self.basis, c, self.n)))
    }

    /// Echelonized span of `u o v` over the two bases.
    pub fn product_span(&self, other: &Subspace) -> Result<Subspace> {
        check(self, other)?;
        let mut s = Subspace::zero(self.n);
        for u in &self.basis {
            for v in &other.basis {
                s.insert(u.circ(v));
                if s.is_full() {
                    return Ok(s);
                }
            }
        }
        Ok(s)
    }

    /// Left-normed power `S o S o ... o S` with `k` factors.
    pub fn circle_power(&self, k: usize) -> Subspace {
        assert!(k >= 1);
        let mut out = self.clone();
        for _ in 1..k {
            out = out.product_span(self).expect("same ambient");
        }
        out
    }

    /// `{x in S : x o t in W for all t in target}`.
    pub fn annihilator_mod(&self, target: &Subspace, modulo: &Subspace) -> Result<Subspace> {
        check(self, target)?;
        check(self, modulo)?;
        if target.is_zero() {
            return Ok(self.clone());
        }
        let columns: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|s| {
                target
                    .basis
                    .iter()
                    .flat_map(|t| modulo.reduce(&s.circ(t)).coords().to_vec())
                    .collect()
            })
            .collect();
        let len = target.dim() * ambient_dim(self.n);
        let kernel = kernel(&columns, len);
        Ok(Subspace::span(
            self.n,
            kernel.iter().map(|c| combine(&self.basis, c, self.n)),
        ))
    }

    /// Whether the span of `self` is a sum of its intersections with `parts`.
    pub fn is_graded_by<'a, I>(&self, parts: I) -> bool
    where
        I: IntoIterator<Item = &'a Subspace>,
    {
        let total: usize = parts.into_iter().map(|p| self.intersection(p).dim()).sum();
        total == self.dim()
    }
}

pub fn annihilator_mod(s: &Subspace, target: &Subspace, modulo: &Subspace) -> Result<Subspace> {
    s.annihilator_mod(target, modulo)
}

pub fn product_span(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.product_span(v)
}

fn check(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.n != b.n {
        return Err(Error::SizeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

fn combine(basis: &[UTMatrix], coeffs: &[Scalar], n: usize) -> UTMatrix {
    let mut out = UTMatrix::zero(n);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out += &b.scale(c);
        }
    }
    out
}

/// Kernel of the linear map `c -> sum_i c_i columns[i]`, each column of length `len`.
pub(crate) fn kernel(columns: &[Vec<Scalar>], len: usize) -> Vec<Vec<Scalar>> {
    let m = columns.len();
    // rows of the system, one per coordinate; drop all-zero rows up front
    let mut rows: Vec<Vec<Scalar>> = (0..len)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect::<Vec<_>>())
        .filter(|row: &Vec<Scalar>| row.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..m {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let lead = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= &lead;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m];
            v[f] = Scalar::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn e(n: usize, i: usize, j: usize) -> UTMatrix {
        UTMatrix::unit(n, i, j)
    }

    fn strict(n: usize) -> Subspace {
        Subspace::of_units(n, slots(n).into_iter().filter(|(i, j)| i < j))
    }

    #[test]
    fn canonical_basis_is_representation_independent() {
        let a = &e(3, 1, 2) + &e(3, 2, 2);
        let b = &e(3, 2, 2) - &e(3, 1, 3);
        let s1 = Subspace::span(3, [a.clone(), b.clone()]);
        let s2 = Subspace::span(3, [b.scale(&int(-3)), &a + &b, a.scale(&int(7))]);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
    }

    #[test]
    fn annihilator_of_corner_unit() {
        for n in 2..=6 {
            let full = Subspace::full(n);
            let corner = Subspace::of_units(n, [(1, n)]);
            let b = full.annihilator_mod(&corner, &Subspace::zero(n)).unwrap();
            assert_eq!(b.dim(), ambient_dim(n) - 1);
            let mut x = e(n, 1, 1);
            x -= &e(n, n, n);
            assert!(b.contains(&x));
            assert!(!b.contains(&e(n, 1, 1)));
            if n > 2 {
                assert!(b.contains(&e(n, 2, n)));
            }
            assert_eq!(full.annihilator_mod(&Subspace::zero(n), &Subspace::zero(n)).unwrap(), full);
        }
    }

    #[test]
    fn product_of_annihilator_with_itself() {
        for n in 3..=6 {
            let full = Subspace::full(n);
            let corner = Subspace::of_units(n, [(1, n)]);
            let b = full.annihilator_mod(&corner, &Subspace::zero(n)).unwrap();
            let b2 = b.product_span(&b).unwrap();
            // {x : x_11 = x_nn}
            let expected = Subspace::span(
                n,
                slots(n)
                    .into_iter()
                    .filter(|&(i, j)| !(i == j && (i == 1 || i == n)))
                    .map(|(i, j)| e(n, i, j))
                    .chain([&e(n, 1, 1) + &e(n, n, n)]),
            );
            assert_eq!(b2, expected);
        }
    }

    #[test]
    fn zero_products() {
        let j = strict(4);
        assert!(Subspace::zero(4).product_span(&j).unwrap().is_zero());
        assert!(matches!(
            Subspace::zero(3).product_span(&j),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn iterated_strict_powers_reach_the_corner() {
        for n in 2..=7 {
            let j = strict(n);
            if n > 2 {
                let j2 = j.product_span(&j).unwrap();
                assert!(j2.is_subspace_of(&j) && j2.dim() < j.dim());
            }
            assert_eq!(j.circle_power(n - 1), Subspace::of_units(n, [(1, n)]));
            assert!(j.circle_power(n).is_zero());
        }
    }

    #[test]
    fn intersection_and_sum_dimensions() {
        let n = 4;
        let a = Subspace::of_units(n, [(1, 1), (1, 2), (2, 3)]);
        let b = Subspace::span(n, [e(n, 1, 2), &e(n, 2, 3) + &e(n, 3, 4), e(n, 4, 4)]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::of_units(n, [(1, 2)]));
        assert_eq!(a.sum(&b).dim(), a.dim() + b.dim() - i.dim());
    }

    #[test]
    fn annihilator_modulo_strict_uppers() {
        // C = {x : x_11 = x_nn = 0}; Ann(C / J) kills exactly the inner diagonal
        for n in 3..=6 {
            let full = Subspace::full(n);
            let c = Subspace::of_units(
                n,
                slots(n).into_iter().filter(|&(i, j)| !(i == j && (i == 1 || i == n))),
            );
            let u1 = full.annihilator_mod(&c, &strict(n)).unwrap();
            // oracle: x o c has diagonal 2 x_ii c_ii, so x_ii = 0 for 1 < i < n
            let oracle = Subspace::of_units(
                n,
                slots(n).into_iter().filter(|&(i, j)| i < j || i == 1 || i == n),
            );
            assert_eq!(u1, oracle);
        }
    }
}

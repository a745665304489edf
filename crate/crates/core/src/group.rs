//! Finite abelian groups in explicit direct-product-of-cyclic form.
//!
//! A group is `Z_{d_1} x ... x Z_{d_k}` and its elements are residue vectors.
//! The group law is written additively; the identity is the zero vector.
//! Elements compare lexicographically, which is the canonical total order used
//! to pick representatives of reversal classes and cosets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
}

/// An element of a [`FiniteAbelianGroup`]; coordinate `j` lies in `[0, d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", self.coords[0]),
            _ => {
                write!(f, "[")?;
                for (k, c) in self.coords.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// `Z2xZ4`; the trivial group prints as `1`.
impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.moduli.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.iter().any(|&d| d == 0) {
            return Err(Error::InvalidGroup(format!(
                "every modulus must be at least 1, got {moduli:?}"
            )));
        }
        Ok(Self { moduli })
    }

    pub fn trivial() -> Self {
        Self { moduli: Vec::new() }
    }

    pub fn cyclic(d: u64) -> Self {
        Self::new(vec![d]).expect("cyclic group of order 0")
    }

    /// `G x Z_d`, with the new factor appended as the last coordinate.
    pub fn with_factor(&self, d: u64) -> Self {
        let mut moduli = self.moduli.clone();
        moduli.push(d);
        Self::new(moduli).expect("modulus 0")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.moduli.len()],
        }
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.moduli.len() {
            return Err(Error::ElementShape {
                expected: self.moduli.len(),
                found: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.moduli.len()
            && g.coords.iter().zip(&self.moduli).all(|(c, d)| c < d)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.coords.len() != self.moduli.len() {
            return Err(Error::ElementShape {
                expected: self.moduli.len(),
                found: g.coords.len(),
            });
        }
        if !self.contains(g) {
            return Err(Error::InvalidGroup(format!(
                "element {g} has unreduced coordinates for moduli {:?}",
                self.moduli
            )));
        }
        Ok(())
    }

    /// The group law (coordinatewise sum).
    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add(g, h))
    }

    /// Unchecked group law for elements already known to belong to `self`.
    pub(crate) fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(g) && self.contains(h));
        let coords = g
            .coords
            .iter()
            .zip(&h.coords)
            .zip(&self.moduli)
            .map(|((a, b), d)| (a + b) % d)
            .collect();
        GroupElement { coords }
    }

    pub fn sum<'a, I>(&self, elements: I) -> GroupElement
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        elements
            .into_iter()
            .fold(self.identity(), |acc, g| self.add(&acc, g))
    }

    pub fn negate(&self, g: &GroupElement) -> GroupElement {
        let coords = g
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(a, d)| (d - a) % d)
            .collect();
        GroupElement { coords }
    }

    pub fn multiple(&self, k: u64, g: &GroupElement) -> GroupElement {
        let coords = g
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(a, d)| ((*a as u128 * k as u128) % *d as u128) as u64)
            .collect();
        GroupElement { coords }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.coords.iter().all(|&c| c == 0)
    }

    /// Smallest `m >= 1` with `m g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &d)| d / c.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All elements in canonical (lexicographic) order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (j, &d) in self.moduli.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for g in &out {
                for c in 0..d {
                    let mut coords = g.coords.clone();
                    coords[j] = c;
                    next.push(GroupElement { coords });
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Elements of order exactly 2, in canonical order.
    pub fn involutions(&self) -> Vec<GroupElement> {
        self.elements()
            .into_iter()
            .filter(|g| self.element_order(g) == 2)
            .collect()
    }

    pub fn canonical_compare(&self, g: &GroupElement, h: &GroupElement) -> Ordering {
        g.coords.cmp(&h.coords)
    }

    /// The quotient `G / <t>` for an element `t` of order 2.
    pub fn quotient_mod_involution(&self, t: &GroupElement) -> Result<Quotient> {
        self.check(t)?;
        if self.element_order(t) != 2 {
            return Err(Error::NotAnInvolution(t.to_string()));
        }
        let k = self.rank();
        // Relation lattice: rows d_j e_j and t. Diagonalize by unimodular
        // row and column operations, tracking the column transform.
        let mut rel: Vec<Vec<i64>> = (0..k)
            .map(|j| {
                let mut row = vec![0i64; k];
                row[j] = self.moduli[j] as i64;
                row
            })
            .collect();
        rel.push(t.coords.iter().map(|&c| c as i64).collect());
        let (diag, cols) = diagonalize(rel, k);

        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        for (i, &d) in diag.iter().enumerate() {
            let d = d.unsigned_abs();
            assert!(d != 0, "finite group relation lattice has full rank");
            if d > 1 {
                kept.push(i);
                moduli.push(d);
            }
        }
        let target = FiniteAbelianGroup::new(moduli)?;
        let images = (0..k)
            .map(|j| {
                let coords: Vec<i64> = kept.iter().map(|&i| cols[j][i]).collect();
                target.element(&coords)
            })
            .collect::<Result<Vec<_>>>()?;
        let projection = GroupHom::new(self.clone(), target, images)?;

        let mut section = BTreeMap::new();
        for g in self.elements() {
            section.entry(projection.apply(&g)).or_insert(g);
        }
        Ok(Quotient {
            involution: t.clone(),
            projection,
            section,
        })
    }
}

/// Diagonalizes an integer matrix with `cols` columns by unimodular row and
/// column operations. Returns the diagonal (length `cols`) and the column
/// transform `V` such that `rows * V` is diagonal up to row operations.
fn diagonalize(mut a: Vec<Vec<i64>>, cols: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = a.len();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    for p in 0..cols.min(rows) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in p..rows {
                for j in p..cols {
                    if a[i][j] != 0
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(p, bi);
            for row in a.iter_mut() {
                row.swap(p, bj);
            }
            for row in v.iter_mut() {
                row.swap(p, bj);
            }
            let pivot = a[p][p];
            let mut clean = true;
            for i in p + 1..rows {
                let q = a[i][p].div_euclid(pivot);
                if q != 0 {
                    for j in p..cols {
                        a[i][j] -= q * a[p][j];
                    }
                }
                clean &= a[i][p] == 0;
            }
            for j in p + 1..cols {
                let q = a[p][j].div_euclid(pivot);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[p];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[p];
                    }
                }
                clean &= a[p][j] == 0;
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..cols).map(|i| if i < rows { a[i][i] } else { 0 }).collect();
    (diag, v)
}

/// A homomorphism between finite abelian groups, given on the canonical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidHom(format!(
                "{} generator images for a group of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for (img, &d) in images.iter().zip(source.moduli()) {
            target.check(img)?;
            if !target.is_identity(&target.multiple(d, img)) {
                return Err(Error::InvalidHom(format!(
                    "image {img} of a generator of order {d} does not have order dividing {d}"
                )));
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        let images = (0..group.rank())
            .map(|j| {
                let mut coords = vec![0i64; group.rank()];
                coords[j] = 1;
                group.element(&coords).expect("rank matches")
            })
            .collect();
        Self::new(group.clone(), group.clone(), images).expect("identity hom")
    }

    pub fn trivial(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Self {
        let images = vec![target.identity(); source.rank()];
        Self::new(source.clone(), target.clone(), images).expect("trivial hom")
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        debug_assert!(self.source.contains(g));
        let mut acc = self.target.identity();
        for (&c, img) in g.coords.iter().zip(&self.images) {
            acc = self.target.add(&acc, &self.target.multiple(c, img));
        }
        acc
    }
}

/// `G / <t>` together with the projection and the canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    involution: GroupElement,
    projection: GroupHom,
    section: BTreeMap<GroupElement, GroupElement>,
}

impl Quotient {
    pub fn group(&self) -> &FiniteAbelianGroup {
        self.projection.target()
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    pub fn involution(&self) -> &GroupElement {
        &self.involution
    }

    /// Canonical minimum of the coset mapping to `q`.
    pub fn section(&self, q: &GroupElement) -> &GroupElement {
        &self.section[q]
    }

    /// Canonical representative of the coset `g + <t>`.
    pub fn representative(&self, g: &GroupElement) -> &GroupElement {
        self.section(&self.projection.apply(g))
    }

    /// Coset representatives, in canonical order.
    pub fn representatives(&self) -> Vec<GroupElement> {
        let mut reps: Vec<_> = self.section.values().cloned().collect();
        reps.sort();
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(d: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(d)
    }

    fn el(g: &FiniteAbelianGroup, c: &[i64]) -> GroupElement {
        g.element(c).unwrap()
    }

    fn small_groups() -> Vec<FiniteAbelianGroup> {
        let mut out = vec![FiniteAbelianGroup::trivial()];
        for d in 1..=16 {
            out.push(z(d));
        }
        for m in [vec![2, 2], vec![2, 4], vec![2, 2, 2], vec![3, 3], vec![2, 6], vec![4, 4], vec![2, 2, 2, 2]] {
            out.push(FiniteAbelianGroup::new(m).unwrap());
        }
        out
    }

    #[test]
    fn compose_examples() {
        let z4 = z(4);
        assert_eq!(z4.compose(&el(&z4, &[1]), &el(&z4, &[3])).unwrap(), z4.identity());
        let k = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(
            k.compose(&el(&k, &[1, 0]), &el(&k, &[0, 1])).unwrap(),
            el(&k, &[1, 1])
        );
        let z6 = z(6);
        assert_eq!(z6.compose(&el(&z6, &[4]), &el(&z6, &[5])).unwrap(), el(&z6, &[3]));
    }

    #[test]
    fn compose_rejects_foreign_elements() {
        let z4 = z(4);
        let k = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert!(matches!(
            z4.compose(&el(&k, &[1, 0]), &el(&z4, &[1])),
            Err(Error::ElementShape { .. })
        ));
        assert!(FiniteAbelianGroup::new(vec![3, 0]).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(z(4).element_order(&el(&z(4), &[2])), 2);
        assert_eq!(z(6).element_order(&el(&z(6), &[2])), 3);
        assert_eq!(z(5).element_order(&z(5).identity()), 1);
        let t = FiniteAbelianGroup::trivial();
        assert_eq!(t.order(), 1);
        assert_eq!(t.elements(), vec![t.identity()]);
        assert_eq!(FiniteAbelianGroup::new(vec![1, 1]).unwrap().order(), 1);
    }

    #[test]
    fn involution_lists() {
        assert!(z(3).involutions().is_empty());
        assert_eq!(z(4).involutions(), vec![el(&z(4), &[2])]);
        let k = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(
            k.involutions(),
            vec![el(&k, &[0, 1]), el(&k, &[1, 0]), el(&k, &[1, 1])]
        );
    }

    #[test]
    fn quotient_examples() {
        let z4 = z(4);
        let q = z4.quotient_mod_involution(&el(&z4, &[2])).unwrap();
        assert_eq!(q.group().order(), 2);
        let p = q.projection();
        assert_eq!(p.apply(&el(&z4, &[1])), p.apply(&el(&z4, &[3])));
        assert_ne!(p.apply(&el(&z4, &[0])), p.apply(&el(&z4, &[1])));
        assert_eq!(q.representatives(), vec![el(&z4, &[0]), el(&z4, &[1])]);

        let z2 = z(2);
        let q = z2.quotient_mod_involution(&el(&z2, &[1])).unwrap();
        assert_eq!(q.group().order(), 1);

        let k = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let q = k.quotient_mod_involution(&el(&k, &[1, 1])).unwrap();
        assert_eq!(q.group().order(), 2);
        assert_eq!(q.representative(&el(&k, &[1, 0])), &el(&k, &[0, 1]));

        assert!(matches!(
            z4.quotient_mod_involution(&el(&z4, &[1])),
            Err(Error::NotAnInvolution(_))
        ));
    }

    #[test]
    fn compose_is_abelian_and_associative() {
        for g in small_groups() {
            let els = g.elements();
            assert_eq!(els.len() as u64, g.order());
            for a in &els {
                for b in &els {
                    let ab = g.add(a, b);
                    assert_eq!(ab, g.add(b, a));
                    for c in &els {
                        assert_eq!(g.add(&ab, c), g.add(a, &g.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn orders_divide_group_order() {
        for g in small_groups() {
            for a in g.elements() {
                let o = g.element_order(&a);
                assert_eq!(g.order() % o, 0);
                assert!(g.is_identity(&g.multiple(o, &a)));
                for m in 1..o {
                    assert!(!g.is_identity(&g.multiple(m, &a)));
                }
            }
        }
    }

    #[test]
    fn quotient_sections_and_fibres() {
        for g in small_groups() {
            for t in g.involutions() {
                let q = g.quotient_mod_involution(&t).unwrap();
                assert_eq!(q.group().order() * 2, g.order());
                let p = q.projection();
                for c in q.group().elements() {
                    assert_eq!(p.apply(q.section(&c)), c);
                    let fibre = g.elements().into_iter().filter(|x| p.apply(x) == c).count();
                    assert_eq!(fibre, 2);
                }
                for x in g.elements() {
                    let rep = q.representative(&x);
                    assert!(rep == &x || rep == &g.add(&x, &t));
                    assert!(rep <= &x);
                }
            }
        }
    }

    #[test]
    fn canonical_order_is_strict_total() {
        let z4 = z(4);
        assert_eq!(z4.canonical_compare(&el(&z4, &[1]), &el(&z4, &[3])), Ordering::Less);
        let k = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(
            k.canonical_compare(&el(&k, &[0, 1]), &el(&k, &[1, 0])),
            Ordering::Less
        );
        for g in small_groups() {
            let els = g.elements();
            for a in &els {
                assert_eq!(g.canonical_compare(a, a), Ordering::Equal);
                for b in &els {
                    let ab = g.canonical_compare(a, b);
                    assert_eq!(ab, g.canonical_compare(b, a).reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                    for c in &els {
                        if ab == Ordering::Less && g.canonical_compare(b, c) == Ordering::Less {
                            assert_eq!(g.canonical_compare(a, c), Ordering::Less);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn homs_check_order_compatibility() {
        let z4 = z(4);
        let z2 = z(2);
        assert!(GroupHom::new(z4.clone(), z2.clone(), vec![el(&z2, &[1])]).is_ok());
        assert!(GroupHom::new(z2.clone(), z4.clone(), vec![el(&z4, &[1])]).is_err());
        let id = GroupHom::identity(&z4);
        assert_eq!(id.apply(&el(&z4, &[3])), el(&z4, &[3]));
        let tr = GroupHom::trivial(&z4, &z2);
        assert_eq!(tr.apply(&el(&z4, &[3])), z2.identity());
    }
}

//! Formal linear combinations of commutative product trees in graded variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::{is_homogeneous_of, Grading};
use crate::group::GroupElement;
use crate::matrix::{Scalar, UTMatrix};

/// `x_id^{(degree)}`. Variables with the same id and different degrees are distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub id: u32,
    pub degree: GroupElement,
}

impl Var {
    pub fn new(id: u32, degree: GroupElement) -> Self {
        Self { id, degree }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}:{}", self.id, self.degree)
    }
}

/// A product tree. Children of a product are stored with the subtree holding
/// the least variable on the left, so commuted trees compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(Var),
    Prod(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn prod(a: Tree, b: Tree) -> Tree {
        let ka = (a.leftmost(), &a);
        let kb = (b.leftmost(), &b);
        if ka <= kb {
            Tree::Prod(Box::new(a), Box::new(b))
        } else {
            Tree::Prod(Box::new(b), Box::new(a))
        }
    }

    fn leftmost(&self) -> &Var {
        match self {
            Tree::Leaf(v) => v,
            Tree::Prod(a, _) => a.leftmost(),
        }
    }

    /// Leaves with multiplicity, sorted.
    pub fn leaves(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Var>) {
        match self {
            Tree::Leaf(v) => out.push(v.clone()),
            Tree::Prod(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn evaluate(&self, sub: &BTreeMap<Var, UTMatrix>) -> Result<UTMatrix> {
        match self {
            Tree::Leaf(v) => sub
                .get(v)
                .cloned()
                .ok_or_else(|| Error::MissingAssignment(v.to_string())),
            Tree::Prod(a, b) => Ok(a.evaluate(sub)?.circ(&b.evaluate(sub)?)),
        }
    }

    fn substitute(&self, map: &dyn Fn(&Var) -> JordanTerm) -> JordanTerm {
        match self {
            Tree::Leaf(v) => map(v),
            Tree::Prod(a, b) => a.substitute(map).circ(&b.substitute(map)),
        }
    }

    fn rename(&self, map: &BTreeMap<Var, Var>) -> Tree {
        match self {
            Tree::Leaf(v) => Tree::Leaf(map[v].clone()),
            Tree::Prod(a, b) => Tree::prod(a.rename(map), b.rename(map)),
        }
    }
}

/// A graded Jordan polynomial: rational combination of product trees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct JordanTerm {
    monomials: BTreeMap<Tree, Scalar>,
}

impl JordanTerm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(id: u32, degree: GroupElement) -> Self {
        Self::from_tree(Tree::Leaf(Var::new(id, degree)))
    }

    pub fn from_tree(tree: Tree) -> Self {
        let mut monomials = BTreeMap::new();
        monomials.insert(tree, Scalar::one());
        Self { monomials }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&Tree, &Scalar)> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    fn add_monomial(&mut self, tree: Tree, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.monomials.entry(tree.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.monomials.remove(&tree);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (t, v) in &self.monomials {
            out.add_monomial(t.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, v) in &other.monomials {
            out.add_monomial(t.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Bilinear expansion of `self o other`.
    pub fn circ(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.monomials {
            for (b, y) in &other.monomials {
                out.add_monomial(Tree::prod(a.clone(), b.clone()), x * y);
            }
        }
        out
    }

    /// `(a o b) o c - a o (b o c)`.
    pub fn associator(a: &Self, b: &Self, c: &Self) -> Self {
        a.circ(b).circ(c).sub(&a.circ(&b.circ(c)))
    }

    /// `f_1 o f_2 o ... o f_m`, bracketed to the left.
    pub fn left_normed(factors: &[JordanTerm]) -> Self {
        let mut it = factors.iter();
        let Some(first) = it.next() else {
            return Self::zero();
        };
        it.fold(first.clone(), |acc, f| acc.circ(f))
    }

    /// Left-normed power with `k >= 1` factors.
    pub fn power(&self, k: usize) -> Self {
        assert!(k >= 1);
        Self::left_normed(&vec![self.clone(); k])
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.monomials.keys().flat_map(|t| t.leaves()).collect()
    }

    /// Every variable occurs exactly once in every monomial.
    pub fn is_multilinear(&self) -> bool {
        let vars: Vec<Var> = self.variables().into_iter().collect();
        self.monomials.keys().all(|t| t.leaves() == vars)
    }

    /// Replaces every variable by a term and expands.
    pub fn substitute(&self, map: &dyn Fn(&Var) -> JordanTerm) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.monomials {
            out = out.add(&t.substitute(map).scale(c));
        }
        out
    }

    /// Splits into the parts with a fixed multiset of variables.
    pub fn multihomogeneous_parts(&self) -> Vec<JordanTerm> {
        let mut parts: BTreeMap<Vec<Var>, JordanTerm> = BTreeMap::new();
        for (t, c) in &self.monomials {
            parts
                .entry(t.leaves())
                .or_default()
                .add_monomial(t.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    /// Renumbers the variables `0, 1, ...` in increasing order, keeping degrees.
    pub(crate) fn normalized(&self) -> Self {
        let map: BTreeMap<Var, Var> = self
            .variables()
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let renamed = Var::new(k as u32, v.degree.clone());
                (v, renamed)
            })
            .collect();
        let mut out = Self::zero();
        for (t, c) in &self.monomials {
            out.add_monomial(t.rename(&map), c.clone());
        }
        out
    }

    pub fn evaluate(&self, sub: &BTreeMap<Var, UTMatrix>) -> Result<UTMatrix> {
        let n = sub.values().next().map(UTMatrix::size).unwrap_or(1);
        let mut acc: Option<UTMatrix> = None;
        for (t, c) in &self.monomials {
            let v = t.evaluate(sub)?.scale(c);
            acc = Some(match acc {
                Some(a) => &a + &v,
                None => v,
            });
        }
        Ok(acc.unwrap_or_else(|| UTMatrix::zero(n)))
    }

    /// Evaluation with the check that each value is homogeneous of its variable's degree.
    pub fn evaluate_in(&self, grading: &Grading, sub: &BTreeMap<Var, UTMatrix>) -> Result<UTMatrix> {
        for v in self.variables() {
            let x = sub
                .get(&v)
                .ok_or_else(|| Error::MissingAssignment(v.to_string()))?;
            if x.size() != grading.size() {
                return Err(Error::SizeMismatch {
                    left: grading.size(),
                    right: x.size(),
                });
            }
            if !is_homogeneous_of(grading, x, &v.degree) {
                return Err(Error::DegreeMismatch {
                    var: v.to_string(),
                    degree: v.degree.to_string(),
                });
            }
        }
        if self.is_zero() {
            return Ok(UTMatrix::zero(grading.size()));
        }
        self.evaluate(sub)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(v) => v.fmt(f),
            Tree::Prod(..) => {
                // flatten the left spine: ((a o b) o c) prints as ( a o b o c )
                let mut spine = Vec::new();
                let mut cur = self;
                while let Tree::Prod(a, b) = cur {
                    spine.push(b.as_ref());
                    cur = a;
                }
                write!(f, "( {cur}")?;
                for t in spine.iter().rev() {
                    write!(f, " o {t}")?;
                }
                write!(f, " )")
            }
        }
    }
}

impl fmt::Display for JordanTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.monomials.iter().enumerate() {
            let negative = c < &Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

//! Exact graded-identity checking on a graded `UJ_n`.
//!
//! A term is split into multihomogeneous parts. Multilinear parts are decided
//! by the span of their values: a product whose coefficient matrix factors as
//! `(sum a_i L_i) o (sum b_j R_j)` has value span `span(L) o span(R)`; any
//! other node is enumerated over basis tuples of its variables. Powers of a
//! single variable reduce to `c 2^{k-1} x^k` and are decided on the component.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::matrix::{Scalar, UTMatrix};
use crate::subspace::Subspace;

use super::term::{JordanTerm, Tree, Var};

/// Default cap on basis-tuple substitutions at a single node.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Identity checker bound to one grading; caches value spans across calls.
pub struct IdentityChecker<'a> {
    grading: &'a Grading,
    spans: HashMap<JordanTerm, Subspace>,
    budget: u128,
}

pub fn is_graded_identity(grading: &Grading, term: &JordanTerm) -> Result<bool> {
    IdentityChecker::new(grading).check(term)
}

impl<'a> IdentityChecker<'a> {
    pub fn new(grading: &'a Grading) -> Self {
        Self {
            grading,
            spans: HashMap::new(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn grading(&self) -> &Grading {
        self.grading
    }

    pub fn check(&mut self, term: &JordanTerm) -> Result<bool> {
        for v in term.variables() {
            self.grading.group().check(&v.degree)?;
        }
        for part in term.multihomogeneous_parts() {
            let holds = if part.is_multilinear() {
                self.value_span(&part)?.is_zero()
            } else {
                self.power_holds(&part)?
            };
            if !holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn component(&self, v: &Var) -> Subspace {
        self.grading
            .component(&v.degree)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.grading.size()))
    }

    /// Span of all values of a nonzero multilinear term.
    pub fn value_span(&mut self, term: &JordanTerm) -> Result<Subspace> {
        let n = self.grading.size();
        if term.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let key = term.normalized();
        if let Some(s) = self.spans.get(&key) {
            return Ok(s.clone());
        }
        let vars: Vec<Var> = term.variables().into_iter().collect();
        let span = if vars.len() == 1 {
            self.component(&vars[0])
        } else if let Some((left, right)) = factor(term) {
            let l = self.value_span(&left)?;
            if l.is_zero() {
                l
            } else {
                let r = self.value_span(&right)?;
                l.product_span(&r)?
            }
        } else {
            self.enumerate(term, &vars)?
        };
        self.spans.insert(key, span.clone());
        Ok(span)
    }

    fn enumerate(&self, term: &JordanTerm, vars: &[Var]) -> Result<Subspace> {
        let n = self.grading.size();
        let bases: Vec<Subspace> = vars.iter().map(|v| self.component(v)).collect();
        if bases.iter().any(Subspace::is_zero) {
            return Ok(Subspace::zero(n));
        }
        let total: u128 = bases.iter().map(|b| b.dim() as u128).product();
        if total > self.budget {
            return Err(Error::TooExpensive(total));
        }
        let mut span = Subspace::zero(n);
        let mut idx = vec![0usize; vars.len()];
        loop {
            let sub = vars
                .iter()
                .zip(&bases)
                .zip(&idx)
                .map(|((v, b), &k)| (v.clone(), b.basis()[k].clone()))
                .collect();
            span.insert(term.evaluate(&sub)?);
            if span.is_full() {
                return Ok(span);
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(span);
                }
                idx[pos] += 1;
                if idx[pos] < bases[pos].dim() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// A part whose monomials are all products of `k >= 2` copies of one variable.
    fn power_holds(&mut self, part: &JordanTerm) -> Result<bool> {
        let vars = part.variables();
        if vars.len() != 1 {
            return Err(Error::UnsupportedTerm(format!(
                "part {part} is neither multilinear nor a power of one variable"
            )));
        }
        let v = vars.into_iter().next().expect("one variable");
        let (first, _) = part.monomials().next().expect("nonzero part");
        let k = first.leaves().len();
        // every bracketing of x o ... o x equals 2^{k-1} x^k
        let coefficient: Scalar = part.monomials().map(|(_, c)| c.clone()).sum();
        if coefficient.is_zero() {
            return Ok(true);
        }
        let comp = self.component(&v);
        if comp.is_zero() {
            return Ok(true);
        }
        if comp.basis().iter().any(|b| !b.is_strictly_upper()) {
            // an element with a nonzero diagonal entry d has x^k with entry d^k
            return Ok(false);
        }
        if k >= self.grading.size() {
            return Ok(true);
        }
        symmetric_powers_vanish(comp.basis(), k, self.budget)
    }
}

/// Writes the term as `L o R` when every monomial splits its variables the
/// same way and the coefficient matrix has rank one.
fn factor(term: &JordanTerm) -> Option<(JordanTerm, JordanTerm)> {
    let mut split = None;
    let mut lefts: Vec<&Tree> = Vec::new();
    let mut rights: Vec<&Tree> = Vec::new();
    let mut entries = Vec::new();
    for (t, c) in term.monomials() {
        let Tree::Prod(a, b) = t else {
            return None;
        };
        let key = a.leaves();
        match &split {
            None => split = Some(key),
            Some(s) if *s != key => return None,
            _ => {}
        }
        let i = position_or_push(&mut lefts, a);
        let j = position_or_push(&mut rights, b);
        entries.push((i, j, c.clone()));
    }
    let mut m = vec![vec![Scalar::zero(); rights.len()]; lefts.len()];
    for (i, j, c) in entries {
        m[i][j] = c;
    }
    let (r0, c0) = (0, (0..rights.len()).find(|&j| !m[0][j].is_zero())?);
    let pivot = m[r0][c0].clone();
    for i in 0..lefts.len() {
        for j in 0..rights.len() {
            if &m[i][j] * &pivot != &m[i][c0] * &m[r0][j] {
                return None;
            }
        }
    }
    let mut left = JordanTerm::zero();
    for (i, t) in lefts.iter().enumerate() {
        left = left.add(&JordanTerm::from_tree((*t).clone()).scale(&m[i][c0]));
    }
    let mut right = JordanTerm::zero();
    for (j, t) in rights.iter().enumerate() {
        right = right.add(&JordanTerm::from_tree((*t).clone()).scale(&(&m[r0][j] / &pivot)));
    }
    Some((left, right))
}

fn position_or_push<'t>(list: &mut Vec<&'t Tree>, t: &'t Tree) -> usize {
    match list.iter().position(|x| *x == t) {
        Some(p) => p,
        None => {
            list.push(t);
            list.len() - 1
        }
    }
}

/// Whether `x^k = 0` for every `x` in the span of `basis`: each coefficient
/// of the polynomial map `c -> (sum c_i b_i)^k` must vanish, and the
/// coefficient of `c^a` is the sum of products over the arrangements of `a`.
fn symmetric_powers_vanish(basis: &[UTMatrix], k: usize, budget: u128) -> Result<bool> {
    let n = basis[0].size();
    let d = basis.len();
    // quick sufficient test: all associative products of length k vanish
    let mut prods = Subspace::span(n, basis.iter().cloned());
    for _ in 1..k {
        let mut next = Subspace::zero(n);
        for p in prods.basis() {
            for b in basis {
                next.insert(p.matmul(b));
            }
        }
        prods = next;
        if prods.is_zero() {
            return Ok(true);
        }
    }
    let states = binomial((d + k) as u128, k as u128);
    if states > budget {
        return Err(Error::TooExpensive(states));
    }
    let mut memo: HashMap<Vec<usize>, UTMatrix> = HashMap::new();
    let mut counts = vec![0usize; d];
    let mut ok = true;
    multisets(d, k, 0, &mut counts, &mut |a| {
        if ok && !arrangement_sum(a, basis, &mut memo).is_zero() {
            ok = false;
        }
    });
    Ok(ok)
}

fn arrangement_sum(
    a: &[usize],
    basis: &[UTMatrix],
    memo: &mut HashMap<Vec<usize>, UTMatrix>,
) -> UTMatrix {
    if a.iter().all(|&c| c == 0) {
        return UTMatrix::identity(basis[0].size());
    }
    if let Some(m) = memo.get(a) {
        return m.clone();
    }
    let mut total = UTMatrix::zero(basis[0].size());
    let mut rest = a.to_vec();
    for i in 0..a.len() {
        if a[i] == 0 {
            continue;
        }
        rest[i] -= 1;
        let tail = arrangement_sum(&rest, basis, memo);
        rest[i] += 1;
        total += &basis[i].matmul(&tail);
    }
    memo.insert(a.to_vec(), total.clone());
    total
}

fn multisets(d: usize, left: usize, from: usize, counts: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if from == d {
        if left == 0 {
            f(counts);
        }
        return;
    }
    for c in (0..=left).rev() {
        counts[from] = c;
        multisets(d, left - c, from + 1, counts, f);
    }
    counts[from] = 0;
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

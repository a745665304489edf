//! Group gradings on `UJ_n`: verification, the elementary and mirror-type
//! constructions, and gradings derived from others.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement, GroupHom};
use crate::matrix::{ambient_dim, mirror_unit, ratio, Scalar, Sign, UTMatrix};
use crate::subspace::Subspace;

/// A homogeneous component `A_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub degree: GroupElement,
    pub space: Subspace,
}

/// A verified grading; components are sorted by degree and echelonized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    group: FiniteAbelianGroup,
    n: usize,
    components: Vec<Component>,
}

/// The first grading axiom a candidate decomposition breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MatrixSize { expected: usize, found: usize },
    ForeignDegree(String),
    DuplicateDegree(GroupElement),
    EmptyComponent(GroupElement),
    NotDirectSum(GroupElement),
    DimensionDeficit { found: usize, expected: usize },
    Closure {
        left: GroupElement,
        right: GroupElement,
        left_index: usize,
        right_index: usize,
    },
}

impl Violation {
    /// Short machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::MatrixSize { .. } => "E-MATRIX-SIZE",
            Violation::ForeignDegree(_) => "E-FOREIGN-DEGREE",
            Violation::DuplicateDegree(_) => "E-DUPLICATE-DEGREE",
            Violation::EmptyComponent(_) => "E-EMPTY-COMPONENT",
            Violation::NotDirectSum(_) => "E-NOT-DIRECT-SUM",
            Violation::DimensionDeficit { .. } => "E-DIMENSION",
            Violation::Closure { .. } => "E-CLOSURE",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MatrixSize { expected, found } => {
                write!(f, "matrix of size {found} in a grading of UJ_{expected}")
            }
            Violation::ForeignDegree(g) => write!(f, "degree {g} is not in the group"),
            Violation::DuplicateDegree(g) => write!(f, "degree {g} occurs twice"),
            Violation::EmptyComponent(g) => write!(f, "component of degree {g} is empty"),
            Violation::NotDirectSum(g) => {
                write!(f, "basis of degree {g} is dependent on the earlier components")
            }
            Violation::DimensionDeficit { found, expected } => {
                write!(f, "components span dimension {found}, expected {expected}")
            }
            Violation::Closure {
                left,
                right,
                left_index,
                right_index,
            } => write!(
                f,
                "product of basis vectors {left}#{left_index} and {right}#{right_index} leaves the component of their sum"
            ),
        }
    }
}

fn violation(v: Violation) -> Error {
    Error::NotAGrading(v)
}

/// Checks the grading axioms on raw component bases.
pub fn verify_grading(
    group: &FiniteAbelianGroup,
    n: usize,
    raw: Vec<(GroupElement, Vec<UTMatrix>)>,
) -> Result<Grading> {
    let mut seen = BTreeMap::new();
    for (g, basis) in &raw {
        if !group.contains(g) {
            return Err(violation(Violation::ForeignDegree(g.to_string())));
        }
        if let Some(m) = basis.iter().find(|m| m.size() != n) {
            return Err(violation(Violation::MatrixSize {
                expected: n,
                found: m.size(),
            }));
        }
        if seen.insert(g.clone(), ()).is_some() {
            return Err(violation(Violation::DuplicateDegree(g.clone())));
        }
        if basis.is_empty() {
            return Err(violation(Violation::EmptyComponent(g.clone())));
        }
    }
    let mut joint = Subspace::zero(n);
    for (g, basis) in &raw {
        for b in basis {
            if !joint.insert(b.clone()) {
                return Err(violation(Violation::NotDirectSum(g.clone())));
            }
        }
    }
    if joint.dim() != ambient_dim(n) {
        return Err(violation(Violation::DimensionDeficit {
            found: joint.dim(),
            expected: ambient_dim(n),
        }));
    }
    let components: Vec<Component> = raw
        .into_iter()
        .map(|(degree, basis)| Component {
            degree,
            space: Subspace::span(n, basis),
        })
        .collect();
    let grading = Grading::assemble(group.clone(), n, components);
    grading.check_closure()?;
    Ok(grading)
}

impl Grading {
    fn assemble(group: FiniteAbelianGroup, n: usize, mut components: Vec<Component>) -> Self {
        components.sort_by(|a, b| a.degree.cmp(&b.degree));
        Self {
            group,
            n,
            components,
        }
    }

    fn check_closure(&self) -> Result<()> {
        for (a_idx, a) in self.components.iter().enumerate() {
            for b in &self.components[a_idx..] {
                let target = self.component(&self.group.add(&a.degree, &b.degree));
                for (li, x) in a.space.basis().iter().enumerate() {
                    for (ri, y) in b.space.basis().iter().enumerate() {
                        let p = x.circ(y);
                        let ok = match target {
                            Some(s) => s.contains(&p),
                            None => p.is_zero(),
                        };
                        if !ok {
                            return Err(violation(Violation::Closure {
                                left: a.degree.clone(),
                                right: b.degree.clone(),
                                left_index: li,
                                right_index: ri,
                            }));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, g: &GroupElement) -> Option<&Subspace> {
        self.components
            .binary_search_by(|c| c.degree.cmp(g))
            .ok()
            .map(|k| &self.components[k].space)
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.components.iter().map(|c| c.degree.clone()).collect()
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, x: &UTMatrix) -> Option<&GroupElement> {
        if x.is_zero() {
            return None;
        }
        self.components
            .iter()
            .find(|c| c.space.contains(x))
            .map(|c| &c.degree)
    }

    /// Whether `s` is the sum of its homogeneous parts.
    pub fn is_graded_subspace(&self, s: &Subspace) -> bool {
        self.splitter().is_graded(s)
    }

    /// Projections onto the homogeneous components.
    pub fn splitter(&self) -> Splitter<'_> {
        Splitter::new(self)
    }

    /// Image under an automorphism; again a grading by the same group.
    pub fn transform(&self, phi: &Automorphism) -> Grading {
        assert_eq!(phi.size(), self.n);
        let components = self
            .components
            .iter()
            .map(|c| Component {
                degree: c.degree.clone(),
                space: Subspace::span(self.n, c.space.basis().iter().map(|b| phi.apply(b))),
            })
            .collect();
        Grading::assemble(self.group.clone(), self.n, components)
    }
}

/// Splits elements into homogeneous parts through the inverse of the joint
/// component basis.
pub struct Splitter<'a> {
    grading: &'a Grading,
    // row k: coordinates -> coefficient of the k-th joint basis vector
    inverse: Vec<Vec<Scalar>>,
}

impl<'a> Splitter<'a> {
    fn new(grading: &'a Grading) -> Self {
        let d = ambient_dim(grading.n);
        let basis: Vec<&UTMatrix> = grading.components.iter().flat_map(|c| c.space.basis()).collect();
        assert_eq!(basis.len(), d);
        // augmented [A | I] with A's columns the basis vectors
        let mut rows: Vec<Vec<Scalar>> = (0..d)
            .map(|r| {
                let mut row: Vec<Scalar> = basis.iter().map(|b| b.coords()[r].clone()).collect();
                row.extend((0..d).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
                row
            })
            .collect();
        for col in 0..d {
            let pr = (col..d).find(|&r| !rows[r][col].is_zero()).expect("joint basis is a basis");
            rows.swap(col, pr);
            let inv = rows[col][col].recip();
            for v in rows[col].iter_mut() {
                *v *= &inv;
            }
            let pivot = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
        }
        let inverse = rows.into_iter().map(|row| row[d..].to_vec()).collect();
        Splitter { grading, inverse }
    }

    /// Nonzero homogeneous parts of `x`, by degree.
    pub fn parts(&self, x: &UTMatrix) -> Vec<(&'a GroupElement, UTMatrix)> {
        let n = self.grading.n;
        let coeffs: Vec<Scalar> = self
            .inverse
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (a, b) in row.iter().zip(x.coords()) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect();
        let mut out = Vec::new();
        let mut k = 0;
        for comp in &self.grading.components {
            let mut part = UTMatrix::zero(n);
            for b in comp.space.basis() {
                if !coeffs[k].is_zero() {
                    part += &b.scale(&coeffs[k]);
                }
                k += 1;
            }
            if !part.is_zero() {
                out.push((&comp.degree, part));
            }
        }
        out
    }

    /// Whether every homogeneous part of every element of `s` lies in `s`.
    pub fn is_graded(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| self.parts(v).iter().all(|(_, p)| s.contains(p)))
    }
}

/// Parameters of a standard grading: elementary `eta`, or mirror type `(t, eta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GradingLabel {
    Elementary(Vec<GroupElement>),
    Mt { t: GroupElement, eta: Vec<GroupElement> },
}

impl GradingLabel {
    pub fn eta(&self) -> &[GroupElement] {
        match self {
            GradingLabel::Elementary(eta) => eta,
            GradingLabel::Mt { eta, .. } => eta,
        }
    }

    pub fn is_elementary(&self) -> bool {
        matches!(self, GradingLabel::Elementary(_))
    }

    /// Checks lengths, group membership and the order of `t` for `UJ_n`.
    pub fn validate(&self, group: &FiniteAbelianGroup, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidLabel("n must be at least 1".into()));
        }
        for g in self.eta() {
            group.check(g)?;
        }
        match self {
            GradingLabel::Elementary(eta) => check_len(eta, n - 1),
            GradingLabel::Mt { t, eta } => {
                group.check(t)?;
                if n < 2 {
                    return Err(Error::InvalidLabel(
                        "UJ_1 has no mirror-type gradings".into(),
                    ));
                }
                if group.element_order(t) != 2 {
                    return Err(Error::NotAnInvolution(t.to_string()));
                }
                check_len(eta, n / 2)
            }
        }
    }
}

impl fmt::Display for GradingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = |eta: &[GroupElement]| {
            eta.iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            GradingLabel::Elementary(eta) => write!(f, "E({})", seq(eta)),
            GradingLabel::Mt { t, eta } => write!(f, "MT({t};{})", seq(eta)),
        }
    }
}

fn check_len(eta: &[GroupElement], expected: usize) -> Result<()> {
    if eta.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: eta.len(),
        });
    }
    Ok(())
}

/// `(g_{n-1}, ..., g_1)`.
pub fn rev(eta: &[GroupElement]) -> Vec<GroupElement> {
    eta.iter().rev().cloned().collect()
}

fn from_degree_map(
    group: &FiniteAbelianGroup,
    n: usize,
    map: BTreeMap<GroupElement, Vec<UTMatrix>>,
) -> Grading {
    let components = map
        .into_iter()
        .map(|(degree, basis)| Component {
            degree,
            space: Subspace::span(n, basis),
        })
        .collect();
    Grading::assemble(group.clone(), n, components)
}

/// `deg e_ij = g_i + ... + g_{j-1}` for `UJ_n`, `n = |eta| + 1`.
pub fn elementary_degree(
    group: &FiniteAbelianGroup,
    eta: &[GroupElement],
    i: usize,
    j: usize,
) -> GroupElement {
    group.sum(&eta[i - 1..j - 1])
}

pub fn elementary_grading(group: &FiniteAbelianGroup, eta: &[GroupElement]) -> Result<Grading> {
    let n = eta.len() + 1;
    GradingLabel::Elementary(eta.to_vec()).validate(group, n)?;
    let mut map: BTreeMap<GroupElement, Vec<UTMatrix>> = BTreeMap::new();
    for (i, j) in crate::matrix::slots(n) {
        map.entry(elementary_degree(group, eta, i, j))
            .or_default()
            .push(UTMatrix::unit(n, i, j));
    }
    Ok(from_degree_map(group, n, map))
}

/// Degree of `Y^+_{i:m}` in the mirror-type grading with sequence `eta`.
pub fn mt_plus_degree(
    group: &FiniteAbelianGroup,
    n: usize,
    eta: &[GroupElement],
    i: usize,
    m: usize,
) -> GroupElement {
    group.sum((i..i + m).map(|k| &eta[k.min(n - k) - 1]))
}

/// The mirror units `(i, m, sign)` that form the basis of a mirror-type grading.
pub fn mirror_basis_indices(n: usize) -> Vec<(usize, usize, Sign)> {
    let mut out = Vec::new();
    for m in 0..n {
        for i in 1..=(n - m).div_ceil(2) {
            out.push((i, m, Sign::Plus));
            if 2 * i + m != n + 1 {
                out.push((i, m, Sign::Minus));
            }
        }
    }
    out
}

pub fn mt_grading(
    group: &FiniteAbelianGroup,
    n: usize,
    t: &GroupElement,
    eta: &[GroupElement],
) -> Result<Grading> {
    let label = GradingLabel::Mt {
        t: t.clone(),
        eta: eta.to_vec(),
    };
    label.validate(group, n)?;
    let mut map: BTreeMap<GroupElement, Vec<UTMatrix>> = BTreeMap::new();
    for (i, m, sign) in mirror_basis_indices(n) {
        let plus = mt_plus_degree(group, n, eta, i, m);
        let degree = match sign {
            Sign::Plus => plus,
            Sign::Minus => group.add(&plus, t),
        };
        map.entry(degree)
            .or_default()
            .push(mirror_unit(n, i, m, sign)?);
    }
    Ok(from_degree_map(group, n, map))
}

pub fn standard_grading(
    group: &FiniteAbelianGroup,
    n: usize,
    label: &GradingLabel,
) -> Result<Grading> {
    label.validate(group, n)?;
    match label {
        GradingLabel::Elementary(eta) => elementary_grading(group, eta),
        GradingLabel::Mt { t, eta } => mt_grading(group, n, t, eta),
    }
}

fn embed(group: &FiniteAbelianGroup, h: &GroupElement, bit: i64) -> GroupElement {
    let mut coords: Vec<i64> = h.coords().iter().map(|&c| c as i64).collect();
    coords.push(bit);
    group.element(&coords).expect("embedding into H x Z_2")
}

/// The `H x Z_2`-grading obtained by splitting each component of the
/// elementary grading `eta` into its mirror-symmetric and skew parts.
pub fn grading_from_involution(h: &FiniteAbelianGroup, eta: &[GroupElement]) -> Result<Grading> {
    let base = elementary_grading(h, eta)?;
    if rev(eta) != eta {
        return Err(Error::NotPalindromic(
            GradingLabel::Elementary(eta.to_vec()).to_string(),
        ));
    }
    let n = base.size();
    let g = h.with_factor(2);
    let half = ratio(1, 2);
    let mut raw = Vec::new();
    for c in base.components() {
        let mut sym = Vec::new();
        let mut skew = Vec::new();
        for b in c.space.basis() {
            let m = b.mirror();
            sym.push((b + &m).scale(&half));
            skew.push((b - &m).scale(&half));
        }
        let sym = Subspace::span(n, sym);
        let skew = Subspace::span(n, skew);
        if !sym.is_zero() {
            raw.push((embed(&g, &c.degree, 0), sym.basis().to_vec()));
        }
        if !skew.is_zero() {
            raw.push((embed(&g, &c.degree, 1), skew.basis().to_vec()));
        }
    }
    verify_grading(&g, n, raw)
}

/// The grading by `phi(G)`: components with equal image are merged.
pub fn induced_grading(grading: &Grading, phi: &GroupHom) -> Result<Grading> {
    if phi.source() != grading.group() {
        return Err(Error::InvalidHom(
            "homomorphism is not defined on the grading group".into(),
        ));
    }
    let n = grading.size();
    let mut map: BTreeMap<GroupElement, Subspace> = BTreeMap::new();
    for c in grading.components() {
        let entry = map
            .entry(phi.apply(&c.degree))
            .or_insert_with(|| Subspace::zero(n));
        *entry = entry.sum(&c.space);
    }
    let components = map
        .into_iter()
        .map(|(degree, space)| Component { degree, space })
        .collect();
    Ok(Grading::assemble(phi.target().clone(), n, components))
}

/// `UJ_n / T` with a grading, presented on the matrix units outside the
/// leading-term set of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGrading {
    group: FiniteAbelianGroup,
    n: usize,
    ideal: Subspace,
    complement: Vec<(usize, usize)>,
    components: Vec<Component>,
}

impl QuotientGrading {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn complement(&self) -> &[(usize, usize)] {
        &self.complement
    }

    /// Components as subspaces of `UJ_n` supported on the complement.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// The class of `x` written on the complement.
    pub fn residual(&self, x: &UTMatrix) -> UTMatrix {
        self.ideal.reduce(x)
    }

    pub fn product(&self, a: &UTMatrix, b: &UTMatrix) -> UTMatrix {
        self.residual(&a.circ(b))
    }

    /// If the complement is a diagonal block `{a <= i <= j <= b}` whose quotient
    /// product agrees with that of `UJ_{b-a+1}`, the quotient as a grading of it.
    pub fn as_uj_block(&self) -> Option<Grading> {
        let a = self.complement.iter().map(|&(i, _)| i).min()?;
        let b = self.complement.iter().map(|&(_, j)| j).max()?;
        let m = b - a + 1;
        let block: Vec<(usize, usize)> = crate::matrix::slots(m)
            .into_iter()
            .map(|(i, j)| (i + a - 1, j + a - 1))
            .collect();
        let mut sorted = self.complement.clone();
        sorted.sort();
        if sorted != block {
            return None;
        }
        let shrink = |x: &UTMatrix| {
            let mut out = UTMatrix::zero(m);
            for (i, j, v) in x.nonzero_entries() {
                out.set(i + 1 - a, j + 1 - a, v);
            }
            out
        };
        for &(i, j) in &block {
            for &(k, l) in &block {
                let big = self.product(&UTMatrix::unit(self.n, i, j), &UTMatrix::unit(self.n, k, l));
                let small = UTMatrix::unit(m, i + 1 - a, j + 1 - a)
                    .circ(&UTMatrix::unit(m, k + 1 - a, l + 1 - a));
                if shrink(&big) != small {
                    return None;
                }
            }
        }
        let components = self
            .components
            .iter()
            .map(|c| Component {
                degree: c.degree.clone(),
                space: Subspace::span(m, c.space.basis().iter().map(shrink)),
            })
            .collect();
        Some(Grading::assemble(self.group.clone(), m, components))
    }
}

pub fn quotient_grading(grading: &Grading, ideal: &Subspace) -> Result<QuotientGrading> {
    let n = grading.size();
    if ideal.ambient() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: ideal.ambient(),
        });
    }
    let full = Subspace::full(n);
    for x in full.basis() {
        for t in ideal.basis() {
            if !ideal.contains(&x.circ(t)) {
                return Err(Error::NotAnIdeal(format!(
                    "{x} o {t} leaves the subspace"
                )));
            }
        }
    }
    if !grading.is_graded_subspace(ideal) {
        return Err(Error::NotGraded(format!("{ideal:?}")));
    }
    let pivots = ideal.pivots();
    let complement: Vec<(usize, usize)> = crate::matrix::slots(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| !pivots.contains(k))
        .map(|(_, s)| s)
        .collect();
    let components = grading
        .components()
        .iter()
        .filter_map(|c| {
            let space = Subspace::span(n, c.space.basis().iter().map(|b| ideal.reduce(b)));
            (!space.is_zero()).then(|| Component {
                degree: c.degree.clone(),
                space,
            })
        })
        .collect();
    Ok(QuotientGrading {
        group: grading.group().clone(),
        n,
        ideal: ideal.clone(),
        complement,
        components,
    })
}

/// `x -> P (flip ? mirror(x) : x) P^{-1}` applied to every component.
pub fn apply_automorphism(grading: &Grading, p: &UTMatrix, flip: bool) -> Result<Grading> {
    if p.size() != grading.size() {
        return Err(Error::SizeMismatch {
            left: grading.size(),
            right: p.size(),
        });
    }
    Ok(grading.transform(&Automorphism::new(p.clone(), flip)?))
}

/// Raw bases of every component, as accepted by [`verify_grading`].
pub fn raw_components(grading: &Grading) -> Vec<(GroupElement, Vec<UTMatrix>)> {
    grading
        .components()
        .iter()
        .map(|c| (c.degree.clone(), c.space.basis().to_vec()))
        .collect()
}

/// Whether `x` is zero or homogeneous of degree `g`.
pub fn is_homogeneous_of(grading: &Grading, x: &UTMatrix, g: &GroupElement) -> bool {
    x.coords().iter().all(Zero::is_zero) || grading.component(g).is_some_and(|s| s.contains(x))
}

//! Bringing an arbitrary grading of `UJ_n` to a standard one.
//!
//! The outer corner `e_11, e_nn` is split off with graded subspaces that any
//! grading must respect, the middle block `UJ_{n-2}` is normalized
//! recursively, and the two outer off-diagonal units are then fixed by hand.

use crate::automorphism::{Automorphism, GradedIso};
use crate::classify::{canonical_isomorphism, CanonicalLabel};
use crate::error::{Error, Result};
use crate::grading::{standard_grading, verify_grading, Grading, GradingLabel};
use crate::group::GroupElement;
use crate::matrix::{associator, int, ratio, Scalar, UTMatrix};
use crate::subspace::Subspace;
use num_traits::{One, Zero};

/// Graded subspaces determined by the algebra structure alone.
#[derive(Clone, Debug)]
pub struct StrictlyUpperChain {
    /// Span of associators: the strictly upper matrices.
    pub j: Subspace,
    /// `J^{n-1} = span{e_1n}`.
    pub e1n_span: Subspace,
    /// Annihilator of `e_1n`.
    pub b: Subspace,
    pub b_squared: Subspace,
    /// `B ∩ B∘B`.
    pub c: Subspace,
    /// `{x : x∘C ⊆ J}`.
    pub u1: Subspace,
    /// `U_1^{∘n}`: the first row and the last column.
    pub t1: Subspace,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Normalize(msg.into())
}

fn first_row_last_column(n: usize) -> Subspace {
    let units = (1..=n).map(|j| (1, j)).chain((2..=n).map(|i| (i, n)));
    Subspace::of_units(n, units)
}

pub fn strictly_upper_chain(grading: &Grading) -> Result<StrictlyUpperChain> {
    let n = grading.size();
    if n < 2 {
        return Err(fail("the chain needs n >= 2"));
    }
    let basis: Vec<&UTMatrix> = grading
        .components()
        .iter()
        .flat_map(|c| c.space.basis())
        .collect();
    let strict = Subspace::of_units(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))));
    let mut j = Subspace::zero(n);
    'outer: for a in &basis {
        for b in &basis {
            for c in &basis {
                j.insert(associator(a, b, c)?);
                if j.dim() == strict.dim() {
                    break 'outer;
                }
            }
        }
    }
    if j != strict {
        return Err(fail(format!("associators span dimension {}", j.dim())));
    }
    let e1n_span = j.circle_power(n - 1);
    if e1n_span != Subspace::of_units(n, [(1, n)]) {
        return Err(fail("J^(n-1) is not span{e_1n}"));
    }
    let full = Subspace::full(n);
    let b = full.annihilator_mod(&e1n_span, &Subspace::zero(n))?;
    let b_squared = b.product_span(&b)?;
    let c = b.intersection(&b_squared);
    let u1 = full.annihilator_mod(&c, &j)?;
    let t1 = u1.circle_power(n);
    if t1 != first_row_last_column(n) {
        return Err(fail(format!("U_1^n has dimension {}, expected {}", t1.dim(), 2 * n - 1)));
    }
    let chain = StrictlyUpperChain {
        j,
        e1n_span,
        b,
        b_squared,
        c,
        u1,
        t1,
    };
    let splitter = grading.splitter();
    for (name, s) in chain.named() {
        if !splitter.is_graded(s) {
            return Err(fail(format!("{name} is not graded")));
        }
    }
    Ok(chain)
}

impl StrictlyUpperChain {
    fn named(&self) -> [(&'static str, &Subspace); 7] {
        [
            ("J", &self.j),
            ("J^(n-1)", &self.e1n_span),
            ("B", &self.b),
            ("B o B", &self.b_squared),
            ("C", &self.c),
            ("U_1", &self.u1),
            ("T_1", &self.t1),
        ]
    }
}

/// Homogeneous `e_1 = ½ e_2∘e_2` and `e_2 ≡ e_11 - e_nn`, together with a
/// conjugation taking them to `e_11 + e_nn` and `e_11 - e_nn` exactly.
#[derive(Clone, Debug)]
pub struct CornerFrame {
    pub e1: UTMatrix,
    pub e2: UTMatrix,
    pub conjugation: Automorphism,
    pub degree_e2: GroupElement,
}

/// `(x_11, x_nn)`: the image in `T_1 / (T_1 ∩ J)`.
fn corner(x: &UTMatrix) -> (Scalar, Scalar) {
    let n = x.size();
    (x.get(1, 1).clone(), x.get(n, n).clone())
}

fn combine(a: &Scalar, x: &UTMatrix, b: &Scalar, y: &UTMatrix) -> UTMatrix {
    &x.scale(a) + &y.scale(b)
}

/// Finds `e_2` in the first component (in degree order) of `T_1` that has an
/// element independent of the unit modulo `T_1 ∩ J`.
fn find_e2(grading: &Grading, t1: &Subspace) -> Result<(UTMatrix, GroupElement)> {
    let identity = grading.group().identity();
    for comp in grading.components() {
        let part = comp.space.intersection(t1);
        let Some(x) = part.basis().iter().find(|x| {
            let (a, b) = corner(x);
            a != b
        }) else {
            continue;
        };
        let (a, b) = corner(x);
        if comp.degree == identity {
            // the unit of the quotient also has degree 1: solve for image (1, -1)
            let y = part
                .basis()
                .iter()
                .find(|y| {
                    let (c, d) = corner(y);
                    &a * &d - &b * &c != Scalar::zero()
                })
                .ok_or_else(|| fail("T_1 / (T_1 ∩ J) is not two-dimensional in degree 1"))?;
            let (c, d) = corner(y);
            let det = &a * &d - &b * &c;
            // alpha (a, b) + beta (c, d) = (1, -1)
            let alpha = (&d + &c) / &det;
            let beta = -(&b + &a) / &det;
            return Ok((combine(&alpha, x, &beta, y), comp.degree.clone()));
        }
        if a != -b.clone() {
            return Err(fail("homogeneous corner element of nontrivial degree is not ±"));
        }
        let inv = Scalar::one() / &a;
        return Ok((x.scale(&inv), comp.degree.clone()));
    }
    Err(fail("no homogeneous element of T_1 separates e_11 from e_nn"))
}

/// Unit upper-triangular `V` whose columns are eigenvectors of the
/// idempotent `e`, so that `V^{-1} e V` is diagonal.
fn eigenbasis(e: &UTMatrix) -> UTMatrix {
    let n = e.size();
    let mut v = UTMatrix::zero(n);
    for j in 1..=n {
        let keep = e.get(j, j).is_one();
        for i in 1..=j {
            let ej = e.get(i, j).clone();
            let entry = if keep {
                ej
            } else if i == j {
                Scalar::one() - ej
            } else {
                -ej
            };
            v.set(i, j, entry);
        }
    }
    v
}

pub fn corner_frame(grading: &Grading, chain: &StrictlyUpperChain) -> Result<CornerFrame> {
    let n = grading.size();
    let group = grading.group();
    let (e2, degree_e2) = find_e2(grading, &chain.t1)?;
    if !group.is_identity(&group.add(&degree_e2, &degree_e2)) {
        return Err(fail(format!("deg e_2 = {degree_e2} has order > 2")));
    }
    let e1 = e2.circ(&e2).scale(&ratio(1, 2));
    if e1.matmul(&e1) != e1 {
        return Err(fail("e_1 is not idempotent"));
    }
    let target_e1 = &UTMatrix::unit(n, 1, 1) + &UTMatrix::unit(n, n, n);
    let p = eigenbasis(&e1).inverse()?;
    let psi = Automorphism::conjugation(p)?;
    if psi.apply(&e1) != target_e1 {
        return Err(fail("e_1 did not diagonalize to e_11 + e_nn"));
    }
    let moved = psi.apply(&e2);
    let r2 = &moved.circ(&target_e1) - &moved;
    let d = &UTMatrix::unit(n, 1, 1) - &UTMatrix::unit(n, n, n);
    let alpha = if n > 1 { r2.get(1, n).clone() } else { Scalar::zero() };
    if &r2 - &UTMatrix::unit(n, 1, n).scale(&alpha) != d {
        return Err(fail("r_2 is not e_11 - e_nn + alpha e_1n"));
    }
    // (1 + beta e_1n) r_2 (1 - beta e_1n) = r_2 - 2 beta e_1n
    let mut q = UTMatrix::identity(n);
    q.set(1, n, alpha / int(2));
    let conjugation = psi.then(&Automorphism::conjugation(q)?);
    Ok(CornerFrame {
        e1,
        e2,
        conjugation,
        degree_e2,
    })
}

/// `y - e∘y`.
fn one_minus(e: &UTMatrix, y: &UTMatrix) -> UTMatrix {
    y - &e.circ(y)
}

/// The grading induced on `Δ = (1 - e_1)∘((1 - ½e_1)∘UJ_n)`, read as a
/// grading of `UJ_{n-2}` on the middle block.
fn middle_grading(grading: &Grading) -> Result<Grading> {
    let n = grading.size();
    let e1 = &UTMatrix::unit(n, 1, 1) + &UTMatrix::unit(n, n, n);
    let half = e1.scale(&ratio(1, 2));
    let m = n - 2;
    let mut raw = Vec::new();
    for comp in grading.components() {
        let images: Vec<UTMatrix> = comp
            .space
            .basis()
            .iter()
            .map(|y| one_minus(&e1, &one_minus(&half, y)))
            .collect();
        let span = Subspace::span(n, images);
        if span.is_zero() {
            continue;
        }
        let shifted = span
            .basis()
            .iter()
            .map(|x| {
                let mut out = UTMatrix::zero(m);
                for (i, j, v) in x.nonzero_entries() {
                    if i == 1 || j == n {
                        return Err(fail("Δ leaves the middle block"));
                    }
                    out.set(i - 1, j - 1, v);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        raw.push((comp.degree.clone(), shifted));
    }
    verify_grading(grading.group(), m, raw)
}

/// Homogeneous element of `space` with nonzero `(i, j)` entry, scaled to 1.
fn homogeneous_with_entry(
    grading: &Grading,
    space: &Subspace,
    i: usize,
    j: usize,
) -> Result<(UTMatrix, GroupElement)> {
    for comp in grading.components() {
        let part = comp.space.intersection(space);
        if let Some(z) = part.basis().iter().find(|z| !z.get(i, j).is_zero()) {
            let inv = Scalar::one() / z.get(i, j);
            return Ok((z.scale(&inv), comp.degree.clone()));
        }
    }
    Err(fail(format!("no homogeneous element with entry ({i},{j})")))
}

fn degree_of_u2(label: &GradingLabel, grading: &Grading) -> GroupElement {
    match label {
        GradingLabel::Elementary(_) => grading.group().identity(),
        GradingLabel::Mt { t, .. } => t.clone(),
    }
}

/// A label and an automorphism `phi` with `grading.transform(phi)` equal to
/// the standard grading of the label. The label is not canonicalized.
pub fn normalize(grading: &Grading) -> Result<(GradingLabel, Automorphism)> {
    let n = grading.size();
    let group = grading.group();
    if n == 1 {
        if grading.components().len() != 1 || !group.is_identity(&grading.components()[0].degree) {
            return Err(fail("UJ_1 must be concentrated in degree 1"));
        }
        return Ok((GradingLabel::Elementary(vec![]), Automorphism::identity(1)));
    }
    let chain = strictly_upper_chain(grading)?;
    let frame = corner_frame(grading, &chain)?;
    let mut phi = frame.conjugation.clone();
    let mut current = grading.transform(&phi);
    let s = frame.degree_e2.clone();

    let mut inner_eta: Vec<GroupElement> = Vec::new();
    if n >= 3 {
        let middle = middle_grading(&current)?;
        let (inner_label, inner_phi) = normalize(&middle)?;
        if n >= 4 {
            let u2 = degree_of_u2(&inner_label, &middle);
            if u2 != s {
                return Err(fail(format!("deg e_2 = {s} but deg u_2 = {u2}")));
            }
        }
        inner_eta = inner_label.eta().to_vec();
        let extended = inner_phi.extend_to_middle();
        phi = phi.then(&extended);
        current = grading.transform(&phi);
    }

    let e = |i, j| UTMatrix::unit(n, i, j);
    let label = if group.is_identity(&s) {
        let mut eta = Vec::with_capacity(n - 1);
        if n == 2 {
            let z = e(1, 2);
            let g = current.degree_of(&z).ok_or_else(|| fail("e_12 is not homogeneous"))?;
            eta.push(g.clone());
        } else {
            // e_12 = (z∘e_11)∘e_22 and e_{n-1,n} = (z∘e_nn)∘e_{n-1,n-1}
            let (z, g) = homogeneous_with_entry(&current, &chain.j, 1, 2)?;
            if z.circ(&e(1, 1)).circ(&e(2, 2)) != e(1, 2) {
                return Err(fail("(z o e_11) o e_22 is not e_12"));
            }
            let (w, h) = homogeneous_with_entry(&current, &chain.j, n - 1, n)?;
            if w.circ(&e(n, n)).circ(&e(n - 1, n - 1)) != e(n - 1, n) {
                return Err(fail("(z o e_nn) o e_{n-1,n-1} is not e_{n-1,n}"));
            }
            eta.push(g);
            eta.extend(inner_eta);
            eta.push(h);
        }
        GradingLabel::Elementary(eta)
    } else {
        let mut eta = Vec::with_capacity(n / 2);
        if n == 2 {
            let g = current
                .degree_of(&e(1, 2))
                .ok_or_else(|| fail("e_12 is not homogeneous"))?;
            eta.push(g.clone());
        } else {
            let t1_j = chain.t1.intersection(&chain.j);
            let (z2, _) = homogeneous_with_entry(&current, &t1_j, 1, 2)?;
            let u1 = &e(2, 2) + &e(n - 1, n - 1);
            let u2 = &e(2, 2) - &e(n - 1, n - 1);
            let e2 = &e(1, 1) - &e(n, n);
            let z1 = z2.circ(&u1);
            let mut z = (&z1.circ(&u2) + &z1.circ(&e2)).scale(&ratio(1, 2));
            let lead = z.get(1, 2).clone();
            if lead.is_zero() {
                return Err(fail("z has no e_12 part"));
            }
            z = z.scale(&(Scalar::one() / lead));
            let a = z.get(n - 1, n).clone();
            if a.is_zero() || &z - &e(n - 1, n).scale(&a) != e(1, 2) {
                return Err(fail("z is not e_12 + a e_{n-1,n} with a != 0"));
            }
            let mut diag: Vec<Scalar> = vec![int(1); n];
            diag[n - 1] = a;
            phi = phi.then(&Automorphism::conjugation(UTMatrix::diagonal(&diag))?);
            current = grading.transform(&phi);
            let y = &e(1, 2) + &e(n - 1, n);
            let g = current
                .degree_of(&y)
                .ok_or_else(|| fail("e_12 + e_{n-1,n} is not homogeneous"))?;
            eta.push(g.clone());
            eta.extend(inner_eta);
        }
        GradingLabel::Mt { t: s, eta }
    };
    if current != standard_grading(group, n, &label)? {
        return Err(fail(format!("normalized grading is not the standard grading of {label}")));
    }
    Ok((label, phi))
}

/// Canonical label of a grading and a verified graded isomorphism onto the
/// standard grading of that label.
pub fn canonicalize(grading: &Grading) -> Result<(CanonicalLabel, GradedIso)> {
    let n = grading.size();
    let group = grading.group();
    let (label, phi) = normalize(grading)?;
    let (canonical, to_canonical) = canonical_isomorphism(group, n, &label)?;
    let iso = GradedIso {
        automorphism: phi.then(&to_canonical.automorphism),
        target: canonical.label().clone(),
    };
    let target = standard_grading(group, n, canonical.label())?;
    if grading.transform(&iso.automorphism) != target {
        return Err(fail(format!("composed isomorphism onto {canonical} failed verification")));
    }
    Ok((canonical, iso))
}

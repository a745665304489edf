//! Canonical labels and the isomorphism classes of standard gradings.
//!
//! Elementary labels are identified with their reversal; the canonical form
//! is the lexicographic minimum. Mirror-type labels keep `t` exactly and
//! reduce every entry except a trailing one (even `n`) modulo `<t>`, using
//! the least element of each coset.

use std::fmt;

use crate::automorphism::{Automorphism, GradedIso};
use crate::error::{Error, Result};
use crate::grading::{rev, standard_grading, Grading, GradingLabel};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::matrix::{int, UTMatrix};

/// A label in canonical form; two standard gradings are isomorphic exactly
/// when their canonical labels are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel(GradingLabel);

impl CanonicalLabel {
    pub fn label(&self) -> &GradingLabel {
        &self.0
    }

    pub fn into_label(self) -> GradingLabel {
        self.0
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn elementary_canonical(eta: &[GroupElement]) -> CanonicalLabel {
    let r = rev(eta);
    CanonicalLabel(GradingLabel::Elementary(if r.as_slice() < eta {
        r
    } else {
        eta.to_vec()
    }))
}

/// Number of leading entries that are only defined modulo `<t>`.
fn reducible_prefix(n: usize) -> usize {
    (n - 1) / 2
}

pub fn mt_canonical(
    group: &FiniteAbelianGroup,
    n: usize,
    t: &GroupElement,
    eta: &[GroupElement],
) -> Result<CanonicalLabel> {
    let label = GradingLabel::Mt {
        t: t.clone(),
        eta: eta.to_vec(),
    };
    label.validate(group, n)?;
    let p = reducible_prefix(n);
    let eta = eta
        .iter()
        .enumerate()
        .map(|(k, g)| {
            if k < p {
                coset_min(group, t, g)
            } else {
                g.clone()
            }
        })
        .collect();
    Ok(CanonicalLabel(GradingLabel::Mt { t: t.clone(), eta }))
}

fn coset_min(group: &FiniteAbelianGroup, t: &GroupElement, g: &GroupElement) -> GroupElement {
    let h = group.add(g, t);
    if h < *g {
        h
    } else {
        g.clone()
    }
}

pub fn canonical(
    group: &FiniteAbelianGroup,
    n: usize,
    label: &GradingLabel,
) -> Result<CanonicalLabel> {
    label.validate(group, n)?;
    match label {
        GradingLabel::Elementary(eta) => Ok(elementary_canonical(eta)),
        GradingLabel::Mt { t, eta } => mt_canonical(group, n, t, eta),
    }
}

pub fn labels_isomorphic(
    group: &FiniteAbelianGroup,
    n: usize,
    a: &GradingLabel,
    b: &GradingLabel,
) -> Result<bool> {
    Ok(canonical(group, n, a)? == canonical(group, n, b)?)
}

/// A graded isomorphism from the standard grading of `from` onto that of `to`:
/// the reversal flip for elementary labels, a diagonal sign matrix for
/// mirror-type labels. Checked against the standard gradings before return.
pub fn explicit_isomorphism(
    group: &FiniteAbelianGroup,
    n: usize,
    from: &GradingLabel,
    to: &GradingLabel,
) -> Result<GradedIso> {
    if !labels_isomorphic(group, n, from, to)? {
        return Err(Error::NotIsomorphic);
    }
    let automorphism = match (from, to) {
        (GradingLabel::Elementary(a), GradingLabel::Elementary(b)) => {
            if a == b {
                Automorphism::identity(n)
            } else {
                Automorphism::flip(n)
            }
        }
        (GradingLabel::Mt { eta: a, .. }, GradingLabel::Mt { eta: b, .. }) => {
            Automorphism::conjugation(sign_matrix(n, a, b))?
        }
        _ => unreachable!("isomorphic labels share their variant"),
    };
    let iso = GradedIso {
        automorphism,
        target: to.clone(),
    };
    let source = standard_grading(group, n, from)?;
    let target = standard_grading(group, n, to)?;
    if source.transform(&iso.automorphism) != target {
        return Err(Error::Normalize(format!(
            "certificate {from} -> {to} failed verification"
        )));
    }
    Ok(iso)
}

/// `diag(a_1, ..., a_n)` with `a_n = 1`, `a_{n-i} = e_1 ... e_i` for
/// `i <= p` and `a_1 = ... = a_{n-p} = e_1 ... e_p`, where `e_i = -1`
/// exactly when the `i`-th entries differ.
fn sign_matrix(n: usize, a: &[GroupElement], b: &[GroupElement]) -> UTMatrix {
    let p = reducible_prefix(n);
    let mut diag = vec![1i64; n];
    let mut acc = 1i64;
    for i in 1..=p {
        if a[i - 1] != b[i - 1] {
            acc = -acc;
        }
        diag[n - i - 1] = acc;
    }
    for d in diag.iter_mut().take(n - p) {
        *d = acc;
    }
    UTMatrix::diagonal(&diag.into_iter().map(int).collect::<Vec<_>>())
}

/// Isomorphism from the standard grading of `label` onto its canonical one.
pub fn canonical_isomorphism(
    group: &FiniteAbelianGroup,
    n: usize,
    label: &GradingLabel,
) -> Result<(CanonicalLabel, GradedIso)> {
    let c = canonical(group, n, label)?;
    let iso = explicit_isomorphism(group, n, label, c.label())?;
    Ok((c, iso))
}

/// All sequences in `G^len`, lexicographically.
pub fn sequences(group: &FiniteAbelianGroup, len: usize) -> Vec<Vec<GroupElement>> {
    product(&vec![group.elements(); len])
}

fn product(choices: &[Vec<GroupElement>]) -> Vec<Vec<GroupElement>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |g| {
                    let mut s = prefix.clone();
                    s.push(g.clone());
                    s
                })
            })
            .collect();
    }
    out
}

/// One canonical label per isomorphism class of gradings of `UJ_n` by `G`:
/// elementary classes by `eta`, then mirror-type classes by `(t, eta)`.
pub fn enumerate_classes(group: &FiniteAbelianGroup, n: usize) -> Vec<CanonicalLabel> {
    assert!(n >= 1, "UJ_n needs n >= 1");
    let mut out: Vec<CanonicalLabel> = sequences(group, n - 1)
        .into_iter()
        .filter(|eta| rev(eta).as_slice() >= eta.as_slice())
        .map(|eta| CanonicalLabel(GradingLabel::Elementary(eta)))
        .collect();
    if n < 2 {
        return out;
    }
    let p = reducible_prefix(n);
    for t in group.involutions() {
        let reps: Vec<GroupElement> = group
            .elements()
            .into_iter()
            .filter(|g| coset_min(group, &t, g) == *g)
            .collect();
        let mut choices = vec![reps; p];
        if n % 2 == 0 {
            choices.push(group.elements());
        }
        for eta in product(&choices) {
            out.push(CanonicalLabel(GradingLabel::Mt { t: t.clone(), eta }));
        }
    }
    out
}

/// `(|G|^{n-1} + |G|^{ceil((n-1)/2)}) / 2`.
pub fn count_elementary(order: u64, n: usize) -> u128 {
    let g = order as u128;
    // palindromes of length n-1 are fixed by the reversal; ceil((n-1)/2) = floor(n/2)
    (g.pow(n as u32 - 1) + g.pow(n as u32 / 2)) / 2
}

/// Number of mirror-type classes: per involution, `(|G|/2)^{(n-1)/2}` for odd
/// `n` and `(|G|/2)^{(n-2)/2} |G|` for even `n`.
pub fn count_mt(group: &FiniteAbelianGroup, n: usize) -> u128 {
    if n < 2 {
        return 0;
    }
    let g = group.order() as u128;
    let per_t = if n % 2 == 1 {
        (g / 2).pow((n as u32 - 1) / 2)
    } else {
        (g / 2).pow((n as u32 - 2) / 2) * g
    };
    group.involutions().len() as u128 * per_t
}

/// `(degree, dimension)` for every component.
pub fn dimension_profile(grading: &Grading) -> Vec<(GroupElement, usize)> {
    grading
        .components()
        .iter()
        .map(|c| (c.degree.clone(), c.space.dim()))
        .collect()
}

/// One census line: variant, label and component dimensions.
pub fn census_line(group: &FiniteAbelianGroup, n: usize, label: &CanonicalLabel) -> Result<String> {
    let grading = standard_grading(group, n, label.label())?;
    let kind = if label.label().is_elementary() {
        "elementary"
    } else {
        "mt"
    };
    let dims = dimension_profile(&grading)
        .into_iter()
        .map(|(g, d)| format!("{g}:{d}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(format!("{kind:<10} {label:<24} {dims}"))
}

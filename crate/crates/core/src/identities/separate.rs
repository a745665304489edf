//! Graded identities that tell two non-isomorphic standard gradings apart.

use std::fmt;

use crate::classify::{canonical, labels_isomorphic};
use crate::error::{Error, Result};
use crate::grading::{standard_grading, Grading, GradingLabel};
use crate::group::{FiniteAbelianGroup, GroupElement};

use super::check::IdentityChecker;
use super::sequences::{act, f_mu, tau_orbit, tau_set};
use super::term::JordanTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoldsIn {
    First,
    Second,
}

impl HoldsIn {
    fn swap(self) -> Self {
        match self {
            HoldsIn::First => HoldsIn::Second,
            HoldsIn::Second => HoldsIn::First,
        }
    }
}

/// How the separating term was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `f_mu` for a sequence good for one elementary label and bad for the other.
    GoodSequence,
    /// `(x^{(t)})^n`, nonzero only on a mirror-type grading with that `t`.
    Power,
    /// A separator of the gradings induced on `G / <t>`, each variable
    /// replaced by the sum of its two lifts.
    LiftedQuotient,
    /// The chain of associators for labels differing only in the last entry.
    AssociatorChain,
    /// Bounded search over small multilinear terms.
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::GoodSequence => "good-sequence",
            Method::Power => "power",
            Method::LiftedQuotient => "lifted-quotient",
            Method::AssociatorChain => "associator-chain",
            Method::Search => "search",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Separation {
    pub term: JordanTerm,
    pub holds_in: HoldsIn,
    pub method: Method,
}

/// A term that is a graded identity of exactly one of the standard gradings
/// of `a` and `b`. Both claims are checked before return.
pub fn separating_identity(
    group: &FiniteAbelianGroup,
    n: usize,
    a: &GradingLabel,
    b: &GradingLabel,
) -> Result<Separation> {
    if labels_isomorphic(group, n, a, b)? {
        return Err(Error::LabelsIsomorphic);
    }
    let ga = standard_grading(group, n, a)?;
    let gb = standard_grading(group, n, b)?;
    let ca = canonical(group, n, a)?.into_label();
    let cb = canonical(group, n, b)?.into_label();
    let mut first = IdentityChecker::new(&ga);
    let mut second = IdentityChecker::new(&gb);
    if let Some(candidate) = by_construction(group, n, &ca, &cb)? {
        if confirms(&mut first, &mut second, &candidate)? {
            return Ok(candidate);
        }
    }
    search(group, n, &mut first, &mut second)
}

fn confirms(
    first: &mut IdentityChecker,
    second: &mut IdentityChecker,
    s: &Separation,
) -> Result<bool> {
    let in_first = first.check(&s.term)?;
    let in_second = second.check(&s.term)?;
    Ok(match s.holds_in {
        HoldsIn::First => in_first && !in_second,
        HoldsIn::Second => in_second && !in_first,
    })
}

fn power(t: &GroupElement, n: usize, holds_in: HoldsIn) -> Separation {
    Separation {
        term: JordanTerm::var(1, t.clone()).power(n),
        holds_in,
        method: Method::Power,
    }
}

fn by_construction(
    group: &FiniteAbelianGroup,
    n: usize,
    a: &GradingLabel,
    b: &GradingLabel,
) -> Result<Option<Separation>> {
    use GradingLabel::*;
    Ok(match (a, b) {
        (Elementary(x), Elementary(y)) => {
            let (term, holds_in) = elementary_separator(group, x, y);
            Some(Separation {
                term,
                holds_in,
                method: Method::GoodSequence,
            })
        }
        (Mt { t, .. }, Elementary(_)) => Some(power(t, n, HoldsIn::Second)),
        (Elementary(_), Mt { t, .. }) => Some(power(t, n, HoldsIn::First)),
        (Mt { t: t1, .. }, Mt { t: t2, .. }) if t1 != t2 => Some(power(t1, n, HoldsIn::Second)),
        (Mt { t, eta: x }, Mt { eta: y, .. }) => {
            let quotient = group.quotient_mod_involution(t)?;
            let phi = quotient.projection();
            let induced = |eta: &[GroupElement]| -> Vec<GroupElement> {
                (1..n).map(|k| phi.apply(&eta[k.min(n - k) - 1])).collect()
            };
            let (x0, y0) = (induced(x), induced(y));
            if x0 != y0 {
                let (f, holds_in) = elementary_separator(quotient.group(), &x0, &y0);
                let term = f.substitute(&|v| {
                    let g = quotient.section(&v.degree).clone();
                    let gt = group.add(&g, t);
                    JordanTerm::var(v.id, g).add(&JordanTerm::var(v.id, gt))
                });
                Some(Separation {
                    term,
                    holds_in,
                    method: Method::LiftedQuotient,
                })
            } else {
                Some(Separation {
                    term: associator_chain(group, n, t, x),
                    holds_in: HoldsIn::Second,
                    method: Method::AssociatorChain,
                })
            }
        }
    })
}

/// For elementary labels that are neither equal nor reversed: `f_{p eta}`
/// for some `p` whose image is outside the orbit of the other label.
fn elementary_separator(
    group: &FiniteAbelianGroup,
    x: &[GroupElement],
    y: &[GroupElement],
) -> (JordanTerm, HoldsIn) {
    let (oy, ox) = (tau_orbit(y), tau_orbit(x));
    for p in tau_set(x.len()) {
        let mu = act(&p, x);
        if !oy.contains(&mu) {
            // good for x, bad for y
            return (f_mu(group, &mu), HoldsIn::Second);
        }
    }
    for p in tau_set(y.len()) {
        let mu = act(&p, y);
        if !ox.contains(&mu) {
            return (f_mu(group, &mu), HoldsIn::Second.swap());
        }
    }
    unreachable!("sequences with equal orbits are equal or reversed")
}

/// `z_1^{(1)} o ... o z_q^{(q)} o z_{q-1}^{(q+1)} o ... o z_1^{(n-1)}` with
/// `z_i^{(j)} = (x_{3j-2}, x_{3j-1}, x_{3j})` of degrees `(t, t, g_i)`.
///
/// The first two arguments have degree `t`, not the identity: identity-degree
/// elements of a mirror-type grading are symmetric, and associators built from
/// them never reach the middle unit, so that version vanishes on both sides.
pub fn associator_chain(group: &FiniteAbelianGroup, n: usize, t: &GroupElement, eta: &[GroupElement]) -> JordanTerm {
    let factors: Vec<JordanTerm> = (1..n)
        .map(|j| {
            let i = j.min(n - j);
            let j = j as u32;
            JordanTerm::associator(
                &JordanTerm::var(3 * j - 2, t.clone()),
                &JordanTerm::var(3 * j - 1, t.clone()),
                &JordanTerm::var(3 * j, group.sum([&eta[i - 1], t, t])),
            )
        })
        .collect();
    JordanTerm::left_normed(&factors)
}

/// Small candidates in a fixed order: single variables, powers, `f_mu`, and
/// products of up to `n` factors drawn from variables and associators.
fn search(
    group: &FiniteAbelianGroup,
    n: usize,
    first: &mut IdentityChecker,
    second: &mut IdentityChecker,
) -> Result<Separation> {
    let elements = group.elements();
    let mut candidates: Vec<JordanTerm> = Vec::new();
    for g in &elements {
        candidates.push(JordanTerm::var(1, g.clone()));
    }
    for k in 2..=n {
        for g in &elements {
            candidates.push(JordanTerm::var(1, g.clone()).power(k));
        }
    }
    let mut atoms: Vec<(usize, Box<dyn Fn(u32) -> JordanTerm>)> = Vec::new();
    for g in &elements {
        let g = g.clone();
        atoms.push((1, Box::new(move |base| JordanTerm::var(base, g.clone()))));
    }
    for a in &elements {
        for b in &elements {
            for c in &elements {
                let (a, b, c) = (a.clone(), b.clone(), c.clone());
                atoms.push((
                    3,
                    Box::new(move |base| {
                        JordanTerm::associator(
                            &JordanTerm::var(base, a.clone()),
                            &JordanTerm::var(base + 1, b.clone()),
                            &JordanTerm::var(base + 2, c.clone()),
                        )
                    }),
                ));
            }
        }
    }
    let mut products: Vec<Vec<usize>> = (0..atoms.len()).map(|k| vec![k]).collect();
    for len in 1..=n.min(3) {
        if len > 1 {
            products = products
                .iter()
                .flat_map(|p| (0..atoms.len()).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                }))
                .collect();
        }
        for p in &products {
            let mut base = 1;
            let factors: Vec<JordanTerm> = p
                .iter()
                .map(|&k| {
                    let (width, make) = &atoms[k];
                    let f = make(base);
                    base += *width as u32;
                    f
                })
                .collect();
            candidates.push(JordanTerm::left_normed(&factors));
        }
        for term in candidates.drain(..) {
            let in_first = first.check(&term)?;
            let in_second = second.check(&term)?;
            if in_first != in_second {
                return Ok(Separation {
                    term,
                    holds_in: if in_first { HoldsIn::First } else { HoldsIn::Second },
                    method: Method::Search,
                });
            }
        }
    }
    Err(Error::NoSeparator(format!(
        "no separating term of length at most {} found",
        n.min(3)
    )))
}

/// Checks a claimed separation against two gradings.
pub fn verify_separation(a: &Grading, b: &Grading, s: &Separation) -> Result<bool> {
    confirms(&mut IdentityChecker::new(a), &mut IdentityChecker::new(b), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::enumerate_classes;
    use crate::identities::check::is_graded_identity;

    fn z(d: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(d)
    }

    fn seq(g: &FiniteAbelianGroup, vs: &[i64]) -> Vec<GroupElement> {
        vs.iter().map(|&v| g.element(&[v]).unwrap()).collect()
    }

    fn mt(g: &FiniteAbelianGroup, t: i64, vs: &[i64]) -> GradingLabel {
        GradingLabel::Mt {
            t: g.element(&[t]).unwrap(),
            eta: seq(g, vs),
        }
    }

    #[test]
    fn trivial_versus_classical() {
        let g = z(2);
        let triv = GradingLabel::Elementary(seq(&g, &[0]));
        let classical = GradingLabel::Elementary(seq(&g, &[1]));
        let s = separating_identity(&g, 2, &triv, &classical).unwrap();
        // (0) is good for the trivial label only: degree-0 associators vanish
        // on the diagonal component of the classical grading
        assert_eq!(s.method, Method::GoodSequence);
        assert_eq!(s.term, f_mu(&g, &seq(&g, &[0])));
        assert_eq!(s.holds_in, HoldsIn::Second);
    }

    #[test]
    fn mt_versus_elementary_uses_the_power() {
        let g = z(4);
        let s = separating_identity(&g, 3, &mt(&g, 2, &[1]), &GradingLabel::Elementary(seq(&g, &[1, 1]))).unwrap();
        assert_eq!(s.method, Method::Power);
        assert_eq!(s.holds_in, HoldsIn::Second);
        assert_eq!(s.term, JordanTerm::var(1, g.element(&[2]).unwrap()).power(3));
    }

    #[test]
    fn chain_for_last_entry() {
        let g = z(4);
        let s = separating_identity(&g, 4, &mt(&g, 2, &[1, 1]), &mt(&g, 2, &[1, 3])).unwrap();
        assert_eq!(s.method, Method::AssociatorChain);
        assert_eq!(s.holds_in, HoldsIn::Second);
    }

    #[test]
    fn chain_separates_every_last_entry_change() {
        for (d, n) in [(2u64, 4usize), (4, 4), (2, 6)] {
            let g = z(d);
            let t = g.element(&[d as i64 / 2]).unwrap();
            let q = n / 2;
            for x in crate::classify::sequences(&g, q) {
                let a = standard_grading(&g, n, &GradingLabel::Mt { t: t.clone(), eta: x.clone() }).unwrap();
                let f = associator_chain(&g, n, &t, &x);
                assert!(!is_graded_identity(&a, &f).unwrap());
                for last in g.elements().into_iter().filter(|l| *l != x[q - 1]) {
                    let mut y = x.clone();
                    y[q - 1] = last;
                    let b = standard_grading(&g, n, &GradingLabel::Mt { t: t.clone(), eta: y }).unwrap();
                    assert!(is_graded_identity(&b, &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn lifted_quotient_separator() {
        let g = z(4);
        let s = separating_identity(&g, 3, &mt(&g, 2, &[0]), &mt(&g, 2, &[1])).unwrap();
        assert_eq!(s.method, Method::LiftedQuotient);
    }

    #[test]
    fn associative_versus_scalar() {
        let g = z(2);
        let s = separating_identity(&g, 2, &mt(&g, 1, &[0]), &mt(&g, 1, &[1])).unwrap();
        assert_eq!(s.method, Method::AssociatorChain);
        let assoc = standard_grading(&g, 2, &mt(&g, 1, &[0])).unwrap();
        let scalar = standard_grading(&g, 2, &mt(&g, 1, &[1])).unwrap();
        let (a, b) = (
            is_graded_identity(&assoc, &s.term).unwrap(),
            is_graded_identity(&scalar, &s.term).unwrap(),
        );
        assert_ne!(a, b);
    }

    #[test]
    fn isomorphic_labels_have_no_separator() {
        let g = z(3);
        let a = GradingLabel::Elementary(seq(&g, &[1, 2]));
        let b = GradingLabel::Elementary(seq(&g, &[2, 1]));
        assert!(matches!(separating_identity(&g, 3, &a, &b), Err(Error::LabelsIsomorphic)));
    }

    #[test]
    fn all_pairs_small_cases() {
        for (g, n) in [(z(2), 2), (z(2), 3), (z(3), 3), (z(4), 2), (z(4), 3)] {
            let classes = enumerate_classes(&g, n);
            for (i, a) in classes.iter().enumerate() {
                for b in &classes[i + 1..] {
                    let s = separating_identity(&g, n, a.label(), b.label()).unwrap();
                    let ga = standard_grading(&g, n, a.label()).unwrap();
                    let gb = standard_grading(&g, n, b.label()).unwrap();
                    assert!(verify_separation(&ga, &gb, &s).unwrap());
                }
            }
        }
    }
}

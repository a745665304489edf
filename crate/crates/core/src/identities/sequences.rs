//! Permutations descending to 1 and then ascending, Jordan good sequences,
//! and the polynomials `f_mu` that detect them.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::grading::elementary_degree;
use crate::group::{FiniteAbelianGroup, GroupElement};

use super::term::JordanTerm;

/// Permutations `s` of `1..=m` (one-line, 1-based) with
/// `s(1) > ... > s(t) = 1 < s(t+1) < ... < s(m)`, in lexicographic order.
pub fn tau_set(m: usize) -> Vec<Vec<usize>> {
    assert!(m >= 1);
    let mut out = Vec::with_capacity(1 << (m - 1));
    // each of 2..=m sits either before the 1 (descending) or after it (ascending)
    for mask in 0u64..(1u64 << (m - 1)) {
        let before: Vec<usize> = (2..=m).filter(|v| mask >> (v - 2) & 1 == 1).collect();
        let after: Vec<usize> = (2..=m).filter(|v| mask >> (v - 2) & 1 == 0).collect();
        let mut s: Vec<usize> = before.into_iter().rev().collect();
        s.push(1);
        s.extend(after);
        out.push(s);
    }
    out.sort();
    out
}

/// `(s_{p^{-1}(1)}, ..., s_{p^{-1}(m)})`.
pub fn act<T: Clone>(perm: &[usize], s: &[T]) -> Vec<T> {
    assert_eq!(perm.len(), s.len());
    let mut out: Vec<Option<T>> = vec![None; s.len()];
    for (k, &p) in perm.iter().enumerate() {
        out[p - 1] = Some(s[k].clone());
    }
    out.into_iter().map(|x| x.expect("permutation")).collect()
}

/// `{p s : p in tau_set(m)}`.
pub fn tau_orbit<T: Clone + Ord>(s: &[T]) -> BTreeSet<Vec<T>> {
    if s.is_empty() {
        return [Vec::new()].into_iter().collect();
    }
    tau_set(s.len()).iter().map(|p| act(p, s)).collect()
}

/// `s = s'` or `s = rev s'`.
pub fn rev_equivalent<T: PartialEq + Clone>(s: &[T], t: &[T]) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            expected: s.len(),
            found: t.len(),
        });
    }
    Ok(s == t || s.iter().eq(t.iter().rev()))
}

/// For every `p, q'` there are `p', q` with `p s = p' s'` and `q s = q' s'`.
pub fn tau_condition<T: Clone + Ord>(s: &[T], t: &[T]) -> bool {
    let perms = tau_set(s.len().max(1));
    if s.is_empty() {
        return t.is_empty();
    }
    let forward = perms
        .iter()
        .all(|p| perms.iter().any(|p2| act(p, s) == act(p2, t)));
    let backward = perms
        .iter()
        .all(|q2| perms.iter().any(|q| act(q, s) == act(q2, t)));
    forward && backward
}

/// Whether strictly upper matrix units `r_1, ..., r_m` with `deg r_i = mu_i`
/// exist whose left-normed Jordan product is nonzero.
pub fn is_jordan_good(group: &FiniteAbelianGroup, eta: &[GroupElement], mu: &[GroupElement]) -> bool {
    let n = eta.len() + 1;
    if mu.is_empty() || mu.len() > n - 1 {
        return false;
    }
    let deg = |i: usize, j: usize| elementary_degree(group, eta, i, j);
    // a Jordan product of strictly upper units is a single unit or zero:
    // e_ij o e_kl is e_il when j = k and e_kj when l = i
    let mut frontier: HashSet<(usize, usize)> = HashSet::new();
    for i in 1..n {
        for j in i + 1..=n {
            if deg(i, j) == mu[0] {
                frontier.insert((i, j));
            }
        }
    }
    for a in &mu[1..] {
        let mut next = HashSet::new();
        for &(i, j) in &frontier {
            for l in j + 1..=n {
                if deg(j, l) == *a {
                    next.insert((i, l));
                }
            }
            for k in 1..i {
                if deg(k, i) == *a {
                    next.insert((k, j));
                }
            }
        }
        if next.is_empty() {
            return false;
        }
        frontier = next;
    }
    !frontier.is_empty()
}

/// `f_mu`: left-normed product whose `h`-th factor is `x_h` of degree `a_h`,
/// or the associator `(x_{3h-2}, x_{3h-1}, x_{3h})` of identity degree when
/// `a_h` is the identity.
pub fn f_mu(group: &FiniteAbelianGroup, mu: &[GroupElement]) -> JordanTerm {
    let e = group.identity();
    let factors: Vec<JordanTerm> = mu
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let h = k as u32 + 1;
            if *a == e {
                JordanTerm::associator(
                    &JordanTerm::var(3 * h - 2, e.clone()),
                    &JordanTerm::var(3 * h - 1, e.clone()),
                    &JordanTerm::var(3 * h, e.clone()),
                )
            } else {
                JordanTerm::var(h, a.clone())
            }
        })
        .collect();
    JordanTerm::left_normed(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::sequences;
    use crate::grading::elementary_grading;
    use crate::identities::check::is_graded_identity;
    use crate::matrix::UTMatrix;

    fn z(d: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(d)
    }

    fn seq(g: &FiniteAbelianGroup, vs: &[i64]) -> Vec<GroupElement> {
        vs.iter().map(|&v| g.element(&[v]).unwrap()).collect()
    }

    fn permutations(m: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..m {
            let mut next = Vec::new();
            for p in &out {
                for v in (1..=m).filter(|v| !p.contains(v)) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    fn in_tau_by_definition(s: &[usize]) -> bool {
        let t = s.iter().position(|&v| v == 1).unwrap();
        s[..=t].windows(2).all(|w| w[0] > w[1]) && s[t..].windows(2).all(|w| w[0] < w[1])
    }

    #[test]
    fn tau_set_matches_definition() {
        for m in 1..=7 {
            let expected: Vec<Vec<usize>> =
                permutations(m).into_iter().filter(|s| in_tau_by_definition(s)).collect();
            let mut got = tau_set(m);
            got.sort();
            assert_eq!(got, expected);
            assert_eq!(got.len(), 1 << (m - 1));
        }
        assert_eq!(tau_set(3), vec![vec![1, 2, 3], vec![2, 1, 3], vec![3, 1, 2], vec![3, 2, 1]]);
        assert_eq!(tau_set(2).len(), 2);
    }

    #[test]
    fn action_uses_the_inverse() {
        // p = (3,1,2): p^{-1}(1) = 2, p^{-1}(2) = 3, p^{-1}(3) = 1
        assert_eq!(act(&[3, 1, 2], &['a', 'b', 'c']), vec!['b', 'c', 'a']);
    }

    #[test]
    fn rev_equivalence_examples() {
        assert!(rev_equivalent(&['a', 'b', 'c'], &['c', 'b', 'a']).unwrap());
        assert!(rev_equivalent(&['a', 'b'], &['a', 'b']).unwrap());
        assert!(!rev_equivalent(&['a', 'a', 'b'], &['a', 'b', 'b']).unwrap());
        assert!(rev_equivalent(&['a'], &['a', 'b']).is_err());
    }

    #[test]
    fn f_mu_shapes() {
        let g = z(3);
        let one = g.element(&[1]).unwrap();
        let e = g.identity();
        assert_eq!(f_mu(&g, &[one.clone()]), JordanTerm::var(1, one.clone()));
        let a = |i| JordanTerm::var(i, e.clone());
        assert_eq!(f_mu(&g, &[e.clone()]), JordanTerm::associator(&a(1), &a(2), &a(3)));
        assert_eq!(
            f_mu(&g, &[one.clone(), e.clone()]),
            JordanTerm::var(1, one).circ(&JordanTerm::associator(&a(4), &a(5), &a(6)))
        );
        assert!(f_mu(&g, &seq(&g, &[1, 0, 2, 0])).is_multilinear());
    }

    #[test]
    fn good_sequence_examples() {
        let g = z(3);
        let eta = seq(&g, &[1, 2]);
        assert!(is_jordan_good(&g, &eta, &seq(&g, &[2, 1])));
        assert!(!is_jordan_good(&g, &eta, &seq(&g, &[1, 1])));
        assert!(is_jordan_good(&g, &eta, &eta));
    }

    /// Oracle for goodness: every tuple of units, left-normed product by matrices.
    fn good_by_matrices(g: &FiniteAbelianGroup, eta: &[GroupElement], mu: &[GroupElement]) -> bool {
        let n = eta.len() + 1;
        let units: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let choices: Vec<Vec<UTMatrix>> = mu
            .iter()
            .map(|a| {
                units
                    .iter()
                    .filter(|&&(i, j)| elementary_degree(g, eta, i, j) == *a)
                    .map(|&(i, j)| UTMatrix::unit(n, i, j))
                    .collect()
            })
            .collect();
        fn rec(choices: &[Vec<UTMatrix>], acc: Option<UTMatrix>) -> bool {
            match choices.split_first() {
                None => acc.is_some_and(|a| !a.is_zero()),
                Some((first, rest)) => first.iter().any(|r| {
                    let next = match &acc {
                        None => r.clone(),
                        Some(a) => a.circ(r),
                    };
                    !next.is_zero() && rec(rest, Some(next))
                }),
            }
        }
        rec(&choices, None)
    }

    #[test]
    fn unit_search_matches_matrix_oracle() {
        for d in [2u64, 3] {
            let g = z(d);
            for n in 2..=4 {
                for eta in sequences(&g, n - 1) {
                    for m in 1..n {
                        for mu in sequences(&g, m) {
                            assert_eq!(is_jordan_good(&g, &eta, &mu), good_by_matrices(&g, &eta, &mu));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bad_sequences_are_exactly_identities() {
        let g = z(3);
        for n in 2..=4 {
            for eta in sequences(&g, n - 1) {
                let gr = elementary_grading(&g, &eta).unwrap();
                for m in 1..n {
                    for mu in sequences(&g, m) {
                        let id = is_graded_identity(&gr, &f_mu(&g, &mu)).unwrap();
                        assert_eq!(id, !is_jordan_good(&g, &eta, &mu), "eta={eta:?} mu={mu:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn full_length_good_sequences_are_tau_images() {
        let g = z(3);
        for n in 2..=5 {
            for eta in sequences(&g, n - 1) {
                let orbit = tau_orbit(&eta);
                for mu in sequences(&g, n - 1) {
                    assert_eq!(is_jordan_good(&g, &eta, &mu), orbit.contains(&mu));
                }
            }
        }
    }

    #[test]
    fn tau_condition_is_reversal() {
        let alphabet = ['a', 'b', 'c'];
        for m in 1..=4 {
            let words: Vec<Vec<char>> = (0..3usize.pow(m as u32))
                .map(|mut k| {
                    (0..m)
                        .map(|_| {
                            let c = alphabet[k % 3];
                            k /= 3;
                            c
                        })
                        .collect()
                })
                .collect();
            for s in &words {
                for t in &words {
                    assert_eq!(rev_equivalent(s, t).unwrap(), tau_condition(s, t));
                }
            }
        }
    }
}

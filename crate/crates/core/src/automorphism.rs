//! Automorphisms of `UJ_n`: conjugation by an invertible upper-triangular
//! matrix, optionally preceded by the mirror involution.

use rand::Rng;

use crate::error::Result;
use crate::grading::{Grading, GradingLabel};
use crate::matrix::{int, ratio, Scalar, UTMatrix};

/// `x -> P (flip ? mirror(x) : x) P^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    p: UTMatrix,
    p_inv: UTMatrix,
    flip: bool,
}

impl Automorphism {
    pub fn new(p: UTMatrix, flip: bool) -> Result<Self> {
        let p_inv = p.inverse()?;
        Ok(Self { p, p_inv, flip })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            p: UTMatrix::identity(n),
            p_inv: UTMatrix::identity(n),
            flip: false,
        }
    }

    pub fn conjugation(p: UTMatrix) -> Result<Self> {
        Self::new(p, false)
    }

    pub fn flip(n: usize) -> Self {
        Self {
            flip: true,
            ..Self::identity(n)
        }
    }

    pub fn size(&self) -> usize {
        self.p.size()
    }

    pub fn matrix(&self) -> &UTMatrix {
        &self.p
    }

    pub fn is_flip(&self) -> bool {
        self.flip
    }

    pub fn apply(&self, x: &UTMatrix) -> UTMatrix {
        let y = if self.flip { x.mirror() } else { x.clone() };
        self.p.matmul(&y).matmul(&self.p_inv)
    }

    /// `next o self`.
    pub fn then(&self, next: &Automorphism) -> Automorphism {
        if next.flip {
            // mirror reverses associative products: mirror(P y P^-1) = mirror(P)^-1 mirror(y) mirror(P)
            let mp = self.p.mirror();
            let mp_inv = self.p_inv.mirror();
            Automorphism {
                p: next.p.matmul(&mp_inv),
                p_inv: mp.matmul(&next.p_inv),
                flip: !self.flip,
            }
        } else {
            Automorphism {
                p: next.p.matmul(&self.p),
                p_inv: self.p_inv.matmul(&next.p_inv),
                flip: self.flip,
            }
        }
    }

    pub fn inverse(&self) -> Automorphism {
        if self.flip {
            Automorphism {
                p: self.p.mirror(),
                p_inv: self.p_inv.mirror(),
                flip: true,
            }
        } else {
            Automorphism {
                p: self.p_inv.clone(),
                p_inv: self.p.clone(),
                flip: false,
            }
        }
    }

    /// The same automorphism acting on the middle block of `UJ_{n+2}`,
    /// extended by `diag(1, P, 1)` (and the mirror of `UJ_{n+2}` when flipping).
    pub fn extend_to_middle(&self) -> Automorphism {
        let n = self.size() + 2;
        let embed = |m: &UTMatrix| {
            let mut out = UTMatrix::identity(n);
            for (i, j, v) in m.nonzero_entries() {
                out.set(i + 1, j + 1, v);
            }
            out
        };
        Automorphism {
            p: embed(&self.p),
            p_inv: embed(&self.p_inv),
            flip: self.flip,
        }
    }

    /// A random automorphism with unit-scale rational entries.
    pub fn random<R: Rng + ?Sized>(n: usize, flip: bool, rng: &mut R) -> Automorphism {
        const DIAG: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];
        let mut p = UTMatrix::zero(n);
        for i in 1..=n {
            let (a, b) = DIAG[rng.gen_range(0..DIAG.len())];
            p.set(i, i, ratio(a, b));
            for j in i + 1..=n {
                let v: Scalar = match rng.gen_range(0..4) {
                    0 => int(0),
                    1 => ratio(rng.gen_range(-2..=2), 2),
                    _ => int(rng.gen_range(-2..=2)),
                };
                p.set(i, j, v);
            }
        }
        Automorphism::new(p, flip).expect("nonzero diagonal")
    }
}

/// A graded isomorphism onto the standard grading of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIso {
    pub automorphism: Automorphism,
    pub target: GradingLabel,
}

impl GradedIso {
    pub fn matrix(&self) -> &UTMatrix {
        self.automorphism.matrix()
    }

    pub fn flip(&self) -> bool {
        self.automorphism.is_flip()
    }

    /// Checks basis vector by basis vector that each component of `source`
    /// lands in the component of equal degree of `target`.
    pub fn validate(&self, source: &Grading, target: &Grading) -> bool {
        if source.size() != target.size() || source.group() != target.group() {
            return false;
        }
        source.components().iter().all(|c| {
            let Some(dst) = target.component(&c.degree) else {
                return false;
            };
            dst.dim() == c.space.dim()
                && c
                    .space
                    .basis()
                    .iter()
                    .all(|b| dst.contains(&self.automorphism.apply(b)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample(n: usize) -> Vec<UTMatrix> {
        let mut out = Vec::new();
        for (k, (i, j)) in crate::matrix::slots(n).into_iter().enumerate() {
            let mut m = UTMatrix::unit(n, i, j);
            m.set(1, n, int(k as i64 + 1));
            out.push(m);
        }
        out
    }

    #[test]
    fn composition_and_inverse_agree_with_pointwise_application() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5 {
            for f1 in [false, true] {
                for f2 in [false, true] {
                    let a = Automorphism::random(n, f1, &mut rng);
                    let b = Automorphism::random(n, f2, &mut rng);
                    let ab = a.then(&b);
                    for x in sample(n) {
                        assert_eq!(ab.apply(&x), b.apply(&a.apply(&x)));
                        assert_eq!(a.inverse().apply(&a.apply(&x)), x);
                    }
                }
            }
        }
    }

    #[test]
    fn automorphisms_preserve_jordan_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let xs = sample(4);
        for flip in [false, true] {
            let a = Automorphism::random(4, flip, &mut rng);
            for x in &xs {
                for y in &xs {
                    assert_eq!(a.apply(&x.circ(y)), a.apply(x).circ(&a.apply(y)));
                }
            }
        }
    }

    #[test]
    fn middle_extension_matches_block_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for flip in [false, true] {
            let inner = Automorphism::random(3, flip, &mut rng);
            let outer = inner.extend_to_middle();
            for (i, j) in crate::matrix::slots(3) {
                let x = UTMatrix::unit(3, i, j);
                let y = inner.apply(&x);
                let big = outer.apply(&UTMatrix::unit(5, i + 1, j + 1));
                for (a, b) in crate::matrix::slots(5) {
                    let expect = if (2..=4).contains(&a) && (2..=4).contains(&b) {
                        y.get(a - 1, b - 1).clone()
                    } else {
                        int(0)
                    };
                    assert_eq!(big.get(a, b), &expect);
                }
            }
            let e1 = &UTMatrix::unit(5, 1, 1) + &UTMatrix::unit(5, 5, 5);
            assert_eq!(outer.apply(&e1), e1);
        }
    }
}

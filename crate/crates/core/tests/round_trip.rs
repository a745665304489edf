//! Normalization recovers the class of every standard grading after random
//! automorphisms, and the returned isomorphism maps components correctly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ujgrade::classify::{canonical, enumerate_classes};
use ujgrade::gradfile::{read_grading, write_grading};
use ujgrade::grading::standard_grading;
use ujgrade::{canonicalize, Automorphism, FiniteAbelianGroup};

fn groups() -> Vec<FiniteAbelianGroup> {
    vec![
        FiniteAbelianGroup::cyclic(1),
        FiniteAbelianGroup::cyclic(2),
        FiniteAbelianGroup::cyclic(3),
        FiniteAbelianGroup::cyclic(4),
        FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
    ]
}

#[test]
fn every_class_survives_twenty_random_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for g in groups() {
        for n in 1..=5 {
            for class in enumerate_classes(&g, n) {
                let std = standard_grading(&g, n, class.label()).unwrap();
                let expected = canonical(&g, n, class.label()).unwrap();
                for k in 0..20 {
                    let phi = Automorphism::random(n, k % 2 == 1, &mut rng);
                    let scrambled = std.transform(&phi);
                    let (found, iso) = canonicalize(&scrambled).unwrap();
                    assert_eq!(found, expected, "{g} n={n} {class}");
                    assert!(iso.validate(&scrambled, &std), "{g} n={n} {class}");
                }
            }
        }
    }
}

#[test]
fn file_round_trip_then_normalize() {
    let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for class in enumerate_classes(&g, 3) {
        let std = standard_grading(&g, 3, class.label()).unwrap();
        let scrambled = std.transform(&Automorphism::random(3, true, &mut rng));
        let reread = read_grading(&write_grading(&scrambled)).unwrap();
        assert_eq!(reread, scrambled);
        assert_eq!(canonicalize(&reread).unwrap().0, class);
    }
}

//! Translation and relabelling invariance of the root-difference sums.

use num_complex::Complex64;
use num_traits::Zero;
use octavic::binary_forms::{discriminant, gl2_action, random_form, Matrix2};
use octavic::tsuyumine::{binomial_coefficients, roots_of_octavic, tsuyumine_invariants, RootOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOLERANCE: f64 = 1e-9;
const CASES: usize = 50;

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// Squarefree random octavics with a nonzero leading coefficient.
fn octavics() -> Vec<[f64; 9]> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < CASES {
        seed += 1;
        let f = random_form(8, 6, seed);
        if f.coeff(8).is_zero() || discriminant(&f).unwrap().is_zero() {
            continue;
        }
        out.push(binomial_coefficients(&f).unwrap());
    }
    out
}

#[test]
fn invariant_under_translation_and_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for a in octavics() {
        let rc = roots_of_octavic(&a, RootOptions::default()).unwrap();
        let base = tsuyumine_invariants(&rc.roots);
        let shift = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let mut moved = rc.roots;
        moved.shuffle(&mut rng);
        for z in moved.iter_mut() {
            *z += shift;
        }
        let other = tsuyumine_invariants(&moved);
        for k in 0..9 {
            let r = relative(base[k], other[k]);
            worst = worst.max(r);
            assert!(r < TOLERANCE, "I{} {} vs {} ({r:e})", k + 2, base[k], other[k]);
        }
    }
    eprintln!("worst relative deviation {worst:e}");
}

#[test]
fn translated_polynomials_give_the_same_values() {
    // f(X + cY, Y) has roots x - c; recompute them from the new coefficients
    let mut checked = 0;
    for seed in 1..=40u64 {
        let f = random_form(8, 6, seed);
        if f.coeff(8).is_zero() || discriminant(&f).unwrap().is_zero() {
            continue;
        }
        let c = (seed % 5) as i64 - 2;
        let g = gl2_action(&f, &Matrix2::from_integers(1, c, 0, 1)).unwrap();
        let rf = roots_of_octavic(&binomial_coefficients(&f).unwrap(), RootOptions::default()).unwrap();
        let rg = roots_of_octavic(&binomial_coefficients(&g).unwrap(), RootOptions::default()).unwrap();
        let a = tsuyumine_invariants(&rf.roots);
        let b = tsuyumine_invariants(&rg.roots);
        for k in 0..9 {
            assert!(relative(a[k], b[k]) < 1e-7, "seed {seed} I{}: {} vs {}", k + 2, a[k], b[k]);
        }
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn values_are_real_for_real_forms() {
    let f = random_form(8, 6, 3);
    let rc = roots_of_octavic(&binomial_coefficients(&f).unwrap(), RootOptions::default()).unwrap();
    for z in tsuyumine_invariants(&rc.roots) {
        assert!(z.im.abs() <= 1e-9 * z.norm(), "{z}");
    }
}

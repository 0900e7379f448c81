//! Experimental numeric root-difference invariants `I2, ..., I10` of an
//! octavic.
//!
//! Each `I_k` is the sum, over all relabelings of the roots, of a fixed
//! product of root differences `(ij) = xi_i - xi_j`; every distinct summand is
//! counted once (the full `S8` sum divided by the stabilizer order). Values
//! are floating point and never feed the exact pipeline.

use num_complex::Complex64;

use crate::binary_forms::BinaryForm;
use crate::error::{Error, Result};
use crate::par;

/// A factor `(i j)^e` with 0-based root indices.
pub type Factor = (usize, usize, u32);

fn block(indices: &[usize]) -> Vec<Factor> {
    let mut out = Vec::new();
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            out.push((i, j, 1));
        }
    }
    out
}

fn pairs(list: &[(usize, usize)], e: u32) -> Vec<Factor> {
    list.iter().map(|&(i, j)| (i - 1, j - 1, e)).collect()
}

fn squared(fs: Vec<Factor>) -> Vec<Factor> {
    fs.into_iter().map(|(i, j, e)| (i, j, 2 * e)).collect()
}

/// `(1234,5678)^2`.
fn two_blocks_squared() -> Vec<Factor> {
    squared([block(&[0, 1, 2, 3]), block(&[4, 5, 6, 7])].concat())
}

/// `(12)^4 (345,678)^2`.
fn i4_core() -> Vec<Factor> {
    [pairs(&[(1, 2)], 4), squared([block(&[2, 3, 4]), block(&[5, 6, 7])].concat())].concat()
}

/// Difference pattern of `I_k`, `k = 2..=10`.
pub fn pattern(k: usize) -> Vec<Factor> {
    match k {
        2 => pairs(&[(1, 3), (1, 4), (2, 3), (2, 4), (5, 7), (5, 8), (6, 7), (6, 8)], 1),
        3 => [
            pairs(&[(1, 2), (3, 4), (5, 6), (7, 8)], 2),
            pairs(&[(1, 3), (2, 4), (5, 7), (6, 8)], 1),
        ]
        .concat(),
        4 => i4_core(),
        5 => [i4_core(), pairs(&[(1, 5), (2, 6), (3, 7), (4, 8)], 1)].concat(),
        6 => two_blocks_squared(),
        7 => [two_blocks_squared(), pairs(&[(1, 5), (2, 6), (3, 7), (4, 8)], 1)].concat(),
        8 => [
            two_blocks_squared(),
            pairs(&[(1, 5), (1, 6), (2, 5), (2, 6), (3, 7), (3, 8), (4, 7), (4, 8)], 1),
        ]
        .concat(),
        9 => [
            two_blocks_squared(),
            pairs(
                &[
                    (1, 5),
                    (1, 6),
                    (1, 7),
                    (2, 6),
                    (2, 7),
                    (2, 8),
                    (3, 5),
                    (3, 7),
                    (3, 8),
                    (4, 5),
                    (4, 6),
                    (4, 8),
                ],
                1,
            ),
        ]
        .concat(),
        10 => [
            two_blocks_squared(),
            pairs(&[(1, 5), (2, 6), (3, 7), (4, 8)], 2),
            pairs(&[(1, 6), (1, 7), (2, 5), (2, 8), (3, 5), (3, 8), (4, 6), (4, 7)], 1),
        ]
        .concat(),
        _ => panic!("no invariant I{k}"),
    }
}

/// Number of difference factors, counted with multiplicity.
pub fn pattern_degree(k: usize) -> u32 {
    pattern(k).iter().map(|f| f.2).sum()
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

fn canonical_edges(fs: &[Factor], perm: &[usize]) -> (Vec<(usize, usize, u32)>, bool) {
    let mut negative = false;
    let mut edges: Vec<(usize, usize, u32)> = fs
        .iter()
        .map(|&(i, j, e)| {
            let (a, b) = (perm[i], perm[j]);
            if a > b {
                negative ^= e % 2 == 1;
                (b, a, e)
            } else {
                (a, b, e)
            }
        })
        .collect();
    edges.sort();
    (edges, negative)
}

/// Permutations fixing the product `prod (ij)^e` exactly, and those sending
/// it to its negative.
pub fn stabilizer(k: usize) -> (usize, usize) {
    let fs = pattern(k);
    let (base, _) = canonical_edges(&fs, &(0..8).collect::<Vec<_>>());
    let (mut plus, mut minus) = (0, 0);
    for p in permutations(8) {
        let (e, neg) = canonical_edges(&fs, &p);
        if e == base {
            if neg {
                minus += 1;
            } else {
                plus += 1;
            }
        }
    }
    (plus, minus)
}

/// Tuning for the root finder.
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Relative residual accepted for each root.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_iterations: 500,
        }
    }
}

/// The eight roots of `sum_i C(8, i) a_i x^(8-i)`.
#[derive(Clone, Debug)]
pub struct RootConfiguration {
    pub roots: [Complex64; 8],
    /// `a_0, ..., a_8`.
    pub coefficients: [f64; 9],
}

const BINOM8: [f64; 9] = [1.0, 8.0, 28.0, 56.0, 70.0, 56.0, 28.0, 8.0, 1.0];

/// Binomial-convention coefficients `a_i` of a degree 8 form, read so that
/// `f(x, 1) = sum_i C(8, i) a_i x^(8-i)`.
pub fn binomial_coefficients(f: &BinaryForm) -> Result<[f64; 9]> {
    use num_traits::ToPrimitive;
    if f.degree() != 8 {
        return Err(Error::Input(format!("expected an octavic, got degree {}", f.degree())));
    }
    let mut a = [0.0; 9];
    for (i, ai) in a.iter_mut().enumerate() {
        let c = f.coeff(8 - i).to_f64().unwrap_or(f64::NAN);
        *ai = c / BINOM8[i];
    }
    Ok(a)
}

fn horner(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    // c is highest degree first
    let mut p = c[0];
    let mut dp = Complex64::new(0.0, 0.0);
    for &ci in &c[1..] {
        dp = dp * x + p;
        p = p * x + ci;
    }
    (p, dp)
}

/// Roots by Aberth iteration followed by Newton polishing.
pub fn roots_of_octavic(a: &[f64; 9], opts: RootOptions) -> Result<RootConfiguration> {
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Input("coefficients must be finite".into()));
    }
    if a[0] == 0.0 {
        return Err(Error::Condition("leading coefficient vanishes: fewer than 8 affine roots".into()));
    }
    let c: Vec<Complex64> = (0..9).map(|i| Complex64::new(BINOM8[i] * a[i] / (BINOM8[0] * a[0]), 0.0)).collect();
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..8)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / 8.0))
        .collect();
    for _ in 0..opts.max_iterations {
        let mut moved = 0.0f64;
        for k in 0..8 {
            let (p, dp) = horner(&c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..8).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            *zk -= p / dp;
        }
    }
    let scale = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
    for (i, &zi) in z.iter().enumerate() {
        for &zj in &z[i + 1..] {
            if (zi - zj).norm() < 1e-6 * scale {
                return Err(Error::Condition("repeated roots".into()));
            }
        }
        let (p, _) = horner(&c, zi);
        let size: f64 = c.iter().enumerate().map(|(k, ck)| ck.norm() * zi.norm().powi(8 - k as i32)).sum();
        if p.norm() > opts.tolerance * size {
            return Err(Error::Condition(format!("root residual {} exceeds tolerance", p.norm() / size)));
        }
    }
    Ok(RootConfiguration {
        roots: z.try_into().unwrap(),
        coefficients: *a,
    })
}

/// `I2, ..., I10` for the given roots.
pub fn tsuyumine_invariants(roots: &[Complex64; 8]) -> [Complex64; 9] {
    std::array::from_fn(|k| orbit_sum(roots, k + 2))
}

/// Orbit sum of one pattern: the `8!` relabelings are split by the image of
/// root 0 into 8 chunks, summed separately and combined in a fixed order.
pub fn orbit_sum(roots: &[Complex64; 8], k: usize) -> Complex64 {
    let fs = pattern(k);
    let (stab, _) = stabilizer_cached(k);
    let perms = permutations_cached();
    let chunk = perms.len() / 8;
    let partial = par::map_range(8, |c| {
        let mut acc = Complex64::new(0.0, 0.0);
        for p in &perms[c * chunk..(c + 1) * chunk] {
            let mut t = Complex64::new(1.0, 0.0);
            for &(i, j, e) in &fs {
                t *= (roots[p[i]] - roots[p[j]]).powu(e);
            }
            acc += t;
        }
        acc
    });
    partial.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b) / stab as f64
}

fn permutations_cached() -> &'static Vec<Vec<usize>> {
    static PERMS: std::sync::OnceLock<Vec<Vec<usize>>> = std::sync::OnceLock::new();
    PERMS.get_or_init(|| permutations(8))
}

fn stabilizer_cached(k: usize) -> (usize, usize) {
    static STAB: std::sync::OnceLock<Vec<(usize, usize)>> = std::sync::OnceLock::new();
    STAB.get_or_init(|| (2..=10).map(stabilizer).collect())[k - 2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_degrees() {
        let d: Vec<u32> = (2..=10).map(pattern_degree).collect();
        assert_eq!(d, [8, 12, 16, 20, 24, 28, 32, 36, 40]);
        for k in 2..=10 {
            let mut per_root = [0u32; 8];
            for (i, j, e) in pattern(k) {
                per_root[i] += e;
                per_root[j] += e;
            }
            assert!(per_root.iter().all(|&c| c == k as u32), "I{k}: {per_root:?}");
        }
    }

    #[test]
    fn permutations_are_complete() {
        let p = permutations(5);
        assert_eq!(p.len(), 120);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn unit_roots() {
        let rc = roots_of_octavic(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0], RootOptions::default()).unwrap();
        for r in rc.roots {
            assert!((r.powu(8) - 1.0).norm() < 1e-12);
        }
        assert!(matches!(
            roots_of_octavic(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0], RootOptions::default()),
            Err(Error::Condition(_))
        ));
    }

    #[test]
    fn repeated_roots_are_rejected() {
        // (x - 1)^2 (x^6 + 1) = x^8 - 2x^7 + x^6 + x^2 - 2x + 1
        let c = [1.0, -2.0, 1.0, 0.0, 0.0, 0.0, 1.0, -2.0, 1.0];
        let a: [f64; 9] = std::array::from_fn(|i| c[i] / BINOM8[i]);
        assert!(matches!(roots_of_octavic(&a, RootOptions::default()), Err(Error::Condition(_))));
    }
}

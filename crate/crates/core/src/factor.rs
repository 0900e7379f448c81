//! Integer factorization: trial division, Miller-Rabin and Pollard-Brent rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIAL_LIMIT: u64 = 1_000_000;

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

fn primes_table() -> &'static [u64] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| small_primes(TRIAL_LIMIT))
}

/// Miller-Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return crate::modular::is_prime_u64(small);
    }
    const BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    for &b in &BASES {
        if (n % b).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn random_below<R: Rng>(rng: &mut R, n: &BigUint) -> BigUint {
    let words = (n.bits() / 32 + 1) as usize;
    let digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
    BigUint::new(digits) % n
}

/// A nontrivial factor of the odd composite `n` (Brent's variant).
fn pollard_brent(n: &BigUint, seed: u64) -> BigUint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let c = random_below(&mut rng, n);
        let mut y = random_below(&mut rng, n);
        let m = 128u64;
        let (mut g, mut r, mut q) = (BigUint::one(), 1u64, BigUint::one());
        let mut x = y.clone();
        let mut ys = y.clone();
        let f = |v: &BigUint| (v * v + &c) % n;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

/// Prime factorization of `n > 0` as `(prime, exponent)` pairs in increasing order.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    for &p in primes_table() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if !m.is_one() {
        let mut stack = vec![m];
        let mut large: Vec<BigUint> = Vec::new();
        let mut seed = 0;
        while let Some(c) = stack.pop() {
            let limit = BigUint::from(TRIAL_LIMIT);
            if c <= &limit * &limit || is_probable_prime(&c) {
                large.push(c);
            } else {
                seed += 1;
                let d = pollard_brent(&c, seed);
                let rest = &c / &d;
                stack.push(d);
                stack.push(rest);
            }
        }
        large.sort();
        for p in large {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out
}

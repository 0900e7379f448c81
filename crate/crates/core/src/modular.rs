//! Word-sized modular arithmetic: Montgomery multiplication, prime
//! generation, elimination modulo a prime, and Chinese remaindering with
//! rational reconstruction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arithmetic modulo an odd prime `p < 2^63` in Montgomery form.
#[derive(Clone, Copy, Debug)]
pub struct Montgomery {
    p: u64,
    pinv: u64,
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 63));
        // Newton iteration for p^-1 mod 2^64
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Self {
            p,
            pinv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Plain residue to Montgomery form.
    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.to_mont(r)
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        let r: u64 = r.try_into().expect("residue fits in u64");
        self.to_mont(r)
    }

    /// Residue of a rational whose denominator is invertible mod `p`.
    pub fn from_rational(&self, v: &BigRational) -> Option<u64> {
        let d = self.from_bigint(v.denom());
        (d != 0).then(|| self.mul(self.from_bigint(v.numer()), self.inv(d)))
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`, in decreasing order.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Dense matrix over `Z/p` in Montgomery form.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

/// Outcome of solving `A x = b (mod p)` on an augmented matrix.
#[derive(Clone, Debug)]
pub struct ModSolve {
    pub rank: usize,
    /// Original indices of the rows that carried the pivots, in pivot order.
    pub pivot_rows: Vec<usize>,
    /// `None` when the system is inconsistent modulo `p`.
    pub solution: Option<Vec<u64>>,
}

impl ModMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Forward elimination on an augmented matrix whose last column is the
    /// right-hand side, then back substitution. Free variables are zero.
    pub fn solve_augmented(mut self, ctx: &Montgomery) -> ModSolve {
        let (rows, width) = (self.rows, self.cols);
        let cols = width - 1;
        let mut origin: Vec<usize> = (0..rows).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.data[i * width + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..width {
                    self.data.swap(p * width + j, r * width + j);
                }
                origin.swap(p, r);
            }
            let inv = ctx.inv(self.data[r * width + c]);
            {
                let row = &mut self.data[r * width..(r + 1) * width];
                for v in &mut row[c..] {
                    *v = ctx.mul(*v, inv);
                }
            }
            let (head, tail) = self.data.split_at_mut((r + 1) * width);
            let pivot_row = &head[r * width..];
            for row in tail.chunks_exact_mut(width) {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                for j in c..width {
                    row[j] = ctx.sub(row[j], ctx.mul(f, pivot_row[j]));
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = r;
        let pivot_rows = origin[..rank].to_vec();
        if (rank..rows).any(|i| self.data[i * width + cols] != 0) {
            return ModSolve {
                rank,
                pivot_rows,
                solution: None,
            };
        }
        let mut x = vec![0u64; cols];
        for (k, &c) in pivots.iter().enumerate().rev() {
            let row = &self.data[k * width..(k + 1) * width];
            let mut acc = row[cols];
            for &c2 in &pivots[k + 1..] {
                acc = ctx.sub(acc, ctx.mul(row[c2], x[c2]));
            }
            x[c] = acc;
        }
        ModSolve {
            rank,
            pivot_rows,
            solution: Some(x),
        }
    }
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtAccumulator {
    pub fn new(len: usize) -> Self {
        Self {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Adds residues (plain, not Montgomery form) modulo the prime `p`.
    pub fn push(&mut self, p: u64, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let m_mod_p: u64 = (&self.modulus % &pb).try_into().unwrap();
        let inv = powmod(m_mod_p, p - 2, p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let v_mod_p: u64 = (&*v % &pb).try_into().unwrap();
            let delta = mulmod((r + p - v_mod_p) % p, inv, p);
            *v += &self.modulus * BigInt::from(delta);
        }
        self.modulus *= pb;
    }

    /// Rational reconstruction of every entry; `None` if any entry fails.
    pub fn reconstruct(&self) -> Option<Vec<BigRational>> {
        self.values
            .iter()
            .map(|v| rational_reconstruction(v, &self.modulus))
            .collect()
    }
}

/// Finds `n/d` with `n = d * u (mod m)`, `|n|, d <= sqrt(m/2)`.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(BigRational::new(n, d))
}

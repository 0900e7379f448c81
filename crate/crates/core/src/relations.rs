//! Polynomial relations among the invariants, reconstructed by exact
//! interpolation over sampled octavics: the degree-40 syzygy `F(J2, ..., J8)`
//! monic in `J8`, and an expression for the discriminant `J14`.

use std::cmp::Ordering;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{common_denominator, format_rational, parse_rational};
use crate::binary_forms::{random_form_with, BinaryForm};
use crate::error::{Error, Result};
use crate::modular::{CrtAccumulator, ModMatrix, Montgomery};
use crate::par;
use crate::shioda::shioda_invariants;
use crate::wps::{WeightedPoint, WEIGHTS};

pub const SYZYGY_DEGREE: u32 = 40;
pub const DISC_DEGREE: u32 = 14;
/// Weights of `J2, ..., J10`.
pub const GENERATOR_WEIGHTS: [u32; 9] = [2, 3, 4, 5, 6, 7, 8, 9, 10];
/// Coefficient bound for sampled octavics.
pub const SAMPLE_BOUND: i64 = 4;
pub const HELD_OUT: usize = 200;
pub const FORMAT: &str = "octavic-relations/1";

/// Environment variable naming the default relation artifact.
pub const RELATIONS_ENV: &str = "OCTAVIC_RELATIONS";

/// Exponent vector of a monomial in variables of fixed weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightedMonomial {
    pub exponents: Vec<u32>,
}

impl WeightedMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exponents.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Renders as e.g. `J2^2*J4`, naming variable `k` by its weight.
    pub fn display(&self, weights: &[u32]) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .zip(weights)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, w)| if e == 1 { format!("J{w}") } else { format!("J{w}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn eval_powers<T: Clone>(&self, powers: &[Vec<T>], one: T, mul: impl Fn(&T, &T) -> T) -> T {
        let mut acc = one;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e > 0 {
                acc = mul(&acc, &powers[k][e as usize]);
            }
        }
        acc
    }
}

/// Graded lexicographic order, largest first: higher total degree, then
/// larger exponent vector.
pub fn monomial_order(a: &WeightedMonomial, b: &WeightedMonomial) -> Ordering {
    b.total_degree()
        .cmp(&a.total_degree())
        .then_with(|| b.exponents.cmp(&a.exponents))
}

/// All monomials of weighted degree `d`, in [`monomial_order`].
pub fn weighted_monomials(d: u32, weights: &[u32]) -> Vec<WeightedMonomial> {
    fn rec(d: u32, weights: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<WeightedMonomial>) {
        let Some((&w, rest)) = weights.split_first() else {
            if d == 0 {
                out.push(WeightedMonomial::new(prefix.clone()));
            }
            return;
        };
        for e in 0..=d / w {
            prefix.push(e);
            rec(d - e * w, rest, prefix, out);
            prefix.pop();
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    rec(d, weights, &mut Vec::new(), &mut out);
    out.sort_by(monomial_order);
    out
}

fn integer_powers(values: &[BigInt], max_exp: &[u32]) -> Vec<Vec<BigInt>> {
    values
        .iter()
        .zip(max_exp)
        .map(|(v, &m)| {
            let mut p = vec![BigInt::one()];
            for e in 1..=m as usize {
                let next = &p[e - 1] * v;
                p.push(next);
            }
            p
        })
        .collect()
}

fn modular_powers(ctx: &Montgomery, values: &[u64], max_exp: &[u32]) -> Vec<Vec<u64>> {
    values
        .iter()
        .zip(max_exp)
        .map(|(&v, &m)| {
            let mut p = vec![ctx.one()];
            for e in 1..=m as usize {
                p.push(ctx.mul(p[e - 1], v));
            }
            p
        })
        .collect()
}

fn max_exponents<'a>(monomials: impl IntoIterator<Item = &'a WeightedMonomial>, nvars: usize) -> Vec<u32> {
    let mut m = vec![0u32; nvars];
    for mono in monomials {
        for (a, &e) in m.iter_mut().zip(&mono.exponents) {
            *a = (*a).max(e);
        }
    }
    m
}

/// A weighted-homogeneous polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    weights: Vec<u32>,
    degree: u32,
    terms: Vec<(WeightedMonomial, BigRational)>,
    denominator: BigInt,
    numerators: Vec<BigInt>,
}

impl WeightedPoly {
    /// Builds a polynomial from its terms; zero coefficients are dropped and
    /// every monomial must have weighted degree `degree`.
    pub fn new(
        weights: Vec<u32>,
        degree: u32,
        terms: impl IntoIterator<Item = (WeightedMonomial, BigRational)>,
    ) -> Result<Self> {
        let mut terms: Vec<(WeightedMonomial, BigRational)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for (m, _) in &terms {
            if m.exponents.len() != weights.len() {
                return Err(Error::Input(format!(
                    "monomial {:?} does not match {} variables",
                    m.exponents,
                    weights.len()
                )));
            }
            if m.weighted_degree(&weights) != degree {
                return Err(Error::Input(format!(
                    "monomial {} has weighted degree {}, expected {degree}",
                    m.display(&weights),
                    m.weighted_degree(&weights)
                )));
            }
        }
        terms.sort_by(|a, b| monomial_order(&a.0, &b.0));
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Input("repeated monomial".into()));
        }
        let denominator = common_denominator(terms.iter().map(|(_, c)| c));
        let numerators = terms
            .iter()
            .map(|(_, c)| (c * BigRational::from_integer(denominator.clone())).to_integer())
            .collect();
        Ok(Self {
            weights,
            degree,
            terms,
            denominator,
            numerators,
        })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(WeightedMonomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        let key = WeightedMonomial::new(exponents.to_vec());
        self.terms
            .binary_search_by(|(m, _)| monomial_order(m, &key))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    /// Least common denominator `D` of the coefficients.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `D * P(x)` for integer `x`, an integer with the sign and zero set of `P(x)`.
    pub fn eval_scaled(&self, x: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.weights.len());
        let powers = integer_powers(x, &max_exponents(self.terms.iter().map(|(m, _)| m), x.len()));
        self.terms
            .iter()
            .zip(&self.numerators)
            .map(|((m, _), n)| n * m.eval_powers(&powers, BigInt::one(), |a, b| a * b))
            .sum()
    }

    pub fn eval_integers(&self, x: &[BigInt]) -> BigRational {
        BigRational::new(self.eval_scaled(x), self.denominator.clone())
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.weights.len());
        let den = common_denominator(x);
        // P(x) = P(den * x) / den^degree is wrong for weighted variables, so
        // scale variable k by den^(w_k) and divide by den^degree.
        let scaled: Vec<BigInt> = x
            .iter()
            .zip(&self.weights)
            .map(|(v, &w)| (v * BigRational::from_integer(num_traits::pow(den.clone(), w as usize))).to_integer())
            .collect();
        self.eval_integers(&scaled) / BigRational::from_integer(num_traits::pow(den, self.degree as usize))
    }

    /// Coefficients reduced modulo the prime of `ctx` (Montgomery form), or
    /// `None` if the prime divides the denominator.
    pub fn coefficients_mod(&self, ctx: &Montgomery) -> Option<Vec<u64>> {
        let d = ctx.from_bigint(&self.denominator);
        if d == 0 {
            return None;
        }
        let dinv = ctx.inv(d);
        Some(self.numerators.iter().map(|n| ctx.mul(ctx.from_bigint(n), dinv)).collect())
    }

    /// Value modulo a prime for inputs in Montgomery form.
    pub fn eval_mod(&self, ctx: &Montgomery, x: &[u64]) -> Option<u64> {
        let coeffs = self.coefficients_mod(ctx)?;
        let powers = modular_powers(ctx, x, &max_exponents(self.terms.iter().map(|(m, _)| m), x.len()));
        let mut acc = 0;
        for ((m, _), c) in self.terms.iter().zip(coeffs) {
            let v = m.eval_powers(&powers, ctx.one(), |a, b| ctx.mul(*a, *b));
            acc = ctx.add(acc, ctx.mul(c, v));
        }
        Some(acc)
    }

    /// Largest exponent of variable `var`.
    pub fn max_exponent(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents[var]).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> PolyFile {
        PolyFile {
            weights: self.weights.clone(),
            degree: self.degree,
            monomials: self
                .terms
                .iter()
                .map(|(m, c)| TermFile {
                    exponents: m.exponents.clone(),
                    coefficient: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &PolyFile) -> Result<Self> {
        let terms = file
            .monomials
            .iter()
            .map(|t| Ok((WeightedMonomial::new(t.exponents.clone()), parse_rational(&t.coefficient)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.weights.clone(), file.degree, terms)
    }

    /// Human-readable rendering, one term per line.
    pub fn pretty(&self) -> String {
        self.terms
            .iter()
            .map(|(m, c)| format!("{} * {}", format_rational(c), m.display(&self.weights)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFile {
    pub weights: Vec<u32>,
    pub degree: u32,
    pub monomials: Vec<TermFile>,
}

/// Integral invariants `J2, ..., J10` and `J14` of one sampled octavic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSample {
    pub form: BinaryForm,
    pub generators: [BigInt; 9],
    pub j14: BigInt,
}

impl InvariantSample {
    pub fn from_form(form: BinaryForm) -> Result<Self> {
        let inv = shioda_invariants(&form)?;
        if !inv.is_integral() {
            return Err(Error::Input(format!("non-integral invariants for {form}")));
        }
        Ok(Self {
            generators: inv.generators().map(|v| v.to_integer()),
            j14: inv.j14.to_integer(),
            form,
        })
    }

    /// `(J2, ..., J8)`.
    pub fn moduli(&self) -> &[BigInt] {
        &self.generators[..7]
    }
}

/// Invariants of `count` random integer octavics. Sample `i` depends only on
/// `(seed, stream + i)`, so the result does not depend on the worker count.
pub fn sample_invariants(count: usize, seed: u64, stream: u64) -> Result<Vec<InvariantSample>> {
    par::map_range(count, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream + i as u64);
        InvariantSample::from_form(random_form_with(&mut rng, 8, SAMPLE_BOUND))
    })
    .into_iter()
    .collect()
}

/// Outcome of an interpolation.
#[derive(Clone, Debug)]
pub struct Interpolation {
    pub coefficients: Vec<BigRational>,
    pub primes_used: usize,
}

/// Solves `sum_m c_m m(x_s) = t_s` over all samples `s` for the unknown
/// coefficients `c_m` of the monomials in `basis`.
///
/// Works modulo word-sized primes, reconstructs rationals by Chinese
/// remaindering, and accepts a candidate only after checking every equation
/// in exact integer arithmetic.
pub fn interpolate(basis: &[WeightedMonomial], points: &[Vec<BigInt>], targets: &[BigInt]) -> Result<Interpolation> {
    let n = basis.len();
    assert_eq!(points.len(), targets.len());
    if points.len() < n {
        return Err(Error::Underdetermined {
            samples: points.len(),
            unknowns: n,
            required: n,
        });
    }
    let nvars = points.first().map_or(0, |p| p.len());
    let max_exp = max_exponents(basis, nvars);

    let build = |ctx: &Montgomery, rows: &[usize]| -> ModMatrix {
        let mut m = ModMatrix::new(rows.len(), n + 1);
        let filled: Vec<Vec<u64>> = par::map_slice(rows, |&s| {
            let x: Vec<u64> = points[s].iter().map(|v| ctx.from_bigint(v)).collect();
            let powers = modular_powers(ctx, &x, &max_exp);
            let mut row: Vec<u64> = basis
                .iter()
                .map(|mono| mono.eval_powers(&powers, ctx.one(), |a, b| ctx.mul(*a, *b)))
                .collect();
            row.push(ctx.from_bigint(&targets[s]));
            row
        });
        for (i, r) in filled.into_iter().enumerate() {
            m.row_mut(i).copy_from_slice(&r);
        }
        m
    };

    let mut primes = PrimeStream::new();
    let all_rows: Vec<usize> = (0..points.len()).collect();
    let mut pivot_rows = None;
    let mut inconsistent = 0;
    while pivot_rows.is_none() {
        let ctx = Montgomery::new(primes.next());
        let solved = build(&ctx, &all_rows).solve_augmented(&ctx);
        if solved.rank < n {
            return Err(Error::SamplingDegeneracy {
                rank: solved.rank,
                unknowns: n,
            });
        }
        if solved.solution.is_none() {
            // a second prime rules out an unlucky reduction
            inconsistent += 1;
            if inconsistent == 2 {
                return Err(Error::NoSolution {
                    row: solved.pivot_rows.len(),
                });
            }
            continue;
        }
        pivot_rows = Some(solved.pivot_rows);
    }
    let pivot_rows = pivot_rows.unwrap();

    let mut crt = CrtAccumulator::new(n);
    let mut previous: Option<Vec<BigRational>> = None;
    let mut used = 0;
    loop {
        let p = primes.next();
        let ctx = Montgomery::new(p);
        let solved = build(&ctx, &pivot_rows).solve_augmented(&ctx);
        let Some(x) = solved.solution.filter(|_| solved.rank == n) else {
            continue;
        };
        let plain: Vec<u64> = x.iter().map(|&v| ctx.from_mont(v)).collect();
        crt.push(p, &plain);
        used += 1;
        let Some(candidate) = crt.reconstruct() else {
            previous = None;
            continue;
        };
        if previous.as_ref() == Some(&candidate) && check_exact(basis, &candidate, points, targets) {
            return Ok(Interpolation {
                coefficients: candidate,
                primes_used: used,
            });
        }
        previous = Some(candidate);
    }
}

/// Every equation holds exactly.
fn check_exact(basis: &[WeightedMonomial], coeffs: &[BigRational], points: &[Vec<BigInt>], targets: &[BigInt]) -> bool {
    let den = common_denominator(coeffs);
    let nums: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let nvars = points.first().map_or(0, |p| p.len());
    let max_exp = max_exponents(basis, nvars);
    let ok = par::map_range(points.len(), |s| {
        let powers = integer_powers(&points[s], &max_exp);
        let lhs: BigInt = basis
            .iter()
            .zip(&nums)
            .filter(|(_, n)| !n.is_zero())
            .map(|(m, n)| n * m.eval_powers(&powers, BigInt::one(), |a, b| a * b))
            .sum();
        lhs == &den * &targets[s]
    });
    ok.into_iter().all(|b| b)
}

/// Primes below `2^62`, largest first, generated on demand.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        Self { next: (1u64 << 62) - 1 }
    }

    fn next(&mut self) -> u64 {
        loop {
            let n = self.next;
            self.next -= 2;
            if crate::modular::is_prime_u64(n) {
                return n;
            }
        }
    }
}

/// Unknowns of the syzygy: monomials of weighted degree `40 - 8j` in
/// `J2, ..., J7`, times `J8^j`, for `j = 4, ..., 0`.
pub fn syzygy_basis() -> Vec<WeightedMonomial> {
    let mut out = Vec::new();
    for j in (0..5u32).rev() {
        for m in weighted_monomials(SYZYGY_DEGREE - 8 * j, &WEIGHTS[..6]) {
            let mut e = m.exponents;
            e.push(j);
            out.push(WeightedMonomial::new(e));
        }
    }
    out
}

/// Monomials of weighted degree 14 in `J2, ..., J8`.
pub fn disc_basis() -> Vec<WeightedMonomial> {
    weighted_monomials(DISC_DEGREE, &WEIGHTS)
}

/// Diagnostics recorded with a derived relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub unknowns: usize,
    pub samples: usize,
    pub primes_used: usize,
    pub held_out: usize,
}

fn require_samples(samples: usize, unknowns: usize) -> Result<()> {
    if samples < 2 * unknowns {
        return Err(Error::Underdetermined {
            samples,
            unknowns,
            required: 2 * unknowns,
        });
    }
    Ok(())
}

fn held_out_stream(samples: usize) -> u64 {
    (1u64 << 40) + samples as u64
}

/// Reconstructs the monic syzygy `F(J2, ..., J8)` of weighted degree 40 from
/// `samples` random octavics and validates it on held-out octavics.
pub fn derive_syzygy(samples: usize, seed: u64) -> Result<(WeightedPoly, DerivationReport)> {
    let basis = syzygy_basis();
    let unknowns = basis.len();
    require_samples(samples, unknowns)?;
    let data = sample_invariants(samples, seed, 0)?;
    let points: Vec<Vec<BigInt>> = data.iter().map(|s| s.moduli().to_vec()).collect();
    let targets: Vec<BigInt> = data.iter().map(|s| -num_traits::pow(s.generators[6].clone(), 5)).collect();
    let sol = interpolate(&basis, &points, &targets).map_err(|e| match e {
        Error::NoSolution { .. } => Error::ConventionMismatch("sampled invariants satisfy no monic quintic in J8".into()),
        other => other,
    })?;
    let mut terms: Vec<(WeightedMonomial, BigRational)> = basis.into_iter().zip(sol.coefficients).collect();
    terms.push((WeightedMonomial::new(vec![0, 0, 0, 0, 0, 0, 5]), BigRational::one()));
    let poly = WeightedPoly::new(WEIGHTS.to_vec(), SYZYGY_DEGREE, terms)?;

    let held = sample_invariants(HELD_OUT, seed, held_out_stream(samples))?;
    if let Some(bad) = held.iter().find(|s| !poly.eval_scaled(s.moduli()).is_zero()) {
        return Err(Error::ConventionMismatch(format!("syzygy does not vanish on {}", bad.form)));
    }
    let report = DerivationReport {
        unknowns,
        samples,
        primes_used: sol.primes_used,
        held_out: HELD_OUT,
    };
    Ok((poly, report))
}

/// Variables a discriminant expression may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscBasis {
    /// Weighted-degree-14 monomials in `J2, ..., J8`.
    Moduli,
    /// Weighted-degree-14 monomials in `J2, ..., J10`.
    Generators,
}

impl DiscBasis {
    pub fn weights(self) -> &'static [u32] {
        match self {
            DiscBasis::Moduli => &WEIGHTS,
            DiscBasis::Generators => &GENERATOR_WEIGHTS,
        }
    }
}

/// Reconstructs `P` with `P(J(f)) = J14(f)` over the requested basis and
/// validates it on held-out octavics.
///
/// Over [`DiscBasis::Moduli`] the sampled system is inconsistent: `J14` is
/// not a polynomial in `J2, ..., J8` on the image of the invariant map. That
/// case is reported as [`Error::RepresentationFailure`].
pub fn derive_disc_expr(samples: usize, seed: u64, basis_kind: DiscBasis) -> Result<(WeightedPoly, DerivationReport)> {
    let weights = basis_kind.weights();
    let basis = weighted_monomials(DISC_DEGREE, weights);
    let unknowns = basis.len();
    require_samples(samples, unknowns)?;
    let data = sample_invariants(samples, seed, 0)?;
    let points: Vec<Vec<BigInt>> = data.iter().map(|s| s.generators[..weights.len()].to_vec()).collect();
    let targets: Vec<BigInt> = data.iter().map(|s| s.j14.clone()).collect();
    let sol = interpolate(&basis, &points, &targets).map_err(|e| match e {
        Error::NoSolution { row } => Error::RepresentationFailure(format!(
            "J14 is not a polynomial in {} (residual at pivot {row})",
            basis_kind_name(basis_kind)
        )),
        other => other,
    })?;
    let poly = WeightedPoly::new(weights.to_vec(), DISC_DEGREE, basis.into_iter().zip(sol.coefficients))?;
    let held = sample_invariants(HELD_OUT, seed, held_out_stream(samples))?;
    for s in &held {
        if poly.eval_integers(&s.generators[..weights.len()]) != BigRational::from_integer(s.j14.clone()) {
            return Err(Error::ConventionMismatch(format!("discriminant expression fails on {}", s.form)));
        }
    }
    Ok((
        poly,
        DerivationReport {
            unknowns,
            samples,
            primes_used: sol.primes_used,
            held_out: HELD_OUT,
        },
    ))
}

fn basis_kind_name(kind: DiscBasis) -> &'static str {
    match kind {
        DiscBasis::Moduli => "J2..J8",
        DiscBasis::Generators => "J2..J10",
    }
}

/// Where a relation set came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub samples: usize,
    pub disc_samples: usize,
    pub held_out: usize,
    pub hash: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RelationFile {
    format: String,
    syzygy: PolyFile,
    discriminant: PolyFile,
    provenance: Provenance,
}

#[derive(Serialize)]
struct HashedContent<'a> {
    format: &'a str,
    syzygy: &'a PolyFile,
    discriminant: &'a PolyFile,
}

/// The syzygy `F(J2, ..., J8)` and the discriminant expression
/// `P(J2, ..., J10)`, immutable once built.
///
/// On a tuple `(J2, ..., J8)` the discriminant test evaluates `P` with
/// `J9 = J10 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    syzygy: WeightedPoly,
    discriminant: WeightedPoly,
    provenance: Provenance,
}

impl RelationSet {
    /// Checks the structural invariants and computes the content hash.
    pub fn new(syzygy: WeightedPoly, discriminant: WeightedPoly, mut provenance: Provenance) -> Result<Self> {
        if syzygy.weights() != WEIGHTS || syzygy.degree() != SYZYGY_DEGREE {
            return Err(Error::Input("syzygy must have weights 2..8 and degree 40".into()));
        }
        if syzygy.coefficient(&[0, 0, 0, 0, 0, 0, 5]) != BigRational::one() || syzygy.max_exponent(6) != 5 {
            return Err(Error::Input("syzygy must be monic of degree 5 in J8".into()));
        }
        let w = discriminant.weights();
        if !(w == WEIGHTS || w == GENERATOR_WEIGHTS) || discriminant.degree() != DISC_DEGREE {
            return Err(Error::Input("discriminant must have weights 2..8 or 2..10 and degree 14".into()));
        }
        provenance.hash = content_hash(&syzygy.to_file(), &discriminant.to_file());
        Ok(Self {
            syzygy,
            discriminant,
            provenance,
        })
    }

    /// Derives both relations; `samples` is used for the syzygy and twice
    /// the basis size for the discriminant.
    pub fn derive(samples: usize, seed: u64) -> Result<Self> {
        let (syzygy, rep) = derive_syzygy(samples, seed)?;
        let disc_samples = 2 * weighted_monomials(DISC_DEGREE, &GENERATOR_WEIGHTS).len();
        let (discriminant, _) = derive_disc_expr(disc_samples, seed, DiscBasis::Generators)?;
        Self::new(
            syzygy,
            discriminant,
            Provenance {
                seed,
                samples: rep.samples,
                disc_samples,
                held_out: rep.held_out,
                hash: String::new(),
            },
        )
    }

    pub fn syzygy(&self) -> &WeightedPoly {
        &self.syzygy
    }

    pub fn discriminant(&self) -> &WeightedPoly {
        &self.discriminant
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn hash(&self) -> &str {
        &self.provenance.hash
    }

    /// `F(t) = 0`, exactly.
    pub fn syzygy_check(&self, t: &WeightedPoint) -> bool {
        self.syzygy.eval_scaled(t.coords()).is_zero()
    }

    /// `P(t)` with `J9 = J10 = 0`.
    pub fn disc_value(&self, t: &WeightedPoint) -> BigRational {
        let mut x = t.coords().to_vec();
        x.resize(self.discriminant.weights().len(), BigInt::zero());
        self.discriminant.eval_integers(&x)
    }

    /// `P(t) != 0`.
    pub fn disc_check(&self, t: &WeightedPoint) -> bool {
        !self.disc_value(t).is_zero()
    }

    pub fn to_json(&self) -> String {
        let file = RelationFile {
            format: FORMAT.into(),
            syzygy: self.syzygy.to_file(),
            discriminant: self.discriminant.to_file(),
            provenance: self.provenance.clone(),
        };
        serde_json::to_string_pretty(&file).expect("relation file serializes") + "\n"
    }

    /// Parses an artifact and verifies its content hash.
    pub fn from_json(s: &str) -> Result<Self> {
        let file: RelationFile = serde_json::from_str(s)?;
        if file.format != FORMAT {
            return Err(Error::Input(format!("unknown relation format {:?}", file.format)));
        }
        let expected = file.provenance.hash.clone();
        let set = Self::new(
            WeightedPoly::from_file(&file.syzygy)?,
            WeightedPoly::from_file(&file.discriminant)?,
            file.provenance,
        )?;
        if set.hash() != expected {
            return Err(Error::HashMismatch {
                expected,
                found: set.hash().to_string(),
            });
        }
        Ok(set)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Loads the artifact named by [`RELATIONS_ENV`].
    pub fn load_default() -> Result<Self> {
        match std::env::var_os(RELATIONS_ENV) {
            Some(p) => Self::load(Path::new(&p)),
            None => Err(Error::NotInitialized),
        }
    }
}

fn content_hash(syzygy: &PolyFile, discriminant: &PolyFile) -> String {
    let content = HashedContent {
        format: FORMAT,
        syzygy,
        discriminant,
    };
    let bytes = serde_json::to_vec(&content).expect("relation content serializes");
    hex::encode(Sha256::digest(&bytes))
}

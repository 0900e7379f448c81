//! Points of the weighted projective space with weights `(2, 3, 4, 5, 6, 7, 8)`.
//!
//! `lambda * (J2, ..., J8) = (lambda^2 J2, ..., lambda^8 J8)`. This module
//! computes minimal and absolute minimal representatives, the weighted
//! moduli height, and the sign convention that picks one tuple per twist
//! orbit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::valuation;
use crate::error::{Error, Result};
use crate::factor::factorize;

pub const WEIGHTS: [u32; 7] = [2, 3, 4, 5, 6, 7, 8];

/// An integral representative `(J2, ..., J8)`.
///
/// Equality and ordering are structural; twist equivalence is only ever
/// decided through [`is_twist`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedPoint {
    coords: [BigInt; 7],
}

impl WeightedPoint {
    pub fn new(coords: [BigInt; 7]) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: [i64; 7]) -> Self {
        Self::new(coords.map(BigInt::from))
    }

    pub fn coords(&self) -> &[BigInt; 7] {
        &self.coords
    }

    /// `J_i` for `i` in `2..=8`.
    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i - 2]
    }

    pub fn to_i64(&self) -> Option<[i64; 7]> {
        let v: Vec<i64> = self.coords.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
        Some(v.try_into().unwrap())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Weights `i` with `J_i != 0`.
    pub fn support(&self) -> Vec<u32> {
        WEIGHTS
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&w, _)| w)
            .collect()
    }

    /// `gcd` of the support weights (0 for the zero tuple).
    pub fn support_gcd(&self) -> u32 {
        self.support().into_iter().fold(0, |g, w| g.gcd(&w))
    }

    /// Applies `lambda * p` for a rational `lambda`.
    pub fn scale(&self, lambda: &BigRational) -> Vec<BigRational> {
        WEIGHTS
            .iter()
            .zip(&self.coords)
            .map(|(&w, c)| BigRational::from_integer(c.clone()) * num_traits::pow(lambda.clone(), w as usize))
            .collect()
    }

    /// Number of strictly positive coordinates.
    pub fn positive_count(&self) -> usize {
        self.coords.iter().filter(|c| c.is_positive()).count()
    }

    /// `sum_i i * J_i`.
    pub fn weighted_sum(&self) -> BigInt {
        WEIGHTS
            .iter()
            .zip(&self.coords)
            .map(|(&w, c)| c * BigInt::from(w))
            .sum()
    }
}

/// Graded-lexicographic comparison: `sum |J_i|` first, then the coordinates
/// lexicographically.
pub fn grlex_cmp(a: &WeightedPoint, b: &WeightedPoint) -> Ordering {
    let deg = |p: &WeightedPoint| p.coords.iter().map(|c| c.abs()).sum::<BigInt>();
    deg(a).cmp(&deg(b)).then_with(|| a.coords.cmp(&b.coords))
}

impl fmt::Display for WeightedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// JSON integer arrays; coordinates beyond i64 fall back to decimal strings.
impl Serialize for WeightedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(7))?;
        for c in &self.coords {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for WeightedPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Int(i64),
            Str(String),
        }
        struct PointVisitor;
        impl<'de> Visitor<'de> for PointVisitor {
            type Value = WeightedPoint;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of 7 integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut coords = Vec::with_capacity(7);
                while let Some(c) = seq.next_element::<Coord>()? {
                    coords.push(match c {
                        Coord::Int(v) => BigInt::from(v),
                        Coord::Str(s) => s.parse().map_err(de::Error::custom)?,
                    });
                }
                let coords: [BigInt; 7] = coords
                    .try_into()
                    .map_err(|v: Vec<BigInt>| de::Error::invalid_length(v.len(), &self))?;
                Ok(WeightedPoint::new(coords))
            }
        }
        d.deserialize_seq(PointVisitor)
    }
}

fn gcd_of_coords(p: &WeightedPoint) -> BigUint {
    p.coords
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::zero(), |g, c| g.gcd(c))
        .magnitude()
        .clone()
}

/// Primes that could divide every nonzero coordinate.
fn common_primes(p: &WeightedPoint) -> Vec<BigInt> {
    let g = gcd_of_coords(p);
    if g.is_zero() || g.is_one() {
        return Vec::new();
    }
    factorize(&g)
        .into_iter()
        .map(|(q, _)| BigInt::from_biguint(Sign::Plus, q))
        .collect()
}

/// Clears denominators with the smallest positive integer `lambda` built
/// from the primes of the denominators: for each such prime `q`,
/// `v_q(lambda) = max_i ceil(v_q(den J_i) / i)`.
pub fn reduce_to_integral(coords: &[BigRational]) -> Result<WeightedPoint> {
    if coords.len() != 7 {
        return Err(Error::Input(format!("expected 7 coordinates, got {}", coords.len())));
    }
    if coords.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateTuple);
    }
    let den_lcm = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut lambda = BigInt::one();
    if !den_lcm.is_one() {
        for (q, _) in factorize(den_lcm.magnitude()) {
            let q = BigInt::from_biguint(Sign::Plus, q);
            let e = WEIGHTS
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero() && (c.denom() % &q).is_zero())
                .map(|(&w, c)| valuation(c.denom(), &q).div_ceil(w))
                .max()
                .unwrap_or(0);
            lambda *= q.pow(e);
        }
    }
    let lambda = BigRational::from_integer(lambda);
    let scaled: Vec<BigInt> = WEIGHTS
        .iter()
        .zip(coords)
        .map(|(&w, c)| {
            let v = c * num_traits::pow(lambda.clone(), w as usize);
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    Ok(WeightedPoint::new(scaled.try_into().unwrap()))
}

/// Minimal tuple together with the integer `lambda` it was divided by.
pub fn minimal_tuple_with_scale(p: &WeightedPoint) -> (WeightedPoint, BigInt) {
    let mut coords = p.coords.clone();
    let mut lambda = BigInt::one();
    for q in common_primes(p) {
        let e = WEIGHTS
            .iter()
            .zip(&coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&w, c)| valuation(c, &q) / w)
            .min()
            .unwrap_or(0);
        if e == 0 {
            continue;
        }
        for (c, &w) in coords.iter_mut().zip(&WEIGHTS) {
            *c /= q.pow(e * w);
        }
        lambda *= q.pow(e);
    }
    (WeightedPoint::new(coords), lambda)
}

/// Divides out every prime `q` with `q^i | J_i` for all `i` (zero
/// coordinates are divisible by anything).
pub fn minimal_tuple(p: &WeightedPoint) -> WeightedPoint {
    minimal_tuple_with_scale(p).0
}

pub fn is_minimal(p: &WeightedPoint) -> bool {
    minimal_tuple_with_scale(p).1.is_one()
}

/// Exact weighted moduli height: `|J_index|^(1/index)` of the minimal tuple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeightValue {
    pub index: u32,
    #[serde(with = "crate::arith::serde_bigint_str")]
    pub magnitude: BigInt,
}

impl HeightValue {
    pub fn approx(&self) -> f64 {
        if self.magnitude.is_zero() {
            return 0.0;
        }
        let bits = self.magnitude.bits();
        let shift = bits.saturating_sub(60);
        let top = (&self.magnitude >> shift).to_f64().unwrap();
        ((top.ln() + shift as f64 * std::f64::consts::LN_2) / self.index as f64).exp()
    }

    /// `h <= bound`, exactly.
    pub fn leq(&self, bound: &BigRational) -> bool {
        let i = self.index as usize;
        BigRational::from_integer(self.magnitude.clone()) <= num_traits::pow(bound.clone(), i)
    }

    /// `approx` with 6 decimals and the exact witness.
    pub fn display(&self) -> String {
        format!("{:.6} (|J{}| = {})", self.approx(), self.index, self.magnitude)
    }
}

impl Ord for HeightValue {
    fn cmp(&self, other: &Self) -> Ordering {
        // a^(1/i) vs b^(1/j)  <=>  a^j vs b^i
        let lhs = num_traits::pow(self.magnitude.clone(), other.index as usize);
        let rhs = num_traits::pow(other.magnitude.clone(), self.index as usize);
        lhs.cmp(&rhs)
    }
}

impl PartialEq for HeightValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeightValue {}

impl PartialOrd for HeightValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `max |J_i|^(1/i)` divided by the scale removed when passing to the
/// minimal tuple; equivalently the plain maximum over the minimal tuple.
pub fn height(p: &WeightedPoint) -> HeightValue {
    let m = minimal_tuple(p);
    let mut best = HeightValue {
        index: 2,
        magnitude: m.coords[0].abs(),
    };
    for (&w, c) in WEIGHTS.iter().zip(&m.coords).skip(1) {
        let cand = HeightValue {
            index: w,
            magnitude: c.abs(),
        };
        if cand > best {
            best = cand;
        }
    }
    best
}

/// `|J_i| <= h^i` for every `i`, in exact arithmetic.
pub fn height_leq(p: &WeightedPoint, h: &BigRational) -> bool {
    let (num, den) = (h.numer().abs(), h.denom());
    WEIGHTS.iter().zip(&p.coords).all(|(&w, c)| {
        let w = w as usize;
        c.abs() * num_traits::pow(den.clone(), w) <= num_traits::pow(num.clone(), w)
    })
}

/// Removes every reduction `lambda = q^(a/g)` with `lambda^i` integral on the
/// support (`g` is the gcd of the support weights). Signs are untouched;
/// pick the orbit representative with [`normalize_convention`].
pub fn absolute_minimal(p: &WeightedPoint) -> WeightedPoint {
    let g = p.support_gcd();
    if g == 0 {
        return p.clone();
    }
    let mut coords = p.coords.clone();
    for q in common_primes(p) {
        let a = WEIGHTS
            .iter()
            .zip(&coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&w, c)| valuation(c, &q) * g / w)
            .min()
            .unwrap_or(0);
        if a == 0 {
            continue;
        }
        for (c, &w) in coords.iter_mut().zip(&WEIGHTS) {
            if !c.is_zero() {
                *c /= q.pow(a * w / g);
            }
        }
    }
    WeightedPoint::new(coords)
}

/// Orbit of `p` under `lambda = exp(i pi s / g)`, `s = 0, ..., 2g - 1`:
/// `J_i -> (-1)^(s i / g) J_i`. Distinct members in order of first
/// appearance.
pub fn unit_twists(p: &WeightedPoint) -> Vec<WeightedPoint> {
    let g = p.support_gcd();
    if g == 0 {
        return vec![p.clone()];
    }
    let mut out: Vec<WeightedPoint> = Vec::new();
    for s in 0..2 * g {
        let coords: [BigInt; 7] = std::array::from_fn(|k| {
            let c = &p.coords[k];
            let w = WEIGHTS[k];
            if c.is_zero() || (s * w / g).is_multiple_of(2) {
                c.clone()
            } else {
                -c
            }
        });
        let q = WeightedPoint::new(coords);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

fn convention_cmp(a: &WeightedPoint, b: &WeightedPoint) -> Ordering {
    a.positive_count()
        .cmp(&b.positive_count())
        .then_with(|| a.weighted_sum().cmp(&b.weighted_sum()))
}

/// Picks the twist with the most positive coordinates, then the largest
/// `sum i J_i`. The flag is set when both rules tie between distinct twists
/// and the graded-lexicographic order had to decide.
pub fn normalize_convention_flagged(p: &WeightedPoint) -> (WeightedPoint, bool) {
    let twists = unit_twists(p);
    let best = twists
        .iter()
        .max_by(|a, b| convention_cmp(a, b).then_with(|| grlex_cmp(a, b)))
        .unwrap()
        .clone();
    let tie = twists
        .iter()
        .any(|t| *t != best && convention_cmp(t, &best) == Ordering::Equal);
    (best, tie)
}

pub fn normalize_convention(p: &WeightedPoint) -> WeightedPoint {
    normalize_convention_flagged(p).0
}

/// Normalized absolute minimal representative of the class of `p`.
pub fn canonical(p: &WeightedPoint) -> WeightedPoint {
    normalize_convention(&absolute_minimal(&minimal_tuple(p)))
}

pub fn is_twist(p: &WeightedPoint, q: &WeightedPoint) -> bool {
    canonical(p) == canonical(q)
}

/// Prime-by-prime record of what [`absolute_minimal`] removed; used for
/// diagnostics.
pub fn absolute_reductions(p: &WeightedPoint) -> BTreeMap<BigInt, u32> {
    let g = p.support_gcd();
    let mut out = BTreeMap::new();
    if g == 0 {
        return out;
    }
    for q in common_primes(p) {
        let a = WEIGHTS
            .iter()
            .zip(&p.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&w, c)| valuation(c, &q) * g / w)
            .min()
            .unwrap_or(0);
        if a > 0 {
            out.insert(q, a);
        }
    }
    out
}

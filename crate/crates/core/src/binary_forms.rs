//! Binary forms with exact rational coefficients.
//!
//! A form of degree `d` is stored as `coeffs[i] = a_i` in
//! `f(X, Y) = sum_i a_i X^i Y^(d-i)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{common_denominator, format_rational, serde_rational_vec};
use crate::error::{Error, Result};
use crate::linalg::determinant_bareiss;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BinaryForm {
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<BigRational>,
}

impl BinaryForm {
    /// Builds a form of the given degree; `coeffs` must have `degree + 1` entries.
    pub fn new(degree: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::Input(format!(
                "a degree {degree} form needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        Self {
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `X^i Y^(d-i)`.
    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Value of a degree-0 form.
    pub fn constant_value(&self) -> Option<&BigRational> {
        (self.degree() == 0).then(|| &self.coeffs[0])
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::Input(format!(
                "degree mismatch: {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// `d^(ax + ay) f / dX^ax dY^ay`. Differentiating past the degree gives the
    /// zero form of degree 0.
    pub fn partial(&self, ax: usize, ay: usize) -> Self {
        let d = self.degree();
        if ax + ay > d {
            return Self::zero(0);
        }
        let nd = d - ax - ay;
        let coeffs = (0..=nd)
            .map(|j| {
                // X^(j+ax) Y^(d-j-ax) differentiates to X^j Y^(nd-j)
                let i = j + ax;
                let c = &self.coeffs[i];
                if c.is_zero() {
                    return BigRational::zero();
                }
                let f = falling(i, ax) * falling(d - i, ay);
                c * BigRational::from_integer(f)
            })
            .collect();
        Self { coeffs }
    }

    /// Evaluates `f(x, y)`.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let d = self.degree();
        let mut xp = vec![BigRational::one(); d + 1];
        let mut yp = vec![BigRational::one(); d + 1];
        for i in 1..=d {
            xp[i] = &xp[i - 1] * x;
            yp[i] = &yp[i - 1] * y;
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * &xp[i] * &yp[d - i])
            .sum()
    }
}

fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

fn factorial(n: usize) -> BigInt {
    falling(n, n)
}

fn binomial(n: usize, k: usize) -> BigInt {
    falling(n, k) / factorial(k)
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for i in (0..=d).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mono = match (i, d - i) {
                (0, 0) => String::new(),
                (a, 0) => pow_str("X", a),
                (0, b) => pow_str("Y", b),
                (a, b) => format!("{}*{}", pow_str("X", a), pow_str("Y", b)),
            };
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pow_str(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// The level-`r` transvectant `(f, g)^r`.
///
/// Uses the classical normalization
/// `(m-r)!(n-r)!/(m!n!) * sum_k (-1)^k C(r,k) d^r f/dX^(r-k)dY^k * d^r g/dX^k dY^(r-k)`,
/// so `(f, g)^0 = f g`.
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, r: usize) -> Result<BinaryForm> {
    let (m, n) = (f.degree(), g.degree());
    if r > m.min(n) {
        return Err(Error::Input(format!(
            "transvectant level {r} exceeds min degree {}",
            m.min(n)
        )));
    }
    let mut acc = BinaryForm::zero(m + n - 2 * r);
    for k in 0..=r {
        let df = f.partial(r - k, k);
        let dg = g.partial(k, r - k);
        if df.is_zero() || dg.is_zero() {
            continue;
        }
        let mut c = binomial(r, k);
        if k % 2 == 1 {
            c = -c;
        }
        let term = df.mul(&dg);
        let c = BigRational::from_integer(c);
        for (a, t) in acc.coeffs.iter_mut().zip(term.coeffs) {
            if !t.is_zero() {
                *a += t * &c;
            }
        }
    }
    let norm = BigRational::new(
        factorial(m - r) * factorial(n - r),
        factorial(m) * factorial(n),
    );
    Ok(acc.scale(&norm))
}

/// A 2x2 matrix `[[a, b], [c, d]]` acting by `(X, Y) -> (aX + bY, cX + dY)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl Matrix2 {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn identity() -> Self {
        Self::from_integers(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Deterministic random integer matrix with entries in `[-bound, bound]`
    /// and nonzero determinant.
    pub fn random(bound: i64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut e = || rng.random_range(-bound..=bound);
            let m = Self::from_integers(e(), e(), e(), e());
            if !m.det().is_zero() {
                return m;
            }
        }
    }
}

/// `f^M(X, Y) = f(aX + bY, cX + dY)`, expanded exactly.
pub fn gl2_action(f: &BinaryForm, m: &Matrix2) -> Result<BinaryForm> {
    if m.det().is_zero() {
        return Err(Error::Input("singular matrix".into()));
    }
    let d = f.degree();
    // linear forms: coefficient index 0 is Y, index 1 is X
    let lx = BinaryForm {
        coeffs: vec![m.b.clone(), m.a.clone()],
    };
    let ly = BinaryForm {
        coeffs: vec![m.d.clone(), m.c.clone()],
    };
    let mut px = vec![BinaryForm::from_integers(&[1])];
    let mut py = vec![BinaryForm::from_integers(&[1])];
    for i in 1..=d {
        px.push(px[i - 1].mul(&lx));
        py.push(py[i - 1].mul(&ly));
    }
    let mut out = BinaryForm::zero(d);
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = px[i].mul(&py[d - i]);
        for (o, t) in out.coeffs.iter_mut().zip(term.coeffs) {
            *o += t * a;
        }
    }
    Ok(out)
}

/// Homogeneous resultant of two forms, read with their formal degrees
/// (so a vanishing leading coefficient counts as a root at infinity).
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> BigRational {
    let (m, n) = (f.degree(), g.degree());
    if m + n == 0 {
        return BigRational::one();
    }
    let df = common_denominator(f.coeffs());
    let dg = common_denominator(g.coeffs());
    let to_int = |c: &BigRational, den: &BigInt| (c * BigRational::from_integer(den.clone())).to_integer();
    // highest power of X first
    let fi: Vec<BigInt> = f.coeffs.iter().rev().map(|c| to_int(c, &df)).collect();
    let gi: Vec<BigInt> = g.coeffs.iter().rev().map(|c| to_int(c, &dg)).collect();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for s in 0..n {
        let mut row = vec![BigInt::zero(); size];
        row[s..s + m + 1].clone_from_slice(&fi);
        rows.push(row);
    }
    for s in 0..m {
        let mut row = vec![BigInt::zero(); size];
        row[s..s + n + 1].clone_from_slice(&gi);
        rows.push(row);
    }
    let det = determinant_bareiss(rows);
    let scale = num_traits::pow(df, n) * num_traits::pow(dg, m);
    BigRational::new(det, scale)
}

/// Discriminant of a binary octavic, `Res(df/dX, df/dY) / 8^6`.
///
/// With this constant the value is the classical discriminant of `f(x, 1)`
/// (read as a degree 8 form, so `a_8 = a_7 = 0` is a double root at
/// infinity) and is an integer for integer forms. It vanishes exactly when
/// `f` has a repeated projective root.
pub fn discriminant(f: &BinaryForm) -> Result<BigRational> {
    if f.degree() != 8 {
        return Err(Error::Input(format!(
            "discriminant is defined here for octavics, got degree {}",
            f.degree()
        )));
    }
    let res = resultant(&f.partial(1, 0), &f.partial(0, 1));
    Ok(res / BigRational::from_integer(BigInt::from(8).pow(6)))
}

/// Homogenizes `y^2 = poly(x)` to a degree 8 form. `poly` lists integer
/// coefficients from the constant term up and must have degree 7 or 8; a
/// degree 7 model puts a branch point at infinity (`a_8 = 0`).
pub fn from_hyperelliptic(poly: &[BigInt]) -> Result<BinaryForm> {
    let deg = poly.iter().rposition(|c| !c.is_zero());
    match deg {
        Some(7) | Some(8) => {
            let mut coeffs: Vec<BigRational> = poly
                .iter()
                .take(9)
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            coeffs.resize(9, BigRational::zero());
            Ok(BinaryForm { coeffs })
        }
        Some(d) => Err(Error::UnsupportedModel(format!(
            "genus 3 hyperelliptic models need degree 7 or 8, got degree {d}"
        ))),
        None => Err(Error::UnsupportedModel("zero polynomial".into())),
    }
}

/// Deterministic random form with integer coefficients uniform in
/// `[-bound, bound]`, redrawn until nonzero.
pub fn random_form(degree: usize, bound: i64, seed: u64) -> BinaryForm {
    assert!(bound >= 1, "bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_form_with(&mut rng, degree, bound)
}

pub(crate) fn random_form_with<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> BinaryForm {
    loop {
        let coeffs: Vec<i64> = (0..=degree).map(|_| rng.random_range(-bound..=bound)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            return BinaryForm::from_integers(&coeffs);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    #[test]
    fn make_form_basis_convention() {
        let f = BinaryForm::new(2, vec![rat(0), rat(0), rat(1)]).unwrap();
        assert_eq!(f.to_string(), "X^2");
        let g = BinaryForm::from_integers(&[-1, 0, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(g.to_string(), "X^7*Y - Y^8");
        assert!(BinaryForm::new(1, vec![rat(1), rat(2), rat(3)]).is_err());
    }

    #[test]
    fn hyperelliptic_models() {
        let p7: Vec<BigInt> = [-1, 0, 0, 0, 0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let f = from_hyperelliptic(&p7).unwrap();
        assert_eq!(f, BinaryForm::from_integers(&[-1, 0, 0, 0, 0, 0, 0, 1, 0]));
        let p8: Vec<BigInt> = [-1, 0, 0, 0, 0, 0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let f = from_hyperelliptic(&p8).unwrap();
        assert_eq!(f, BinaryForm::from_integers(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]));
        let p5: Vec<BigInt> = [1, 0, 0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert!(matches!(from_hyperelliptic(&p5), Err(Error::UnsupportedModel(_))));
    }

    #[test]
    fn transvectant_examples() {
        let f = BinaryForm::from_integers(&[1, -2, 0, 3]);
        let g = BinaryForm::from_integers(&[2, 0, 5]);
        assert_eq!(transvectant(&f, &g, 0).unwrap(), f.mul(&g));
        let h = BinaryForm::from_integers(&[3, 1, -4, 1, 5, -9, 2, 6, 5]);
        for r in [1, 3, 5, 7] {
            assert!(transvectant(&h, &h, r).unwrap().is_zero());
        }
        let x2 = BinaryForm::from_integers(&[0, 0, 1]);
        let y2 = BinaryForm::from_integers(&[1, 0, 0]);
        assert_eq!(transvectant(&x2, &y2, 2).unwrap(), BinaryForm::from_integers(&[1]));
        assert!(transvectant(&x2, &y2, 3).is_err());
    }

    #[test]
    fn partial_derivatives() {
        // f = X^2 Y + 3 X Y^2
        let f = BinaryForm::from_integers(&[0, 3, 1, 0]);
        assert_eq!(f.partial(1, 0), BinaryForm::from_integers(&[3, 2, 0]));
        assert_eq!(f.partial(0, 1), BinaryForm::from_integers(&[0, 6, 1]));
        assert_eq!(f.partial(2, 1), BinaryForm::from_integers(&[2]));
        assert!(f.partial(3, 1).is_zero());
    }

    #[test]
    fn gl2_examples() {
        let f = BinaryForm::from_integers(&[1, -2, 0, 3, 4, 0, 0, 1, -1]);
        assert_eq!(gl2_action(&f, &Matrix2::identity()).unwrap(), f);
        let x8 = BinaryForm::from_integers(&[0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let t = rat_frac(3, 2);
        let m = Matrix2::new(t.clone(), rat(0), rat(0), rat(1));
        assert_eq!(
            gl2_action(&x8, &m).unwrap(),
            x8.scale(&num_traits::pow(t, 8))
        );
        let g = BinaryForm::from_integers(&[-1, 0, 0, 0, 0, 0, 0, 1, 0]);
        let swap = Matrix2::from_integers(0, 1, 1, 0);
        assert_eq!(
            gl2_action(&g, &swap).unwrap(),
            BinaryForm::from_integers(&[0, 1, 0, 0, 0, 0, 0, 0, -1])
        );
        assert!(gl2_action(&g, &Matrix2::from_integers(1, 2, 2, 4)).is_err());
    }

    #[test]
    fn discriminant_examples() {
        // X^2 (X^6 + Y^6): repeated root at X = 0
        let f = BinaryForm::from_integers(&[0, 0, 1, 0, 0, 0, 0, 0, 1]);
        assert!(discriminant(&f).unwrap().is_zero());
        let g = BinaryForm::from_integers(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(!discriminant(&g).unwrap().is_zero());
        // double root at infinity
        let h = BinaryForm::from_integers(&[1, 0, 0, 0, 0, 0, 1, 0, 0]);
        assert!(discriminant(&h).unwrap().is_zero());
        assert!(discriminant(&BinaryForm::from_integers(&[1, 0, 1])).is_err());
    }

    #[test]
    fn random_form_contract() {
        assert_eq!(random_form(8, 5, 42), random_form(8, 5, 42));
        for s in 0..50 {
            let f = random_form(8, 1, s);
            assert!(f.coeffs().iter().all(|c| c.abs() <= rat(1)));
        }
        for s in 0..1000 {
            assert!(!random_form(8, 5, s).is_zero());
        }
    }
}

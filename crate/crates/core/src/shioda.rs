//! Covariants and the integer-normalized Shioda invariants `J2, ..., J10`
//! of a binary octavic, plus the discriminant `J14`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::serde_rational;
use crate::binary_forms::{discriminant, transvectant, BinaryForm};
use crate::error::{Error, Result};
use crate::wps::{reduce_to_integral, WeightedPoint};

/// The covariants used to build the invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantSet {
    /// `(f, f)^4`, degree 8.
    pub g: BinaryForm,
    /// `(f, f)^6`, degree 4.
    pub k: BinaryForm,
    /// `(k, k)^2`, degree 4.
    pub h: BinaryForm,
    /// `(f, k)^4`, degree 4.
    pub m: BinaryForm,
    /// `(f, h)^4`, degree 4.
    pub n: BinaryForm,
    /// `(g, k)^4`, degree 4.
    pub p: BinaryForm,
    /// `(g, h)^4`, degree 4.
    pub q: BinaryForm,
}

fn require_octavic(f: &BinaryForm) -> Result<()> {
    if f.degree() != 8 {
        return Err(Error::Input(format!(
            "expected a binary octavic, got degree {}",
            f.degree()
        )));
    }
    Ok(())
}

pub fn covariants(f: &BinaryForm) -> Result<CovariantSet> {
    require_octavic(f)?;
    let g = transvectant(f, f, 4)?;
    let k = transvectant(f, f, 6)?;
    let h = transvectant(&k, &k, 2)?;
    let m = transvectant(f, &k, 4)?;
    let n = transvectant(f, &h, 4)?;
    let p = transvectant(&g, &k, 4)?;
    let q = transvectant(&g, &h, 4)?;
    Ok(CovariantSet { g, k, h, m, n, p, q })
}

/// `2^a 3^b 5^c 7^d / den`.
fn constant(a: u32, b: u32, c: u32, d: u32, den: i64) -> BigRational {
    let n = BigInt::from(2).pow(a) * BigInt::from(3).pow(b) * BigInt::from(5).pow(c) * BigInt::from(7).pow(d);
    BigRational::new(n, BigInt::from(den))
}

/// Single coefficient of a full-level transvectant.
fn invariant(f: &BinaryForm, g: &BinaryForm) -> Result<BigRational> {
    let r = f.degree();
    let t = transvectant(f, g, r)?;
    Ok(t
        .constant_value()
        .expect("full-level transvectant of equal degrees is a constant")
        .clone())
}

/// `J2, ..., J10` (index 0 holds `J2`).
pub fn invariant_values(f: &BinaryForm) -> Result<[BigRational; 9]> {
    let c = covariants(f)?;
    Ok([
        constant(2, 0, 1, 1, 1) * invariant(f, f)?,
        constant(4, 0, 2, 3, 3) * invariant(f, &c.g)?,
        constant(9, 1, 0, 4, 1) * invariant(&c.k, &c.k)?,
        constant(9, 0, 1, 5, 1) * invariant(&c.m, &c.k)?,
        constant(14, 2, 0, 6, 1) * invariant(&c.k, &c.h)?,
        constant(14, 1, 1, 7, 1) * invariant(&c.m, &c.h)?,
        constant(17, 1, 2, 9, 1) * invariant(&c.p, &c.h)?,
        constant(19, 2, 1, 9, 1) * invariant(&c.n, &c.h)?,
        constant(22, 2, 2, 11, 1) * invariant(&c.q, &c.h)?,
    ])
}

/// Values `J2, ..., J10` and `J14` of one octavic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTuple {
    #[serde(with = "serde_rational")]
    pub j2: BigRational,
    #[serde(with = "serde_rational")]
    pub j3: BigRational,
    #[serde(with = "serde_rational")]
    pub j4: BigRational,
    #[serde(with = "serde_rational")]
    pub j5: BigRational,
    #[serde(with = "serde_rational")]
    pub j6: BigRational,
    #[serde(with = "serde_rational")]
    pub j7: BigRational,
    #[serde(with = "serde_rational")]
    pub j8: BigRational,
    #[serde(with = "serde_rational")]
    pub j9: BigRational,
    #[serde(with = "serde_rational")]
    pub j10: BigRational,
    #[serde(with = "serde_rational")]
    pub j14: BigRational,
}

impl InvariantTuple {
    /// `J_i` for `i` in `2..=10` or `14`.
    pub fn get(&self, i: usize) -> &BigRational {
        match i {
            2 => &self.j2,
            3 => &self.j3,
            4 => &self.j4,
            5 => &self.j5,
            6 => &self.j6,
            7 => &self.j7,
            8 => &self.j8,
            9 => &self.j9,
            10 => &self.j10,
            14 => &self.j14,
            _ => panic!("no invariant J{i}"),
        }
    }

    /// `(J2, ..., J8)`.
    pub fn moduli_coords(&self) -> [BigRational; 7] {
        std::array::from_fn(|k| self.get(k + 2).clone())
    }

    /// `(J2, ..., J10)`.
    pub fn generators(&self) -> [BigRational; 9] {
        std::array::from_fn(|k| self.get(k + 2).clone())
    }

    pub fn is_integral(&self) -> bool {
        (2..=10).chain([14]).all(|i| self.get(i).is_integer())
    }
}

pub fn shioda_invariants(f: &BinaryForm) -> Result<InvariantTuple> {
    let [j2, j3, j4, j5, j6, j7, j8, j9, j10] = invariant_values(f)?;
    let j14 = discriminant(f)?;
    Ok(InvariantTuple {
        j2,
        j3,
        j4,
        j5,
        j6,
        j7,
        j8,
        j9,
        j10,
        j14,
    })
}

/// The point `[J2 : ... : J8]` of a smooth octavic. Rational invariants are
/// cleared to an integral representative.
pub fn moduli_point(f: &BinaryForm) -> Result<WeightedPoint> {
    let inv = shioda_invariants(f)?;
    if inv.j14.is_zero() {
        return Err(Error::SingularCurve);
    }
    let coords = inv.moduli_coords();
    if coords.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateTuple);
    }
    if coords.iter().all(|c| c.denom().is_one()) {
        return Ok(WeightedPoint::new(coords.map(|c| c.to_integer())));
    }
    reduce_to_integral(&coords)
}

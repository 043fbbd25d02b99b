use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LatticeError;
use crate::arith::{format_rational, Rational};

/// A point or tangent vector of Z^3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub [BigInt; 3]);

impl LatticeVector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Self([x.into(), y.into(), z.into()])
    }

    pub fn from_i64(v: [i64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
    }

    pub fn dot(&self, o: &Self) -> BigInt {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &o.0;
        Self([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    /// gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == BigInt::from(1)
    }

    /// Decomposes `v = g * v0` with `v0` primitive and `g > 0`.
    pub fn primitive_part(&self) -> Result<(LatticeVector, BigInt), LatticeError> {
        if self.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        let g = self.content();
        Ok((Self(self.0.clone().map(|x| x / &g)), g))
    }

    /// Whether `self` and `o` are linearly dependent.
    pub fn is_parallel(&self, o: &Self) -> bool {
        self.cross(o).is_zero()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap()
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(self.0.clone().map(Rational::from_integer))
    }

    pub fn to_vec(&self) -> Vec<BigInt> {
        self.0.to_vec()
    }
}

impl Index<usize> for LatticeVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: &LatticeVector) -> LatticeVector {
        LatticeVector([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.clone().map(|x| -x))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// A point of Q^3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub [Rational; 3]);

impl RationalPoint {
    pub fn origin() -> Self {
        LatticeVector::zero().to_rational()
    }

    pub fn from_i64(v: [i64; 3]) -> Self {
        LatticeVector::from_i64(v).to_rational()
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn add_scaled(&self, v: &LatticeVector, t: &Rational) -> Self {
        Self([0, 1, 2].map(|i| &self.0[i] + t * Rational::from_integer(v.0[i].clone())))
    }

    pub fn add_vector(&self, v: &LatticeVector) -> Self {
        self.add_scaled(v, &Rational::from_integer(1.into()))
    }

    pub fn sub_point(&self, o: &Self) -> [Rational; 3] {
        [0, 1, 2].map(|i| &self.0[i] - &o.0[i])
    }

    /// If `self - from` is a positive rational multiple of an integer vector,
    /// returns the primitive direction and the rational length factor.
    pub fn direction_from(&self, from: &Self) -> Option<(LatticeVector, Rational)> {
        let diff = self.sub_point(from);
        if diff.iter().all(Zero::is_zero) {
            return None;
        }
        let lcm = diff.iter().fold(BigInt::from(1), |l, r| l.lcm(r.denom()));
        let ints = diff.map(|r| (r * Rational::from_integer(lcm.clone())).to_integer());
        let (dir, g) = LatticeVector(ints).primitive_part().ok()?;
        Some((dir, Rational::new(g, lcm)))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|r| r.is_integer())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

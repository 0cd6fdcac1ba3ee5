use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient domain of a Laurent polynomial.
///
/// Every domain is a Z-module; [`RingCoefficient`] adds multiplication.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, k: &BigInt) -> Self;
}

pub trait RingCoefficient: Coefficient {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &BigInt) -> Self {
        self * k
    }
}

impl RingCoefficient for BigInt {
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &BigInt) -> Self {
        self * BigRational::from_integer(k.clone())
    }
}

impl RingCoefficient for BigRational {
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// A rational number modulo 1, stored as the reduced fraction `p/q` with `0 <= p < q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod1(BigRational);

impl Mod1 {
    pub fn new(value: BigRational) -> Self {
        let floor = value.floor();
        Mod1(value - floor)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Mod1::new(BigRational::new(num.into(), den.into()))
    }

    /// Canonical representative in `[0, 1)`.
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Mod1::new(&self.0 - &other.0)
    }

    /// Representative in `(-1/2, 1/2]`.
    pub fn centered(&self) -> BigRational {
        let half = BigRational::new(1.into(), 2.into());
        if self.0 > half {
            &self.0 - <BigRational as One>::one()
        } else {
            self.0.clone()
        }
    }
}

impl Coefficient for Mod1 {
    fn zero() -> Self {
        Mod1(Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0)
    }
    fn add(&self, other: &Self) -> Self {
        Mod1::new(&self.0 + &other.0)
    }
    fn neg(&self) -> Self {
        Mod1::new(-&self.0)
    }
    fn scale(&self, k: &BigInt) -> Self {
        Mod1::new(&self.0 * BigRational::from_integer(k.clone()))
    }
}

impl fmt::Debug for Mod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Formatting of coefficients inside the polynomial grammar.
pub trait DisplayCoefficient: Coefficient {
    /// Absolute value text and whether the value is negative.
    fn sign_and_abs(&self) -> (bool, String);
    fn is_unit_magnitude(&self) -> bool;
}

impl DisplayCoefficient for BigInt {
    fn sign_and_abs(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
    fn is_unit_magnitude(&self) -> bool {
        self.abs().is_one()
    }
}

fn ratio_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl DisplayCoefficient for BigRational {
    fn sign_and_abs(&self) -> (bool, String) {
        (self.is_negative(), ratio_text(&self.abs()))
    }
    fn is_unit_magnitude(&self) -> bool {
        self.abs().is_one()
    }
}

impl DisplayCoefficient for Mod1 {
    fn sign_and_abs(&self) -> (bool, String) {
        (false, ratio_text(&self.0))
    }
    fn is_unit_magnitude(&self) -> bool {
        false
    }
}


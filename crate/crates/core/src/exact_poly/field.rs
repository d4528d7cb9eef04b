//! Coefficient fields: exact rationals and word-sized prime fields.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// The arithmetic the polynomial, linear-algebra and Gröbner code needs.
///
/// Methods take references and return owned values; names avoid clashing
/// with `std::ops` so both can be in scope.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Image of a rational, or `None` when the denominator vanishes.
    fn from_rational(q: &Rational) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inverse(&self) -> Self;
    fn characteristic() -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.plus(o);
    }
    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn characteristic() -> u64 {
        0
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Element of `ℤ/Pℤ` for a prime `P < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

/// `2^31 - 1`.
pub const PRIME_A: u64 = 2_147_483_647;
/// `2^31 - 19`.
pub const PRIME_B: u64 = 2_147_483_629;

pub type FpA = Fp<PRIME_A>;
pub type FpB = Fp<PRIME_B>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }
    pub fn value(self) -> u64 {
        self.0
    }
    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().unwrap())
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Symmetric representative reads better for small signed values.
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        let d = Self::from_bigint(q.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Self::from_bigint(q.numer()).times(&d.inverse()))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn plus(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn minus(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn times(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn negated(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inverse(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn characteristic() -> u64 {
        P
    }
}

/// Renders a rational compactly (`3`, `-1/2`).
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime(p: u64) -> bool {
        p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime(PRIME_A));
        assert!(is_prime(PRIME_B));
        const { assert!(PRIME_A > 1 << 30 && PRIME_B > 1 << 30) };
    }

    #[test]
    fn fp_arithmetic() {
        let a = FpA::from_i64(-3);
        let b = FpA::from_i64(5);
        assert_eq!(a.plus(&b), FpA::from_i64(2));
        assert_eq!(a.times(&b), FpA::from_i64(-15));
        assert_eq!(b.times(&b.inverse()), FpA::one());
        let half = FpA::from_rational(&Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.plus(&half), FpA::one());
        assert_eq!(format!("{}", FpA::from_i64(-7)), "-7");
    }

    #[test]
    fn rational_helpers() {
        let q = Rational::new((-1).into(), 2.into());
        assert_eq!(fmt_rational(&q), "-1/2");
        assert_eq!(fmt_rational(&Rational::from_i64(4)), "4");
        assert_eq!(q.inverse(), Rational::from_i64(-2));
    }
}

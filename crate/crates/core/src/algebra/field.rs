//! Coefficient fields.
//!
//! Every polynomial routine in this crate is written once against [`Field`]
//! and reused for `Q`, `Q(x)`, every tower level, and the Gaussian extension
//! `F(i)` used when residues come in conjugate pairs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Exact arithmetic in a commutative field of characteristic zero.
///
/// `inv` panics on zero; callers that can see a zero divisor check
/// `is_zero` first and report a proper error.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Image under a fixed homomorphism into `F_p`, when defined.
    fn image_mod_p(&self) -> Option<u64> {
        None
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Field for Rational {
    fn image_mod_p(&self) -> Option<u64> {
        super::modp::rational(self)
    }
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero rational");
        self.recip()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Shorthand for building small rationals in code and tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `a + b·i` over a formally real field `F`.
///
/// `F(i)` is a field as long as `-1` is not a square in `F`, which holds for
/// `Q`, `Q(x)` and every log/exp tower over it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gauss<F> {
    pub re: F,
    pub im: F,
}

impl<F: Field> Gauss<F> {
    pub fn new(re: F, im: F) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: F) -> Self {
        Gauss { re, im: F::zero() }
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: self.im.neg() }
    }
}

impl<F: Field> fmt::Debug for Gauss<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + i·{:?})", self.re, self.im)
    }
}

impl<F: Field> Field for Gauss<F> {
    fn zero() -> Self {
        Gauss::real(F::zero())
    }
    fn one() -> Self {
        Gauss::real(F::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Gauss::new(self.re.add(&o.re), self.im.add(&o.im))
    }
    fn sub(&self, o: &Self) -> Self {
        Gauss::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(self.re.mul(&o.re));
        }
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Gauss::new(re, im)
    }
    fn neg(&self) -> Self {
        Gauss::new(self.re.neg(), self.im.neg())
    }
    fn inv(&self) -> Self {
        if self.im.is_zero() {
            return Gauss::real(self.re.inv());
        }
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let n = norm.inv();
        Gauss::new(self.re.mul(&n), self.im.neg().mul(&n))
    }
    fn from_rational(q: &Rational) -> Self {
        Gauss::real(F::from_rational(q))
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

use std::fmt;

use super::field::Field;
use super::gcd::gcd_unchecked;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Reduced quotient of polynomials: `den` monic, `gcd(num, den) = 1`.
///
/// Because the representation is unique, structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = gcd_unchecked(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Self::with_monic_den(num, den)
    }

    /// `num/den` for coprime inputs; only the denominator is normalized.
    pub(crate) fn from_coprime(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        Ok(Self::with_monic_den(num, den))
    }

    /// Caller guarantees coprimality.
    fn with_monic_den(num: Poly<F>, den: Poly<F>) -> Self {
        let lc = den.lc().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn into_parts(self) -> (Poly<F>, Poly<F>) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// True when both numerator and denominator have degree zero.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, when [`Self::is_constant`].
    pub fn as_constant(&self) -> Option<F> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.add(&o.num));
        }
        if o.den.is_one() {
            // gcd(a + c·b, b) = gcd(a, b) = 1
            return RatFunc { num: self.num.add(&o.num.mul(&self.den)), den: self.den.clone() };
        }
        if self.den.is_one() {
            return RatFunc { num: o.num.add(&self.num.mul(&o.den)), den: o.den.clone() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let g = gcd_unchecked(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            // coprime denominators: only factors of the product can cancel,
            // and none of them divide the new numerator
            return Self::with_monic_den(num, self.den.mul(&o.den));
        }
        let sd = self.den.exact_div(&g).expect("gcd divides");
        let od = o.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&od).add(&o.num.mul(&sd));
        if num.is_zero() {
            return RatFunc::zero();
        }
        // only factors of g can cancel
        let h = gcd_unchecked(&num, &g);
        let (num, g) = cancel(&num, &g, &h);
        Self::with_monic_den(num, sd.mul(&od).mul(&g))
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd_unchecked(&self.num, &o.den);
        let g2 = gcd_unchecked(&o.num, &self.den);
        let (a, d) = cancel(&self.num, &o.den, &g1);
        let (c, b) = cancel(&o.num, &self.den, &g2);
        Self::with_monic_den(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Quotient-rule derivative with respect to the own variable, for
    /// coefficient fields of constants.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::reduce(n, self.den.mul(&self.den))
    }

    pub fn eval(&self, at: &F) -> Result<F> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(at).div(&d))
    }
}

fn cancel<F: Field>(a: &Poly<F>, b: &Poly<F>, g: &Poly<F>) -> (Poly<F>, Poly<F>) {
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.exact_div(g).expect("gcd divides"), b.exact_div(g).expect("gcd divides"))
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{int, rat, Rational};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_ints(cs)
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f.num(), &p(&[1, 1]));
        assert!(f.den().is_one());
        let g = RatFunc::new(p(&[1]), p(&[0, 2])).unwrap();
        assert_eq!(g.num(), &Poly::constant(rat(1, 2)));
        assert!(g.den().is_monic());
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap(); // 1/t
        let b = RatFunc::new(p(&[1]), p(&[1, 1])).unwrap(); // 1/(t+1)
        let s = a.add(&b);
        assert_eq!(s, RatFunc::new(p(&[1, 2]), p(&[0, 1, 1])).unwrap());
        assert_eq!(s.sub(&b), a);
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
        assert!(RatFunc::<Rational>::zero().inv().is_err());
    }

    #[test]
    fn quotient_rule() {
        // d/dt 1/t = -1/t^2
        let a = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(a.derivative(), RatFunc::new(p(&[-1]), p(&[0, 0, 1])).unwrap());
        assert_eq!(a.eval(&int(4)).unwrap(), rat(1, 4));
    }
}

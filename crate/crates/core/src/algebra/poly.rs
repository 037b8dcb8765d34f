use std::fmt;
use std::ops;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[i]` multiplies `var^i`.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and `degree` is `len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![F::one()] }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `c·var^deg`
    pub fn monomial(c: F, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::monomial(F::one(), 1)
    }

    /// `var + c`
    pub fn linear(c: F) -> Self {
        Poly::new(vec![c, F::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(F::neg).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
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

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dlc = divisor.lc().ok_or(Error::DivisionByZero)?;
        let dn = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lc = dlc.inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dn];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dn];
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&inv_lc);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = rem[k + j].sub(&q.mul(d));
                }
            }
            quot[k] = q;
        }
        rem.truncate(dn);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient of a division that is known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal("polynomial division was not exact".into()));
        }
        Ok(q)
    }

    /// Formal derivative with respect to the polynomial's own variable.
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_int(i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Index of the lowest nonzero coefficient, i.e. the power of `var`
    /// dividing the polynomial.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the polynomial is `c·var^k` for some `c`, `k`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}·t")?,
                _ => write!(f, "{c:?}·t^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident) => {
        impl<F: Field> ops::$tr<&Poly<F>> for &Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &Poly<F>) -> Poly<F> {
                Poly::$method(self, rhs)
            }
        }
        impl<F: Field> ops::$tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                Poly::$method(&self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl<F: Field> ops::Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

impl<F: Field> ops::Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(&self)
    }
}

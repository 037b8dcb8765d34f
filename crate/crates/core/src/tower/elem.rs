use std::fmt;
use std::ops;

use crate::algebra::{Field, Poly, RatFunc, Rational};
use crate::error::{Error, Result};

/// An element of `Q(x)(θ1, …, θn)`.
///
/// Level 0 is `Q(x)`. An element of level `k ≥ 1` is a reduced rational
/// function in `θk` whose coefficients are elements of level `< k`. An
/// element is always stored at the lowest level that can hold it, so two
/// elements are equal exactly when their representations are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TowerElem {
    Base(RatFunc<Rational>),
    Ext { level: usize, frac: RatFunc<TowerElem> },
}

impl Default for TowerElem {
    fn default() -> Self {
        TowerElem::zero()
    }
}

impl TowerElem {
    pub fn rational(q: Rational) -> Self {
        TowerElem::Base(RatFunc::constant(q))
    }

    pub fn integer(n: i64) -> Self {
        TowerElem::from_int(n)
    }

    /// The base variable `x`.
    pub fn x() -> Self {
        TowerElem::Base(RatFunc::from_poly(Poly::var()))
    }

    /// The extension variable of `level` (`x` for level 0).
    pub fn theta(level: usize) -> Self {
        if level == 0 {
            return TowerElem::x();
        }
        TowerElem::Ext { level, frac: RatFunc::from_poly(Poly::var()) }
    }

    pub fn from_ratfunc_x(f: RatFunc<Rational>) -> Self {
        TowerElem::Base(f)
    }

    /// Polynomial in `x` with rational coefficients given low degree first.
    pub fn x_poly(coeffs: &[Rational]) -> Self {
        TowerElem::Base(RatFunc::from_poly(Poly::new(coeffs.to_vec())))
    }

    pub fn level(&self) -> usize {
        match self {
            TowerElem::Base(_) => 0,
            TowerElem::Ext { level, .. } => *level,
        }
    }

    /// Constants are exactly the rationals (`D c = 0`).
    pub fn is_constant(&self) -> bool {
        matches!(self, TowerElem::Base(f) if f.is_constant())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            TowerElem::Base(f) => f.as_constant(),
            TowerElem::Ext { .. } => None,
        }
    }

    fn make(level: usize, frac: RatFunc<TowerElem>) -> Self {
        if level == 0 {
            unreachable!("level-0 elements are built from RatFunc<Rational>");
        }
        match frac.as_constant() {
            Some(c) => c,
            None => TowerElem::Ext { level, frac },
        }
    }

    /// The element as a fraction in the variable of `level`.
    fn lift(&self, level: usize) -> RatFunc<TowerElem> {
        match self {
            TowerElem::Ext { level: l, frac } if *l == level => frac.clone(),
            _ => {
                debug_assert!(self.level() < level);
                RatFunc::constant(self.clone())
            }
        }
    }

    /// Numerator and denominator as polynomials in the variable of `level`,
    /// with coefficients of lower level (constants when `level == 0`).
    pub fn parts(&self, level: usize) -> Result<(Poly<TowerElem>, Poly<TowerElem>)> {
        if self.level() > level {
            return Err(Error::InvalidElement(format!(
                "element of level {} viewed at level {level}",
                self.level()
            )));
        }
        if level == 0 {
            let TowerElem::Base(f) = self else { unreachable!() };
            let conv = |p: &Poly<Rational>| p.map(|c| TowerElem::rational(c.clone()));
            return Ok((conv(f.num()), conv(f.den())));
        }
        let f = self.lift(level);
        let (n, d) = f.into_parts();
        Ok((n, d))
    }

    /// Builds `num/den` in the variable of `level`, reducing to canonical
    /// form.
    pub fn from_parts(level: usize, num: Poly<TowerElem>, den: Poly<TowerElem>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        for c in num.coeffs().iter().chain(den.coeffs()) {
            if level == 0 && !c.is_constant() || level > 0 && c.level() >= level {
                return Err(Error::InvalidElement(format!(
                    "coefficient of level {} in a level-{level} fraction",
                    c.level()
                )));
            }
        }
        if level == 0 {
            let conv = |p: &Poly<TowerElem>| p.map(|c| c.as_rational().expect("checked constant"));
            return Ok(TowerElem::Base(RatFunc::new(conv(&num), conv(&den))?));
        }
        Ok(TowerElem::make(level, RatFunc::new(num, den)?))
    }

    /// Like [`Self::from_parts`] for a level above zero, skipping the gcd;
    /// the caller guarantees `gcd(num, den) = 1`.
    pub(crate) fn from_coprime_parts(
        level: usize,
        num: Poly<TowerElem>,
        den: Poly<TowerElem>,
    ) -> Result<Self> {
        debug_assert!(level > 0);
        Ok(TowerElem::make(level, RatFunc::from_coprime(num, den)?))
    }

    /// Polynomial in the variable of `level`.
    pub fn from_poly(level: usize, p: Poly<TowerElem>) -> Result<Self> {
        TowerElem::from_parts(level, p, Poly::one())
    }

    /// Rebuilds the element bottom-up from its parts. Values built through
    /// the public constructors are already canonical, so this is the
    /// identity on them.
    pub fn canonicalize(&self) -> Result<Self> {
        match self {
            TowerElem::Base(f) => Ok(TowerElem::Base(RatFunc::new(f.num().clone(), f.den().clone())?)),
            TowerElem::Ext { level, frac } => {
                let canon = |p: &Poly<TowerElem>| -> Result<Poly<TowerElem>> {
                    Ok(Poly::new(p.coeffs().iter().map(|c| c.canonicalize()).collect::<Result<_>>()?))
                };
                TowerElem::from_parts(*level, canon(frac.num())?, canon(frac.den())?)
            }
        }
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.try_inv()?))
    }

    pub fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.try_inv()? } else { self.clone() };
        Ok(Field::pow(&base, exp.unsigned_abs() as u32))
    }

    /// Sign of the leading rational coefficient, following leading
    /// coefficients of the numerator down to level 0.
    pub fn leading_sign_negative(&self) -> bool {
        match self {
            TowerElem::Base(f) => f.num().lc().is_some_and(|c| c < &<Rational as Field>::zero()),
            TowerElem::Ext { frac, .. } => {
                frac.num().lc().is_some_and(|c| c.leading_sign_negative())
            }
        }
    }

    /// True if the element occurs as `θ_level`'s rational function with
    /// monomial numerator and denominator, i.e. `c·θ^k` for `k ≠ 0`.
    pub fn monomial_in_top(&self) -> Option<(TowerElem, i64)> {
        let TowerElem::Ext { frac, .. } = self else { return None };
        if !frac.num().is_monomial() || !frac.den().is_monomial() {
            return None;
        }
        let k = frac.num().deg() as i64 - frac.den().deg() as i64;
        let c = frac.num().lc().expect("nonzero").clone();
        Some((c, k))
    }
}

impl Field for TowerElem {
    fn image_mod_p(&self) -> Option<u64> {
        use crate::algebra::modp;
        let (num, den, at) = match self {
            TowerElem::Base(f) => {
                let img = |p: &Poly<Rational>| -> Option<Vec<u64>> {
                    p.coeffs().iter().map(modp::rational).collect()
                };
                (img(f.num())?, img(f.den())?, modp::point(0))
            }
            TowerElem::Ext { level, frac } => {
                let img = |p: &Poly<TowerElem>| -> Option<Vec<u64>> {
                    p.coeffs().iter().map(Field::image_mod_p).collect()
                };
                (img(frac.num())?, img(frac.den())?, modp::point(*level))
            }
        };
        let d = modp::horner(&den, at);
        (d != 0).then(|| modp::mul(modp::horner(&num, at), modp::inv(d)))
    }
    fn zero() -> Self {
        TowerElem::Base(RatFunc::zero())
    }
    fn one() -> Self {
        TowerElem::Base(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        matches!(self, TowerElem::Base(f) if f.is_zero())
    }
    fn is_one(&self) -> bool {
        matches!(self, TowerElem::Base(f) if f.is_constant() && f.num().coeff(0) == <Rational as Field>::one())
    }
    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (TowerElem::Base(a), TowerElem::Base(b)) => TowerElem::Base(a.add(b)),
            _ => {
                let l = self.level().max(o.level());
                TowerElem::make(l, self.lift(l).add(&o.lift(l)))
            }
        }
    }
    fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (TowerElem::Base(a), TowerElem::Base(b)) => TowerElem::Base(a.sub(b)),
            _ => {
                let l = self.level().max(o.level());
                TowerElem::make(l, self.lift(l).sub(&o.lift(l)))
            }
        }
    }
    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (TowerElem::Base(a), TowerElem::Base(b)) => TowerElem::Base(a.mul(b)),
            _ => {
                if self.is_zero() || o.is_zero() {
                    return TowerElem::zero();
                }
                let l = self.level().max(o.level());
                TowerElem::make(l, self.lift(l).mul(&o.lift(l)))
            }
        }
    }
    fn neg(&self) -> Self {
        match self {
            TowerElem::Base(a) => TowerElem::Base(a.neg()),
            TowerElem::Ext { level, frac } => TowerElem::Ext { level: *level, frac: frac.neg() },
        }
    }
    fn inv(&self) -> Self {
        match self {
            TowerElem::Base(a) => TowerElem::Base(a.inv().expect("inverse of zero")),
            TowerElem::Ext { level, frac } => {
                TowerElem::make(*level, frac.inv().expect("extension elements are nonzero"))
            }
        }
    }
    fn from_rational(q: &Rational) -> Self {
        TowerElem::rational(q.clone())
    }
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerElem::Base(r) => write!(f, "{}", debug_x(r)),
            TowerElem::Ext { level, frac } => {
                let num = debug_poly(frac.num(), *level);
                if frac.den().is_one() {
                    write!(f, "{num}")
                } else {
                    write!(f, "({num})/({})", debug_poly(frac.den(), *level))
                }
            }
        }
    }
}

fn debug_x(r: &RatFunc<Rational>) -> String {
    let p = |p: &Poly<Rational>| {
        let mut s = Vec::new();
        for (i, c) in p.coeffs().iter().enumerate().rev() {
            if Field::is_zero(c) {
                continue;
            }
            s.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            });
        }
        if s.is_empty() {
            "0".to_string()
        } else {
            s.join(" + ")
        }
    };
    if r.den().is_one() {
        p(r.num())
    } else {
        format!("({})/({})", p(r.num()), p(r.den()))
    }
}

fn debug_poly(p: &Poly<TowerElem>, level: usize) -> String {
    let mut s = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        s.push(match i {
            0 => format!("{c:?}"),
            1 => format!("[{c:?}]t{level}"),
            _ => format!("[{c:?}]t{level}^{i}"),
        });
    }
    s.join(" + ")
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident) => {
        impl ops::$tr<&TowerElem> for &TowerElem {
            type Output = TowerElem;
            fn $method(self, rhs: &TowerElem) -> TowerElem {
                Field::$method(self, rhs)
            }
        }
        impl ops::$tr<TowerElem> for TowerElem {
            type Output = TowerElem;
            fn $method(self, rhs: TowerElem) -> TowerElem {
                Field::$method(&self, &rhs)
            }
        }
    };
}

elem_binop!(Add, add);
elem_binop!(Sub, sub);
elem_binop!(Mul, mul);

impl ops::Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        Field::neg(self)
    }
}

impl ops::Neg for TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        Field::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn t1() -> TowerElem {
        TowerElem::theta(1)
    }

    #[test]
    fn levels_drop_when_theta_cancels() {
        let x = TowerElem::x();
        let e = &(&t1() + &x) - &t1();
        assert_eq!(e, x);
        assert_eq!(e.level(), 0);
        let q = t1().mul(&t1().inv());
        assert!(q.is_one());
    }

    #[test]
    fn reduces_common_factor() {
        // (θ^2 - 1)/(θ - 1) = θ + 1
        let num = Poly::new(vec![TowerElem::integer(-1), TowerElem::zero(), TowerElem::one()]);
        let den = Poly::new(vec![TowerElem::integer(-1), TowerElem::one()]);
        let e = TowerElem::from_parts(1, num, den).unwrap();
        assert_eq!(e, &t1() + &TowerElem::one());
        assert_eq!(e.canonicalize().unwrap(), e);
    }

    #[test]
    fn coefficient_level_checked() {
        let bad = Poly::new(vec![t1()]);
        assert!(TowerElem::from_parts(1, bad.clone(), Poly::one()).is_err());
        assert!(TowerElem::from_parts(0, Poly::new(vec![TowerElem::x()]), Poly::one()).is_err());
        assert!(matches!(
            TowerElem::from_parts(1, Poly::one(), Poly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn parts_round_trip() {
        let e = (&t1() + &TowerElem::x()).try_inv().unwrap();
        let (n, d) = e.parts(1).unwrap();
        assert_eq!(TowerElem::from_parts(1, n, d).unwrap(), e);
        let (n0, d0) = TowerElem::rational(rat(3, 2)).parts(1).unwrap();
        assert_eq!(n0.coeff(0), TowerElem::rational(rat(3, 2)));
        assert!(d0.is_one());
        assert!(e.parts(0).is_err());
    }

    #[test]
    fn constants_and_sign() {
        assert!(TowerElem::rational(int(5)).is_constant());
        assert!(!TowerElem::x().is_constant());
        assert!((-t1()).leading_sign_negative());
        assert_eq!(TowerElem::rational(rat(-1, 3)).as_rational(), Some(rat(-1, 3)));
    }
}

//! Euclidean gcd, extended gcd and the polynomial diophantine equation.

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Monic greatest common divisor.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial("gcd of two zero polynomials"));
    }
    Ok(gcd_unchecked(a, b))
}

/// Same as [`poly_gcd`] but maps `gcd(0, 0)` to `0`.
pub(crate) fn gcd_unchecked<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    // constants short-circuit; this is the common case inside tower arithmetic
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() || super::modp::certainly_coprime(a, b) {
        return Poly::one();
    }
    let (mut r0, mut r1) = if a.deg() >= b.deg() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !r1.is_zero() {
        let r = r0.rem(&r1).expect("nonzero divisor");
        r0 = r1;
        // keeping remainders monic limits coefficient growth in Q(x)
        r1 = r.monic();
    }
    r0.monic()
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
///
/// When `deg a <= deg b` the remainder sequence starts from `b`, so a
/// divisor of `b` equal to `a` yields `s = 1/lc(a), t = 0`.
pub fn xgcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial("extended gcd of two zero polynomials"));
    }
    if a.deg() <= b.deg() && !a.is_zero() {
        let (g, t, s) = xgcd_run(b, a);
        return Ok((g, s, t));
    }
    Ok(xgcd_run(a, b))
}

fn xgcd_run<F: Field>(a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let inv = r0.lc().expect("nonzero gcd").inv();
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// Solves `σ·a + τ·b = c`.
///
/// `σ` is reduced modulo `b`, so `deg σ < deg b` whenever `b` is
/// nonconstant; `τ` then follows by exact division.
pub fn solve_diophantine<F: Field>(
    a: &Poly<F>,
    b: &Poly<F>,
    c: &Poly<F>,
) -> Result<(Poly<F>, Poly<F>)> {
    if b.is_zero() {
        if a.is_zero() {
            return Err(Error::NotSolvable("both diophantine coefficients are zero".into()));
        }
        let (q, r) = c.divmod(a)?;
        if !r.is_zero() {
            return Err(Error::NotSolvable("a does not divide c".into()));
        }
        return Ok((q, Poly::zero()));
    }
    let (g, s, _) = xgcd(a, b)?;
    let (cg, r) = c.divmod(&g)?;
    if !r.is_zero() {
        return Err(Error::NotSolvable("gcd(a, b) does not divide c".into()));
    }
    let sigma = s.mul(&cg).rem(b)?;
    let tau = c
        .sub(&sigma.mul(a))
        .divmod(b)
        .and_then(|(q, r)| {
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Internal("diophantine back-substitution not exact".into()))
            }
        })?;
    Ok((sigma, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{int, Rational};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_ints(cs)
    }

    #[test]
    fn gcd_basic() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        // (a, 0) is a made monic
        let g = poly_gcd(&p(&[2, 4]), &Poly::zero()).unwrap();
        assert_eq!(g, Poly::new(vec![crate::algebra::field::rat(1, 2), int(1)]));
        assert!(poly_gcd::<Rational>(&Poly::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let (g, s, t) = xgcd(&a, &b).unwrap();
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn diophantine_constant_case() {
        let (s, t) = solve_diophantine(&p(&[1]), &p(&[0, 1]), &p(&[2, 1])).unwrap();
        assert_eq!((s, t), (p(&[2]), p(&[1])));
    }

    #[test]
    fn diophantine_coprime_linears() {
        let (s, t) = solve_diophantine(&p(&[1, 1]), &p(&[0, 1]), &p(&[1])).unwrap();
        assert_eq!((s, t), (p(&[1]), p(&[-1])));
    }

    #[test]
    fn diophantine_unsolvable() {
        // gcd(t, t^2) = t does not divide 1
        assert!(matches!(
            solve_diophantine(&p(&[0, 1]), &p(&[0, 0, 1]), &p(&[1])),
            Err(Error::NotSolvable(_))
        ));
    }
}

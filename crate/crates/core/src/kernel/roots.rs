//! Exact extraction of rational and Gaussian-rational roots.
//!
//! Roots are located numerically, guessed as rationals from continued
//! fraction convergents and then confirmed by exact division. A guess is
//! never trusted on its own, so a failed guess only costs a retry.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::gcd::gcd_unchecked;
use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};

/// Distinct roots of a polynomial over `Q` that lie in `Q` or `Q(i)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Residues {
    pub rational: Vec<Rational>,
    /// Conjugate pairs `γ ± s·i` stored as `(γ, s)` with `s > 0`.
    pub conjugate: Vec<(Rational, Rational)>,
}

/// Splits the distinct roots of `p` into rationals and conjugate pairs.
///
/// Fails with `UnsupportedSplitting` if any root is outside `Q(i)` or has
/// irrational real or imaginary part.
pub fn split_roots(p: &Poly<Rational>) -> Result<Residues> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("root splitting of zero"));
    }
    let mut q = p.exact_div(&gcd_unchecked(p, &p.derivative()))?.monic();
    let mut out = Residues::default();

    if q.degree().unwrap_or(0) > 0 {
        for z in approximate_roots(&q) {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            if let Some(c) = confirm(&convergents(z.re), |c| Zero::is_zero(&q.eval(c))) {
                q = q.exact_div(&Poly::new(vec![-c.clone(), <Rational as One>::one()]))?;
                out.rational.push(c);
            }
        }
    }

    if q.degree().unwrap_or(0) > 0 {
        for z in approximate_roots(&q) {
            if z.im <= 1e-9 * (1.0 + z.re.abs()) || q.degree().unwrap_or(0) < 2 {
                continue;
            }
            let res = convergents(z.re);
            let ims = convergents(z.im);
            let mut found = None;
            'search: for g in res.iter().rev() {
                for s in ims.iter().rev() {
                    let quad = Poly::new(vec![
                        g * g + s * s,
                        -(g * Rational::from_integer(BigInt::from(2))),
                        <Rational as One>::one(),
                    ]);
                    if q.rem(&quad)?.is_zero() {
                        found = Some((g.clone(), s.clone(), quad));
                        break 'search;
                    }
                }
            }
            if let Some((g, s, quad)) = found {
                q = q.exact_div(&quad)?;
                out.conjugate.push((g, s));
            }
        }
    }

    if q.degree().unwrap_or(0) > 0 {
        return Err(Error::UnsupportedSplitting(format!(
            "{} root(s) outside Q(i) with rational parts",
            q.degree().unwrap_or(0)
        )));
    }
    out.rational.sort();
    out.conjugate.sort();
    Ok(out)
}

fn confirm(cands: &[Rational], ok: impl Fn(&Rational) -> bool) -> Option<Rational> {
    cands.iter().rev().find(|c| ok(c)).cloned()
}

/// Continued fraction convergents of `v` until the approximation is
/// within double precision or denominators exceed `10^9`.
fn convergents(v: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !v.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = v;
    for _ in 0..40 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h = &ai * &h1 + &h0;
        let k = &ai * &k1 + &k0;
        if k.abs() > BigInt::from(1_000_000_000i64) {
            break;
        }
        out.push(Rational::new(h.clone(), k.clone()));
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let approx = h1.to_f64().unwrap_or(0.0) / k1.to_f64().unwrap_or(1.0);
        let frac = r - a;
        if (approx - v).abs() <= 1e-12 * (1.0 + v.abs()) || frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

fn to_c(q: &Rational) -> Complex64 {
    Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn horner(cs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in cs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a monic polynomial by the Aberth–Ehrlich
/// iteration, finished with a few Newton steps.
fn approximate_roots(p: &Poly<Rational>) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let cs: Vec<Complex64> = p.coeffs().iter().map(to_c).collect();
    if n == 1 {
        return vec![-cs[0] / cs[1]];
    }
    let bound = 1.0 + cs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max) / cs[n].norm();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(bound.min(1e6) * 0.5 + 0.1, ang)
        })
        .collect();
    for _ in 0..800 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (pv, dv) = horner(&cs, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dv) = horner(&cs, *zk);
            if dv.norm() == 0.0 {
                break;
            }
            let step = pv / dv;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn from_roots(rs: &[Rational]) -> Poly<Rational> {
        rs.iter().fold(Poly::one(), |acc, r| acc.mul(&Poly::new(vec![-r.clone(), int(1)])))
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let p = from_roots(&[rat(1, 2), rat(1, 2), rat(-7, 3), int(4)]);
        let r = split_roots(&p).unwrap();
        assert_eq!(r.rational, vec![rat(-7, 3), rat(1, 2), int(4)]);
        assert!(r.conjugate.is_empty());
    }

    #[test]
    fn conjugate_pair() {
        // (z - 1/2)^2 + 1/4 times (z - 3)
        let quad = Poly::new(vec![rat(1, 2), int(-1), int(1)]);
        let p = quad.mul(&from_roots(&[int(3)]));
        let r = split_roots(&p).unwrap();
        assert_eq!(r.rational, vec![int(3)]);
        assert_eq!(r.conjugate, vec![(rat(1, 2), rat(1, 2))]);
    }

    #[test]
    fn irrational_roots_rejected() {
        // z^2 - 1/8
        let p = Poly::new(vec![rat(-1, 8), int(0), int(1)]);
        assert!(matches!(split_roots(&p), Err(Error::UnsupportedSplitting(_))));
    }

    #[test]
    fn convergents_recover_small_fractions() {
        let c = convergents(-7.0 / 13.0);
        assert_eq!(c.last(), Some(&rat(-7, 13)));
    }
}

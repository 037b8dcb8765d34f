use crate::algebra::gcd::gcd_unchecked;
use crate::algebra::{is_squarefree, resultant, Field, Gauss, Poly, Rational};
use crate::error::{Error, Result};
use crate::tower::{ExtensionKind, Tower, TowerElem};

use super::roots::split_roots;
use super::LiouvilleForm;

/// The resultant `res_θ(b, R - z·D(b))` as a polynomial in `z` whose
/// coefficients lie one level below the integration variable.
///
/// The order of the arguments only changes the sign, which is irrelevant
/// for its roots.
#[derive(Clone, Debug, PartialEq)]
pub struct TRResultant {
    pub poly_in_z: Poly<TowerElem>,
}

impl TRResultant {
    pub fn degree(&self) -> Option<usize> {
        self.poly_in_z.degree()
    }
}

fn make_monic(r: &Poly<TowerElem>, b: &Poly<TowerElem>) -> Result<(Poly<TowerElem>, Poly<TowerElem>)> {
    let lc = b.lc().ok_or(Error::ZeroPolynomial("zero denominator"))?;
    let inv = lc.try_inv()?;
    Ok((r.scale(&inv), b.scale(&inv)))
}

/// TR-resultant of the proper fraction `r/b` in the top variable of
/// `tower`.
///
/// The polynomial in `z` is recovered by evaluating at `z = 0..=deg b` and
/// interpolating, which keeps all arithmetic inside the tower.
pub fn tr_resultant(r: &Poly<TowerElem>, b: &Poly<TowerElem>, tower: &Tower) -> Result<TRResultant> {
    let level = tower.height();
    if b.is_zero() {
        return Err(Error::ZeroPolynomial("TR-resultant with zero denominator"));
    }
    if !is_squarefree(b) {
        return Err(Error::NotSquareFree);
    }
    let (r, b) = make_monic(r, b)?;
    let db = tower.derive_poly(level, &b);
    let n = b.degree().expect("nonzero");
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let a = r.sub(&db.scale(&TowerElem::integer(k as i64)));
        values.push(if a.is_zero() { TowerElem::zero() } else { resultant(&b, &a)? });
    }
    Ok(TRResultant { poly_in_z: interpolate(&values) })
}

/// Polynomial of degree `< values.len()` through `(k, values[k])`.
fn interpolate(values: &[TowerElem]) -> Poly<TowerElem> {
    let n = values.len();
    let mut acc: Poly<TowerElem> = Poly::zero();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut basis: Poly<Rational> = Poly::one();
        let mut denom = Rational::from_int(1);
        for j in (0..n).filter(|&j| j != i) {
            basis = basis.mul(&Poly::new(vec![Rational::from_int(-(j as i64)), Rational::from_int(1)]));
            denom = denom.mul(&Rational::from_int(i as i64 - j as i64));
        }
        let basis = basis.scale(&denom.inv());
        acc = acc.add(&basis.map(|q| TowerElem::rational(q.clone()).mul(v)));
    }
    acc
}

/// Makes the resultant monic and reports whether every coefficient is a
/// constant.
pub fn constant_coefficient_check(tr: &TRResultant) -> Result<bool> {
    if tr.poly_in_z.is_zero() {
        return Err(Error::ZeroPolynomial("TR-resultant vanishes identically"));
    }
    Ok(tr.poly_in_z.monic().coeffs().iter().all(TowerElem::is_constant))
}

/// Rothstein–Trager integration of the proper fraction `r/b` with `b`
/// square-free in the top variable of `tower`.
///
/// Rational residues give logarithms; a conjugate pair `γ ± s·i` gives
/// `γ·log(A² + B²)` plus an arctangent, where `A + B·i` is the gcd
/// computed over `F(i)`. Over an exponential extension the logs carry a
/// linear drift `deg(v)·Du` that is cancelled in `v0`.
pub fn tr_integrate(r: &Poly<TowerElem>, b: &Poly<TowerElem>, tower: &Tower) -> Result<LiouvilleForm> {
    let level = tower.height();
    if r.deg() >= b.deg() {
        return Err(Error::InvalidElement("Rothstein–Trager needs deg R < deg b".into()));
    }
    if r.is_zero() {
        return Ok(LiouvilleForm::default());
    }
    if !gcd_unchecked(r, b).is_one() {
        return Err(Error::NotCoprime("numerator and denominator share a factor".into()));
    }
    let exp_ext = tower.extension(level).filter(|e| e.kind == ExtensionKind::Exp);
    if exp_ext.is_some() && b.coeff(0).is_zero() {
        return Err(Error::InvalidElement("denominator divisible by an exponential variable".into()));
    }
    let tr = tr_resultant(r, b, tower)?;
    if !constant_coefficient_check(&tr)? {
        return Err(Error::NotElementary("TR-resultant has nonconstant coefficients".into()));
    }
    let zpoly: Poly<Rational> =
        tr.poly_in_z.monic().map(|c| c.as_rational().expect("checked constant"));
    let roots = split_roots(&zpoly)?;

    let (r, b) = make_monic(r, b)?;
    let db = tower.derive_poly(level, &b);
    let mut form = LiouvilleForm::default();
    let mut drift = Rational::from_int(0);

    for c in &roots.rational {
        let ce = TowerElem::rational(c.clone());
        let v = gcd_unchecked(&r.sub(&db.scale(&ce)), &b);
        drift = drift.add(&c.mul(&Rational::from_int(v.deg() as i64)));
        form.logs.push((c.clone(), TowerElem::from_poly(level, v)?));
    }

    let gauss = |p: &Poly<TowerElem>| p.map(|c| Gauss::real(c.clone()));
    let (rg, bg, dbg) = (gauss(&r), gauss(&b), gauss(&db));
    for (g, s) in &roots.conjugate {
        let c = Gauss::new(TowerElem::rational(g.clone()), TowerElem::rational(s.clone()));
        let v = gcd_unchecked(&rg.sub(&dbg.scale(&c)), &bg);
        let a = v.map(|z| z.re.clone());
        let bi = v.map(|z| z.im.clone());
        let norm = a.mul(&a).add(&bi.mul(&bi));
        if !g.is_zero() {
            drift = drift.add(&g.mul(&Rational::from_int(norm.deg() as i64)));
            form.logs.push((g.clone(), TowerElem::from_poly(level, norm)?));
        }
        if bi.is_zero() {
            continue;
        }
        // -2s·arctan(B/A) and 2s·arctan(A/B) differ by a constant
        let two_s = s.mul(&Rational::from_int(2));
        let (mut coef, mut arg) = if bi.is_constant() {
            (two_s, TowerElem::from_parts(level, a, bi)?)
        } else {
            (two_s.neg(), TowerElem::from_parts(level, bi, a)?)
        };
        if arg.leading_sign_negative() {
            coef = coef.neg();
            arg = arg.neg();
        }
        form.arctans.push((coef, arg));
    }

    if let Some(ext) = exp_ext {
        if !drift.is_zero() {
            form.v0 = ext.argument.mul(&TowerElem::rational(drift.neg()));
        }
    }

    let target = TowerElem::from_parts(level, r, b)?;
    if form.derivative(tower)? != target {
        return Err(Error::Internal("Rothstein–Trager result fails the derivative check".into()));
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn c(n: i64) -> TowerElem {
        TowerElem::integer(n)
    }

    fn log_x() -> Tower {
        Tower::log(TowerElem::x()).unwrap()
    }

    fn inv_x() -> TowerElem {
        TowerElem::x().try_inv().unwrap()
    }

    #[test]
    fn resultant_of_inverse_quadratic() {
        // R = 1, b = x^2 - 2: 1 - 8z^2 up to a unit
        let t = Tower::base();
        let b = Poly::new(vec![c(-2), c(0), c(1)]);
        let tr = tr_resultant(&Poly::one(), &b, &t).unwrap();
        let monic = tr.poly_in_z.monic();
        assert_eq!(monic, Poly::new(vec![TowerElem::rational(rat(-1, 8)), c(0), c(1)]));
        assert!(constant_coefficient_check(&tr).unwrap());
        assert!(matches!(tr_integrate(&Poly::one(), &b, &t), Err(Error::UnsupportedSplitting(_))));
    }

    #[test]
    fn derivative_numerator_has_unit_residues() {
        // R = D(b), b = θ^2 + x θ + 1 over log x: (z - 1)^2
        let t = log_x();
        let b = Poly::new(vec![c(1), TowerElem::x(), c(1)]);
        let r = t.derive_poly(1, &b);
        let tr = tr_resultant(&r, &b, &t).unwrap();
        assert_eq!(tr.poly_in_z.monic(), Poly::new(vec![c(1), c(-2), c(1)]));
    }

    #[test]
    fn nonconstant_coefficients_fail_the_check() {
        let tr = TRResultant { poly_in_z: Poly::new(vec![inv_x(), c(0), c(1)]) };
        assert!(!constant_coefficient_check(&tr).unwrap());
        let zero = TRResultant { poly_in_z: Poly::zero() };
        assert!(constant_coefficient_check(&zero).is_err());
    }

    #[test]
    fn single_log_term() {
        // 2/(x(θ+1)) -> 2 log(θ+1)
        let t = log_x();
        let r = Poly::constant(inv_x().mul(&c(2)));
        let b = Poly::new(vec![c(1), c(1)]);
        let f = tr_integrate(&r, &b, &t).unwrap();
        assert_eq!(f.logs, vec![(int(2), TowerElem::theta(1).add(&c(1)))]);
        assert!(f.arctans.is_empty() && f.v0.is_zero());
    }

    #[test]
    fn arctan_of_log() {
        // 1/(x(θ^2+1)) -> arctan(θ)
        let t = log_x();
        let r = Poly::constant(inv_x());
        let b = Poly::new(vec![c(1), c(0), c(1)]);
        let f = tr_integrate(&r, &b, &t).unwrap();
        assert!(f.logs.is_empty());
        assert_eq!(f.arctans, vec![(int(1), TowerElem::theta(1))]);
    }

    #[test]
    fn exponential_drift_is_cancelled() {
        // θ = exp(x): -1/(θ + 1) = D(log(θ + 1) - x)
        let t = Tower::exp(TowerElem::x()).unwrap();
        let b = Poly::new(vec![c(1), c(1)]);
        let f = tr_integrate(&Poly::constant(c(-1)), &b, &t).unwrap();
        assert_eq!(f.logs, vec![(int(1), TowerElem::theta(1).add(&c(1)))]);
        assert_eq!(f.v0, TowerElem::x().neg());
    }

    #[test]
    fn non_elementary_detected() {
        // 1/log(x) has the nonconstant residue x
        let t = log_x();
        let b = Poly::new(vec![c(0), c(1)]);
        assert!(matches!(
            tr_integrate(&Poly::one(), &b, &t),
            Err(Error::NotElementary(_))
        ));
    }
}

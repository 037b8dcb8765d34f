//! Explicit constructions: a planted antiderivative is turned into a pair
//! by differentiation.

use crate::algebra::{Field, Poly, Rational};
use crate::error::{Error, Result};
use crate::kernel::{integrate_proper, split_proper, LiouvilleForm};
use crate::tower::{Renderer, Tower, TowerElem};
use crate::verifier::{verify_exprs, verify_pair};

use super::{IntegrablePair, Method};

/// `residue · log(factor)` with `factor` monic in the top variable.
#[derive(Clone, Debug, PartialEq)]
pub struct LogTerm {
    pub factor: Poly<TowerElem>,
    pub residue: Rational,
}

/// `γ·log(θ² + r²) + δ·arctan(θ/r)`; the residues at `θ = ±r·i` are
/// `γ ∓ (δ/(2r))·i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArctanFactor {
    pub r: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl ArctanFactor {
    pub fn factor(&self) -> Poly<TowerElem> {
        Poly::new(vec![TowerElem::rational(self.r.mul(&self.r)), TowerElem::zero(), TowerElem::one()])
    }
}

/// The rational part plus the logarithmic part of an antiderivative.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RationalPlan {
    pub rational_part: TowerElem,
    pub logs: Vec<LogTerm>,
    pub arctans: Vec<ArctanFactor>,
}

impl RationalPlan {
    pub fn form(&self, tower: &Tower) -> Result<LiouvilleForm> {
        let level = tower.height();
        let theta = TowerElem::theta(level);
        let mut form = LiouvilleForm::rational(self.rational_part.clone());
        for t in &self.logs {
            if !t.residue.is_zero() {
                form.logs.push((t.residue.clone(), TowerElem::from_poly(level, t.factor.clone())?));
            }
        }
        for a in &self.arctans {
            if a.r.is_zero() {
                return Err(Error::InvalidElement("arctan factor with r = 0".into()));
            }
            if !a.gamma.is_zero() {
                form.logs.push((a.gamma.clone(), TowerElem::from_poly(level, a.factor())?));
            }
            if !a.delta.is_zero() {
                let arg = theta.mul(&TowerElem::rational(a.r.inv()));
                form.arctans.push((a.delta.clone(), arg));
            }
        }
        Ok(form)
    }
}

/// Builds the pair `(D(form), form)` and checks it twice: on the tower
/// elements and after a round trip through the expression trees.
pub fn pair_from_form(
    tower: &Tower,
    form: LiouvilleForm,
    method: Method,
    seed: u64,
) -> Result<IntegrablePair> {
    let integrand_elem = form.derivative(tower)?;
    if integrand_elem.is_zero() {
        return Err(Error::Generation("integrand is zero".into()));
    }
    let integrand = Renderer::with_hints(tower, form_hints(&form, tower)).elem(&integrand_elem);
    let integral = form.to_expr(tower);
    let verified = verify_pair(&integrand_elem, &form, tower)?.passed
        && verify_exprs(&integrand, &integral)?.passed;
    Ok(IntegrablePair {
        integrand,
        integral,
        integrand_elem,
        integral_form: form,
        tower: tower.clone(),
        method,
        seed,
        verified,
    })
}

/// Top-level factors that the integrand's denominator is built from: the
/// parts of every log argument and `a² + b²` for every `arctan(a/b)`.
fn form_hints(form: &LiouvilleForm, tower: &Tower) -> Vec<(usize, Poly<TowerElem>)> {
    let level = tower.height();
    let mut hints = Vec::new();
    let mut push = |p: Poly<TowerElem>| {
        if p.degree().is_some_and(|d| d > 0) {
            let m = p.monic();
            if !hints.iter().any(|(_, h)| *h == m) {
                hints.push((level, m));
            }
        }
    };
    for (_, v) in &form.logs {
        if v.level() == level {
            if let Ok((n, d)) = v.parts(level) {
                push(n);
                push(d);
            }
        }
    }
    for (_, w) in &form.arctans {
        if w.level() == level {
            if let Ok((a, b)) = w.parts(level) {
                push(a.mul(&a).add(&b.mul(&b)));
            }
        }
    }
    hints
}

/// `(D(P), P)` for `P = Σ q_i θ^i`, negative powers allowed.
pub fn poly_pair(tower: &Tower, coeffs: &[(i64, TowerElem)], seed: u64) -> Result<IntegrablePair> {
    let level = tower.height();
    let theta = TowerElem::theta(level);
    let mut p = TowerElem::zero();
    for (i, q) in coeffs {
        if q.level() >= level && level > 0 {
            return Err(Error::InvalidElement("coefficient not below the top level".into()));
        }
        p = p.add(&q.mul(&theta.powi(*i)?));
    }
    pair_from_form(tower, LiouvilleForm::rational(p), Method::Poly, seed)
}

pub fn sqfree_pair(tower: &Tower, plan: &RationalPlan, seed: u64) -> Result<IntegrablePair> {
    pair_from_form(tower, plan.form(tower)?, Method::SqfreeRational, seed)
}

/// Like [`sqfree_pair`], then integrates the proper part of the integrand
/// forward and compares derivatives.
pub fn hermite_pair(tower: &Tower, plan: &RationalPlan, seed: u64) -> Result<IntegrablePair> {
    let pair = pair_from_form(tower, plan.form(tower)?, Method::HermiteRational, seed)?;
    cross_check(&pair)?;
    Ok(pair)
}

/// Forward integration of the proper part of the integrand; agreement is
/// checked on derivatives. Residue sets outside `Q(i)` are skipped.
pub(crate) fn cross_check(pair: &IntegrablePair) -> Result<()> {
    let t = &pair.tower;
    let level = t.height();
    let (_, r, b) = split_proper(&pair.integrand_elem, t)?;
    let forward = match integrate_proper(&r, &b, t) {
        Ok(f) => f,
        Err(Error::UnsupportedSplitting(_)) => return Ok(()),
        Err(e) => return Err(Error::Internal(format!("forward integration failed: {e}"))),
    };
    if forward.derivative(t)? != TowerElem::from_parts(level, r, b)? {
        return Err(Error::Internal("forward and planted integrals disagree".into()));
    }
    Ok(())
}

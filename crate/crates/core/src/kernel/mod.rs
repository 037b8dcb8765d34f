//! Rational-part integration: Hermite reduction, the Rothstein–Trager
//! resultant and residue extraction.

mod hermite;
mod liouville;
mod roots;
mod rothstein;

pub use hermite::{hermite_reduce, HermiteStep};
pub use liouville::LiouvilleForm;
pub use roots::{split_roots, Residues};
pub use rothstein::{constant_coefficient_check, tr_integrate, tr_resultant, TRResultant};

use crate::algebra::{solve_diophantine, Field, Poly};
use crate::error::Result;
use crate::tower::{ExtensionKind, Tower, TowerElem};

/// `e = P + R/b` in the top variable of `tower`, with `deg R < deg b` and
/// `b` monic. Over an exponential variable `θ` the part with denominator
/// `θ^k` moves into `P`, which is then a Laurent polynomial, and `θ ∤ b`.
pub fn split_proper(
    e: &TowerElem,
    tower: &Tower,
) -> Result<(TowerElem, Poly<TowerElem>, Poly<TowerElem>)> {
    let level = tower.height();
    let (num, den) = e.parts(level)?;
    let exp_top = tower.extension(level).is_some_and(|x| x.kind == ExtensionKind::Exp);
    let k = den.coeffs().iter().take_while(|c| c.is_zero()).count();
    let (laurent, num, den) = if exp_top && k > 0 {
        let theta_k = Poly::monomial(TowerElem::one(), k);
        let rest = Poly::new(den.coeffs()[k..].to_vec());
        // num = σ·rest + τ·θ^k with deg σ < k
        let (sigma, tau) = solve_diophantine(&rest, &theta_k, &num)?;
        (TowerElem::from_parts(level, sigma, theta_k)?, tau, rest)
    } else {
        (TowerElem::zero(), num, den)
    };
    let (p, r) = num.divmod(&den)?;
    Ok((laurent.add(&TowerElem::from_poly(level, p)?), r, den))
}

/// Integrates the proper fraction `r/b`: Hermite steps first, then
/// Rothstein–Trager on the square-free remainder.
pub fn integrate_proper(
    r: &Poly<TowerElem>,
    b: &Poly<TowerElem>,
    tower: &Tower,
) -> Result<LiouvilleForm> {
    let steps = hermite_reduce(r, b, tower)?;
    let mut v0 = TowerElem::zero();
    let (mut num, mut den) = (r.clone(), b.clone());
    for s in steps {
        v0 = v0.add(&s.extracted);
        num = s.remaining_num;
        den = s.remaining_den;
    }
    // the remainder can share factors with its denominator after reduction
    let rem = TowerElem::from_parts(tower.height(), num, den)?;
    let (p, num, den) = split_proper(&rem, tower)?;
    if !p.is_zero() {
        return Err(crate::Error::Internal("Hermite remainder is not proper".into()));
    }
    let logs = tr_integrate(&num, &den, tower)?;
    Ok(LiouvilleForm::rational(v0).add(&logs))
}

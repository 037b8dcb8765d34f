use crate::algebra::{solve_diophantine, squarefree_factorize, Field, Poly};
use crate::error::{Error, Result};
use crate::tower::{Tower, TowerElem};

/// One reduction step on `R/b`: the highest-multiplicity factor `V^k` of
/// `b` loses one power.
///
/// `D(extracted) + remaining_num/remaining_den` equals the step's input.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteStep {
    pub extracted: TowerElem,
    pub remaining_num: Poly<TowerElem>,
    pub remaining_den: Poly<TowerElem>,
    pub sigma: Poly<TowerElem>,
    pub tau: Poly<TowerElem>,
}

/// Hermite reduction of the proper fraction `r/b` in the top variable of
/// `tower`, repeated until the remaining denominator is square-free.
///
/// For `b = T·V^k` with `V` square-free, solving `σ·D(V)·T + τ·V = R` gives
///
/// ```text
/// R/b = D(-σ / ((k-1)·V^(k-1))) + (τ + D(σ)·T/(k-1)) / (T·V^(k-1))
/// ```
pub fn hermite_reduce(
    r: &Poly<TowerElem>,
    b: &Poly<TowerElem>,
    tower: &Tower,
) -> Result<Vec<HermiteStep>> {
    let level = tower.height();
    if b.is_zero() {
        return Err(Error::ZeroPolynomial("Hermite reduction with zero denominator"));
    }
    if r.deg() >= b.deg() {
        return Err(Error::InvalidElement("Hermite reduction needs deg R < deg b".into()));
    }
    let mut steps = Vec::new();
    let mut num = r.clone();
    let mut den = b.clone();
    loop {
        let sqf = squarefree_factorize(&den)?;
        let Some((v, k)) = sqf.factors.last().cloned() else { break };
        if k < 2 || num.is_zero() {
            break;
        }
        let vk = v.pow(k);
        let t = den.exact_div(&vk)?;
        let dv = tower.derive_poly(level, &v);
        let (sigma, tau) = solve_diophantine(&dv.mul(&t), &v, &num)
            .map_err(|e| Error::Internal(format!("Hermite diophantine: {e}")))?;
        let km1 = TowerElem::integer(k as i64 - 1);
        let inv_km1 = km1.inv();
        let vkm1 = v.pow(k - 1);
        let extracted =
            TowerElem::from_parts(level, sigma.scale(&inv_km1.neg()), vkm1.clone())?;
        let dsigma = tower.derive_poly(level, &sigma);
        let new_num = tau.add(&dsigma.mul(&t).scale(&inv_km1));
        let new_den = t.mul(&vkm1);
        steps.push(HermiteStep {
            extracted,
            remaining_num: new_num.clone(),
            remaining_den: new_den.clone(),
            sigma,
            tau,
        });
        num = new_num;
        den = new_den;
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> TowerElem {
        TowerElem::integer(n)
    }

    #[test]
    fn inverse_square_in_base_field() {
        // 1/x^2 -> -1/x, nothing left
        let t = Tower::base();
        let steps = hermite_reduce(&Poly::one(), &Poly::new(vec![c(0), c(0), c(1)]), &t).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].extracted, TowerElem::x().try_inv().unwrap().neg());
        assert!(steps[0].remaining_num.is_zero());
    }

    #[test]
    fn squarefree_input_is_untouched() {
        let t = Tower::log(TowerElem::x()).unwrap();
        let b = Poly::new(vec![c(1), c(0), c(1)]);
        assert!(hermite_reduce(&Poly::one(), &b, &t).unwrap().is_empty());
    }

    #[test]
    fn step_identity_and_termination() {
        // R/b with b = (θ+1)(θ+x)^3, θ = log x
        let t = Tower::log(TowerElem::x()).unwrap();
        let x = TowerElem::x();
        let b = Poly::new(vec![c(1), c(1)]).mul(&Poly::new(vec![x.clone(), c(1)]).pow(3));
        let r = Poly::new(vec![x.clone(), c(2), c(0), x.clone()]);
        let steps = hermite_reduce(&r, &b, &t).unwrap();
        assert_eq!(steps.len(), 2);
        let (mut num, mut den) = (r, b);
        for s in &steps {
            let input = TowerElem::from_parts(1, num.clone(), den.clone()).unwrap();
            let rem = TowerElem::from_parts(1, s.remaining_num.clone(), s.remaining_den.clone())
                .unwrap();
            assert_eq!(t.derive(&s.extracted).add(&rem), input);
            assert!(s.remaining_den.deg() < den.deg());
            num = s.remaining_num.clone();
            den = s.remaining_den.clone();
        }
        assert!(crate::algebra::is_squarefree(&den));
    }
}

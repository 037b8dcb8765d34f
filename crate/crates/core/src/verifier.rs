//! Exact verification of `(integrand, integral)` pairs.

use rayon::prelude::*;

use crate::algebra::Field;
use crate::error::Result;
use crate::kernel::LiouvilleForm;
use crate::tower::{Expr, ExprReader, Renderer, Tower, TowerElem};

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub passed: bool,
    /// `D(integral) - integrand` when it is not zero.
    pub residual: Option<TowerElem>,
    pub residual_infix: Option<String>,
}

/// Checks `D(integral) = integrand` exactly in `tower`.
pub fn verify_pair(
    integrand: &TowerElem,
    integral: &LiouvilleForm,
    tower: &Tower,
) -> Result<VerifyReport> {
    let residual = integral.derivative(tower)?.sub(integrand);
    if residual.is_zero() {
        return Ok(VerifyReport { passed: true, residual: None, residual_infix: None });
    }
    let infix = Renderer::new(tower).elem(&residual).to_infix();
    Ok(VerifyReport { passed: false, residual: Some(residual), residual_infix: Some(infix) })
}

/// Verifies a pair given as expression trees. The tower is discovered from
/// the `ln`/`exp` nodes of both sides.
pub fn verify_exprs(integrand: &Expr, integral: &Expr) -> Result<VerifyReport> {
    let mut reader = ExprReader::new(Tower::base(), true);
    let f = reader.read(integrand)?;
    let form = LiouvilleForm::from_expr(integral, &mut reader)?;
    let tower = reader.into_tower();
    verify_pair(&f, &form, &tower)
}

/// Outcome for one record of a batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordOutcome {
    pub index: usize,
    pub passed: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub passed: usize,
    pub failed: usize,
    pub outcomes: Vec<RecordOutcome>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Verifies a batch of expression pairs; entries that could not be read
/// carry their error message and count as failures.
pub fn verify_dataset(records: &[std::result::Result<(Expr, Expr), String>]) -> VerifySummary {
    let outcomes: Vec<RecordOutcome> = records
        .par_iter()
        .enumerate()
        .map(|(index, rec)| {
            let result = rec
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|(f, g)| verify_exprs(f, g).map_err(|e| e.to_string()));
            match result {
                Ok(r) if r.passed => RecordOutcome { index, passed: true, reason: None },
                Ok(r) => RecordOutcome {
                    index,
                    passed: false,
                    reason: Some(format!(
                        "nonzero residual {}",
                        r.residual_infix.unwrap_or_default()
                    )),
                },
                Err(e) => RecordOutcome { index, passed: false, reason: Some(e) },
            }
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    VerifySummary { passed, failed: outcomes.len() - passed, outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_x() {
        let t = Tower::log(TowerElem::x()).unwrap();
        let f = TowerElem::x().try_inv().unwrap();
        let form = LiouvilleForm::rational(TowerElem::theta(1));
        assert!(verify_pair(&f, &form, &t).unwrap().passed);
    }

    #[test]
    fn wrong_integral_reports_residual() {
        let t = Tower::base();
        let form = LiouvilleForm::rational(TowerElem::x());
        let r = verify_pair(&TowerElem::x(), &form, &t).unwrap();
        assert!(!r.passed);
        // D(x) - x = 1 - x
        assert_eq!(r.residual, Some(TowerElem::one().sub(&TowerElem::x())));
    }

    #[test]
    fn zero_log_argument_is_an_error() {
        let form = LiouvilleForm::log(crate::algebra::int(1), TowerElem::zero());
        assert!(verify_pair(&TowerElem::one(), &form, &Tower::base()).is_err());
    }

    #[test]
    fn batch_counts() {
        assert_eq!(verify_dataset(&[]), VerifySummary::default());
        let good = (Expr::div(Expr::int(1), Expr::X), Expr::ln(Expr::X));
        let bad = (Expr::X, Expr::X);
        let s = verify_dataset(&[Ok(good.clone()), Ok(bad), Err("truncated".into()), Ok(good)]);
        assert_eq!((s.passed, s.failed), (2, 2));
        assert_eq!(s.outcomes[2].reason.as_deref(), Some("truncated"));
    }
}

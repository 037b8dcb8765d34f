use num_traits::ToPrimitive;

use super::{Expr, ExtensionKind, Tower, TowerElem};
use crate::algebra::{Field, Rational};
use crate::error::{Error, Result};

/// Reads expression trees back into tower elements.
///
/// Every `ln(a)` / `exp(a)` node is matched against the tower's extensions;
/// unknown ones are adjoined as new extensions when `extend` is set. Formal
/// identities in the resulting tower are identities of the functions, so a
/// pair that verifies here is correct even if the discovered tower happens
/// to be algebraically dependent.
pub struct ExprReader {
    tower: Tower,
    extend: bool,
}

impl ExprReader {
    pub fn new(tower: Tower, extend: bool) -> Self {
        ExprReader { tower, extend }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn into_tower(self) -> Tower {
        self.tower
    }

    pub fn read(&mut self, e: &Expr) -> Result<TowerElem> {
        Ok(match e {
            Expr::X => TowerElem::x(),
            Expr::Int(n) => TowerElem::rational(Rational::from_integer(n.clone())),
            Expr::Const => {
                return Err(Error::InvalidElement("CONST placeholder has no value".into()))
            }
            Expr::Neg(a) => self.read(a)?.neg(),
            Expr::Add(a, b) => self.read(a)?.add(&self.read(b)?),
            Expr::Sub(a, b) => self.read(a)?.sub(&self.read(b)?),
            Expr::Mul(a, b) => self.read(a)?.mul(&self.read(b)?),
            Expr::Div(a, b) => {
                let n = self.read(a)?;
                n.try_div(&self.read(b)?)?
            }
            Expr::Pow(a, k) => self.read(a)?.powi(*k)?,
            Expr::Ln(a) => self.variable(ExtensionKind::Log, a)?,
            Expr::Exp(a) => self.variable(ExtensionKind::Exp, a)?,
            Expr::Arctan(_) => {
                return Err(Error::InvalidElement("arctan is not a tower function".into()))
            }
        })
    }

    fn variable(&mut self, kind: ExtensionKind, arg: &Expr) -> Result<TowerElem> {
        let a = self.read(arg)?;
        if let Some(i) =
            self.tower.extensions().iter().position(|e| e.kind == kind && e.argument == a)
        {
            return Ok(TowerElem::theta(i + 1));
        }
        // exp(ln(u)) = u and ln(exp(u)) = u are folded instead of adjoined
        if let Some((c, k)) = a.monomial_in_top() {
            let ext = self.tower.extension(a.level()).expect("level in tower");
            let other = match kind {
                ExtensionKind::Log => ExtensionKind::Exp,
                ExtensionKind::Exp => ExtensionKind::Log,
            };
            if ext.kind == other && c.is_one() && k == 1 {
                return Ok(ext.argument.clone());
            }
        }
        if !self.extend {
            return Err(Error::InvalidTower(format!("{kind} node not in tower")));
        }
        let level = self.tower.push(kind, a)?;
        Ok(TowerElem::theta(level))
    }
}

/// Rational value of a constant subtree (`n`, `p/q`, `-c`), if it is one.
pub(crate) fn rational_constant(e: &Expr) -> Option<Rational> {
    match e {
        Expr::Int(n) => Some(Rational::from_integer(n.clone())),
        Expr::Neg(a) => rational_constant(a).map(|q| -q),
        Expr::Div(a, b) => {
            let (p, q) = (rational_constant(a)?, rational_constant(b)?);
            if Field::is_zero(&q) {
                None
            } else {
                Some(p / q)
            }
        }
        Expr::Mul(a, b) => Some(rational_constant(a)? * rational_constant(b)?),
        Expr::Pow(a, k) => {
            let base = rational_constant(a)?;
            if Field::is_zero(&base) && *k < 0 {
                return None;
            }
            let k32 = k.to_i32()?;
            Some(num_traits::pow::Pow::pow(&base, k32))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Renderer;

    #[test]
    fn reads_back_rendered_elements() {
        let x = TowerElem::x();
        let mut t = Tower::log(x.try_inv().unwrap()).unwrap();
        t.push(ExtensionKind::Exp, TowerElem::theta(1).mul(&x)).unwrap();
        let e = TowerElem::theta(2)
            .add(&TowerElem::theta(1).mul(&x))
            .try_div(&TowerElem::theta(1).add(&TowerElem::integer(3)))
            .unwrap();
        let expr = Renderer::new(&t).elem(&e);
        let mut fresh = ExprReader::new(Tower::base(), true);
        let back = fresh.read(&expr).unwrap();
        assert_eq!(fresh.tower().height(), 2);
        assert_eq!(back, e);

        let mut strict = ExprReader::new(Tower::base(), false);
        assert!(strict.read(&expr).is_err());
    }

    #[test]
    fn constant_subtrees() {
        let e = Expr::neg(Expr::div(Expr::int(3), Expr::int(4)));
        assert_eq!(rational_constant(&e), Some(crate::algebra::rat(-3, 4)));
        assert_eq!(rational_constant(&Expr::mul(Expr::int(2), Expr::X)), None);
    }
}

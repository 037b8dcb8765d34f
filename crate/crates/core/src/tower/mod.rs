//! Differential field towers `Q(x) ⊂ F1 ⊂ … ⊂ Fn` built from logarithmic and
//! exponential extensions.

mod convert;
mod elem;
mod expr;
mod render;

use std::fmt;

pub use convert::ExprReader;
pub use elem::TowerElem;
pub use expr::Expr;
pub use render::{sum_chain, sum_expr, sum_signed, Renderer, Term};
pub(crate) use convert::rational_constant;

use crate::algebra::gcd::gcd_unchecked;
use crate::algebra::{Field, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    Log,
    Exp,
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtensionKind::Log => "log",
            ExtensionKind::Exp => "exp",
        })
    }
}

/// `θ = log(argument)` or `θ = exp(argument)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Extension {
    pub kind: ExtensionKind,
    pub argument: TowerElem,
}

/// Ordered list of extensions over `Q(x)`; extension `i` (0-based) defines
/// the variable of level `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Tower {
    extensions: Vec<Extension>,
    /// `D θ_level` as a polynomial in `θ_level`, index = level.
    theta_derivs: Vec<Poly<TowerElem>>,
}

impl Tower {
    /// The bare field `Q(x)`.
    pub fn base() -> Self {
        Tower { extensions: Vec::new(), theta_derivs: vec![Poly::one()] }
    }

    pub fn new(extensions: impl IntoIterator<Item = Extension>) -> Result<Self> {
        let mut t = Tower::base();
        for e in extensions {
            t.push(e.kind, e.argument)?;
        }
        Ok(t)
    }

    pub fn log(argument: TowerElem) -> Result<Self> {
        Tower::new([Extension { kind: ExtensionKind::Log, argument }])
    }

    pub fn exp(argument: TowerElem) -> Result<Self> {
        Tower::new([Extension { kind: ExtensionKind::Exp, argument }])
    }

    pub fn height(&self) -> usize {
        self.extensions.len()
    }

    pub fn extensions(&self) -> &[Extension] {
        &self.extensions
    }

    /// Extension defining the variable of `level` (1-based).
    pub fn extension(&self, level: usize) -> Option<&Extension> {
        level.checked_sub(1).and_then(|i| self.extensions.get(i))
    }

    /// The tower cut down to its first `height` extensions.
    pub fn truncate(&self, height: usize) -> Tower {
        let mut t = self.clone();
        t.extensions.truncate(height);
        t.theta_derivs.truncate(height + 1);
        t
    }

    /// Adjoins a new extension and returns its level.
    ///
    /// The argument must be nonconstant and live in the current tower.
    /// Obvious algebraic dependencies are refused: `log` of a constant
    /// multiple of a power of an exponential variable, `exp` of an affine
    /// function of a logarithmic variable, and repeated arguments.
    pub fn push(&mut self, kind: ExtensionKind, argument: TowerElem) -> Result<usize> {
        let level = self.height() + 1;
        if argument.level() >= level {
            return Err(Error::InvalidTower(format!(
                "argument of level {} for extension level {level}",
                argument.level()
            )));
        }
        let d_arg = self.derive(&argument);
        if d_arg.is_zero() {
            return Err(Error::InvalidTower(format!("{kind} of a constant")));
        }
        self.check_independent(kind, &argument)?;
        let dtheta = match kind {
            ExtensionKind::Log => Poly::constant(d_arg.try_div(&argument)?),
            ExtensionKind::Exp => Poly::monomial(d_arg, 1),
        };
        self.extensions.push(Extension { kind, argument });
        self.theta_derivs.push(dtheta);
        Ok(level)
    }

    fn check_independent(&self, kind: ExtensionKind, arg: &TowerElem) -> Result<()> {
        let lvl = arg.level();
        let arg_ext = self.extension(lvl);
        match kind {
            ExtensionKind::Log => {
                if let (Some(ext), Some((c, _))) = (arg_ext, arg.monomial_in_top()) {
                    if ext.kind == ExtensionKind::Exp && c.is_constant() {
                        return Err(Error::InvalidTower(
                            "log of a power of an exponential variable".into(),
                        ));
                    }
                }
                for e in self.extensions.iter().filter(|e| e.kind == ExtensionKind::Log) {
                    if arg.try_div(&e.argument)?.is_constant() {
                        return Err(Error::InvalidTower(
                            "log argument proportional to an existing log argument".into(),
                        ));
                    }
                }
            }
            ExtensionKind::Exp => {
                if let Some(ext) = arg_ext {
                    if ext.kind == ExtensionKind::Log {
                        let (n, d) = arg.parts(lvl)?;
                        let affine = d.is_one()
                            && n.degree() == Some(1)
                            && n.coeffs().iter().all(TowerElem::is_constant);
                        if affine {
                            return Err(Error::InvalidTower(
                                "exp of a rational multiple of a log variable".into(),
                            ));
                        }
                    }
                }
                for e in self.extensions.iter().filter(|e| e.kind == ExtensionKind::Exp) {
                    if arg.sub(&e.argument).is_constant() {
                        return Err(Error::InvalidTower(
                            "exp argument differs from an existing one by a constant".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `D θ_level` as a polynomial in `θ_level` (`D x = 1` at level 0).
    pub fn theta_derivative(&self, level: usize) -> &Poly<TowerElem> {
        &self.theta_derivs[level]
    }

    /// Derivation applied to a polynomial in the variable of `level`:
    /// coefficients are differentiated and the variable contributes
    /// `p'(θ)·Dθ`.
    pub fn derive_poly(&self, level: usize, p: &Poly<TowerElem>) -> Poly<TowerElem> {
        let from_coeffs = if level == 0 {
            Poly::zero()
        } else {
            Poly::new(p.coeffs().iter().map(|c| self.derive(c)).collect())
        };
        from_coeffs.add(&p.derivative().mul(self.theta_derivative(level)))
    }

    /// The tower derivation `D`.
    pub fn derive(&self, e: &TowerElem) -> TowerElem {
        match e {
            TowerElem::Base(f) => TowerElem::from_ratfunc_x(f.derivative()),
            TowerElem::Ext { level, .. } => {
                let level = *level;
                assert!(level <= self.height(), "element of level {level} outside tower");
                let (n, d) = e.parts(level).expect("own level");
                let dn = self.derive_poly(level, &n);
                if d.is_one() {
                    return TowerElem::from_poly(level, dn).expect("valid coefficients");
                }
                let dd = self.derive_poly(level, &d);
                let g = gcd_unchecked(&d, &dd);
                let (dbar, ddg) = if g.is_one() {
                    (d.clone(), dd)
                } else {
                    (d.exact_div(&g).expect("gcd divides"), dd.exact_div(&g).expect("gcd divides"))
                };
                let num = dn.mul(&dbar).sub(&n.mul(&ddg));
                let den = d.mul(&dbar);
                // irreducible factors are normal unless θ itself divides d
                // in an exponential extension
                let special = self.extensions[level - 1].kind == ExtensionKind::Exp
                    && d.coeff(0).is_zero();
                if special {
                    TowerElem::from_parts(level, num, den)
                } else {
                    TowerElem::from_coprime_parts(level, num, den)
                }
                .expect("nonzero denominator")
            }
        }
    }

    /// Logarithmic derivative `D v / v`.
    pub fn log_derivative(&self, v: &TowerElem) -> Result<TowerElem> {
        self.derive(v).try_div(v)
    }

    /// Human-readable description such as `log(1/x)` or
    /// `log(x), exp(ln(x) + 1)`.
    pub fn describe(&self) -> String {
        if self.extensions.is_empty() {
            return "Q(x)".to_string();
        }
        let r = Renderer::new(self);
        self.extensions
            .iter()
            .map(|e| format!("{}({})", e.kind, r.elem(&e.argument).to_infix()))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn x() -> TowerElem {
        TowerElem::x()
    }

    #[test]
    fn derivative_of_x_is_one() {
        assert!(Tower::base().derive(&x()).is_one());
    }

    #[test]
    fn log_of_reciprocal() {
        let t = Tower::log(x().try_inv().unwrap()).unwrap();
        // D log(1/x) = -1/x
        assert_eq!(t.derive(&TowerElem::theta(1)), x().try_inv().unwrap().neg());
    }

    #[test]
    fn log_x_minus_reciprocal_is_zero() {
        let t = Tower::log(x()).unwrap();
        let r = t.derive(&TowerElem::theta(1)).sub(&x().try_inv().unwrap());
        assert!(r.is_zero());
    }

    #[test]
    fn exp_rule() {
        let u = x().mul(&x());
        let t = Tower::exp(u.clone()).unwrap();
        let th = TowerElem::theta(1);
        assert_eq!(t.derive(&th), t.derive(&u).mul(&th));
        // D(1/θ) = -2x/θ
        let inv = th.try_inv().unwrap();
        assert_eq!(t.derive(&inv), x().mul(&TowerElem::integer(-2)).mul(&inv));
    }

    #[test]
    fn constants_rejected() {
        assert!(Tower::log(TowerElem::integer(3)).is_err());
        assert!(Tower::exp(TowerElem::rational(rat(1, 2))).is_err());
    }

    #[test]
    fn dependency_safeguards() {
        let th = TowerElem::theta(1);
        let mut t = Tower::exp(x()).unwrap();
        assert!(t.clone().push(ExtensionKind::Log, th.mul(&TowerElem::integer(3))).is_err());
        assert!(t.clone().push(ExtensionKind::Exp, x().add(&TowerElem::one())).is_err());
        assert!(t.push(ExtensionKind::Log, th.add(&TowerElem::one())).is_ok());

        let mut l = Tower::log(x()).unwrap();
        assert!(l.clone().push(ExtensionKind::Exp, th.mul(&TowerElem::rational(rat(1, 2)))).is_err());
        assert!(l.clone().push(ExtensionKind::Log, x().mul(&TowerElem::integer(2))).is_err());
        assert!(l.push(ExtensionKind::Log, th.add(&TowerElem::integer(1))).is_ok());
        assert_eq!(l.height(), 2);
    }

    #[test]
    fn height_two_chain_rule() {
        // θ1 = log x, θ2 = log(θ1): D θ2 = 1/(x θ1)
        let mut t = Tower::log(x()).unwrap();
        t.push(ExtensionKind::Log, TowerElem::theta(1)).unwrap();
        let d = t.derive(&TowerElem::theta(2));
        assert_eq!(d, x().mul(&TowerElem::theta(1)).try_inv().unwrap());
        assert_eq!(t.truncate(1).height(), 1);
    }

    #[test]
    fn leibniz_instance() {
        let t = Tower::log(x()).unwrap();
        let a = TowerElem::theta(1).add(&x());
        let b = TowerElem::theta(1).mul(&TowerElem::theta(1)).add(&TowerElem::rational(int(2)));
        let lhs = t.derive(&a.mul(&b));
        let rhs = a.mul(&t.derive(&b)).add(&b.mul(&t.derive(&a)));
        assert_eq!(lhs, rhs);
    }
}

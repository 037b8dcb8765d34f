use num_traits::One;

use crate::algebra::{Field, Rational};
use crate::error::{Error, Result};
use crate::tower::{rational_constant, sum_chain, Expr, ExprReader, Renderer, Term, Tower, TowerElem};

/// `v0 + Σ c·log(v) + Σ c·arctan(w)` with rational `c`.
///
/// Arctangent terms are the real form of a pair of conjugate complex
/// logarithms.
#[derive(Clone, Debug, PartialEq)]
pub struct LiouvilleForm {
    pub v0: TowerElem,
    pub logs: Vec<(Rational, TowerElem)>,
    pub arctans: Vec<(Rational, TowerElem)>,
}

impl Default for LiouvilleForm {
    fn default() -> Self {
        LiouvilleForm::rational(TowerElem::zero())
    }
}

impl LiouvilleForm {
    pub fn rational(v0: TowerElem) -> Self {
        LiouvilleForm { v0, logs: Vec::new(), arctans: Vec::new() }
    }

    pub fn log(c: Rational, v: TowerElem) -> Self {
        LiouvilleForm { v0: TowerElem::zero(), logs: vec![(c, v)], arctans: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.v0.is_zero() && self.logs.is_empty() && self.arctans.is_empty()
    }

    /// Sum of two forms; terms are concatenated, not merged.
    pub fn add(&self, other: &LiouvilleForm) -> LiouvilleForm {
        let mut out = self.clone();
        out.v0 = out.v0.add(&other.v0);
        out.logs.extend(other.logs.iter().cloned());
        out.arctans.extend(other.arctans.iter().cloned());
        out
    }

    /// `D v0 + Σ c·Dv/v + Σ c·Dw/(1 + w²)`.
    pub fn derivative(&self, tower: &Tower) -> Result<TowerElem> {
        let mut acc = tower.derive(&self.v0);
        for (c, v) in &self.logs {
            if v.is_zero() {
                return Err(Error::InvalidElement("logarithm of zero".into()));
            }
            let term = tower.log_derivative(v)?;
            acc = acc.add(&term.mul(&TowerElem::rational(c.clone())));
        }
        for (c, w) in &self.arctans {
            let den = TowerElem::one().add(&w.mul(w));
            let term = tower.derive(w).try_div(&den)?;
            acc = acc.add(&term.mul(&TowerElem::rational(c.clone())));
        }
        Ok(acc)
    }

    pub fn to_expr(&self, tower: &Tower) -> Expr {
        let r = Renderer::new(tower);
        let mut terms: Vec<Term> = Vec::new();
        if !self.v0.is_zero() {
            terms.extend(r.terms(&self.v0));
        }
        for (c, v) in &self.logs {
            terms.push(scaled_call(c, Expr::ln(r.elem(v))));
        }
        for (c, w) in &self.arctans {
            terms.push(scaled_call(c, Expr::arctan(r.elem(w))));
        }
        if terms.is_empty() {
            return Expr::int(0);
        }
        sum_chain(terms)
    }

    /// Parses a rendered form: top-level `c·ln(v)` and `c·arctan(w)`
    /// summands become log/arctan terms, everything else goes to `v0`.
    pub fn from_expr(e: &Expr, reader: &mut ExprReader) -> Result<Self> {
        let mut out = LiouvilleForm::default();
        let mut summands = Vec::new();
        flatten_sum(e, false, &mut summands);
        for (neg, term) in summands {
            let sign = |q: Rational| if neg { -q } else { q };
            if let Some((c, call)) = split_scaled_call(term) {
                match call {
                    Expr::Ln(v) => {
                        out.logs.push((sign(c), reader.read(v)?));
                        continue;
                    }
                    Expr::Arctan(w) => {
                        out.arctans.push((sign(c), reader.read(w)?));
                        continue;
                    }
                    _ => {}
                }
            }
            let v = reader.read(term)?;
            out.v0 = if neg { out.v0.sub(&v) } else { out.v0.add(&v) };
        }
        Ok(out)
    }

    /// Compact text form for debugging and reports.
    pub fn describe(&self, tower: &Tower) -> String {
        self.to_expr(tower).to_infix()
    }
}

fn scaled_call(c: &Rational, call: Expr) -> Term {
    use num_traits::Signed;
    let neg = c.is_negative();
    let a = c.numer().abs();
    let b = c.denom().clone();
    let body = match (One::is_one(&a), One::is_one(&b)) {
        (true, true) => call,
        (false, true) => Expr::mul(Expr::Int(a), call),
        (true, false) => Expr::div(call, Expr::Int(b)),
        (false, false) => Expr::mul(Expr::div(Expr::Int(a), Expr::Int(b)), call),
    };
    (neg, body)
}

fn flatten_sum<'a>(e: &'a Expr, neg: bool, out: &mut Vec<(bool, &'a Expr)>) {
    match e {
        Expr::Add(a, b) => {
            flatten_sum(a, neg, out);
            flatten_sum(b, neg, out);
        }
        Expr::Sub(a, b) => {
            flatten_sum(a, neg, out);
            flatten_sum(b, !neg, out);
        }
        Expr::Neg(a) => flatten_sum(a, !neg, out),
        _ => out.push((neg, e)),
    }
}

/// `call`, `c·call`, `call/q` or `(p/q)·call` with a rational `c`.
fn split_scaled_call(e: &Expr) -> Option<(Rational, &Expr)> {
    let rc = rational_constant;
    match e {
        Expr::Ln(_) | Expr::Arctan(_) => Some((<Rational as One>::one(), e)),
        Expr::Mul(a, b) => match (rc(a), b.as_ref()) {
            (Some(c), call @ (Expr::Ln(_) | Expr::Arctan(_))) => Some((c, call)),
            _ => None,
        },
        Expr::Div(a, b) => match (a.as_ref(), rc(b)) {
            (call @ (Expr::Ln(_) | Expr::Arctan(_)), Some(q)) if !Field::is_zero(&q) => {
                Some((<Rational as One>::one() / q, call))
            }
            _ => None,
        },
        _ => None,
    }
}

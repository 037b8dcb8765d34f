use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// Expression tree used for serialization.
///
/// Integer leaves produced by this crate are never negative: signs are
/// carried by `Neg` nodes. `Const` is the placeholder that replaces numeric
/// leaves in near-duplicate analysis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    X,
    Int(BigInt),
    Const,
    Neg(Box<Expr>),
    Ln(Box<Expr>),
    Exp(Box<Expr>),
    Arctan(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer powers only.
    Pow(Box<Expr>, i64),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }
    pub fn ln(a: Expr) -> Expr {
        Expr::Ln(Box::new(a))
    }
    pub fn exp(a: Expr) -> Expr {
        Expr::Exp(Box::new(a))
    }
    pub fn arctan(a: Expr) -> Expr {
        Expr::Arctan(Box::new(a))
    }
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }
    pub fn pow(a: Expr, k: i64) -> Expr {
        Expr::Pow(Box::new(a), k)
    }

    /// Number of nodes, which equals the prefix token count.
    pub fn size(&self) -> usize {
        match self {
            Expr::X | Expr::Int(_) | Expr::Const => 1,
            Expr::Neg(a) | Expr::Ln(a) | Expr::Exp(a) | Expr::Arctan(a) => 1 + a.size(),
            Expr::Pow(a, _) => 2 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Floating-point evaluation at `x`; used for spot checks only.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::X => x,
            Expr::Int(n) => n.to_f64().unwrap_or(f64::NAN),
            Expr::Const => f64::NAN,
            Expr::Neg(a) => -a.eval(x),
            Expr::Ln(a) => a.eval(x).ln(),
            Expr::Exp(a) => a.eval(x).exp(),
            Expr::Arctan(a) => a.eval(x).atan(),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Pow(a, k) => a.eval(x).powi(*k as i32),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(n) if n.is_negative() => 3,
            _ => 5,
        }
    }

    /// Infix rendering with `ln`, `exp`, `arctan`, `^` and minimal
    /// parentheses.
    pub fn to_infix(&self) -> String {
        let mut s = String::new();
        self.write_infix(&mut s);
        s
    }

    fn write_infix(&self, out: &mut String) {
        let child = |e: &Expr, min: u8, out: &mut String| {
            if e.precedence() < min {
                out.push('(');
                e.write_infix(out);
                out.push(')');
            } else {
                e.write_infix(out);
            }
        };
        match self {
            Expr::X => out.push('x'),
            Expr::Int(n) => out.push_str(&n.to_string()),
            Expr::Const => out.push_str("CONST"),
            Expr::Neg(a) => {
                out.push('-');
                child(a, 2, out);
            }
            Expr::Ln(a) | Expr::Exp(a) | Expr::Arctan(a) => {
                out.push_str(match self {
                    Expr::Ln(_) => "ln(",
                    Expr::Exp(_) => "exp(",
                    _ => "arctan(",
                });
                a.write_infix(out);
                out.push(')');
            }
            Expr::Add(a, b) => {
                child(a, 1, out);
                out.push_str(" + ");
                child(b, 2, out);
            }
            Expr::Sub(a, b) => {
                child(a, 1, out);
                out.push_str(" - ");
                child(b, 2, out);
            }
            Expr::Mul(a, b) => {
                child(a, 2, out);
                out.push('*');
                child(b, 4, out);
            }
            Expr::Div(a, b) => {
                child(a, 2, out);
                out.push('/');
                child(b, 4, out);
            }
            Expr::Pow(a, k) => {
                child(a, 5, out);
                if *k < 0 {
                    out.push_str(&format!("^({k})"));
                } else {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_infix())
    }
}

//! Tower elements to expression trees.
//!
//! Several equivalent layouts are produced for fractions (plain `n/d`,
//! denominators cleared into an integer/`x` content factor) and the one with
//! the fewest prefix tokens wins, so emitted expressions stay short. Ties
//! keep the first candidate, which makes the choice deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Expr, ExtensionKind, Tower, TowerElem};
use crate::algebra::{solve_diophantine, squarefree_factorize, Field, Poly, RatFunc, Rational};

/// A signed additive term: `(negative, body)`.
pub type Term = (bool, Expr);

pub struct Renderer {
    vars: Vec<Expr>,
    /// Known factors `(level, f)` tried first when factoring denominators.
    hints: Vec<(usize, Poly<TowerElem>)>,
    /// `exp[level]` when the variable of `level` is an exponential.
    exp: Vec<bool>,
}

impl Renderer {
    pub fn new(tower: &Tower) -> Self {
        let mut r = Renderer { vars: vec![Expr::X], hints: Vec::new(), exp: vec![false] };
        for ext in tower.extensions() {
            r.exp.push(ext.kind == ExtensionKind::Exp);
            let arg = r.elem(&ext.argument);
            r.vars.push(match ext.kind {
                ExtensionKind::Log => Expr::ln(arg),
                ExtensionKind::Exp => Expr::exp(arg),
            });
        }
        r
    }

    /// Renderer that tries the given monic factors when writing
    /// denominators in product form.
    pub fn with_hints(tower: &Tower, hints: Vec<(usize, Poly<TowerElem>)>) -> Self {
        let mut r = Renderer::new(tower);
        r.hints = hints.into_iter().filter(|(_, f)| f.degree().is_some_and(|d| d > 0)).collect();
        r
    }

    pub fn elem(&self, e: &TowerElem) -> Expr {
        let (neg, body) = self.signed(e);
        if neg {
            Expr::neg(body)
        } else {
            body
        }
    }

    /// Sign and a body whose leading term is positive.
    pub fn signed(&self, e: &TowerElem) -> Term {
        sum_signed(self.terms(e))
    }

    /// Additive terms whose sum is `e`; a fraction is a single term.
    pub fn terms(&self, e: &TowerElem) -> Vec<Term> {
        if e.is_zero() {
            return vec![(false, Expr::int(0))];
        }
        let level = e.level();
        let (num, den) = e.parts(level).expect("own level");
        if den.is_one() {
            return self.laurent_terms(level, &num, 0);
        }
        if den.is_monomial() {
            let shift = den.degree().expect("nonzero") as i64;
            let laurent = self.laurent_terms(level, &num, shift);
            let frac = self.fraction(level, &num, &den);
            return if sum_size(&laurent) <= frac.1.size() { laurent } else { vec![frac] };
        }
        let frac = self.fraction(level, &num, &den);
        let k = den.coeffs().iter().take_while(|c| c.is_zero()).count();
        if self.exp[level] && k > 0 {
            // Laurent part over θ^k, proper part over the rest
            let theta_k = Poly::monomial(TowerElem::one(), k);
            let rest = Poly::new(den.coeffs()[k..].to_vec());
            let (sigma, tau) = solve_diophantine(&rest, &theta_k, &num).expect("coprime parts");
            let mut split = self.laurent_terms(level, &sigma, k as i64);
            if !tau.is_zero() {
                let proper = TowerElem::from_parts(level, tau, rest).expect("nonzero denominator");
                split.extend(self.terms(&proper));
            }
            if sum_size(&split) < frac.1.size() {
                return split;
            }
            return vec![frac];
        }
        if num.deg() >= den.deg() {
            // polynomial part followed by the proper remainder
            let (q, r) = num.divmod(&den).expect("nonzero denominator");
            let mut split = self.laurent_terms(level, &q, 0);
            if !r.is_zero() {
                split.push(self.fraction(level, &r, &den));
            }
            if sum_size(&split) < frac.1.size() {
                return split;
            }
        }
        vec![frac]
    }

    /// Terms of `num · var^(-shift)`, highest power first.
    fn laurent_terms(&self, level: usize, num: &Poly<TowerElem>, shift: i64) -> Vec<Term> {
        let mut out = Vec::new();
        for (i, c) in num.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            out.extend(self.monomial_terms(c, level, i as i64 - shift));
        }
        out
    }

    fn var_power(&self, level: usize, p: i64) -> Expr {
        let v = self.vars[level].clone();
        if p.abs() == 1 {
            v
        } else {
            Expr::pow(v, p.abs())
        }
    }

    fn monomial_terms(&self, c: &TowerElem, level: usize, p: i64) -> Vec<Term> {
        if let Some(q) = c.as_rational() {
            if p == 0 {
                return vec![rational_term(&q)];
            }
            let m = self.var_power(level, p);
            let neg = q.is_negative();
            let (a, b) = (q.numer().abs(), q.denom().clone());
            let body = match (p > 0, a.is_one(), b.is_one()) {
                (true, true, true) => m,
                (true, false, true) => Expr::mul(Expr::Int(a), m),
                (true, true, false) => Expr::div(m, Expr::Int(b)),
                (true, false, false) => Expr::mul(Expr::div(Expr::Int(a), Expr::Int(b)), m),
                (false, _, true) => Expr::div(Expr::Int(a), m),
                (false, _, false) => Expr::div(Expr::Int(a), Expr::mul(Expr::Int(b), m)),
            };
            return vec![(neg, body)];
        }
        if p == 0 {
            return self.terms(c);
        }
        let m = self.var_power(level, p);
        let (neg, body) = self.signed(c);
        let body = if p > 0 { Expr::mul(body, m) } else { Expr::div(body, m) };
        vec![(neg, body)]
    }

    fn poly_expr(&self, level: usize, p: &Poly<TowerElem>) -> Term {
        sum_signed(self.laurent_terms(level, p, 0))
    }

    fn fraction(&self, level: usize, num: &Poly<TowerElem>, den: &Poly<TowerElem>) -> Term {
        let (nneg, nbody) = self.poly_expr(level, num);
        let dbody = self.den_expr(level, den);
        let mut best = (nneg, Expr::div(nbody, dbody));
        if let Some(cand) = self.cleared_fraction(level, num, den) {
            if cand.1.size() <= best.1.size() {
                best = cand;
            }
        }
        best
    }

    /// The shorter of the expanded denominator and its product form.
    fn den_expr(&self, level: usize, d: &Poly<TowerElem>) -> Expr {
        let (_, expanded) = self.poly_expr(level, d);
        match self.factored(level, d) {
            Some(f) if f.size() < expanded.size() => f,
            _ => expanded,
        }
    }

    /// `d` as a positive integer times powers of primitive factors: hints
    /// first, then the square-free decomposition of what is left.
    fn factored(&self, level: usize, d: &Poly<TowerElem>) -> Option<Expr> {
        if d.degree()? < 2 {
            return None;
        }
        let mut rest = d.monic();
        let mut parts: Vec<(Poly<TowerElem>, u32)> = Vec::new();
        for (_, h) in self.hints.iter().filter(|(l, _)| *l == level) {
            let mut k = 0;
            while rest.deg() >= h.deg() {
                let (q, r) = rest.divmod(h).ok()?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                k += 1;
            }
            if k > 0 {
                parts.push((h.clone(), k));
            }
        }
        if !rest.is_constant() {
            let sf = squarefree_factorize(&rest).ok()?;
            parts.extend(sf.factors.into_iter().filter(|(f, _)| !f.is_constant()));
        }
        if parts.len() == 1 && parts[0].1 == 1 {
            return None;
        }
        let parts: Vec<(Poly<TowerElem>, u32)> =
            parts.into_iter().map(|(f, k)| (primitive_factor(level, &f), k)).collect();
        let prod = parts.iter().fold(Poly::one(), |acc: Poly<TowerElem>, (f, k)| acc.mul(&f.pow(*k)));
        let u = TowerElem::from_parts(level, d.clone(), prod).ok()?.as_rational()?;
        if !u.is_integer() || !u.is_positive() {
            return None;
        }
        let mut out: Option<Expr> = (!One::is_one(&u)).then(|| Expr::Int(u.to_integer()));
        for (f, k) in parts {
            let (neg, e) = self.poly_expr(level, &f);
            if neg {
                return None;
            }
            let e = if k == 1 { e } else { Expr::pow(e, k as i64) };
            out = Some(match out {
                None => e,
                Some(acc) => Expr::mul(acc, e),
            });
        }
        out
    }

    /// `num/den` with coefficient denominators moved into a content factor
    /// of the overall denominator. Only for fractions whose coefficients
    /// are rational (level 0) or lie in `Q(x)` (level 1 and up).
    fn cleared_fraction(
        &self,
        level: usize,
        num: &Poly<TowerElem>,
        den: &Poly<TowerElem>,
    ) -> Option<Term> {
        let coeffs: Vec<&TowerElem> = num.coeffs().iter().chain(den.coeffs()).collect();
        if coeffs.iter().any(|c| c.level() != 0) {
            return None;
        }
        let base = |c: &TowerElem| match c {
            TowerElem::Base(f) => f.clone(),
            _ => unreachable!(),
        };
        let mut m: Poly<Rational> = Poly::one();
        if level > 0 {
            for c in &coeffs {
                m = poly_lcm(&m, base(c).den());
            }
        }
        let scale_x = RatFunc::from_poly(m.clone());
        let scaled = |p: &Poly<TowerElem>| -> Vec<Poly<Rational>> {
            p.coeffs()
                .iter()
                .map(|c| {
                    let f = base(c).mul(&scale_x);
                    debug_assert!(f.is_poly());
                    f.num().clone()
                })
                .collect()
        };
        let (nx, dx) = if level > 0 {
            (scaled(num), scaled(den))
        } else {
            // at level 0 the coefficients are plain rationals
            let as_const = |p: &Poly<TowerElem>| -> Vec<Poly<Rational>> {
                p.coeffs()
                    .iter()
                    .map(|c| Poly::constant(c.as_rational().expect("level 0")))
                    .collect()
            };
            (as_const(num), as_const(den))
        };
        let mut l = BigInt::one();
        for p in nx.iter().chain(&dx) {
            for q in p.coeffs() {
                l = l.lcm(q.denom());
            }
        }
        let lq = Rational::from_integer(l);
        let nx: Vec<Poly<Rational>> = nx.iter().map(|p| p.scale(&lq)).collect();
        let dx: Vec<Poly<Rational>> = dx.iter().map(|p| p.scale(&lq)).collect();

        // content of the denominator: a primitive integer polynomial in x
        // times a positive integer
        let mut gx: Poly<Rational> = Poly::zero();
        if level > 0 {
            for p in dx.iter().filter(|p| !p.is_zero()) {
                gx = crate::algebra::gcd::gcd_unchecked(&gx, p);
            }
            gx = primitive_integer(&gx);
        } else {
            gx = Poly::one();
        }
        let dq: Vec<Poly<Rational>> =
            dx.iter().map(|p| p.exact_div(&gx).expect("content divides")).collect();
        let mut ic = BigInt::zero();
        for p in &dq {
            for q in p.coeffs() {
                ic = ic.gcd(q.numer());
            }
        }
        if ic.is_zero() {
            ic = BigInt::one();
        }
        let icq = Rational::from_integer(ic.clone());
        let dq: Vec<Poly<Rational>> = dq.iter().map(|p| p.scale(&icq.inv())).collect();

        let lift = |ps: Vec<Poly<Rational>>| -> Poly<TowerElem> {
            if level == 0 {
                Poly::new(ps.into_iter().map(|p| TowerElem::rational(p.coeff(0))).collect())
            } else {
                Poly::new(
                    ps.into_iter()
                        .map(|p| TowerElem::from_ratfunc_x(RatFunc::from_poly(p)))
                        .collect(),
                )
            }
        };
        let (nneg, nbody) = self.poly_expr(level, &lift(nx));
        let dbody = self.den_expr(level, &lift(dq));
        let mut factors = Vec::new();
        if !ic.is_one() {
            factors.push(Expr::Int(ic));
        }
        if !gx.is_one() {
            let (_, g) = self.poly_expr(0, &gx.map(|c| TowerElem::rational(c.clone())));
            factors.push(g);
        }
        if factors.is_empty() && num_traits::One::is_one(&lq) && m.is_one() {
            return None;
        }
        let mut dexpr = None;
        for f in factors {
            dexpr = Some(match dexpr {
                None => f,
                Some(acc) => Expr::mul(acc, f),
            });
        }
        let is_one = matches!(&dbody, Expr::Int(n) if n.is_one());
        let dexpr = match (dexpr, is_one) {
            (None, _) => dbody,
            (Some(c), true) => c,
            (Some(c), false) => Expr::mul(c, dbody),
        };
        if matches!(&dexpr, Expr::Int(n) if n.is_one()) {
            return Some((nneg, nbody));
        }
        Some((nneg, Expr::div(nbody, dexpr)))
    }
}

fn rational_term(q: &Rational) -> Term {
    let a = Expr::Int(q.numer().abs());
    let body = if q.denom().is_one() { a } else { Expr::div(a, Expr::Int(q.denom().clone())) };
    (q.is_negative(), body)
}

fn poly_lcm(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    if b.is_one() {
        return a.clone();
    }
    let g = crate::algebra::gcd::gcd_unchecked(a, b);
    a.mul(&b.exact_div(&g).expect("gcd divides")).monic()
}

/// A constant multiple of `f` with integer polynomial coefficients when
/// they lie in `Q(x)`; other factors are returned unchanged.
fn primitive_factor(level: usize, f: &Poly<TowerElem>) -> Poly<TowerElem> {
    if level == 0 {
        let q = primitive_integer(&f.map(|c| c.as_rational().expect("level 0")));
        return q.map(|c| TowerElem::rational(c.clone()));
    }
    let mut fs = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        match c {
            TowerElem::Base(r) => fs.push(r.clone()),
            _ => return f.clone(),
        }
    }
    let m = fs.iter().fold(Poly::one(), |acc, r| poly_lcm(&acc, r.den()));
    let scaled: Vec<Poly<Rational>> =
        fs.iter().map(|r| r.mul(&RatFunc::from_poly(m.clone())).num().clone()).collect();
    let mut g: Poly<Rational> = Poly::zero();
    for p in scaled.iter().filter(|p| !p.is_zero()) {
        g = crate::algebra::gcd::gcd_unchecked(&g, p);
    }
    let g = primitive_integer(&g);
    let parts: Vec<Poly<Rational>> =
        scaled.iter().map(|p| p.exact_div(&g).expect("content divides")).collect();
    let mut l = BigInt::one();
    let mut n = BigInt::zero();
    for p in &parts {
        for q in p.coeffs() {
            l = l.lcm(q.denom());
        }
    }
    let parts: Vec<Poly<Rational>> =
        parts.iter().map(|p| p.scale(&Rational::from_integer(l.clone()))).collect();
    for p in &parts {
        for q in p.coeffs() {
            n = n.gcd(q.numer());
        }
    }
    let lead_neg = parts.last().and_then(|p| p.lc()).is_some_and(|c| c.is_negative());
    if lead_neg {
        n = -n;
    }
    let unit = Rational::new(BigInt::one(), n);
    Poly::new(
        parts
            .iter()
            .map(|p| TowerElem::from_ratfunc_x(RatFunc::from_poly(p.scale(&unit))))
            .collect(),
    )
}

/// Positive-leading primitive integer multiple of `p`.
fn primitive_integer(p: &Poly<Rational>) -> Poly<Rational> {
    if p.is_zero() {
        return Poly::one();
    }
    let mut l = BigInt::one();
    for q in p.coeffs() {
        l = l.lcm(q.denom());
    }
    let scaled = p.scale(&Rational::from_integer(l));
    let mut g = BigInt::zero();
    for q in scaled.coeffs() {
        g = g.gcd(q.numer());
    }
    let mut out = scaled.scale(&Rational::new(BigInt::one(), g));
    if out.lc().is_some_and(|c| c.is_negative()) {
        out = out.neg();
    }
    out
}

/// Folds signed terms into one expression, pulling a leading minus out.
pub fn sum_signed(mut terms: Vec<Term>) -> Term {
    if terms.is_empty() {
        return (false, Expr::int(0));
    }
    let negate_all = terms[0].0;
    if negate_all && terms.len() > 1 {
        for t in &mut terms {
            t.0 = !t.0;
        }
    }
    let mut it = terms.into_iter();
    let (first_neg, first) = it.next().expect("nonempty");
    let mut acc = first;
    for (neg, body) in it {
        acc = if neg { Expr::sub(acc, body) } else { Expr::add(acc, body) };
    }
    (if negate_all { true } else { first_neg }, acc)
}

/// Single expression for a list of signed terms.
pub fn sum_expr(terms: Vec<Term>) -> Expr {
    let (neg, body) = sum_signed(terms);
    if neg {
        Expr::neg(body)
    } else {
        body
    }
}

/// Left-to-right sum where only a negative first term gets a `neg` node.
pub fn sum_chain(terms: Vec<Term>) -> Expr {
    let mut it = terms.into_iter();
    let Some((first_neg, first)) = it.next() else { return Expr::int(0) };
    let mut acc = if first_neg { Expr::neg(first) } else { first };
    for (neg, body) in it {
        acc = if neg { Expr::sub(acc, body) } else { Expr::add(acc, body) };
    }
    acc
}

fn sum_size(terms: &[Term]) -> usize {
    terms.iter().map(|(_, e)| e.size() + 1).sum::<usize>().saturating_sub(1)
        + usize::from(terms.first().is_some_and(|t| t.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn x() -> TowerElem {
        TowerElem::x()
    }

    fn q(n: i64, d: i64) -> TowerElem {
        TowerElem::rational(rat(n, d))
    }

    #[test]
    fn linear_in_x() {
        let r = Renderer::new(&Tower::base());
        assert_eq!(r.elem(&x().add(&TowerElem::one())), Expr::add(Expr::X, Expr::int(1)));
        assert_eq!(r.elem(&q(-5, 1)), Expr::neg(Expr::int(5)));
        assert_eq!(r.elem(&q(3, 4)).to_infix(), "3/4");
    }

    #[test]
    fn theta_squared_expands_log() {
        let t = Tower::log(x().try_inv().unwrap()).unwrap();
        let th = TowerElem::theta(1);
        let e = Renderer::new(&t).elem(&th.mul(&th));
        assert_eq!(e, Expr::pow(Expr::ln(Expr::div(Expr::int(1), Expr::X)), 2));
    }

    #[test]
    fn laurent_coefficients() {
        // -5 + 4x - 6/x
        let e = q(-5, 1).add(&x().mul(&q(4, 1))).sub(&x().try_inv().unwrap().mul(&q(6, 1)));
        let s = Renderer::new(&Tower::base()).elem(&e).to_infix();
        assert_eq!(s, "4*x - 5 - 6/x");
    }

    #[test]
    fn cleared_denominator_content() {
        // (3θ^2 + x)/(x(θ^3 + x)) with θ = ln x
        let t = Tower::log(x()).unwrap();
        let th = TowerElem::theta(1);
        let num = th.mul(&th).mul(&q(3, 1)).add(&x());
        let den = x().mul(&th.mul(&th).mul(&th).add(&x()));
        let e = num.try_div(&den).unwrap();
        let s = Renderer::new(&t).elem(&e).to_infix();
        assert_eq!(s, "(3*ln(x)^2 + x)/(x*(ln(x)^3 + x))");
    }

    #[test]
    fn nested_fraction_beats_cleared() {
        // -(x^3 + 1/5)/((x + 1)(θ + x))
        let t = Tower::log(x()).unwrap();
        let th = TowerElem::theta(1);
        let num = x().mul(&x()).mul(&x()).mul(&q(5, 1)).add(&TowerElem::one());
        let den = q(5, 1).mul(&x().add(&TowerElem::one())).mul(&th.add(&x()));
        let e = num.try_div(&den).unwrap().neg();
        let s = Renderer::new(&t).elem(&e).to_infix();
        assert_eq!(s, "-(x^3 + 1/5)/(x + 1)/(ln(x) + x)");
        let v = Renderer::new(&t).elem(&e).eval(2.0);
        let expect = -(41.0) / (5.0 * 3.0 * (2f64.ln() + 2.0));
        assert!((v - expect).abs() < 1e-12);
        let _ = int(0);
    }
}

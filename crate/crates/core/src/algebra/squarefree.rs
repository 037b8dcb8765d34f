use super::field::Field;
use super::gcd::{gcd_unchecked, xgcd};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `unit · ∏ factor^multiplicity` with monic, square-free, pairwise
/// coprime factors listed by increasing multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFreeFactorization<F: Field> {
    pub unit: F,
    pub factors: Vec<(Poly<F>, u32)>,
}

impl<F: Field> SquareFreeFactorization<F> {
    pub fn expand(&self) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.max_multiplicity() <= 1
    }
}

/// Yun's algorithm, using the formal derivative in the polynomial's own
/// variable.
pub fn squarefree_factorize<F: Field>(b: &Poly<F>) -> Result<SquareFreeFactorization<F>> {
    let unit = b.lc().ok_or(Error::ZeroPolynomial("square-free factorization of zero"))?.clone();
    let f = b.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(SquareFreeFactorization { unit, factors });
    }
    let df = f.derivative();
    let a0 = gcd_unchecked(&f, &df);
    let mut bi = f.exact_div(&a0)?;
    let mut ci = df.exact_div(&a0)?;
    let mut di = ci.sub(&bi.derivative());
    let mut i = 1u32;
    while !bi.is_constant() {
        let ai = gcd_unchecked(&bi, &di);
        bi = bi.exact_div(&ai)?;
        ci = di.exact_div(&ai)?;
        di = ci.sub(&bi.derivative());
        if !ai.is_constant() {
            factors.push((ai, i));
        }
        i += 1;
    }
    Ok(SquareFreeFactorization { unit, factors })
}

/// `gcd(b, b') = 1` in the polynomial's own variable.
pub fn is_squarefree<F: Field>(b: &Poly<F>) -> bool {
    !b.is_zero() && gcd_unchecked(b, &b.derivative()).is_one()
}

/// One summand `numerator / factor^power` of a partial fraction expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionTerm<F: Field> {
    pub numerator: Poly<F>,
    pub factor: Poly<F>,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions<F: Field> {
    pub poly_part: Poly<F>,
    pub terms: Vec<PartialFractionTerm<F>>,
}

impl<F: Field> PartialFractions<F> {
    /// Recombines into `(numerator, denominator)` over the product of the
    /// factor powers.
    pub fn recombine(&self) -> (Poly<F>, Poly<F>) {
        let mut blocks: Vec<(Poly<F>, u32)> = Vec::new();
        for t in &self.terms {
            match blocks.iter_mut().find(|(f, _)| *f == t.factor) {
                Some((_, m)) => *m = (*m).max(t.power),
                None => blocks.push((t.factor.clone(), t.power)),
            }
        }
        let den = blocks.iter().fold(Poly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)));
        let mut num = self.poly_part.mul(&den);
        for t in &self.terms {
            let rest = den.exact_div(&t.factor.pow(t.power)).expect("factor divides product");
            num = num.add(&t.numerator.mul(&rest));
        }
        (num, den)
    }
}

/// Expands `r / ∏ f_i^{m_i}` into `poly_part + Σ_i Σ_j n_ij / f_i^j` with
/// `deg n_ij < deg f_i`.
pub fn partial_fractions<F: Field>(
    r: &Poly<F>,
    factors: &[(Poly<F>, u32)],
) -> Result<PartialFractions<F>> {
    for (i, (f, m)) in factors.iter().enumerate() {
        if f.is_constant() || *m == 0 {
            return Err(Error::NotCoprime("partial fraction factors must be nonconstant".into()));
        }
        for (g, _) in &factors[i + 1..] {
            if !gcd_unchecked(f, g).is_one() {
                return Err(Error::NotCoprime("partial fraction factors share a root".into()));
            }
        }
    }
    let den = factors.iter().fold(Poly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)));
    let (poly_part, rem) = r.divmod(&den)?;
    let mut terms = Vec::new();
    for (f, m) in factors {
        let block = f.pow(*m);
        let rest = den.exact_div(&block)?;
        // rem / (block·rest) = a / block + ..., a = rem · rest^{-1} mod block
        let (_, s, _) = xgcd(&rest, &block)?;
        let mut a = rem.mul(&s).rem(&block)?;
        // f-adic expansion a = Σ_k a_k f^k, giving a_k / f^{m-k}
        let mut pieces = Vec::with_capacity(*m as usize);
        for _ in 0..*m {
            let (q, digit) = a.divmod(f)?;
            pieces.push(digit);
            a = q;
        }
        for (k, digit) in pieces.into_iter().enumerate() {
            if !digit.is_zero() {
                terms.push(PartialFractionTerm {
                    numerator: digit,
                    factor: f.clone(),
                    power: *m - k as u32,
                });
            }
        }
    }
    Ok(PartialFractions { poly_part, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{int, rat, Rational};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_ints(cs)
    }

    #[test]
    fn square_of_variable() {
        let s = squarefree_factorize(&p(&[0, 0, 1])).unwrap();
        assert_eq!(s.factors, vec![(p(&[0, 1]), 2)]);
        assert_eq!(s.unit, int(1));
    }

    #[test]
    fn mixed_multiplicities() {
        // 3 (t+1) (t-2)^3
        let b = p(&[1, 1]).mul(&p(&[-2, 1]).pow(3)).scale(&int(3));
        let s = squarefree_factorize(&b).unwrap();
        assert_eq!(s.factors, vec![(p(&[1, 1]), 1), (p(&[-2, 1]), 3)]);
        assert_eq!(s.expand(), b);
    }

    #[test]
    fn squarefree_input_is_single_factor() {
        // (t+1)(t-3)(t^2+1)
        let b = p(&[-3, -2, -2, -2, 1]);
        let s = squarefree_factorize(&b).unwrap();
        assert_eq!(s.factors, vec![(b.clone(), 1)]);
        assert!(is_squarefree(&b));
        assert!(squarefree_factorize(&Poly::<Rational>::zero()).is_err());
    }

    #[test]
    fn two_linear_factors() {
        // 1/((t+1)(t-3)) = (-1/4)/(t+1) + (1/4)/(t-3)
        let pf = partial_fractions(&p(&[1]), &[(p(&[1, 1]), 1), (p(&[-3, 1]), 1)]).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert_eq!(pf.terms[0].numerator, Poly::constant(rat(-1, 4)));
        assert_eq!(pf.terms[1].numerator, Poly::constant(rat(1, 4)));
    }

    #[test]
    fn single_factor_keeps_numerator() {
        let r = p(&[2, 1]);
        let pf = partial_fractions(&r, &[(p(&[1, 0, 1]), 1)]).unwrap();
        assert_eq!(pf.terms.len(), 1);
        assert_eq!(pf.terms[0].numerator, r);
    }

    #[test]
    fn repeated_factor_and_poly_part() {
        // (t^3 + 1) / (t (t-1)^2)
        let r = p(&[1, 0, 0, 1]);
        let pf = partial_fractions(&r, &[(p(&[0, 1]), 1), (p(&[-1, 1]), 2)]).unwrap();
        assert_eq!(pf.poly_part, p(&[1]));
        let (n, d) = pf.recombine();
        assert_eq!(n, r);
        assert_eq!(d, p(&[0, 1]).mul(&p(&[-1, 1]).pow(2)));
    }

    #[test]
    fn non_coprime_rejected() {
        let res = partial_fractions(&p(&[1]), &[(p(&[-1, 0, 1]), 1), (p(&[1, 1]), 1)]);
        assert!(matches!(res, Err(Error::NotCoprime(_))));
    }
}

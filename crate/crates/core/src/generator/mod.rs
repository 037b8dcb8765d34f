//! Seeded generation of elementary-integrable pairs.
//!
//! Each pair starts from a planted antiderivative in Liouville form
//! (polynomial part, rational part with a repeated denominator, constant
//! residues over square-free factors) and the integrand is its derivative.
//! Item `i` of a run draws from its own RNG seeded by `(seed, i)`, so
//! output does not depend on scheduling.

mod plan;
mod sample;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::gcd::gcd_unchecked;
use crate::algebra::{Field, Poly, Rational};
use crate::error::{Error, Result};
use crate::kernel::LiouvilleForm;
use crate::tower::{ExtensionKind, Expr, Tower, TowerElem};

pub use plan::{hermite_pair, pair_from_form, poly_pair, sqfree_pair, ArctanFactor, LogTerm, RationalPlan};
use sample::{random_coeff, random_denominator, random_tower, short_coeff, small_rational, Factor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Poly,
    SqfreeRational,
    HermiteRational,
    Mixed,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Poly => "poly",
            Method::SqfreeRational => "sqfree",
            Method::HermiteRational => "hermite",
            Method::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "poly" => Method::Poly,
            "sqfree" => Method::SqfreeRational,
            "hermite" => Method::HermiteRational,
            "mixed" => Method::Mixed,
            _ => return Err(Error::InvalidConfig(format!("unknown method {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionChoice {
    Log,
    Exp,
    Random,
}

impl FromStr for ExtensionChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "log" => ExtensionChoice::Log,
            "exp" => ExtensionChoice::Exp,
            "random" => ExtensionChoice::Random,
            _ => return Err(Error::InvalidConfig(format!("unknown extension {s:?}"))),
        })
    }
}

/// Magnitude bounds for random rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientPool {
    pub max_numerator: u32,
    pub max_denominator: u32,
}

impl Default for CoefficientPool {
    fn default() -> Self {
        CoefficientPool { max_numerator: 20, max_denominator: 20 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    /// `None` mixes methods by item index: poly, rational, mixed.
    pub method: Option<Method>,
    pub extension_kind: ExtensionChoice,
    pub tower_height: usize,
    pub max_theta_degree: usize,
    pub max_factor_count: usize,
    pub coefficient_pool: CoefficientPool,
    pub allow_negative_exp_powers: bool,
    /// `θ² + r²` factors with arctangent terms; used on log towers only.
    pub arctan_factors: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            method: None,
            extension_kind: ExtensionChoice::Random,
            tower_height: 1,
            max_theta_degree: 4,
            max_factor_count: 3,
            coefficient_pool: CoefficientPool::default(),
            allow_negative_exp_powers: true,
            arctan_factors: true,
        }
    }
}

impl GenConfig {
    pub fn new(seed: u64, method: Option<Method>) -> Self {
        GenConfig { seed, method, ..GenConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if !(1..=2).contains(&self.tower_height) {
            return bad("tower height must be 1 or 2");
        }
        if self.max_theta_degree == 0 {
            return bad("max theta degree must be positive");
        }
        if self.max_factor_count == 0 {
            return bad("max factor count must be positive");
        }
        if self.coefficient_pool.max_numerator == 0 || self.coefficient_pool.max_denominator == 0 {
            return bad("coefficient bounds must be positive");
        }
        if self.extension_kind == ExtensionChoice::Exp && self.arctan_factors {
            return bad("arctan factors need a logarithmic extension");
        }
        Ok(())
    }
}

/// A generated pair with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrablePair {
    pub integrand: Expr,
    pub integral: Expr,
    pub integrand_elem: TowerElem,
    pub integral_form: LiouvilleForm,
    pub tower: Tower,
    pub method: Method,
    pub seed: u64,
    pub verified: bool,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of item `index` in a run with master seed `seed`.
pub fn item_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed.wrapping_add(splitmix64(index)))
}

/// Method of item `index` when the config does not fix one.
pub fn default_method(index: u64, rng: &mut impl Rng) -> Method {
    match index % 3 {
        0 => Method::Poly,
        1 if rng.gen_bool(0.65) => Method::SqfreeRational,
        1 => Method::HermiteRational,
        _ => Method::Mixed,
    }
}

const MAX_ATTEMPTS: usize = 100;

/// Item `index` of the run described by `cfg`.
pub fn generate_item(cfg: &GenConfig, index: u64) -> Result<IntegrablePair> {
    let seed = item_seed(cfg.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let method = match cfg.method {
        Some(m) => m,
        None => default_method(index, &mut rng),
    };
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let tower = random_tower(cfg, &mut rng)?;
        let made = match method {
            Method::Poly => gen_poly_pair(cfg, &tower, seed, &mut rng),
            Method::SqfreeRational => gen_sqfree_pair(cfg, &tower, seed, &mut rng),
            Method::HermiteRational => gen_hermite_pair(cfg, &tower, seed, &mut rng),
            Method::Mixed => gen_mixed_pair(cfg, &tower, seed, &mut rng),
        };
        match made {
            Ok(p) => return Ok(p),
            Err(e @ (Error::Generation(_) | Error::InvalidTower(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Generation(format!(
        "item {index}: no pair after {MAX_ATTEMPTS} attempts ({})",
        last.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Items `0..count`, in index order, generated in parallel.
pub fn generate(cfg: &GenConfig, count: usize) -> Result<Vec<IntegrablePair>> {
    cfg.validate()?;
    (0..count as u64).into_par_iter().map(|i| generate_item(cfg, i)).collect()
}

/// `short` favours bare constant coefficients.
fn random_poly_part<R: Rng>(
    cfg: &GenConfig,
    tower: &Tower,
    short: bool,
    rng: &mut R,
) -> Result<TowerElem> {
    let level = tower.height();
    let theta = TowerElem::theta(level);
    let exp_top = tower.extension(level).is_some_and(|e| e.kind == ExtensionKind::Exp);
    let top = match rng.gen_range(0..10) {
        0..=6 => 1,
        7..=8 => 2,
        _ => 3,
    }
    .min(cfg.max_theta_degree) as i64;
    let low = if exp_top && cfg.allow_negative_exp_powers && rng.gen_bool(0.25) { -1 } else { 0 };
    let mut p = TowerElem::zero();
    for i in low..=top {
        let keep = i == top || (i < 0) || rng.gen_bool(0.35);
        if keep {
            let draw = |rng: &mut R| {
                if short {
                    short_coeff(&cfg.coefficient_pool, level, rng)
                } else {
                    random_coeff(&cfg.coefficient_pool, level, rng)
                }
            };
            let mut q = draw(rng);
            // a constant θ^0 term only shifts the integral
            while i == 0 && q.is_constant() {
                q = draw(rng);
            }
            p = p.add(&q.mul(&theta.powi(i)?));
        }
    }
    if p.is_constant() {
        return Err(Error::Generation("constant polynomial part".into()));
    }
    // c·θ only restates the definition of θ
    if p.sub(&theta).is_constant() || p.try_div(&theta)?.is_constant() {
        return Err(Error::Generation("bare tower variable".into()));
    }
    Ok(p)
}

/// Random polynomial (Laurent for exponentials) `P` in the top variable and
/// the pair `(D(P), P)`.
pub fn gen_poly_pair<R: Rng>(
    cfg: &GenConfig,
    tower: &Tower,
    seed: u64,
    rng: &mut R,
) -> Result<IntegrablePair> {
    let p = random_poly_part(cfg, tower, rng.gen_bool(0.5), rng)?;
    pair_from_form(tower, LiouvilleForm::rational(p), Method::Poly, seed)
}

/// Residues planted on each square-free factor.
fn plant_residues<R: Rng>(
    cfg: &GenConfig,
    factors: &[(Factor, u32)],
    optional: bool,
    rng: &mut R,
) -> RationalPlan {
    let mut plan = RationalPlan::default();
    for (f, _) in factors {
        if optional && rng.gen_bool(0.6) {
            continue;
        }
        match f {
            Factor::Linear(p) | Factor::Quadratic(p) => plan.logs.push(LogTerm {
                factor: p.clone(),
                residue: small_rational(&cfg.coefficient_pool, rng),
            }),
            Factor::SumOfSquares(r) => {
                let mut gamma = Rational::zero_value();
                let mut delta = Rational::zero_value();
                while gamma.is_zero() && delta.is_zero() {
                    if rng.gen_bool(0.6) {
                        gamma = small_rational(&cfg.coefficient_pool, rng);
                    }
                    if rng.gen_bool(0.7) {
                        delta = small_rational(&cfg.coefficient_pool, rng);
                    }
                }
                plan.arctans.push(ArctanFactor { r: r.clone(), gamma, delta });
            }
        }
    }
    plan
}

trait ZeroValue {
    fn zero_value() -> Self;
}

impl ZeroValue for Rational {
    fn zero_value() -> Self {
        <Rational as Field>::zero()
    }
}

/// Square-free denominator with a constant residue on every factor.
pub fn gen_sqfree_pair<R: Rng>(
    cfg: &GenConfig,
    tower: &Tower,
    seed: u64,
    rng: &mut R,
) -> Result<IntegrablePair> {
    let (factors, _) = random_denominator(cfg, tower, false, rng)?;
    let plan = plant_residues(cfg, &factors, false, rng);
    sqfree_pair(tower, &plan, seed)
}

/// Planted rational part `s/h` over the deflated denominator
/// `h = ∏ f^(m-1)` plus residues on some factors.
pub fn gen_hermite_pair<R: Rng>(
    cfg: &GenConfig,
    tower: &Tower,
    seed: u64,
    rng: &mut R,
) -> Result<IntegrablePair> {
    let plan = random_hermite_plan(cfg, tower, rng)?;
    hermite_pair(tower, &plan, seed)
}

fn random_hermite_plan<R: Rng>(cfg: &GenConfig, tower: &Tower, rng: &mut R) -> Result<RationalPlan> {
    let level = tower.height();
    let (factors, _) = random_denominator(cfg, tower, true, rng)?;
    let h = factors
        .iter()
        .fold(Poly::one(), |acc: Poly<TowerElem>, (f, m)| acc.mul(&f.poly().pow(m - 1)));
    let dh = h.degree().unwrap_or(0);
    let mut s = Poly::zero();
    for i in 0..dh {
        if i + 1 == dh || rng.gen_bool(0.3) {
            s = s.add(&Poly::monomial(short_coeff(&cfg.coefficient_pool, level, rng), i));
        }
    }
    if s.is_zero() || !gcd_unchecked(&s, &h).is_one() {
        return Err(Error::Generation("numerator shares a factor with the deflation".into()));
    }
    let mut plan = plant_residues(cfg, &factors, true, rng);
    plan.rational_part = TowerElem::from_parts(level, s, h)?;
    Ok(plan)
}

/// Sum of a polynomial pair and a rational pair over the same tower.
pub fn gen_mixed_pair<R: Rng>(
    cfg: &GenConfig,
    tower: &Tower,
    seed: u64,
    rng: &mut R,
) -> Result<IntegrablePair> {
    let linear = GenConfig { max_theta_degree: 1, ..cfg.clone() };
    let p = random_poly_part(&linear, tower, true, rng)?;
    let hermite = rng.gen_bool(0.3);
    // one factor keeps the sum comparable in size to a single-method pair
    let cfg = &GenConfig { max_factor_count: 1, ..cfg.clone() };
    let plan = if hermite {
        random_hermite_plan(cfg, tower, rng)?
    } else {
        let (factors, _) = random_denominator(cfg, tower, false, rng)?;
        plant_residues(cfg, &factors, false, rng)
    };
    let form = LiouvilleForm::rational(p).add(&plan.form(tower)?);
    let pair = pair_from_form(tower, form, Method::Mixed, seed)?;
    if hermite {
        plan::cross_check(&pair)?;
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_verified() {
        let cfg = GenConfig::new(7, None);
        let a = generate(&cfg, 30).unwrap();
        let b = generate(&cfg, 30).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.verified));
    }

    #[test]
    fn methods_honoured() {
        for m in [Method::Poly, Method::SqfreeRational, Method::HermiteRational, Method::Mixed] {
            let cfg = GenConfig { tower_height: 2, ..GenConfig::new(3, Some(m)) };
            for p in generate(&cfg, 8).unwrap() {
                assert_eq!(p.method, m);
                assert!(p.verified, "{}", p.integrand.to_infix());
            }
        }
    }

    #[test]
    fn exp_with_arctan_is_rejected() {
        let cfg = GenConfig { extension_kind: ExtensionChoice::Exp, ..GenConfig::default() };
        assert!(cfg.validate().is_err());
    }
}

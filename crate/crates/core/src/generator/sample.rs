//! Random draws. Every distribution here is a tunable choice; the weights
//! keep expressions short, which is what the dataset statistics reward.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{rat, Field, Poly, Rational};
use crate::error::{Error, Result};
use crate::tower::{ExtensionKind, Tower, TowerElem};

use super::{CoefficientPool, ExtensionChoice, GenConfig};

pub(crate) fn pick_kind<R: Rng>(choice: ExtensionChoice, rng: &mut R) -> ExtensionKind {
    match choice {
        ExtensionChoice::Log => ExtensionKind::Log,
        ExtensionChoice::Exp => ExtensionKind::Exp,
        ExtensionChoice::Random => {
            if rng.gen_bool(0.6) {
                ExtensionKind::Log
            } else {
                ExtensionKind::Exp
            }
        }
    }
}

fn x() -> TowerElem {
    TowerElem::x()
}

fn k(n: i64) -> TowerElem {
    TowerElem::integer(n)
}

/// Index drawn with the given integer weights.
fn weighted<R: Rng>(weights: &[u32], rng: &mut R) -> usize {
    let total: u32 = weights.iter().sum();
    let mut t = rng.gen_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        if t < w {
            return i;
        }
        t -= w;
    }
    weights.len() - 1
}

fn inv_x() -> TowerElem {
    x().try_inv().expect("x is nonzero")
}

/// First-level arguments. Short shapes with short derivatives dominate;
/// powers of `x` add structural variety at almost no length.
fn base_argument<R: Rng>(kind: ExtensionKind, rng: &mut R) -> TowerElem {
    let small = |rng: &mut R| k(rng.gen_range(1..=3));
    let xk = |rng: &mut R| x().powi(rng.gen_range(2..=5)).expect("x is nonzero");
    match kind {
        ExtensionKind::Log => match weighted(&[5, 4, 2, 2, 2, 2, 1, 1], rng) {
            0 => x(),
            1 => xk(rng),
            2 => x().add(&small(rng)),
            3 => x().sub(&small(rng)),
            4 => x().mul(&k(rng.gen_range(2..=3))),
            5 => inv_x(),
            6 => xk(rng).add(&small(rng)),
            _ => inv_x().mul(&k(rng.gen_range(2..=3))),
        },
        ExtensionKind::Exp => match weighted(&[5, 3, 3, 2, 1, 1], rng) {
            0 => x(),
            1 => x().mul(&k(*[2, 3, -1, -2].choose(rng).expect("nonempty"))),
            2 => xk(rng),
            3 => xk(rng).mul(&k(*[2, -1, -2].choose(rng).expect("nonempty"))),
            4 => inv_x(),
            _ => x().add(&small(rng)),
        },
    }
}

/// Second-level arguments built from `θ1`.
fn lifted_argument<R: Rng>(kind: ExtensionKind, below: ExtensionKind, rng: &mut R) -> TowerElem {
    let t1 = TowerElem::theta(1);
    match (kind, below) {
        (ExtensionKind::Log, ExtensionKind::Log) => match rng.gen_range(0..3) {
            0 => t1,
            1 => t1.add(&k(rng.gen_range(1..=3))),
            _ => t1.add(&x()),
        },
        (ExtensionKind::Log, ExtensionKind::Exp) => match rng.gen_range(0..2) {
            0 => t1.add(&k(rng.gen_range(1..=3))),
            _ => t1.add(&x()),
        },
        (ExtensionKind::Exp, ExtensionKind::Log) => match rng.gen_range(0..2) {
            0 => t1.mul(&x()),
            _ => t1.mul(&t1),
        },
        (ExtensionKind::Exp, ExtensionKind::Exp) => t1,
    }
}

pub(crate) fn random_tower<R: Rng>(cfg: &GenConfig, rng: &mut R) -> Result<Tower> {
    for _ in 0..100 {
        let k1 = pick_kind(cfg.extension_kind, rng);
        let mut t = Tower::base();
        if t.push(k1, base_argument(k1, rng)).is_err() {
            continue;
        }
        if cfg.tower_height >= 2 {
            let k2 = pick_kind(cfg.extension_kind, rng);
            if t.push(k2, lifted_argument(k2, k1, rng)).is_err() {
                continue;
            }
        }
        return Ok(t);
    }
    Err(Error::Generation("no valid tower after 100 attempts".into()))
}

/// Nonzero rational, usually a small integer.
pub(crate) fn small_rational<R: Rng>(pool: &CoefficientPool, rng: &mut R) -> Rational {
    let max_n = pool.max_numerator.max(1) as i64;
    let max_d = pool.max_denominator.max(1) as i64;
    let n = if rng.gen_bool(0.85) { rng.gen_range(1..=max_n.min(5)) } else { rng.gen_range(1..=max_n) };
    let d = if max_d > 1 && rng.gen_bool(0.15) { rng.gen_range(2..=max_d.min(5)) } else { 1 };
    let q = rat(n, d);
    if rng.gen_bool(0.5) {
        -q
    } else {
        q
    }
}

/// A short random element strictly below the top level of a tower of
/// height `height`.
pub(crate) fn random_coeff<R: Rng>(
    pool: &CoefficientPool,
    height: usize,
    rng: &mut R,
) -> TowerElem {
    let c = |rng: &mut R| TowerElem::rational(small_rational(pool, rng));
    if height >= 2 && rng.gen_bool(0.25) {
        return c(rng).mul(&TowerElem::theta(1));
    }
    let xk = |n: i64| x().powi(n).expect("x is nonzero");
    match weighted(&[10, 8, 3, 1, 1, 1, 1], rng) {
        0 => c(rng),
        1 => c(rng).mul(&xk(*[1, 1, 2, 2, 3, 4, -1, -2, -3].choose(rng).expect("nonempty"))),
        2 => c(rng).mul(&x()).add(&c(rng)),
        3 => c(rng).add(&c(rng).mul(&inv_x())),
        4 => c(rng).mul(&xk(2)).add(&c(rng).mul(&x())),
        5 => c(rng).mul(&xk(2)).add(&c(rng)),
        _ => {
            let d = x().add(&k(rng.gen_range(1..=3)));
            c(rng).mul(&d.try_inv().expect("nonzero"))
        }
    }
}

/// Like [`random_coeff`] but usually a bare constant.
pub(crate) fn short_coeff<R: Rng>(pool: &CoefficientPool, height: usize, rng: &mut R) -> TowerElem {
    if rng.gen_bool(0.7) {
        TowerElem::rational(small_rational(pool, rng))
    } else {
        random_coeff(pool, height, rng)
    }
}

/// Candidate shifts `p` for linear factors `θ + p`: constants, then
/// shifts involving `x` or a lower variable.
fn shift_pool(tower: &Tower) -> (Vec<TowerElem>, Vec<TowerElem>) {
    let exp_top = tower.extension(tower.height()).is_some_and(|e| e.kind == ExtensionKind::Exp);
    let consts = (-4..=4).filter(|&n| n != 0 || !exp_top).map(k).collect();
    let mut other = Vec::new();
    for n in [1, -1, 2] {
        other.push(x().mul(&k(n)));
    }
    for n in [1, -1, 2] {
        other.push(x().add(&k(n)));
    }
    if tower.height() >= 2 {
        let t1 = TowerElem::theta(1);
        for n in [0, 1, -1] {
            other.push(t1.add(&k(n)));
        }
    }
    (consts, other)
}

/// Pops a shift, preferring constants.
fn next_shift<R: Rng>(pools: &mut (Vec<TowerElem>, Vec<TowerElem>), rng: &mut R) -> Option<TowerElem> {
    let constant_first = rng.gen_bool(0.7);
    let (a, b) = if constant_first { (&mut pools.0, &mut pools.1) } else { (&mut pools.1, &mut pools.0) };
    a.pop().or_else(|| b.pop())
}

/// A factor of the random denominator.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Factor {
    /// `θ + p`.
    Linear(Poly<TowerElem>),
    /// `θ² + r²` with `r > 0`.
    SumOfSquares(Rational),
    /// `(θ + p)² + r²`, irreducible over the real tower.
    Quadratic(Poly<TowerElem>),
}

impl Factor {
    pub(crate) fn poly(&self) -> Poly<TowerElem> {
        match self {
            Factor::Linear(p) | Factor::Quadratic(p) => p.clone(),
            Factor::SumOfSquares(r) => Poly::new(vec![
                TowerElem::rational(r.mul(r)),
                TowerElem::zero(),
                TowerElem::one(),
            ]),
        }
    }
}

pub(crate) type Denominator = (Vec<(Factor, u32)>, Poly<TowerElem>);

/// Random monic pairwise-coprime factors with multiplicities, and their
/// product.
///
/// `repeated` forces at least one multiplicity of two or more.
pub(crate) fn random_denominator<R: Rng>(
    cfg: &GenConfig,
    tower: &Tower,
    repeated: bool,
    rng: &mut R,
) -> Result<Denominator> {
    let arctan = cfg.arctan_factors
        && tower.extension(tower.height()).is_some_and(|e| e.kind == ExtensionKind::Log);
    let max_count = cfg.max_factor_count.max(1);
    let count = (1 + weighted(&[16, 3, 1], rng)).min(max_count);
    let mut shifts = shift_pool(tower);
    if count > shifts.0.len() + shifts.1.len() {
        return Err(Error::Generation(format!("factor pool exhausted: {count} factors requested")));
    }
    shifts.0.shuffle(rng);
    shifts.1.shuffle(rng);
    let mut radii: Vec<Rational> = vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2)];
    radii.shuffle(rng);

    let theta_lin = |p: &TowerElem| Poly::new(vec![p.clone(), TowerElem::one()]);
    let mut factors: Vec<(Factor, u32)> = Vec::new();
    let mut degree = 0usize;
    for _ in 0..count {
        let quad = rng.gen_bool(0.2) && degree + 2 <= cfg.max_theta_degree;
        let f = if quad {
            if arctan {
                match radii.pop() {
                    Some(r) => Factor::SumOfSquares(r),
                    None => continue,
                }
            } else {
                let Some(p) = next_shift(&mut shifts, rng) else { continue };
                let r = radii.pop().unwrap_or_else(|| rat(1, 1));
                let lin = theta_lin(&p);
                Factor::Quadratic(lin.mul(&lin).add(&Poly::constant(TowerElem::rational(r.mul(&r)))))
            }
        } else {
            if degree + 1 > cfg.max_theta_degree {
                break;
            }
            let Some(p) = next_shift(&mut shifts, rng) else { break };
            Factor::Linear(theta_lin(&p))
        };
        degree += f.poly().degree().unwrap_or(0);
        factors.push((f, 1));
    }
    if factors.is_empty() {
        return Err(Error::Generation("empty denominator".into()));
    }
    if repeated {
        // squaring a linear factor is preferred: squared quadratics are long
        let linear: Vec<usize> =
            (0..factors.len()).filter(|&i| matches!(factors[i].0, Factor::Linear(_))).collect();
        let i = match linear.choose(rng) {
            Some(&i) if rng.gen_bool(0.8) => i,
            _ => rng.gen_range(0..factors.len()),
        };
        let extra = if rng.gen_bool(0.1) { 2 } else { 1 };
        factors[i].1 += extra;
    }
    let b = factors.iter().fold(Poly::one(), |acc, (f, m)| acc.mul(&f.poly().pow(*m)));
    Ok((factors, b))
}

//! Images of field elements in `F_p`, used to prove coprimality cheaply.
//!
//! Substituting fixed values for `x` and every tower variable is a ring
//! homomorphism because the variables are algebraically independent. If
//! both leading coefficients survive and the images are coprime, the
//! resultant is nonzero and so are the originals. Any other outcome is
//! inconclusive and the caller falls back to exact Euclid.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::field::{Field, Rational};
use super::poly::Poly;

/// `2^61 - 1`.
pub const P: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn big(n: &BigInt) -> u64 {
    let r = n % BigInt::from(P);
    let r = if r < BigInt::from(0) { r + BigInt::from(P) } else { r };
    r.to_u64().expect("reduced residue")
}

pub fn rational(q: &Rational) -> Option<u64> {
    let d = big(q.denom());
    (d != 0).then(|| mul(big(q.numer()), inv(d)))
}

/// Evaluation point of the variable of `level`; level 0 is `x`.
pub fn point(level: usize) -> u64 {
    const POINTS: [u64; 8] = [
        0x1d8e_4e27_c47d_124f,
        0x0a3b_8f1c_55e2_9d07,
        0x1234_5678_9abc_def1,
        0x0f0e_0d0c_0b0a_0908,
        0x1b87_3593_cc9e_2d51,
        0x0d6e_8feb_8666_5a9b,
        0x165a_c2fd_4f6b_3a29,
        0x09e3_779b_97f4_a7c1,
    ];
    POINTS[level % POINTS.len()] % P
}

/// Horner evaluation of images.
pub fn horner(coeffs: &[u64], at: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| add(mul(acc, at), c))
}

fn image<F: Field>(p: &Poly<F>) -> Option<Vec<u64>> {
    p.coeffs().iter().map(Field::image_mod_p).collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let il = inv(b[db]);
    while r.len() > db {
        let top = *r.last().expect("nonempty");
        if top != 0 {
            let q = mul(top, il);
            let off = r.len() - 1 - db;
            for (j, &c) in b.iter().enumerate() {
                r[off + j] = sub(r[off + j], mul(q, c));
            }
        }
        r.pop();
    }
    trim(&mut r);
    r
}

/// `true` only when `a` and `b` are certainly coprime.
pub fn certainly_coprime<F: Field>(a: &Poly<F>, b: &Poly<F>) -> bool {
    let (Some(mut x), Some(mut y)) = (image(a), image(b)) else {
        return false;
    };
    if x.len() != a.coeffs().len() || y.len() != b.coeffs().len() {
        return false;
    }
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return false;
    }
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x.len() == 1
}

//! Resultants.
//!
//! Convention: `res(A, B) = (-1)^{mn} b_n^m a_m^n ∏(β_j - α_i) = a_m^n ∏ B(α_i)`,
//! which is also the determinant of the Sylvester matrix with the rows of
//! `A` on top.

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Resultant via the Euclidean remainder sequence.
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<F> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial("resultant of a zero polynomial"));
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = F::one();
    loop {
        let m = a.degree().expect("nonzero");
        let n = b.degree().expect("nonzero");
        if n == 0 {
            return Ok(acc.mul(&b.coeff(0).pow(m as u32)));
        }
        if m == 0 {
            return Ok(acc.mul(&a.coeff(0).pow(n as u32)));
        }
        // res(A, B) = (-1)^{mn} res(B, A) = (-1)^{mn} lc(B)^{m - deg R} res(B, R)
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(F::zero());
        }
        let dr = r.degree().expect("nonzero");
        if (m * n) % 2 == 1 {
            acc = acc.neg();
        }
        acc = acc.mul(&b.lc().expect("nonzero").pow((m - dr) as u32));
        a = b;
        b = r;
    }
}

/// Resultant as the determinant of the Sylvester matrix, by Gaussian
/// elimination. Kept as an independent reference for [`resultant`].
pub fn sylvester_resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<F> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial("resultant of a zero polynomial"));
    }
    let m = a.degree().expect("nonzero");
    let n = b.degree().expect("nonzero");
    if m == 0 && n == 0 {
        return Ok(F::one());
    }
    Ok(determinant(sylvester_matrix(a, b, m, n)))
}

fn sylvester_matrix<F: Field>(a: &Poly<F>, b: &Poly<F>, m: usize, n: usize) -> Vec<Vec<F>> {
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![F::zero(); size];
        for k in 0..=m {
            row[i + k] = a.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![F::zero(); size];
        for k in 0..=n {
            row[i + k] = b.coeff(n - k);
        }
        rows.push(row);
    }
    rows
}

pub(crate) fn determinant<F: Field>(mut mat: Vec<Vec<F>>) -> F {
    let size = mat.len();
    let mut det = F::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return F::zero();
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = det.neg();
        }
        let p = mat[col][col].clone();
        det = det.mul(&p);
        let inv = p.inv();
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].mul(&inv);
            let (top, bottom) = mat.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = dst.sub(&src.mul(&factor));
            }
        }
    }
    det
}

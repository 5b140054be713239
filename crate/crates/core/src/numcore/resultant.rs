use num_traits::Zero;
use thiserror::Error;

use super::poly::{Poly, PolyQ};
use super::ring::{Field, Rat, Ring};

#[derive(Debug, Error, PartialEq)]
pub enum DiscriminantError {
    #[error("discriminant supported for degree 2, 3 or 4; got {0:?}")]
    Degree(Option<usize>),
    #[error("polynomial is not monic")]
    NotMonic,
}

/// Determinant over a commutative ring, division free (Samuelson–Berkowitz).
pub fn det<R: Ring>(a: &[Vec<R>]) -> R {
    let n = a.len();
    // characteristic polynomial of the leading k×k block, highest degree first
    let mut p: Vec<R> = vec![R::one()];
    for k in 0..n {
        let mut col = vec![R::one(), -a[k][k].clone()];
        let mut v: Vec<R> = (0..k).map(|i| a[i][k].clone()).collect();
        for _ in 0..k {
            let rv = (0..k).fold(R::zero(), |s, j| s + a[k][j].clone() * v[j].clone());
            col.push(-rv);
            v = (0..k)
                .map(|i| (0..k).fold(R::zero(), |s, j| s + a[i][j].clone() * v[j].clone()))
                .collect();
        }
        let next: Vec<R> = (0..k + 2)
            .map(|i| {
                (0..=k.min(i))
                    .filter(|&j| j < p.len())
                    .fold(R::zero(), |s, j| s + col[i - j].clone() * p[j].clone())
            })
            .collect();
        p = next;
    }
    if n % 2 == 1 {
        -p[n].clone()
    } else {
        p[n].clone()
    }
}

pub fn sylvester<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<Vec<R>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![R::zero(); size];
        for k in 0..=m {
            row[i + k] = f.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![R::zero(); size];
        for k in 0..=n {
            row[i + k] = g.coeff(n - k);
        }
        rows.push(row);
    }
    rows
}

pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> R {
    if f.is_zero() || g.is_zero() {
        return R::zero();
    }
    if f.degree() == Some(0) && g.degree() == Some(0) {
        return R::one();
    }
    det(&sylvester(f, g))
}

fn disc_sign(m: usize) -> bool {
    (m * (m.saturating_sub(1)) / 2) % 2 == 1
}

/// Discriminant of a monic polynomial over any commutative ring.
pub fn discriminant_monic<R: Ring>(f: &Poly<R>) -> Result<R, DiscriminantError> {
    if !f.is_monic() {
        return Err(DiscriminantError::NotMonic);
    }
    let m = f.degree().unwrap();
    let r = resultant(f, &f.derivative());
    Ok(if disc_sign(m) { -r } else { r })
}

/// Discriminant over a field, any degree ≥ 1.
pub fn discriminant<F: Field>(f: &Poly<F>) -> F {
    let m = f.degree().unwrap_or(0);
    let r = resultant(f, &f.derivative());
    let r = r.div(&f.leading()).expect("nonzero leading coefficient");
    if disc_sign(m) {
        -r
    } else {
        r
    }
}

/// Discriminant of a rational polynomial of degree 2, 3 or 4.
pub fn poly_discriminant(p: &PolyQ) -> Result<Rat, DiscriminantError> {
    match p.degree() {
        Some(2..=4) => Ok(discriminant(p)),
        d => Err(DiscriminantError::Degree(d)),
    }
}

use num_traits::{One, Zero};

use crate::numcore::poly::{BiPolyQ, Poly, PolyQ};
use crate::numcore::resultant::resultant;
use crate::numcore::ring::{rat, Rat};

/// Plane quartic G(x, y) = 0 obtained from ξ₁ + ξ₂ + ξ₃ = t², Σξᵢξⱼ = A − 2tu, ξ₁ξ₂ξ₃ = u² − B
/// by eliminating ξ₃ and u. Outer variable y = ξ₂, inner x = ξ₁.
#[derive(Clone, Debug, PartialEq)]
pub struct Genus3Curve {
    pub a: Rat,
    pub b: Rat,
    pub t0: Rat,
    pub quartic: BiPolyQ,
    pub smooth: bool,
}

fn var_x() -> BiPolyQ {
    Poly::constant(PolyQ::x())
}

fn var_y() -> BiPolyQ {
    Poly::new(vec![PolyQ::zero(), PolyQ::one()])
}

fn c(r: Rat) -> BiPolyQ {
    Poly::constant(PolyQ::constant(r))
}

/// (x² + xy + y² − t²(x+y) + A)² − 4t²xy(t² − x − y) − 4Bt².
pub fn genus3_quartic(a: &Rat, b: &Rat, t0: &Rat) -> BiPolyQ {
    let (x, y) = (var_x(), var_y());
    let t2 = t0 * t0;
    let s = x.clone() + y.clone();
    let p = x.clone() * y.clone();
    let e = x.clone() * x.clone() + p.clone() + y.clone() * y.clone() - c(t2.clone()) * s.clone() + c(a.clone());
    e.clone() * e - c(rat(4) * &t2) * p * (c(t2.clone()) - s) - c(rat(4) * b * &t2)
}

pub fn genus3_curve(a: &Rat, b: &Rat, t0: &Rat) -> Genus3Curve {
    let quartic = genus3_quartic(a, b, t0);
    let smooth = is_smooth_quartic(&quartic);
    Genus3Curve { a: a.clone(), b: b.clone(), t0: t0.clone(), quartic, smooth }
}

fn dx(g: &BiPolyQ) -> BiPolyQ {
    g.map(|c| c.derivative())
}

fn dy(g: &BiPolyQ) -> BiPolyQ {
    g.derivative()
}

fn reduce(p: &BiPolyQ, h: &PolyQ) -> BiPolyQ {
    p.map(|c| c.div_rem(h).1)
}

fn trim_top(p: &BiPolyQ) -> BiPolyQ {
    let mut v = p.coeffs().to_vec();
    v.pop();
    Poly::new(v)
}

/// Splits h into parts over each of which gcd_y(a, b) is computed with unit leading coefficient.
fn gcd_split(h: &PolyQ, a: &BiPolyQ, b: &BiPolyQ) -> Vec<(PolyQ, BiPolyQ)> {
    if h.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let a = reduce(a, h);
    let mut b = reduce(b, h);
    loop {
        if b.is_zero() {
            return vec![(h.clone(), a)];
        }
        let lc = b.leading();
        let d = lc.gcd(h);
        if d.degree() == Some(0) {
            break;
        }
        if d.degree() == h.degree() {
            b = trim_top(&b);
            continue;
        }
        let (rest, _) = h.div_rem(&d);
        let mut out = gcd_split(&d, &a, &b);
        out.extend(gcd_split(&rest, &a, &b));
        return out;
    }
    let (_, s, _) = b.leading().xgcd(h);
    let inv = s.div_rem(h).1;
    let db = b.degree().unwrap();
    let mut r = a;
    while let Some(dr) = r.degree() {
        if dr < db || r.is_zero() {
            break;
        }
        let q = (r.leading() * inv.clone()).div_rem(h).1;
        let shift = Poly::monomial(q, dr - db);
        r = reduce(&(r - shift * b.clone()), h);
        if r.degree() == Some(dr) {
            r = trim_top(&r);
        }
    }
    gcd_split(h, &b, &r)
}

fn squarefree_part(h: &PolyQ) -> PolyQ {
    let g = h.gcd(&h.derivative());
    h.div_rem(&g).0.monic()
}

/// True if G, ∂G/∂x, ∂G/∂y share an affine zero over Q̄ (G monic in y).
fn affine_singular(g: &BiPolyQ) -> bool {
    let (gx, gy) = (dx(g), dy(g));
    let r1 = resultant(g, &gx);
    let r2 = resultant(g, &gy);
    let h = match (r1.is_zero(), r2.is_zero()) {
        (true, true) => return true,
        (true, false) => r2,
        (false, true) => r1,
        (false, false) => r1.gcd(&r2),
    };
    if h.degree().unwrap_or(0) == 0 {
        return false;
    }
    let h = squarefree_part(&h);
    gcd_split(&h, g, &gx)
        .into_iter()
        .filter(|(_, gi)| gi.degree().unwrap_or(0) >= 1)
        .any(|(hi, gi)| gcd_split(&hi, &gi, &gy).into_iter().any(|(_, gj)| gj.degree().unwrap_or(0) >= 1))
}

/// Homogeneous part of total degree k as a polynomial in X with Y = 1 (coefficient list by X-degree).
fn form_at_y1(g: &BiPolyQ, k: usize) -> PolyQ {
    let mut v = vec![Rat::zero(); k + 1];
    for (j, cy) in g.coeffs().iter().enumerate() {
        if j <= k {
            v[k - j] = cy.coeff(k - j);
        }
    }
    PolyQ::new(v)
}

/// Singular points on the line at infinity of the projective closure of a quartic.
fn infinity_singular(g: &BiPolyQ) -> bool {
    let g4 = form_at_y1(g, 4);
    let g3 = form_at_y1(g, 3);
    if g4.is_zero() {
        return true;
    }
    // ∂/∂Y of the form at Y = 1 is 4·G4 − X·∂G4/∂X (Euler)
    let g4x = g4.derivative();
    let g4y = g4.scale(&rat(4)) - PolyQ::x() * g4x.clone();
    let common = [g4x, g4y, g3.clone()].iter().fold(g4.clone(), |acc, p| if p.is_zero() { acc } else { acc.gcd(p) });
    if common.degree().unwrap_or(0) >= 1 {
        return true;
    }
    // the point (1 : 0 : 0): coefficients of X⁴, X³Y and X³ must all vanish
    let top = |p: &PolyQ, k: usize| p.coeff(k);
    top(&g4, 4).is_zero() && top(&g4, 3).is_zero() && top(&g3, 3).is_zero()
}

pub fn is_smooth_quartic(g: &BiPolyQ) -> bool {
    !affine_singular(g) && !infinity_singular(g)
}

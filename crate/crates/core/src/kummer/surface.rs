use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::elliptic::weierstrass::Weierstrass;
use crate::numcore::poly::{bi_at_inner, bi_eval, BiPolyQ, Poly, PolyQ};
use crate::numcore::quadratic::QSqrtM3;
use crate::numcore::resultant::discriminant_monic;
use crate::numcore::ring::{rat, rat_sqrt, Rat};
use crate::numcore::roots::rational_roots;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KummerError {
    #[error("singular curve")]
    Singular,
    #[error("δ² ≠ Δ(u, t0) at u = {0}")]
    Inconsistent(String),
    #[error("parameter λ = {0} is excluded")]
    Excluded(String),
    #[error("curve is not in short Weierstrass form")]
    NotShort,
}

/// δ² = Δ(u,t): discriminant in x of the cubic cut out by the line y = tx + u.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceModel {
    pub a: [Rat; 5],
    /// outer variable u, inner variable t
    pub delta: BiPolyQ,
}

fn t_poly(c: &[Rat]) -> PolyQ {
    PolyQ::new(c.to_vec())
}

/// x³ + (a2 − t² − a1t)x² + (a4 − 2tu − a1u − a3t)x + (a6 − u² − a3u) with coefficients in Q[t][u].
pub fn line_cubic(a: &[Rat; 5]) -> Poly<BiPolyQ> {
    let [a1, a2, a3, a4, a6] = a.clone();
    let c2: BiPolyQ = Poly::new(vec![t_poly(&[a2, -a1.clone(), -rat(1)])]);
    let c1: BiPolyQ = Poly::new(vec![t_poly(&[a4, -a3.clone()]), t_poly(&[-a1, rat(-2)])]);
    let c0: BiPolyQ = Poly::new(vec![t_poly(&[a6]), t_poly(&[-a3]), t_poly(&[rat(-1)])]);
    Poly::new(vec![c0, c1, c2, BiPolyQ::one()])
}

pub fn delta_poly(a: &[Rat; 5]) -> Result<SurfaceModel, KummerError> {
    let w = Weierstrass::new(a.clone());
    if w.is_singular() {
        return Err(KummerError::Singular);
    }
    let delta = discriminant_monic(&line_cubic(a)).expect("monic cubic");
    Ok(SurfaceModel { a: a.clone(), delta })
}

/// Closed-form quartic for y² = x³ + Ax + B, as commonly stated.
pub fn printed_quartic(a: &Rat, b: &Rat) -> BiPolyQ {
    let n = |k: i64| rat(k);
    let u0 = t_poly(&[
        -(n(4) * a * a * a + n(27) * b * b),
        Rat::zero(),
        -(n(18) * a * b),
        Rat::zero(),
        a * a,
        Rat::zero(),
        n(4) * b,
    ]);
    // −4t(At⁴ − 9t² − 6A²)
    let u1 = t_poly(&[Rat::zero(), n(24) * a * a, Rat::zero(), n(36), Rat::zero(), -(n(4) * a)]);
    let u2 = t_poly(&[n(54) * b, Rat::zero(), -(n(30) * a)]);
    let u3 = t_poly(&[Rat::zero(), Rat::zero(), Rat::zero(), n(-4)]);
    let u4 = t_poly(&[n(-27)]);
    Poly::new(vec![u0, u1, u2, u3, u4])
}

impl SurfaceModel {
    pub fn fiber(&self, t0: &Rat) -> PolyQ {
        bi_at_inner(&self.delta, t0)
    }

    pub fn eval(&self, u: &Rat, t: &Rat) -> Rat {
        bi_eval(&self.delta, u, t)
    }

    pub fn cubic_at(&self, u: &Rat, t: &Rat) -> PolyQ {
        line_cubic(&self.a).map(|c| bi_eval(c, u, t))
    }
}

/// J_t : Y² = X³ + a4(t)X + a6(t).
#[derive(Clone, Debug, PartialEq)]
pub struct Jacobian {
    pub a4: PolyQ,
    pub a6: PolyQ,
}

pub fn jacobian_curve(a: &Rat, b: &Rat) -> Result<Jacobian, KummerError> {
    let n = |k: i64| rat(k);
    if (n(4) * a * a * a + n(27) * b * b).is_zero() {
        return Err(KummerError::Singular);
    }
    let z = Rat::zero;
    let a4 = t_poly(&[
        -(n(27) * (a * a * a + n(9) * b * b)),
        z(),
        -(n(54) * a * b),
        z(),
        -(n(18) * a * a),
        z(),
        n(18) * b,
        z(),
        a.clone(),
    ]);
    let a6 = t_poly(&[
        -(n(243) * b * (a * a * a + n(6) * b * b)),
        z(),
        -(n(54) * a * (n(2) * a * a * a + n(9) * b * b)),
        z(),
        n(135) * a * a * b,
        z(),
        -(n(270) * b * b),
        z(),
        -(n(45) * a * b),
        z(),
        -(n(4) * a * a),
        z(),
        b.clone(),
    ]);
    Ok(Jacobian { a4, a6 })
}

impl Jacobian {
    pub fn specialize(&self, t: &Rat) -> Weierstrass<Rat> {
        let z = Rat::zero;
        Weierstrass::new([z(), z(), z(), self.a4.eval(t), self.a6.eval(t)])
    }

    /// −16(4a4³ + 27a6²) in Q[t].
    pub fn discriminant(&self) -> PolyQ {
        let a4c = self.a4.clone() * self.a4.clone() * self.a4.clone();
        let a6s = self.a6.clone() * self.a6.clone();
        (a4c.scale(&rat(4)) + a6s.scale(&rat(27))).scale(&rat(-16))
    }

    pub fn over_sqrt_m3(&self) -> (Poly<QSqrtM3>, Poly<QSqrtM3>) {
        let lift = |p: &PolyQ| p.map(|c| QSqrtM3::from_rat(c.clone()));
        (lift(&self.a4), lift(&self.a6))
    }

    /// Y² − X³ − a4X − a6 for polynomial coordinates over Q(√−3).
    pub fn residual(&self, x: &Poly<QSqrtM3>, y: &Poly<QSqrtM3>) -> Poly<QSqrtM3> {
        let (a4, a6) = self.over_sqrt_m3();
        y.clone() * y.clone() - x.clone() * x.clone() * x.clone() - a4 * x.clone() - a6
    }
}

/// γ₁ with coordinates in Q(√−3)[t].
pub fn gamma1(a: &Rat, b: &Rat) -> (Poly<QSqrtM3>, Poly<QSqrtM3>) {
    let n = |k: i64| rat(k);
    let q = |c: Rat| QSqrtM3::from_rat(c);
    let z = || QSqrtM3::zero();
    let x = Poly::new(vec![q(-(n(9) * b)), z(), q(n(5) * a), z(), z(), z(), q(Rat::new((-1).into(), 27.into()))]);
    let s = |c: Rat| QSqrtM3::new(Rat::zero(), c / n(243));
    let y = Poly::new(vec![
        z(),
        s(-(n(2187) * a * a)),
        z(),
        s(-(n(2916) * b)),
        z(),
        s(n(162) * a),
        z(),
        z(),
        z(),
        s(n(1)),
    ]);
    (x, y)
}

pub fn bad_locus(a: &Rat, b: &Rat) -> PolyQ {
    let z = Rat::zero;
    t_poly(&[-(rat(27) * a * a), z(), rat(108) * b, z(), rat(18) * a, z(), z(), z(), rat(1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubicClass {
    SplitOverQ,
    CyclicCubic,
    Degenerate,
}

impl CubicClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CubicClass::SplitOverQ => "split-over-Q",
            CubicClass::CyclicCubic => "cyclic-cubic",
            CubicClass::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberPoint {
    pub t0: Rat,
    pub u: Rat,
    pub delta: Rat,
    pub cubic: PolyQ,
    pub class: CubicClass,
    /// fiber singular (t0 = 0 or Δ(·,t0) not squarefree)
    pub degenerate_fiber: bool,
}

/// The cubic of the line y = t0·x + u and its type; δ² must equal Δ(u,t0).
pub fn extract_cubic(surface: &SurfaceModel, t0: &Rat, u: &Rat, delta: &Rat) -> Result<(PolyQ, CubicClass), KummerError> {
    if &(delta * delta) != &surface.eval(u, t0) {
        return Err(KummerError::Inconsistent(crate::numcore::ring::fmt_rat(u)));
    }
    let cubic = surface.cubic_at(u, t0);
    let class = if delta.is_zero() {
        CubicClass::Degenerate
    } else {
        match rational_roots(&cubic).len() {
            0 => CubicClass::CyclicCubic,
            3 => CubicClass::SplitOverQ,
            _ => CubicClass::Degenerate,
        }
    };
    Ok((cubic, class))
}

fn is_degenerate_fiber(surface: &SurfaceModel, t0: &Rat) -> bool {
    let q = surface.fiber(t0);
    t0.is_zero() || q.degree() != Some(4) || !q.is_squarefree()
}

/// Reduced fractions a/b with max(|a|,|b|) ≤ h, ordered by height then value.
pub fn rationals_by_height(h: u64) -> Vec<Rat> {
    use num_integer::Integer;
    let mut out = vec![Rat::zero()];
    for k in 1..=h as i64 {
        let mut level = Vec::new();
        for other in 0..=k {
            for (a, b) in [(k, other), (other, k)] {
                if a == 0 || b == 0 || a.gcd(&b) != 1 {
                    continue;
                }
                level.push(Rat::new(a.into(), b.into()));
                level.push(Rat::new((-a).into(), b.into()));
            }
        }
        level.sort();
        level.dedup();
        out.extend(level);
    }
    out
}

/// All u of height ≤ h with Δ(u,t0) a rational square, each with both signs of δ.
pub fn fiber_search(surface: &SurfaceModel, t0: &Rat, height_bound: u64) -> Vec<FiberPoint> {
    let degenerate = is_degenerate_fiber(surface, t0);
    let q = surface.fiber(t0);
    let mut out = Vec::new();
    for u in rationals_by_height(height_bound) {
        let v = q.eval(&u);
        if v.is_negative() {
            continue;
        }
        let Some(d) = rat_sqrt(&v) else { continue };
        let signs = if d.is_zero() { vec![d] } else { vec![d.clone(), -d] };
        for delta in signs {
            let (cubic, class) = extract_cubic(surface, t0, &u, &delta).expect("square found by search");
            out.push(FiberPoint { t0: t0.clone(), u: u.clone(), delta, cubic, class, degenerate_fiber: degenerate });
        }
    }
    out
}

/// Monic integral rescaling x ↦ x/d of a monic rational cubic, d the lcm of the denominators.
pub fn integral_cubic(p: &PolyQ) -> PolyQ {
    use num_integer::Integer;
    let d = p.coeffs().iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let d = Rat::from_integer(d);
    PolyQ::new(vec![p.coeff(0) * &d * &d * &d, p.coeff(1) * &d * &d, p.coeff(2) * &d, Rat::one()])
}

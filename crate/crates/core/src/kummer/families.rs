use num_traits::{One, Zero};

use super::surface::{delta_poly, fiber_search, FiberPoint, KummerError, SurfaceModel};
use crate::elliptic::weierstrass::{is_nontorsion, Point, TorsionField, Weierstrass};
use crate::elliptic::PointQ;
use crate::numcore::ring::{fmt_rat, pow, rat, ratio, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    SixTorsion,
    FourTwo,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Option<FamilyKind> {
        match s {
            "six-torsion" | "six" | "6" => Some(FamilyKind::SixTorsion),
            "four-two" | "four-two-torsion" | "4x2" => Some(FamilyKind::FourTwo),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::SixTorsion => "six-torsion",
            FamilyKind::FourTwo => "four-two",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyFiber {
    pub kind: FamilyKind,
    pub lambda: Rat,
    /// the fiber C_λ (resp. C₁) in Weierstrass form
    pub curve: Weierstrass<Rat>,
    pub point: PointQ,
    pub on_curve: bool,
    pub nontorsion: bool,
}

/// λ = −1/2 in the six-torsion family: C_λ is a nodal cubic, the marked point is (3/2, 0).
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialFiber {
    pub curve: Weierstrass<Rat>,
    pub point: PointQ,
    pub on_curve: bool,
    pub nonsingular_point: bool,
    pub not_two_torsion: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyOutcome {
    Fiber(FamilyFiber),
    Special(SpecialFiber),
    Excluded(Rat),
}

/// y² + (1−λ)xy − λ(λ+1)y = x³ − λ(λ+1)x², with (0,0) of order 6.
pub fn six_torsion_curve(l: &Rat) -> Weierstrass<Rat> {
    let ll1 = l * (l + rat(1));
    Weierstrass::new([rat(1) - l, -ll1.clone(), -ll1, Rat::zero(), Rat::zero()])
}

/// y² = x(x+1)(x+λ²).
pub fn four_two_curve(l: &Rat) -> Weierstrass<Rat> {
    let l2 = l * l;
    Weierstrass::new([Rat::zero(), rat(1) + &l2, Rat::zero(), l2, Rat::zero()])
}

pub fn six_torsion_condition(l: &Rat) -> Rat {
    let one = rat(1);
    let quartic = pow(l, 4) + rat(3) * pow(l, 3) + rat(4) * l * l + &one;
    l * (&one + rat(9) * l) * (rat(2) * l + &one) * (l + &one) * quartic
}

/// C_λ with its marked point (2λ(λ+1)(2λ²−4−λ), 0).
pub fn six_torsion_fiber(l: &Rat) -> (Weierstrass<Rat>, PointQ) {
    let one = rat(1);
    let lp1 = l + &one;
    let m = rat(2) * l * l - rat(4) - l;
    let a1 = rat(8) * l + rat(2) * l * l + rat(2);
    let a3 = -(rat(4) * l * (rat(7) * l + &one) * (l - rat(2)) * &lp1 * &lp1);
    let a2 = -(rat(2) * l * &lp1 * &m);
    let a4 = rat(108) * pow(l, 4) * &lp1 * &lp1;
    let a6 = -(rat(216) * pow(l, 5) * &m * pow(&lp1, 3));
    let p = Point::Affine(rat(2) * l * &lp1 * &m, Rat::zero());
    (Weierstrass::new([a1, a2, a3, a4, a6]), p)
}

/// C₁ with its marked point (3(λ⁴+16λ²+3), 27(7λ⁴+10λ²−1)).
pub fn four_two_fiber(l: &Rat) -> (Weierstrass<Rat>, PointQ) {
    let l2 = l * l;
    let l4 = &l2 * &l2;
    let l6 = &l4 * &l2;
    let l8 = &l4 * &l4;
    let l10 = &l8 * &l2;
    let a4 = rat(27) * &l2 * (rat(7) * &l4 - &l6 + rat(5) * &l2 - rat(27));
    let a6 = rat(27)
        * &l2
        * (rat(2) * &l10 - rat(21) * &l8 + rat(204) * &l6 - rat(826) * &l4 + rat(1242) * &l2 - rat(729));
    let x = rat(3) * (&l4 + rat(16) * &l2 + rat(3));
    let y = rat(27) * (rat(7) * &l4 + rat(10) * &l2 - rat(1));
    (Weierstrass::new([Rat::zero(), Rat::zero(), Rat::zero(), a4, a6]), Point::Affine(x, y))
}

fn certify(kind: FamilyKind, l: &Rat, curve: Weierstrass<Rat>, point: PointQ) -> FamilyFiber {
    let on_curve = curve.contains(&point);
    let nontorsion = on_curve && !curve.is_singular() && is_nontorsion(&curve, &point, TorsionField::Rational);
    FamilyFiber { kind, lambda: l.clone(), curve, point, on_curve, nontorsion }
}

pub fn torsion_family(kind: FamilyKind, l: &Rat) -> FamilyOutcome {
    match kind {
        FamilyKind::SixTorsion => {
            if l == &ratio(-1, 2) {
                let (curve, _) = six_torsion_fiber(l);
                return FamilyOutcome::Special(special_point(curve));
            }
            if six_torsion_condition(l).is_zero() {
                return FamilyOutcome::Excluded(l.clone());
            }
            let (curve, p) = six_torsion_fiber(l);
            FamilyOutcome::Fiber(certify(kind, l, curve, p))
        }
        FamilyKind::FourTwo => {
            if l.is_zero() || l == &rat(1) || l == &rat(-1) {
                return FamilyOutcome::Excluded(l.clone());
            }
            let (curve, p) = four_two_fiber(l);
            FamilyOutcome::Fiber(certify(kind, l, curve, p))
        }
    }
}

fn special_point(curve: Weierstrass<Rat>) -> SpecialFiber {
    let point = Point::Affine(ratio(3, 2), Rat::zero());
    let on_curve = curve.contains(&point);
    let (x, y) = (ratio(3, 2), Rat::zero());
    let [a1, a2, a3, a4, _] = [&curve.a1, &curve.a2, &curve.a3, &curve.a4, &curve.a6];
    // partials of y² + a1xy + a3y − x³ − a2x² − a4x − a6
    let fy = rat(2) * &y + a1 * &x + a3;
    let fx = a1 * &y - rat(3) * &x * &x - rat(2) * a2 * &x - a4;
    let nonsingular_point = !(fx.is_zero() && fy.is_zero());
    // on the nonsingular locus the group is Q^×; 2P = O iff the tangent is vertical
    let not_two_torsion = !fy.is_zero();
    SpecialFiber { curve, point, on_curve, nonsingular_point, not_two_torsion }
}

/// Surface model of the family curve and the special fiber carrying the rational points.
pub fn family_surface(kind: FamilyKind, l: &Rat) -> Result<(SurfaceModel, Rat), KummerError> {
    let (w, t0) = match kind {
        FamilyKind::SixTorsion => (six_torsion_curve(l), l.clone()),
        FamilyKind::FourTwo => (four_two_curve(l), Rat::one()),
    };
    let s = delta_poly(&[w.a1, w.a2, w.a3, w.a4, w.a6])?;
    Ok((s, t0))
}

/// The marked rational point on the special fiber.
pub fn marked_fiber_point(kind: FamilyKind, l: &Rat) -> (Rat, Rat) {
    match kind {
        FamilyKind::SixTorsion => (Rat::zero(), pow(l, 4) * (l + rat(1))),
        FamilyKind::FourTwo => (l * l, rat(2) * pow(l, 3) * (l * l - rat(1))),
    }
}

/// Fiber points of bounded height on the special fiber, for export as cubic-field generators.
pub fn family_fiber_points(kind: FamilyKind, l: &Rat, height_bound: u64) -> Result<Vec<FiberPoint>, KummerError> {
    let (s, t0) = family_surface(kind, l)?;
    Ok(fiber_search(&s, &t0, height_bound))
}

pub fn describe(outcome: &FamilyOutcome) -> String {
    match outcome {
        FamilyOutcome::Fiber(f) => format!(
            "{} lambda={} on_curve={} nontorsion={}",
            f.kind.as_str(),
            fmt_rat(&f.lambda),
            f.on_curve,
            f.nontorsion
        ),
        FamilyOutcome::Special(s) => format!(
            "six-torsion lambda=-1/2 nodal point=(3/2,0) on_curve={} nonsingular={} not_two_torsion={}",
            s.on_curve, s.nonsingular_point, s.not_two_torsion
        ),
        FamilyOutcome::Excluded(l) => format!("lambda={} excluded", fmt_rat(l)),
    }
}

use proptest::prelude::*;
use shocklab::characteristics::{
    blowup_time, boundary_x, classify, foot_classical, foot_weak, horizon_arrival_time,
    outgoing_char, shock_arrival_time, shock_feet, singular_boundary_point, y_minus_atan,
    BoundaryCurve, RegionTag,
};
use shocklab::{NumericPolicy, Point};
use std::f64::consts::FRAC_PI_2;

fn pol() -> NumericPolicy {
    NumericPolicy::default()
}

fn pt(t: f64, x: f64) -> Point {
    Point::new(t, x).unwrap()
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    for _ in 0..2000 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if (f(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[test]
fn weak_feet_match_bisection() {
    // Left of the shock the foot sits on the branch x0 <= -sqrt(t - 1).
    let g = |t: f64, x: f64| move |y: f64| y + t * (2.0 - y.atan()) - x;
    let left = bisect(g(2.0, 3.0), 3.0 - 2.0 * (2.0 + FRAC_PI_2), -1.0);
    let right = bisect(g(2.0, 5.0), 1.0, 5.0 - 2.0 * (2.0 - FRAC_PI_2));
    assert!((foot_weak(pt(2.0, 3.0), &pol()).unwrap() - left).abs() < 1e-12);
    assert!((foot_weak(pt(2.0, 5.0), &pol()).unwrap() - right).abs() < 1e-12);
    // Mirror symmetry about the shock at t = 2.
    assert!((left + right).abs() < 1e-12);
}

#[test]
fn crease_foot_at_t_one() {
    // On t = 1 the position map is y - arctan y + 2.
    let want = bisect(|y| y - y.atan() - 0.1, 0.0, 2.0);
    let got = foot_classical(pt(1.0, 2.1), &pol()).unwrap();
    assert!((got - want).abs() < 1e-12, "{got} vs {want}");
}

#[test]
fn shock_feet_near_onset() {
    // x0^2 = 3 (t - 1) to leading order.
    for e in [1e-4, 1e-6, 1e-8] {
        let (l, r) = shock_feet(1.0 + e, &pol()).unwrap();
        assert_eq!(l, -r);
        let lead = (3.0 * e).sqrt();
        assert!((r / lead - 1.0).abs() < 2.0 * e.sqrt() + 1e-6, "t=1+{e}: {r} vs {lead}");
    }
    assert!(shock_feet(1.0, &pol()).unwrap_err().is_domain());
}

#[test]
fn y_minus_atan_is_continuous_at_switch() {
    for y in [0.099_999_999, 0.1, -0.099_999_999] {
        let direct: f64 = y - f64::atan(y);
        assert!((y_minus_atan(y) - direct).abs() < 1e-15);
    }
    let y: f64 = 1e-6;
    assert!((y_minus_atan(y) / (y * y * y / 3.0) - 1.0).abs() < 1e-11);
}

#[test]
fn curves_meet_at_crease() {
    let s = singular_boundary_point(0.0);
    assert_eq!((s.t, s.x), (1.0, 2.0));
    for c in [BoundaryCurve::SingularBoundary, BoundaryCurve::CauchyHorizon, BoundaryCurve::Shock] {
        assert_eq!(boundary_x(c, 1.0).unwrap(), 2.0);
    }
    assert!(boundary_x(BoundaryCurve::Shock, 0.5).unwrap_err().is_domain());
    assert_eq!(classify(pt(1.0, 2.0), &pol()), RegionTag::OnCrease);
}

#[test]
fn region_examples() {
    let p = pol();
    assert_eq!(classify(pt(0.0, 3.0), &p), RegionTag::InitialSlice);
    assert_eq!(classify(pt(0.5, 1.0), &p), RegionTag::OmegaA);
    assert_eq!(classify(pt(2.0, 3.5), &p), RegionTag::Wedge);
    assert_eq!(classify(pt(2.0, 2.5), &p), RegionTag::WeakOnly);
    assert_eq!(classify(pt(2.0, 4.0), &p), RegionTag::OnShock);
    assert_eq!(classify(pt(2.0, 0.0), &p), RegionTag::OnCauchyHorizon);
    let b = singular_boundary_point(1.0);
    assert_eq!(classify(b, &p), RegionTag::OnSingularBoundary);
    assert!(foot_classical(pt(2.0, 2.5), &p).is_err());
}

proptest! {
    #[test]
    fn weak_foot_round_trip(t in 0.01f64..8.0, x in -12.0f64..20.0) {
        prop_assume!(t <= 1.0 || (x - 2.0 * t).abs() > 1e-6);
        let p = pol();
        let y = foot_weak(pt(t, x), &p).unwrap();
        let back = outgoing_char(y, t).x;
        prop_assert!((back - x).abs() <= 1e-9 * (1.0 + x.abs()));
        if t > 1.0 {
            let s = (t - 1.0).sqrt();
            // Each side is fed from its own monotone branch.
            if x < 2.0 * t {
                prop_assert!(y <= -s + 1e-12);
            } else {
                prop_assert!(y >= s - 1e-12);
            }
        }
    }

    #[test]
    fn classification_matches_inequalities(t in 1e-3f64..6.0, x in -10.0f64..16.0) {
        let p = pol();
        let tag = classify(pt(t, x), &p);
        let xb = if t > 1.0 { singular_boundary_point((t - 1.0).sqrt()).x } else { f64::NAN };
        let near = |a: f64| (x - a).abs() < 1e-6;
        prop_assume!(!(t > 1.0 && (near(2.0 * t) || near(xb) || near(4.0 - 2.0 * t))));
        prop_assume!((t - 1.0).abs() > 1e-6);
        let want = if t > 1.0 && x > 4.0 - 2.0 * t && x < 2.0 * t {
            if x > xb { RegionTag::Wedge } else { RegionTag::WeakOnly }
        } else {
            RegionTag::OmegaA
        };
        prop_assert_eq!(tag, want);
    }

    #[test]
    fn curves_are_ordered(t in 1.0001f64..50.0) {
        let c = boundary_x(BoundaryCurve::CauchyHorizon, t).unwrap();
        let b = boundary_x(BoundaryCurve::SingularBoundary, t).unwrap();
        let k = boundary_x(BoundaryCurve::Shock, t).unwrap();
        prop_assert!(c < b && b < k);
    }

    #[test]
    fn shock_arrives_before_blowup(x0 in 1e-3f64..50.0) {
        prop_assert!(shock_arrival_time(x0).unwrap() < blowup_time(x0).unwrap());
        // Symmetric initial data: the mirrored foot arrives at the same time.
        prop_assert_eq!(shock_arrival_time(-x0).unwrap(), shock_arrival_time(x0).unwrap());
    }

    #[test]
    fn horizon_arrival_lands_on_horizon(x0 in -40.0f64..0.0) {
        let t = horizon_arrival_time(x0).unwrap();
        let q = outgoing_char(x0, t);
        prop_assert!((q.x - (4.0 - 2.0 * t)).abs() < 1e-12 * (1.0 + x0.abs()));
    }

    #[test]
    fn shock_feet_solve_fixed_point(t in 1.0001f64..200.0) {
        let (_, r) = shock_feet(t, &pol()).unwrap();
        prop_assert!((r - t * r.atan()).abs() <= 1e-12 * r.max(1.0) * t);
        prop_assert!(r >= (t - 1.0).sqrt());
    }
}

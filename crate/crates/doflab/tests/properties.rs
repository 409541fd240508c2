//! Randomized properties: geometry against a brute-force oracle, region
//! invariants across random configurations, and exact-arithmetic roundtrips.

use std::collections::BTreeSet;

use doflab::{
    classify, enumerate_vertices, format_rat, parse_rat, plan_p0_p1, plan_p2, rat, rat_int,
    region_delayed_csit, region_fb_dcsit, region_for, region_perfect_csit, time_share,
    AntennaConfig, Family, GeometryError, HalfPlane, Point, RegimeTag,
};
use proptest::prelude::*;

/// Brute-force vertex oracle: feasible pairwise line intersections, solved by
/// Cramer's rule on the exact coefficients.
fn oracle_vertices(halfplanes: &[HalfPlane]) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for (i, h) in halfplanes.iter().enumerate() {
        for g in halfplanes.iter().skip(i + 1) {
            let det = h.a1() * g.a2() - h.a2() * g.a1();
            if det == rat_int(0) {
                continue;
            }
            let x = (h.b() * g.a2() - h.a2() * g.b()) / &det;
            let y = (h.a1() * g.b() - h.b() * g.a1()) / &det;
            let p = (x, y);
            if halfplanes.iter().all(|hp| hp.contains(&p)) {
                out.insert(p);
            }
        }
    }
    out
}

fn hp(a1: i64, a2: i64, b: i64) -> HalfPlane {
    HalfPlane::new(rat_int(a1), rat_int(a2), rat_int(b)).unwrap()
}

fn config_strategy(max: u32) -> impl Strategy<Value = AntennaConfig> {
    (1..=max, 1..=max, 1..=max, 1..=max)
        .prop_map(|(m1, m2, n1, n2)| AntennaConfig::new(m1, m2, n1, n2).unwrap())
}

proptest! {
    /// Random bounded half-plane systems (axis bounds, a bounding box, and
    /// arbitrary extra cuts): the convex-hull enumeration must agree exactly
    /// with the brute-force oracle, and report emptiness exactly when the
    /// oracle finds no feasible corner.
    #[test]
    fn vertex_enumeration_matches_brute_force(
        k1 in 1i64..=8,
        k2 in 1i64..=8,
        extra in prop::collection::vec((-3i64..=3, -3i64..=3, -6i64..=6), 0..5),
    ) {
        let mut hps = vec![hp(-1, 0, 0), hp(0, -1, 0), hp(1, 0, k1), hp(0, 1, k2)];
        for (a1, a2, b) in extra {
            if a1 != 0 || a2 != 0 {
                hps.push(hp(a1, a2, b));
            }
        }
        let oracle = oracle_vertices(&hps);
        match enumerate_vertices(&hps) {
            Ok(vs) => {
                let found: BTreeSet<Point> = vs.into_iter().collect();
                prop_assert_eq!(found, oracle);
            }
            Err(GeometryError::EmptyRegion) => prop_assert!(oracle.is_empty()),
            Err(e) => prop_assert!(false, "unexpected error {e:?} for {hps:?}"),
        }
    }

    /// Swapping the two user roles mirrors every region across the diagonal.
    #[test]
    fn regions_mirror_with_the_swapped_config(cfg in config_strategy(12)) {
        let swapped = cfg.swapped();
        for family in [Family::PCsit, Family::FbDCsit, Family::DCsit] {
            let here = region_for(&cfg, family).unwrap();
            let there = region_for(&swapped, family).unwrap();
            prop_assert!(here.mirrored().region_equal(&there), "{cfg:?} {family:?}");
        }
    }

    /// More information never shrinks the region: delayed CSIT within
    /// feedback plus delayed CSIT within perfect CSIT.
    #[test]
    fn inclusion_chain_holds(cfg in config_strategy(12)) {
        let d = region_delayed_csit(&cfg);
        let fb = region_fb_dcsit(&cfg);
        let p = region_perfect_csit(&cfg);
        prop_assert!(d.is_subset_of(&fb));
        prop_assert!(fb.is_subset_of(&p));
    }

    /// Exact rational strings roundtrip through the parser unchanged.
    #[test]
    fn rational_strings_roundtrip(n in -10_000i64..=10_000, d in 1i64..=9999) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    /// Convexity: any exact blend of two region vertices stays inside, and
    /// blends of adjacent boundary corners stay on the boundary envelope.
    #[test]
    fn time_share_stays_inside(
        cfg in config_strategy(10),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
        num in 0i64..=10,
    ) {
        let fb = region_fb_dcsit(&cfg);
        let a = &fb.vertices()[i.index(fb.vertices().len())];
        let b = &fb.vertices()[j.index(fb.vertices().len())];
        let theta = rat(num, 10);
        let blend = time_share(a, b, &theta).unwrap();
        prop_assert!(fb.contains(&blend), "{cfg:?}: blend {blend:?} escaped");
    }

    /// Every constructible corner plan is well formed: counting checks hold,
    /// transmit rules are causal, and the claimed DoF pair is a vertex of the
    /// feedback region.
    #[test]
    fn corner_plans_are_well_formed(cfg in config_strategy(10)) {
        let (canon, _) = cfg.canonical();
        let tag = classify(&canon).tag;
        if tag == RegimeTag::EqualDelayed {
            prop_assert!(plan_p0_p1(&canon).is_err());
            prop_assert!(plan_p2(&canon).is_err());
            return Ok(());
        }
        let fb = region_fb_dcsit(&canon);
        let mut plans = vec![plan_p0_p1(&canon).unwrap()];
        if tag == RegimeTag::CaseB {
            plans.push(plan_p2(&canon).unwrap());
        }
        for plan in plans {
            prop_assert!(plan.feasibility.all_satisfied());
            prop_assert_eq!(plan.validate_causality(), Ok(()));
            prop_assert!(fb.is_vertex(&plan.claimed_dof), "{canon:?}: {:?}", plan.claimed_dof);
            prop_assert_eq!(plan.slots.len(), plan.total_slots);
        }
    }
}

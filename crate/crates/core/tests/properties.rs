use proptest::prelude::*;

use cover_census::bundles::{cover_euler, trace_of_power, SolBundle};
use cover_census::finitegroups::{lens_homeomorphic, LensSpace};
use cover_census::fuchsian::{isomorphism_key, lattice_point_count, Signature};
use cover_census::presentations::{parse_word, Word};
use cover_census::topology::{consum_cover_check, sphere_sum_cover, surface_cover_witness, SurfaceType};

fn names() -> Vec<String> {
    ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
}

proptest! {
    #[test]
    fn word_render_round_trip(letters in prop::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..20)) {
        let w = Word::new(letters);
        prop_assert_eq!(parse_word(&w.render(&names()), &names()).unwrap(), w);
    }

    #[test]
    fn lens_symmetries(p in 2u64..60, q in 1i64..60) {
        prop_assume!(num_integer::gcd(q as u64 % p, p) == 1);
        let q = q % p as i64;
        let a = LensSpace::new(p, q).unwrap();
        let inv = (1..p as i64).find(|x| (x * q).rem_euclid(p as i64) == 1).unwrap();
        prop_assert!(lens_homeomorphic(&a, &LensSpace::new(p, -q).unwrap()).unwrap());
        prop_assert!(lens_homeomorphic(&a, &LensSpace::new(p, inv).unwrap()).unwrap());
    }

    #[test]
    fn euler_composition(e in -50i64..50, l1 in 1u64..8, m1 in 1u64..8, l2 in 1u64..8, m2 in 1u64..8) {
        if let Ok(e1) = cover_euler(e, l1, m1) {
            if let Ok(e2) = cover_euler(e1, l2, m2) {
                prop_assert_eq!(cover_euler(e, l1 * l2, m1 * m2).unwrap(), e2);
            }
        }
    }

    #[test]
    fn sol_trace_recursion(a in -6i64..7, b in 1i64..4) {
        // [[a, b], [c, d]] with d = 1 and c = (a - 1) / b when integral.
        prop_assume!((a - 1) % b == 0);
        let s = SolBundle::new([[a, b], [(a - 1) / b, 1]]);
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        let t = num_bigint::BigInt::from(s.trace());
        for d in 1..8 {
            prop_assert_eq!(trace_of_power(&s, d + 1), &t * trace_of_power(&s, d) - trace_of_power(&s, d - 1));
        }
    }

    #[test]
    fn surface_totals_differ(g in 0u32..4, k in 3u32..20) {
        let w = surface_cover_witness(&SurfaceType::orientable(g, k)).unwrap();
        prop_assert_eq!(w.psi_boundary, k as u64);
        prop_assert_eq!(w.phi_boundary, 2 + (k as u64 - 2) * k as u64);
    }

    #[test]
    fn sphere_sums_satisfy_cover_count(k in 2u64..10, d in 1u64..10) {
        // Each summand lifts to one S1xS2 piece; the rest come from the graph.
        let total = sphere_sum_cover(k, d).unwrap();
        prop_assert!(consum_cover_check(k, d, &vec![1; k as usize], total - k));
    }

    #[test]
    fn isomorphism_key_is_invariant_under_period_order(p in prop::collection::vec(2u64..9, 0..4), g in 0u32..3, k in 0u32..3) {
        let mut r = p.clone();
        r.reverse();
        let a = Signature::new(g, k, p).unwrap();
        let b = Signature::new(g, k, r).unwrap();
        prop_assert_eq!(isomorphism_key(&a), isomorphism_key(&b));
    }

    #[test]
    fn lattice_count_positive(n in 1u64..40) {
        let c = lattice_point_count(&Signature::modular(), n);
        prop_assert!(c.exact && c.count >= 1);
    }
}

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::{brute_force_transversals, determinantal_divisor, is_hermite};

use cox_core::coxring::{fan_from_bunch, grading_from_fan, mov_cone, nef_cone, DivisorClass, GradingData};
use cox_core::fan::{anticanonical_degree, dual_variety, Fan};
use cox_core::fanfile::{parse_fan_str, write_fan};
use cox_core::fixtures::{fixture, fixture_names, FANO_FOURFOLDS};
use cox_core::hilbert::{ci_dimension, quotient_dim_oracle};
use cox_core::ideal::{intersect_primes, SquarefreeMonomialIdeal};
use cox_core::linalg::{
    determinant, hermite_normal_form, integer_kernel, rational_rank, smith_normal_form, IntegerMatrix,
};
use cox_core::models::{
    cox3_spec, cross_check, intersection_numbers, is_effective_on_x, is_nef_on_x, nonspecial, DivisorClassX,
};
use cox_core::polyhedral::{
    dual_cone, intersect_cones, normalized_volume, normalized_volume_with_order, polar_dual, sorted_vectors,
    Polytope, RationalCone,
};

fn matrix(rows: &[Vec<i64>], cols: usize) -> IntegerMatrix {
    IntegerMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        .unwrap()
}

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(move |rows| matrix(&rows, c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hermite_form_is_canonical(m in small_matrix(5, 5)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(determinant(&u).abs().is_one());
        prop_assert!(is_hermite(&h));
        let (h2, _) = hermite_normal_form(&h);
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn smith_invariants_are_determinantal_quotients(m in small_matrix(5, 5)) {
        let s = smith_normal_form(&m);
        let prod = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let expected = if r == c && r < s.invariants.len() { s.invariants[r].clone() } else { BigInt::zero() };
                prop_assert_eq!(prod.get(r, c), &expected);
            }
        }
        prop_assert!(determinant(&s.left).abs().is_one());
        prop_assert!(determinant(&s.right).abs().is_one());
        let mut running = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let d = s.invariants.get(k - 1).cloned().unwrap_or_default();
            if k > 1 {
                let prev = &s.invariants[k - 2];
                prop_assert!(d.is_zero() || (!prev.is_zero() && (&d % prev).is_zero()));
            }
            running *= &d;
            prop_assert_eq!(&running, &determinantal_divisor(&m, k), "k = {}", k);
        }
    }

    #[test]
    fn kernel_is_saturated(m in small_matrix(6, 4)) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.rows(), m.rows() - rational_rank(&m));
        if k.rows() > 0 {
            prop_assert!(k.mul(&m).unwrap().is_zero());
            prop_assert!(smith_normal_form(&k).invariants.iter().all(|d| d.is_one()));
            prop_assert!(is_hermite(&k));
        }
    }
}

fn antichain() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1usize..=8).prop_flat_map(|n| {
        let edge = prop::collection::btree_set(0..n, 1..=n).prop_map(|s| s.into_iter().collect::<Vec<_>>());
        (Just(n), prop::collection::vec(edge, 1..=6))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn primes_and_generators_are_dual((n, gens) in antichain()) {
        let ideal = SquarefreeMonomialIdeal::new(n, gens).unwrap();
        let primes = ideal.minimal_primes().unwrap();
        prop_assert_eq!(&primes, &brute_force_transversals(n, ideal.generators()));
        let back = intersect_primes(&primes, n).unwrap();
        prop_assert_eq!(back, ideal);
    }
}

fn generators(dim: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    prop::collection::vec(
        prop::collection::vec(-4i64..=4, dim).prop_map(|v| v.into_iter().map(BigInt::from).collect()),
        1..=5,
    )
}

fn cone_pair() -> impl Strategy<Value = (usize, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    (2usize..=3).prop_flat_map(|d| (Just(d), generators(d), generators(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_double_dual((dim, a, _) in cone_pair()) {
        let c = RationalCone::from_generators(dim, a).unwrap();
        prop_assert!(dual_cone(&dual_cone(&c)).same_cone(&c));
    }

    #[test]
    fn dual_of_intersection_is_sum_of_duals((dim, a, b) in cone_pair()) {
        let ca = RationalCone::from_generators(dim, a).unwrap();
        let cb = RationalCone::from_generators(dim, b).unwrap();
        let meet = intersect_cones(&ca, &cb).unwrap();
        let mut gens = dual_cone(&ca).generators();
        gens.extend(dual_cone(&cb).generators());
        let sum = RationalCone::from_generators(dim, gens).unwrap();
        prop_assert!(dual_cone(&meet).same_cone(&sum));
        prop_assert!(meet.is_subset_of(&ca) && meet.is_subset_of(&cb));
    }
}

/// Random lattice points together with `±e_i`, so the origin is interior.
fn polytope() -> impl Strategy<Value = Polytope> {
    (2usize..=3).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..=5).prop_map(move |pts| {
            let mut vs: Vec<Vec<BigInt>> = pts.into_iter().map(|p| p.into_iter().map(BigInt::from).collect()).collect();
            for i in 0..dim {
                for s in [-1, 1] {
                    let mut e = vec![BigInt::zero(); dim];
                    e[i] = BigInt::from(s);
                    vs.push(e);
                }
            }
            Polytope::from_integer_vertices(dim, vs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polytope_double_dual(p in polytope()) {
        let pp = polar_dual(&polar_dual(&p).unwrap()).unwrap();
        prop_assert_eq!(sorted_vectors(pp.vertices()), sorted_vectors(p.vertices()));
        prop_assert_eq!(pp.facets(), p.facets());
    }

    #[test]
    fn volume_ignores_vertex_order(p in polytope(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut order: Vec<usize> = (0..p.vertices().len()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(normalized_volume_with_order(&p, &order).unwrap(), normalized_volume(&p).unwrap());
    }
}

fn all_fixtures() -> &'static Vec<(String, Fan)> {
    static FIXTURES: OnceLock<Vec<(String, Fan)>> = OnceLock::new();
    FIXTURES.get_or_init(|| fixture_names().into_iter().map(|n| {
        let f = fixture(&n).unwrap();
        (n, f)
    }).collect())
}

#[test]
fn gale_roundtrip_over_fixtures() {
    for (name, f) in all_fixtures() {
        let g = grading_from_fan(f).unwrap();
        let back = fan_from_bunch(&g).unwrap();
        assert!(grading_from_fan(&back).unwrap().equivalent(&g), "{name}");
        assert_eq!(back.max_cones().len(), f.max_cones().len(), "{name}");
        let cones: BTreeSet<&Vec<usize>> = f.max_cones().iter().collect();
        assert!(back.max_cones().iter().all(|c| cones.contains(c)), "{name}");
        // same ray configuration up to a lattice automorphism
        let span = |fan: &Fan| cox_core::linalg::row_lattice_basis(&fan.ray_matrix().transpose());
        assert_eq!(span(&back), span(f), "{name}");
    }
}

#[test]
fn fan_files_roundtrip() {
    for (name, f) in all_fixtures() {
        assert_eq!(&parse_fan_str(&write_fan(f), name).unwrap(), f, "{name}");
    }
}

#[test]
fn nef_inside_mov_inside_effective() {
    for (name, f) in all_fixtures() {
        let g = grading_from_fan(f).unwrap();
        let eff = RationalCone::from_generators(g.cl_rank(), g.degrees().into_iter().map(|d| d.0).collect()).unwrap();
        let mov = mov_cone(&g).unwrap();
        let nef = nef_cone(&g, f).unwrap();
        assert!(nef.is_subset_of(&mov), "{name}");
        assert!(mov.is_subset_of(&eff), "{name}");
    }
}

#[test]
fn double_dual_preserves_degree() {
    for name in ["p2", "p4", "p1xp1", "fano44", "fano147"] {
        let f = fixture(name).unwrap();
        let dd = dual_variety(&dual_variety(&f).unwrap()).unwrap();
        assert_eq!(dd.canonical(), f.canonical(), "{name}");
        assert_eq!(anticanonical_degree(&dd).unwrap(), anticanonical_degree(&f).unwrap(), "{name}");
    }
}

fn rank_two_grading() -> impl Strategy<Value = (GradingData, Vec<usize>)> {
    (0usize..4, Just((0..6).collect::<Vec<usize>>()).prop_shuffle()).prop_map(|(i, perm)| {
        (cox_core::fixtures::table_grading(FANO_FOURFOLDS[i]).unwrap(), perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelling_generators((g, perm) in rank_two_grading()) {
        let p = g.permuted(&perm).unwrap();
        let mut expected: Vec<Vec<usize>> = g
            .irrelevant()
            .minimal_primes()
            .unwrap()
            .iter()
            .map(|s| s.iter().map(|&i| perm[i]).sorted().collect())
            .collect();
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        prop_assert_eq!(p.irrelevant().minimal_primes().unwrap(), expected);
        let f = fan_from_bunch(&p).unwrap();
        prop_assert!(grading_from_fan(&f).unwrap().equivalent(&p));
    }

    #[test]
    fn koszul_count_matches_oracle(d in 3usize..=5, seed in any::<u64>(), a in 0i64..=4, b in -4i64..=4) {
        let check = cross_check(|s| cox3_spec(d, s), seed, &[(a, b)]).unwrap();
        prop_assert!(check.passed(), "{:?}", check);
        let spec = cox3_spec(d, check.seed).unwrap();
        prop_assert!(ci_dimension(&spec, &DivisorClass::from_i64(&[a, b])).unwrap() >= 0);
    }
}

#[test]
fn cox3_table_is_symmetric_under_swaps() {
    let spec = cox3_spec(4, 3).unwrap();
    let swapped = spec.permuted(&[0, 2, 1, 4, 3, 5], &[1, 0]).unwrap();
    for a in 0..=4 {
        for b in -4..=4 {
            let w = DivisorClass::from_i64(&[a, b]);
            assert_eq!(ci_dimension(&spec, &w).unwrap(), ci_dimension(&swapped, &w).unwrap());
            assert_eq!(quotient_dim_oracle(&spec, &w).unwrap(), quotient_dim_oracle(&swapped, &w).unwrap());
        }
    }
}

#[test]
fn divisor_predicates_on_a_grid() {
    let eff = RationalCone::from_generators(2, vec![vec![0.into(), 1.into()], vec![1.into(), (-1).into()]]).unwrap();
    for d in 3..=8usize {
        for a in -20..=20i64 {
            for b in -20..=20i64 {
                let x = DivisorClassX::new(a, b);
                let k = intersection_numbers(d, x);
                assert_eq!(is_effective_on_x(x), eff.contains(&[a.into(), b.into()]), "({a},{b})");
                if is_nef_on_x(d, x) {
                    assert!(is_effective_on_x(x), "d={d} ({a},{b})");
                    if k.with_l >= 2 * d as i64 - 3 && a + b > d as i64 - 4 {
                        assert!(nonspecial(d, x).unwrap(), "d={d} ({a},{b})");
                    }
                }
            }
        }
    }
}

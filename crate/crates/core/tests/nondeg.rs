use std::time::Instant;

use epade_core::arith::{binomial, determinant, rat, Rational};
use epade_core::nondeg::{
    case3_frame_identity, case3_frame_identity_with, check_inequality, glm_case3_map,
    intersection_dims, intersection_dims_direct, pascal_identity_with, permutation_equivariance,
    projection_matrix, projection_split_check, scaling_identity, sweep, SubspaceBasis, SweepConfig,
    SweepRecord, ThetaFrame,
};
use epade_core::pade::GradedIndex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn sweep_m2_n2_all_strict() {
    let start = Instant::now();
    let recs = sweep(&SweepConfig::new(2, 2, vec![1, 2, 3, 4], 200, 2024));
    assert_eq!(recs.len(), 800);
    for r in &recs {
        assert!(r.holds && r.strict, "{r:?}");
    }
    eprintln!("800 samples in {:?}", start.elapsed());
}

#[test]
fn sweep_small_cases_consistent() {
    for (m, n) in [(1, 1), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2), (3, 3)] {
        let w = GradedIndex::new(m, n).omega();
        let recs = sweep(&SweepConfig::new(m, n, (0..=w).collect(), 6, 11));
        assert!(recs.iter().all(SweepRecord::consistent), "m={m} N={n}");
        assert!(recs.iter().filter(|r| r.dim_r == w).all(|r| !r.strict));
    }
}

#[test]
fn sweep_is_reproducible_and_serializes() {
    let cfg = SweepConfig::new(2, 2, vec![2, 3], 5, 99);
    let a = sweep(&cfg);
    assert_eq!(a, sweep(&cfg));
    let line = serde_json::to_string(&a[0]).unwrap();
    for key in [
        "\"m\"",
        "\"N\"",
        "\"dimR\"",
        "\"dimFR\"",
        "\"dimFRK\"",
        "\"lhs\"",
        "\"rhs\"",
        "\"strict\"",
        "\"seed\"",
    ] {
        assert!(line.contains(key), "{line}");
    }
    let back: SweepRecord = serde_json::from_str(&line).unwrap();
    assert_eq!(back, a[0]);
}

#[test]
fn augmented_and_direct_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let f = ThetaFrame::new(m, n);
        let w = f.index().omega();
        for d in 0..=w {
            let r = SubspaceBasis::random(w, d, 10, &mut rng);
            assert_eq!(intersection_dims(&f, &r), intersection_dims_direct(&f, &r));
        }
        // K contains Z_(N,0,..,0), so this one meets F
        let k = SubspaceBasis::k_space(f.index());
        assert_eq!(intersection_dims(&f, &k), intersection_dims_direct(&f, &k));
    }
}

#[test]
fn full_space_equality() {
    for (m, n) in [(1, 2), (2, 2), (3, 2)] {
        let f = ThetaFrame::new(m, n);
        let w = f.index().omega();
        let c = check_inequality(&f, &SubspaceBasis::full(w));
        assert_eq!(c.dims.dim_fr, f.index().theta());
        assert!(c.holds && !c.strict && c.consistent());
        assert_eq!(c.lhs, c.rhs);
    }
}

#[test]
fn ratio_matches_closed_form() {
    for (m, n) in [(1, 1), (2, 2), (3, 4), (4, 2)] {
        let idx = GradedIndex::new(m, n);
        let closed = rat(2, 1) - rat(m as i64 - 1, (n as usize + m - 1) as i64);
        assert_eq!(idx.ratio(), closed);
    }
}

#[test]
fn case3_identities() {
    for n in 1..=4 {
        assert!(case3_frame_identity(2, n, 0, 1));
        assert!(case3_frame_identity(2, n, 1, 0));
    }
    for j0 in 0..3 {
        for j1 in 0..3 {
            if j0 != j1 {
                assert!(case3_frame_identity(3, 2, j0, j1));
            }
        }
    }
}

#[test]
fn case3_fault_injection() {
    let off_by_one = |n: u64, k: u64| binomial(n, k + 1);
    assert!(!case3_frame_identity_with(2, 2, 0, 1, &off_by_one));
    assert!(!pascal_identity_with(2, 3, 0, 1, &off_by_one));
    let shifted = |n: u64, k: u64| {
        if n > k {
            binomial(n - 1, k)
        } else {
            binomial(n, k)
        }
    };
    assert!(!case3_frame_identity_with(3, 2, 1, 2, &shifted));
}

#[test]
fn case3_map_is_unimodular() {
    for (m, n, j0, j1) in [(2, 2, 0, 1), (2, 4, 1, 0), (3, 2, 2, 0), (3, 3, 0, 2)] {
        let f = glm_case3_map(m, n, j0, j1).map(|x| Rational::from_integer(x.clone()));
        let d = determinant(&f);
        assert!(d == rat(1, 1) || d == rat(-1, 1));
    }
}

#[test]
fn permutation_and_scaling() {
    assert!(permutation_equivariance(2, 3, &[1, 0]));
    assert!(permutation_equivariance(3, 2, &[2, 0, 1]));
    assert!(permutation_equivariance(3, 3, &[0, 2, 1]));
    for lambda in [rat(2, 1), rat(-3, 7), rat(1, 5)] {
        assert!(scaling_identity(2, 3, 0, &lambda));
        assert!(scaling_identity(3, 2, 2, &lambda));
    }
}

#[test]
fn projection_split() {
    let idx = GradedIndex::new(2, 3);
    let k = SubspaceBasis::k_space(&idx);
    assert_eq!(k.image(&projection_matrix(&idx)).dim(), 0);
    assert!(projection_split_check(2, 3, &k));
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for d in 0..=idx.omega() {
        let r = SubspaceBasis::random(idx.omega(), d, 10, &mut rng);
        assert!(projection_split_check(2, 3, &r));
    }
    let r = SubspaceBasis::random(GradedIndex::new(3, 2).omega(), 4, 10, &mut rng);
    assert!(projection_split_check(3, 2, &r));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn inequality_holds_for_random_subspaces(m in 1usize..=3, n in 1u32..=3, seed in any::<u64>(), frac in 0.0f64..=1.0) {
        let f = ThetaFrame::new(m, n);
        let w = f.index().omega();
        let d = ((w as f64) * frac).round() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = SubspaceBasis::random(w, d, 10, &mut rng);
        let c = check_inequality(&f, &r);
        prop_assert!(c.consistent());
        prop_assert!(c.dims.dim_fr <= c.dims.dim_r.min(f.index().theta()));
        prop_assert!(c.dims.dim_frk <= c.dims.dim_fr);
    }

    #[test]
    fn split_holds_for_random_subspaces(seed in any::<u64>(), d in 0usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = SubspaceBasis::random(9, d, 10, &mut rng);
        prop_assert!(projection_split_check(2, 4, &r));
    }
}

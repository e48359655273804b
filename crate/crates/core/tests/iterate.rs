use std::collections::HashMap;

use epade_core::arith::{rat, Ball, Dyadic, LaurentPoly, Rational};
use epade_core::efunc::{self, eval_ball, Bundled, DiffSystem};
use epade_core::iterate::{
    build_a, default_kmax, iterate_bracket, local_solution_at_one, rank_certificate,
    remainder_derivative_check, z_vector,
};
use epade_core::pade::{construct, GradedIndex, GradedPadeSystem, PadeParams};
use proptest::prelude::*;

fn setup(b: &Bundled, n: u32, m_deg: usize, eta: Rational) -> (GradedIndex, GradedPadeSystem) {
    let idx = GradedIndex::new(b.system.m(), n);
    let p = PadeParams::new(&idx, m_deg, eta).unwrap();
    let g = construct(&b.series, &idx, &p).unwrap();
    (idx, g)
}

/// One step of the bracket recursion written directly in terms of S:
/// T·(P_κ' − Σ_j κ_j S_jj P_κ − Σ_{j≠l} (κ_j+1) S_lj P_{κ+e_j−e_l} + [|κ|=N] Σ_j S_j0 P_{κ−e_j}).
fn oracle_step(
    sys: &DiffSystem,
    idx: &GradedIndex,
    t: &LaurentPoly,
    p: &[LaurentPoly],
) -> Vec<LaurentPoly> {
    let m = idx.m();
    let lookup: HashMap<Vec<i64>, &LaurentPoly> = idx
        .all()
        .iter()
        .zip(p)
        .map(|(k, q)| (k.iter().map(|&x| x as i64).collect(), q))
        .collect();
    let zero = LaurentPoly::zero();
    let get = |k: &Vec<i64>| *lookup.get(k).unwrap_or(&&zero);
    idx.all()
        .iter()
        .map(|kv| {
            let k: Vec<i64> = kv.iter().map(|&x| x as i64).collect();
            let mut acc = get(&k).derivative();
            for j in 0..m {
                acc = acc - (sys.entry(j + 1, j + 1) * get(&k)).scale(&rat(k[j], 1));
                for l in 0..m {
                    if l != j {
                        let mut lam = k.clone();
                        lam[j] += 1;
                        lam[l] -= 1;
                        acc = acc - (sys.entry(l + 1, j + 1) * get(&lam)).scale(&rat(k[j] + 1, 1));
                    }
                }
                if k.iter().sum::<i64>() == idx.n() as i64 {
                    let mut lam = k.clone();
                    lam[j] -= 1;
                    acc = acc + sys.entry(j + 1, 0) * get(&lam);
                }
            }
            t * &acc
        })
        .collect()
}

#[test]
fn bracket_matches_componentwise_oracle() {
    for (b, n, m_deg, eta) in [
        (efunc::exp(), 1, 12, rat(1, 8)),
        (efunc::exp(), 2, 10, rat(1, 9)),
        (efunc::j0(), 2, 10, rat(1, 9)),
        (efunc::g_1f2(), 1, 9, rat(1, 12)),
    ] {
        let (idx, g) = setup(&b, n, m_deg, eta);
        let sc = build_a(&b.system, &idx).unwrap();
        let table = iterate_bracket(&sc, &g, 6);
        let mut p = g.polys();
        for k in 1..=6 {
            assert_eq!(table.bracket[k - 1], p, "k = {k}");
            p = oracle_step(&b.system, &idx, &sc.t_poly(), &p);
        }
    }
}

#[test]
fn exp_recursion_by_hand() {
    let (idx, g) = setup(&efunc::exp(), 1, 10, rat(1, 8));
    let sc = build_a(&efunc::exp().system, &idx).unwrap();
    let table = iterate_bracket(&sc, &g, 4);
    // position 0 is κ = (1), position 1 is κ = (0)
    for k in 0..3 {
        let (p1, p0) = (&table.bracket[k][0], &table.bracket[k][1]);
        assert_eq!(table.bracket[k + 1][0], p1.derivative() - p1.clone());
        assert_eq!(table.bracket[k + 1][1], p0.derivative());
    }
    assert_eq!(table.bracket[0], g.polys());
    assert_eq!(table.plain[0], g.polys());
}

#[test]
fn integrality_and_degree_bound() {
    for (b, n, m_deg, eta) in [
        (efunc::exp(), 1, 20, rat(1, 8)),
        (efunc::j0(), 2, 12, rat(1, 9)),
        (efunc::g_1f2(), 1, 10, rat(1, 12)),
    ] {
        let (idx, g) = setup(&b, n, m_deg, eta);
        let sc = build_a(&b.system, &idx).unwrap();
        let k_max = default_kmax(&g);
        let table = iterate_bracket(&sc, &g, k_max);
        assert!(table.degree_bound_holds());
        for k in 1..=k_max {
            table.bracket_integers(k).unwrap();
        }
    }
}

#[test]
fn exp_rank_certificate() {
    let (idx, g) = setup(&efunc::exp(), 1, 20, rat(1, 8));
    let sc = build_a(&efunc::exp().system, &idx).unwrap();
    let cert = rank_certificate(&sc, &g, 2 + 10);
    assert!(cert.is_full());
    assert_eq!(cert.rank, 2);
    let (k1, k2) = cert.pair.unwrap();
    assert!(k1 < k2 && k2 <= 4, "pair = {:?}", cert.pair);
    assert!(cert.identity_holds());
    assert_eq!(cert.witness.len(), 2);

    let one = rank_certificate(&sc, &g, 1);
    assert!(one.rank <= 1 && !one.is_full());
}

#[test]
fn j0_rank_certificate_and_monotonicity() {
    let (idx, g) = setup(&efunc::j0(), 2, 20, rat(1, 9));
    let sc = build_a(&efunc::j0().system, &idx).unwrap();
    let cert = rank_certificate(&sc, &g, default_kmax(&g));
    assert_eq!(cert.rank, 5);
    assert!(cert.identity_holds());
    assert!(cert.pair.is_some());
    assert!(cert.prefix_ranks_bracket.windows(2).all(|w| w[0] <= w[1]));
    let reached = cert.reached_at.unwrap();
    assert_eq!(cert.witness.last(), Some(&reached));
}

fn solution_and_defect(b: &Bundled, n: u32, m_deg: usize, eta: Rational, flip: bool) -> Vec<Ball> {
    let prec = 256;
    let (idx, g) = setup(b, n, m_deg, eta);
    let sc = build_a(&b.system, &idx).unwrap();
    let f1: Vec<Ball> = b
        .series
        .iter()
        .map(|f| eval_ball(f, &rat(1, 1), prec).unwrap())
        .collect();
    let y = local_solution_at_one(&sc, &z_vector(&idx, 0, &f1, prec), 8);
    let mut check = sc.clone();
    // the series keeps solving the original system while the iteration uses the faulty one
    if flip {
        let mut a = sc.a.clone();
        let (i, j) = (0..a.rows())
            .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| !a.get(i, j).is_zero())
            .unwrap();
        let neg = -a.get(i, j).clone();
        a.set(i, j, neg);
        check = sc.with_a(a);
    }
    remainder_derivative_check(&check, &g, &y, 5).defects
}

#[test]
fn remainder_identity_holds_for_exp_and_j0() {
    let tol = Dyadic::pow2(-80);
    for (b, n, m_deg, eta) in [
        (efunc::exp(), 1, 16, rat(1, 8)),
        (efunc::j0(), 2, 10, rat(1, 9)),
    ] {
        let d = solution_and_defect(&b, n, m_deg, eta, false);
        assert_eq!(d.len(), 5);
        for ball in &d {
            assert!(ball.contains_zero(), "{ball}");
            assert!(ball.rad() < &tol, "{ball}");
        }
    }
}

#[test]
fn flipped_sign_breaks_remainder_identity() {
    for (b, n, m_deg, eta) in [
        (efunc::exp(), 1, 16, rat(1, 8)),
        (efunc::j0(), 2, 10, rat(1, 9)),
    ] {
        let d = solution_and_defect(&b, n, m_deg, eta, true);
        assert!(d.iter().any(|x| !x.contains_zero()));
    }
}

#[test]
fn exp_local_solution_is_shifted_exponential() {
    let idx = GradedIndex::new(1, 1);
    let sc = build_a(&efunc::exp().system, &idx).unwrap();
    let e = eval_ball(&efunc::exp().series[0], &rat(1, 1), 200).unwrap();
    // position 0 is κ = (1), position 1 is κ = (0)
    let y = local_solution_at_one(&sc, &[e.clone(), Ball::from_int(1, 200)], 10);
    let mut fact = Rational::from_integer(1.into());
    for n in 0..=10usize {
        if n > 0 {
            fact *= rat(n as i64, 1);
        }
        let sign = rat(if n % 2 == 0 { 1 } else { -1 }, 1);
        assert!((&e.mul_rational(&(sign / &fact)) - &y[0][n]).contains_zero());
        assert!(y[0][n].rad() < &Dyadic::pow2(-150));
        if n > 0 {
            assert!(y[1][n].is_exact() && y[1][n].contains_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rank_nondecreasing_in_kmax(m_deg in 8usize..16, k1 in 1usize..6, extra in 0usize..5) {
        let (idx, g) = setup(&efunc::exp(), 1, m_deg, rat(1, 8));
        let sc = build_a(&efunc::exp().system, &idx).unwrap();
        let a = rank_certificate(&sc, &g, k1);
        let b = rank_certificate(&sc, &g, k1 + extra);
        prop_assert!(a.rank <= b.rank);
        prop_assert!(a.identity_holds() && b.identity_holds());
    }

    #[test]
    fn perturbed_integers_stay_integral(nu in 0usize..8, delta in -5i64..5) {
        let (idx, g) = setup(&efunc::j0(), 2, 8, rat(1, 9));
        let sc = build_a(&efunc::j0().system, &idx).unwrap();
        let g = g.perturbed(3, nu, delta);
        let table = iterate_bracket(&sc, &g, 5);
        for k in 1..=5 {
            prop_assert!(table.bracket_integers(k).is_ok());
        }
    }
}

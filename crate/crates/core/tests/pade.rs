use std::time::Instant;

use epade_core::arith::{binomial, clear_denominators, kernel_basis, rat, Matrix, Rational};
use epade_core::efunc;
use epade_core::pade::{construct, verify_vanishing, GradedIndex, GradedPadeSystem, PadeParams};
use epade_core::ESeries;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// All θ·K conditions in all ω·M unknowns, Θ columns first.
fn full_system(series: &[ESeries], idx: &GradedIndex, p: &PadeParams) -> Matrix<Rational> {
    let (m_deg, k) = (p.m_deg, p.k);
    let a: Vec<Vec<Rational>> = series.iter().map(|f| f.coefficients(k).unwrap()).collect();
    let mut rows = Vec::new();
    for (kappa, kv) in idx.all().iter().enumerate().take(idx.theta()) {
        for s in 0..k {
            let mut row = vec![Rational::zero(); idx.omega() * m_deg];
            if s < m_deg {
                row[kappa * m_deg + s] = rat(1, 1);
            }
            for j in 0..idx.m() {
                if kv[j] == 0 {
                    continue;
                }
                let mut lowered = kv.clone();
                lowered[j] -= 1;
                let q = idx.position(&lowered).unwrap();
                for nu in 0..m_deg.min(s + 1) {
                    row[q * m_deg + nu] +=
                        Rational::from_integer(binomial(s as u64, nu as u64)) * &a[j][s - nu];
                }
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows)
}

fn flatten(g: &GradedPadeSystem) -> Vec<BigInt> {
    g.pi.iter().flatten().cloned().collect()
}

#[test]
fn reduced_solve_matches_full_system() {
    let cases: Vec<(efunc::Bundled, u32, usize, Rational)> = vec![
        (efunc::exp(), 1, 6, rat(1, 8)),
        (efunc::exp(), 2, 5, rat(1, 9)),
        (efunc::j0(), 2, 6, rat(1, 9)),
        (efunc::j0(), 1, 7, rat(1, 6)),
    ];
    for (b, n, m_deg, eta) in cases {
        let idx = GradedIndex::new(b.system.m(), n);
        let p = PadeParams::new(&idx, m_deg, eta).unwrap();
        let g = construct(&b.series, &idx, &p).unwrap();
        let full = full_system(&b.series, &idx, &p);
        let v = kernel_basis(&full).into_iter().next().unwrap();
        let expected = clear_denominators(&v).unwrap().ints;
        assert_eq!(flatten(&g), expected);
        assert!(full
            .mul_vec(
                &flatten(&g)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect::<Vec<_>>()
            )
            .iter()
            .all(Zero::is_zero));
    }
}

#[test]
fn exp_vanishing_orders_reach_k() {
    let e = efunc::exp();
    let idx = GradedIndex::new(1, 1);
    for m_deg in [10, 20, 40] {
        let t = Instant::now();
        let p = PadeParams::new(&idx, m_deg, rat(1, 8)).unwrap();
        let g = construct(&e.series, &idx, &p).unwrap();
        let ord = verify_vanishing(&g, &e.series).unwrap();
        assert!(ord[0].value() >= p.k, "M = {m_deg}: {:?} < {}", ord[0], p.k);
        if m_deg == 40 {
            assert!(t.elapsed().as_secs_f64() < 5.0);
        }
    }
}

#[test]
fn j0_vanishing_orders_reach_k() {
    let b = efunc::j0();
    let idx = GradedIndex::new(2, 2);
    let p = PadeParams::new(&idx, 20, rat(1, 9)).unwrap();
    let g = construct(&b.series, &idx, &p).unwrap();
    for o in verify_vanishing(&g, &b.series).unwrap() {
        assert!(o.value() >= p.k);
    }
}

#[test]
fn construction_is_deterministic() {
    let b = efunc::j0();
    let idx = GradedIndex::new(2, 2);
    let p = PadeParams::new(&idx, 12, rat(1, 9)).unwrap();
    assert_eq!(
        construct(&b.series, &idx, &p).unwrap(),
        construct(&b.series, &idx, &p).unwrap()
    );
}

#[test]
fn bilinearity_of_remainders() {
    // two different kernel vectors of the full system, summed
    let e = efunc::exp();
    let idx = GradedIndex::new(1, 2);
    let p = PadeParams::new(&idx, 20, rat(1, 9)).unwrap();
    let full = full_system(&e.series, &idx, &p);
    let basis = kernel_basis(&full);
    assert!(basis.len() >= 2);
    let sys = |v: &[Rational]| {
        let ints = clear_denominators(v).unwrap().ints;
        GradedPadeSystem::from_pi(
            idx.clone(),
            p.clone(),
            ints.chunks(p.m_deg).map(|c| c.to_vec()).collect(),
        )
    };
    let (g1, g2) = (sys(&basis[0]), sys(&basis[1]));
    let sum: Vec<Vec<BigInt>> = g1
        .pi
        .iter()
        .zip(&g2.pi)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    let g3 = GradedPadeSystem::from_pi(idx.clone(), p.clone(), sum);
    let o1 = verify_vanishing(&g1, &e.series).unwrap();
    let o2 = verify_vanishing(&g2, &e.series).unwrap();
    let o3 = verify_vanishing(&g3, &e.series).unwrap();
    for i in 0..o3.len() {
        assert!(o3[i].value() >= o1[i].value().min(o2[i].value()));
    }
}

proptest! {
    #[test]
    fn index_sizes_and_ratio(m in 1usize..5, n in 1u32..6) {
        let idx = GradedIndex::new(m, n);
        let (omega, theta) = GradedIndex::expected_sizes(m, n);
        prop_assert_eq!(idx.omega() as u64, omega);
        prop_assert_eq!(idx.theta() as u64, theta);
        let ratio = rat(2, 1) - Rational::new(BigInt::from(m as i64 - 1), BigInt::from(n as i64 + m as i64 - 1));
        prop_assert_eq!(idx.ratio(), ratio.clone());
        prop_assert_eq!(ratio, rat(1, 1) + Rational::new(BigInt::from(n), BigInt::from(n as i64 + m as i64 - 1)));
    }

    #[test]
    fn dimension_count(m in 1usize..4, n in 1u32..4, m_deg in 1usize..60, den in 1i64..40) {
        let idx = GradedIndex::new(m, n);
        if let Ok(p) = PadeParams::new(&idx, m_deg, rat(1, den)) {
            prop_assert!(idx.theta() * p.k < idx.omega() * p.m_deg);
        }
    }
}

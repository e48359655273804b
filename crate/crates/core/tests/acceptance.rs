//! One line per criterion. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epade_core::arith::{binomial, rat, Ball, BigInt, Dyadic, Rational};
use epade_core::dioph::{continued_fraction_exponent, smallness_profile};
use epade_core::efunc::{self, algebraic_relation_check, eval_ball, Bundled};
use epade_core::iterate::{
    build_a, iterate_bracket, local_solution_at_one, rank_certificate_auto,
    remainder_derivative_check, z_vector,
};
use epade_core::nondeg::{
    case3_frame_identity, projection_split_check, sweep, SubspaceBasis, SweepConfig,
};
use epade_core::pade::{construct, verify_vanishing, GradedIndex, GradedPadeSystem, PadeParams};
use epade_core::pipeline::{run, PipelineConfig};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(t: Instant, secs: f64) -> bool {
    t.elapsed() < Duration::from_secs_f64(secs)
}

fn setup(b: &Bundled, n: u32, m_deg: usize, eta: Rational) -> (GradedIndex, GradedPadeSystem) {
    let idx = GradedIndex::new(b.system.m(), n);
    let p = PadeParams::new(&idx, m_deg, eta).unwrap();
    let g = construct(&b.series, &idx, &p).unwrap();
    (idx, g)
}

fn exotic_values() -> Outcome {
    let tol = -30.0 * 10f64.log2();
    let mut notes = Vec::new();
    let mut pass = true;
    for (f, x, v) in efunc::exotic_1f1() {
        let t = Instant::now();
        let b = eval_ball(&f, &x, 256).unwrap();
        let ok = b.contains_rational(&v) && b.rad().log2() < tol && within(t, 1.0);
        pass &= ok;
        notes.push(format!(
            "at {x}: contains {v} = {}, rad 2^{:.0}, {:?}",
            b.contains_rational(&v),
            b.rad().log2(),
            t.elapsed()
        ));
    }
    outcome(pass, notes.join("; "))
}

fn g_identities() -> Outcome {
    let t = Instant::now();
    let g = &efunc::g_1f2().series[0];
    let res = efunc::g_operator().residual(g, 60).unwrap();
    let ode = res.iter().all(Zero::is_zero);
    let alg = algebraic_relation_check(g, 60).unwrap();
    outcome(
        ode && alg && within(t, 2.0),
        format!(
            "ode residual zero {ode}, algebraic relation {alg}, {:?}",
            t.elapsed()
        ),
    )
}

fn pade_vanishing() -> Outcome {
    let b = efunc::exp();
    let mut pass = true;
    let mut notes = Vec::new();
    for m_deg in [10, 20, 40] {
        let t = Instant::now();
        let (_, g) = setup(&b, 1, m_deg, rat(1, 8));
        let ord = verify_vanishing(&g, &b.series).unwrap();
        let k = (rat(15, 8) * rat(m_deg as i64, 1)).floor().to_integer();
        let ok = g.params.k == usize::try_from(k).unwrap()
            && ord.len() == 1
            && ord[0].value() >= g.params.k;
        pass &= ok && (m_deg != 40 || within(t, 5.0));
        notes.push(format!("M={m_deg} K={} ord={}", g.params.k, ord[0].value()));
    }
    outcome(pass, notes.join(", "))
}

fn integrality_and_rank() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, b, n, eta) in [
        ("exp", efunc::exp(), 1, rat(1, 8)),
        ("J0", efunc::j0(), 2, rat(1, 9)),
    ] {
        let m_deg = 20;
        let (idx, g) = setup(&b, n, m_deg, eta.clone());
        let sc = build_a(&b.system, &idx).unwrap();
        let span = (eta * rat(m_deg as i64, 1)).floor().to_integer();
        let k_top = usize::try_from(span).unwrap() + 32;
        let table = iterate_bracket(&sc, &g, k_top);
        let integral = (1..=k_top).all(|k| table.bracket_integers(k).is_ok());
        let (_, cert) = rank_certificate_auto(&sc, &g);
        let ok = integral && cert.identity_holds() && cert.is_full() && cert.k_max <= m_deg;
        pass &= ok;
        notes.push(format!(
            "{name}: integral to k={k_top} {integral}, rank {}/{} at k_max {}, identity {}",
            cert.rank,
            idx.omega(),
            cert.k_max,
            cert.identity_holds()
        ));
    }
    outcome(pass, notes.join("; "))
}

fn remainder_identity() -> Outcome {
    let prec = 256;
    let tol = Dyadic::pow2(-80);
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, b, n, m_deg, eta) in [
        ("exp", efunc::exp(), 1, 16, rat(1, 8)),
        ("J0", efunc::j0(), 2, 10, rat(1, 9)),
    ] {
        let (idx, g) = setup(&b, n, m_deg, eta);
        let sc = build_a(&b.system, &idx).unwrap();
        let f1: Vec<Ball> = b
            .series
            .iter()
            .map(|f| eval_ball(f, &rat(1, 1), prec).unwrap())
            .collect();
        let y = local_solution_at_one(&sc, &z_vector(&idx, 0, &f1, prec), 8);
        let rep = remainder_derivative_check(&sc, &g, &y, 5);
        let ok = rep.defects.len() == 5 && rep.all_contain_zero() && rep.max_radius() < tol;
        pass &= ok;
        notes.push(format!(
            "{name}: contain 0 {}, max rad 2^{:.0}",
            rep.all_contain_zero(),
            rep.max_radius().log2()
        ));
    }
    outcome(pass, notes.join("; "))
}

fn approximation_trend(name: &str, b: &Bundled, n: u32, eta: Rational) -> Outcome {
    let t = Instant::now();
    let mut rows = Vec::new();
    let mut dets = true;
    for m_deg in [10, 20, 40] {
        match run(
            &b.system,
            &b.series,
            &PipelineConfig::new(n, m_deg, eta.clone()),
        ) {
            Ok(r) => {
                let (a, c) = &r.pairs;
                dets &= !(&a.p * &c.q - &a.q * &c.p).is_zero();
                rows.push((m_deg, a.clone()));
                rows.push((m_deg, c.clone()));
            }
            Err(e) => return outcome(false, format!("{name}: M={m_deg} {e}")),
        }
    }
    let prof = smallness_profile(&rows);
    let best = |m: usize| {
        prof.iter()
            .filter(|p| p.m_deg == m)
            .filter_map(|p| p.ratio)
            .fold(f64::INFINITY, f64::min)
    };
    let trend: Vec<String> = [10, 20, 40]
        .iter()
        .map(|&m| format!("M={m} {:.3}", best(m)))
        .collect();
    let pass = dets && best(40) <= -1.5 && within(t, 300.0);
    outcome(
        pass,
        format!(
            "{name}: det nonzero {dets}, ratio {}, {:?}",
            trend.join(" "),
            t.elapsed()
        ),
    )
}

fn nondegeneracy_sweep() -> Outcome {
    let t = Instant::now();
    let mut total = 0;
    let mut violations = 0;
    let mut cases = 0;
    for m in 1..=3 {
        for n in 1..=3u32 {
            let w = GradedIndex::new(m, n).omega();
            if w > 20 {
                continue;
            }
            cases += 1;
            for r in sweep(&SweepConfig::new(
                m,
                n,
                (0..=w).collect(),
                200,
                7 + 31 * m as u64 + n as u64,
            )) {
                total += 1;
                if !r.holds || r.strict == r.trivial_or_full || !r.consistent() {
                    violations += 1;
                }
            }
        }
    }
    outcome(
        violations == 0 && within(t, 120.0),
        format!(
            "{cases} (m,N) cases, {total} subspaces, {violations} violations, {:?}",
            t.elapsed()
        ),
    )
}

fn frame_identities() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    let mut failed = Vec::new();
    for m in 2..=3 {
        for n in 1..=4u32 {
            for j0 in 0..m {
                for j1 in (0..m).filter(|&j| j != j0) {
                    checked += 1;
                    if !case3_frame_identity(m, n, j0, j1) {
                        failed.push(format!("(m={m},N={n},{j0},{j1})"));
                    }
                }
            }
        }
    }
    let idx = GradedIndex::new(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let split = (0..50).all(|_| {
        let d = rng.gen_range(0..=idx.omega());
        projection_split_check(2, 3, &SubspaceBasis::random(idx.omega(), d, 10, &mut rng))
    });
    outcome(
        failed.is_empty() && split && within(t, 30.0),
        format!(
            "case3 {checked} pairs, failed {failed:?}; projection split 50/50 {split}; {:?}",
            t.elapsed()
        ),
    )
}

fn oracle_cross_checks() -> Outcome {
    let apery = efunc::apery().coefficients(3).unwrap();
    let oracle: Vec<Rational> = (0..=3u64)
        .map(|n| {
            let s: BigInt = (0..=n)
                .map(|k| (binomial(n, k) * binomial(n + k, k)).pow(2))
                .sum();
            Rational::from_integer(s)
        })
        .collect();
    let apery_ok = apery == oracle;
    let e = eval_ball(&efunc::exp().series[0], &rat(1, 1), 256).unwrap();
    let est = continued_fraction_exponent(&e, 20);
    let expected: Vec<BigInt> = (0..20)
        .map(|i| match i {
            0 => 2,
            i if i % 3 == 2 => 2 * (i as i64 + 1) / 3,
            _ => 1,
        })
        .map(BigInt::from)
        .collect();
    let cf_ok = est.partial_quotients == expected && !est.truncated;
    let listed: Vec<String> = oracle.iter().map(ToString::to_string).collect();
    outcome(
        apery_ok && cf_ok,
        format!(
            "apery [{}] match {apery_ok}; e quotients certified to depth 20 {cf_ok}",
            listed.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("AC1 exotic rational values", Box::new(exotic_values)),
        (
            "AC2 g operator and algebraic relation",
            Box::new(g_identities),
        ),
        ("AC3 Pade vanishing for exp", Box::new(pade_vanishing)),
        (
            "AC4 integrality and full rank",
            Box::new(integrality_and_rank),
        ),
        (
            "AC5 remainder derivative identity",
            Box::new(remainder_identity),
        ),
        (
            "AC6 approximation trend e",
            Box::new(|| approximation_trend("e", &efunc::exp(), 1, rat(1, 8))),
        ),
        (
            "AC6 approximation trend J0(1)",
            Box::new(|| approximation_trend("J0", &efunc::j0(), 2, rat(1, 9))),
        ),
        ("AC7 nondegeneracy sweep", Box::new(nondegeneracy_sweep)),
        (
            "AC8 frame transformation identities",
            Box::new(frame_identities),
        ),
        ("AC9 oracle cross-checks", Box::new(oracle_cross_checks)),
    ];
    let mut failures = 0;
    for (name, check) in &criteria {
        let o = check();
        if !o.pass {
            failures += 1;
        }
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

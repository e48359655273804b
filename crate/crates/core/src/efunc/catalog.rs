//! The example functions: exp, J0, the 1F2 function g, the Apéry generating
//! function and two 1F1 series with rational values.

use std::sync::Arc;

use super::hyper::HypergeometricSpec;
use super::operator::DiffOperator;
use super::series::{ESeries, Recurrence};
use super::system::DiffSystem;
use crate::arith::{rat, LaurentMatrix, LaurentPoly, Poly, Rational};

/// A differential system with the series of its components.
#[derive(Clone, Debug)]
pub struct Bundled {
    pub system: DiffSystem,
    pub series: Vec<ESeries>,
}

fn lp(terms: &[(i64, Rational)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms)
}

fn chain(base: ESeries, m: usize) -> Vec<ESeries> {
    let base = Arc::new(base);
    let mut v = vec![(*base).clone()];
    for d in 1..m {
        v.push(ESeries::derivative(&base, d));
    }
    v
}

pub fn exp() -> Bundled {
    let spec = HypergeometricSpec::new(vec![], vec![], rat(1, 1), 1).expect("valid spec");
    let s = LaurentMatrix::from_rows(vec![vec![LaurentPoly::zero(), LaurentPoly::one()]]);
    Bundled {
        system: DiffSystem::new(s, vec!["exp".into()]).expect("valid system"),
        series: vec![ESeries::hypergeometric(spec).with_growth_hint(rat(1, 1))],
    }
}

/// (J0, J0'), J0 = 0F1[;1;−z²/4], from z y'' + y' + z y = 0.
pub fn j0() -> Bundled {
    let spec = HypergeometricSpec::new(vec![], vec![rat(1, 1)], rat(-1, 4), 2).expect("valid spec");
    let z0 = LaurentPoly::zero();
    let s = LaurentMatrix::from_rows(vec![
        vec![z0.clone(), z0.clone(), LaurentPoly::one()],
        vec![
            z0,
            LaurentPoly::constant(rat(-1, 1)),
            lp(&[(-1, rat(-1, 1))]),
        ],
    ]);
    Bundled {
        system: DiffSystem::new(s, vec!["J0".into(), "J0'".into()]).expect("valid system"),
        series: chain(ESeries::hypergeometric(spec).with_growth_hint(rat(1, 1)), 2),
    }
}

/// g = 1F2[1/2; 1/3, 2/3; z²] with (g, g', g'').
pub fn g_1f2() -> Bundled {
    let spec = HypergeometricSpec::new(vec![rat(1, 2)], vec![rat(1, 3), rat(2, 3)], rat(1, 1), 2)
        .expect("valid spec");
    let z0 = LaurentPoly::zero();
    let s = LaurentMatrix::from_rows(vec![
        vec![z0.clone(), z0.clone(), LaurentPoly::one(), z0.clone()],
        vec![z0.clone(), z0.clone(), z0.clone(), LaurentPoly::one()],
        vec![
            z0,
            lp(&[(-1, rat(4, 1))]),
            lp(&[(-2, rat(1, 9)), (0, rat(4, 1))]),
            lp(&[(-1, rat(-1, 1))]),
        ],
    ]);
    Bundled {
        system: DiffSystem::new(s, vec!["g".into(), "g'".into(), "g''".into()])
            .expect("valid system"),
        series: chain(ESeries::hypergeometric(spec).with_growth_hint(rat(3, 1)), 3),
    }
}

/// 9z² y''' + 9z y'' − (36z² + 1) y' − 36z y.
pub fn g_operator() -> DiffOperator {
    DiffOperator::from_laurent(&[
        lp(&[(1, rat(-36, 1))]),
        lp(&[(0, rat(-1, 1)), (2, rat(-36, 1))]),
        lp(&[(1, rat(9, 1))]),
        lp(&[(2, rat(9, 1))]),
    ])
    .expect("nonzero leading coefficient")
}

/// (y, y') for y = 1F1[a; b; z], from z y'' + (b − z) y' − a y = 0.
pub fn hyp1f1_system(a: Rational, b: Rational) -> Result<Bundled, super::EfuncError> {
    let spec = HypergeometricSpec::new(vec![a.clone()], vec![b.clone()], rat(1, 1), 1)?;
    let z0 = LaurentPoly::zero();
    let s = LaurentMatrix::from_rows(vec![
        vec![z0.clone(), z0.clone(), LaurentPoly::one()],
        vec![z0, lp(&[(-1, a)]), lp(&[(-1, -b), (0, rat(1, 1))])],
    ]);
    Ok(Bundled {
        system: DiffSystem::new(s, vec!["y".into(), "y'".into()])?,
        series: chain(ESeries::hypergeometric(spec), 2),
    })
}

/// (series, point, exact value) for 1F1[5;7/3;−2/3] = 5/27 and 1F1[6;−2/5;−12/5] = 1309/625.
pub fn exotic_1f1() -> Vec<(ESeries, Rational, Rational)> {
    let f = |a, b| {
        ESeries::hypergeometric(
            HypergeometricSpec::new(vec![a], vec![b], rat(1, 1), 1).expect("valid spec"),
        )
    };
    vec![
        (f(rat(5, 1), rat(7, 3)), rat(-2, 3), rat(5, 27)),
        (f(rat(6, 1), rat(-2, 5)), rat(-12, 5), rat(1309, 625)),
    ]
}

/// Σ A_n z^n/n! with A_n the Apéry numbers Σ_k C(n,k)² C(n+k,k)².
pub fn apery() -> ESeries {
    let n = |c: &[i64]| Poly::new(c.iter().map(|&x| rat(x, 1)).collect());
    // (n+1)^3 a_n − (34(n+1)^3 + 51(n+1)^2 + 27(n+1) + 5) a_{n+1} + (n+2)^3 a_{n+2} = 0
    let p0 = n(&[1, 3, 3, 1]);
    let p1 = n(&[-117, -231, -153, -34]);
    let p2 = n(&[8, 12, 6, 1]);
    let r = Recurrence::new(vec![p0, p1, p2], vec![rat(1, 1), rat(5, 1)]).expect("order two");
    ESeries::recurrence(r).with_growth_hint(rat(34, 1))
}

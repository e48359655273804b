use num_traits::{ToPrimitive, Zero};

use super::closure::SystemClosure;
use super::table::{iterate_bracket, IterTable};
use crate::arith::{determinant, rank, Matrix, Rational, SpanBuilder};
use crate::pade::GradedPadeSystem;

/// Rank data of the ω × k_max matrix (P^{[k]}_κ(1)).
#[derive(Clone, Debug, PartialEq)]
pub struct RankCertificate {
    pub k_max: usize,
    pub eval: Matrix<Rational>,
    pub rank: usize,
    /// 1-based k of the first columns spanning the column space.
    pub witness: Vec<usize>,
    /// Smallest k1, then smallest k2 > k1, with a nonzero minor on the rows
    /// (N,0,…,0) and (N−1,0,…,0).
    pub pair: Option<(usize, usize)>,
    /// First k at which the rank reaches ω.
    pub reached_at: Option<usize>,
    pub prefix_ranks_bracket: Vec<usize>,
    pub prefix_ranks_plain: Vec<usize>,
}

impl RankCertificate {
    pub fn omega(&self) -> usize {
        self.eval.rows()
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.omega()
    }

    pub fn identity_holds(&self) -> bool {
        self.prefix_ranks_bracket == self.prefix_ranks_plain
    }
}

pub fn rank_certificate_from_table(table: &IterTable, theta: usize) -> RankCertificate {
    let k_max = table.k_max();
    let cols: Vec<Vec<Rational>> = (1..=k_max).map(|k| table.eval_bracket(k)).collect();
    let w = cols[0].len();
    let eval = Matrix::from_cols(&cols, w);

    let mut span_b = SpanBuilder::new();
    let mut span_p = SpanBuilder::new();
    let mut witness = Vec::new();
    let mut prefix_ranks_bracket = Vec::with_capacity(k_max);
    let mut prefix_ranks_plain = Vec::with_capacity(k_max);
    for (k, c) in cols.iter().enumerate() {
        if span_b.insert(c) {
            witness.push(k + 1);
        }
        span_p.insert(&table.eval_plain(k + 1));
        prefix_ranks_bracket.push(span_b.dim());
        prefix_ranks_plain.push(span_p.dim());
    }
    let r = span_b.dim();
    debug_assert_eq!(r, rank(&eval));
    let reached_at = prefix_ranks_bracket
        .iter()
        .position(|&x| x == w)
        .map(|i| i + 1);
    if r == w {
        let minor = eval.select_cols(&witness.iter().map(|k| k - 1).collect::<Vec<_>>());
        assert!(
            !determinant(&minor).is_zero(),
            "witness minor must be nonzero"
        );
    }

    let (r0, r1) = (0, theta);
    let mut pair = None;
    'outer: for k1 in 0..k_max {
        for k2 in k1 + 1..k_max {
            let det = &cols[k1][r0] * &cols[k2][r1] - &cols[k2][r0] * &cols[k1][r1];
            if !det.is_zero() {
                pair = Some((k1 + 1, k2 + 1));
                break 'outer;
            }
        }
    }
    RankCertificate {
        k_max,
        eval,
        rank: r,
        witness,
        pair,
        reached_at,
        prefix_ranks_bracket,
        prefix_ranks_plain,
    }
}

pub fn rank_certificate(sc: &SystemClosure, g: &GradedPadeSystem, k_max: usize) -> RankCertificate {
    rank_certificate_from_table(&iterate_bracket(sc, g, k_max), sc.index.theta())
}

/// ⌊ηM⌋ + 32, capped at M.
pub fn default_kmax(g: &GradedPadeSystem) -> usize {
    let em = (&g.params.eta * Rational::from_integer(g.params.m_deg.into()))
        .floor()
        .to_integer();
    (em.to_usize().unwrap_or(0) + 32).min(g.params.m_deg).max(1)
}

/// Starts at [`default_kmax`] and doubles on deficiency up to M.
pub fn rank_certificate_auto(
    sc: &SystemClosure,
    g: &GradedPadeSystem,
) -> (IterTable, RankCertificate) {
    let mut k = default_kmax(g);
    loop {
        let table = iterate_bracket(sc, g, k);
        let cert = rank_certificate_from_table(&table, sc.index.theta());
        if cert.is_full() || k >= g.params.m_deg {
            return (table, cert);
        }
        k = (2 * k).min(g.params.m_deg);
    }
}

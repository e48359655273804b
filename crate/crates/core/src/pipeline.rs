//! End-to-end run: approximants, derivation table, rank certificate and
//! rational approximations for one parameter choice.

use thiserror::Error;

use crate::arith::{rat, Ball, Rational};
use crate::dioph::{defect_precision, extract_pairs, ApproximantPair, DiophError};
use crate::efunc::{eval_ball, DiffSystem, ESeries, EfuncError};
use crate::iterate::{
    build_a, iterate_bracket, rank_certificate_auto, rank_certificate_from_table, IterTable,
    IterateError, RankCertificate, SystemClosure,
};
use crate::pade::{construct, GradedIndex, GradedPadeSystem, PadeError, PadeParams};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Pade(#[from] PadeError),
    #[error(transparent)]
    Iterate(#[from] IterateError),
    #[error(transparent)]
    Efunc(#[from] EfuncError),
    #[error(transparent)]
    Dioph(#[from] DiophError),
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub n: u32,
    pub m_deg: usize,
    pub eta: Rational,
    /// Fixed k_max; `None` starts at ⌊ηM⌋ + 32 and doubles up to M.
    pub k_max: Option<usize>,
    /// Defaults to 4·K·log2(M) + 256 bits.
    pub precision: Option<u64>,
}

impl PipelineConfig {
    pub fn new(n: u32, m_deg: usize, eta: Rational) -> Self {
        PipelineConfig {
            n,
            m_deg,
            eta,
            k_max: None,
            precision: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub system: GradedPadeSystem,
    pub closure: SystemClosure,
    pub table: IterTable,
    pub certificate: RankCertificate,
    pub precision: u64,
    pub f1: Ball,
    pub pairs: (ApproximantPair, ApproximantPair),
}

impl PipelineRun {
    pub fn index(&self) -> &GradedIndex {
        &self.system.index
    }

    pub fn params(&self) -> &PadeParams {
        &self.system.params
    }
}

/// Approximants and derivation table without the ball evaluation.
pub fn certify(
    sys: &DiffSystem,
    series: &[ESeries],
    cfg: &PipelineConfig,
) -> Result<(GradedPadeSystem, SystemClosure, IterTable, RankCertificate), PipelineError> {
    let idx = GradedIndex::new(sys.m(), cfg.n);
    let params = PadeParams::new(&idx, cfg.m_deg, cfg.eta.clone())?;
    let g = construct(series, &idx, &params)?;
    let sc = build_a(sys, &idx)?;
    let (table, cert) = match cfg.k_max {
        Some(k) => {
            let table = iterate_bracket(&sc, &g, k);
            let cert = rank_certificate_from_table(&table, idx.theta());
            (table, cert)
        }
        None => rank_certificate_auto(&sc, &g),
    };
    Ok((g, sc, table, cert))
}

pub fn run(
    sys: &DiffSystem,
    series: &[ESeries],
    cfg: &PipelineConfig,
) -> Result<PipelineRun, PipelineError> {
    let (g, sc, table, cert) = certify(sys, series, cfg)?;
    let precision = cfg
        .precision
        .unwrap_or_else(|| defect_precision(g.params.k, cfg.m_deg));
    let f1 = eval_ball(&series[0], &rat(1, 1), precision)?;
    let pairs = extract_pairs(&cert, &table, &sc, &f1)?;
    Ok(PipelineRun {
        system: g,
        closure: sc,
        table,
        certificate: cert,
        precision,
        f1,
        pairs,
    })
}

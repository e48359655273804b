use std::path::{Path, PathBuf};

use epade_core::arith::{rat, Rational};
use epade_core::dioph::{continued_fraction_exponent, smallness_profile};
use epade_core::efunc::eval_ball;
use epade_core::iterate::{build_a, default_kmax, iterate_bracket};
use epade_core::nondeg::{sweep, SweepConfig, SweepRecord};
use epade_core::pade::{
    coefficient_growth_report, construct, verify_vanishing, GradedIndex, PadeParams, VanishingOrder,
};
use epade_core::pipeline::{certify, run, PipelineConfig};
use num_traits::Zero;

use crate::artifact::{
    Artifact, ArtifactFile, BallDoc, CfDoc, EvalValue, Int, PairDoc, Params, VanishingDoc,
};
use crate::doc::{LaurentDoc, SystemDocument, Q};
use crate::error::CliError;

/// Flags shared by every command.
#[derive(Clone, Debug, Default)]
pub struct Common {
    pub seed: u64,
    pub precision_bits: Option<u64>,
    pub m: Option<usize>,
    pub n: Option<u32>,
    pub m_deg: Option<usize>,
    pub eta: Option<Rational>,
    pub kmax: Option<usize>,
    pub out: Option<PathBuf>,
}

/// A computed artifact, possibly with a certificate deficiency to report
/// after it has been written.
#[derive(Debug)]
pub struct Outcome {
    pub artifact: Artifact,
    pub summary: String,
    pub deficiency: Option<CliError>,
}

/// Largest η allowed for (m, N): min(1/(3(N+m−1)), 1/(ω+1)).
pub fn default_eta(m: usize, n: u32) -> Rational {
    let idx = GradedIndex::new(m, n);
    let a = rat(1, 3 * (n as i64 + m as i64 - 1));
    let b = rat(1, idx.omega() as i64 + 1);
    a.min(b)
}

struct Resolved {
    idx: GradedIndex,
    params: PadeParams,
    cfg: PipelineConfig,
}

fn resolve(doc: &SystemDocument, c: &Common) -> Result<Resolved, CliError> {
    if let Some(m) = c.m {
        if m != doc.m {
            return Err(CliError::Validation(format!(
                "--m {m} does not match the document (m = {})",
                doc.m
            )));
        }
    }
    let n = c.n.unwrap_or(1);
    if n == 0 {
        return Err(CliError::Validation("N must be at least 1".into()));
    }
    let m_deg = c.m_deg.unwrap_or(20);
    let eta = c.eta.clone().unwrap_or_else(|| default_eta(doc.m, n));
    let idx = GradedIndex::new(doc.m, n);
    let params = PadeParams::new(&idx, m_deg, eta.clone())
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let cfg = PipelineConfig {
        n,
        m_deg,
        eta,
        k_max: c.kmax,
        precision: c.precision_bits,
    };
    Ok(Resolved { idx, params, cfg })
}

fn params_doc(r: &Resolved) -> Params {
    Params {
        m: r.idx.m(),
        n: r.idx.n(),
        m_deg: r.params.m_deg,
        eta: Q(r.params.eta.clone()),
        k: r.params.k,
        omega: r.idx.omega(),
        theta: r.idx.theta(),
    }
}

pub fn eval(
    doc: &SystemDocument,
    at: &Rational,
    cf_depth: usize,
    c: &Common,
) -> Result<Outcome, CliError> {
    let prec = c.precision_bits.unwrap_or(256);
    let series = doc.build_series()?;
    let digits = (prec as f64 * std::f64::consts::LOG10_2) as usize;
    let mut values = Vec::with_capacity(series.len());
    for (i, s) in series.iter().enumerate() {
        let b =
            eval_ball(s, at, prec).map_err(|e| CliError::Validation(format!("series {i}: {e}")))?;
        let expected = doc
            .metadata
            .expected
            .iter()
            .find(|e| e.series == i && &e.at.0 == at)
            .map(|e| e.value.clone());
        let contains_expected = expected.as_ref().map(|q| b.contains_rational(&q.0));
        let continued_fraction = (cf_depth > 0).then(|| {
            let est = continued_fraction_exponent(&b, cf_depth);
            CfDoc {
                partial_quotients: est.partial_quotients.into_iter().map(Int).collect(),
                rational: est.rational,
                truncated: est.truncated,
                convergent_law: est.convergent_law,
                max_mu: est.max_mu,
                tail_median: est.tail_median,
            }
        });
        values.push(EvalValue {
            series: i,
            value: BallDoc::new(&b, digits.min(60)),
            expected,
            contains_expected,
            continued_fraction,
        });
    }
    if values.iter().any(|v| v.contains_expected == Some(false)) {
        return Err(CliError::Internal(format!(
            "{}: a value misses its expected rational",
            doc.name
        )));
    }
    let summary = values
        .iter()
        .map(|v| format!("f{}({}) = {}", v.series, Q(at.clone()), v.value.decimal))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(Outcome {
        artifact: Artifact::Eval {
            name: doc.name.clone(),
            point: Q(at.clone()),
            precision_bits: prec,
            values,
        },
        summary,
        deficiency: None,
    })
}

pub fn pade(doc: &SystemDocument, c: &Common) -> Result<Outcome, CliError> {
    let r = resolve(doc, c)?;
    let mut series = doc.build_series()?;
    series.truncate(doc.m);
    let g =
        construct(&series, &r.idx, &r.params).map_err(|e| CliError::Validation(e.to_string()))?;
    let orders = verify_vanishing(&g, &series).map_err(|e| CliError::Validation(e.to_string()))?;
    let vanishing: Vec<VanishingDoc> = orders
        .iter()
        .enumerate()
        .map(|(i, o)| VanishingDoc {
            kappa: r.idx.kappa(i).to_vec(),
            order: o.value(),
            exact: matches!(o, VanishingOrder::Exact(_)),
        })
        .collect();
    if vanishing.iter().any(|v| v.order < r.params.k) {
        return Err(CliError::Internal(
            "a remainder vanishes to order below K".into(),
        ));
    }
    let growth = coefficient_growth_report(&g);
    let min_order = vanishing.iter().map(|v| v.order).min().unwrap_or(0);
    Ok(Outcome {
        summary: format!(
            "{}: K = {}, min vanishing order {}, log2 max |pi| = {:.1}",
            doc.name, r.params.k, min_order, growth.log2_max
        ),
        artifact: Artifact::Pade {
            name: doc.name.clone(),
            params: params_doc(&r),
            index: r.idx.all().to_vec(),
            pi: g
                .pi
                .iter()
                .map(|row| row.iter().cloned().map(Int).collect())
                .collect(),
            vanishing,
            log2_max_pi: growth.log2_max,
        },
        deficiency: None,
    })
}

pub fn iterate(doc: &SystemDocument, c: &Common) -> Result<Outcome, CliError> {
    let r = resolve(doc, c)?;
    let (sys, series) = doc.bundle()?;
    let g =
        construct(&series, &r.idx, &r.params).map_err(|e| CliError::Validation(e.to_string()))?;
    let sc = build_a(&sys, &r.idx).map_err(|e| CliError::Validation(e.to_string()))?;
    let k_max = c.kmax.unwrap_or_else(|| default_kmax(&g));
    let table = iterate_bracket(&sc, &g, k_max);
    let integral = (1..=k_max).all(|k| table.bracket_integers(k).is_ok());
    let degree_bound_holds = table.degree_bound_holds();
    if !integral || !degree_bound_holds {
        return Err(CliError::Internal(
            "derivation table violates integrality or the degree bound".into(),
        ));
    }
    Ok(Outcome {
        summary: format!(
            "{}: k_max = {k_max}, T = {}z^{}, t = {}, integral",
            doc.name, sc.tau, sc.shift, sc.t
        ),
        artifact: Artifact::Iterate {
            name: doc.name.clone(),
            params: params_doc(&r),
            k_max,
            tau: Int(sc.tau.clone()),
            shift: sc.shift,
            t: sc.t,
            degree_bound_holds,
            integral,
            bracket: table
                .bracket
                .iter()
                .map(|row| row.iter().map(LaurentDoc::from_poly).collect())
                .collect(),
        },
        deficiency: None,
    })
}

fn deficiency(rank: usize, omega: usize, k_max: usize) -> Option<CliError> {
    (rank < omega).then_some(CliError::Deficient { rank, omega, k_max })
}

pub fn rank(doc: &SystemDocument, c: &Common) -> Result<Outcome, CliError> {
    let r = resolve(doc, c)?;
    let (sys, series) = doc.bundle()?;
    let (_, _, _, cert) = certify(&sys, &series, &r.cfg)?;
    let omega = r.idx.omega();
    let eval = (0..omega)
        .map(|i| {
            (0..cert.k_max)
                .map(|k| Q(cert.eval[(i, k)].clone()))
                .collect()
        })
        .collect();
    Ok(Outcome {
        summary: format!(
            "{}: rank {}/{} at k_max = {}, reached at {:?}, pair {:?}",
            doc.name, cert.rank, omega, cert.k_max, cert.reached_at, cert.pair
        ),
        deficiency: deficiency(cert.rank, omega, cert.k_max),
        artifact: Artifact::Rank {
            name: doc.name.clone(),
            params: params_doc(&r),
            k_max: cert.k_max,
            rank: cert.rank,
            full: cert.is_full(),
            eval,
            witness: cert.witness.clone(),
            pair: cert.pair,
            reached_at: cert.reached_at,
            identity_holds: cert.identity_holds(),
            prefix_ranks_bracket: cert.prefix_ranks_bracket,
            prefix_ranks_plain: cert.prefix_ranks_plain,
        },
    })
}

pub fn approx(doc: &SystemDocument, c: &Common) -> Result<Outcome, CliError> {
    let r = resolve(doc, c)?;
    let (sys, series) = doc.bundle()?;
    let out = run(&sys, &series, &r.cfg)?;
    let (a, b) = &out.pairs;
    let det = &a.p * &b.q - &a.q * &b.p;
    if det.is_zero() {
        return Err(CliError::Internal("pairs are collinear".into()));
    }
    let m_deg = r.params.m_deg;
    let profile = smallness_profile(&[(m_deg, a.clone()), (m_deg, b.clone())]);
    let best = profile
        .iter()
        .filter_map(|p| p.ratio)
        .fold(f64::INFINITY, f64::min);
    let pairs = [a, b]
        .iter()
        .map(|p| PairDoc {
            k: p.k,
            p: Int(p.p.clone()),
            q: Int(p.q.clone()),
            defect: BallDoc::new(&p.defect, 30),
        })
        .collect();
    Ok(Outcome {
        summary: format!(
            "{}: M = {m_deg}, pairs at k = {} and {}, best log|f-p/q|/log q = {best:.3}",
            doc.name, a.k, b.k
        ),
        deficiency: deficiency(out.certificate.rank, r.idx.omega(), out.certificate.k_max),
        artifact: Artifact::Approx {
            name: doc.name.clone(),
            params: params_doc(&r),
            k_max: out.certificate.k_max,
            rank: out.certificate.rank,
            precision_bits: out.precision,
            value: BallDoc::new(&out.f1, 40),
            pairs,
            determinant: Int(det),
            profile,
        },
    })
}

pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub summary: String,
    pub violations: usize,
}

pub fn thrat_sweep(
    samples: usize,
    dims: Option<Vec<usize>>,
    c: &Common,
) -> Result<SweepOutcome, CliError> {
    let m = c.m.unwrap_or(2);
    let n = c.n.unwrap_or(2);
    if m == 0 || n == 0 {
        return Err(CliError::Validation("m and N must be at least 1".into()));
    }
    let w = GradedIndex::new(m, n).omega();
    let dims = dims.unwrap_or_else(|| (0..=w).collect());
    if let Some(d) = dims.iter().find(|&&d| d > w) {
        return Err(CliError::Validation(format!(
            "dimension {d} exceeds omega = {w}"
        )));
    }
    let records = sweep(&SweepConfig::new(m, n, dims, samples, c.seed));
    let violations = records.iter().filter(|r| !r.consistent()).count();
    let strict = records.iter().filter(|r| r.strict).count();
    Ok(SweepOutcome {
        summary: format!(
            "m = {m}, N = {n}: {} samples, {strict} strict, {violations} violations",
            records.len()
        ),
        records,
        violations,
    })
}

/// Output directory: --out, else $EPADE_OUT_DIR (read by clap), else ".".
pub fn out_dir(c: &Common) -> PathBuf {
    c.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

pub fn write_artifact(dir: &Path, artifact: &Artifact) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(format!("{}.{}.json", artifact.name(), artifact.kind()));
    let text = ArtifactFile::new(artifact.clone()).to_json();
    std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

pub fn write_sweep(
    dir: &Path,
    m: usize,
    n: u32,
    records: &[SweepRecord],
) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(format!("thrat-m{m}-N{n}.jsonl"));
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r).expect("records serialize"));
        text.push('\n');
    }
    std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

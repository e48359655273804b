use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dims::check_inequality;
use super::frame::ThetaFrame;
use super::subspace::SubspaceBasis;
use crate::arith::format_rational;

/// One JSON line of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "dimR")]
    pub dim_r: usize,
    #[serde(rename = "dimFR")]
    pub dim_fr: usize,
    #[serde(rename = "dimFRK")]
    pub dim_frk: usize,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub strict: bool,
    pub trivial_or_full: bool,
    pub aux_holds: bool,
    pub seed: u64,
}

impl SweepRecord {
    pub fn consistent(&self) -> bool {
        self.holds && (self.strict || self.trivial_or_full)
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub m: usize,
    pub n: u32,
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub bound: i64,
}

impl SweepConfig {
    pub fn new(m: usize, n: u32, dims: Vec<usize>, samples: usize, seed: u64) -> Self {
        SweepConfig {
            m,
            n,
            dims,
            samples,
            seed,
            bound: 10,
        }
    }
}

/// Seed of sample `i` at dimension `dim`, independent of scheduling.
pub fn sample_seed(base: u64, dim: usize, i: usize) -> u64 {
    let mut z = base ^ ((dim as u64) << 32) ^ i as u64;
    // splitmix64 finaliser
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn sweep(cfg: &SweepConfig) -> Vec<SweepRecord> {
    let frame = ThetaFrame::new(cfg.m, cfg.n);
    let w = frame.index().omega();
    let jobs: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| (0..cfg.samples).map(move |i| (d, i)))
        .collect();
    jobs.par_iter()
        .map(|&(d, i)| {
            let seed = sample_seed(cfg.seed, d, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = SubspaceBasis::random(w, d, cfg.bound, &mut rng);
            let c = check_inequality(&frame, &r);
            SweepRecord {
                m: cfg.m,
                n: cfg.n,
                dim_r: c.dims.dim_r,
                dim_fr: c.dims.dim_fr,
                dim_frk: c.dims.dim_frk,
                lhs: format_rational(&c.lhs),
                rhs: format_rational(&c.rhs),
                holds: c.holds,
                strict: c.strict,
                trivial_or_full: c.trivial_or_full,
                aux_holds: c.aux_holds,
                seed,
            }
        })
        .collect()
}

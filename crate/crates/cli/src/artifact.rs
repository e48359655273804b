//! JSON artifacts written by the commands. Every artifact re-parses to an
//! equal value: rationals and integers are strings, floats are diagnostics.

use epade_core::arith::{Ball, Dyadic};
use epade_core::dioph::ProfileRow;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::doc::{LaurentDoc, Q};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M")]
    pub m_deg: usize,
    pub eta: Q,
    #[serde(rename = "K")]
    pub k: usize,
    pub omega: usize,
    pub theta: usize,
}

/// Exact midpoint and radius of a ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallDoc {
    pub mid: Q,
    pub rad: Q,
    pub precision_bits: u64,
    pub decimal: String,
}

impl BallDoc {
    pub fn new(b: &Ball, digits: usize) -> Self {
        BallDoc {
            mid: Q(b.mid().to_rational()),
            rad: Q(b.rad().to_rational()),
            precision_bits: b.precision(),
            decimal: b.mid_decimal(digits),
        }
    }

    pub fn to_ball(&self) -> Option<Ball> {
        let mid = Dyadic::from_rational_exact(&self.mid.0)?;
        let rad = Dyadic::from_rational_exact(&self.rad.0)?;
        Some(Ball::with_radius(mid, rad, self.precision_bits))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Int(#[serde(with = "int_string")] pub BigInt);

mod int_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse()
            .map_err(|_| D::Error::custom(format!("malformed integer {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalValue {
    pub series: usize,
    pub value: BallDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contains_expected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub continued_fraction: Option<CfDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfDoc {
    pub partial_quotients: Vec<Int>,
    pub rational: bool,
    pub truncated: bool,
    pub convergent_law: bool,
    pub max_mu: Option<f64>,
    pub tail_median: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingDoc {
    pub kappa: Vec<u32>,
    pub order: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDoc {
    pub k: usize,
    pub p: Int,
    pub q: Int,
    pub defect: BallDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Artifact {
    Eval {
        name: String,
        point: Q,
        precision_bits: u64,
        values: Vec<EvalValue>,
    },
    Pade {
        name: String,
        params: Params,
        index: Vec<Vec<u32>>,
        /// π_{κ,ν}: P_κ = Σ_ν π_{κ,ν} z^ν/ν!
        pi: Vec<Vec<Int>>,
        vanishing: Vec<VanishingDoc>,
        log2_max_pi: f64,
    },
    Iterate {
        name: String,
        params: Params,
        k_max: usize,
        tau: Int,
        shift: i64,
        t: usize,
        degree_bound_holds: bool,
        integral: bool,
        /// Row k−1 holds P^[k]_κ for κ in index order.
        bracket: Vec<Vec<LaurentDoc>>,
    },
    Rank {
        name: String,
        params: Params,
        k_max: usize,
        rank: usize,
        full: bool,
        /// Row κ, column k−1: P^[k]_κ(1).
        eval: Vec<Vec<Q>>,
        witness: Vec<usize>,
        pair: Option<(usize, usize)>,
        reached_at: Option<usize>,
        prefix_ranks_bracket: Vec<usize>,
        prefix_ranks_plain: Vec<usize>,
        identity_holds: bool,
    },
    Approx {
        name: String,
        params: Params,
        k_max: usize,
        rank: usize,
        precision_bits: u64,
        value: BallDoc,
        pairs: Vec<PairDoc>,
        determinant: Int,
        profile: Vec<ProfileRow>,
    },
}

impl Artifact {
    pub fn name(&self) -> &str {
        match self {
            Artifact::Eval { name, .. }
            | Artifact::Pade { name, .. }
            | Artifact::Iterate { name, .. }
            | Artifact::Rank { name, .. }
            | Artifact::Approx { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Eval { .. } => "eval",
            Artifact::Pade { .. } => "pade",
            Artifact::Iterate { .. } => "iterate",
            Artifact::Rank { .. } => "rank",
            Artifact::Approx { .. } => "approx",
        }
    }
}

/// What is written to disk: an artifact under a schema version.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArtifactFile {
    pub schema_version: crate::doc::SchemaVersion,
    #[serde(flatten)]
    pub artifact: Artifact,
}

impl ArtifactFile {
    pub fn new(artifact: Artifact) -> Self {
        ArtifactFile {
            schema_version: Default::default(),
            artifact,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifacts serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

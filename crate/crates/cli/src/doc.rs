use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use epade_core::arith::{
    format_rational, parse_rational, rat, LaurentMatrix, LaurentPoly, Poly, Rational,
};
use epade_core::efunc::{DiffSystem, ESeries, HypergeometricSpec, Recurrence};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A rational written as "p/q" or "p".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(Q)
            .map_err(|_| D::Error::custom(format!("malformed rational {s:?}")))
    }
}

impl From<Rational> for Q {
    fn from(q: Rational) -> Self {
        Q(q)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// A lower hypergeometric parameter: any rational except 0, −1, −2, …
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LowerParam(pub Q);

impl<'de> Deserialize<'de> for LowerParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let q = Q::deserialize(d)?;
        if q.0.is_integer() && q.0 <= rat(0, 1) {
            return Err(D::Error::custom(format!(
                "lower parameter {q} is a nonpositive integer"
            )));
        }
        Ok(LowerParam(q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SchemaVersion(pub u32);

impl<'de> Deserialize<'de> for SchemaVersion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u32::deserialize(d)?;
        if v != SCHEMA_VERSION {
            return Err(D::Error::custom(format!(
                "unsupported schema_version {v} (expected {SCHEMA_VERSION})"
            )));
        }
        Ok(SchemaVersion(v))
    }
}

impl Default for SchemaVersion {
    fn default() -> Self {
        SchemaVersion(SCHEMA_VERSION)
    }
}

/// Laurent polynomial as exponent → coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LaurentDoc(pub BTreeMap<i64, Q>);

// Keys arrive as strings, also when buffered inside a tagged enum.
impl<'de> Deserialize<'de> for LaurentDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, Q>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<i64>()
                    .map(|e| (e, v))
                    .map_err(|_| D::Error::custom(format!("malformed exponent {k:?}")))
            })
            .collect::<Result<_, _>>()
            .map(LaurentDoc)
    }
}

impl LaurentDoc {
    pub fn to_poly(&self) -> LaurentPoly {
        let terms: Vec<(i64, Rational)> = self.0.iter().map(|(e, c)| (*e, c.0.clone())).collect();
        LaurentPoly::from_terms(&terms)
    }

    pub fn from_poly(p: &LaurentPoly) -> Self {
        LaurentDoc(p.terms().map(|(e, c)| (e, Q(c.clone()))).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeriesSpec {
    /// Σ [(a)_n/(b)_n] scale^n z^{power·n}/(power·n)!
    Hypergeometric {
        #[serde(default)]
        upper: Vec<Q>,
        #[serde(default)]
        lower: Vec<LowerParam>,
        #[serde(default = "one")]
        scale: Q,
        #[serde(default = "one_u32")]
        power: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        growth_hint: Option<Q>,
    },
    /// Σ_j p_j(n) a_{n+j} = 0, polynomials given by ascending coefficients.
    Recurrence {
        coefficients: Vec<Vec<Q>>,
        initial: Vec<Q>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        growth_hint: Option<Q>,
    },
    /// Finitely many coefficients a_n (series Σ a_n z^n/n!).
    Closed { coefficients: Vec<Q> },
    /// The `order`-th derivative of an earlier entry.
    Derivative { of: usize, order: usize },
}

fn one() -> Q {
    Q(rat(1, 1))
}

fn one_u32() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub labels: Vec<String>,
    /// Row l holds S_{l,0}, S_{l,1}, …, S_{l,m}.
    pub rows: Vec<Vec<LaurentDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedValue {
    pub series: usize,
    pub at: Q,
    pub value: Q,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<ExpectedValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub schema_version: SchemaVersion,
    pub name: String,
    pub m: usize,
    pub series: Vec<SeriesSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    #[serde(default)]
    pub metadata: Metadata,
}

pub fn parse_system(path: &Path) -> Result<SystemDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_system_at(&text, path)
}

pub fn parse_system_str(text: &str) -> Result<SystemDocument, CliError> {
    parse_system_at(text, Path::new("<input>"))
}

fn parse_system_at(text: &str, path: &Path) -> Result<SystemDocument, CliError> {
    let doc: SystemDocument = serde_json::from_str(text).map_err(|e| CliError::parse(path, &e))?;
    doc.validate()?;
    Ok(doc)
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl SystemDocument {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.m == 0 {
            return Err(invalid("m must be at least 1"));
        }
        if self.series.len() < self.m {
            return Err(invalid(format!(
                "{} series given for m = {}",
                self.series.len(),
                self.m
            )));
        }
        for (i, s) in self.series.iter().enumerate() {
            if let SeriesSpec::Derivative { of, .. } = s {
                if *of >= i {
                    return Err(invalid(format!(
                        "series {i}: derivative of series {of}, which does not precede it"
                    )));
                }
            }
        }
        if let Some(sys) = &self.system {
            if sys.rows.len() != self.m || sys.rows.iter().any(|r| r.len() != self.m + 1) {
                return Err(invalid(format!(
                    "system must have {} rows of {} entries",
                    self.m,
                    self.m + 1
                )));
            }
            if sys.labels.len() != self.m {
                return Err(invalid(format!("system needs {} labels", self.m)));
            }
        }
        for e in &self.metadata.expected {
            if e.series >= self.series.len() {
                return Err(invalid(format!(
                    "expected value refers to missing series {}",
                    e.series
                )));
            }
        }
        self.build_series()?;
        self.diff_system()?;
        Ok(())
    }

    pub fn build_series(&self) -> Result<Vec<ESeries>, CliError> {
        let mut out: Vec<Arc<ESeries>> = Vec::with_capacity(self.series.len());
        for (i, s) in self.series.iter().enumerate() {
            let err = |e: epade_core::efunc::EfuncError| invalid(format!("series {i}: {e}"));
            let series = match s {
                SeriesSpec::Hypergeometric {
                    upper,
                    lower,
                    scale,
                    power,
                    growth_hint,
                } => {
                    let spec = HypergeometricSpec::new(
                        upper.iter().map(|q| q.0.clone()).collect(),
                        lower.iter().map(|q| q.0 .0.clone()).collect(),
                        scale.0.clone(),
                        *power,
                    )
                    .map_err(err)?;
                    with_hint(ESeries::hypergeometric(spec), growth_hint)
                }
                SeriesSpec::Recurrence {
                    coefficients,
                    initial,
                    growth_hint,
                } => {
                    let polys = coefficients
                        .iter()
                        .map(|c| Poly::new(c.iter().map(|q| q.0.clone()).collect()))
                        .collect();
                    let r = Recurrence::new(polys, initial.iter().map(|q| q.0.clone()).collect())
                        .map_err(err)?;
                    with_hint(ESeries::recurrence(r), growth_hint)
                }
                SeriesSpec::Closed { coefficients } => {
                    ESeries::closed(coefficients.iter().map(|q| q.0.clone()).collect())
                }
                SeriesSpec::Derivative { of, order } => ESeries::derivative(&out[*of], *order),
            };
            out.push(Arc::new(series));
        }
        Ok(out.into_iter().map(|a| (*a).clone()).collect())
    }

    pub fn diff_system(&self) -> Result<Option<DiffSystem>, CliError> {
        let Some(sys) = &self.system else {
            return Ok(None);
        };
        let rows = sys
            .rows
            .iter()
            .map(|r| r.iter().map(LaurentDoc::to_poly).collect())
            .collect();
        DiffSystem::new(LaurentMatrix::from_rows(rows), sys.labels.clone())
            .map(Some)
            .map_err(|e| invalid(format!("system: {e}")))
    }

    /// The system and the first m series, as the pipeline expects them.
    pub fn bundle(&self) -> Result<(DiffSystem, Vec<ESeries>), CliError> {
        let sys = self.diff_system()?.ok_or_else(|| {
            invalid(format!(
                "{}: document has no differential system",
                self.name
            ))
        })?;
        let mut series = self.build_series()?;
        series.truncate(self.m);
        Ok((sys, series))
    }
}

fn with_hint(s: ESeries, hint: &Option<Q>) -> ESeries {
    match hint {
        Some(h) => s.with_growth_hint(h.0.clone()),
        None => s,
    }
}

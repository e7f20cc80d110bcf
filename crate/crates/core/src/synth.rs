//! Synthetic evaluation records with planted latent structure.
//!
//! Each model has a latent ability vector over `k` traits and each dimension
//! loads on those traits with a unit-norm loading vector. A model's score on
//! instance `q` of dimension `d` is
//!
//! ```text
//! σ(a · (loadings_d · ability_m − b_q) + ε),   b_q ~ N(0, spread_d),  ε ~ N(0, noise)
//! ```
//!
//! optionally binarized by a Bernoulli draw. All randomness comes from seeds
//! derived from the spec seed, one stream per dimension.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datamodel::{EvalRecord, RecordSet};
use crate::error::{Error, Result};
use crate::rng;

pub const DEFAULT_BENCHMARK: &str = "synthetic";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionSpec {
    pub dimension_id: String,
    pub trait_loadings: Vec<f64>,
    pub n_instances: usize,
    #[serde(default)]
    pub difficulty_spread: f64,
    /// Overrides the spec-level benchmark id, for multi-benchmark fixtures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmark_id: Option<String>,
}

/// Fully resolved generator input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub n_models: usize,
    /// `n_models × k` latent abilities.
    pub abilities: Vec<Vec<f64>>,
    pub dimensions: Vec<DimensionSpec>,
    pub noise: f64,
    pub seed: u64,
    pub discrimination: f64,
    #[serde(default)]
    pub binarize: bool,
    #[serde(default = "default_benchmark")]
    pub benchmark_id: String,
}

fn default_benchmark() -> String {
    DEFAULT_BENCHMARK.to_owned()
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

impl SynthSpec {
    pub fn n_traits(&self) -> usize {
        self.abilities.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_models < 3 {
            return Err(invalid(format!(
                "n_models must be at least 3, got {}",
                self.n_models
            )));
        }
        if self.abilities.len() != self.n_models {
            return Err(invalid(format!(
                "{} ability vectors for {} models",
                self.abilities.len(),
                self.n_models
            )));
        }
        let k = self.n_traits();
        if k == 0 || self.abilities.iter().any(|a| a.len() != k) {
            return Err(invalid("ability vectors must share a positive length"));
        }
        if self.abilities.iter().flatten().any(|v| !v.is_finite()) {
            return Err(invalid("abilities must be finite"));
        }
        if self.dimensions.is_empty() {
            return Err(invalid("at least one dimension is required"));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(invalid("noise must be a finite non-negative number"));
        }
        if !(self.discrimination > 0.0 && self.discrimination.is_finite()) {
            return Err(invalid("discrimination must be positive"));
        }
        for d in &self.dimensions {
            if d.trait_loadings.len() != k {
                return Err(invalid(format!(
                    "dimension '{}' has {} loadings for {k} traits",
                    d.dimension_id,
                    d.trait_loadings.len()
                )));
            }
            let norm = d.trait_loadings.iter().map(|l| l * l).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(invalid(format!(
                    "dimension '{}' loadings have norm {norm}, expected 1",
                    d.dimension_id
                )));
            }
            if d.n_instances == 0 {
                return Err(invalid(format!(
                    "dimension '{}' has no instances",
                    d.dimension_id
                )));
            }
            if !(d.difficulty_spread >= 0.0 && d.difficulty_spread.is_finite()) {
                return Err(invalid(format!(
                    "dimension '{}' has a negative difficulty spread",
                    d.dimension_id
                )));
            }
        }
        Ok(())
    }

    pub fn model_ids(&self) -> Vec<String> {
        let width = self.n_models.to_string().len();
        (0..self.n_models)
            .map(|i| format!("m{i:0width$}"))
            .collect()
    }
}

/// Scales `v` to unit L2 norm.
pub fn unit(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

fn normal(std: f64) -> Result<Normal<f64>> {
    Normal::new(0.0, std).map_err(|e| invalid(e.to_string()))
}

/// Generates the record set described by `spec`.
pub fn generate(spec: &SynthSpec) -> Result<RecordSet> {
    spec.validate()?;
    let models = spec.model_ids();
    let per_dim: Vec<Vec<EvalRecord>> = spec
        .dimensions
        .par_iter()
        .enumerate()
        .map(|(di, dim)| generate_dimension(spec, &models, di, dim))
        .collect::<Result<_>>()?;
    RecordSet::from_records(per_dim.into_iter().flatten())
}

fn generate_dimension(
    spec: &SynthSpec,
    models: &[String],
    di: usize,
    dim: &DimensionSpec,
) -> Result<Vec<EvalRecord>> {
    let mut rng = rng::stream(spec.seed, &[1, di as u64]);
    let difficulty = normal(dim.difficulty_spread)?;
    let noise = normal(spec.noise)?;
    let benchmark = dim.benchmark_id.as_deref().unwrap_or(&spec.benchmark_id);
    let width = dim.n_instances.to_string().len();

    let signal: Vec<f64> = spec
        .abilities
        .iter()
        .map(|a| a.iter().zip(&dim.trait_loadings).map(|(x, l)| x * l).sum())
        .collect();

    let mut out = Vec::with_capacity(dim.n_instances * models.len());
    for q in 0..dim.n_instances {
        let b = difficulty.sample(&mut rng);
        let instance = format!("{}-q{q:0width$}", dim.dimension_id);
        for (m, s) in models.iter().zip(&signal) {
            let eps = noise.sample(&mut rng);
            let p = logistic(spec.discrimination * (s - b) + eps).clamp(0.0, 1.0);
            let score = if spec.binarize {
                if rng.random::<f64>() < p {
                    1.0
                } else {
                    0.0
                }
            } else {
                p
            };
            out.push(EvalRecord {
                model_id: m.clone(),
                benchmark_id: benchmark.to_owned(),
                dimension_id: dim.dimension_id.clone(),
                instance_id: instance.clone(),
                score,
            });
        }
    }
    Ok(out)
}

/// How latent abilities are produced for a [`SynthConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AbilityModel {
    /// Given explicitly, one vector per model.
    Explicit { values: Vec<Vec<f64>> },
    /// Independent `N(0, std)` per trait.
    Gaussian {
        traits: usize,
        #[serde(default = "one")]
        std: f64,
    },
    /// Groups of models, each with a shared general factor `g ~ N(mean, general_std)`
    /// added to every trait plus trait-specific `N(0, specific_std)` deviations.
    Tiered { traits: usize, tiers: Vec<Tier> },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tier {
    pub count: usize,
    pub general_mean: f64,
    pub general_std: f64,
    pub specific_std: f64,
}

impl AbilityModel {
    fn n_models(&self, declared: Option<usize>) -> Result<usize> {
        let implied = match self {
            AbilityModel::Explicit { values } => Some(values.len()),
            AbilityModel::Tiered { tiers, .. } => Some(tiers.iter().map(|t| t.count).sum()),
            AbilityModel::Gaussian { .. } => None,
        };
        match (declared, implied) {
            (Some(d), Some(i)) if d != i => Err(invalid(format!(
                "n_models {d} disagrees with abilities ({i} models)"
            ))),
            (Some(d), _) => Ok(d),
            (None, Some(i)) => Ok(i),
            (None, None) => Err(invalid("n_models is required for gaussian abilities")),
        }
    }

    /// Draws abilities from the stream reserved for them under `seed`.
    pub fn sample(&self, n_models: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        let mut rng = rng::stream(seed, &[0]);
        match self {
            AbilityModel::Explicit { values } => Ok(values.clone()),
            AbilityModel::Gaussian { traits, std } => {
                let dist = normal(*std)?;
                Ok((0..n_models)
                    .map(|_| (0..*traits).map(|_| dist.sample(&mut rng)).collect())
                    .collect())
            }
            AbilityModel::Tiered { traits, tiers } => {
                let mut out = Vec::with_capacity(n_models);
                for tier in tiers {
                    let general = normal(tier.general_std)?;
                    let specific = normal(tier.specific_std)?;
                    for _ in 0..tier.count {
                        let g = tier.general_mean + general.sample(&mut rng);
                        out.push(
                            (0..*traits)
                                .map(|_| g + specific.sample(&mut rng))
                                .collect(),
                        );
                    }
                }
                Ok(out)
            }
        }
    }
}

/// The on-disk generator description read by the `synth` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    #[serde(default)]
    pub n_models: Option<usize>,
    pub abilities: AbilityModel,
    pub dimensions: Vec<DimensionSpec>,
    #[serde(default)]
    pub noise: f64,
    #[serde(default = "one")]
    pub discrimination: f64,
    #[serde(default)]
    pub binarize: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_benchmark")]
    pub benchmark_id: String,
}

impl SynthConfig {
    /// Resolves abilities into a [`SynthSpec`], with `seed` overriding the
    /// configured seed when given.
    pub fn resolve(&self, seed: Option<u64>) -> Result<SynthSpec> {
        let seed = seed.unwrap_or(self.seed);
        let n_models = self.abilities.n_models(self.n_models)?;
        let spec = SynthSpec {
            n_models,
            abilities: self.abilities.sample(n_models, seed)?,
            dimensions: self.dimensions.clone(),
            noise: self.noise,
            seed,
            discrimination: self.discrimination,
            binarize: self.binarize,
            benchmark_id: self.benchmark_id.clone(),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Writes records in the standard CSV record format, in generation order.
pub fn to_csv(records: &RecordSet) -> String {
    let mut out = String::from("model,benchmark,dimension,instance,score\n");
    for r in records.records() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.model_id, r.benchmark_id, r.dimension_id, r.instance_id, r.score
        ));
    }
    out
}

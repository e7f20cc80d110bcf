//! Frozen synthetic fixtures. Seeds and parameters are fixed; bounds asserted
//! on them were established by running the oracle first.

use benchred::synth::{generate, unit, AbilityModel, DimensionSpec, SynthConfig, Tier};
use benchred::RecordSet;

pub fn dim(id: &str, loadings: &[f64], n: usize, spread: f64) -> DimensionSpec {
    DimensionSpec {
        dimension_id: id.into(),
        trait_loadings: unit(loadings),
        n_instances: n,
        difficulty_spread: spread,
        benchmark_id: None,
    }
}

pub fn in_benchmark(mut d: DimensionSpec, benchmark: &str) -> DimensionSpec {
    d.benchmark_id = Some(benchmark.into());
    d
}

pub fn build(config: &SynthConfig) -> RecordSet {
    generate(&config.resolve(None).unwrap()).unwrap()
}

/// 200 models, noise 0: `shared_a` and `shared_b` load on trait 0,
/// `orthogonal` on trait 1. 500 instances per dimension.
pub fn planted_dims() -> SynthConfig {
    SynthConfig {
        n_models: Some(200),
        abilities: AbilityModel::Gaussian {
            traits: 2,
            std: 1.0,
        },
        dimensions: vec![
            dim("shared_a", &[1.0, 0.0], 500, 1.0),
            dim("shared_b", &[1.0, 0.0], 500, 1.0),
            dim("orthogonal", &[0.0, 1.0], 500, 1.0),
        ],
        noise: 0.0,
        discrimination: 1.0,
        binarize: false,
        seed: 42,
        benchmark_id: "planted".into(),
    }
}

/// Four benchmarks over 100 models. `alpha`, `beta` and `gamma` share trait 0
/// plus a small private trait each; `noise` loads only on an unrelated trait.
pub fn planted_cross() -> SynthConfig {
    SynthConfig {
        n_models: Some(100),
        abilities: AbilityModel::Gaussian {
            traits: 5,
            std: 1.0,
        },
        dimensions: vec![
            in_benchmark(dim("a", &[1.0, 0.4, 0.0, 0.0, 0.0], 150, 1.0), "alpha"),
            in_benchmark(dim("b", &[1.0, 0.0, 0.4, 0.0, 0.0], 150, 1.0), "beta"),
            in_benchmark(dim("g", &[1.0, 0.0, 0.0, 0.4, 0.0], 150, 1.0), "gamma"),
            in_benchmark(dim("n", &[0.0, 0.0, 0.0, 0.0, 1.0], 150, 1.0), "noise"),
        ],
        noise: 0.5,
        discrimination: 1.0,
        binarize: false,
        seed: 42,
        benchmark_id: "unused".into(),
    }
}

/// Two tiers of 50 models. Each dimension loads on its own trait; every
/// trait is `g + specific`. The bottom tier varies mostly in the shared
/// factor `g`, the top tier mostly in the specific traits.
pub fn tiered() -> SynthConfig {
    SynthConfig {
        n_models: None,
        abilities: AbilityModel::Tiered {
            traits: 4,
            tiers: vec![
                Tier {
                    count: 50,
                    general_mean: 2.0,
                    general_std: 0.2,
                    specific_std: 0.6,
                },
                Tier {
                    count: 50,
                    general_mean: -2.0,
                    general_std: 0.6,
                    specific_std: 0.2,
                },
            ],
        },
        dimensions: vec![
            dim("d0", &[1.0, 0.0, 0.0, 0.0], 100, 1.0),
            dim("d1", &[0.0, 1.0, 0.0, 0.0], 100, 1.0),
            dim("d2", &[0.0, 0.0, 1.0, 0.0], 100, 1.0),
            dim("d3", &[0.0, 0.0, 0.0, 1.0], 100, 1.0),
        ],
        noise: 0.3,
        discrimination: 1.0,
        binarize: false,
        seed: 42,
        benchmark_id: "tiered".into(),
    }
}

/// Independent binary items: one trait, `n_models × n_instances`.
pub fn iid(n_models: usize, n_instances: usize) -> SynthConfig {
    SynthConfig {
        n_models: Some(n_models),
        abilities: AbilityModel::Gaussian {
            traits: 1,
            std: 1.0,
        },
        dimensions: vec![dim("all", &[1.0], n_instances, 1.0)],
        noise: 0.0,
        discrimination: 1.0,
        binarize: true,
        seed: 42,
        benchmark_id: "iid".into(),
    }
}

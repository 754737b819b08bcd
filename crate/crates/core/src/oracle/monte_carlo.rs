use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, RunError};
use crate::model::FloatSpec;

/// Sample budget and seeding. Samples are split into chunks of `chunk_size`; chunk `i`
/// draws from the ChaCha8 stream `i` of `seed`, so the estimate depends only on
/// `(seed, samples, chunk_size)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    samples: u64,
    seed: u64,
    chunk_size: u64,
}

impl McConfig {
    pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 14;

    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        Self::with_chunk_size(samples, seed, Self::DEFAULT_CHUNK_SIZE)
    }

    pub fn with_chunk_size(samples: u64, seed: u64, chunk_size: u64) -> Result<Self> {
        if samples == 0 {
            return Err(RunError::InvalidConfig("samples must be at least 1"));
        }
        if chunk_size == 0 {
            return Err(RunError::InvalidConfig("chunk size must be at least 1"));
        }
        Ok(Self { samples, seed, chunk_size })
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunk_size(&self) -> u64 {
        self.chunk_size
    }

    fn chunks(&self) -> u64 {
        self.samples.div_ceil(self.chunk_size)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub samples: u64,
    /// `sqrt(estimate (1 - estimate) / samples)`
    pub std_error: f64,
}

impl McEstimate {
    fn from_hits(hits: u64, samples: u64) -> Self {
        let estimate = hits as f64 / samples as f64;
        let std_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
        Self { estimate, samples, std_error }
    }
}

fn chunk_hits(spec: &FloatSpec, r: u64, cfg: &McConfig, chunk: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chunk);
    let start = chunk * cfg.chunk_size;
    let len = cfg.chunk_size.min(cfg.samples - start);
    let p = *spec.p();
    let mut hits = 0;
    for _ in 0..len {
        let mut run = 0;
        for _ in 0..spec.n() {
            if rng.gen::<f64>() < p {
                run += 1;
                if run >= r {
                    hits += 1;
                    break;
                }
            } else {
                run = 0;
            }
        }
    }
    hits
}

/// Fraction of simulated sequences whose longest run is at least `r`, on the global
/// rayon pool.
///
/// # Panics
/// If `r == 0`.
pub fn monte_carlo_y(spec: &FloatSpec, r: u64, cfg: &McConfig) -> McEstimate {
    assert!(r >= 1, "run length must be at least 1");
    let hits: u64 = (0..cfg.chunks()).into_par_iter().map(|c| chunk_hits(spec, r, cfg, c)).sum();
    McEstimate::from_hits(hits, cfg.samples)
}

/// Same as [`monte_carlo_y`] on a dedicated pool of `workers` threads.
pub fn monte_carlo_y_with_workers(spec: &FloatSpec, r: u64, cfg: &McConfig, workers: usize) -> Result<McEstimate> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|_| RunError::InvalidConfig("could not start worker pool"))?;
    Ok(pool.install(|| monte_carlo_y(spec, r, cfg)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u64, p: f64) -> FloatSpec {
        FloatSpec::new(n, p).unwrap()
    }

    #[test]
    fn certain_and_impossible() {
        let cfg = McConfig::new(100, 1).unwrap();
        assert_eq!(monte_carlo_y(&spec(5, 1.0), 5, &cfg).estimate, 1.0);
        assert_eq!(monte_carlo_y(&spec(5, 0.0), 1, &cfg).estimate, 0.0);
        assert_eq!(monte_carlo_y(&spec(5, 0.0), 1, &cfg).std_error, 0.0);
        assert_eq!(monte_carlo_y(&spec(3, 0.7), 4, &cfg).estimate, 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(McConfig::new(0, 1).is_err());
        assert!(McConfig::with_chunk_size(10, 1, 0).is_err());
        assert_eq!(McConfig::with_chunk_size(10, 1, 3).unwrap().chunks(), 4);
    }

    #[test]
    fn reproducible_across_workers() {
        let cfg = McConfig::with_chunk_size(20_000, 7, 1000).unwrap();
        let s = spec(12, 0.4);
        let base = monte_carlo_y(&s, 3, &cfg);
        for workers in [1, 3] {
            assert_eq!(monte_carlo_y_with_workers(&s, 3, &cfg, workers).unwrap(), base);
        }
        let other = monte_carlo_y(&s, 3, &McConfig::with_chunk_size(20_000, 8, 1000).unwrap());
        assert_ne!(other.estimate, base.estimate);
    }

    #[test]
    fn partial_last_chunk() {
        let cfg = McConfig::with_chunk_size(1001, 3, 100).unwrap();
        let est = monte_carlo_y(&spec(4, 1.0), 2, &cfg);
        assert_eq!(est.samples, 1001);
        assert_eq!(est.estimate, 1.0);
    }

    #[test]
    fn close_to_exact() {
        let cfg = McConfig::new(200_000, 42).unwrap();
        let est = monte_carlo_y(&spec(10, 0.5), 3, &cfg);
        assert!((est.estimate - 65.0 / 128.0).abs() <= 4.0 * est.std_error, "{est:?}");
    }
}

//! Run configuration and size guards.

/// Hard limits that turn runaway computations into clean errors.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum number of jet rows C(k+t, k).
    pub max_jet_rows: usize,
    /// Maximum number of Plücker coordinates C(N+1, d_s+1).
    pub max_plucker_coords: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_jet_rows: 256,
            max_plucker_coords: 10_000,
        }
    }
}

/// Configuration for the verification suite and the sampling protocol.
#[derive(Clone, Debug)]
pub struct Config {
    /// Highest jet order analyzed (t runs up to this value).
    pub max_order: usize,
    /// Base seed for the deterministic sampling streams.
    pub seed: u64,
    /// Number of sample points; generic ranks are maxima over the samples.
    pub samples: usize,
    /// Magnitude bound for sampled numerators and denominators.
    pub bound: u64,
    pub limits: Limits,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_order: 3,
            seed: 0,
            samples: 3,
            bound: 10,
            limits: Limits::default(),
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Config { seed, ..Config::default() }
    }

    pub fn validate(&self) -> crate::error::Result<()> {
        if self.max_order < 2 {
            return Err(crate::error::Error::Usage(
                "max_order must be at least 2".into(),
            ));
        }
        if self.samples < 1 {
            return Err(crate::error::Error::Usage(
                "samples must be at least 1".into(),
            ));
        }
        if self.bound < 2 {
            return Err(crate::error::Error::Usage("bound must be at least 2".into()));
        }
        Ok(())
    }
}

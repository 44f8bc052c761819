//! Witness constructions and their certificates.
//!
//! A witness is a set of explicit polynomials `g, h, e_0, ..., F` together
//! with the data (`rho`, the scalings `lambda`, `mu`) that makes every
//! hypothesis checkable without search. [`build_witness`] constructs one
//! and runs the full battery of checks. [`verify_certificate`] reruns the
//! checks from a stored certificate.

mod build;
mod certificate;
mod checks;
mod oracle;

pub use build::{
    build_conic_witness, build_double_cover_witness, build_witness, build_witness_hypersurface,
    choose_rho, default_h,
};
pub use certificate::{
    read_certificate, verify_certificate, write_certificate_atomic, Certificate, CheckRecord,
    Conclusion, ParamsRecord, PolynomialsRecord, ScalingsRecord, Verdict, VerifyReport,
    VerifyVerdict, SCHEMA_VERSION,
};
pub use checks::{check_names, WitnessData};
pub use oracle::{
    run_oracle, OracleProblem, OracleReport, DEFAULT_ORACLE_PRIME, DEFAULT_SAMPLES, DEFAULT_SEED,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ceil_half, GVariant};

/// Largest `n` accepted by the builders.
pub const MAX_WITNESS_DIM: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Hypersurface,
    DoubleCover,
    ConicBundle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessParams {
    pub variant: Variant,
    pub n: usize,
    pub r: usize,
    /// `None` exactly for conic bundles.
    pub d: Option<u32>,
    pub g_variant: GVariant,
    /// Linear form `h`; `x0 + x1` when absent.
    pub h: Option<String>,
    pub seed: u64,
    pub samples: usize,
}

impl WitnessParams {
    fn with_defaults(variant: Variant, n: usize, r: usize, d: Option<u32>) -> Self {
        Self {
            variant,
            n,
            r,
            d,
            g_variant: GVariant::Parametric,
            h: None,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn hypersurface(n: usize, r: usize, d: u32) -> Self {
        Self::with_defaults(Variant::Hypersurface, n, r, Some(d))
    }

    pub fn double_cover(n: usize, r: usize, d: u32) -> Self {
        Self::with_defaults(Variant::DoubleCover, n, r, Some(d))
    }

    /// Conic bundle over `P^{N-1}` of total dimension `N`.
    pub fn conic(dim: usize) -> Self {
        Self::with_defaults(Variant::ConicBundle, dim.saturating_sub(1), 1, None)
    }

    pub fn with_g_variant(mut self, g_variant: GVariant) -> Self {
        self.g_variant = g_variant;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_h(mut self, h: impl Into<String>) -> Self {
        self.h = Some(h.into());
        self
    }

    /// Prime used by the oracle: the field's own for finite-field `g`.
    pub fn oracle_prime(&self) -> u64 {
        match self.g_variant {
            GVariant::FiniteField { p } => p,
            _ => DEFAULT_ORACLE_PRIME,
        }
    }

    /// Rejects infeasible parameters, naming the violated inequality.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let infeasible = |s: &str| Err(Error::Infeasible(s.to_string()));
        if n < 2 {
            return match self.variant {
                Variant::ConicBundle => infeasible("N ≥ 3"),
                _ => infeasible("n ≥ 2"),
            };
        }
        if n > MAX_WITNESS_DIM {
            return Err(Error::Infeasible(format!("n ≤ {MAX_WITNESS_DIM}")));
        }
        self.g_variant.validate()?;
        if self.r < 1 {
            return infeasible("r ≥ 1");
        }
        let r_max = (1usize << n) - 2;
        if self.r > r_max {
            return infeasible("r ≤ 2^n − 2");
        }
        match (self.variant, self.d) {
            (Variant::ConicBundle, None) => {
                if self.r != 1 {
                    return infeasible("r = 1");
                }
            }
            (Variant::ConicBundle, Some(_)) => return infeasible("conic bundles take no degree"),
            (_, None) => return infeasible("degree d given"),
            (Variant::Hypersurface, Some(d)) => {
                if (d as usize) < n + 2 {
                    return infeasible("d ≥ n + 2");
                }
            }
            (Variant::DoubleCover, Some(d)) => {
                if d % 2 == 1 {
                    return infeasible("d even");
                }
                if (d as usize) < 2 * ceil_half(n + 1) + 2 {
                    return infeasible("d ≥ 2⌈(n+1)/2⌉ + 2");
                }
            }
        }
        if matches!(self.g_variant, GVariant::FiniteField { .. }) && self.r != r_max {
            return infeasible("r = 2^n − 2 for finite-field g");
        }
        if self.samples == 0 {
            return infeasible("samples ≥ 1");
        }
        Ok(())
    }
}

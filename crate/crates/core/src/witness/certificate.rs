//! Certificate documents: JSON layout, atomic writing and verification.

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use super::checks::CheckRecord;
use super::checks::{CheckOutcome, WitnessData};
use super::oracle::OracleReport;
use super::{Variant, WitnessParams};
use crate::error::{Error, Result};
use crate::poly::{Field, GVariant, Poly};
use crate::squareclass::SquareClass;
use crate::symbol::ResidueCertificateRecord;

pub const SCHEMA_VERSION: &str = "irratio-cert/1";
const RHO_FILL: &str = "pinned slots, then graded-lex";
const CONCLUSION_LABEL: &str = "CITED-THEOREM";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsRecord {
    pub variant: Variant,
    pub n: usize,
    pub r: usize,
    pub d: Option<u32>,
    pub g_variant: GVariant,
    pub field: Field,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialsRecord {
    pub g: String,
    pub h: Option<String>,
    pub e: Vec<String>,
    #[serde(rename = "F")]
    pub f: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingsRecord {
    pub lambda: Option<String>,
    pub mu: Option<String>,
    pub unit_slot: Option<usize>,
}

/// The geometric statement that the checked hypotheses feed into. It is
/// cited, not machine-checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conclusion {
    pub label: String,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema_version: String,
    pub params: ParamsRecord,
    pub rho: Vec<String>,
    pub rho_fill: String,
    pub polynomials: PolynomialsRecord,
    pub scalings: ScalingsRecord,
    pub checks: Vec<CheckRecord>,
    pub alpha_certificate: ResidueCertificateRecord,
    pub oracle: OracleReport,
    pub conclusion: Conclusion,
    pub verdict: Verdict,
}

fn conclusion(params: &WitnessParams) -> Conclusion {
    let (n, r) = (params.n, params.r);
    let statement = match (params.variant, params.g_variant) {
        (Variant::Hypersurface, GVariant::FiniteField { .. }) => format!(
            "for every d ≥ {} a smooth hypersurface of degree {} in P^{} over a field of odd or \
             zero characteristic (of positive transcendence degree if positive) has no integral \
             decomposition of the diagonal over the algebraic closure",
            n + 2,
            params.d.unwrap_or(0),
            n + r + 1
        ),
        (Variant::Hypersurface, _) => format!(
            "a very general hypersurface of degree {} in P^{} is not stably rational",
            params.d.unwrap_or(0),
            n + r + 1
        ),
        (Variant::DoubleCover, _) => format!(
            "a double cover of P^{} branched along a very general hypersurface of degree {} is \
             not stably rational",
            n + r,
            params.d.unwrap_or(0)
        ),
        (Variant::ConicBundle, _) => format!(
            "the conic bundle over P^{n} is a unirational {}-fold with nonzero unramified \
             H^{n}(-, Z/2), hence not stably rational",
            n + 1
        ),
    };
    Conclusion {
        label: CONCLUSION_LABEL.to_string(),
        statement,
    }
}

/// Runs the checks on freshly built data and packs the certificate.
pub(crate) fn assemble(data: &WitnessData) -> Result<Certificate> {
    let CheckOutcome {
        checks,
        oracle,
        alpha,
    } = data.run_checks()?;
    let verdict = if checks.iter().all(|c| c.passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let p = &data.params;
    Ok(Certificate {
        schema_version: SCHEMA_VERSION.to_string(),
        params: ParamsRecord {
            variant: p.variant,
            n: p.n,
            r: p.r,
            d: p.d,
            g_variant: p.g_variant,
            field: data.g.field(),
        },
        rho: data.rho.clone(),
        rho_fill: RHO_FILL.to_string(),
        polynomials: PolynomialsRecord {
            g: data.g.to_string(),
            h: data.h.as_ref().map(Poly::to_string),
            e: data.e.iter().map(Poly::to_string).collect(),
            f: data.f.as_ref().map(Poly::to_string),
        },
        scalings: ScalingsRecord {
            lambda: data.lambda.as_ref().map(SquareClass::to_string),
            mu: data.mu.as_ref().map(SquareClass::to_string),
            unit_slot: data.unit_slot,
        },
        checks,
        alpha_certificate: alpha,
        oracle,
        conclusion: conclusion(p),
        verdict,
    })
}

fn schema<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| Error::Schema(format!("{what}: {e}")))
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Parses the stored polynomials and scalings.
    pub fn to_data(&self) -> Result<WitnessData> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema version `{}`",
                self.schema_version
            )));
        }
        let pr = &self.params;
        let params = WitnessParams {
            variant: pr.variant,
            n: pr.n,
            r: pr.r,
            d: pr.d,
            g_variant: pr.g_variant,
            h: None,
            seed: self.oracle.seed,
            samples: self.oracle.samples,
        };
        schema(params.validate(), "params")?;
        let ring = pr.g_variant.ring(pr.n);
        if ring.field != pr.field {
            return Err(Error::Schema("field does not match the g variant".into()));
        }
        if self.oracle.p != params.oracle_prime() {
            return Err(Error::Schema(
                "oracle prime does not match the g variant".into(),
            ));
        }
        let polys = &self.polynomials;
        let g = schema(Poly::parse(&polys.g, ring), "g")?;
        let h = polys
            .h
            .as_deref()
            .map(|s| schema(Poly::parse(s, ring), "h"))
            .transpose()?;
        let e = polys
            .e
            .iter()
            .enumerate()
            .map(|(i, s)| schema(Poly::parse(s, ring), &format!("e{i}")))
            .collect::<Result<Vec<_>>>()?;
        let f = match (&polys.f, e.len()) {
            (None, _) => None,
            (Some(_), 0) => return Err(Error::Schema("F without coefficients e_i".into())),
            (Some(s), k) => Some(schema(Poly::parse(s, ring.with_y(k - 1)), "F")?),
        };
        let class = |s: &Option<String>, what: &str| {
            s.as_deref()
                .map(|s| schema(SquareClass::parse(s, pr.n), what))
                .transpose()
        };
        Ok(WitnessData {
            params,
            rho: self.rho.clone(),
            g,
            h,
            e,
            f,
            lambda: class(&self.scalings.lambda, "lambda")?,
            mu: class(&self.scalings.mu, "mu")?,
            unit_slot: self.scalings.unit_slot,
        })
    }

    /// Pretty-printed JSON with a trailing newline. Field order is fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

pub fn read_certificate(path: &Path) -> Result<Certificate> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Certificate::from_json(&text)
}

/// Writes to a temporary file in the target directory, then renames.
pub fn write_certificate_atomic(path: &Path, cert: &Certificate) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(cert.to_json().as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerifyVerdict {
    Pass,
    Fail,
    Tampered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub verdict: VerifyVerdict,
    /// Recomputed checks that failed, in order.
    pub failed: Vec<String>,
    /// Recorded items that disagree with the recomputation.
    pub mismatched: Vec<String>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&str> {
        self.failed.first().map(String::as_str)
    }
}

/// Recomputes every check from the stored data.
///
/// A verdict that contradicts the recorded checks is `TAMPERED`. Otherwise
/// any failing recomputed check gives `FAIL`, and any other disagreement
/// between record and recomputation gives `TAMPERED`.
pub fn verify_certificate(cert: &Certificate) -> Result<VerifyReport> {
    let data = cert.to_data()?;
    let recorded_ok = cert.checks.iter().all(|c| c.passed);
    if recorded_ok != cert.passed() {
        return Ok(VerifyReport {
            verdict: VerifyVerdict::Tampered,
            failed: Vec::new(),
            mismatched: vec!["verdict".into()],
        });
    }
    let fresh = data.run_checks()?;
    let failed: Vec<String> = fresh
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.clone())
        .collect();

    let mut mismatched = Vec::new();
    if fresh.checks.len() != cert.checks.len() {
        mismatched.push("checks".to_string());
    }
    for (a, b) in fresh.checks.iter().zip(&cert.checks) {
        if a != b {
            mismatched.push(format!("check {}", b.name));
        }
    }
    if fresh.oracle != cert.oracle {
        mismatched.push("oracle".into());
    }
    if fresh.alpha != cert.alpha_certificate {
        mismatched.push("alpha_certificate".into());
    }
    if conclusion(&data.params) != cert.conclusion {
        mismatched.push("conclusion".into());
    }
    if cert.rho_fill != RHO_FILL {
        mismatched.push("rho_fill".into());
    }

    let verdict = if !failed.is_empty() {
        VerifyVerdict::Fail
    } else if !mismatched.is_empty() {
        VerifyVerdict::Tampered
    } else {
        VerifyVerdict::Pass
    };
    Ok(VerifyReport {
        verdict,
        failed,
        mismatched,
    })
}

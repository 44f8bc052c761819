//! The check battery, shared by the builders and the verifier.

use serde::{Deserialize, Serialize};

use super::oracle::{run_oracle, OracleProblem, OracleReport};
use super::{Variant, WitnessParams};
use crate::error::{Error, Result};
use crate::poly::{
    check_cond_pure_powers, check_cond_square_mod_coords, class_of_entry, degeneration_class,
    is_square_up_to_constant, jacobian_vanishes_on_plane, structured_coprimality, GVariant, Poly,
    Ring,
};
use crate::quadform::{
    all_ones, conic_target, is_scaled_isometry, is_scaled_subform, pfister_form, q_form, support,
    t0_isotropy_check, DiagonalForm, RhoMap,
};
use crate::squareclass::SquareClass;
use crate::symbol::{certify_alpha_nonzero, ResidueCertificateRecord, ResidueVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything a certificate stores, in parsed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessData {
    pub params: WitnessParams,
    pub rho: Vec<String>,
    pub g: Poly,
    pub h: Option<Poly>,
    /// `e_0, ..., e_{r+1}` for hypersurfaces, `e_0, ..., e_r` for double
    /// covers, empty for conic bundles.
    pub e: Vec<Poly>,
    pub f: Option<Poly>,
    pub lambda: Option<SquareClass>,
    pub mu: Option<SquareClass>,
    /// Slot `u` with `c_u = x1 x2` matched by the unit coefficient of a
    /// double cover.
    pub unit_slot: Option<usize>,
}

pub struct CheckOutcome {
    pub checks: Vec<CheckRecord>,
    pub oracle: OracleReport,
    pub alpha: ResidueCertificateRecord,
}

/// Names of the checks run for a variant, in order.
pub fn check_names(variant: Variant, g_variant: GVariant) -> Vec<&'static str> {
    let last = match g_variant {
        GVariant::FiniteField { .. } => "full_rank_q",
        _ => "t0_isotropy",
    };
    match variant {
        Variant::Hypersurface => vec![
            "rho_bijection",
            "c1_pin",
            "pure_powers",
            "square_mod_coordinates",
            "b_not_square",
            "q_similar_to_e_form",
            "e_subform_of_pfister",
            "coprime",
            last,
            "alpha_nonzero",
            "plane_multiplicity",
            "f_assembly",
            "oracle_consistency",
        ],
        Variant::DoubleCover => vec![
            "rho_bijection",
            "c1_pin",
            "unit_pin",
            "pure_powers",
            "square_mod_coordinates",
            "b_not_square",
            "q_similar_to_e_form",
            "e_subform_of_pfister",
            "coprime",
            last,
            "alpha_nonzero",
            "plane_multiplicity",
            "f_assembly",
            "oracle_consistency",
        ],
        Variant::ConicBundle => vec![
            "rho_bijection",
            "c1_pin",
            "c2_pin",
            "pure_powers",
            "square_mod_coordinates",
            "b_not_square",
            "conic_similarity",
            last,
            "alpha_nonzero",
            "oracle_consistency",
        ],
    }
}

/// The slot holding `x1 x2` for a double cover: `r + 1`, or `1` when
/// `n = 2` (there `x1 x2 = x1 ... xn` already sits in slot 1).
pub(crate) fn expected_unit_slot(n: usize, r: usize) -> usize {
    if n == 2 {
        1
    } else {
        r + 1
    }
}

impl WitnessData {
    fn n(&self) -> usize {
        self.params.n
    }

    fn d(&self) -> Result<u32> {
        self.params
            .d
            .ok_or_else(|| Error::Structure("no degree recorded".into()))
    }

    pub fn base_ring(&self) -> Ring {
        self.g.ring()
    }

    fn rho_map(&self) -> Result<RhoMap> {
        RhoMap::from_strings(self.n(), &self.rho)
    }

    fn q(&self) -> Result<DiagonalForm> {
        q_form(
            self.n(),
            self.params.r,
            &SquareClass::b(self.n()),
            &self.rho_map()?,
        )
    }

    /// `(e_0/x0^d, e_1/x0^{d-2}, ...)`, plus the unit for double covers.
    fn e_ratios(&self) -> Result<Vec<(Poly, u32)>> {
        let d = self.d()?;
        if d < 2 {
            return Err(Error::Structure("degree below 2".into()));
        }
        let r = self.params.r;
        let expected = match self.params.variant {
            Variant::Hypersurface => r + 2,
            Variant::DoubleCover => r + 1,
            Variant::ConicBundle => {
                return Err(Error::Structure("conic bundles have no e_i".into()))
            }
        };
        if self.e.len() != expected {
            return Err(Error::Structure(format!(
                "expected {expected} coefficients e_i, found {}",
                self.e.len()
            )));
        }
        let mut out: Vec<(Poly, u32)> = self
            .e
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), if i == 0 { d } else { d - 2 }))
            .collect();
        if self.params.variant == Variant::DoubleCover {
            out.push((Poly::one(self.base_ring()), 0));
        }
        Ok(out)
    }

    fn e_form(&self) -> Result<DiagonalForm> {
        let classes = self
            .e_ratios()?
            .iter()
            .map(|(e, k)| class_of_entry(e, *k, &self.g, self.h.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        DiagonalForm::new(self.n(), classes)
    }

    fn sub_form(&self) -> Result<DiagonalForm> {
        let e = self.e_form()?;
        DiagonalForm::new(self.n(), e.entries()[1..].to_vec())
    }

    fn psi(&self) -> Result<DiagonalForm> {
        pfister_form(self.n(), &self.rho_map()?)
    }

    fn require_mu(&self) -> Result<&SquareClass> {
        self.mu
            .as_ref()
            .ok_or_else(|| Error::Structure("no scaling mu recorded".into()))
    }

    fn require_lambda(&self) -> Result<&SquareClass> {
        self.lambda
            .as_ref()
            .ok_or_else(|| Error::Structure("no scaling lambda recorded".into()))
    }

    /// A polynomial whose value lies in the square class `c` at every point.
    fn class_poly(&self, c: &SquareClass) -> Poly {
        let ring = self.base_ring();
        let mut m = vec![0u32; ring.nvars()];
        for (i, bit) in c.exps().iter().enumerate() {
            m[i] = u32::from(*bit);
        }
        if let Some(t) = ring.t() {
            m[t] = u32::from(c.has_t());
        }
        let mono = Poly::monomial(ring, m, 1);
        if c.has_b() {
            &mono * &self.g
        } else {
            mono
        }
    }

    fn oracle_problem(&self) -> Result<OracleProblem> {
        let rho = self.rho_map()?;
        let psi_form = pfister_form(self.n(), &rho)?;
        let psi: Vec<(Poly, u32)> = psi_form
            .entries()
            .iter()
            .map(|c| (self.class_poly(c), 0))
            .collect();
        let form_a: Vec<(Poly, u32)> = self
            .q()?
            .entries()
            .iter()
            .map(|c| (self.class_poly(c), 0))
            .collect();
        let mu = self.class_poly(self.require_mu()?);
        let (form_b, sub) = match self.params.variant {
            Variant::ConicBundle => {
                let b = conic_target(self.n())?
                    .entries()
                    .iter()
                    .map(|c| (&mu * &self.class_poly(c), 0))
                    .collect();
                (b, Vec::new())
            }
            _ => {
                let ratios = self.e_ratios()?;
                let lambda = self.class_poly(self.require_lambda()?);
                let b = ratios.iter().map(|(e, k)| (&mu * e, *k)).collect();
                let sub = ratios[1..].iter().map(|(e, k)| (&lambda * e, *k)).collect();
                (b, sub)
            }
        };
        Ok(OracleProblem {
            ring: self.base_ring(),
            p: self.params.oracle_prime(),
            form_a,
            form_b,
            psi,
            psi_eps: rho.table().to_vec(),
            sub,
        })
    }

    fn check(&self, name: &str) -> Result<(bool, String)> {
        let n = self.n();
        match name {
            "rho_bijection" => {
                let rho = self.rho_map()?;
                Ok((true, format!("{} slots", rho.len())))
            }
            "c1_pin" => pin(&self.rho_map()?, 1, &all_ones(n), "x1...xn"),
            "c2_pin" => {
                let tail: Vec<usize> = (2..=n).collect();
                pin(&self.rho_map()?, 2, &support(n, &tail), "x2...xn")
            }
            "unit_pin" => {
                let u = self
                    .unit_slot
                    .ok_or_else(|| Error::Structure("no unit slot recorded".into()))?;
                let expected = expected_unit_slot(n, self.params.r);
                if u != expected {
                    return Ok((false, format!("unit slot {u}, expected {expected}")));
                }
                pin(&self.rho_map()?, u, &support(n, &[1, 2]), "x1*x2")
            }
            "pure_powers" => Ok((check_cond_pure_powers(&self.g)?, String::new())),
            "square_mod_coordinates" => Ok((check_cond_square_mod_coords(&self.g)?, String::new())),
            "b_not_square" => Ok((!is_square_up_to_constant(&self.g), String::new())),
            "q_similar_to_e_form" => {
                let mu = self.require_mu()?;
                let ok = is_scaled_isometry(&self.q()?, &self.e_form()?, mu)?;
                Ok((ok, format!("mu = {mu}")))
            }
            "e_subform_of_pfister" => {
                let lambda = self.require_lambda()?;
                let ok = is_scaled_subform(&self.sub_form()?, &self.psi()?, lambda)?;
                Ok((ok, format!("lambda = {lambda}")))
            }
            "conic_similarity" => {
                let mu = self.require_mu()?;
                let ok = is_scaled_isometry(&self.q()?, &conic_target(n)?, mu)?;
                Ok((ok, format!("scaling = {mu}")))
            }
            "coprime" => {
                let mut list = self.e.clone();
                if self.params.variant == Variant::DoubleCover {
                    list.push(Poly::one(self.base_ring()));
                }
                Ok((structured_coprimality(&list)?, String::new()))
            }
            "t0_isotropy" => {
                let degenerate = degeneration_class(&self.g, self.params.g_variant)?;
                let ok = t0_isotropy_check(&self.q()?, &degenerate)?;
                Ok((ok, format!("b degenerates to {degenerate}")))
            }
            "full_rank_q" => {
                let q = self.q()?;
                Ok((q.rank() == 1 << n, format!("rank {}", q.rank())))
            }
            "alpha_nonzero" => {
                let cert = certify_alpha_nonzero(n)?;
                let ok =
                    cert.verdict == ResidueVerdict::Nonzero && cert.divisor_sequence.len() == n - 1;
                Ok((
                    ok,
                    format!("{} residues, final {}", n - 1, cert.final_symbol()),
                ))
            }
            "plane_multiplicity" => {
                let f = self.require_f()?;
                let d = self.d()?;
                let s = jacobian_vanishes_on_plane(f)?;
                Ok((
                    s.singular() && s.multiplicity == d - 2,
                    format!("multiplicity {}", s.multiplicity),
                ))
            }
            "f_assembly" => {
                let f = self.require_f()?;
                let target = f.ring();
                let ys = self.e.len() - 1;
                if target != self.base_ring().with_y(ys) {
                    return Ok((false, "F lives in the wrong ring".into()));
                }
                let mut sum = self.e[0].embed(target)?;
                for (j, e) in self.e.iter().enumerate().skip(1) {
                    let y = Poly::y(target, j);
                    sum = &sum + &(&e.embed(target)? * &(&y * &y));
                }
                Ok((sum == *f, String::new()))
            }
            other => Err(Error::Structure(format!("unknown check {other}"))),
        }
    }

    fn require_f(&self) -> Result<&Poly> {
        self.f
            .as_ref()
            .ok_or_else(|| Error::Structure("no F recorded".into()))
    }

    /// Runs every check for the variant, in order.
    pub fn run_checks(&self) -> Result<CheckOutcome> {
        let mut checks = Vec::new();
        let mut oracle = None;
        for name in check_names(self.params.variant, self.params.g_variant) {
            let (passed, detail) = if name == "oracle_consistency" {
                match self
                    .oracle_problem()
                    .and_then(|p| run_oracle(&p, self.params.seed, self.params.samples))
                {
                    Ok(rep) => {
                        let detail = format!(
                            "{}/{} points over F_{}, {} failures",
                            rep.accepted, rep.samples, rep.p, rep.failures
                        );
                        let ok = rep.passed();
                        oracle = Some(rep);
                        (ok, detail)
                    }
                    Err(e) => (false, e.to_string()),
                }
            } else {
                match self.check(name) {
                    Ok(v) => v,
                    Err(e) => (false, e.to_string()),
                }
            };
            checks.push(CheckRecord {
                name: name.to_string(),
                passed,
                detail,
            });
        }
        let oracle = oracle.unwrap_or(OracleReport {
            seed: self.params.seed,
            p: self.params.oracle_prime(),
            samples: self.params.samples,
            accepted: 0,
            rejected: 0,
            failures: 0,
            first_failure: None,
        });
        let alpha = certify_alpha_nonzero(self.n())?.to_record();
        Ok(CheckOutcome {
            checks,
            oracle,
            alpha,
        })
    }
}

fn pin(rho: &RhoMap, slot: usize, eps: &[bool], label: &str) -> Result<(bool, String)> {
    if slot >= rho.len() {
        return Ok((false, format!("slot {slot} out of range")));
    }
    let ok = rho.epsilon(slot) == eps;
    Ok((ok, format!("c{slot} = {label}")))
}

//! Finite-field cross-check of the symbolic form identities.
//!
//! At random points of `(F_p^*)^{n+1}` (and random `t`), the two sides of
//! the similarity are evaluated and compared by rank and discriminant, the
//! Pfister entries are checked to multiply like their exponent vectors, and
//! every scaled subform entry must share a square class with some Pfister
//! entry.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{inv_mod, is_odd_prime, mul_mod, pow_mod, ModPEvaluator, Poly, Ring};
use crate::quadform::{ff_forms_equivalent, is_square_mod, FiniteFieldForm};

pub const DEFAULT_SEED: u64 = 0x5eed_2019;
pub const DEFAULT_ORACLE_PRIME: u64 = 101;
pub const DEFAULT_SAMPLES: usize = 200;

/// Each entry is `numerator / x0^k`.
#[derive(Debug, Clone)]
pub struct OracleProblem {
    pub ring: Ring,
    pub p: u64,
    pub form_a: Vec<(Poly, u32)>,
    pub form_b: Vec<(Poly, u32)>,
    pub psi: Vec<(Poly, u32)>,
    pub psi_eps: Vec<Vec<bool>>,
    pub sub: Vec<(Poly, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seed: u64,
    pub p: u64,
    pub samples: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub failures: usize,
    pub first_failure: Option<Vec<u64>>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.accepted == self.samples
    }
}

struct Compiled {
    p: u64,
    entries: Vec<(ModPEvaluator, u32)>,
}

impl Compiled {
    fn new(list: &[(Poly, u32)], p: u64) -> Result<Self> {
        let entries = list
            .iter()
            .map(|(f, k)| Ok((f.evaluator(p)?, *k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { p, entries })
    }

    /// `None` if some entry vanishes.
    fn eval(&self, point: &[u64]) -> Option<Vec<u64>> {
        let x0_inv = inv_mod(point[0], self.p);
        self.entries
            .iter()
            .map(|(ev, k)| {
                let v = ev.eval(point);
                (v != 0).then(|| mul_mod(v, pow_mod(x0_inv, *k as u64, self.p), self.p))
            })
            .collect()
    }
}

fn point_passes(
    p: u64,
    a: Vec<u64>,
    b: Vec<u64>,
    psi: &[u64],
    psi_index: &HashMap<&[bool], usize>,
    psi_eps: &[Vec<bool>],
    sub: &[u64],
) -> Result<bool> {
    let fa = FiniteFieldForm::new(p, a)?;
    let fb = FiniteFieldForm::new(p, b)?;
    if !ff_forms_equivalent(&fa, &fb)? {
        return Ok(false);
    }
    // generators suffice: psi_eps * psi_{e_j} = psi_{eps + e_j} for all eps, j
    for (i, eps) in psi_eps.iter().enumerate() {
        for j in 0..eps.len() {
            let mut unit = vec![false; eps.len()];
            unit[j] = true;
            let mut sum = eps.clone();
            sum[j] ^= true;
            let (Some(&gj), Some(&k)) = (
                psi_index.get(unit.as_slice()),
                psi_index.get(sum.as_slice()),
            ) else {
                return Err(Error::Structure("Pfister table is not a group".into()));
            };
            let prod = mul_mod(mul_mod(psi[i], psi[gj], p), psi[k], p);
            if !is_square_mod(prod, p) {
                return Ok(false);
            }
        }
    }
    for s in sub {
        if !psi.iter().any(|v| is_square_mod(mul_mod(*s, *v, p), p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Samples until `samples` points are accepted (at most `100 * samples`
/// draws) and stops at the first failing point.
pub fn run_oracle(problem: &OracleProblem, seed: u64, samples: usize) -> Result<OracleReport> {
    let p = problem.p;
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let a = Compiled::new(&problem.form_a, p)?;
    let b = Compiled::new(&problem.form_b, p)?;
    let psi = Compiled::new(&problem.psi, p)?;
    let sub = Compiled::new(&problem.sub, p)?;
    let psi_index: HashMap<&[bool], usize> = problem
        .psi_eps
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport {
        seed,
        p,
        samples,
        accepted: 0,
        rejected: 0,
        failures: 0,
        first_failure: None,
    };
    let max_draws = samples.saturating_mul(100);
    let mut draws = 0;
    while report.accepted < samples && draws < max_draws {
        draws += 1;
        let point: Vec<u64> = (0..problem.ring.nvars())
            .map(|_| rng.gen_range(1..p))
            .collect();
        let values = (
            a.eval(&point),
            b.eval(&point),
            psi.eval(&point),
            sub.eval(&point),
        );
        let (Some(va), Some(vb), Some(vpsi), Some(vsub)) = values else {
            report.rejected += 1;
            continue;
        };
        report.accepted += 1;
        if !point_passes(p, va, vb, &vpsi, &psi_index, &problem.psi_eps, &vsub)? {
            report.failures += 1;
            report.first_failure = Some(point);
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    fn ring() -> Ring {
        Ring::new(Field::Rational, 1, 0, false)
    }

    fn psi_problem(form_b: Vec<(Poly, u32)>) -> OracleProblem {
        let r = ring();
        OracleProblem {
            ring: r,
            p: 101,
            form_a: vec![(Poly::one(r), 0), (Poly::x(r, 1), 1)],
            form_b,
            psi: vec![(Poly::one(r), 0), (Poly::x(r, 1), 1)],
            psi_eps: vec![vec![false], vec![true]],
            sub: vec![(Poly::x(r, 1), 1)],
        }
    }

    #[test]
    fn consistent_pair_passes() {
        let r = ring();
        // <1, x1/x0> vs <x1^2/x0^2, x0 x1>
        let b = vec![
            (Poly::x(r, 1).pow(2), 2),
            (&Poly::x(r, 0) * &Poly::x(r, 1), 0),
        ];
        let rep = run_oracle(&psi_problem(b), 7, 200).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.accepted, 200);
    }

    #[test]
    fn inconsistent_pair_fails() {
        let r = ring();
        let b = vec![(Poly::one(r), 0), (Poly::one(r), 0)];
        let rep = run_oracle(&psi_problem(b), 7, 200).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.failures, 1);
        assert!(rep.first_failure.is_some());
    }

    #[test]
    fn deterministic() {
        let r = ring();
        let b = vec![(Poly::one(r), 0), (Poly::one(r), 0)];
        let one = run_oracle(&psi_problem(b.clone()), 11, 50).unwrap();
        let two = run_oracle(&psi_problem(b), 11, 50).unwrap();
        assert_eq!(one, two);
    }
}

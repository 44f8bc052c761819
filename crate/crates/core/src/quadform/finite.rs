//! Regular diagonal forms over `F_p` and evaluation of polynomial entries at
//! points.

use crate::error::{Error, Result};
use crate::poly::{inv_mod, is_odd_prime, mul_mod, pow_mod, Field, Poly};

/// Vectors examined by [`ff_isotropic`] before giving up.
pub const ISOTROPY_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFieldForm {
    p: u64,
    coeffs: Vec<u64>,
}

impl FiniteFieldForm {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        if let Some(i) = coeffs.iter().position(|c| *c == 0) {
            return Err(Error::VanishingEntry(i));
        }
        Ok(Self { p, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn discriminant(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(1, |acc, c| mul_mod(acc, *c, self.p))
    }
}

/// Euler's criterion for `a != 0 mod p`.
pub fn is_square_mod(a: u64, p: u64) -> bool {
    pow_mod(a % p, (p - 1) / 2, p) == 1
}

fn check_point(point: &[u64], coords: usize, p: u64) -> Result<()> {
    if point.len() < coords {
        return Err(Error::Structure(format!(
            "point has {} values, ring needs at least {coords}",
            point.len()
        )));
    }
    if point[..coords].iter().any(|v| v % p == 0) {
        return Err(Error::Structure(
            "point lies on a coordinate hyperplane".into(),
        ));
    }
    Ok(())
}

fn resolve_modulus(field: Field, p: u64) -> Result<u64> {
    match field {
        Field::Prime(q) if q != p => Err(Error::ModulusMismatch(q, p)),
        _ => Ok(p),
    }
}

/// Evaluates each entry at `point` (one value per ring variable).
pub fn specialize_form(entries: &[Poly], point: &[u64], p: u64) -> Result<FiniteFieldForm> {
    let pairs: Vec<(Poly, u32)> = entries.iter().map(|e| (e.clone(), 0)).collect();
    specialize_ratios(&pairs, point, p)
}

/// Evaluates each `num / x0^k` at `point`.
pub fn specialize_ratios(
    entries: &[(Poly, u32)],
    point: &[u64],
    p: u64,
) -> Result<FiniteFieldForm> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut coeffs = Vec::with_capacity(entries.len());
    for (i, (num, k)) in entries.iter().enumerate() {
        let ring = num.ring();
        let p = resolve_modulus(ring.field, p)?;
        check_point(point, ring.n + 1, p)?;
        if point.len() != ring.nvars() {
            return Err(Error::Structure(format!(
                "point has {} values for {} variables",
                point.len(),
                ring.nvars()
            )));
        }
        let v = num.evaluator(p)?.eval(point);
        if v == 0 {
            return Err(Error::VanishingEntry(i));
        }
        let x0_inv = inv_mod(point[0] % p, p);
        coeffs.push(mul_mod(v, pow_mod(x0_inv, *k as u64, p), p));
    }
    FiniteFieldForm::new(p, coeffs)
}

/// Regular forms over a finite field are classified by rank and
/// discriminant.
pub fn ff_forms_equivalent(a: &FiniteFieldForm, b: &FiniteFieldForm) -> Result<bool> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch(a.p, b.p));
    }
    if a.rank() != b.rank() {
        return Ok(false);
    }
    let ratio = mul_mod(a.discriminant(), inv_mod(b.discriminant(), a.p), a.p);
    Ok(is_square_mod(ratio, a.p))
}

pub fn ff_isotropic(a: &FiniteFieldForm) -> Result<bool> {
    ff_isotropic_with_budget(a, ISOTROPY_BUDGET)
}

/// Exhaustive search for a nonzero zero. Vectors are enumerated up to
/// scaling: the first nonzero coordinate is fixed to 1.
pub fn ff_isotropic_with_budget(a: &FiniteFieldForm, budget: u64) -> Result<bool> {
    let p = a.p;
    let m = a.rank();
    let mut examined = 0u64;
    for lead in 0..m {
        // v = (0, ..., 0, 1, free...)
        let free = m - lead - 1;
        let mut tail = vec![0u64; free];
        loop {
            examined += 1;
            if examined > budget {
                return Err(Error::SearchBudget(budget));
            }
            let mut value = a.coeffs[lead];
            for (j, v) in tail.iter().enumerate() {
                value = (value + mul_mod(a.coeffs[lead + 1 + j], mul_mod(*v, *v, p), p)) % p;
            }
            if value == 0 {
                return Ok(true);
            }
            let mut k = 0;
            loop {
                if k == free {
                    break;
                }
                tail[k] += 1;
                if tail[k] < p {
                    break;
                }
                tail[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tangent_conic;

    fn form(p: u64, c: &[u64]) -> FiniteFieldForm {
        FiniteFieldForm::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn tangent_conic_specialization() {
        let g = tangent_conic();
        assert_eq!(
            specialize_form(std::slice::from_ref(&g), &[1, 1, 4], 7),
            Err(Error::VanishingEntry(0))
        );
        assert_eq!(
            specialize_form(std::slice::from_ref(&g), &[1, 1, 1], 7)
                .unwrap()
                .coeffs(),
            &[4]
        );
        let one = Poly::one(g.ring());
        assert_eq!(
            specialize_form(&[one], &[3, 5, 6], 7).unwrap().coeffs(),
            &[1]
        );
        assert!(specialize_form(std::slice::from_ref(&g), &[1, 0, 1], 7).is_err());
    }

    #[test]
    fn ratios() {
        let g = tangent_conic();
        let x1 = Poly::x(g.ring(), 1);
        // x1/x0 at [2:1:1] over F_7 is 1/2 = 4
        let f = specialize_ratios(&[(x1, 1)], &[2, 1, 1], 7).unwrap();
        assert_eq!(f.coeffs(), &[4]);
    }

    #[test]
    fn equivalence_examples() {
        for g in 1..7 {
            let gg = g * g % 7;
            assert!(ff_forms_equivalent(&form(7, &[1, 1]), &form(7, &[gg, 1])).unwrap());
        }
        assert!(!ff_forms_equivalent(&form(7, &[1, 1]), &form(7, &[3, 1])).unwrap());
        assert!(!ff_forms_equivalent(&form(7, &[1]), &form(7, &[1, 1])).unwrap());
        assert_eq!(
            ff_forms_equivalent(&form(7, &[1]), &form(11, &[1])),
            Err(Error::ModulusMismatch(7, 11))
        );
    }

    #[test]
    fn isotropy_examples() {
        assert!(ff_isotropic(&form(7, &[1, 6])).unwrap());
        // -3 = 4 = 2^2 mod 7, so (2, 1) is a zero of x^2 + 3y^2
        assert!(ff_isotropic(&form(7, &[1, 3])).unwrap());
        // -1 is not a square mod 7
        assert!(!ff_isotropic(&form(7, &[1, 1])).unwrap());
        assert!(!ff_isotropic(&form(101, &[5])).unwrap());
        for p in [3u64, 7, 11] {
            for a in 1..p {
                for b in 1..p {
                    assert!(ff_isotropic(&form(p, &[1, a, b])).unwrap());
                }
            }
        }
        assert_eq!(
            ff_isotropic_with_budget(&form(101, &[1, 1, 1, 1, 1, 1]), 3),
            Err(Error::SearchBudget(3))
        );
    }

    #[test]
    fn form_validation() {
        assert!(FiniteFieldForm::new(7, vec![1, 14]).is_err());
        assert!(FiniteFieldForm::new(9, vec![1]).is_err());
    }
}

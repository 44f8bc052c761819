use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::squareclass::SquareClass;

/// Largest dimension for which a full table of `2^n` exponent vectors is
/// materialised.
pub const MAX_RHO_DIM: usize = 20;

/// A bijection `{0, ..., 2^n - 1} -> {0,1}^n` with `0 -> (0, ..., 0)`.
///
/// Slot `i` stands for the monomial `c_i = prod_j x_j^{eps_j}` with
/// `eps = table[i]`, of degree `d_i = |eps|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoMap {
    n: usize,
    table: Vec<Vec<bool>>,
}

fn weight(eps: &[bool]) -> usize {
    eps.iter().filter(|e| **e).count()
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_RHO_DIM {
        return Err(Error::InvalidDimension(format!(
            "rho tables need 1 <= n <= {MAX_RHO_DIM}, got {n}"
        )));
    }
    Ok(())
}

/// All of `{0,1}^n` by weight, and within a weight with `x1` before `x2`
/// before ... (so `(1,0)` precedes `(0,1)`).
pub fn graded_lex_order(n: usize) -> Vec<Vec<bool>> {
    let mut all: Vec<Vec<bool>> = (0..1u64 << n)
        .map(|bits| (0..n).map(|j| bits >> j & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| b.cmp(a)));
    all
}

impl RhoMap {
    pub fn new(n: usize, table: Vec<Vec<bool>>) -> Result<Self> {
        check_dim(n)?;
        if table.len() != 1 << n {
            return Err(Error::InvalidRho(format!(
                "expected {} slots, got {}",
                1u64 << n,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|e| e.len() != n) {
            return Err(Error::InvalidRho(format!(
                "vector of length {} in a table for n = {n}",
                bad.len()
            )));
        }
        if weight(&table[0]) != 0 {
            return Err(Error::InvalidRho("slot 0 must be the zero vector".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for eps in &table {
            if !seen.insert(eps) {
                return Err(Error::InvalidRho(format!(
                    "vector {} occurs twice",
                    bits_to_string(eps)
                )));
            }
        }
        Ok(Self { n, table })
    }

    pub fn graded_lex(n: usize) -> Result<Self> {
        Self::with_pins(n, &[])
    }

    /// Places each pinned vector at its slot and fills the remaining slots in
    /// graded-lex order.
    pub fn with_pins(n: usize, pins: &[(usize, Vec<bool>)]) -> Result<Self> {
        check_dim(n)?;
        let size = 1usize << n;
        let mut fixed: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
        for (idx, eps) in pins {
            if *idx >= size {
                return Err(Error::InvalidRho(format!("pin index {idx} out of range")));
            }
            if eps.len() != n {
                return Err(Error::InvalidRho(format!(
                    "pin vector of length {} for n = {n}",
                    eps.len()
                )));
            }
            if (*idx == 0) != (weight(eps) == 0) {
                return Err(Error::InvalidRho(
                    "slot 0 is reserved for the zero vector".into(),
                ));
            }
            if let Some(prev) = fixed.get(idx) {
                if prev != eps {
                    return Err(Error::InvalidRho(format!("conflicting pins at slot {idx}")));
                }
            }
            if let Some((other, _)) = fixed.iter().find(|(i, e)| *i != idx && *e == eps) {
                return Err(Error::InvalidRho(format!(
                    "vector {} pinned to slots {other} and {idx}",
                    bits_to_string(eps)
                )));
            }
            fixed.insert(*idx, eps.clone());
        }
        let taken: std::collections::BTreeSet<&Vec<bool>> = fixed.values().collect();
        let mut free = graded_lex_order(n)
            .into_iter()
            .filter(|e| !taken.contains(e))
            .collect::<Vec<_>>()
            .into_iter();
        let table = (0..size)
            .map(|i| match fixed.get(&i) {
                Some(eps) => eps.clone(),
                None => free.next().expect("counts match"),
            })
            .collect();
        Self::new(n, table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn epsilon(&self, i: usize) -> &[bool] {
        &self.table[i]
    }

    pub fn table(&self) -> &[Vec<bool>] {
        &self.table
    }

    /// Exponents of `c_i` on `x_1, ..., x_n`.
    pub fn exponents(&self, i: usize) -> Vec<u32> {
        self.table[i].iter().map(|e| u32::from(*e)).collect()
    }

    pub fn degree(&self, i: usize) -> u32 {
        weight(&self.table[i]) as u32
    }

    /// Class of `c_i / x0^{d_i}`.
    pub fn class(&self, i: usize) -> SquareClass {
        SquareClass::of_monomial(&self.exponents(i))
    }

    /// Slot holding `eps`.
    pub fn slot_of(&self, eps: &[bool]) -> Option<usize> {
        self.table.iter().position(|e| e == eps)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.table.iter().map(|e| bits_to_string(e)).collect()
    }

    pub fn from_strings(n: usize, rows: &[String]) -> Result<Self> {
        let table = rows
            .iter()
            .map(|s| parse_bits(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, table)
    }
}

/// `(1,0,1)` is written `101`.
pub fn bits_to_string(eps: &[bool]) -> String {
    eps.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidRho(format!("bad bit string `{s}`"))),
        })
        .collect()
}

/// `(1, ..., 1)`, the exponent vector of `x1 ... xn`.
pub fn all_ones(n: usize) -> Vec<bool> {
    vec![true; n]
}

/// The vector with ones exactly at the listed coordinates (1-based).
pub fn support(n: usize, coords: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &c in coords {
        v[c - 1] = true;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_top_vector_n2() {
        let rho = RhoMap::with_pins(2, &[(1, all_ones(2))]).unwrap();
        assert_eq!(rho.to_strings(), vec!["00", "11", "10", "01"]);
    }

    #[test]
    fn graded_lex_n3() {
        let rho = RhoMap::graded_lex(3).unwrap();
        assert_eq!(
            rho.to_strings(),
            vec!["000", "100", "010", "001", "110", "101", "011", "111"]
        );
    }

    #[test]
    fn conic_pins_n3() {
        let rho = RhoMap::with_pins(3, &[(1, all_ones(3)), (2, support(3, &[2, 3]))]).unwrap();
        assert_eq!(rho.epsilon(1), &[true, true, true]);
        assert_eq!(rho.epsilon(2), &[false, true, true]);
        assert_eq!(rho.len(), 8);
    }

    #[test]
    fn pin_errors() {
        assert!(RhoMap::with_pins(2, &[(1, all_ones(2)), (2, all_ones(2))]).is_err());
        assert!(RhoMap::with_pins(2, &[(0, all_ones(2))]).is_err());
        assert!(RhoMap::with_pins(2, &[(2, vec![false, false])]).is_err());
        assert!(RhoMap::with_pins(2, &[(4, all_ones(2))]).is_err());
        assert!(RhoMap::with_pins(2, &[(1, all_ones(3))]).is_err());
        assert!(RhoMap::with_pins(2, &[(1, all_ones(2)), (1, support(2, &[1]))]).is_err());
        assert!(RhoMap::with_pins(2, &[(1, all_ones(2)), (1, all_ones(2))]).is_ok());
    }

    #[test]
    fn table_validation() {
        let dup = vec!["00", "11", "11", "01"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        assert!(RhoMap::from_strings(2, &dup).is_err());
        let shifted = vec!["10", "00", "11", "01"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        assert!(RhoMap::from_strings(2, &shifted).is_err());
        let short = vec!["00", "11"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        assert!(RhoMap::from_strings(2, &short).is_err());
        assert!(RhoMap::graded_lex(0).is_err());
    }

    #[test]
    fn classes_and_degrees() {
        let rho = RhoMap::with_pins(2, &[(1, all_ones(2))]).unwrap();
        assert_eq!(rho.degree(1), 2);
        assert_eq!(rho.class(1).to_string(), "x1*x2");
        assert_eq!(rho.class(2).to_string(), "x0*x1");
        assert!(rho.class(0).is_trivial());
        assert_eq!(rho.slot_of(&[false, true]), Some(3));
    }
}

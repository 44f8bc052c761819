//! Mod-2 symbols `(a_1, ..., a_i)` with square-class entries, their residues
//! along the coordinate divisors `{x_i = 0}` and the iterated-residue
//! certificate showing that `(x_1/x_0, ..., x_n/x_0)` is nonzero.
//!
//! The normal form is sound but not complete: a symbol with no terms is
//! zero, but a symbol with terms may still vanish in cohomology. Only
//! nonvanishing is ever concluded from a computation here.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::squareclass::{BStatus, SquareClass};

/// A formal GF(2)-sum of sorted tuples of square classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    n: usize,
    degree: usize,
    terms: BTreeSet<Vec<SquareClass>>,
}

impl Symbol {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self {
            n,
            degree,
            terms: BTreeSet::new(),
        }
    }

    /// The nonzero element of `H^0 = Z/2`.
    pub fn one(n: usize) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(Vec::new());
        Self {
            n,
            degree: 0,
            terms,
        }
    }

    /// The cup product of `entries` over `P^n`, in normal form.
    ///
    /// A trivial or repeated entry makes the product zero: `(a, a) = (a, -1)`
    /// vanishes because `-1` is a square.
    pub fn make(n: usize, entries: &[SquareClass]) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| e.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.n(),
            });
        }
        let mut sym = Self::zero(n, entries.len());
        if let Some(tuple) = canonical_tuple(entries.to_vec()) {
            sym.terms.insert(tuple);
        }
        Ok(sym)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &[SquareClass]> {
        self.terms.iter().map(Vec::as_slice)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(Self {
            n: self.n,
            degree: self.degree,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        })
    }

    /// Residue along `{x_i = 0}` with uniformizer `x_i/x_0`.
    ///
    /// Each tuple is split into entries of odd valuation, written as
    /// `pi * u_j`, and units `v_k`. The residue of
    /// `(pi u_1, ..., pi u_m, v_1, ..., v_l)` is
    /// `sum_j (u_1, ..., ^u_j, ..., u_m) (v_1, ..., v_l)` with all entries
    /// reduced to `k(P^{n-1})`; the sum is `1` for `m = 1` and `0` for `m = 0`.
    pub fn residue(&self, i: usize, status: BStatus) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        if self.degree == 0 {
            return Err(Error::DegreeMismatch(0, 1));
        }
        let pi = SquareClass::coordinate_ratio(i, 0, self.n)?;
        let mut out = Self::zero(self.n - 1, self.degree - 1);
        for tuple in &self.terms {
            let mut ramified = Vec::new();
            let mut units = Vec::new();
            for entry in tuple {
                if entry.valuation_parity(i) {
                    ramified.push(entry.multiply(&pi)?.reduce_along(i, status)?);
                } else {
                    units.push(entry.reduce_along(i, status)?);
                }
            }
            for skip in 0..ramified.len() {
                let mut entries: Vec<SquareClass> = ramified
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, c)| c.clone())
                    .collect();
                entries.extend(units.iter().cloned());
                if let Some(t) = canonical_tuple(entries) {
                    // GF(2) accumulation.
                    if !out.terms.remove(&t) {
                        out.terms.insert(t);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_record(&self) -> SymbolRecord {
        SymbolRecord {
            n: self.n,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|t| t.iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_record(record: &SymbolRecord) -> Result<Self> {
        let mut sym = Self::zero(record.n, record.degree);
        for term in &record.terms {
            if term.len() != record.degree {
                return Err(Error::DegreeMismatch(term.len(), record.degree));
            }
            let entries = term
                .iter()
                .map(|s| SquareClass::parse(s, record.n))
                .collect::<Result<Vec<_>>>()?;
            if let Some(t) = canonical_tuple(entries) {
                if !sym.terms.remove(&t) {
                    sym.terms.insert(t);
                }
            }
        }
        Ok(sym)
    }
}

fn canonical_tuple(mut entries: Vec<SquareClass>) -> Option<Vec<SquareClass>> {
    if entries.iter().any(SquareClass::is_trivial) {
        return None;
    }
    // descending puts x1 before x2
    entries.sort_by(|a, b| b.cmp(a));
    if entries.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(entries)
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    let inner: Vec<String> = t.iter().map(|c| c.to_string()).collect();
                    format!("({})", inner.join(", "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serializable form of a [`Symbol`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolRecord {
    pub n: usize,
    pub degree: usize,
    pub terms: Vec<Vec<String>>,
}

/// `(x_1/x_0, ..., x_n/x_0)`.
pub fn alpha_symbol(n: usize) -> Result<Symbol> {
    if n < 1 {
        return Err(Error::InvalidDimension("alpha needs n >= 1".into()));
    }
    let entries = (1..=n)
        .map(|i| SquareClass::coordinate_ratio(i, 0, n))
        .collect::<Result<Vec<_>>>()?;
    Symbol::make(n, &entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResidueVerdict {
    Nonzero,
    Inconclusive,
}

/// A chain of residues ending in a 1-symbol that is visibly not a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCertificate {
    pub start: Symbol,
    pub divisor_sequence: Vec<usize>,
    pub intermediate: Vec<Symbol>,
    pub verdict: ResidueVerdict,
}

impl ResidueCertificate {
    /// Takes successive residues of `start` along `divisors` (indices refer
    /// to the coordinates of the field at that step).
    pub fn run(start: Symbol, divisors: &[usize], status: BStatus) -> Result<Self> {
        let mut intermediate = Vec::with_capacity(divisors.len());
        let mut current = start.clone();
        for &i in divisors {
            current = current.residue(i, status)?;
            intermediate.push(current.clone());
        }
        let verdict = if visibly_nonsquare(&current, status) {
            ResidueVerdict::Nonzero
        } else {
            ResidueVerdict::Inconclusive
        };
        Ok(Self {
            start,
            divisor_sequence: divisors.to_vec(),
            intermediate,
            verdict,
        })
    }

    pub fn final_symbol(&self) -> &Symbol {
        self.intermediate.last().unwrap_or(&self.start)
    }

    pub fn to_record(&self) -> ResidueCertificateRecord {
        ResidueCertificateRecord {
            start: self.start.to_record(),
            divisor_sequence: self.divisor_sequence.clone(),
            intermediate: self.intermediate.iter().map(Symbol::to_record).collect(),
            verdict: self.verdict,
        }
    }
}

/// A degree-1 symbol is `(a)` for `a` the product of its terms; it is nonzero
/// as soon as `a` has odd valuation along some coordinate divisor.
fn visibly_nonsquare(sym: &Symbol, status: BStatus) -> bool {
    if sym.degree != 1 || sym.is_zero() {
        return false;
    }
    let mut product = SquareClass::trivial(sym.n);
    for t in &sym.terms {
        product = match product.multiply(&t[0]) {
            Ok(p) => p,
            Err(_) => return false,
        };
    }
    if product.has_b() && status != BStatus::Attested {
        return false;
    }
    (1..=sym.n).any(|j| product.valuation_parity(j))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCertificateRecord {
    pub start: SymbolRecord,
    pub divisor_sequence: Vec<usize>,
    pub intermediate: Vec<SymbolRecord>,
    pub verdict: ResidueVerdict,
}

/// Residues along `x_n, x_{n-1}, ..., x_2`, leaving `(x_1/x_0)` on `P^1`.
pub fn certify_alpha_nonzero(n: usize) -> Result<ResidueCertificate> {
    let alpha = alpha_symbol(n)?;
    let divisors: Vec<usize> = (2..=n).rev().collect();
    ResidueCertificate::run(alpha, &divisors, BStatus::Unattested)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(i: usize, n: usize) -> SquareClass {
        SquareClass::coordinate_ratio(i, 0, n).unwrap()
    }

    #[test]
    fn make_normal_form() {
        let a = ratio(1, 2);
        assert!(Symbol::make(2, &[a.clone(), a.clone()]).unwrap().is_zero());
        assert!(Symbol::make(2, &[SquareClass::trivial(2), a.clone()])
            .unwrap()
            .is_zero());
        let s = Symbol::make(2, &[ratio(2, 2), ratio(1, 2)]).unwrap();
        assert_eq!(s.terms().count(), 1);
        assert_eq!(s, Symbol::make(2, &[ratio(1, 2), ratio(2, 2)]).unwrap());
        assert!(matches!(
            Symbol::make(2, &[ratio(1, 3)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn residue_examples() {
        let s = Symbol::make(2, &[ratio(1, 2), ratio(2, 2)]).unwrap();
        let r = s.residue(2, BStatus::Unattested).unwrap();
        assert_eq!(r, Symbol::make(1, &[ratio(1, 1)]).unwrap());

        let s = Symbol::make(2, &[ratio(1, 2)]).unwrap();
        assert_eq!(s.residue(1, BStatus::Unattested).unwrap(), Symbol::one(1));

        let s = Symbol::make(2, &[ratio(2, 2), SquareClass::b(2)]).unwrap();
        assert!(s.residue(1, BStatus::Attested).unwrap().is_zero());
        assert_eq!(
            s.residue(1, BStatus::Unattested),
            Err(Error::UnattestedB(1))
        );
    }

    #[test]
    fn residue_with_two_ramified_entries() {
        // (x1 x2/x0^2, x1/x0) along x1: both entries ramified.
        let n = 2;
        let c12 = ratio(1, n).multiply(&ratio(2, n)).unwrap();
        let s = Symbol::make(n, &[c12, ratio(1, n)]).unwrap();
        let r = s.residue(1, BStatus::Unattested).unwrap();
        assert_eq!(r, Symbol::make(1, &[ratio(1, 1)]).unwrap());
    }

    #[test]
    fn alpha_symbols() {
        assert_eq!(alpha_symbol(1).unwrap().to_string(), "(x0*x1)");
        assert_eq!(alpha_symbol(2).unwrap().to_string(), "(x0*x1, x0*x2)");
        assert_eq!(
            alpha_symbol(3).unwrap().to_string(),
            "(x0*x1, x0*x2, x0*x3)"
        );
        assert!(alpha_symbol(0).is_err());
    }

    #[test]
    fn alpha_certificates() {
        let c = certify_alpha_nonzero(2).unwrap();
        assert_eq!(c.verdict, ResidueVerdict::Nonzero);
        assert_eq!(c.divisor_sequence, vec![2]);
        assert_eq!(c.final_symbol(), &Symbol::make(1, &[ratio(1, 1)]).unwrap());

        let c = certify_alpha_nonzero(1).unwrap();
        assert_eq!(c.verdict, ResidueVerdict::Nonzero);
        assert!(c.divisor_sequence.is_empty());

        let c = certify_alpha_nonzero(10).unwrap();
        assert_eq!(c.verdict, ResidueVerdict::Nonzero);
        assert_eq!(c.intermediate.len(), 9);
        assert_eq!(c.divisor_sequence, (2..=10).rev().collect::<Vec<_>>());
    }

    #[test]
    fn inconclusive_when_final_is_a_square_class() {
        // (b) is a unit along every coordinate divisor.
        let s = Symbol::make(1, &[SquareClass::b(1)]).unwrap();
        let c = ResidueCertificate::run(s, &[], BStatus::Attested).unwrap();
        assert_eq!(c.verdict, ResidueVerdict::Inconclusive);
    }

    #[test]
    fn record_round_trip() {
        let s = alpha_symbol(3).unwrap();
        assert_eq!(Symbol::from_record(&s.to_record()).unwrap(), s);
    }
}

//! Diagonal quadratic forms over `k(P^n)` up to square scaling of entries.
//!
//! Forms are compared entrywise: `<a_1, ..., a_m>` is similar to
//! `<b_1, ..., b_m>` via `mu` when the multisets `{a_i}` and `{mu * b_i}`
//! agree as square classes. This certifies similarity without deciding it
//! in general.

mod finite;
mod rho;

pub use finite::{
    ff_forms_equivalent, ff_isotropic, ff_isotropic_with_budget, is_square_mod, specialize_form,
    specialize_ratios, FiniteFieldForm, ISOTROPY_BUDGET,
};
pub use rho::{
    all_ones, bits_to_string, graded_lex_order, parse_bits, support, RhoMap, MAX_RHO_DIM,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::squareclass::SquareClass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    n: usize,
    entries: Vec<SquareClass>,
}

impl DiagonalForm {
    pub fn new(n: usize, entries: Vec<SquareClass>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimension("a form needs rank >= 1".into()));
        }
        if let Some(bad) = entries.iter().find(|e| e.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.n(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    /// `<s> (x) self`.
    pub fn scaled(&self, s: &SquareClass) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.multiply(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }

    fn counts(&self) -> BTreeMap<&SquareClass, usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    fn same_dimension(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `<<x1/x0, ..., xn/x0>>`, listed in the order given by `rho`.
pub fn pfister_form(n: usize, rho: &RhoMap) -> Result<DiagonalForm> {
    if rho.n() != n {
        return Err(Error::InvalidRho(format!(
            "table for n = {} used with n = {n}",
            rho.n()
        )));
    }
    DiagonalForm::new(n, (0..rho.len()).map(|i| rho.class(i)).collect())
}

/// `<b, c_1/x0^{d_1}, ..., c_{r+1}/x0^{d_{r+1}}>`.
pub fn q_form(n: usize, r: usize, b_class: &SquareClass, rho: &RhoMap) -> Result<DiagonalForm> {
    if rho.n() != n {
        return Err(Error::InvalidRho(format!(
            "table for n = {} used with n = {n}",
            rho.n()
        )));
    }
    if r < 1 {
        return Err(Error::Infeasible("r ≥ 1".into()));
    }
    if r + 2 > rho.len() {
        return Err(Error::Infeasible("r ≤ 2^n − 2".into()));
    }
    if !b_class.has_b() {
        return Err(Error::MissingB);
    }
    let mut entries = vec![b_class.clone()];
    entries.extend((1..=r + 1).map(|i| rho.class(i)));
    DiagonalForm::new(n, entries)
}

/// Whether `<mu> (x) b` and `a` have the same entries as multisets.
pub fn is_scaled_isometry(a: &DiagonalForm, b: &DiagonalForm, mu: &SquareClass) -> Result<bool> {
    a.same_dimension(b)?;
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    let scaled = b.scaled(mu)?;
    Ok(a.counts() == scaled.counts())
}

/// Finds `mu` with `a = <mu> (x) b` entrywise. The trivial class is tried
/// first, then every ratio `a_0 / b_j`; any witness must be one of these.
pub fn find_scaling_isometry(a: &DiagonalForm, b: &DiagonalForm) -> Result<Option<SquareClass>> {
    a.same_dimension(b)?;
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    let mut candidates = vec![SquareClass::trivial(a.n)];
    for bj in &b.entries {
        candidates.push(a.entries[0].multiply(bj)?);
    }
    for mu in candidates {
        if is_scaled_isometry(a, b, &mu)? {
            return Ok(Some(mu));
        }
    }
    Ok(None)
}

/// Whether the entries of `<lambda> (x) sub` embed into those of `ambient`.
pub fn is_scaled_subform(
    sub: &DiagonalForm,
    ambient: &DiagonalForm,
    lambda: &SquareClass,
) -> Result<bool> {
    sub.same_dimension(ambient)?;
    if sub.rank() > ambient.rank() {
        return Err(Error::RankOverflow {
            sub: sub.rank(),
            ambient: ambient.rank(),
        });
    }
    let mut avail = ambient.counts();
    for e in sub.scaled(lambda)?.entries {
        match avail.get_mut(&e) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Finds `lambda` with `<lambda> (x) sub` contained in `ambient`.
///
/// Candidates are the trivial class followed by the ratios
/// `ambient_j / sub_0`.
pub fn find_scaling_subform(
    sub: &DiagonalForm,
    ambient: &DiagonalForm,
) -> Result<Option<SquareClass>> {
    find_scaling_subform_preferring(sub, ambient, &[])
}

/// As [`find_scaling_subform`], trying `preferred` before the standard
/// candidates. When the ambient form is the full Pfister form many scalings
/// work; this selects a particular one.
pub fn find_scaling_subform_preferring(
    sub: &DiagonalForm,
    ambient: &DiagonalForm,
    preferred: &[SquareClass],
) -> Result<Option<SquareClass>> {
    sub.same_dimension(ambient)?;
    if sub.rank() > ambient.rank() {
        return Err(Error::RankOverflow {
            sub: sub.rank(),
            ambient: ambient.rank(),
        });
    }
    let mut candidates = preferred.to_vec();
    candidates.push(SquareClass::trivial(sub.n));
    for aj in &ambient.entries {
        candidates.push(aj.multiply(&sub.entries[0])?);
    }
    for lambda in candidates {
        if is_scaled_subform(sub, ambient, &lambda)? {
            return Ok(Some(lambda));
        }
    }
    Ok(None)
}

/// After the degeneration, `b` becomes the monomial class `degenerate`. The
/// specialised form is isotropic as soon as that class repeats entry 1,
/// which contributes a hyperbolic plane `<c, -c>`.
pub fn t0_isotropy_check(q: &DiagonalForm, degenerate: &SquareClass) -> Result<bool> {
    if !q.entries[0].has_b() {
        return Err(Error::MissingB);
    }
    if q.rank() < 2 {
        return Err(Error::InvalidDimension("q has no entry 1".into()));
    }
    if degenerate.n() != q.n {
        return Err(Error::DimensionMismatch {
            expected: q.n,
            got: degenerate.n(),
        });
    }
    Ok(!degenerate.has_b() && q.entries[1] == *degenerate)
}

/// `rho` with `c_1 = x1 ... xn` and `c_2 = x2 ... xn`.
pub fn conic_rho(n: usize) -> Result<RhoMap> {
    if n < 2 {
        return Err(Error::InvalidDimension(
            "the conic construction needs n >= 2".into(),
        ));
    }
    let tail: Vec<usize> = (2..=n).collect();
    RhoMap::with_pins(n, &[(1, all_ones(n)), (2, support(n, &tail))])
}

/// `<b * x2...xn / x0^{n-1}, x1/x0, 1>`.
pub fn conic_target(n: usize) -> Result<DiagonalForm> {
    let mut tail = vec![1u32; n];
    tail[0] = 0;
    let first = SquareClass::b(n).multiply(&SquareClass::of_monomial(&tail))?;
    let second = SquareClass::coordinate_ratio(1, 0, n)?;
    DiagonalForm::new(n, vec![first, second, SquareClass::trivial(n)])
}

/// The scaling realising `q(n, 1, b, rho)` as a multiple of the conic
/// target, if any.
pub fn conic_similarity_scaling(n: usize, rho: &RhoMap) -> Result<Option<SquareClass>> {
    if n < 2 {
        return Err(Error::InvalidDimension(
            "the conic construction needs n >= 2".into(),
        ));
    }
    let q = q_form(n, 1, &SquareClass::b(n), rho)?;
    find_scaling_isometry(&q, &conic_target(n)?)
}

pub fn conic_similarity_check(n: usize) -> Result<bool> {
    Ok(conic_similarity_scaling(n, &conic_rho(n)?)?.is_some())
}

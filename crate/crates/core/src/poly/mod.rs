//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are laid out as `x0..xn`, then `y1..ym`, then optionally `t`.
//! Monomials are compared lexicographically in that order, so `x0` is the
//! largest variable and `t` the smallest. The grading used for homogeneity
//! counts `x` and `y` exponents; `t` has degree zero.
//!
//! Coefficients are [`BigRational`]s. Over `F_p` they are kept reduced to
//! integers in `0..p`.

mod builders;
mod conditions;
mod sqrt;
mod text;

pub use builders::{build_g, ceil_half, g_degree, tangent_conic, GVariant};
pub use conditions::{
    check_cond_pure_powers, check_cond_square_mod_coords, class_of_entry, degeneration_class,
    fermat_smoothness, jacobian_vanishes_on_plane, structured_coprimality, PlaneSingularity,
};
pub use sqrt::{is_square_up_to_constant, multivariate_sqrt, sqrt_up_to_constant};

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "p")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Validates and reduces an externally supplied coefficient.
    pub fn element(&self, c: BigRational) -> Result<BigRational> {
        match self {
            Field::Rational => Ok(c),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                if c.denom().mod_floor(&pb).is_zero() {
                    return Err(Error::Parse(format!("denominator of {c} vanishes mod {p}")));
                }
                Ok(self.norm(c))
            }
        }
    }

    fn norm(&self, c: BigRational) -> BigRational {
        match self {
            Field::Rational => c,
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = c.numer().mod_floor(&pb).to_u64().unwrap();
                let den = c.denom().mod_floor(&pb).to_u64().unwrap();
                assert!(den != 0, "coefficient {c} is not defined mod {p}");
                let v = mul_mod(num, inv_mod(den, *p), *p);
                BigRational::from_integer(BigInt::from(v))
            }
        }
    }

    fn inv(&self, c: &BigRational) -> BigRational {
        match self {
            Field::Rational => c.recip(),
            Field::Prime(p) => {
                let v = c.to_integer().to_u64().unwrap();
                BigRational::from_integer(BigInt::from(inv_mod(v, *p)))
            }
        }
    }

    /// Reduces a coefficient of this field to `F_p`; `None` if `p` divides
    /// the denominator.
    pub fn to_mod_p(&self, c: &BigRational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let num = c.numer().mod_floor(&pb).to_u64()?;
        let den = c.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(mul_mod(num, inv_mod(den, p), p))
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Variable layout and coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: Field,
    /// Coordinates are `x0..xn`.
    pub n: usize,
    pub y_count: usize,
    pub has_t: bool,
}

impl Ring {
    pub fn new(field: Field, n: usize, y_count: usize, has_t: bool) -> Self {
        Self {
            field,
            n,
            y_count,
            has_t,
        }
    }

    pub fn nvars(&self) -> usize {
        self.n + 1 + self.y_count + usize::from(self.has_t)
    }

    pub fn x(&self, i: usize) -> usize {
        assert!(i <= self.n);
        i
    }

    /// Index of `y_j`, `1 <= j <= y_count`.
    pub fn y(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.y_count);
        self.n + j
    }

    pub fn t(&self) -> Option<usize> {
        self.has_t.then(|| self.n + 1 + self.y_count)
    }

    pub fn is_x(&self, var: usize) -> bool {
        var <= self.n
    }

    pub fn is_y(&self, var: usize) -> bool {
        var > self.n && var <= self.n + self.y_count
    }

    pub fn var_name(&self, var: usize) -> String {
        if var <= self.n {
            format!("x{var}")
        } else if var <= self.n + self.y_count {
            format!("y{}", var - self.n)
        } else {
            "t".to_string()
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        if name == "t" {
            return self.t();
        }
        let (prefix, idx) = name.split_at(1);
        let idx: usize = idx.parse().ok()?;
        match prefix {
            "x" if idx <= self.n => Some(idx),
            "y" if idx >= 1 && idx <= self.y_count => Some(self.n + idx),
            _ => None,
        }
    }

    pub fn with_y(&self, y_count: usize) -> Self {
        Self { y_count, ..*self }
    }

    /// Graded degree of a monomial (`t` excluded).
    pub fn degree_of(&self, m: &[u32]) -> u32 {
        m[..=self.n + self.y_count].iter().sum()
    }

    pub fn x_degree_of(&self, m: &[u32]) -> u32 {
        m[..=self.n].iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, c: i64) -> Self {
        Self::from_terms(
            ring,
            [(vec![0; ring.nvars()], BigRational::from_integer(c.into()))],
        )
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: Ring, var: usize) -> Self {
        let mut m = vec![0; ring.nvars()];
        m[var] = 1;
        Self::from_terms(ring, [(m, BigRational::one())])
    }

    pub fn x(ring: Ring, i: usize) -> Self {
        Self::var(ring, ring.x(i))
    }

    pub fn y(ring: Ring, j: usize) -> Self {
        Self::var(ring, ring.y(j))
    }

    pub fn t(ring: Ring) -> Self {
        Self::var(ring, ring.t().expect("ring has no t"))
    }

    pub fn monomial(ring: Ring, m: Monomial, c: i64) -> Self {
        assert_eq!(m.len(), ring.nvars());
        Self::from_terms(ring, [(m, BigRational::from_integer(c.into()))])
    }

    /// Sums terms, dropping zeros. Coefficients are reduced into the field.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars());
            p.add_term(m, ring.field.norm(c));
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let field = self.ring.field;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = field.norm(&*existing + c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Option<&BigRational> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// The common graded degree, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| self.ring.degree_of(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.degree_of(m)).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.degree_of(m)).min()
    }

    /// Some `(c, m)` if the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&BigRational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let c = self.ring.field.norm(c.clone());
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, v)| (m.clone(), v * &c)),
        )
    }

    pub fn mul_monomial(&self, m: &[u32], c: &BigRational) -> Self {
        let c = self.ring.field.norm(c.clone());
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(k, v)| (add_exps(k, m), v * &c)),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes a constant for one variable.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Self {
        let value = self.ring.field.norm(value.clone());
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m[var];
            let mut m2 = m.clone();
            m2[var] = 0;
            let factor = if e == 0 {
                BigRational::one()
            } else {
                num_traits::pow(value.clone(), e as usize)
            };
            out.add_term(m2, self.ring.field.norm(c * factor));
        }
        out
    }

    /// Reduction of a rational polynomial modulo a prime.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let ring = Ring {
            field: Field::Prime(p),
            ..self.ring
        };
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            let v =
                self.ring.field.to_mod_p(c, p).ok_or_else(|| {
                    Error::Structure(format!("coefficient {c} not integral at {p}"))
                })?;
            out.add_term(m.clone(), BigRational::from_integer(v.into()));
        }
        Ok(out)
    }

    /// Moves the polynomial into a ring with the same coordinates and `t`
    /// but a different number of `y` variables. Fails if a dropped `y`
    /// occurs.
    pub fn embed(&self, target: Ring) -> Result<Self> {
        if target.n != self.ring.n
            || target.has_t != self.ring.has_t
            || target.field != self.ring.field
        {
            return Err(Error::Structure("incompatible rings".into()));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut nm = vec![0; target.nvars()];
            nm[..=self.ring.n].copy_from_slice(&m[..=self.ring.n]);
            for j in 1..=self.ring.y_count {
                let e = m[self.ring.y(j)];
                if e > 0 {
                    if j > target.y_count {
                        return Err(Error::Structure(format!("y{j} does not fit")));
                    }
                    nm[target.y(j)] = e;
                }
            }
            if let (Some(a), Some(b)) = (self.ring.t(), target.t()) {
                nm[b] = m[a];
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.ring, divisor.ring);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = self.ring.field.inv(lc);
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.ring);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = sub_exps(rm, lm)?;
            let qc = self.ring.field.norm(rc * &lc_inv);
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Precomputes coefficients mod `p` for repeated evaluation.
    pub fn evaluator(&self, p: u64) -> Result<ModPEvaluator> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                self.ring
                    .field
                    .to_mod_p(c, p)
                    .map(|v| (v, m.clone()))
                    .ok_or_else(|| Error::Structure(format!("coefficient {c} not integral at {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Field::Prime(q) = self.ring.field {
            if q != p {
                return Err(Error::ModulusMismatch(q, p));
            }
        }
        Ok(ModPEvaluator { p, terms })
    }
}

/// A polynomial reduced mod `p`, ready for pointwise evaluation.
#[derive(Debug, Clone)]
pub struct ModPEvaluator {
    p: u64,
    terms: Vec<(u64, Monomial)>,
}

impl ModPEvaluator {
    /// `values` assigns a residue to every variable of the ring.
    pub fn eval(&self, values: &[u64]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (c, m)| {
            let term = m
                .iter()
                .zip(values)
                .filter(|(e, _)| **e > 0)
                .fold(*c, |t, (e, v)| mul_mod(t, pow_mod(*v, *e as u64, p), p));
            (acc + term) % p
        })
    }
}

pub(crate) fn add_exps(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_exps(a: &[u32], b: &[u32]) -> Option<Monomial> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_terms(self.ring, self.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let field = self.ring.field;
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = add_exps(ma, mb);
                let entry = acc.entry(m).or_insert_with(BigRational::zero);
                *entry = field.norm(&*entry + ca * cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly {
            ring: self.ring,
            terms: acc,
        }
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

//! Square classes in `K*/(K*)^2` for `K = k(P^n)`.
//!
//! Only the subgroup generated by the coordinate ratios `x_i/x_0`, the
//! distinguished element `b = g/x_0^deg(g)` and the parameter `t` is
//! modelled. Since `-1` is a square in the base field, `-a` and `a` share a
//! class and no sign bit is stored.
//!
//! A class is stored as the parity vector of the exponents of `x_0, ..., x_n`
//! together with one bit each for `b` and `t`. Every element of `K*` has
//! degree zero, so the exponent vector always has even weight; the `x_0`
//! bit is what balances a monomial numerator against its `x_0` power.

use std::fmt;

use crate::error::{Error, Result};

/// Whether `b` may be reduced along coordinate divisors.
///
/// Reducing `b` along `{x_i = 0}` requires that `g` is a square modulo `x_i`
/// and is not divisible by `x_i`. The caller attests this after running the
/// polynomial checks in [`crate::poly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BStatus {
    /// `g` passed the pure-power and square-modulo-coordinates checks.
    Attested,
    #[default]
    Unattested,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    exps: Vec<bool>,
    b: bool,
    t: bool,
}

impl SquareClass {
    /// The trivial class over `P^n`.
    pub fn trivial(n: usize) -> Self {
        Self {
            exps: vec![false; n + 1],
            b: false,
            t: false,
        }
    }

    /// The class of `b = g/x_0^deg(g)`.
    pub fn b(n: usize) -> Self {
        Self {
            b: true,
            ..Self::trivial(n)
        }
    }

    /// The class of the parameter `t`.
    pub fn t(n: usize) -> Self {
        Self {
            t: true,
            ..Self::trivial(n)
        }
    }

    /// Builds a class from raw parts, rejecting odd-weight exponent vectors.
    pub fn from_parts(exps: Vec<bool>, b: bool, t: bool) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidDimension("empty exponent vector".into()));
        }
        let class = Self { exps, b, t };
        if class.weight() % 2 == 1 {
            return Err(Error::OddWeight(class.to_string()));
        }
        Ok(class)
    }

    /// The class of the monomial `x^m / x_0^deg(m)` for `m` given by its
    /// exponents on `x_1, ..., x_n`.
    pub fn of_monomial(exponents: &[u32]) -> Self {
        let n = exponents.len();
        let mut exps = vec![false; n + 1];
        let mut parity = false;
        for (i, e) in exponents.iter().enumerate() {
            let odd = e % 2 == 1;
            exps[i + 1] = odd;
            parity ^= odd;
        }
        exps[0] = parity;
        Self {
            exps,
            b: false,
            t: false,
        }
    }

    /// Class of `x_i/x_j` (which equals the class of `-x_i/x_j`).
    pub fn coordinate_ratio(i: usize, j: usize, n: usize) -> Result<Self> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if j > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        if i == j {
            return Err(Error::TrivialRatio(i));
        }
        let mut class = Self::trivial(n);
        class.exps[i] = true;
        class.exps[j] = true;
        Ok(class)
    }

    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn exps(&self) -> &[bool] {
        &self.exps
    }

    pub fn has_b(&self) -> bool {
        self.b
    }

    pub fn has_t(&self) -> bool {
        self.t
    }

    pub fn is_trivial(&self) -> bool {
        !self.b && !self.t && self.exps.iter().all(|e| !e)
    }

    fn weight(&self) -> usize {
        self.exps.iter().filter(|e| **e).count()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a ^ b)
                .collect(),
            b: self.b ^ other.b,
            t: self.t ^ other.t,
        })
    }

    /// Parity of the valuation along `{x_i = 0}`.
    ///
    /// `b` and `t` count as units: `g` is not divisible by any coordinate
    /// once it contains every pure power.
    pub fn valuation_parity(&self, i: usize) -> bool {
        self.exps.get(i).copied().unwrap_or(false)
    }

    /// Image in the residue field `k({x_i = 0}) = k(P^{n-1})`.
    ///
    /// Coordinate `i` is deleted and the remaining coordinates keep their
    /// relative order. `b` reduces to a square, `t` is a constant and
    /// survives.
    pub fn reduce_along(&self, i: usize, status: BStatus) -> Result<Self> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if self.exps[i] {
            return Err(Error::OddValuation(i));
        }
        if self.b && status != BStatus::Attested {
            return Err(Error::UnattestedB(i));
        }
        let mut exps = self.exps.clone();
        exps.remove(i);
        Ok(Self {
            exps,
            b: false,
            t: self.t,
        })
    }

    /// Parses the textual form used in certificates, e.g. `x0*x1`, `b*x1*x2`,
    /// `t`, `1`.
    ///
    /// The `x0` bit is inferred so that the class has degree zero; an explicit
    /// `x0` factor is accepted and folded in.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut class = Self::trivial(n);
        let text = text.trim();
        if text == "1" {
            return Ok(class);
        }
        for token in text.split('*').map(str::trim) {
            match token {
                "b" => class.b ^= true,
                "t" => class.t ^= true,
                "1" => {}
                _ => {
                    let idx: usize = token
                        .strip_prefix('x')
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("bad class token `{token}`")))?;
                    if idx > n {
                        return Err(Error::IndexOutOfRange { index: idx, n });
                    }
                    class.exps[idx] ^= true;
                }
            }
        }
        let rest: usize = class.exps[1..].iter().filter(|e| **e).count();
        class.exps[0] = rest % 2 == 1;
        Ok(class)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.b {
            parts.push("b".to_string());
        }
        if self.t {
            parts.push("t".to_string());
        }
        for (i, e) in self.exps.iter().enumerate() {
            if *e {
                parts.push(format!("x{i}"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

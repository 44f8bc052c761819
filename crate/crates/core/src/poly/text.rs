//! Canonical text form: terms in descending monomial order, e.g.
//! `x0^4*t^2 + 2*x0^2*x1^2*t^2 - x0^2*x1*x2`.
//!
//! A coefficient of one is omitted; over `F_p` coefficients are printed as
//! their representatives in `1..p`. The parser also accepts spaces around
//! `*`, explicit `1*` coefficients and rational coefficients `a/b`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, Ring};
use crate::error::{Error, Result};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ring = self.ring();
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            let is_const = m.iter().all(|e| *e == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (var, e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(ring.var_name(var)),
                    _ => factors.push(format!("{}^{}", ring.var_name(var), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Poly {
    pub fn parse(text: &str, ring: Ring) -> Result<Poly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut current = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut out = Poly::zero(ring);
        for term in terms {
            let (m, c) = parse_term(&term, ring)?;
            let c = ring.field.element(c)?;
            out = &out + &Poly::from_terms(ring, [(m, c)]);
        }
        Ok(out)
    }
}

fn parse_term(term: &str, ring: Ring) -> Result<(Monomial, BigRational)> {
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{term}`")));
    }
    let mut coeff = BigRational::one();
    let mut m = vec![0u32; ring.nvars()];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        if factor.as_bytes()[0].is_ascii_digit() {
            coeff *= parse_number(factor)?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => (
                name,
                e.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let var = ring
            .var_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        m[var] += exp;
    }
    if negative {
        coeff = -coeff;
    }
    Ok((m, coeff))
}

fn parse_number(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

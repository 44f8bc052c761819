//! Exact square roots of multivariate polynomials.
//!
//! The root is built term by term in lexicographic order: its leading term
//! is the square root of the leading term of `f`, and every further term is
//! `LT(R) / (2 LT(s))` for the running remainder `R = f - s^2`. Because the
//! leading monomial of `R` strictly decreases and every root monomial lies in
//! a bounded degree band, the loop terminates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::{add_exps, mul_mod, pow_mod, sub_exps, Field, Monomial, Poly};

/// Returns `s` with `s^2 = f`, or `None`.
///
/// The sign is normalized so that the leading coefficient of `s` is positive
/// over `Q`, or at most `(p-1)/2` over `F_p`.
pub fn multivariate_sqrt(f: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return Some(f.clone());
    }
    let field = f.field();
    let (lm, lc) = f.leading_term()?;
    let root_c = coefficient_sqrt(field, lc)?;
    let root_m: Monomial = lm
        .iter()
        .map(|e| (e % 2 == 0).then_some(e / 2))
        .collect::<Option<_>>()?;
    extract(f, root_m, root_c)
}

/// Square root of `f / lc(f)`.
///
/// Over an algebraically closed field every constant is a square, so this
/// decides whether `f` is a square there. Monic normalization keeps all root
/// coefficients in the field of definition.
pub fn sqrt_up_to_constant(f: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return Some(f.clone());
    }
    let (_, lc) = f.leading_term()?;
    let inv = match f.field() {
        Field::Rational => lc.recip(),
        Field::Prime(p) => {
            let v = lc.to_integer().to_u64()?;
            BigRational::from_integer(pow_mod(v, p - 2, p).into())
        }
    };
    let monic = f.scale(&inv);
    let (lm, _) = monic.leading_term()?;
    let root_m: Monomial = lm
        .iter()
        .map(|e| (e % 2 == 0).then_some(e / 2))
        .collect::<Option<_>>()?;
    extract(&monic, root_m, BigRational::one())
}

pub fn is_square_up_to_constant(f: &Poly) -> bool {
    sqrt_up_to_constant(f).is_some()
}

fn extract(f: &Poly, lead_m: Monomial, lead_c: BigRational) -> Option<Poly> {
    let ring = f.ring();
    let field = ring.field;
    let lo = f.min_degree()?;
    let hi = f.max_degree()?;
    if lo % 2 == 1 || hi % 2 == 1 {
        return None;
    }
    let (lo, hi) = (lo / 2, hi / 2);

    let mut root = Poly::from_terms(ring, [(lead_m.clone(), lead_c.clone())]);
    let mut rem = f - &(&root * &root);
    let two_lead_inv = match field {
        Field::Rational => (BigRational::from_integer(2.into()) * &lead_c).recip(),
        Field::Prime(p) => {
            let v = mul_mod(2, lead_c.to_integer().to_u64()?, p);
            BigRational::from_integer(pow_mod(v, p - 2, p).into())
        }
    };

    while let Some((rm, rc)) = rem.leading_term() {
        let m = sub_exps(rm, &lead_m)?;
        let d = ring.degree_of(&m);
        if d < lo || d > hi {
            return None;
        }
        let c = rc * &two_lead_inv;
        let term = Poly::from_terms(ring, [(m.clone(), c.clone())]);
        // (s + u)^2 = s^2 + 2 s u + u^2
        let two_c = &c * BigRational::from_integer(2.into());
        let cross = root.mul_monomial(&m, &two_c);
        let square = Poly::from_terms(ring, [(add_exps(&m, &m), &c * &c)]);
        rem = &(&rem - &cross) - &square;
        root = &root + &term;
    }

    debug_assert_eq!(&(&root * &root), f);
    Some(root)
}

fn coefficient_sqrt(field: Field, c: &BigRational) -> Option<BigRational> {
    match field {
        Field::Rational => {
            if c.is_negative() {
                return None;
            }
            let n = exact_isqrt(c.numer())?;
            let d = exact_isqrt(c.denom())?;
            Some(BigRational::new(n, d))
        }
        Field::Prime(p) => {
            let v = c.to_integer().to_u64()?;
            let r = sqrt_mod(v, p)?;
            Some(BigRational::from_integer(r.min(p - r).into()))
        }
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Tonelli-Shanks. Returns some square root of `a` mod the odd prime `p`.
pub(crate) fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn ring(n: usize, t: bool) -> Ring {
        Ring::new(Field::Rational, n, 0, t)
    }

    #[test]
    fn binomial_square() {
        let r = ring(1, false);
        let s = Poly::parse("x0 - x1", r).unwrap();
        let f = &s * &s;
        assert_eq!(multivariate_sqrt(&f), Some(s.clone()));
        assert_eq!(multivariate_sqrt(&(-&f)), None);
        assert_eq!(sqrt_up_to_constant(&(-&f)), Some(s));
    }

    #[test]
    fn parametric_square() {
        let r = ring(1, true);
        let s = Poly::parse("t*x0^2 + t*x1^2", r).unwrap();
        let f = &s * &s;
        assert_eq!(multivariate_sqrt(&f), Some(s));
    }

    #[test]
    fn non_squares() {
        let r = ring(2, false);
        assert!(multivariate_sqrt(&Poly::parse("x0^2 + x1*x2", r).unwrap()).is_none());
        assert!(multivariate_sqrt(&Poly::parse("x0*x1", r).unwrap()).is_none());
        assert!(multivariate_sqrt(&Poly::parse("2*x0^2", r).unwrap()).is_none());
        assert!(is_square_up_to_constant(&Poly::parse("2*x0^2", r).unwrap()));
        assert!(multivariate_sqrt(&Poly::parse("x0^2 + x1^2", r).unwrap()).is_none());
    }

    #[test]
    fn zero_and_constants() {
        let r = ring(1, false);
        assert_eq!(multivariate_sqrt(&Poly::zero(r)), Some(Poly::zero(r)));
        assert_eq!(
            multivariate_sqrt(&Poly::parse("9/4", r).unwrap()),
            Some(Poly::parse("3/2", r).unwrap())
        );
    }

    #[test]
    fn prime_field_roots() {
        let r = Ring::new(Field::Prime(101), 1, 0, false);
        let s = Poly::parse("3*x0 + 5*x1", r).unwrap();
        let f = &s * &s;
        let root = multivariate_sqrt(&f).unwrap();
        assert_eq!(&root * &root, f);
        assert_eq!(root.leading_term().unwrap().1.to_integer(), 3.into());
        // 2 is a non-residue mod 101 but a square over the algebraic closure.
        let two = Poly::parse("2*x0^2", r).unwrap();
        assert!(multivariate_sqrt(&two).is_none());
        assert!(is_square_up_to_constant(&two));
    }

    #[test]
    fn tonelli_shanks() {
        for p in [3u64, 7, 13, 17, 101, 1_000_003] {
            for a in 1..40u64.min(p) {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a % p),
                    None => assert_eq!(pow_mod(a, (p - 1) / 2, p), p - 1),
                }
            }
        }
    }
}

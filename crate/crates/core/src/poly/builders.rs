use serde::{Deserialize, Serialize};

use super::{is_odd_prime, Field, Poly, Ring};
use crate::error::{Error, Result};

/// Which recipe produces the polynomial `g` defining `b = g/x0^deg(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GVariant {
    /// `t^2 G^2 - x0^eps * x0 * ... * xn` over `Q(t)`.
    Parametric,
    /// `G^2 + x0^eps * x0 * ... * xn` over `F_p`.
    FiniteField { p: u64 },
    /// `p0^2 G^2 + x0^eps * x0 * ... * xn` over `Q`.
    Integral { p0: u64 },
}

impl GVariant {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GVariant::Parametric => Ok(()),
            GVariant::FiniteField { p } | GVariant::Integral { p0: p } => {
                if is_odd_prime(p) {
                    Ok(())
                } else {
                    Err(Error::NotOddPrime(p))
                }
            }
        }
    }

    /// The coordinate ring `k[x0..xn]` (with `t` for the parametric recipe).
    pub fn ring(&self, n: usize) -> Ring {
        match *self {
            GVariant::Parametric => Ring::new(Field::Rational, n, 0, true),
            GVariant::FiniteField { p } => Ring::new(Field::Prime(p), n, 0, false),
            GVariant::Integral { .. } => Ring::new(Field::Rational, n, 0, false),
        }
    }
}

pub fn ceil_half(m: usize) -> usize {
    m.div_ceil(2)
}

/// `2 * ceil((n+1)/2)`.
pub fn g_degree(n: usize) -> usize {
    2 * ceil_half(n + 1)
}

/// Builds `g` for the given recipe with `G = sum_i x_i^ceil((n+1)/2)`.
///
/// The exponent `eps` is 0 when `n+1` is even and 1 otherwise, so the
/// product term has the same degree as `G^2`.
pub fn build_g(n: usize, variant: GVariant) -> Result<Poly> {
    if n < 1 {
        return Err(Error::InvalidDimension("g needs n >= 1".into()));
    }
    variant.validate()?;
    let ring = variant.ring(n);
    let half = ceil_half(n + 1) as u32;
    let eps = u32::from((n + 1) % 2 == 1);

    let mut big_g = Poly::zero(ring);
    for i in 0..=n {
        big_g = &big_g + &Poly::x(ring, i).pow(half);
    }
    let g_sq = &big_g * &big_g;

    let mut prod_m = vec![0u32; ring.nvars()];
    prod_m[..=n].iter_mut().for_each(|e| *e = 1);
    prod_m[0] += eps;
    let prod = Poly::monomial(ring, prod_m, 1);

    let g = match variant {
        GVariant::Parametric => {
            let t = Poly::t(ring);
            &(&(&t * &t) * &g_sq) - &prod
        }
        GVariant::FiniteField { .. } => &g_sq + &prod,
        GVariant::Integral { p0 } => {
            let c = Poly::constant(ring, (p0 * p0) as i64);
            &(&c * &g_sq) + &prod
        }
    };
    debug_assert_eq!(g.homogeneous_degree(), Some(g_degree(n) as u32));
    Ok(g)
}

/// The conic `x0^2 + x1^2 + x2^2 - 2(x0 x1 + x0 x2 + x1 x2)`, tangent to the
/// three coordinate lines.
pub fn tangent_conic() -> Poly {
    let ring = Ring::new(Field::Rational, 2, 0, false);
    Poly::parse("x0^2 + x1^2 + x2^2 - 2*x0*x1 - 2*x0*x2 - 2*x1*x2", ring)
        .expect("static polynomial")
}

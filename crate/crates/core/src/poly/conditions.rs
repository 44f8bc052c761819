use super::{is_square_up_to_constant, GVariant, Poly};
use crate::error::{Error, Result};
use crate::squareclass::SquareClass;

fn require_x_only(g: &Poly) -> Result<u32> {
    if g.ring().y_count != 0 {
        return Err(Error::Structure(
            "expected a polynomial in x (and t) only".into(),
        ));
    }
    g.homogeneous_degree().ok_or(Error::NotHomogeneous)
}

/// Every pure power `x_i^deg(g)` occurs with nonzero coefficient (any power
/// of `t` is allowed in that coefficient). Equivalently `g` does not vanish
/// at the coordinate points.
pub fn check_cond_pure_powers(g: &Poly) -> Result<bool> {
    let deg = require_x_only(g)?;
    let n = g.ring().n;
    Ok((0..=n).all(|i| {
        g.terms()
            .any(|(m, _)| m[i] == deg && (0..=n).all(|j| j == i || m[j] == 0))
    }))
}

/// `g mod x_i` is a square (over the algebraic closure) for every `i`.
pub fn check_cond_square_mod_coords(g: &Poly) -> Result<bool> {
    require_x_only(g)?;
    let zero = num_rational::BigRational::from_integer(0.into());
    Ok((0..=g.ring().n).all(|i| is_square_up_to_constant(&g.substitute(i, &zero))))
}

/// Coprimality of `e_0, e_1, ...` when every `e_i` with `i >= 1` is a
/// monomial.
///
/// The gcd of the monomials is again a monomial, and `e_0` shares a factor
/// with it exactly when some coordinate dividing it also divides `e_0`.
pub fn structured_coprimality(e: &[Poly]) -> Result<bool> {
    let (e0, rest) = e
        .split_first()
        .ok_or_else(|| Error::Structure("empty coefficient list".into()))?;
    if e0.is_zero() {
        return Err(Error::Structure("e0 vanishes".into()));
    }
    let ring = e0.ring();
    let mut gcd: Option<Vec<u32>> = None;
    for (k, p) in rest.iter().enumerate() {
        let (_, m) = p.as_monomial().ok_or_else(|| {
            Error::Structure(format!("e{} is not a monomial; no factor structure", k + 1))
        })?;
        gcd = Some(match gcd {
            None => m.clone(),
            Some(g) => g.iter().zip(m).map(|(a, b)| *a.min(b)).collect(),
        });
    }
    let Some(gcd) = gcd else {
        // a lone e0 is coprime only if it is a unit
        return Ok(e0
            .as_monomial()
            .is_some_and(|(_, m)| m.iter().all(|x| *x == 0)));
    };
    Ok((0..ring.nvars())
        .filter(|v| gcd[*v] > 0)
        .all(|v| e0.terms().any(|(m, _)| m[v] == 0)))
}

/// Result of the singularity check along `P = {x0 = ... = xn = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneSingularity {
    /// Every monomial has the shape `x^a` or `x^a * y_j^2`.
    pub structured: bool,
    /// Minimal `x`-degree over all monomials, i.e. the multiplicity of
    /// `{F = 0}` along `P`.
    pub multiplicity: u32,
}

impl PlaneSingularity {
    /// All first partials vanish identically on `P`.
    pub fn singular(&self) -> bool {
        self.structured && self.multiplicity >= 2
    }
}

pub fn jacobian_vanishes_on_plane(f: &Poly) -> Result<PlaneSingularity> {
    let ring = f.ring();
    if ring.y_count == 0 {
        return Err(Error::Structure(
            "no y variables, the plane is undefined".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::Structure("zero polynomial".into()));
    }
    let mut structured = true;
    let mut multiplicity = u32::MAX;
    for (m, _) in f.terms() {
        let ys: Vec<u32> = (1..=ring.y_count).map(|j| m[ring.y(j)]).collect();
        let nonzero: Vec<&u32> = ys.iter().filter(|e| **e > 0).collect();
        if !(nonzero.is_empty() || (nonzero.len() == 1 && *nonzero[0] == 2)) {
            structured = false;
        }
        multiplicity = multiplicity.min(ring.x_degree_of(m));
    }
    Ok(PlaneSingularity {
        structured,
        multiplicity,
    })
}

/// The Fermat hypersurface `sum x_i^d` of dimension `N` is smooth in
/// characteristic `p` (0 for characteristic zero) iff `p` does not divide `d`.
pub fn fermat_smoothness(_dim: usize, d: u32, p: u64) -> bool {
    p == 0 || !(d as u64).is_multiple_of(p)
}

/// Square class of `e / x0^x0_power` where `e = c * m * g^a * h^c'` with `m`
/// a monomial and `c'` even.
///
/// Constants are squares over the algebraic closure and are ignored.
pub fn class_of_entry(e: &Poly, x0_power: u32, g: &Poly, h: Option<&Poly>) -> Result<SquareClass> {
    let deg = require_x_only(e).map_err(|_| {
        Error::Structure(format!("entry `{e}` is not a homogeneous polynomial in x"))
    })?;
    if deg != x0_power {
        return Err(Error::Structure(format!(
            "entry `{e}` has degree {deg}, denominator x0^{x0_power}"
        )));
    }
    let mut rest = e.clone();
    let mut g_mult = 0u32;
    while let Some(q) = rest.exact_div(g) {
        rest = q;
        g_mult += 1;
    }
    if let Some(h) = h {
        let mut h_mult = 0u32;
        while let Some(q) = rest.exact_div(h) {
            rest = q;
            h_mult += 1;
        }
        if h_mult % 2 == 1 {
            return Err(Error::Structure(format!("odd power of h in `{e}`")));
        }
    }
    let (_, m) = rest
        .as_monomial()
        .ok_or_else(|| Error::Structure(format!("entry `{e}` is not monomial * g^a * h^(2k)")))?;
    let ring = e.ring();
    let mono = SquareClass::of_monomial(&m[1..=ring.n]);
    let mut class = mono;
    if g_mult % 2 == 1 {
        class = class.multiply(&SquareClass::b(ring.n))?;
    }
    if let Some(t) = ring.t() {
        if m[t] % 2 == 1 {
            class = class.multiply(&SquareClass::t(ring.n))?;
        }
    }
    Ok(class)
}

/// The class of `g / x0^deg(g)` after the degeneration killing the square
/// part of `g`: `t -> 0` for the parametric recipe, reduction mod `p0` for
/// the integral one. The result must be a monomial.
pub fn degeneration_class(g: &Poly, variant: GVariant) -> Result<SquareClass> {
    let deg = require_x_only(g)?;
    let degenerate = match variant {
        GVariant::Parametric => {
            let t = g
                .ring()
                .t()
                .ok_or_else(|| Error::Structure("parametric g lacks t".into()))?;
            g.substitute(t, &num_rational::BigRational::from_integer(0.into()))
        }
        GVariant::Integral { p0 } => g.reduce_mod(p0)?,
        GVariant::FiniteField { .. } => {
            return Err(Error::Structure(
                "finite-field recipe has no degeneration parameter".into(),
            ))
        }
    };
    let (_, m) = degenerate.as_monomial().ok_or_else(|| {
        Error::Structure(format!("degeneration `{degenerate}` is not a monomial"))
    })?;
    if degenerate.ring().x_degree_of(m) != deg {
        return Err(Error::NotHomogeneous);
    }
    Ok(SquareClass::of_monomial(&m[1..=g.ring().n]))
}

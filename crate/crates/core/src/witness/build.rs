use super::certificate::{assemble, Certificate};
use super::checks::{expected_unit_slot, WitnessData};
use super::{Variant, WitnessParams};
use crate::error::{Error, Result};
use crate::poly::{build_g, Poly, Ring};
use crate::quadform::{
    all_ones, conic_rho, conic_similarity_scaling, conic_target, find_scaling_isometry,
    find_scaling_subform_preferring, pfister_form, q_form, support, DiagonalForm, RhoMap,
};
use crate::squareclass::SquareClass;

pub fn choose_rho(n: usize, pins: &[(usize, Vec<bool>)]) -> Result<RhoMap> {
    RhoMap::with_pins(n, pins)
}

/// `x0 + x1`.
pub fn default_h(ring: Ring) -> Poly {
    &Poly::x(ring, 0) + &Poly::x(ring, 1)
}

fn parse_h(params: &WitnessParams, ring: Ring) -> Result<Poly> {
    let Some(text) = &params.h else {
        return Ok(default_h(ring));
    };
    let h = Poly::parse(text, ring)?;
    if h.homogeneous_degree() != Some(1)
        || ring.t().is_some_and(|t| h.terms().any(|(m, _)| m[t] > 0))
    {
        return Err(Error::Infeasible("h linear in x0..xn".into()));
    }
    if h.len() < 2 {
        return Err(Error::Infeasible("h not a multiple of a coordinate".into()));
    }
    Ok(h)
}

/// `x0^a * prod x_i^{m_i}` in `ring`, where `m` lists the exponents of
/// `x1..xn`.
fn monomial(ring: Ring, x0: u32, m: &[u32]) -> Poly {
    let mut exps = vec![0u32; ring.nvars()];
    exps[0] = x0;
    exps[1..=m.len()].copy_from_slice(m);
    Poly::monomial(ring, exps, 1)
}

fn assemble_f(e: &[Poly]) -> Result<Poly> {
    let ring = e[0].ring().with_y(e.len() - 1);
    let mut f = e[0].embed(ring)?;
    for (j, ej) in e.iter().enumerate().skip(1) {
        let y = Poly::y(ring, j);
        f = &f + &(&ej.embed(ring)? * &(&y * &y));
    }
    Ok(f)
}

/// Scalings for the similarity and subform conditions. `lambda` is searched
/// starting from `mu`.
fn scalings(
    q: &DiagonalForm,
    e_form: &DiagonalForm,
    psi: &DiagonalForm,
) -> Result<(Option<SquareClass>, Option<SquareClass>)> {
    let mu = find_scaling_isometry(q, e_form)?;
    let sub = DiagonalForm::new(e_form.n(), e_form.entries()[1..].to_vec())?;
    let preferred: Vec<SquareClass> = mu.iter().cloned().collect();
    let lambda = find_scaling_subform_preferring(&sub, psi, &preferred)?;
    Ok((lambda, mu))
}

fn e_form_of(n: usize, e: &[Poly], d: u32, g: &Poly, h: &Poly, unit: bool) -> Result<DiagonalForm> {
    let mut classes = e
        .iter()
        .enumerate()
        .map(|(i, ei)| crate::poly::class_of_entry(ei, if i == 0 { d } else { d - 2 }, g, Some(h)))
        .collect::<Result<Vec<_>>>()?;
    if unit {
        classes.push(SquareClass::trivial(n));
    }
    DiagonalForm::new(n, classes)
}

/// `F = e_0 + sum e_i y_i^2` for a very general hypersurface of degree `d`
/// to degenerate to. Even `d` uses `e_i = x0^{d-2-d_i} c_i`; odd `d`
/// multiplies by `x1` and absorbs squares.
pub fn build_witness_hypersurface(params: &WitnessParams) -> Result<Certificate> {
    if params.variant != Variant::Hypersurface {
        return Err(Error::Infeasible("variant hypersurface".into()));
    }
    params.validate()?;
    let (n, r) = (params.n, params.r);
    let d = params.d.expect("validated");
    let g = build_g(n, params.g_variant)?;
    let ring = g.ring();
    let h = parse_h(params, ring)?;
    let deg_g = g.homogeneous_degree().expect("g is homogeneous");
    let rho = choose_rho(n, &[(1, all_ones(n))])?;

    let odd = d % 2 == 1;
    let e0 = if odd {
        &(&h.pow(d - deg_g - 1) * &Poly::x(ring, 1)) * &g
    } else {
        &h.pow(d - deg_g) * &g
    };
    let mut e = vec![e0];
    for i in 1..=r + 1 {
        let mut m = rho.exponents(i);
        if odd {
            m[0] = 1 - m[0];
        }
        let deg: u32 = m.iter().sum();
        e.push(monomial(ring, d - 2 - deg, &m));
    }
    let f = assemble_f(&e)?;

    let q = q_form(n, r, &SquareClass::b(n), &rho)?;
    let psi = pfister_form(n, &rho)?;
    let (lambda, mu) = match e_form_of(n, &e, d, &g, &h, false) {
        Ok(form) => scalings(&q, &form, &psi)?,
        Err(_) => (None, None),
    };

    let data = WitnessData {
        params: params.clone(),
        rho: rho.to_strings(),
        g,
        h: Some(h),
        e,
        f: Some(f),
        lambda,
        mu,
        unit_slot: None,
    };
    assemble(&data)
}

/// Branch polynomial `F = e_0 + sum e_i y_i^2` of a double cover of `P^N`,
/// `N = n + r`, of even degree `d`.
pub fn build_double_cover_witness(params: &WitnessParams) -> Result<Certificate> {
    if params.variant != Variant::DoubleCover {
        return Err(Error::Infeasible("variant double_cover".into()));
    }
    params.validate()?;
    let (n, r) = (params.n, params.r);
    let d = params.d.expect("validated");
    let g = build_g(n, params.g_variant)?;
    let ring = g.ring();
    let h = parse_h(params, ring)?;
    let deg_g = g.homogeneous_degree().expect("g is homogeneous");

    let x12 = support(n, &[1, 2]);
    let unit = expected_unit_slot(n, r);
    let mut pins = vec![(1, all_ones(n))];
    if unit != 1 {
        pins.push((unit, x12.clone()));
    }
    let rho = choose_rho(n, &pins)?;

    let e0 = &(&(&h.pow(d - deg_g - 2) * &Poly::x(ring, 1)) * &Poly::x(ring, 2)) * &g;
    let mut e = vec![e0];
    for slot in (1..=r + 1).filter(|s| *s != unit) {
        // c'' = x1 x2 c with squares absorbed
        let m: Vec<u32> = rho
            .epsilon(slot)
            .iter()
            .zip(&x12)
            .map(|(a, b)| u32::from(a ^ b))
            .collect();
        let deg: u32 = m.iter().sum();
        e.push(monomial(ring, d - deg - 2, &m));
    }
    let f = assemble_f(&e)?;

    let q = q_form(n, r, &SquareClass::b(n), &rho)?;
    let psi = pfister_form(n, &rho)?;
    let (lambda, mu) = match e_form_of(n, &e, d, &g, &h, true) {
        Ok(form) => scalings(&q, &form, &psi)?,
        Err(_) => (None, None),
    };

    let data = WitnessData {
        params: params.clone(),
        rho: rho.to_strings(),
        g,
        h: Some(h),
        e,
        f: Some(f),
        lambda,
        mu,
        unit_slot: Some(unit),
    };
    assemble(&data)
}

/// Conic bundle over `P^{N-1}` given by `<b, c_1/x0^{d_1}, c_2/x0^{d_2}>`.
pub fn build_conic_witness(dim: usize) -> Result<Certificate> {
    build_conic(&WitnessParams::conic(dim))
}

fn build_conic(params: &WitnessParams) -> Result<Certificate> {
    params.validate()?;
    let n = params.n;
    let g = build_g(n, params.g_variant)?;
    let rho = conic_rho(n)?;
    let mu = conic_similarity_scaling(n, &rho)?;
    debug_assert_eq!(conic_target(n)?.rank(), 3);
    let data = WitnessData {
        params: params.clone(),
        rho: rho.to_strings(),
        g,
        h: None,
        e: Vec::new(),
        f: None,
        lambda: None,
        mu,
        unit_slot: None,
    };
    assemble(&data)
}

/// Dispatches on the variant.
pub fn build_witness(params: &WitnessParams) -> Result<Certificate> {
    match params.variant {
        Variant::Hypersurface => build_witness_hypersurface(params),
        Variant::DoubleCover => build_double_cover_witness(params),
        Variant::ConicBundle => build_conic(params),
    }
}

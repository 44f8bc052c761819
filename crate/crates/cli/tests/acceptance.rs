//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use irratio_core::bounds::{decompose_dimension, min_degree};
use irratio_core::poly::{
    ceil_half, check_cond_pure_powers, check_cond_square_mod_coords, multivariate_sqrt,
    tangent_conic, GVariant, Poly,
};
use irratio_core::squareclass::SquareClass;
use irratio_core::symbol::{certify_alpha_nonzero, ResidueVerdict, Symbol};
use irratio_core::witness::{
    build_double_cover_witness, build_witness, build_witness_hypersurface, verify_certificate,
    Certificate, VerifyVerdict, WitnessParams,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

fn failing(cert: &Certificate) -> Vec<&str> {
    cert.checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect()
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_irratio"))
        .args(["bounds", "--max-dim", "1032"])
        .output()
        .map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))?;
    ensure!(out.status.success(), "exit status {}", out.status);
    let expected = "dim(X) <= 4 9 18 35 68 133 262 519 1032\n\
                    deg(X) >= 4 5  6  7  8   9  10  11   12\n";
    let text = String::from_utf8_lossy(&out.stdout);
    ensure!(text == expected, "got\n{text}");
    Ok(())
}

fn named_case_bounds() -> Outcome {
    let start = Instant::now();
    let three = decompose_dimension(3).map_err(|e| e.to_string())?;
    ensure!(three == (2, 1), "N=3 decomposes as {three:?}");
    for (dim, deg) in [(3, 4), (4, 4), (5, 5), (1_048_576, 22)] {
        let got = min_degree(dim).map_err(|e| e.to_string())?;
        ensure!(got == deg, "min_degree({dim}) = {got}, expected {deg}");
    }
    within(start, Duration::from_secs(1))
}

fn alpha_certificates() -> Outcome {
    let start = Instant::now();
    let last = Symbol::make(1, &[SquareClass::coordinate_ratio(1, 0, 1).unwrap()]).unwrap();
    for n in 1..=16 {
        let cert = certify_alpha_nonzero(n).map_err(|e| e.to_string())?;
        ensure!(
            cert.verdict == ResidueVerdict::Nonzero,
            "n={n}: {:?}",
            cert.verdict
        );
        ensure!(
            cert.intermediate.len() == n - 1,
            "n={n}: {} steps",
            cert.intermediate.len()
        );
        ensure!(
            *cert.final_symbol() == last,
            "n={n}: final {}",
            cert.final_symbol()
        );
    }
    within(start, Duration::from_secs(1))
}

const GRID_CHECKS: [&str; 10] = [
    "pure_powers",
    "square_mod_coordinates",
    "coprime",
    "q_similar_to_e_form",
    "e_subform_of_pfister",
    "t0_isotropy",
    "b_not_square",
    "alpha_nonzero",
    "plane_multiplicity",
    "oracle_consistency",
];

fn witness_grid() -> Outcome {
    let start = Instant::now();
    for n in 2..=4usize {
        for r in 1..=(1usize << n) - 2 {
            for d in [n as u32 + 2, n as u32 + 3] {
                let cert = build_witness_hypersurface(&WitnessParams::hypersurface(n, r, d))
                    .map_err(|e| format!("n={n} r={r} d={d}: {e}"))?;
                ensure!(
                    cert.passed(),
                    "n={n} r={r} d={d}: failed {:?}",
                    failing(&cert)
                );
                for name in GRID_CHECKS {
                    ensure!(
                        cert.check(name).is_some_and(|c| c.passed),
                        "n={n} r={r} d={d}: {name} missing or red"
                    );
                }
                let mult = &cert.check("plane_multiplicity").unwrap().detail;
                ensure!(
                    *mult == format!("multiplicity {}", d - 2),
                    "n={n} r={r} d={d}: {mult}"
                );
                if d % 2 == 1 {
                    let (l, m) = (cert.scalings.lambda.as_deref(), cert.scalings.mu.as_deref());
                    ensure!(
                        l == Some("x0*x1") && m == Some("x0*x1"),
                        "n={n} r={r} d={d}: lambda {l:?} mu {m:?}"
                    );
                }
            }
        }
    }
    within(start, Duration::from_secs(60))
}

fn double_cover_grid() -> Outcome {
    let start = Instant::now();
    for n in 2..=3usize {
        let low = 2 * ceil_half(n + 1) as u32 + 2;
        for r in 1..=(1usize << n) - 2 {
            for d in (low..=low + 4).step_by(2) {
                let cert = build_double_cover_witness(&WitnessParams::double_cover(n, r, d))
                    .map_err(|e| format!("n={n} r={r} d={d}: {e}"))?;
                ensure!(
                    cert.passed(),
                    "n={n} r={r} d={d}: failed {:?}",
                    failing(&cert)
                );
                let (l, m) = (cert.scalings.lambda.as_deref(), cert.scalings.mu.as_deref());
                ensure!(
                    l == Some("x1*x2") && m == Some("x1*x2"),
                    "n={n} r={r} d={d}: lambda {l:?} mu {m:?}"
                );
            }
        }
    }
    within(start, Duration::from_secs(30))
}

fn tangent_conic_regression() -> Outcome {
    let g = tangent_conic();
    ensure!(check_cond_pure_powers(&g).unwrap(), "pure powers");
    ensure!(
        check_cond_square_mod_coords(&g).unwrap(),
        "squares modulo coordinates"
    );
    let ring = g.ring();
    let reduced = g.substitute(ring.x(2), &BigRational::from_integer(0.into()));
    let root = multivariate_sqrt(&reduced).ok_or("g mod x2 has no square root")?;
    let expected = Poly::parse("x0 - x1", ring).unwrap();
    ensure!(root == expected || root == -&expected, "root {root}");
    Ok(())
}

fn oracle_consistency() -> Outcome {
    let start = Instant::now();
    let cert = build_witness(&WitnessParams::hypersurface(2, 2, 6)).map_err(|e| e.to_string())?;
    let o = &cert.oracle;
    ensure!(o.p == 101, "prime {}", o.p);
    ensure!(
        o.samples == 200 && o.accepted == 200 && o.failures == 0,
        "{}/{} accepted, {} failures",
        o.accepted,
        o.samples,
        o.failures
    );
    ensure!(
        cert.check("oracle_consistency").unwrap().passed,
        "check red"
    );
    within(start, Duration::from_secs(10))
}

/// `e_i * x0`, or `e_i * x1 / x0` when `shift` is set.
fn scale_entry(cert: &Certificate, i: usize, shift: bool) -> Certificate {
    let ring = cert.params.g_variant.ring(cert.params.n);
    let e = Poly::parse(&cert.polynomials.e[i], ring).unwrap();
    let x0 = Poly::x(ring, 0);
    let scaled = if shift {
        (&e * &Poly::x(ring, 1))
            .exact_div(&x0)
            .expect("x0 divides the entry")
    } else {
        &e * &x0
    };
    let mut out = cert.clone();
    out.polynomials.e[i] = scaled.to_string();
    out
}

fn swap_rho(cert: &Certificate, a: usize, b: usize) -> Certificate {
    let mut out = cert.clone();
    out.rho.swap(a, b);
    out
}

/// Drops the pure power of `x_var` from `g`.
fn drop_pure_power(cert: &Certificate, var: usize) -> Certificate {
    let ring = cert.params.g_variant.ring(cert.params.n);
    let g = Poly::parse(&cert.polynomials.g, ring).unwrap();
    let kept = g.terms().filter(|(m, _)| {
        let x_support: Vec<usize> = (0..=cert.params.n).filter(|&j| m[ring.x(j)] > 0).collect();
        x_support != [var]
    });
    let trimmed = Poly::from_terms(ring, kept.map(|(m, c)| (m.clone(), c.clone())));
    assert_ne!(trimmed, g);
    let mut out = cert.clone();
    out.polynomials.g = trimmed.to_string();
    out
}

fn first_shiftable_entry(cert: &Certificate) -> usize {
    (1..cert.polynomials.e.len())
        .find(|&i| cert.polynomials.e[i].contains("x0"))
        .expect("some entry carries x0")
}

fn red_team() -> Outcome {
    let build = |p: WitnessParams| build_witness(&p).unwrap();
    let w = [
        build(WitnessParams::hypersurface(2, 1, 4)),
        build(WitnessParams::hypersurface(2, 2, 6)),
        build(WitnessParams::hypersurface(3, 3, 5)),
        build(WitnessParams::hypersurface(3, 6, 6)),
        build(WitnessParams::hypersurface(4, 5, 7)),
        build(WitnessParams::double_cover(2, 2, 6)),
        build(WitnessParams::double_cover(3, 4, 8)),
        build(WitnessParams::hypersurface(3, 6, 5).with_g_variant(GVariant::Integral { p0: 3 })),
    ];
    let sim = "q_similar_to_e_form";
    let mut cases: Vec<(String, Certificate, &str)> = Vec::new();
    for (k, i) in [(0, 1), (1, 2), (2, 1), (3, 3), (5, 1), (4, 2)] {
        cases.push((
            format!("witness {k}: e{i}*x0"),
            scale_entry(&w[k], i, false),
            sim,
        ));
    }
    for k in [1, 3, 4, 5, 6, 7] {
        let i = first_shiftable_entry(&w[k]);
        cases.push((
            format!("witness {k}: e{i}*x1/x0"),
            scale_entry(&w[k], i, true),
            sim,
        ));
    }
    for (k, j) in [(0, 2), (2, 2), (3, 3), (6, 2)] {
        cases.push((
            format!("witness {k}: rho slots 1<->{j}"),
            swap_rho(&w[k], 1, j),
            "c1_pin",
        ));
    }
    for (k, var) in [(0, 0), (2, 1), (4, 2), (7, 3)] {
        cases.push((
            format!("witness {k}: g without x{var} power"),
            drop_pure_power(&w[k], var),
            "pure_powers",
        ));
    }
    ensure!(cases.len() == 20, "{} mutations", cases.len());
    for (label, cert, expected) in &cases {
        let report = verify_certificate(cert).map_err(|e| format!("{label}: {e}"))?;
        ensure!(
            report.verdict == VerifyVerdict::Fail,
            "{label}: {:?}",
            report.verdict
        );
        ensure!(
            report.first_failure() == Some(*expected),
            "{label}: first failure {:?}, expected {expected}",
            report.first_failure()
        );
    }
    Ok(())
}

fn g_variants() -> Outcome {
    let start = Instant::now();
    let conditions = ["pure_powers", "square_mod_coordinates"];
    for p in [3u64, 7, 101] {
        for (n, d) in [(2usize, 4u32), (3, 5)] {
            let r = (1 << n) - 2;
            let params =
                WitnessParams::hypersurface(n, r, d).with_g_variant(GVariant::FiniteField { p });
            let cert = build_witness(&params).map_err(|e| format!("p={p} n={n}: {e}"))?;
            for name in conditions.iter().chain(&["b_not_square"]) {
                ensure!(
                    cert.check(name).is_some_and(|c| c.passed),
                    "p={p} n={n}: {name}"
                );
            }
        }
    }
    for p0 in [3u64, 5] {
        for n in [2usize, 3] {
            for r in 1..=(1usize << n) - 2 {
                let params = WitnessParams::hypersurface(n, r, n as u32 + 2)
                    .with_g_variant(GVariant::Integral { p0 });
                let cert = build_witness(&params).map_err(|e| format!("p0={p0} n={n}: {e}"))?;
                for name in conditions {
                    ensure!(
                        cert.check(name).is_some_and(|c| c.passed),
                        "p0={p0} n={n} r={r}: {name}"
                    );
                }
                if r == (1 << n) - 2 {
                    ensure!(
                        cert.check("b_not_square").unwrap().passed,
                        "p0={p0} n={n}: b square"
                    );
                }
            }
        }
    }
    within(start, Duration::from_secs(10))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("table reproduction", table_reproduction),
        ("named-case bounds", named_case_bounds),
        ("alpha nonvanishing certificates", alpha_certificates),
        ("hypersurface witness grid", witness_grid),
        ("double-cover grid", double_cover_grid),
        (
            "conic tangent to the coordinate lines",
            tangent_conic_regression,
        ),
        ("oracle consistency", oracle_consistency),
        ("soundness red-team", red_team),
        ("finite-field and integral g", g_variants),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({ms} ms)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

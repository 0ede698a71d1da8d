//! Acceptance suite. Runs every criterion, prints one line per criterion,
//! and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use bicaloric_core::ancient::{
    caloric_extension, caloric_extension_by_solve, check_coefficient_bounds, check_vanishing,
    decompose, membership, minimal_growth_class, vandermonde_extract, vanishing_order,
    verify_recurrence,
};
use bicaloric_core::spaces::{
    basis_a, basis_biparabolic, check_sharpness, dim_a, kernel_dim, operator_matrix, KernelKind,
    Operator,
};
use bicaloric_core::verify_numeric::{
    bounded_by_first, rp_biharmonic_ratio, rp_biharmonic_sweep, rp_ratio, rp_component_ratios,
    rp_sweep, CylinderSpec,
};
use bicaloric_core::{rat, Poly, Rational, Var};
use common::{p, random_samples, random_seed};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEP: [f64; 6] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
const BOUND_FACTOR: f64 = 10.0;
const SCALE_TOL: f64 = 1e-8;
const RANDOM_SEEDS: usize = 120;

type Outcome = Result<String, String>;

fn binom_formula(n: usize, d: i64) -> usize {
    // C(d + n - 1, n - 1) - C(d - 4 + n - 1, n - 1), negative tops read as 0
    let c = |top: i64, k: usize| -> usize {
        if top < k as i64 {
            return if top >= 0 && k == 0 { 1 } else { 0 };
        }
        (0..k).fold(1usize, |acc, i| acc * (top as usize - i) / (i + 1))
    };
    c(d + n as i64 - 1, n - 1) - c(d - 4 + n as i64 - 1, n - 1)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {took:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for n in 1..=4 {
        for d in 0..=12 {
            let got = kernel_dim(KernelKind::Biharmonic, n, d);
            let want = binom_formula(n, d as i64);
            if got != want {
                return Err(format!("n={n} d={d}: kernel rank gives {got}, formula {want}"));
            }
            cells += 1;
        }
    }
    within(start, Duration::from_secs(30), "dimension identity")?;
    Ok(format!("{cells} cells exact in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for d in 0..=12i64 {
            let target = dim_a(n, d);
            for (op, lift) in [(Operator::Laplacian, 2), (Operator::Bilaplacian, 4)] {
                let m = operator_matrix(op, &basis_a(n, d + lift), &basis_a(n, d)).map_err(|e| e.to_string())?;
                let rank = m.rank();
                if rank != target {
                    return Err(format!("{op:?} n={n} d={d}: rank {rank}, codomain dim {target}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} maps onto"))
}

fn criterion_3() -> Outcome {
    for n in 1..=3 {
        for d in 0..=12 {
            let got = kernel_dim(KernelKind::Bicaloric, n, d);
            let want = dim_a(n, d as i64);
            if got != want {
                return Err(format!("n={n} d={d}: bicaloric kernel {got}, dim A {want}"));
            }
            let dom = basis_biparabolic(n, d as i64 + 4);
            let cod = basis_biparabolic(n, d as i64);
            let rank = operator_matrix(Operator::HeatOp, &dom, &cod).map_err(|e| e.to_string())?.rank();
            if rank != cod.dim() {
                return Err(format!("heat operator not onto at n={n} d={d}"));
            }
        }
    }
    Ok("39 cells exact, heat operator onto".into())
}

fn criterion_4() -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=3 {
        for d in 1..=2 {
            let s = check_sharpness(n, d).map_err(|e| e.to_string())?;
            if !s.equal || s.terms.iter().sum::<usize>() != s.rhs || *s.terms.last().unwrap() != 1 {
                return Err(format!("n={n} d={d}: lhs {} rhs {} terms {:?}", s.lhs, s.rhs, s.terms));
            }
            summary.push(format!("({n},{d}):{}", s.lhs));
        }
    }
    let a = check_sharpness(2, 1).map_err(|e| e.to_string())?;
    if (a.lhs, a.terms.as_slice()) != (15, &[14, 1][..]) {
        return Err(format!("n=2 d=1 expected 15 = 14 + 1, got {} = {:?}", a.lhs, a.terms));
    }
    let b = check_sharpness(1, 2).map_err(|e| e.to_string())?;
    if (b.lhs, b.terms.as_slice()) != (9, &[4, 4, 1][..]) {
        return Err(format!("n=1 d=2 expected 9 = 4 + 4 + 1, got {} = {:?}", b.lhs, b.terms));
    }
    Ok(format!("equal at {}", summary.join(" ")))
}

/// Constructed solutions shared by criteria 5 and 6.
fn random_solutions() -> Vec<(Poly, Poly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b1ca);
    (0..RANDOM_SEEDS)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let q = random_seed(&mut rng, n, 8);
            let u = caloric_extension(&q).expect("seed is t-free");
            (q, u)
        })
        .collect()
}

fn criterion_5(solutions: &[(Poly, Poly)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00a1_1ce5);
    let mut extractions = 0;
    for (q, u) in solutions {
        if !u.heat_op().is_zero() {
            return Err(format!("heat_op nonzero for seed {q}"));
        }
        let dec = decompose(u);
        if !verify_recurrence(&dec) {
            return Err(format!("recurrence fails for seed {q}"));
        }
        let mut power = q.clone();
        let mut fact = Rational::one();
        for (m, pm) in dec.coefficients().iter().enumerate() {
            if m > 0 {
                fact *= rat(-(m as i64), 1);
            }
            if *pm != power.scale(&fact.recip()) {
                return Err(format!("coefficient {m} wrong for seed {q}"));
            }
            power = power.bilaplacian();
        }
        if !power.is_zero() {
            return Err(format!("decomposition truncated for seed {q}"));
        }
        if caloric_extension_by_solve(q).map_err(|e| e.to_string())? != *u {
            return Err(format!("preimage construction disagrees for seed {q}"));
        }
        let samples = random_samples(&mut rng, dec.time_degree() + 1);
        for scale in 1..=3 {
            for (j, pj) in dec.coefficients().iter().enumerate() {
                let got = vandermonde_extract(u, &samples, j, &rat(scale, 1)).map_err(|e| e.to_string())?;
                if got != *pj {
                    return Err(format!("extraction of p_{j} failed for seed {q} at R={scale}"));
                }
                extractions += 1;
            }
        }
    }
    Ok(format!("{} seeds, {extractions} exact extractions", solutions.len()))
}

fn criterion_6(solutions: &[(Poly, Poly)]) -> Outcome {
    let mut checked = 0;
    for (q, u) in solutions {
        let (k0, l0) = minimal_growth_class(u);
        for (k, l) in [(k0, l0), (k0 + 1, l0), (k0 + 1, l0 + 1)] {
            let report = membership(u, k, l).map_err(|e| format!("seed {q}: {e}"))?;
            if !report.in_space {
                return Err(format!("seed {q} not in P_(4*{k},4*{l})"));
            }
            if report.time_degree > k.min(l + 1) {
                return Err(format!("seed {q}: time degree {} > min({k}, {l}+1)", report.time_degree));
            }
            let n = u.dimension() as u32;
            let mut v = u.clone();
            for _ in 0..vanishing_order(k, l, n) {
                v = v.partial(Var::T);
            }
            if !v.is_zero() || !check_vanishing(u, k, l, n).map_err(|e| e.to_string())? {
                return Err(format!("seed {q}: high time derivative does not vanish"));
            }
            if !check_coefficient_bounds(u, k, l) {
                return Err(format!("seed {q}: coefficient degree bounds violated"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (u, k, l) cases"))
}

fn check_series(label: &str, values: &[f64]) -> Result<(), String> {
    if bounded_by_first(values, BOUND_FACTOR) {
        Ok(())
    } else {
        Err(format!("{label} unbounded over sweep: {values:?}"))
    }
}

fn relative_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= SCALE_TOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cases = [(p("x1^4", 1), 1usize), (p("x1^4 + x2^4", 2), 2)];
    let mut maxima = Vec::new();
    for (seed, n) in &cases {
        let u = caloric_extension(seed).map_err(|e| e.to_string())?;
        let spec = CylinderSpec::new(*n, 1.0, 0.5).map_err(|e| e.to_string())?;
        let rows = rp_sweep(&u, &spec, &SWEEP).map_err(|e| e.to_string())?;
        let combined: Vec<f64> = rows.iter().map(|r| r.combined).collect();
        check_series(&format!("combined ratio for {u}"), &combined)?;
        for k in 0..4 {
            let col: Vec<f64> = rows.iter().map(|r| r.components.as_array()[k]).collect();
            check_series(&format!("sub-ratio {k} for {u}"), &col)?;
        }
        // direct entry points agree with the sweep
        let direct = rp_ratio(&u, &spec).map_err(|e| e.to_string())?;
        let parts = rp_component_ratios(&u, &spec).map_err(|e| e.to_string())?;
        if !relative_close(direct, combined[0]) || !relative_close(parts.as_array().iter().sum(), direct) {
            return Err(format!("sweep and direct ratios disagree for {u}"));
        }
        for lambda in [rat(2, 1), rat(1, 2), rat(3, 1)] {
            let scaled = u.parabolic_rescale(&lambda);
            let lf = num_traits::ToPrimitive::to_f64(&lambda).unwrap();
            for &r in &SWEEP[..4] {
                let a = rp_ratio(&scaled, &spec.with_radius(r).unwrap()).map_err(|e| e.to_string())?;
                let b = rp_ratio(&u, &spec.with_radius(lf * r).unwrap()).map_err(|e| e.to_string())?;
                if !relative_close(a, b) {
                    return Err(format!("scale covariance fails for {u}, lambda={lambda}, r={r}: {a} vs {b}"));
                }
            }
        }
        let max = combined.iter().cloned().fold(0.0, f64::max);
        maxima.push(format!("n={n} max/base={:.6}", max / combined[0]));
    }
    within(start, Duration::from_secs(60), "reverse-Poincare sweep")?;
    Ok(maxima.join(", "))
}

fn criterion_8() -> Outcome {
    let mut out = Vec::new();
    for u in [p("x1^2 - x2^2", 2), p("x1^2 + x2^2", 2)] {
        let spec = CylinderSpec::new(2, 1.0, 0.5).map_err(|e| e.to_string())?;
        let values = rp_biharmonic_sweep(&u, &spec, &SWEEP).map_err(|e| e.to_string())?;
        check_series(&format!("biharmonic ratio for {u}"), &values)?;
        if values[0].is_nan() || values[0] <= 0.0 {
            return Err(format!("degenerate ratio for {u}"));
        }
        for lambda in [rat(2, 1), rat(1, 2)] {
            let scaled = u.parabolic_rescale(&lambda);
            let lf = num_traits::ToPrimitive::to_f64(&lambda).unwrap();
            let a = rp_biharmonic_ratio(&scaled, &spec.with_radius(2.0).unwrap()).map_err(|e| e.to_string())?;
            let b = rp_biharmonic_ratio(&u, &spec.with_radius(2.0 * lf).unwrap()).map_err(|e| e.to_string())?;
            if !relative_close(a, b) {
                return Err(format!("scale covariance fails for {u}: {a} vs {b}"));
            }
        }
        out.push(format!("{u}: {:.6}", values[0]));
    }
    Ok(out.join(", "))
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let solutions = random_solutions();
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("1 biharmonic kernel dimension identity", Box::new(criterion_1)),
        ("2 surjectivity of laplacian and bilaplacian", Box::new(criterion_2)),
        ("3 bicaloric kernel dimension identity", Box::new(criterion_3)),
        ("4 sharpness equality", Box::new(criterion_4)),
        ("5 construction properties", Box::new(|| criterion_5(&solutions))),
        ("6 high time derivatives vanish", Box::new(|| criterion_6(&solutions))),
        ("7 reverse-Poincare ratios bounded", Box::new(criterion_7)),
        ("8 biharmonic reverse-Poincare ratio bounded", Box::new(criterion_8)),
    ];
    let mut failures = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail} ({:?})", start.elapsed()),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

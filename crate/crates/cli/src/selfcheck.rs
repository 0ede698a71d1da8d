//! `selfcheck`: a deterministic pass over the library's invariants.

use bicaloric_core::ancient::{
    caloric_extension, caloric_extension_by_solve, check_coefficient_bounds, check_vanishing,
    decompose, default_samples, inverse_heatop, membership, minimal_growth_class,
    vandermonde_extract, verify_recurrence,
};
use bicaloric_core::spaces::{
    check_bilaplacian_onto, check_delta_onto, check_heatop_onto, check_sharpness,
};
use bicaloric_core::verify_numeric::{bounded_by_first, rp_biharmonic_sweep, rp_ratio, rp_sweep, CylinderSpec};
use bicaloric_core::{rat, Monomial, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{dimension_table, Report, BOUND_FACTOR};

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

fn row(check: &str, pass: bool, detail: String) -> CheckRow {
    CheckRow { check: check.into(), pass, detail }
}

const SEED: u64 = 0xb1ca_1041;

fn random_seed(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Poly {
    let terms: Vec<(Monomial, Rational)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut x = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=max_degree) {
                x[rng.gen_range(0..n)] += 1;
            }
            (Monomial::new(x, 0), rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
        })
        .collect();
    Poly::from_terms(n, terms)
}

fn dimension_checks() -> Vec<CheckRow> {
    let cells: Vec<(usize, usize)> = (1..=3).map(|n| (n, 10)).collect();
    let mut rows: Vec<CheckRow> = cells
        .par_iter()
        .map(|&(n, dmax)| {
            let table = dimension_table(n, dmax);
            let ok = table.iter().all(|r| r.formula_match);
            row("dimension formulas", ok, format!("n={n}, d=0..{dmax}"))
        })
        .collect();
    let onto: Vec<(usize, usize)> = (1..=3).flat_map(|n| (0..=8).map(move |d| (n, d))).collect();
    let all = onto
        .par_iter()
        .all(|&(n, d)| check_delta_onto(n, d) && check_bilaplacian_onto(n, d) && check_heatop_onto(n, d));
    rows.push(row("surjectivity", all, "laplacian, bilaplacian, heat operator; n<=3, d<=8".into()));
    for n in 1..=3 {
        for d in 1..=2 {
            let r = check_sharpness(n, d);
            let (ok, detail) = match r {
                Ok(s) => (s.equal, format!("n={n} d={d}: {} = {:?}", s.lhs, s.terms)),
                Err(e) => (false, e.to_string()),
            };
            rows.push(row("sharpness", ok, detail));
        }
    }
    rows
}

fn construction_checks() -> Vec<CheckRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let seeds: Vec<Poly> = (0..60)
        .map(|i| random_seed(&mut rng, 1 + i % 3, 8))
        .collect();
    let check = |q: &Poly| -> bool {
        let Ok(u) = caloric_extension(q) else { return false };
        let dec = decompose(&u);
        let samples = default_samples(dec.time_degree());
        let extract = dec.coefficients().iter().enumerate().all(|(j, pj)| {
            (1..=3).all(|r| vandermonde_extract(&u, &samples, j, &rat(r, 1)).ok().as_ref() == Some(pj))
        });
        let (k, l) = minimal_growth_class(&u);
        let grows = membership(&u, k, l).map(|m| m.in_space).unwrap_or(false)
            && check_vanishing(&u, k, l, u.dimension() as u32).unwrap_or(false)
            && check_coefficient_bounds(&u, k, l);
        u.heat_op().is_zero()
            && verify_recurrence(&dec)
            && extract
            && grows
            && caloric_extension_by_solve(q).ok().as_ref() == Some(&u)
            && inverse_heatop(&u.shift_t(1)).heat_op() == u.shift_t(1)
    };
    let passed = seeds.par_iter().filter(|q| check(q)).count();
    vec![row(
        "construction",
        passed == seeds.len(),
        format!("{passed}/{} random seeds", seeds.len()),
    )]
}

fn numeric_checks() -> Vec<CheckRow> {
    let radii = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
    let mut rows = Vec::new();
    for (seed, n) in [("x1^4", 1), ("x1^4 + x2^4", 2)] {
        let u = caloric_extension(&Poly::parse(seed, n).expect("fixed seed")).expect("t-free");
        let spec = CylinderSpec::new(n, 1.0, 0.5).expect("valid cylinder");
        let ok = rp_sweep(&u, &spec, &radii).map(|s| {
            let combined: Vec<f64> = s.iter().map(|r| r.combined).collect();
            bounded_by_first(&combined, BOUND_FACTOR)
                && (0..4).all(|k| {
                    let col: Vec<f64> = s.iter().map(|r| r.components.as_array()[k]).collect();
                    bounded_by_first(&col, BOUND_FACTOR)
                })
        });
        let scaled = u.parabolic_rescale(&rat(2, 1));
        let covariant = match (
            rp_ratio(&scaled, &spec),
            rp_ratio(&u, &spec.with_radius(2.0).expect("positive radius")),
        ) {
            (Ok(a), Ok(b)) => (a - b).abs() <= 1e-8 * b.abs(),
            _ => false,
        };
        rows.push(row(
            "reverse-Poincare sweep",
            ok.unwrap_or(false) && covariant,
            format!("{u}, eps=1/2, r=1..32"),
        ));
    }
    for seed in ["x1^2 - x2^2", "x1^2 + x2^2"] {
        let u = Poly::parse(seed, 2).expect("fixed seed");
        let spec = CylinderSpec::new(2, 1.0, 0.5).expect("valid cylinder");
        let ok = rp_biharmonic_sweep(&u, &spec, &radii)
            .map(|v| bounded_by_first(&v, BOUND_FACTOR))
            .unwrap_or(false);
        rows.push(row("biharmonic reverse-Poincare sweep", ok, format!("{u}, eps=1/2, r=1..32")));
    }
    rows
}

#[derive(Serialize)]
struct SelfcheckParams {
    seed: u64,
}

pub fn cmd_selfcheck() -> Report {
    let mut rows = dimension_checks();
    rows.extend(construction_checks());
    rows.extend(numeric_checks());
    let pass = rows.iter().all(|r| r.pass);
    Report::new("selfcheck", SelfcheckParams { seed: SEED }, &rows, pass)
}
